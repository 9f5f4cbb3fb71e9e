#ifndef NICENSUS_ERROR_HPP
#define NICENSUS_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace nicensus {

enum class Errc {
    NonPrimeCharacteristic,
    ReducibleModulus,
    DegreeMismatch,
    NotASubfield,
    ZeroPolynomial,
    BudgetExceeded,
    NotIrreducible,
    SingularMatrix,
    FieldMismatch,
    IndexOutOfRange,
    NIViolation,
    NonPositiveConstants,
    RangeError,
    NotADivisor,
    ParseError,
    UnknownSuite,
    InvalidArgument,
};

std::string_view to_string(Errc code);

/// Every failure raised by the library carries one of the Errc kinds so
/// callers (the CLI in particular) can map it to an exit code.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

} // namespace nicensus

#endif
