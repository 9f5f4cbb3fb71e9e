#include "nicensus/error.hpp"

namespace nicensus {

std::string_view to_string(Errc code)
{
    switch (code) {
    case Errc::NonPrimeCharacteristic: return "NonPrimeCharacteristic";
    case Errc::ReducibleModulus: return "ReducibleModulus";
    case Errc::DegreeMismatch: return "DegreeMismatch";
    case Errc::NotASubfield: return "NotASubfield";
    case Errc::ZeroPolynomial: return "ZeroPolynomial";
    case Errc::BudgetExceeded: return "BudgetExceeded";
    case Errc::NotIrreducible: return "NotIrreducible";
    case Errc::SingularMatrix: return "SingularMatrix";
    case Errc::FieldMismatch: return "FieldMismatch";
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
    case Errc::NIViolation: return "NIViolation";
    case Errc::NonPositiveConstants: return "NonPositiveConstants";
    case Errc::RangeError: return "RangeError";
    case Errc::NotADivisor: return "NotADivisor";
    case Errc::ParseError: return "ParseError";
    case Errc::UnknownSuite: return "UnknownSuite";
    case Errc::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

} // namespace nicensus
