#ifndef NICENSUS_MATRIX_HPP
#define NICENSUS_MATRIX_HPP

#include "nicensus/gf.hpp"
#include "nicensus/numeric.hpp"
#include "nicensus/poly.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace nicensus {

/// Dense matrix over a finite field, row-major. Square matrices act on row
/// vectors from the right: v -> vX. Non-square shapes appear as stacks of
/// basis rows for subspaces.
class Mat {
public:
    Mat(Field field, int rows, int cols);

    static Mat zero(Field field, int n) { return Mat(std::move(field), n, n); }
    static Mat identity(Field field, int n);
    static Mat scalar(Field field, int n, Elt c);
    static Mat from_encodings(Field field, int rows, int cols, const std::vector<std::uint32_t>& entries);
    /// The idx-th matrix of M(n, q): entries row-major, base-q digits of idx,
    /// entry (0,0) least significant.
    static Mat from_index(Field field, int n, std::uint64_t idx);
    /// Inverse of from_index for square matrices.
    std::uint64_t index() const noexcept;

    int rows() const noexcept { return rows_; }
    int cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }
    const Field& field() const noexcept { return field_; }
    const FieldCtx& ctx() const noexcept { return *field_; }

    Elt operator()(int i, int j) const noexcept { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
    Elt& operator()(int i, int j) noexcept { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
    std::span<const Elt> row(int i) const noexcept
    {
        return {a_.data() + static_cast<std::size_t>(i) * cols_, static_cast<std::size_t>(cols_)};
    }
    const std::vector<Elt>& data() const noexcept { return a_; }

    bool is_zero() const noexcept;

    friend bool operator==(const Mat& a, const Mat& b);

private:
    Field field_;
    int rows_;
    int cols_;
    std::vector<Elt> a_;
};

Mat operator*(const Mat& a, const Mat& b);
Mat operator+(const Mat& a, const Mat& b);
Mat operator-(const Mat& a, const Mat& b);
Mat operator*(Elt c, const Mat& a);
Mat transpose(const Mat& a);
Mat pow(const Mat& x, const Integer& exponent);
/// f(X) by Horner's rule.
Mat eval(const Poly& f, const Mat& x);

int rank(const Mat& a);
/// Reduced row echelon form with the pivot columns.
std::pair<Mat, std::vector<int>> rref(const Mat& a);
/// Basis (as rows) of the row space, i.e. the image of v -> vA.
Mat row_space(const Mat& a);
/// Basis (as rows) of {v : vA = 0}.
Mat left_kernel(const Mat& a);
bool is_invertible(const Mat& a);
std::optional<Mat> inverse(const Mat& a);
/// C with C * basis = w; throws InvalidArgument when a row of w is outside the span.
Mat solve_left(const Mat& basis, const Mat& w);
/// Matrix of X restricted to the X-invariant subspace spanned by the rows of basis.
Mat restrict_to(const Mat& x, const Mat& basis);
/// Rows of a stacked on rows of b.
Mat vstack(const Mat& a, const Mat& b);

/// Characteristic polynomial via Hessenberg reduction.
Poly charpoly(const Mat& x);
/// Minimal polynomial as the lcm of the Krylov annihilators of the unit vectors.
Poly minpoly(const Mat& x);
bool is_nilpotent(const Mat& x);

/// V = V_inv(X) + V_nil(X), V_nil = ker X^d, V_inv = im X^d.
struct FittingSplit {
    Mat inv_basis; // dim V_inv x d
    Mat nil_basis; // dim V_nil x d
    Mat x_inv;     // X restricted to V_inv
    Mat x_nil;     // X restricted to V_nil

    int dim_inv() const noexcept { return inv_basis.rows(); }
    int dim_nil() const noexcept { return nil_basis.rows(); }
};

FittingSplit fitting_decompose(const Mat& x);
/// X_inv + 0 on V_nil, written in the original basis.
Mat invertible_part_embedded(const Mat& x);
Mat invertible_part_embedded(const Mat& x, const FittingSplit& split);

struct PrimaryComponent {
    Poly f;
    Mat basis;          // rows spanning V_f = ker f(X)^m_f
    int charpoly_mult;  // m_f
    int minpoly_mult;   // e_f
};

struct PrimaryDecomposition {
    std::vector<PrimaryComponent> components; // canonical order of f
};

PrimaryDecomposition primary_components(const Mat& x);

/// mult_f(charpoly) == mult_f(minpoly) >= 1. Throws NotIrreducible unless f
/// is monic irreducible over X's field.
bool is_primary_cyclic(const Mat& x, const Poly& f);

/// Same test with the charpoly already known (f assumed monic irreducible).
bool is_primary_cyclic(const Mat& x, const Poly& f, const Poly& charpoly_of_x);

struct JordanParts {
    Mat s; // semisimple, order coprime to p
    Mat u; // unipotent, order a power of p
};

/// g = su = us. Throws SingularMatrix.
JordanParts jordan_multiplicative(const Mat& g);

Integer gl_order(int d, const Integer& q);
/// Multiplicative order of an invertible matrix.
Integer element_order(const Mat& g);

/// g^-1 X g. Throws SingularMatrix.
Mat conjugate(const Mat& x, const Mat& g);
Mat direct_sum(const Mat& a, const Mat& b);
/// Companion matrix of a monic f of degree >= 1; its charpoly is f.
Mat companion(const Poly& f);

} // namespace nicensus

#endif
