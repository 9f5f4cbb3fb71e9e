#include "nicensus/matrix.hpp"

#include "nicensus/error.hpp"

#include <algorithm>
#include <map>

namespace nicensus {

namespace {

void require_same(const Mat& a, const Mat& b)
{
    if (a.field() != b.field() && !a.ctx().same_as(b.ctx()))
        throw Error(Errc::FieldMismatch, "matrices over different fields");
}

void require_square(const Mat& a)
{
    if (!a.is_square())
        throw Error(Errc::DegreeMismatch, "matrix is not square");
}

} // namespace

Mat::Mat(Field field, int rows, int cols)
    : field_(std::move(field)), rows_(rows), cols_(cols),
      a_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), Elt{0})
{
    if (rows < 0 || cols < 0)
        throw Error(Errc::InvalidArgument, "negative matrix dimension");
}

Mat Mat::identity(Field field, int n)
{
    return scalar(std::move(field), n, Elt{1});
}

Mat Mat::scalar(Field field, int n, Elt c)
{
    Mat m(std::move(field), n, n);
    for (int i = 0; i < n; ++i)
        m(i, i) = c;
    return m;
}

Mat Mat::from_encodings(Field field, int rows, int cols, const std::vector<std::uint32_t>& entries)
{
    if (entries.size() != static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols))
        throw Error(Errc::DegreeMismatch, "expected " + std::to_string(rows * cols) + " entries, got " +
                                              std::to_string(entries.size()));
    Mat m(field, rows, cols);
    for (std::size_t i = 0; i < entries.size(); ++i)
        m.a_[i] = field->element(entries[i]);
    return m;
}

Mat Mat::from_index(Field field, int n, std::uint64_t idx)
{
    Mat m(field, n, n);
    const std::uint64_t q = field->size();
    for (auto& e : m.a_) {
        e = Elt{static_cast<std::uint32_t>(idx % q)};
        idx /= q;
    }
    return m;
}

std::uint64_t Mat::index() const noexcept
{
    const std::uint64_t q = field_->size();
    std::uint64_t idx = 0;
    for (auto it = a_.rbegin(); it != a_.rend(); ++it)
        idx = idx * q + it->v;
    return idx;
}

bool Mat::is_zero() const noexcept
{
    return std::all_of(a_.begin(), a_.end(), [](Elt e) { return e == Elt{0}; });
}

bool operator==(const Mat& a, const Mat& b)
{
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.ctx().same_as(b.ctx()) && a.a_ == b.a_;
}

Mat operator*(const Mat& a, const Mat& b)
{
    require_same(a, b);
    if (a.cols() != b.rows())
        throw Error(Errc::DegreeMismatch, "matrix product shape mismatch");
    const FieldCtx& F = a.ctx();
    Mat out(a.field(), a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i) {
        for (int k = 0; k < a.cols(); ++k) {
            const Elt x = a(i, k);
            if (x == Elt{0})
                continue;
            for (int j = 0; j < b.cols(); ++j)
                out(i, j) = F.add(out(i, j), F.mul(x, b(k, j)));
        }
    }
    return out;
}

Mat operator+(const Mat& a, const Mat& b)
{
    require_same(a, b);
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw Error(Errc::DegreeMismatch, "matrix sum shape mismatch");
    const FieldCtx& F = a.ctx();
    Mat out(a.field(), a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            out(i, j) = F.add(a(i, j), b(i, j));
    return out;
}

Mat operator-(const Mat& a, const Mat& b)
{
    const FieldCtx& F = b.ctx();
    Mat nb = b;
    for (int i = 0; i < b.rows(); ++i)
        for (int j = 0; j < b.cols(); ++j)
            nb(i, j) = F.neg(b(i, j));
    return a + nb;
}

Mat operator*(Elt c, const Mat& a)
{
    const FieldCtx& F = a.ctx();
    Mat out = a;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            out(i, j) = F.mul(c, a(i, j));
    return out;
}

Mat transpose(const Mat& a)
{
    Mat out(a.field(), a.cols(), a.rows());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            out(j, i) = a(i, j);
    return out;
}

Mat pow(const Mat& x, const Integer& exponent)
{
    require_square(x);
    if (exponent < 0)
        throw Error(Errc::InvalidArgument, "negative matrix power");
    Mat result = Mat::identity(x.field(), x.rows());
    const std::size_t bits = exponent == 0 ? 0 : mpz_sizeinbase(exponent.get_mpz_t(), 2);
    for (std::size_t i = bits; i-- > 0;) {
        result = result * result;
        if (mpz_tstbit(exponent.get_mpz_t(), i))
            result = result * x;
    }
    return result;
}

Mat eval(const Poly& f, const Mat& x)
{
    require_square(x);
    const FieldCtx& F = x.ctx();
    Mat acc(x.field(), x.rows(), x.cols());
    for (int i = f.degree(); i >= 0; --i) {
        acc = acc * x;
        for (int j = 0; j < x.rows(); ++j)
            acc(j, j) = F.add(acc(j, j), f[i]);
    }
    return acc;
}

std::pair<Mat, std::vector<int>> rref(const Mat& a)
{
    const FieldCtx& F = a.ctx();
    Mat m = a;
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
        int piv = -1;
        for (int i = r; i < m.rows(); ++i) {
            if (m(i, c) != Elt{0}) {
                piv = i;
                break;
            }
        }
        if (piv < 0)
            continue;
        if (piv != r)
            for (int j = 0; j < m.cols(); ++j)
                std::swap(m(piv, j), m(r, j));
        const Elt s = F.inv(m(r, c));
        for (int j = c; j < m.cols(); ++j)
            m(r, j) = F.mul(s, m(r, j));
        for (int i = 0; i < m.rows(); ++i) {
            if (i == r || m(i, c) == Elt{0})
                continue;
            const Elt f = m(i, c);
            for (int j = c; j < m.cols(); ++j)
                m(i, j) = F.sub(m(i, j), F.mul(f, m(r, j)));
        }
        pivots.push_back(c);
        ++r;
    }
    return {std::move(m), std::move(pivots)};
}

int rank(const Mat& a)
{
    return static_cast<int>(rref(a).second.size());
}

Mat row_space(const Mat& a)
{
    auto [m, pivots] = rref(a);
    Mat out(a.field(), static_cast<int>(pivots.size()), a.cols());
    for (int i = 0; i < out.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            out(i, j) = m(i, j);
    return out;
}

Mat left_kernel(const Mat& a)
{
    // vA = 0  <=>  A^T v^T = 0; read the null space off rref(A^T).
    const FieldCtx& F = a.ctx();
    auto [m, pivots] = rref(transpose(a));
    const int n = a.rows();
    std::vector<bool> is_pivot(static_cast<std::size_t>(n), false);
    for (int c : pivots)
        is_pivot[static_cast<std::size_t>(c)] = true;
    Mat out(a.field(), n - static_cast<int>(pivots.size()), n);
    int row = 0;
    for (int free = 0; free < n; ++free) {
        if (is_pivot[static_cast<std::size_t>(free)])
            continue;
        out(row, free) = Elt{1};
        for (std::size_t i = 0; i < pivots.size(); ++i)
            out(row, pivots[i]) = F.neg(m(static_cast<int>(i), free));
        ++row;
    }
    return out;
}

bool is_invertible(const Mat& a)
{
    return a.is_square() && rank(a) == a.rows();
}

std::optional<Mat> inverse(const Mat& a)
{
    require_square(a);
    const int n = a.rows();
    Mat aug(a.field(), n, 2 * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j)
            aug(i, j) = a(i, j);
        aug(i, n + i) = Elt{1};
    }
    auto [m, pivots] = rref(aug);
    if (static_cast<int>(pivots.size()) < n || pivots[static_cast<std::size_t>(n - 1)] != n - 1)
        return std::nullopt;
    Mat out(a.field(), n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            out(i, j) = m(i, n + j);
    return out;
}

Mat solve_left(const Mat& basis, const Mat& w)
{
    // C * B = W  <=>  B^T C^T = W^T.
    const FieldCtx& F = basis.ctx();
    const int k = basis.rows();
    const int d = basis.cols();
    Mat aug(basis.field(), d, k + w.rows());
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < k; ++j)
            aug(i, j) = basis(j, i);
        for (int j = 0; j < w.rows(); ++j)
            aug(i, k + j) = w(j, i);
    }
    auto [m, pivots] = rref(aug);
    for (int c : pivots)
        if (c >= k)
            throw Error(Errc::InvalidArgument, "vector outside the spanned subspace");
    if (static_cast<int>(pivots.size()) != k)
        throw Error(Errc::InvalidArgument, "basis rows are linearly dependent");
    Mat out(basis.field(), w.rows(), k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < w.rows(); ++j)
            out(j, i) = m(i, k + j);
    (void)F;
    return out;
}

Mat restrict_to(const Mat& x, const Mat& basis)
{
    if (basis.rows() == 0)
        return Mat(x.field(), 0, 0);
    return solve_left(basis, basis * x);
}

Mat vstack(const Mat& a, const Mat& b)
{
    if (a.cols() != b.cols())
        throw Error(Errc::DegreeMismatch, "vstack column mismatch");
    Mat out(a.field(), a.rows() + b.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            out(i, j) = a(i, j);
    for (int i = 0; i < b.rows(); ++i)
        for (int j = 0; j < b.cols(); ++j)
            out(a.rows() + i, j) = b(i, j);
    return out;
}

Poly charpoly(const Mat& x)
{
    require_square(x);
    const FieldCtx& F = x.ctx();
    const int n = x.rows();
    Mat h = x;
    // Similarity transform to upper Hessenberg form.
    for (int m = 1; m + 1 < n; ++m) {
        int piv = -1;
        for (int i = m; i < n; ++i) {
            if (h(i, m - 1) != Elt{0}) {
                piv = i;
                break;
            }
        }
        if (piv < 0)
            continue;
        if (piv != m) {
            for (int j = 0; j < n; ++j)
                std::swap(h(piv, j), h(m, j));
            for (int i = 0; i < n; ++i)
                std::swap(h(i, piv), h(i, m));
        }
        const Elt inv = F.inv(h(m, m - 1));
        for (int i = m + 1; i < n; ++i) {
            const Elt u = F.mul(h(i, m - 1), inv);
            if (u == Elt{0})
                continue;
            for (int j = 0; j < n; ++j)
                h(i, j) = F.sub(h(i, j), F.mul(u, h(m, j)));
            for (int r = 0; r < n; ++r)
                h(r, m) = F.add(h(r, m), F.mul(u, h(r, i)));
        }
    }

    // p_k = (t - h_kk) p_{k-1} - sum_i h_{k-i,k} (prod_{j=k-i+1}^{k} h_{j,j-1}) p_{k-i-1}
    const Field& field = x.field();
    std::vector<Poly> p;
    p.reserve(static_cast<std::size_t>(n) + 1);
    p.push_back(Poly::constant(field, Elt{1}));
    const Poly t = Poly::t(field);
    for (int k = 1; k <= n; ++k) {
        Poly cur = (t - Poly::constant(field, h(k - 1, k - 1))) * p[static_cast<std::size_t>(k - 1)];
        Elt prod{1};
        for (int i = 1; i < k; ++i) {
            prod = F.mul(prod, h(k - i, k - i - 1));
            if (prod == Elt{0})
                break;
            const Elt coef = F.mul(h(k - i - 1, k - 1), prod);
            if (coef != Elt{0})
                cur = cur - coef * p[static_cast<std::size_t>(k - i - 1)];
        }
        p.push_back(std::move(cur));
    }
    return p.back();
}

namespace {

// Minimal polynomial of the vector v under X via its Krylov sequence.
Poly vector_annihilator(const Mat& x, std::vector<Elt> v)
{
    const FieldCtx& F = x.ctx();
    const int n = x.rows();
    struct Row {
        std::vector<Elt> vec;
        int pivot;
        std::vector<Elt> comb; // coefficients over powers of X
    };
    std::vector<Row> basis;
    std::vector<Elt> cur = std::move(v);
    for (int k = 0; k <= n; ++k) {
        std::vector<Elt> r = cur;
        std::vector<Elt> comb(static_cast<std::size_t>(n) + 1, Elt{0});
        comb[static_cast<std::size_t>(k)] = Elt{1};
        for (const auto& b : basis) {
            const Elt c = r[static_cast<std::size_t>(b.pivot)];
            if (c == Elt{0})
                continue;
            const Elt f = F.div(c, b.vec[static_cast<std::size_t>(b.pivot)]);
            for (int j = 0; j < n; ++j)
                r[static_cast<std::size_t>(j)] =
                    F.sub(r[static_cast<std::size_t>(j)], F.mul(f, b.vec[static_cast<std::size_t>(j)]));
            for (std::size_t j = 0; j < comb.size(); ++j)
                comb[j] = F.sub(comb[j], F.mul(f, b.comb[j]));
        }
        const auto nz = std::find_if(r.begin(), r.end(), [](Elt e) { return e != Elt{0}; });
        if (nz == r.end())
            return monic(Poly(x.field(), std::move(comb)));
        basis.push_back({r, static_cast<int>(nz - r.begin()), std::move(comb)});
        std::vector<Elt> next(static_cast<std::size_t>(n), Elt{0});
        for (int i = 0; i < n; ++i) {
            const Elt a = cur[static_cast<std::size_t>(i)];
            if (a == Elt{0})
                continue;
            for (int j = 0; j < n; ++j)
                next[static_cast<std::size_t>(j)] = F.add(next[static_cast<std::size_t>(j)], F.mul(a, x(i, j)));
        }
        cur = std::move(next);
    }
    throw Error(Errc::InvalidArgument, "Krylov sequence failed to terminate");
}

} // namespace

Poly minpoly(const Mat& x)
{
    require_square(x);
    const int n = x.rows();
    Poly m = Poly::constant(x.field(), Elt{1});
    for (int i = 0; i < n; ++i) {
        std::vector<Elt> e(static_cast<std::size_t>(n), Elt{0});
        e[static_cast<std::size_t>(i)] = Elt{1};
        m = lcm(m, vector_annihilator(x, std::move(e)));
    }
    return m;
}

bool is_nilpotent(const Mat& x)
{
    require_square(x);
    return pow(x, x.rows()).is_zero();
}

FittingSplit fitting_decompose(const Mat& x)
{
    require_square(x);
    const Mat xd = pow(x, x.rows());
    Mat inv_basis = row_space(xd);
    Mat nil_basis = left_kernel(xd);
    Mat x_inv = restrict_to(x, inv_basis);
    Mat x_nil = restrict_to(x, nil_basis);
    return {std::move(inv_basis), std::move(nil_basis), std::move(x_inv), std::move(x_nil)};
}

Mat invertible_part_embedded(const Mat& x, const FittingSplit& split)
{
    if (split.dim_nil() == 0)
        return x;
    if (split.dim_inv() == 0)
        return Mat::zero(x.field(), x.rows());
    const Mat p = vstack(split.inv_basis, split.nil_basis);
    const Mat block = direct_sum(split.x_inv, Mat::zero(x.field(), split.dim_nil()));
    return *inverse(p) * block * p;
}

Mat invertible_part_embedded(const Mat& x)
{
    return invertible_part_embedded(x, fitting_decompose(x));
}

PrimaryDecomposition primary_components(const Mat& x)
{
    const Poly c = charpoly(x);
    const Poly m = minpoly(x);
    PrimaryDecomposition out;
    for (const auto& [f, mult] : factorize(c).factors) {
        const Mat fx = pow(eval(f, x), mult);
        out.components.push_back({f, left_kernel(fx), mult, multiplicity(m, f)});
    }
    return out;
}

bool is_primary_cyclic(const Mat& x, const Poly& f, const Poly& charpoly_of_x)
{
    const int mc = multiplicity(charpoly_of_x, f);
    if (mc == 0)
        return false;
    // Every irreducible factor of the charpoly divides the minpoly.
    if (mc == 1)
        return true;
    return multiplicity(minpoly(x), f) == mc;
}

bool is_primary_cyclic(const Mat& x, const Poly& f)
{
    if (!f.ctx().same_as(x.ctx()))
        throw Error(Errc::FieldMismatch, "polynomial and matrix over different fields");
    if (!f.is_monic() || !is_irreducible(f))
        throw Error(Errc::NotIrreducible, to_text(f) + " is not monic irreducible");
    return is_primary_cyclic(x, f, charpoly(x));
}

Integer gl_order(int d, const Integer& q)
{
    Integer out = 1;
    const Integer qd = ipow(q, static_cast<unsigned long>(d));
    for (int i = 0; i < d; ++i)
        out *= qd - ipow(q, static_cast<unsigned long>(i));
    return out;
}

namespace {

void add_prime_factors(Integer n, std::map<Integer, int>& out)
{
    for (Integer p = 2; p * p <= n; ++p) {
        while (n % p == 0) {
            ++out[p];
            n /= p;
        }
    }
    if (n > 1)
        ++out[n];
}

} // namespace

Integer element_order(const Mat& g)
{
    if (!is_invertible(g))
        throw Error(Errc::SingularMatrix, "order of a singular matrix");
    const int d = g.rows();
    const Integer q = g.ctx().size();
    // |GL(d,q)| = q^(d(d-1)/2) prod (q^i - 1); factor piecewise.
    std::map<Integer, int> factors;
    factors[Integer(g.ctx().p())] += static_cast<int>(g.ctx().k()) * d * (d - 1) / 2;
    for (int i = 1; i <= d; ++i)
        add_prime_factors(ipow(q, static_cast<unsigned long>(i)) - 1, factors);
    Integer order = gl_order(d, q);
    const Mat id = Mat::identity(g.field(), d);
    for (const auto& [p, e] : factors) {
        for (int i = 0; i < e && order % p == 0; ++i) {
            if (!(pow(g, order / p) == id))
                break;
            order /= p;
        }
    }
    return order;
}

JordanParts jordan_multiplicative(const Mat& g)
{
    require_square(g);
    if (!is_invertible(g))
        throw Error(Errc::SingularMatrix, "Jordan decomposition needs an invertible matrix");
    const Integer p = g.ctx().p();
    Integer m = element_order(g);
    Integer pa = 1;
    while (m % p == 0) {
        m /= p;
        pa *= p;
    }
    const Mat id = Mat::identity(g.field(), g.rows());
    if (m == 1)
        return {id, g};
    Integer m_prime;
    mpz_invert(m_prime.get_mpz_t(), pa.get_mpz_t(), m.get_mpz_t());
    const Mat s = pow(g, pa * m_prime);
    const Mat u = g * *inverse(s);
    return {s, u};
}

Mat conjugate(const Mat& x, const Mat& g)
{
    auto gi = inverse(g);
    if (!gi)
        throw Error(Errc::SingularMatrix, "conjugating by a singular matrix");
    return *gi * x * g;
}

Mat direct_sum(const Mat& a, const Mat& b)
{
    require_same(a, b);
    Mat out(a.field(), a.rows() + b.rows(), a.cols() + b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            out(i, j) = a(i, j);
    for (int i = 0; i < b.rows(); ++i)
        for (int j = 0; j < b.cols(); ++j)
            out(a.rows() + i, a.cols() + j) = b(i, j);
    return out;
}

Mat companion(const Poly& f)
{
    if (f.degree() < 1 || !f.is_monic())
        throw Error(Errc::DegreeMismatch, "companion matrix needs a monic polynomial of degree >= 1");
    const FieldCtx& F = f.ctx();
    const int n = f.degree();
    Mat c(f.field(), n, n);
    for (int i = 0; i + 1 < n; ++i)
        c(i, i + 1) = Elt{1};
    for (int j = 0; j < n; ++j)
        c(n - 1, j) = F.neg(f[j]);
    return c;
}

} // namespace nicensus
