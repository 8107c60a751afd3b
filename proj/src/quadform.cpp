#include "isogauss/quadform.hpp"

#include "isogauss/counts.hpp"
#include "isogauss/errors.hpp"

#include <array>
#include <cstdlib>
#include <string>

namespace isogauss {

std::uint64_t checked_power(std::uint64_t p, unsigned e)
{
    std::uint64_t r = 1;
    for (unsigned i = 0; i < e; ++i) {
        if (r > UINT64_MAX / p)
            return UINT64_MAX;
        r *= p;
    }
    return r;
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> split_range(std::uint64_t size, unsigned chunks)
{
    if (chunks == 0)
        chunks = 1;
    std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
    const std::uint64_t step = size / chunks;
    const std::uint64_t extra = size % chunks;
    std::uint64_t lo = 0;
    for (unsigned c = 0; c < chunks && lo < size; ++c) {
        const std::uint64_t hi = lo + step + (c < extra ? 1 : 0);
        out.emplace_back(lo, hi);
        lo = hi;
    }
    if (out.empty())
        out.emplace_back(0, 0);
    return out;
}

std::uint64_t max_terms_from_env(std::uint64_t fallback)
{
    const char* v = std::getenv("ISOGAUSS_MAX_TERMS");
    if (v == nullptr || *v == '\0')
        return fallback;
    char* end = nullptr;
    const unsigned long long x = std::strtoull(v, &end, 10);
    if (end == v || *end != '\0' || x == 0)
        throw UsageError(std::string("invalid ISOGAUSS_MAX_TERMS: ") + v);
    return x;
}

Matrix Matrix::identity(int n)
{
    Matrix m(n, n);
    for (int i = 0; i < n; ++i)
        m(i, i) = 1;
    return m;
}

Matrix multiply(const PrimeContext& ctx, const Matrix& x, const Matrix& y)
{
    if (x.cols() != y.rows())
        throw UsageError("matrix dimension mismatch");
    Matrix r(x.rows(), y.cols());
    for (int i = 0; i < x.rows(); ++i)
        for (int j = 0; j < y.cols(); ++j) {
            long long s = 0;
            for (int k = 0; k < x.cols(); ++k)
                s += static_cast<long long>(x(i, k)) * y(k, j);
            r(i, j) = ctx.reduce(s);
        }
    return r;
}

Matrix transpose(const Matrix& x)
{
    Matrix r(x.cols(), x.rows());
    for (int i = 0; i < x.rows(); ++i)
        for (int j = 0; j < x.cols(); ++j)
            r(j, i) = x(i, j);
    return r;
}

int rank(const PrimeContext& ctx, Matrix m)
{
    int rk = 0;
    for (int c = 0; c < m.cols() && rk < m.rows(); ++c) {
        int piv = -1;
        for (int r = rk; r < m.rows(); ++r)
            if (m(r, c) != 0) {
                piv = r;
                break;
            }
        if (piv < 0)
            continue;
        for (int k = 0; k < m.cols(); ++k)
            std::swap(m(rk, k), m(piv, k));
        const Elem inv = ctx.inv(m(rk, c));
        for (int r = rk + 1; r < m.rows(); ++r) {
            const Elem f = ctx.mul(m(r, c), inv);
            if (f == 0)
                continue;
            for (int k = c; k < m.cols(); ++k)
                m(r, k) = ctx.sub(m(r, k), ctx.mul(f, m(rk, k)));
        }
        ++rk;
    }
    return rk;
}

Elem determinant(const PrimeContext& ctx, Matrix m)
{
    if (m.rows() != m.cols())
        throw UsageError("determinant of a non-square matrix");
    std::vector<Elem> a(m.data());
    return detail::determinant_kernel(ctx, a.data(), m.rows());
}

SymMatrix SymMatrix::from_rows(const PrimeContext& ctx, const std::vector<std::vector<long long>>& rows)
{
    const int n = static_cast<int>(rows.size());
    SymMatrix s(n);
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(rows[static_cast<std::size_t>(i)].size()) != n)
            throw UsageError("matrix is not square");
        for (int j = 0; j < n; ++j)
            s.m_(i, j) = ctx.reduce(rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (s.m_(i, j) != s.m_(j, i))
                throw UsageError("matrix is not symmetric");
    return s;
}

SymMatrix SymMatrix::from_matrix(const Matrix& m)
{
    if (m.rows() != m.cols())
        throw UsageError("matrix is not square");
    for (int i = 0; i < m.rows(); ++i)
        for (int j = i + 1; j < m.cols(); ++j)
            if (m(i, j) != m(j, i))
                throw UsageError("matrix is not symmetric");
    SymMatrix s;
    s.m_ = m;
    return s;
}

SymMatrix SymMatrix::diagonal(const PrimeContext& ctx, const std::vector<long long>& diag)
{
    SymMatrix s(static_cast<int>(diag.size()));
    for (std::size_t i = 0; i < diag.size(); ++i)
        s.set(static_cast<int>(i), static_cast<int>(i), ctx.reduce(diag[i]));
    return s;
}

SymMatrix direct_sum(const SymMatrix& a, const SymMatrix& b)
{
    SymMatrix s(a.n() + b.n());
    for (int i = 0; i < a.n(); ++i)
        for (int j = i; j < a.n(); ++j)
            s.set(i, j, a(i, j));
    for (int i = 0; i < b.n(); ++i)
        for (int j = i; j < b.n(); ++j)
            s.set(a.n() + i, a.n() + j, b(i, j));
    return s;
}

SymMatrix congruent(const PrimeContext& ctx, const SymMatrix& t, const Matrix& g)
{
    return SymMatrix::from_matrix(multiply(ctx, transpose(g), multiply(ctx, t.matrix(), g)));
}

Elem trace_product(const PrimeContext& ctx, const Matrix& a, const Matrix& b)
{
    if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows())
        throw UsageError("trace_product needs square matrices of equal size");
    long long s = 0;
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k)
            s += static_cast<long long>(a(i, k)) * b(k, i);
    return ctx.reduce(s);
}

std::string disc_name(DiscType t) { return t == DiscType::Square ? "sq" : "nonsq"; }

DiscType parse_disc(const std::string& s)
{
    if (s == "sq")
        return DiscType::Square;
    if (s == "nonsq")
        return DiscType::NonSquare;
    throw UsageError("disc must be 'sq' or 'nonsq', got '" + s + "'");
}

std::string to_string(const FormClass& c)
{
    return "(n=" + std::to_string(c.n) + ",d=" + std::to_string(c.d) + "," + disc_name(c.disc) + ")";
}

namespace detail {

std::pair<int, bool> classify_kernel(const PrimeContext& ctx, Elem* a, int n)
{
    const auto at = [&](int i, int j) -> Elem& { return a[i * n + j]; };
    std::array<int, 64> live{};
    if (n > static_cast<int>(live.size()))
        throw UsageError("classify: dimension too large");
    int nlive = n;
    for (int i = 0; i < n; ++i)
        live[static_cast<std::size_t>(i)] = i;

    Elem prod = 1;
    int rk = 0;
    while (nlive > 0) {
        int pos = -1;
        for (int k = 0; k < nlive; ++k)
            if (at(live[static_cast<std::size_t>(k)], live[static_cast<std::size_t>(k)]) != 0) {
                pos = k;
                break;
            }
        if (pos < 0) {
            // Zero diagonal: find e_ij != 0 and add row/col j to row/col i,
            // which puts 2 e_ij on the diagonal.
            int pi = -1, pj = -1;
            for (int x = 0; x < nlive && pi < 0; ++x)
                for (int y = x + 1; y < nlive; ++y)
                    if (at(live[static_cast<std::size_t>(x)], live[static_cast<std::size_t>(y)]) != 0) {
                        pi = x;
                        pj = y;
                        break;
                    }
            if (pi < 0)
                break;
            const int i = live[static_cast<std::size_t>(pi)];
            const int j = live[static_cast<std::size_t>(pj)];
            for (int k = 0; k < nlive; ++k) {
                const int c = live[static_cast<std::size_t>(k)];
                at(i, c) = ctx.add(at(i, c), at(j, c));
            }
            for (int k = 0; k < nlive; ++k) {
                const int r = live[static_cast<std::size_t>(k)];
                at(r, i) = ctx.add(at(r, i), at(r, j));
            }
            pos = pi;
        }
        const int i = live[static_cast<std::size_t>(pos)];
        const Elem piv = at(i, i);
        const Elem inv = ctx.inv(piv);
        prod = ctx.mul(prod, piv);
        ++rk;
        live[static_cast<std::size_t>(pos)] = live[static_cast<std::size_t>(nlive - 1)];
        --nlive;
        // Schur complement on the remaining block.
        for (int x = 0; x < nlive; ++x) {
            const int r = live[static_cast<std::size_t>(x)];
            const Elem f = ctx.mul(at(r, i), inv);
            if (f == 0)
                continue;
            for (int y = 0; y < nlive; ++y) {
                const int c = live[static_cast<std::size_t>(y)];
                at(r, c) = ctx.sub(at(r, c), ctx.mul(f, at(i, c)));
            }
        }
    }
    return {rk, ctx.legendre(prod) == 1};
}

Elem determinant_kernel(const PrimeContext& ctx, Elem* a, int n)
{
    const auto at = [&](int i, int j) -> Elem& { return a[i * n + j]; };
    Elem det = 1;
    for (int c = 0; c < n; ++c) {
        int piv = -1;
        for (int r = c; r < n; ++r)
            if (at(r, c) != 0) {
                piv = r;
                break;
            }
        if (piv < 0)
            return 0;
        if (piv != c) {
            for (int k = c; k < n; ++k)
                std::swap(at(c, k), at(piv, k));
            det = ctx.neg(det);
        }
        det = ctx.mul(det, at(c, c));
        const Elem inv = ctx.inv(at(c, c));
        for (int r = c + 1; r < n; ++r) {
            const Elem f = ctx.mul(at(r, c), inv);
            if (f == 0)
                continue;
            for (int k = c; k < n; ++k)
                at(r, k) = ctx.sub(at(r, k), ctx.mul(f, at(c, k)));
        }
    }
    return det;
}

} // namespace detail

FormClass classify(const PrimeContext& ctx, const SymMatrix& t)
{
    std::vector<Elem> a(t.matrix().data());
    for (Elem v : a)
        if (v < 0 || v >= ctx.p())
            throw UsageError("matrix entries must be reduced mod p");
    const auto [rk, square] = detail::classify_kernel(ctx, a.data(), t.n());
    FormClass c{t.n(), rk, DiscType::Square};
    if (rk > 0 && !square)
        c.disc = DiscType::NonSquare;
    return c;
}

SymMatrix canonical_matrix(const PrimeContext& ctx, const FormClass& c)
{
    if (c.n < 0 || c.d < 0 || c.d > c.n)
        throw UsageError("invalid form class " + to_string(c));
    SymMatrix s(c.n);
    for (int i = 0; i < c.d; ++i)
        s.set(i, i, 1);
    if (c.d > 0 && c.disc == DiscType::NonSquare)
        s.set(c.d - 1, c.d - 1, ctx.omega());
    return s;
}

std::vector<FormClass> all_classes(int n)
{
    std::vector<FormClass> out{{n, 0, DiscType::Square}};
    for (int d = 1; d <= n; ++d) {
        out.push_back({n, d, DiscType::Square});
        out.push_back({n, d, DiscType::NonSquare});
    }
    return out;
}

mpz_class orbit_size(const PrimeContext& ctx, const FormClass& c)
{
    const mpz_class gl = qfunc(ctx, QKind::Nu, c.n, 0);
    const mpz_class o = orth_order(ctx, c);
    if (!mpz_divisible_p(gl.get_mpz_t(), o.get_mpz_t()))
        throw InternalError("orbit size is not integral for " + to_string(c));
    return gl / o;
}

SymmetricStream::SymmetricStream(const PrimeContext& ctx, int n, const Budget& budget)
    : ctx_(&ctx), n_(n), digits_(n * (n + 1) / 2), size_(0)
{
    if (n < 0)
        throw UsageError("negative dimension");
    size_ = checked_power(static_cast<std::uint64_t>(ctx.p()), static_cast<unsigned>(digits_));
    if (size_ > budget.max_terms)
        throw BudgetExceeded("p^(n(n+1)/2) = " + (size_ == UINT64_MAX ? std::string("overflow") : std::to_string(size_)) +
                             " symmetric matrices exceeds the budget of " + std::to_string(budget.max_terms));
}

SymMatrix SymmetricStream::at(std::uint64_t index) const
{
    if (index >= size_)
        throw UsageError("symmetric matrix index out of range");
    SymMatrix s(n_);
    const auto p = static_cast<std::uint64_t>(ctx_->p());
    for (int i = n_ - 1; i >= 0; --i)
        for (int j = n_ - 1; j >= i; --j) {
            s.set(i, j, static_cast<Elem>(index % p));
            index /= p;
        }
    return s;
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> SymmetricStream::split(unsigned chunks) const
{
    return split_range(size_, chunks);
}

SymmetricStream enumerate_symmetric(const PrimeContext& ctx, int n, const Budget& budget)
{
    return SymmetricStream(ctx, n, budget);
}

} // namespace isogauss
