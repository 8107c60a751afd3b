#include "isogauss/cyclotomic.hpp"

#include "isogauss/errors.hpp"

#include <sstream>

namespace isogauss {

namespace {

std::size_t idx(long long i) { return static_cast<std::size_t>(i); }

} // namespace

CycInt::CycInt(int p) : p_(p), coeffs_(idx(p - 1)) {}

CycInt CycInt::constant(int p, const mpz_class& k)
{
    CycInt x(p);
    x.coeffs_[0] = k;
    return x;
}

CycInt CycInt::zeta_power(int p, long long e)
{
    e %= p;
    if (e < 0)
        e += p;
    CycInt x(p);
    if (e == p - 1) {
        for (auto& c : x.coeffs_)
            c = -1;
    } else {
        x.coeffs_[idx(e)] = 1;
    }
    return x;
}

CycInt CycInt::from_exponent_counts(int p, std::span<const std::int64_t> h)
{
    if (h.size() != idx(p))
        throw UsageError("exponent histogram must have p entries");
    CycInt x(p);
    const std::int64_t top = h[idx(p - 1)];
    for (int i = 0; i < p - 1; ++i) {
        x.coeffs_[idx(i)] = static_cast<long>(h[idx(i)] - top);
    }
    return x;
}

CycInt CycInt::from_exponent_counts(int p, std::span<const mpz_class> h)
{
    if (h.size() != idx(p))
        throw UsageError("exponent histogram must have p entries");
    CycInt x(p);
    for (int i = 0; i < p - 1; ++i)
        x.coeffs_[idx(i)] = h[idx(i)] - h[idx(p - 1)];
    return x;
}

bool CycInt::is_zero() const
{
    for (const auto& c : coeffs_)
        if (c != 0)
            return false;
    return true;
}

bool CycInt::is_constant() const
{
    for (std::size_t i = 1; i < coeffs_.size(); ++i)
        if (coeffs_[i] != 0)
            return false;
    return true;
}

void CycInt::check_same(const CycInt& o) const
{
    if (p_ != o.p_)
        throw UsageError("CycInt values over different primes");
}

CycInt& CycInt::operator+=(const CycInt& o)
{
    check_same(o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        coeffs_[i] += o.coeffs_[i];
    return *this;
}

CycInt& CycInt::operator-=(const CycInt& o)
{
    check_same(o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        coeffs_[i] -= o.coeffs_[i];
    return *this;
}

CycInt& CycInt::operator*=(const mpz_class& k)
{
    for (auto& c : coeffs_)
        c *= k;
    return *this;
}

CycInt operator*(const CycInt& a, const CycInt& b)
{
    a.check_same(b);
    const int p = a.p_;
    // Multiply in Z[x]/(x^p - 1), then fold zeta^(p-1) back into the basis.
    std::vector<mpz_class> prod(idx(p));
    for (int i = 0; i < p - 1; ++i) {
        if (a.coeffs_[idx(i)] == 0)
            continue;
        for (int j = 0; j < p - 1; ++j)
            prod[idx((i + j) % p)] += a.coeffs_[idx(i)] * b.coeffs_[idx(j)];
    }
    return CycInt::from_exponent_counts(p, std::span<const mpz_class>(prod));
}

std::string CycInt::to_string() const
{
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (i)
            os << ',';
        os << coeffs_[i].get_str();
    }
    os << ']';
    return os.str();
}

CycInt cyc_add(const CycInt& x, const CycInt& y) { return x + y; }
CycInt cyc_neg(const CycInt& x) { return -x; }
CycInt cyc_scale(const mpz_class& k, const CycInt& x) { return k * x; }
CycInt cyc_mul(const CycInt& x, const CycInt& y) { return x * y; }

CycInt cyc_exact_div(const CycInt& x, const mpz_class& d)
{
    if (d == 0)
        throw InternalError("division of a cyclotomic integer by zero");
    std::vector<mpz_class> h(idx(x.p()));
    for (std::size_t i = 0; i < x.coeffs().size(); ++i) {
        if (!mpz_divisible_p(x.coeffs()[i].get_mpz_t(), d.get_mpz_t()))
            throw InternalError("non-exact division of a cyclotomic integer");
        h[i] = x.coeffs()[i] / d;
    }
    return CycInt::from_exponent_counts(x.p(), std::span<const mpz_class>(h));
}

CycInt character(const PrimeContext& ctx, Elem t)
{
    return CycInt::zeta_power(ctx.p(), 2LL * ctx.reduce(t));
}

CycInt g_star_one(const PrimeContext& ctx)
{
    const int p = ctx.p();
    std::vector<std::int64_t> h(idx(p), 0);
    for (Elem s = 1; s < p; ++s)
        h[idx(2LL * s % p)] += ctx.legendre(s);
    return CycInt::from_exponent_counts(p, std::span<const std::int64_t>(h));
}

QuadValue quad_add(const QuadValue& u, const QuadValue& v) { return {u.a + v.a, u.b + v.b}; }

QuadValue quad_neg(const QuadValue& u) { return {-u.a, -u.b}; }

QuadValue quad_scale(const mpz_class& k, const QuadValue& u) { return {k * u.a, k * u.b}; }

QuadValue quad_mul(const QuadValue& u, const QuadValue& v, const PrimeContext& ctx)
{
    const mpz_class eps_p = ctx.epsilon() * ctx.p();
    return {u.a * v.a + eps_p * u.b * v.b, u.a * v.b + u.b * v.a};
}

QuadValue quad_pow(const QuadValue& u, unsigned k, const PrimeContext& ctx)
{
    QuadValue result = quad_from(1, 0);
    QuadValue base = u;
    for (; k > 0; k >>= 1) {
        if (k & 1U)
            result = quad_mul(result, base, ctx);
        base = quad_mul(base, base, ctx);
    }
    return result;
}

CycInt embed(const QuadValue& u, const PrimeContext& ctx)
{
    return CycInt::constant(ctx.p(), u.a) + u.b * g_star_one(ctx);
}

std::string to_string(const QuadValue& u)
{
    return "{\"a\":\"" + u.a.get_str() + "\",\"b\":\"" + u.b.get_str() + "\"}";
}

} // namespace isogauss
