#pragma once

#include "isogauss/prime_field.hpp"

#include <gmpxx.h>

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace isogauss {

/// Element of Z[zeta_p] in the power basis zeta^0 .. zeta^(p-2).
///
/// Every constructor and operation reduces eagerly with
/// zeta^(p-1) = -(1 + zeta + ... + zeta^(p-2)), so two values are equal iff
/// their coefficient vectors are equal.
class CycInt {
public:
    explicit CycInt(int p);

    static CycInt zero(int p) { return CycInt(p); }
    static CycInt constant(int p, const mpz_class& k);
    static CycInt zeta_power(int p, long long e);

    /// Sum of h[e] * zeta^e for e in [0, p); h.size() must be p.
    static CycInt from_exponent_counts(int p, std::span<const std::int64_t> h);
    static CycInt from_exponent_counts(int p, std::span<const mpz_class> h);

    int p() const { return p_; }
    const std::vector<mpz_class>& coeffs() const { return coeffs_; }

    bool is_zero() const;
    /// True when the value is an integer (all coefficients beyond zeta^0 vanish).
    bool is_constant() const;

    CycInt& operator+=(const CycInt& o);
    CycInt& operator-=(const CycInt& o);
    CycInt& operator*=(const mpz_class& k);

    friend CycInt operator+(CycInt a, const CycInt& b) { return a += b; }
    friend CycInt operator-(CycInt a, const CycInt& b) { return a -= b; }
    friend CycInt operator-(CycInt a) { return a *= mpz_class(-1); }
    friend CycInt operator*(const mpz_class& k, CycInt a) { return a *= k; }
    friend CycInt operator*(const CycInt& a, const CycInt& b);
    friend bool operator==(const CycInt& a, const CycInt& b) = default;

    std::string to_string() const;

private:
    void check_same(const CycInt& o) const;

    int p_;
    std::vector<mpz_class> coeffs_;
};

CycInt cyc_add(const CycInt& x, const CycInt& y);
CycInt cyc_neg(const CycInt& x);
CycInt cyc_scale(const mpz_class& k, const CycInt& x);
CycInt cyc_mul(const CycInt& x, const CycInt& y);

/// Divides every coefficient by d; throws InternalError unless exact.
CycInt cyc_exact_div(const CycInt& x, const mpz_class& d);

/// zeta^(2t): the additive character with the uniform factor 2.
CycInt character(const PrimeContext& ctx, Elem t);

/// G*_1 = sum over nonzero s of (s/p) zeta^(2s).
CycInt g_star_one(const PrimeContext& ctx);

/// a + b g with g = G*_1, g^2 = epsilon p.
struct QuadValue {
    mpz_class a;
    mpz_class b;

    friend bool operator==(const QuadValue&, const QuadValue&) = default;
};

inline QuadValue quad_from(long a, long b) { return {mpz_class(a), mpz_class(b)}; }

QuadValue quad_add(const QuadValue& u, const QuadValue& v);
QuadValue quad_neg(const QuadValue& u);
QuadValue quad_scale(const mpz_class& k, const QuadValue& u);
QuadValue quad_mul(const QuadValue& u, const QuadValue& v, const PrimeContext& ctx);
QuadValue quad_pow(const QuadValue& u, unsigned k, const PrimeContext& ctx);

CycInt embed(const QuadValue& u, const PrimeContext& ctx);

std::string to_string(const QuadValue& u);

} // namespace isogauss
