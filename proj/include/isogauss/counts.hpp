#pragma once

#include "isogauss/prime_field.hpp"
#include "isogauss/quadform.hpp"

#include <gmpxx.h>

namespace isogauss {

/// mu(t,s)    = prod_{i<s} (p^(t-i) - 1)
/// delta(t,s) = prod_{i<s} (p^(t-i) + 1)
/// beta(t,s)  = mu(t,s) / mu(s,s), the number of s-subspaces of F_p^t
/// nu(t,s)    = prod_{s<=i<t} (p^t - p^i); nu(t,0) = |GL_t(F_p)|
/// gamma(t,s) = mudelta(t,s) / mudelta(s,s)
/// mu, delta, beta and gamma are 1 at s = 0; beta is 0 for s < 0.
enum class QKind { Mu, Delta, MuDelta, Beta, Nu, Gamma };

mpz_class qfunc(const PrimeContext& ctx, QKind kind, int t, int s);

/// p^e for e >= 0.
mpz_class ipow(int p, int e);
/// p^e as an exact rational, any sign of e.
mpq_class qpow(int p, int e);

enum class BaseForm { I, J };

struct RepTarget {
    enum class Kind { One, Omega, Zeros };
    Kind kind = Kind::One;
    int d = 0; // only for Zeros

    static RepTarget one() { return {Kind::One, 0}; }
    static RepTarget omega() { return {Kind::Omega, 0}; }
    static RepTarget zeros(int d) { return {Kind::Zeros, d}; }
};

/// Closed primitive representation numbers r*(I_size or J_size, target)
/// for targets <1>, <omega> and 0_d.
mpz_class rep_star_lemma51(const PrimeContext& ctx, BaseForm form, int size, RepTarget target);

/// Order of the orthogonal group of canonical_matrix(c).
mpz_class orth_order(const PrimeContext& ctx, const FormClass& c);

/// R*(c, 0_j): the number of j-dimensional totally isotropic subspaces.
mpz_class iso_count(const PrimeContext& ctx, const FormClass& c, int j);

/// r(c, 0_d): d-tuples of vectors spanning a totally isotropic subspace.
mpz_class rep_zero_full(const PrimeContext& ctx, const FormClass& c, int d);

/// Exact a / b; throws InternalError unless b divides a.
mpz_class exact_div(const mpz_class& a, const mpz_class& b);
/// Numerator of q; throws InternalError unless q is an integer.
mpz_class require_integer(mpq_class q, const char* what);

} // namespace isogauss
