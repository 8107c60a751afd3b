#pragma once

#include "isogauss/budget.hpp"
#include "isogauss/counts.hpp"
#include "isogauss/cyclotomic.hpp"
#include "isogauss/oracle.hpp"
#include "isogauss/quadform.hpp"

#include <gmpxx.h>

namespace isogauss {

/// Closed form of G*_T for T in class c, as a + b g.
/// Even n gives a pure integer, odd n a multiple of g.
QuadValue thm11_value(const PrimeContext& ctx, const FormClass& c);

/// G*_{0_{2m}} = eps^m p^(m^2) mu(2m,2m) / mudelta(m,m).
QuadValue gauss_zero_even(const PrimeContext& ctx, int m);

/// Restricted sum G*_T(r) for T in class c; 0 at r = 0.
QuadValue prop41_value(const PrimeContext& ctx, const FormClass& c, int r);

/// The even-r display for rank d in dimension n at r = 2t, t >= 0.
/// It equals prop41_value for t >= 1; at t = 0 it is a separate quantity
/// (used by the odd-r case) and not the restricted sum.
mpz_class prop41_even_display(const PrimeContext& ctx, int n, int d, int t);

enum class Untwisted { G_I, G_J, Gbar_I, Gbar_J };

/// Sum over n x n U of zeta^(2 tr(tU A U B)) with (A, B) = (I,I), (J,I), (I,J), (J,J).
QuadValue untwisted_closed(const PrimeContext& ctx, int n, Untwisted which);
std::pair<SymMatrix, SymMatrix> untwisted_matrices(const PrimeContext& ctx, int n, Untwisted which);
const char* untwisted_name(Untwisted which);

struct CycCheck {
    CycInt lhs;
    CycInt rhs;
    bool match = false;
};

struct IntCheck {
    mpz_class lhs;
    mpz_class rhs;
    bool match = false;
};

struct RatCheck {
    mpq_class lhs;
    mpq_class rhs;
    bool match = false;
};

enum class GaussSource { ClosedForm, Oracle };

/// g^n G*_T against the alternating sum of isotropic subspace counts of T (+) <1>.
CycCheck cor12_check(const PrimeContext& ctx, const SymMatrix& t, GaussSource source, const Budget& budget = {});
/// Same, with G*_T supplied by the caller.
CycCheck cor12_check(const PrimeContext& ctx, const SymMatrix& t, const CycInt& gauss);
mpz_class cor12_rhs(const PrimeContext& ctx, const SymMatrix& t);

enum class Lemma52Variant { Odd, EvenMatch, EvenCross };

const char* lemma52_name(Lemma52Variant v);
/// The alternating sum over s.
mpz_class lemma52_sum(const PrimeContext& ctx, int m, Lemma52Variant v);
/// The form whose r(., 0) the sum equals: chosen by eps^m, or the other one if flipped.
FormClass lemma52_form(const PrimeContext& ctx, int m, Lemma52Variant v, bool flipped = false);
IntCheck lemma52_check(const PrimeContext& ctx, int m, Lemma52Variant v, bool flipped = false);

/// Sum over classes Y of dimension ell of r*(X, Y) / o(Y) * G*_Y, where
/// X is the canonical nondegenerate form of size d and `small` is an oracle
/// of dimension ell >= 1. r* comes from rep_count_bf.
CycInt lemma53_rhs(const PrimeContext& ctx, BaseForm form, int d, const SymmetricOracle& small,
                   const Budget& budget = {});

mpq_class lemma54_h(const PrimeContext& ctx, int ell, int rank_y, DiscType disc);
mpq_class lemma54_sum(const PrimeContext& ctx, int d, BaseForm form, int ell, const Budget& budget = {});
mpq_class lemma54_target(const PrimeContext& ctx, int d, BaseForm form, int ell);

/// eps^k for k >= 0.
int eps_pow(const PrimeContext& ctx, int k);

} // namespace isogauss
