#include "isogauss/errors.hpp"
#include "isogauss/formulas.hpp"

#include <doctest.h>

using namespace isogauss;

TEST_CASE("closed form of the twisted sum")
{
    const PrimeContext p3(3);
    CHECK(thm11_value(p3, {1, 1, DiscType::Square}) == quad_from(0, 1));
    CHECK(thm11_value(p3, {2, 2, DiscType::Square}) == quad_from(3, 0));
    CHECK(thm11_value(p3, {3, 3, DiscType::Square}) == quad_from(0, -9));
    CHECK(thm11_value(p3, {3, 2, DiscType::Square}) == quad_from(0, 0));
    CHECK_THROWS_AS(thm11_value(p3, {2, 3, DiscType::Square}), UsageError);
    for (int p : {3, 5, 7, 11}) {
        const PrimeContext ctx(p);
        for (int n = 1; n <= 7; ++n)
            for (int d = 1; d <= n; ++d) {
                const QuadValue sq = thm11_value(ctx, {n, d, DiscType::Square});
                const QuadValue ns = thm11_value(ctx, {n, d, DiscType::NonSquare});
                if (n % 2 == 0) {
                    CHECK(ns == sq);
                    CHECK(sq.b == 0);
                } else {
                    CHECK(ns == quad_neg(sq));
                    CHECK(sq.a == 0);
                }
            }
    }
}

TEST_CASE("zero form")
{
    const PrimeContext p3(3);
    CHECK(gauss_zero_even(p3, 0) == quad_from(1, 0));
    CHECK(gauss_zero_even(p3, 1) == quad_from(-6, 0));
    for (int p : {3, 5, 7})
        for (int m = 0; m <= 4; ++m) {
            const PrimeContext ctx(p);
            if (m >= 1)
                CHECK(thm11_value(ctx, {2 * m, 0, DiscType::Square}) == gauss_zero_even(ctx, m));
            CHECK(thm11_value(ctx, {2 * m + 1, 0, DiscType::Square}) == quad_from(0, 0));
        }
}

TEST_CASE("closed form matches enumeration on small classes")
{
    for (int p : {3, 5, 7}) {
        const PrimeContext ctx(p);
        for (int n = 1; n <= 2; ++n) {
            const SymmetricOracle oracle(ctx, n);
            for (const auto& c : all_classes(n)) {
                CAPTURE(p);
                CAPTURE(to_string(c));
                const SymMatrix t = canonical_matrix(ctx, c);
                CHECK(embed(thm11_value(ctx, c), ctx) == oracle.twisted(t));
                const auto brute = oracle.restricted_all(t);
                for (int r = 0; r <= n; ++r)
                    CHECK(embed(prop41_value(ctx, c, r), ctx) == brute[static_cast<std::size_t>(r)]);
            }
        }
    }
}

TEST_CASE("isotropic subspace identity for the twisted sum")
{
    const PrimeContext p3(3), p5(5);
    const auto chk3 = cor12_check(p3, SymMatrix::diagonal(p3, {1}), GaussSource::ClosedForm);
    CHECK(chk3.match);
    CHECK(chk3.rhs == CycInt::constant(3, -3));
    const auto chk5 = cor12_check(p5, SymMatrix::diagonal(p5, {1}), GaussSource::Oracle);
    CHECK(chk5.match);
    CHECK(chk5.rhs == CycInt::constant(5, 5));
    const auto zero = cor12_check(p3, SymMatrix(1), GaussSource::Oracle);
    CHECK(zero.match);
    CHECK(zero.lhs.is_zero());
    for (int p : {3, 5, 7})
        for (int n = 1; n <= 6; ++n)
            for (const auto& c : all_classes(n)) {
                const PrimeContext ctx(p);
                CHECK(cor12_check(ctx, canonical_matrix(ctx, c), GaussSource::ClosedForm).match);
            }
}

TEST_CASE("restricted sum values")
{
    const PrimeContext p3(3);
    for (int n = 1; n <= 4; ++n)
        for (const auto& c : all_classes(n)) {
            CHECK(prop41_value(p3, c, n) == thm11_value(p3, c));
            CHECK(prop41_value(p3, c, 0) == quad_from(0, 0));
        }
    // even rank, odd r
    CHECK(prop41_value(p3, {2, 2, DiscType::Square}, 1) == quad_from(0, 0));
    // values from a direct enumeration of the two orbits
    CHECK(prop41_value(p3, {2, 1, DiscType::Square}, 1) == quad_from(0, 3));
    CHECK(prop41_value(p3, {3, 1, DiscType::Square}, 2) == quad_from(-78, 0));
    CHECK_THROWS_AS(prop41_value(p3, {2, 2, DiscType::Square}, 3), UsageError);
    for (int p : {3, 5, 7, 11})
        for (int n = 0; n <= 6; ++n)
            for (int d = 0; d <= n; d += 2)
                CHECK(prop41_even_display(PrimeContext(p), n, d, 0) == 1);
}

TEST_CASE("untwisted closed forms")
{
    const PrimeContext p3(3);
    CHECK(untwisted_closed(p3, 1, Untwisted::G_I) == quad_from(0, 1));
    CHECK(untwisted_closed(p3, 2, Untwisted::G_I) == quad_from(9, 0));
    // Both A and B carry omega: the corner weight omega^2 is a square.
    CHECK(untwisted_closed(p3, 1, Untwisted::Gbar_J) == quad_from(0, 1));
    CHECK(untwisted_closed(p3, 1, Untwisted::G_J) == quad_from(0, -1));
    for (int p : {3, 5, 7})
        for (int n = 1; n <= 2; ++n)
            for (auto w : {Untwisted::G_I, Untwisted::G_J, Untwisted::Gbar_I, Untwisted::Gbar_J}) {
                const PrimeContext ctx(p);
                const auto [a, b] = untwisted_matrices(ctx, n, w);
                CHECK(embed(untwisted_closed(ctx, n, w), ctx) == gauss_untwisted_bf(ctx, a, b));
            }
}

TEST_CASE("alternating sums of subspace counts")
{
    const PrimeContext p3(3), p5(5);
    const auto odd0 = lemma52_check(p3, 0, Lemma52Variant::Odd);
    CHECK(odd0.match);
    CHECK(odd0.lhs == 1);
    CHECK(lemma52_check(p3, 1, Lemma52Variant::Odd).rhs == rep_zero_full(p3, {3, 3, DiscType::Square}, 3));
    CHECK(lemma52_check(p5, 1, Lemma52Variant::EvenMatch).rhs == rep_zero_full(p5, {2, 2, DiscType::Square}, 2));
    CHECK_THROWS_AS(lemma52_sum(p3, 0, Lemma52Variant::EvenMatch), UsageError);
    for (int p : {3, 5, 7, 11, 13})
        for (int m = 0; m <= 4; ++m)
            for (auto v : {Lemma52Variant::Odd, Lemma52Variant::EvenMatch, Lemma52Variant::EvenCross}) {
                if (m == 0 && v != Lemma52Variant::Odd)
                    continue;
                const PrimeContext ctx(p);
                CHECK(lemma52_check(ctx, m, v).match);
                if (v == Lemma52Variant::Odd)
                    CHECK(lemma52_check(ctx, m, v, true).match);
                else
                    CHECK_FALSE(lemma52_check(ctx, m, v, true).match);
            }
}

TEST_CASE("weighted class sums")
{
    const PrimeContext p3(3);
    CHECK(lemma54_h(p3, 2, 2, DiscType::Square) == -1);
    CHECK(lemma54_h(p3, 1, 1, DiscType::Square) == 1);
    CHECK(lemma54_h(p3, 2, 0, DiscType::Square) == 2);
    CHECK(lemma54_h(p3, 3, 2, DiscType::Square) == 0);
    CHECK(lemma54_sum(p3, 1, BaseForm::I, 1) == 1);
    CHECK(lemma54_sum(p3, 2, BaseForm::I, 1) == 0);
    CHECK(lemma54_sum(p3, 2, BaseForm::I, 2) == -1);
    for (int p : {3, 5})
        for (int d = 1; d <= 3; ++d)
            for (BaseForm f : {BaseForm::I, BaseForm::J})
                for (int ell = 1; ell <= d; ++ell) {
                    const PrimeContext ctx(p);
                    CHECK(lemma54_sum(ctx, d, f, ell) == lemma54_target(ctx, d, f, ell));
                }
}

TEST_CASE("orbit decomposition of restricted sums")
{
    for (int p : {3, 5}) {
        const PrimeContext ctx(p);
        for (int d = 2; d <= 3; ++d) {
            const SymmetricOracle big(ctx, d);
            for (BaseForm f : {BaseForm::I, BaseForm::J})
                for (int ell = 1; ell < d; ++ell) {
                    const SymmetricOracle small(ctx, ell);
                    const SymMatrix x =
                        canonical_matrix(ctx, {d, d, f == BaseForm::I ? DiscType::Square : DiscType::NonSquare});
                    CHECK(big.restricted(x, ell) == lemma53_rhs(ctx, f, d, small));
                }
        }
    }
}
