#include "isogauss/errors.hpp"
#include "isogauss/quadform.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <map>

using namespace isogauss;

TEST_CASE("classification examples")
{
    const PrimeContext p3(3), p5(5);
    CHECK(classify(p3, SymMatrix(2)) == FormClass{2, 0, DiscType::Square});
    CHECK(classify(p3, SymMatrix::diagonal(p3, {1, 2})) == FormClass{2, 2, DiscType::NonSquare});
    CHECK(classify(p5, SymMatrix::from_rows(p5, {{0, 1}, {1, 0}})) == FormClass{2, 2, DiscType::Square});
    CHECK(classify(p3, SymMatrix::from_rows(p3, {{0, 1}, {1, 0}})) == FormClass{2, 2, DiscType::NonSquare});
}

TEST_CASE("canonical matrices")
{
    const PrimeContext p3(3), p7(7);
    CHECK(canonical_matrix(p3, {3, 0, DiscType::Square}) == SymMatrix(3));
    CHECK(canonical_matrix(p3, {2, 2, DiscType::NonSquare}) == SymMatrix::diagonal(p3, {1, 2}));
    CHECK(canonical_matrix(p7, {3, 1, DiscType::Square}) == SymMatrix::diagonal(p7, {1, 0, 0}));
    CHECK_THROWS_AS(canonical_matrix(p3, {2, 3, DiscType::Square}), UsageError);
}

TEST_CASE("input validation")
{
    const PrimeContext p3(3);
    CHECK_THROWS_AS(SymMatrix::from_rows(p3, {{1, 2}, {0, 1}}), UsageError);
    CHECK_THROWS_AS(SymMatrix::from_rows(p3, {{1, 2}}), UsageError);
    CHECK(SymMatrix::from_rows(p3, {{4, -1}, {-1, 5}}) == SymMatrix::from_rows(p3, {{1, 2}, {2, 2}}));
    CHECK(parse_disc("sq") == DiscType::Square);
    CHECK(parse_disc("nonsq") == DiscType::NonSquare);
    CHECK_THROWS_AS(parse_disc("other"), UsageError);
}

TEST_CASE("enumeration sizes and order")
{
    const PrimeContext p3(3), p5(5);
    CHECK(enumerate_symmetric(p3, 1).size() == 3);
    CHECK(enumerate_symmetric(p3, 2).size() == 27);
    CHECK(enumerate_symmetric(p5, 3).size() == 15625);
    const auto s = enumerate_symmetric(p3, 2);
    CHECK(s.at(0) == SymMatrix(2));
    CHECK(s.at(1) == SymMatrix::from_rows(p3, {{0, 0}, {0, 1}}));
    CHECK(s.at(3) == SymMatrix::from_rows(p3, {{0, 1}, {1, 0}}));
    CHECK(s.at(9) == SymMatrix::from_rows(p3, {{1, 0}, {0, 0}}));
    Budget tiny;
    tiny.max_terms = 100;
    CHECK_THROWS_AS(enumerate_symmetric(p3, 3, tiny), BudgetExceeded);

    std::uint64_t seen = 0;
    for (const auto& [lo, hi] : s.split(4))
        seen += hi - lo;
    CHECK(seen == 27);
}

TEST_CASE("orbit sizes")
{
    const PrimeContext p3(3);
    CHECK(orbit_size(p3, {2, 2, DiscType::Square}) == 6);
    CHECK(orbit_size(p3, {2, 2, DiscType::NonSquare}) == 12);
    CHECK(orbit_size(p3, {4, 0, DiscType::Square}) == 1);
}

TEST_CASE("orbits partition the symmetric matrices and match brute classification")
{
    for (int p : {3, 5, 7}) {
        const PrimeContext ctx(p);
        for (int n = 1; n <= (p == 3 ? 4 : 3); ++n) {
            CAPTURE(p);
            CAPTURE(n);
            const auto stream = enumerate_symmetric(ctx, n);
            std::map<std::pair<int, int>, mpz_class> counted;
            stream.for_each(0, stream.size(), [&](const SymMatrix& s) {
                const FormClass c = classify(ctx, s);
                CHECK(c.d == rank(ctx, s.matrix()));
                counted[{c.d, c.disc == DiscType::Square ? 0 : 1}] += 1;
            });
            mpz_class total = 0;
            for (const auto& c : all_classes(n)) {
                const mpz_class size = orbit_size(ctx, c);
                CHECK(counted[{c.d, c.disc == DiscType::Square ? 0 : 1}] == size);
                total += size;
            }
            CHECK(total == static_cast<unsigned long>(stream.size()));
        }
    }
}

TEST_CASE("round trip and congruence invariance")
{
    std::mt19937 rng(2024);
    for (int p : {3, 5, 7, 11}) {
        const PrimeContext ctx(p);
        for (int n = 1; n <= 5; ++n) {
            for (const auto& c : all_classes(n))
                CHECK(classify(ctx, canonical_matrix(ctx, c)) == c);
            for (int trial = 0; trial < 30; ++trial) {
                const SymMatrix t = testing::random_symmetric(ctx, n, rng);
                const Matrix g = testing::random_invertible(ctx, n, rng);
                CHECK(classify(ctx, congruent(ctx, t, g)) == classify(ctx, t));
            }
        }
    }
}

TEST_CASE("class list order")
{
    const auto cls = all_classes(2);
    REQUIRE(cls.size() == 5);
    CHECK(cls[0] == FormClass{2, 0, DiscType::Square});
    CHECK(cls[1] == FormClass{2, 1, DiscType::Square});
    CHECK(cls[2] == FormClass{2, 1, DiscType::NonSquare});
    CHECK(cls[4] == FormClass{2, 2, DiscType::NonSquare});
}

TEST_CASE("matrix helpers")
{
    const PrimeContext p5(5);
    const Matrix i = Matrix::identity(3);
    CHECK(determinant(p5, i) == 1);
    CHECK(rank(p5, Matrix(2, 3)) == 0);
    const SymMatrix a = SymMatrix::diagonal(p5, {1, 2});
    const SymMatrix b = SymMatrix::diagonal(p5, {3});
    CHECK(direct_sum(a, b) == SymMatrix::diagonal(p5, {1, 2, 3}));
    CHECK(trace_product(p5, a.matrix(), a.matrix()) == 0); // 1 + 4
}
