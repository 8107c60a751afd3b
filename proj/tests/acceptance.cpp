// Acceptance run: one PASS/FAIL line per criterion. Every comparison is
// exact equality in Z[zeta_p], Z or Q, and every instance must actually be
// computed: a budget skip counts against the criterion.

#include "isogauss/formulas.hpp"
#include "isogauss/oracle.hpp"
#include "isogauss/verify.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <string>

using namespace isogauss;

namespace {

// Exact arithmetic throughout; no comparison tolerates any difference.
constexpr int kTolerance = 0;
constexpr int kRandomChanges = 100;
constexpr std::uint64_t kLargeBudget = 400'000'000;

struct Outcome {
    int passed = 0;
    int failed = 0;
    int skipped = 0;
    std::string detail;

    bool ok() const { return failed == 0 && skipped == 0 && passed > 0; }
};

Outcome from_reports(const std::vector<VerifyReport>& reports)
{
    Outcome o;
    for (const auto& r : reports) {
        if (r.skipped) {
            ++o.skipped;
            o.detail += "\n    skipped " + r.suite + " " + r.instance.dump() + ": " + r.note;
        } else if (r.match) {
            ++o.passed;
        } else {
            ++o.failed;
            o.detail += "\n    failed " + r.suite + " " + r.instance.dump() + " lhs=" + r.lhs.dump() +
                        " rhs=" + r.rhs.dump() + (r.note.empty() ? "" : " (" + r.note + ")");
        }
    }
    return o;
}

Outcome suites(std::initializer_list<Suite> list, std::uint64_t max_terms = Budget{}.max_terms)
{
    std::vector<VerifyReport> all;
    for (Suite s : list) {
        Grid g = default_grid(s);
        g.budget.max_terms = max_terms;
        auto r = run_suite(s, g);
        all.insert(all.end(), r.begin(), r.end());
    }
    return from_reports(all);
}

void tick(Outcome& o, bool good, const std::string& what)
{
    if (good) {
        ++o.passed;
    } else {
        ++o.failed;
        o.detail += "\n    failed " + what;
    }
}

Matrix random_invertible(const PrimeContext& ctx, int n, std::mt19937& rng)
{
    std::uniform_int_distribution<int> digit(0, ctx.p() - 1);
    while (true) {
        Matrix g(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                g(i, j) = digit(rng);
        if (determinant(ctx, g) != 0)
            return g;
    }
}

SymMatrix random_symmetric(const PrimeContext& ctx, int n, std::mt19937& rng)
{
    std::uniform_int_distribution<int> digit(0, ctx.p() - 1);
    SymMatrix s(n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
            s.set(i, j, digit(rng));
    return s;
}

Outcome infrastructure()
{
    Outcome o;
    std::mt19937 rng(20240611);

    // Parallel and serial passes over the same tables.
    for (int p : {3, 5, 7})
        for (int n = 1; n <= 3; ++n) {
            const PrimeContext ctx(p);
            Budget serial, split;
            serial.parallel_chunks = 1;
            split.parallel_chunks = 8;
            const SymmetricOracle a(ctx, n, serial), b(ctx, n, split);
            for (int trial = 0; trial < 10; ++trial) {
                const SymMatrix t = random_symmetric(ctx, n, rng);
                const std::string where = "parallel p=" + std::to_string(p) + " n=" + std::to_string(n);
                tick(o, a.twisted(t) == b.twisted(t), where + " twisted");
                tick(o, a.restricted_all(t) == b.restricted_all(t), where + " restricted");
            }
        }

    for (int p : {3, 5, 7, 11})
        for (int n = 1; n <= 5; ++n) {
            const PrimeContext ctx(p);
            for (const auto& c : all_classes(n))
                tick(o, classify(ctx, canonical_matrix(ctx, c)) == c, "round trip " + to_string(c));
        }

    // Random changes of basis.
    for (const auto& [p, n] : std::vector<std::pair<int, int>>{{3, 1}, {3, 2}, {3, 3}, {3, 4}, {5, 1}, {5, 2},
                                                               {5, 3}, {7, 1}, {7, 2}, {7, 3}}) {
        const PrimeContext ctx(p);
        const SymmetricOracle oracle(ctx, n);
        for (int trial = 0; trial < kRandomChanges; ++trial) {
            const SymMatrix t = random_symmetric(ctx, n, rng);
            const Matrix g = random_invertible(ctx, n, rng);
            const SymMatrix u = congruent(ctx, t, g);
            const std::string where = "congruence p=" + std::to_string(p) + " n=" + std::to_string(n);
            tick(o, classify(ctx, u) == classify(ctx, t), where + " classify");
            tick(o, oracle.twisted(u) == oracle.twisted(t), where + " twisted sum");
        }
    }
    return o;
}

bool report(int id, const std::string& what, const std::function<Outcome()>& fn)
{
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = fn();
    } catch (const std::exception& e) {
        o.failed = 1;
        o.detail = std::string("\n    exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s criterion %2d: %s [passed %d, failed %d, skipped %d, tolerance %d, %.1fs]%s\n",
                o.ok() ? "PASS" : "FAIL", id, what.c_str(), o.passed, o.failed, o.skipped, kTolerance, secs,
                o.detail.c_str());
    std::fflush(stdout);
    return o.ok();
}

} // namespace

int main()
{
    int failures = 0;
    auto run = [&](int id, const std::string& what, const std::function<Outcome()>& fn) {
        if (!report(id, what, fn))
            ++failures;
    };

    run(1, "closed form of the twisted sum equals enumeration for every class",
        [] { return suites({Suite::Thm11}); });
    run(2, "twisted sum times g^n equals the alternating isotropic subspace count",
        [] { return suites({Suite::Cor12}); });
    run(3, "restricted sums equal enumeration for all classes and ranks",
        [] { return suites({Suite::Prop41}); });
    run(4, "representation numbers equal brute-force counts",
        [] { return suites({Suite::Lemma51}, kLargeBudget); });
    run(5, "alternating sums equal zero representation counts, branch by eps^m",
        [] { return suites({Suite::Lemma52}); });
    run(6, "restricted sums decompose over classes of the restriction rank",
        [] { return suites({Suite::Lemma53}); });
    run(7, "weighted class sums equal their closed targets",
        [] { return suites({Suite::Lemma54}, kLargeBudget); });
    run(8, "scalar facts and untwisted product formulas",
        [] { return suites({Suite::Scalars, Suite::Untwisted}); });
    run(9, "zero form sums", [] { return suites({Suite::ZeroForms}); });
    run(10, "parallel/serial equality, round trip, congruence invariance", infrastructure);

    std::printf("%s: %d of 10 criteria failed\n", failures == 0 ? "ACCEPTED" : "REJECTED", failures);
    return failures == 0 ? 0 : 1;
}
