#include "isogauss/verify.hpp"

#include "isogauss/counts.hpp"
#include "isogauss/errors.hpp"
#include "isogauss/formulas.hpp"
#include "isogauss/oracle.hpp"

#include <chrono>
#include <map>
#include <memory>

namespace isogauss {

namespace {

const std::vector<std::pair<Suite, const char*>>& suite_table()
{
    static const std::vector<std::pair<Suite, const char*>> table = {
        {Suite::Thm11, "thm11"},         {Suite::Cor12, "cor12"},         {Suite::Prop41, "prop41"},
        {Suite::Lemma51, "lemma51"},     {Suite::Lemma52, "lemma52"},     {Suite::Lemma53, "lemma53"},
        {Suite::Lemma54, "lemma54"},     {Suite::Scalars, "scalars"},     {Suite::Untwisted, "untwisted"},
        {Suite::ZeroForms, "zero_forms"},
    };
    return table;
}

struct Outcome {
    Json lhs;
    Json rhs;
    bool match = false;
    std::string note;
};

template <class T>
Outcome compare(const T& lhs, const T& rhs)
{
    return {to_json(lhs), to_json(rhs), lhs == rhs, {}};
}

class Runner {
public:
    Runner(Suite s, const Grid& grid) : name_(suite_name(s)), budget_(grid.budget) {}

    const Budget& budget() const { return budget_; }

    const SymmetricOracle& oracle(const PrimeContext& ctx, int n)
    {
        auto& slot = oracles_[{ctx.p(), n}];
        if (!slot)
            slot = std::make_unique<SymmetricOracle>(ctx, n, budget_);
        return *slot;
    }

    // Oracle tables are large; drop them between primes.
    void release() { oracles_.clear(); }

    template <class F>
    void add(Json instance, F&& body)
    {
        VerifyReport r;
        r.suite = name_;
        r.instance = std::move(instance);
        const auto start = std::chrono::steady_clock::now();
        try {
            Outcome o = body();
            r.lhs = std::move(o.lhs);
            r.rhs = std::move(o.rhs);
            r.match = o.match;
            r.note = std::move(o.note);
        } catch (const BudgetExceeded& e) {
            r.skipped = true;
            r.note = e.what();
        } catch (const InternalError& e) {
            r.match = false;
            r.note = std::string("internal error: ") + e.what();
        }
        r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        reports_.push_back(std::move(r));
    }

    std::vector<VerifyReport> take() { return std::move(reports_); }

private:
    std::string name_;
    Budget budget_;
    std::map<std::pair<int, int>, std::unique_ptr<SymmetricOracle>> oracles_;
    std::vector<VerifyReport> reports_;
};

Json class_instance(int p, const FormClass& c)
{
    return Json{{"p", p}, {"n", c.n}, {"d", c.d}, {"disc", disc_name(c.disc)}};
}

const char* form_name(BaseForm f) { return f == BaseForm::I ? "I" : "J"; }

FormClass full_rank(BaseForm f, int d) { return {d, d, f == BaseForm::I ? DiscType::Square : DiscType::NonSquare}; }

void run_thm11(Runner& run, const PrimeContext& ctx, int max_n)
{
    for (int n = 1; n <= max_n; ++n)
        for (const auto& c : all_classes(n))
            run.add(class_instance(ctx.p(), c), [&] {
                return compare(embed(thm11_value(ctx, c), ctx),
                               run.oracle(ctx, n).twisted(canonical_matrix(ctx, c)));
            });
    // Shape: even n is independent of the square class, odd n flips sign.
    for (int n = 1; n <= max_n; ++n)
        for (int d = 1; d <= n; ++d) {
            Json inst{{"p", ctx.p()}, {"n", n}, {"d", d}, {"kind", "disc_relation"}};
            run.add(inst, [&] {
                const QuadValue sq = thm11_value(ctx, {n, d, DiscType::Square});
                const QuadValue ns = thm11_value(ctx, {n, d, DiscType::NonSquare});
                return compare(ns, n % 2 == 0 ? sq : quad_neg(sq));
            });
        }
}

void run_cor12(Runner& run, const PrimeContext& ctx, int max_n)
{
    for (int n = 1; n <= max_n; ++n)
        for (const auto& c : all_classes(n)) {
            const SymMatrix t = canonical_matrix(ctx, c);
            run.add(class_instance(ctx.p(), c), [&] {
                const CycCheck chk = cor12_check(ctx, t, run.oracle(ctx, n).twisted(t));
                return Outcome{to_json(chk.lhs), to_json(chk.rhs), chk.match, {}};
            });
            const SymMatrix ext = direct_sum(t, SymMatrix::diagonal(ctx, {1}));
            const FormClass ec = classify(ctx, ext);
            for (int a = 0; a <= n + 1; ++a) {
                Json inst = class_instance(ctx.p(), c);
                inst["kind"] = "isotropic_subspaces";
                inst["a"] = a;
                run.add(inst, [&] { return compare(iso_count(ctx, ec, a), iso_subspaces_bf(ctx, ext, a, run.budget())); });
            }
        }
}

void run_prop41(Runner& run, const PrimeContext& ctx, int max_n)
{
    for (int n = 1; n <= max_n; ++n)
        for (const auto& c : all_classes(n)) {
            std::vector<CycInt> brute;
            bool skipped = false;
            try {
                brute = run.oracle(ctx, n).restricted_all(canonical_matrix(ctx, c));
            } catch (const BudgetExceeded&) {
                skipped = true;
            }
            for (int r = 0; r <= n; ++r) {
                Json inst = class_instance(ctx.p(), c);
                inst["r"] = r;
                run.add(inst, [&] {
                    if (skipped)
                        throw BudgetExceeded("restricted sums exceed the budget");
                    return compare(embed(prop41_value(ctx, c, r), ctx), brute[static_cast<std::size_t>(r)]);
                });
            }
        }

    for (int n = 1; n <= max_n; ++n)
        for (int d = 1; d <= n; ++d)
            for (int r = 1; r <= n; ++r) {
                Json inst{{"p", ctx.p()}, {"n", n}, {"d", d}, {"r", r}, {"kind", "disc_relation"}};
                run.add(inst, [&] {
                    const QuadValue sq = prop41_value(ctx, {n, d, DiscType::Square}, r);
                    const QuadValue ns = prop41_value(ctx, {n, d, DiscType::NonSquare}, r);
                    return compare(ns, r % 2 == 0 ? sq : quad_neg(sq));
                });
            }

    // Odd r = 2t+1 (t >= 1) against the even value one dimension down.
    for (int n = 2; n <= max_n; ++n)
        for (int d = 0; d <= n; ++d)
            for (int t = 1; 2 * t + 1 <= n; ++t) {
                Json inst{{"p", ctx.p()}, {"n", n}, {"d", d}, {"r", 2 * t + 1}, {"kind", "odd_from_even"}};
                run.add(inst, [&] {
                    const QuadValue lhs = prop41_value(ctx, {n, d, DiscType::Square}, 2 * t + 1);
                    if (d % 2 == 0)
                        return compare(lhs, QuadValue{0, 0});
                    const int c = d / 2;
                    const QuadValue even = prop41_value(ctx, {n - 1, 2 * c, DiscType::Square}, 2 * t);
                    mpq_class ratio(qfunc(ctx, QKind::Nu, n, 2 * c + 1), qfunc(ctx, QKind::Nu, n - 1, 2 * c));
                    ratio.canonicalize();
                    const mpz_class k = require_integer(ratio, "nu ratio") * eps_pow(ctx, c) * ipow(ctx.p(), c);
                    return compare(lhs, quad_mul(quad_scale(k, even), quad_from(0, 1), ctx));
                });
            }

    // The even display at t = 0 feeds the odd case; record its value.
    for (int n = 0; n < max_n; ++n)
        for (int d = 0; d <= n; d += 2) {
            Json inst{{"p", ctx.p()}, {"n", n}, {"d", d}, {"r", 0}, {"kind", "even_display_at_zero"}};
            run.add(inst, [&] {
                Outcome o = compare(prop41_even_display(ctx, n, d, 0), mpz_class(1));
                o.note = "definitional restricted sum at r = 0 is 0";
                return o;
            });
        }
}

void run_lemma51(Runner& run, const PrimeContext& ctx, int max_size)
{
    const int p = ctx.p();
    const auto one = SymMatrix::diagonal(ctx, {1});
    const auto omega = SymMatrix::diagonal(ctx, {ctx.omega()});
    for (BaseForm f : {BaseForm::I, BaseForm::J})
        for (int size = 1; size <= max_size; ++size) {
            const SymMatrix x = canonical_matrix(ctx, full_rank(f, size));
            for (const auto& [target, y, label] :
                 {std::tuple{RepTarget::one(), one, "1"}, std::tuple{RepTarget::omega(), omega, "omega"}}) {
                Json inst{{"p", p}, {"form", form_name(f)}, {"size", size}, {"target", label}};
                run.add(inst, [&] {
                    return compare(rep_star_lemma51(ctx, f, size, target), rep_count_bf(ctx, x, y, true, run.budget()));
                });
            }
            for (int d = 1; d <= size; ++d) {
                Json inst{{"p", p}, {"form", form_name(f)}, {"size", size}, {"target", "zeros"}, {"d", d}};
                run.add(inst, [&] {
                    return compare(rep_star_lemma51(ctx, f, size, RepTarget::zeros(d)),
                                   rep_count_bf(ctx, x, SymMatrix(d), true, run.budget()));
                });
            }
        }

    // Orthogonal group orders, including degenerate forms.
    const int orth_max = std::min(max_size, p == 3 ? 4 : 3);
    for (int n = 1; n <= orth_max; ++n)
        for (const auto& c : all_classes(n)) {
            Json inst = class_instance(p, c);
            inst["kind"] = "orthogonal_order";
            run.add(inst, [&] {
                const SymMatrix t = canonical_matrix(ctx, c);
                return compare(orth_order(ctx, c), rep_count_bf(ctx, t, t, true, run.budget()));
            });
        }

    for (int n = 1; n <= max_size; ++n)
        for (const auto& c : all_classes(n))
            for (int j = 0; j <= n; ++j) {
                Json inst = class_instance(p, c);
                inst["kind"] = "isotropic_subspaces";
                inst["j"] = j;
                run.add(inst, [&] {
                    return compare(iso_count(ctx, c, j), iso_subspaces_bf(ctx, canonical_matrix(ctx, c), j, run.budget()));
                });
            }

    for (int t = 0; t <= std::min(max_size, 4); ++t)
        for (int s = 0; s <= t; ++s) {
            Json inst{{"p", p}, {"kind", "subspaces"}, {"t", t}, {"s", s}};
            run.add(inst, [&] {
                return compare(qfunc(ctx, QKind::Beta, t, s), iso_subspaces_bf(ctx, SymMatrix(t), s, run.budget()));
            });
        }
}

void run_lemma52(Runner& run, const PrimeContext& ctx, int max_m)
{
    const int p = ctx.p();
    for (int m = 0; m <= max_m; ++m)
        for (auto v : {Lemma52Variant::Odd, Lemma52Variant::EvenMatch, Lemma52Variant::EvenCross}) {
            if (m == 0 && v != Lemma52Variant::Odd)
                continue;
            Json inst{{"p", p}, {"m", m}, {"variant", lemma52_name(v)}};
            run.add(inst, [&] {
                const IntCheck chk = lemma52_check(ctx, m, v);
                return Outcome{to_json(chk.lhs), to_json(chk.rhs), chk.match, disc_name(lemma52_form(ctx, m, v).disc)};
            });
            if (v == Lemma52Variant::Odd) {
                // Both odd forms have the same count.
                inst["form"] = "nonsq";
                run.add(inst, [&] {
                    const IntCheck chk = lemma52_check(ctx, m, v, true);
                    return Outcome{to_json(chk.lhs), to_json(chk.rhs), chk.match, {}};
                });
                continue;
            }
            // Which even forms does the sum actually match? Exactly the selected one.
            inst["kind"] = "branch";
            run.add(inst, [&] {
                const mpz_class sum = lemma52_sum(ctx, m, v);
                Json matched = Json::array();
                for (DiscType disc : {DiscType::Square, DiscType::NonSquare})
                    if (rep_zero_full(ctx, {2 * m, 2 * m, disc}, 2 * m) == sum)
                        matched.push_back(disc_name(disc));
                Json selected = Json::array({disc_name(lemma52_form(ctx, m, v).disc)});
                const bool match = matched == selected;
                return Outcome{std::move(matched), std::move(selected), match, {}};
            });
        }

    // Full representation counts against brute force where it is cheap.
    for (int m = 0; m <= std::min(max_m, 1); ++m)
        for (int n : {2 * m, 2 * m + 1}) {
            if (n == 0)
                continue;
            for (DiscType disc : {DiscType::Square, DiscType::NonSquare}) {
                const FormClass c{n, n, disc};
                Json inst = class_instance(p, c);
                inst["kind"] = "full_zero_count";
                run.add(inst, [&] {
                    return compare(rep_zero_full(ctx, c, n),
                                   rep_count_bf(ctx, canonical_matrix(ctx, c), SymMatrix(n), false, run.budget()));
                });
            }
        }
}

void run_lemma53(Runner& run, const PrimeContext& ctx, int max_d)
{
    for (int d = 1; d <= max_d; ++d)
        for (BaseForm f : {BaseForm::I, BaseForm::J})
            for (int ell = 0; ell < d; ++ell) {
                Json inst{{"p", ctx.p()}, {"form", form_name(f)}, {"d", d}, {"ell", ell}};
                run.add(inst, [&] {
                    const SymMatrix x = canonical_matrix(ctx, full_rank(f, d));
                    const CycInt lhs = run.oracle(ctx, d).restricted(x, ell);
                    // At ell = 0 both orbits are {0}, so the signed sum on the right is empty.
                    const CycInt rhs =
                        ell == 0 ? CycInt::zero(ctx.p()) : lemma53_rhs(ctx, f, d, run.oracle(ctx, ell), run.budget());
                    return compare(lhs, rhs);
                });
            }
}

void run_lemma54(Runner& run, const PrimeContext& ctx, int max_d)
{
    for (int d = 1; d <= max_d; ++d)
        for (BaseForm f : {BaseForm::I, BaseForm::J})
            for (int ell = 1; ell <= d; ++ell) {
                Json inst{{"p", ctx.p()}, {"form", form_name(f)}, {"d", d}, {"ell", ell}};
                run.add(inst, [&] {
                    return compare(lemma54_sum(ctx, d, f, ell, run.budget()), lemma54_target(ctx, d, f, ell));
                });
            }
}

void run_scalars(Runner& run, const PrimeContext& ctx)
{
    const CycInt g = g_star_one(ctx);
    run.add(Json{{"p", ctx.p()}, {"identity", "g^2 = eps p"}}, [&] {
        return compare(g * g, CycInt::constant(ctx.p(), mpz_class(ctx.epsilon() * ctx.p())));
    });
    run.add(Json{{"p", ctx.p()}, {"identity", "G*_omega = -G*_1"}}, [&] {
        return compare(run.oracle(ctx, 1).twisted(SymMatrix::diagonal(ctx, {ctx.omega()})), -g);
    });
}

void run_untwisted(Runner& run, const PrimeContext& ctx, int max_n)
{
    for (int n = 1; n <= max_n; ++n)
        for (auto w : {Untwisted::G_I, Untwisted::G_J, Untwisted::Gbar_I, Untwisted::Gbar_J}) {
            Json inst{{"p", ctx.p()}, {"n", n}, {"sum", untwisted_name(w)}};
            run.add(inst, [&] {
                const auto [a, b] = untwisted_matrices(ctx, n, w);
                return compare(embed(untwisted_closed(ctx, n, w), ctx), gauss_untwisted_bf(ctx, a, b, run.budget()));
            });
        }
}

void run_zero_forms(Runner& run, const PrimeContext& ctx, int max_n)
{
    for (int n = 1; n <= max_n; ++n) {
        Json inst{{"p", ctx.p()}, {"n", n}};
        run.add(inst, [&] {
            const QuadValue closed = n % 2 == 1 ? QuadValue{0, 0} : gauss_zero_even(ctx, n / 2);
            return compare(embed(closed, ctx), run.oracle(ctx, n).twisted(SymMatrix(n)));
        });
        inst["kind"] = "rank_zero_class";
        run.add(inst, [&] {
            const QuadValue closed = n % 2 == 1 ? QuadValue{0, 0} : gauss_zero_even(ctx, n / 2);
            return compare(thm11_value(ctx, {n, 0, DiscType::Square}), closed);
        });
    }
}

} // namespace

const std::vector<Suite>& all_suites()
{
    static const std::vector<Suite> suites = [] {
        std::vector<Suite> out;
        for (const auto& [s, name] : suite_table())
            out.push_back(s);
        return out;
    }();
    return suites;
}

std::string suite_name(Suite s)
{
    for (const auto& [suite, name] : suite_table())
        if (suite == s)
            return name;
    throw UsageError("unknown suite");
}

Suite parse_suite(const std::string& name)
{
    for (const auto& [suite, n] : suite_table())
        if (name == n)
            return suite;
    throw UsageError("unknown suite '" + name + "'");
}

Grid default_grid(Suite s)
{
    Grid g;
    switch (s) {
    case Suite::Thm11:
    case Suite::Cor12:
    case Suite::ZeroForms:
        g.cells = {{3, 5}, {5, 4}, {7, 3}};
        break;
    case Suite::Prop41:
        g.cells = {{3, 4}, {5, 4}, {7, 3}};
        break;
    case Suite::Lemma51:
        g.cells = {{3, 5}, {5, 4}, {7, 4}};
        break;
    case Suite::Lemma52:
        g.cells = {{3, 2}, {5, 2}, {7, 2}};
        break;
    case Suite::Lemma53:
        g.cells = {{3, 4}, {5, 4}};
        break;
    case Suite::Lemma54:
        g.cells = {{3, 4}, {5, 4}, {7, 4}};
        break;
    case Suite::Scalars:
        g.cells = {{3, 1}, {5, 1}, {7, 1}, {11, 1}};
        break;
    case Suite::Untwisted:
        g.cells = {{3, 3}, {5, 2}, {7, 2}};
        break;
    }
    return g;
}

std::vector<VerifyReport> run_suite(Suite s, const Grid& grid)
{
    Runner run(s, grid);
    for (const auto& cell : grid.cells) {
        const PrimeContext ctx(cell.p);
        switch (s) {
        case Suite::Thm11:
            run_thm11(run, ctx, cell.max_n);
            break;
        case Suite::Cor12:
            run_cor12(run, ctx, cell.max_n);
            break;
        case Suite::Prop41:
            run_prop41(run, ctx, cell.max_n);
            break;
        case Suite::Lemma51:
            run_lemma51(run, ctx, cell.max_n);
            break;
        case Suite::Lemma52:
            run_lemma52(run, ctx, cell.max_n);
            break;
        case Suite::Lemma53:
            run_lemma53(run, ctx, cell.max_n);
            break;
        case Suite::Lemma54:
            run_lemma54(run, ctx, cell.max_n);
            break;
        case Suite::Scalars:
            run_scalars(run, ctx);
            break;
        case Suite::Untwisted:
            run_untwisted(run, ctx, cell.max_n);
            break;
        case Suite::ZeroForms:
            run_zero_forms(run, ctx, cell.max_n);
            break;
        }
        run.release();
    }
    return run.take();
}

Tally tally(const std::vector<VerifyReport>& reports)
{
    Tally t;
    for (const auto& r : reports) {
        if (r.skipped)
            ++t.skipped;
        else if (r.match)
            ++t.passed;
        else
            ++t.failed;
    }
    return t;
}

Json to_json(const VerifyReport& r)
{
    Json j{{"suite", r.suite}, {"instance", r.instance}, {"lhs", r.lhs},     {"rhs", r.rhs},
           {"match", r.match}, {"skipped", r.skipped},   {"elapsed_ms", r.elapsed_ms}};
    if (!r.note.empty())
        j["note"] = r.note;
    return j;
}

Json to_json(const Tally& t)
{
    return Json{{"summary", true}, {"passed", t.passed}, {"failed", t.failed}, {"skipped", t.skipped}};
}

} // namespace isogauss
