#include "cli.hpp"

#include "isogauss/errors.hpp"
#include "isogauss/formulas.hpp"
#include "isogauss/oracle.hpp"
#include "isogauss/serialize.hpp"
#include "isogauss/verify.hpp"

#include <CLI11.hpp>

#include <optional>
#include <sstream>

namespace isogauss {

namespace {

constexpr int kOk = 0;
constexpr int kMismatch = 1;
constexpr int kUsage = 2;

struct CommonOptions {
    std::optional<std::uint64_t> max_terms;
    std::optional<unsigned> jobs;
    std::string format = "json";

    Budget budget() const
    {
        Budget b;
        b.max_terms = max_terms ? *max_terms : max_terms_from_env(b.max_terms);
        if (jobs)
            b.parallel_chunks = *jobs;
        return b;
    }
};

void add_common(CLI::App* cmd, CommonOptions& o, std::vector<std::string> formats)
{
    cmd->add_option("--max-terms", o.max_terms, "Brute-force enumeration cap (overrides ISOGAUSS_MAX_TERMS)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--jobs", o.jobs, "Worker threads for enumeration")->check(CLI::PositiveNumber);
    cmd->add_option("--format", o.format, "Output format")->check(CLI::IsMember(std::move(formats)));
}

std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"')
            q += '"';
        q += c;
    }
    return q + "\"";
}

struct EvalOptions {
    int p = 0;
    std::optional<std::string> matrix;
    std::optional<int> n;
    std::optional<int> rank;
    std::string disc = "sq";
    std::optional<int> restrict_r;
};

int cmd_eval(const EvalOptions& e, const CommonOptions& common, std::ostream& out)
{
    const PrimeContext ctx(e.p);
    SymMatrix t;
    if (e.matrix) {
        if (e.n || e.rank)
            throw UsageError("give either --matrix or --n/--rank, not both");
        t = parse_sym_matrix(ctx, *e.matrix);
    } else {
        if (!e.n || !e.rank)
            throw UsageError("eval needs --matrix or both --n and --rank");
        const FormClass c{*e.n, *e.rank, *e.rank == 0 ? DiscType::Square : parse_disc(e.disc)};
        if (c.n < 1 || c.d < 0 || c.d > c.n)
            throw UsageError("need 1 <= n and 0 <= rank <= n");
        t = canonical_matrix(ctx, c);
    }
    const FormClass c = classify(ctx, t);
    if (e.restrict_r && (*e.restrict_r < 0 || *e.restrict_r > c.n))
        throw UsageError("--restrict must lie in [0, n]");

    const QuadValue value = e.restrict_r ? prop41_value(ctx, c, *e.restrict_r) : thm11_value(ctx, c);
    const CycInt embedded = embed(value, ctx);

    Json report{{"p", e.p}, {"class", to_json(c)}, {"matrix", to_json(t)}};
    if (e.restrict_r)
        report["r"] = *e.restrict_r;
    report["value"] = to_json(value);
    report["embedding"] = to_json(embedded);

    std::optional<bool> match;
    try {
        const SymmetricOracle oracle(ctx, c.n, common.budget());
        const CycInt brute = e.restrict_r ? oracle.restricted(t, *e.restrict_r) : oracle.twisted(t);
        report["oracle"] = to_json(brute);
        match = brute == embedded;
        report["match"] = *match;
    } catch (const BudgetExceeded& ex) {
        report["oracle"] = nullptr;
        report["oracle_skipped"] = ex.what();
        report["match"] = nullptr;
    }

    if (common.format == "text") {
        out << "class " << to_string(c) << (e.restrict_r ? " r=" + std::to_string(*e.restrict_r) : "") << '\n'
            << "value " << value.a.get_str() << " + " << value.b.get_str() << " g\n"
            << "embedding " << embedded.to_string() << '\n'
            << "oracle " << (report["oracle"].is_null() ? "skipped" : report["oracle"].dump()) << '\n'
            << "match " << (match ? (*match ? "true" : "false") : "n/a") << '\n';
    } else {
        out << report.dump() << '\n';
    }
    return match.value_or(true) ? kOk : kMismatch;
}

struct TableOptions {
    int p = 0;
    int max_n = 0;
    bool restrict_all = false;
};

int cmd_table(const TableOptions& o, const CommonOptions& common, std::ostream& out)
{
    if (o.max_n < 1)
        throw UsageError("--max-n must be >= 1");
    const PrimeContext ctx(o.p);
    Json rows = Json::array();
    for (int n = 1; n <= o.max_n; ++n)
        for (const auto& c : all_classes(n)) {
            const int r_lo = o.restrict_all ? 0 : n;
            for (int r = r_lo; r <= n; ++r) {
                const QuadValue v = r == n ? thm11_value(ctx, c) : prop41_value(ctx, c, r);
                rows.push_back(Json{{"p", o.p},
                                    {"n", n},
                                    {"d", c.d},
                                    {"disc", disc_name(c.disc)},
                                    {"r", r},
                                    {"a", v.a.get_str()},
                                    {"b", v.b.get_str()}});
            }
        }
    if (common.format == "json") {
        out << rows.dump(2) << '\n';
    } else if (common.format == "csv") {
        out << "p,n,d,disc,r,a,b\n";
        for (const auto& r : rows)
            out << r["p"].get<int>() << ',' << r["n"].get<int>() << ',' << r["d"].get<int>() << ','
                << r["disc"].get<std::string>() << ',' << r["r"].get<int>() << ',' << r["a"].get<std::string>()
                << ',' << r["b"].get<std::string>() << '\n';
    } else {
        for (const auto& r : rows)
            out << "n=" << r["n"].get<int>() << " d=" << r["d"].get<int>() << ' ' << r["disc"].get<std::string>()
                << " r=" << r["r"].get<int>() << "  " << r["a"].get<std::string>() << " + "
                << r["b"].get<std::string>() << " g\n";
    }
    return kOk;
}

struct VerifyOptions {
    std::vector<std::string> suites;
    std::vector<int> primes;
    std::optional<int> max_n;
};

Grid make_grid(Suite s, const VerifyOptions& o, const Budget& budget)
{
    Grid g = default_grid(s);
    g.budget = budget;
    if (!o.primes.empty()) {
        std::vector<GridCell> cells;
        for (int p : o.primes) {
            int max_n = 2;
            for (const auto& c : g.cells)
                if (c.p == p)
                    max_n = c.max_n;
            cells.push_back({p, max_n});
        }
        g.cells = std::move(cells);
    }
    if (o.max_n)
        for (auto& c : g.cells)
            c.max_n = *o.max_n;
    for (const auto& c : g.cells)
        (void)PrimeContext(c.p); // reject bad primes before any work
    return g;
}

int cmd_verify(const VerifyOptions& o, const CommonOptions& common, std::ostream& out)
{
    if (o.max_n && *o.max_n < 1)
        throw UsageError("--max-n must be >= 1");
    std::vector<Suite> suites;
    if (o.suites.empty())
        suites = all_suites();
    for (const auto& name : o.suites)
        suites.push_back(parse_suite(name));
    const Budget budget = common.budget();
    std::vector<Grid> grids;
    for (Suite s : suites)
        grids.push_back(make_grid(s, o, budget));

    if (common.format == "csv")
        out << "suite,instance,status,lhs,rhs,elapsed_ms,note\n";
    Tally total;
    for (std::size_t i = 0; i < suites.size(); ++i) {
        const auto reports = run_suite(suites[i], grids[i]);
        for (const auto& r : reports) {
            const char* status = r.skipped ? "SKIP" : (r.match ? "PASS" : "FAIL");
            if (common.format == "json") {
                out << to_json(r).dump() << '\n';
            } else if (common.format == "csv") {
                out << r.suite << ',' << csv_field(r.instance.dump()) << ',' << status << ','
                    << csv_field(r.lhs.dump()) << ',' << csv_field(r.rhs.dump()) << ',' << r.elapsed_ms << ','
                    << csv_field(r.note) << '\n';
            } else {
                out << status << ' ' << r.suite << ' ' << r.instance.dump();
                if (!r.match && !r.skipped)
                    out << " lhs=" << r.lhs.dump() << " rhs=" << r.rhs.dump();
                if (!r.note.empty() && (r.skipped || !r.match))
                    out << " (" << r.note << ')';
                out << '\n';
            }
        }
        const Tally t = tally(reports);
        total.passed += t.passed;
        total.failed += t.failed;
        total.skipped += t.skipped;
    }
    if (common.format == "json")
        out << to_json(total).dump() << '\n';
    else
        out << "# passed " << total.passed << ", failed " << total.failed << ", skipped " << total.skipped << '\n';
    return total.failed == 0 ? kOk : kMismatch;
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Twisted matrix Gauss sums over prime fields: closed forms and brute-force checks", "isogauss"};
    app.require_subcommand(1);

    EvalOptions eval;
    CommonOptions eval_common;
    auto* e = app.add_subcommand("eval", "Evaluate one sum and compare with brute force");
    e->add_option("--p", eval.p, "Odd prime")->required();
    e->add_option("--matrix", eval.matrix, "Symmetric matrix as JSON, e.g. [[1,0],[0,2]]");
    e->add_option("--n", eval.n, "Matrix size");
    e->add_option("--rank", eval.rank, "Rank of the class");
    e->add_option("--disc", eval.disc, "Square class of the nondegenerate part")->check(CLI::IsMember({"sq", "nonsq"}));
    e->add_option("--restrict", eval.restrict_r, "Restrict the sum to rank r");
    add_common(e, eval_common, {"json", "text"});

    TableOptions table;
    CommonOptions table_common;
    table_common.format = "text";
    auto* t = app.add_subcommand("table", "Closed-form values for every class");
    t->add_option("--p", table.p, "Odd prime")->required();
    t->add_option("--max-n", table.max_n, "Largest matrix size")->required();
    t->add_flag("--restrict-all", table.restrict_all, "Add a row for every rank r");
    add_common(t, table_common, {"json", "csv", "text"});

    VerifyOptions verify;
    CommonOptions verify_common;
    auto* v = app.add_subcommand("verify", "Run identity suites against brute force");
    v->add_option("--suites", verify.suites, "Comma-separated suite names (default: all)")->delimiter(',');
    v->add_option("--primes", verify.primes, "Comma-separated primes (default: the suite grid)")->delimiter(',');
    v->add_option("--max-n", verify.max_n, "Size bound for every prime");
    add_common(v, verify_common, {"json", "csv", "text"});

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& ex) {
        if (ex.get_exit_code() == 0) {
            app.exit(ex, out, err);
            return kOk;
        }
        err << "error: " << ex.what() << '\n';
        return kUsage;
    }

    try {
        if (*e)
            return cmd_eval(eval, eval_common, out);
        if (*t)
            return cmd_table(table, table_common, out);
        return cmd_verify(verify, verify_common, out);
    } catch (const UsageError& ex) {
        err << "error: " << ex.what() << '\n';
        return kUsage;
    } catch (const InternalError& ex) {
        err << "internal error: " << ex.what() << '\n';
        return kMismatch;
    }
}

} // namespace isogauss
