#include "isogauss/errors.hpp"
#include "isogauss/verify.hpp"

#include <doctest.h>

using namespace isogauss;

namespace {

Grid grid(std::vector<GridCell> cells)
{
    Grid g;
    g.cells = std::move(cells);
    return g;
}

void check_all_pass(const std::vector<VerifyReport>& reports)
{
    for (const auto& r : reports) {
        CAPTURE(to_json(r).dump());
        CHECK(r.match);
        CHECK_FALSE(r.skipped);
    }
}

} // namespace

TEST_CASE("suite names")
{
    CHECK(all_suites().size() == 10);
    for (Suite s : all_suites())
        CHECK(parse_suite(suite_name(s)) == s);
    CHECK_THROWS_AS(parse_suite("nosuch"), UsageError);
}

TEST_CASE("scalar suite")
{
    const auto reports = run_suite(Suite::Scalars, grid({{3, 1}, {5, 1}, {7, 1}}));
    CHECK(reports.size() == 6);
    check_all_pass(reports);
}

TEST_CASE("class suite produces one report per class")
{
    const auto reports = run_suite(Suite::Thm11, grid({{3, 2}}));
    int per_class = 0;
    for (const auto& r : reports)
        if (!r.instance.contains("kind"))
            ++per_class;
    CHECK(per_class == 3 + 5);
    check_all_pass(reports);
}

TEST_CASE("zero form reports both sides")
{
    const auto reports = run_suite(Suite::ZeroForms, grid({{3, 3}}));
    bool found = false;
    for (const auto& r : reports)
        if (r.instance["n"] == 3 && !r.instance.contains("kind")) {
            found = true;
            CHECK(r.lhs == Json::array({"0", "0"}));
            CHECK(r.rhs == Json::array({"0", "0"}));
            CHECK(r.match);
        }
    CHECK(found);
    check_all_pass(reports);
}

TEST_CASE("every suite passes on a small grid")
{
    for (Suite s : all_suites()) {
        CAPTURE(suite_name(s));
        check_all_pass(run_suite(s, grid({{3, 2}, {5, 2}})));
    }
}

TEST_CASE("budget overruns are skipped, not failed")
{
    Grid g = grid({{3, 3}});
    g.budget.max_terms = 30;
    const auto reports = run_suite(Suite::Thm11, g);
    const Tally t = tally(reports);
    CHECK(t.failed == 0);
    CHECK(t.skipped > 0);
    CHECK(t.passed > 0);
}

TEST_CASE("reports are deterministic")
{
    auto strip = [](std::vector<VerifyReport> rs) {
        std::vector<std::string> out;
        for (auto& r : rs) {
            r.elapsed_ms = 0;
            out.push_back(to_json(r).dump());
        }
        return out;
    };
    Grid a = grid({{5, 2}});
    Grid b = a;
    b.budget.parallel_chunks = 1;
    a.budget.parallel_chunks = 5;
    CHECK(strip(run_suite(Suite::Prop41, a)) == strip(run_suite(Suite::Prop41, b)));
}

TEST_CASE("report serialization")
{
    VerifyReport r;
    r.suite = "thm11";
    r.instance = Json{{"p", 3}};
    r.lhs = Json::array({"1", "0"});
    r.rhs = Json::array({"1", "0"});
    r.match = true;
    const Json j = to_json(r);
    CHECK(j["suite"] == "thm11");
    CHECK(j["match"] == true);
    CHECK_FALSE(j.contains("note"));
    const Json s = to_json(Tally{3, 1, 2});
    CHECK(s["passed"] == 3);
    CHECK(s["failed"] == 1);
    CHECK(s["skipped"] == 2);
}
