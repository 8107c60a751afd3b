#include "cli.hpp"

#include "isogauss/serialize.hpp"

#include <doctest.h>

#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

using isogauss::Json;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args)
{
    args.insert(args.begin(), "isogauss");
    std::vector<const char*> argv;
    for (const auto& a : args)
        argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = isogauss::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s)
{
    std::vector<std::string> out;
    std::istringstream in(s);
    for (std::string l; std::getline(in, l);)
        out.push_back(l);
    return out;
}

} // namespace

TEST_CASE("eval by class")
{
    const auto r = run({"eval", "--p", "3", "--n", "2", "--rank", "2", "--disc", "sq"});
    CHECK(r.code == 0);
    const Json j = Json::parse(r.out);
    CHECK(j["value"] == Json{{"a", "3"}, {"b", "0"}});
    CHECK(j["match"] == true);
    CHECK(j["oracle"] == j["embedding"]);
}

TEST_CASE("eval by matrix")
{
    const auto r = run({"eval", "--p", "3", "--matrix", "[[0]]"});
    CHECK(r.code == 0);
    const Json j = Json::parse(r.out);
    CHECK(j["value"] == Json{{"a", "0"}, {"b", "0"}});
    CHECK(j["match"] == true);

    const auto m = run({"eval", "--p", "5", "--matrix", "[[0,1],[1,0]]", "--format", "text"});
    CHECK(m.code == 0);
    CHECK(m.out.find("match true") != std::string::npos);
}

TEST_CASE("eval restricted")
{
    const auto r = run({"eval", "--p", "3", "--n", "2", "--rank", "2", "--disc", "sq", "--restrict", "1"});
    CHECK(r.code == 0);
    const Json j = Json::parse(r.out);
    CHECK(j["r"] == 1);
    CHECK(j["match"] == true);
}

TEST_CASE("eval usage errors")
{
    CHECK(run({"eval", "--p", "4", "--n", "1", "--rank", "1"}).code == 2);
    CHECK(run({"eval", "--p", "2", "--n", "1", "--rank", "1"}).code == 2);
    CHECK(run({"eval", "--p", "3", "--matrix", "[[1,2],[0,1]]"}).code == 2);
    CHECK(run({"eval", "--p", "3", "--matrix", "not json"}).code == 2);
    CHECK(run({"eval", "--p", "3", "--n", "2", "--rank", "3"}).code == 2);
    CHECK(run({"eval", "--p", "3", "--n", "2"}).code == 2);
    CHECK(run({"eval", "--p", "3", "--n", "2", "--rank", "1", "--disc", "x"}).code == 2);
    CHECK(run({}).code == 2);
}

TEST_CASE("oracle budget: flag beats environment")
{
    setenv("ISOGAUSS_MAX_TERMS", "5", 1);
    const auto skipped = run({"eval", "--p", "3", "--n", "2", "--rank", "1"});
    CHECK(skipped.code == 0);
    CHECK(Json::parse(skipped.out)["oracle"].is_null());
    const auto forced = run({"eval", "--p", "3", "--n", "2", "--rank", "1", "--max-terms", "1000"});
    CHECK(Json::parse(forced.out)["match"] == true);
    setenv("ISOGAUSS_MAX_TERMS", "zero", 1);
    CHECK(run({"eval", "--p", "3", "--n", "1", "--rank", "1"}).code == 2);
    unsetenv("ISOGAUSS_MAX_TERMS");
}

TEST_CASE("class table")
{
    const auto r = run({"table", "--p", "3", "--max-n", "2", "--format", "csv"});
    CHECK(r.code == 0);
    const auto ls = lines(r.out);
    REQUIRE(ls.size() == 1 + 8);
    CHECK(ls[0] == "p,n,d,disc,r,a,b");
    CHECK(ls[2] == "3,1,1,sq,1,0,1");
    CHECK(ls[8] == "3,2,2,nonsq,2,3,0");

    const auto all = run({"table", "--p", "3", "--max-n", "2", "--format", "csv", "--restrict-all"});
    CHECK(lines(all.out).size() == 1 + 3 * 2 + 5 * 3);

    const auto j = run({"table", "--p", "5", "--max-n", "1", "--format", "json"});
    const Json rows = Json::parse(j.out);
    REQUIRE(rows.size() == 3);
    CHECK(rows[1]["b"] == "1");
    CHECK(rows[2]["b"] == "-1");

    CHECK(run({"table", "--p", "3", "--max-n", "0"}).code == 2);
}

TEST_CASE("verify")
{
    const auto r = run({"verify", "--suites", "scalars", "--primes", "3,5,7"});
    CHECK(r.code == 0);
    const auto ls = lines(r.out);
    REQUIRE(ls.size() == 7);
    for (std::size_t i = 0; i < 6; ++i)
        CHECK(Json::parse(ls[i])["match"] == true);
    const Json summary = Json::parse(ls[6]);
    CHECK(summary["passed"] == 6);
    CHECK(summary["failed"] == 0);

    const auto t = run({"verify", "--suites", "thm11", "--primes", "3", "--max-n", "3", "--format", "text"});
    CHECK(t.code == 0);
    CHECK(t.out.find("FAIL") == std::string::npos);

    const auto c = run({"verify", "--suites", "zero_forms", "--primes", "3", "--max-n", "2", "--format", "csv"});
    CHECK(c.code == 0);
    CHECK(lines(c.out)[0] == "suite,instance,status,lhs,rhs,elapsed_ms,note");

    CHECK(run({"verify", "--suites", "nosuch"}).code == 2);
    CHECK(run({"verify", "--suites", "scalars", "--primes", "4"}).code == 2);
    CHECK(run({"verify", "--suites", "scalars", "--format", "xml"}).code == 2);
}
