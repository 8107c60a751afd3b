#pragma once

#include "isogauss/budget.hpp"
#include "isogauss/serialize.hpp"

#include <string>
#include <vector>

namespace isogauss {

enum class Suite { Thm11, Cor12, Prop41, Lemma51, Lemma52, Lemma53, Lemma54, Scalars, Untwisted, ZeroForms };

const std::vector<Suite>& all_suites();
std::string suite_name(Suite s);
/// Throws UsageError for an unknown name.
Suite parse_suite(const std::string& name);

/// One prime with the largest size parameter to check. The parameter is the
/// matrix size n for most suites, the form size for lemma51, m for lemma52,
/// and d for lemma53 and lemma54. It is ignored by the scalars suite.
struct GridCell {
    int p = 3;
    int max_n = 1;
};

struct Grid {
    std::vector<GridCell> cells;
    Budget budget;
};

/// The grid each suite is accepted on.
Grid default_grid(Suite s);

struct VerifyReport {
    std::string suite;
    Json instance;
    Json lhs;
    Json rhs;
    bool match = false;
    bool skipped = false;
    std::string note;
    double elapsed_ms = 0.0;
};

/// Runs every instance of the suite on the grid, in a fixed order.
/// An instance whose brute force exceeds the budget is reported as skipped.
std::vector<VerifyReport> run_suite(Suite s, const Grid& grid);

struct Tally {
    int passed = 0;
    int failed = 0;
    int skipped = 0;
};

Tally tally(const std::vector<VerifyReport>& reports);

Json to_json(const VerifyReport& r);
Json to_json(const Tally& t);

} // namespace isogauss
