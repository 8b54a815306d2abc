#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <vector>

#include "bestpath/selector.hpp"
#include "doctest.h"
#include "testutil.hpp"

using namespace bestpath;
using testutil::ccol;
using testutil::dcol;

namespace {

// y depends on x1 and x2; x3 is a noisy copy of x1 (attaches to x1 in the
// forest, two steps from y); junk1/junk2 are pure noise.
Dataset synthetic_dataset(int n, std::uint64_t seed) {
    SplitMix64 rng(seed);
    std::vector<double> x1, x2, x3, j1, j2, y;
    for (int i = 0; i < n; ++i) {
        const double a = testutil::normal(rng);
        const double b = testutil::normal(rng);
        x1.push_back(a);
        x2.push_back(b);
        x3.push_back(a + 0.4 * testutil::normal(rng));
        j1.push_back(testutil::normal(rng));
        j2.push_back(testutil::normal(rng));
        y.push_back(2.0 * a - 1.5 * b + 0.8 * testutil::normal(rng));
    }
    return Dataset(std::vector<Column>{
        ccol("y", y), ccol("x1", x1), ccol("x2", x2), ccol("x3", x3),
        ccol("junk1", j1), ccol("junk2", j2)});
}

}  // namespace

TEST_CASE("prune mode parsing") {
    CHECK(parse_prune_mode("backward") == PruneMode::Backward);
    CHECK(parse_prune_mode("single_pass") == PruneMode::SinglePass);
    CHECK(parse_prune_mode("single-pass") == PruneMode::SinglePass);
    CHECK_THROWS_AS(parse_prune_mode("forwards"), DataError);
    CHECK(to_string(PruneMode::Backward) == "backward");
    CHECK(to_string(PruneMode::SinglePass) == "single_pass");
}

TEST_CASE("prune_insignificant keeps strong regressors, drops noise") {
    SplitMix64 rng(21);
    std::vector<double> x1, junk, y;
    for (int i = 0; i < 80; ++i) {
        const double a = testutil::normal(rng);
        x1.push_back(a);
        junk.push_back(testutil::normal(rng));
        y.push_back(3.0 * a + 0.5 * testutil::normal(rng));
    }
    const Dataset ds(std::vector<Column>{
        ccol("y", y), ccol("x1", x1), ccol("junk", junk)});

    for (PruneMode mode : {PruneMode::Backward, PruneMode::SinglePass}) {
        const auto kept =
            prune_insignificant(ds, "y", {"x1", "junk"}, 0.05, mode);
        CHECK(kept == std::vector<std::string>{"x1"});
    }
}

TEST_CASE("prune_insignificant can empty the model") {
    SplitMix64 rng(31);
    std::vector<double> junk, y;
    for (int i = 0; i < 50; ++i) {
        junk.push_back(testutil::normal(rng));
        y.push_back(testutil::normal(rng));
    }
    const Dataset ds(std::vector<Column>{ccol("y", y), ccol("junk", junk)});
    // A pure-noise regressor is insignificant for most seeds; this one was
    // checked to give p well above 0.1.
    const auto kept =
        prune_insignificant(ds, "y", {"junk"}, 0.1, PruneMode::Backward);
    CHECK(kept.empty());
}

TEST_CASE("prune_insignificant treats dummy groups jointly") {
    SplitMix64 rng(41);
    std::vector<std::string> g;
    std::vector<double> y;
    for (int i = 0; i < 90; ++i) {
        const int lvl = static_cast<int>(rng.next_below(3));
        g.push_back(std::string(1, static_cast<char>('a' + lvl)));
        // Only level c shifts the mean: the a/b contrast is pure noise, but
        // the group survives through its significant c contrast.
        y.push_back((lvl == 2 ? 3.0 : 0.0) + testutil::normal(rng));
    }
    const Dataset ds(std::vector<Column>{ccol("y", y), dcol("g", g)});
    const auto kept = prune_insignificant(ds, "y", {"g"}, 0.05, PruneMode::Backward);
    CHECK(kept == std::vector<std::string>{"g"});
}

TEST_CASE("select on synthetic data finds the true regressors") {
    const Dataset ds = synthetic_dataset(150, 51);
    SelectorConfig cfg;
    cfg.alpha = 0.05;
    const SelectionReport rep = select(ds, "y", cfg);

    CHECK(rep.status == SelectionStatus::Ok);
    REQUIRE(rep.best_step >= 1);

    // The true parents must survive the pruning stage.
    const std::set<std::string> mf(rep.mf_vars.begin(), rep.mf_vars.end());
    CHECK(mf.count("x1") == 1);
    CHECK(mf.count("x2") == 1);
    CHECK(mf.count("junk1") == 0);
    CHECK(mf.count("junk2") == 0);

    // Containment chain: mf subset of mw subset of the target's component.
    const std::set<std::string> mw(rep.mw_vars.begin(), rep.mw_vars.end());
    for (const auto& v : rep.mf_vars) CHECK(mw.count(v) == 1);
    const int ti = ds.index_of("y");
    for (const auto& v : rep.mw_vars) {
        const int j = ds.index_of(v);
        REQUIRE(j != ti);
        CHECK(rep.steps.distances[j].has_value());
    }

    // Pruned model: every surviving regressor significant at alpha.
    for (std::size_t c = 1; c < rep.mf.variables.size(); ++c) {
        CHECK(rep.mf.p_values[c] <= 0.0500001);
    }

    // The scored steps carry both CV metrics and the full-data fit.
    for (const auto& sc : rep.step_scores) {
        if (sc.failed) continue;
        CHECK(sc.cv_r2_adjusted <= 1.0);
        CHECK(sc.cv_mse >= 0.0);
        CHECK(sc.mi_sum >= 0.0);
    }
    CHECK(rep.mi_plateau_k >= 1);
    CHECK(rep.mi_plateau_k <= rep.steps.max_distance());
}

TEST_CASE("select is deterministic") {
    const Dataset ds = synthetic_dataset(120, 61);
    SelectorConfig cfg;
    const SelectionReport a = select(ds, "y", cfg);
    const SelectionReport b = select(ds, "y", cfg);
    CHECK(a.best_step == b.best_step);
    CHECK(a.mw_vars == b.mw_vars);
    CHECK(a.mf_vars == b.mf_vars);
    REQUIRE(a.step_scores.size() == b.step_scores.size());
    for (std::size_t s = 0; s < a.step_scores.size(); ++s) {
        CHECK(a.step_scores[s].cv_r2_adjusted == b.step_scores[s].cv_r2_adjusted);
    }
}

TEST_CASE("select with threads matches single-threaded") {
    const Dataset ds = synthetic_dataset(120, 71);
    SelectorConfig cfg;
    SelectorConfig cfg4 = cfg;
    cfg4.threads = 4;
    const SelectionReport a = select(ds, "y", cfg);
    const SelectionReport b = select(ds, "y", cfg4);
    CHECK(a.best_step == b.best_step);
    CHECK(a.mf_vars == b.mf_vars);
    for (std::size_t s = 0; s < a.step_scores.size(); ++s) {
        CHECK(a.step_scores[s].cv_r2_adjusted == b.step_scores[s].cv_r2_adjusted);
    }
}

TEST_CASE("discrete target is rejected") {
    Dataset ds(std::vector<Column>{
        dcol("g", {"a", "b", "a", "b"}),
        ccol("x", {1.5, 2.5, 3.5, 4.5}),
    });
    SelectorConfig cfg;
    CHECK_THROWS_AS(select(ds, "g", cfg), DataError);
}

TEST_CASE("isolated target reports no candidates") {
    // y is independent noise on a tiny scale: its MI with everything is far
    // below the BIC penalty, so it stays isolated in the forest.
    SplitMix64 rng(81);
    std::vector<double> x1, x2, y;
    for (int i = 0; i < 100; ++i) {
        const double a = testutil::normal(rng);
        x1.push_back(a);
        x2.push_back(a + 0.1 * testutil::normal(rng));
        y.push_back(testutil::normal(rng));
    }
    const Dataset ds(std::vector<Column>{ccol("y", y), ccol("x1", x1), ccol("x2", x2)});
    SelectorConfig cfg;
    const SelectionReport rep = select(ds, "y", cfg);
    CHECK(rep.status == SelectionStatus::NoCandidates);
    CHECK(rep.best_step == 0);
    CHECK_FALSE(rep.warnings.empty());
    CHECK(rep.warnings[0].find("isolated") != std::string::npos);
}

TEST_CASE("reference dataset: single-pass pruning reproduces the published model") {
    const Dataset ds = load_csv(testutil::data_path("Hitters.csv"));
    SelectorConfig cfg;
    cfg.alpha = 0.05;
    cfg.prune_mode = PruneMode::SinglePass;
    const SelectionReport rep = select(ds, "Salary", cfg);

    CHECK(rep.status == SelectionStatus::Ok);
    CHECK(rep.steps.max_distance() == 8);
    CHECK(rep.best_step == 8);

    const std::set<std::string> mf(rep.mf_vars.begin(), rep.mf_vars.end());
    const std::set<std::string> expected = {"CRuns", "CWalks", "AtBat",
                                            "PutOuts", "Hits", "Walks"};
    CHECK(mf == expected);
    CHECK(std::fabs(rep.mf.r2_adjusted - 0.486) < 0.005);
}

TEST_CASE("reference dataset: backward pruning keeps the strong six significant") {
    const Dataset ds = load_csv(testutil::data_path("Hitters.csv"));
    SelectorConfig cfg;  // alpha = 0.1, backward
    const SelectionReport rep = select(ds, "Salary", cfg);

    CHECK(rep.best_step == 8);
    const std::set<std::string> mf(rep.mf_vars.begin(), rep.mf_vars.end());
    for (const char* v : {"CRuns", "CWalks", "AtBat", "PutOuts", "Hits", "Walks"}) {
        CAPTURE(v);
        CHECK(mf.count(v) == 1);
    }
    // Everything that survived is significant at the configured level.
    for (std::size_t c = 1; c < rep.mf.variables.size(); ++c) {
        CHECK(rep.mf.p_values[c] <= 0.1 + 1e-9);
    }
    CHECK(rep.mf.r2_adjusted >= 0.48);
}
