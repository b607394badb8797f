#include <set>

#include <gtest/gtest.h>

#include "curvelike/canonical.hpp"
#include "curvelike/classify.hpp"
#include "support/fixtures.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace curvelike;

namespace {

std::set<std::string> oracle_forms(std::size_t v, Int n, Int max_mult, Int min_weight) {
    std::set<std::string> out;
    for (const Divisor& d : oracle::sweep(v, n, max_mult, min_weight)) out.insert(canonicalize(d));
    return out;
}

std::set<std::string> enumerated_forms(std::size_t v, Int n, Int max_mult, Int min_weight) {
    const auto r = enumerate_minimal({.vertices = v, .n = n, .max_mult = max_mult, .min_weight = min_weight});
    return {r.forms.begin(), r.forms.end()};
}

Divisor chain(const std::vector<Int>& w, const std::vector<Int>& m) {
    TreeTopology t{w.size(), {}};
    for (std::size_t i = 1; i < w.size(); ++i) t.edges.emplace_back(i - 1, i);
    return Divisor(tree_config(t, w), m);
}

}  // namespace

TEST(FreeTrees, CountsMatchKnownSequence) {
    const std::vector<std::size_t> expected{1, 1, 1, 2, 3, 6, 11, 23};
    for (std::size_t v = 1; v <= 8; ++v) EXPECT_EQ(free_trees(v).size(), expected[v - 1]) << v;
    EXPECT_THROW(free_trees(0), InvalidInput);
    EXPECT_THROW(free_trees(9), InvalidInput);
}

TEST(FreeTrees, AgreeWithPrueferOracle) {
    for (std::size_t v = 1; v <= 5; ++v) {
        std::set<std::string> ours, theirs;
        for (const auto& t : free_trees(v)) ours.insert(tree_code(t));
        for (const auto& edges : oracle::small_trees(v)) theirs.insert(tree_code(TreeTopology{v, edges}));
        EXPECT_EQ(ours, theirs) << v;
    }
}

TEST(Enumerate, FiveVerticesGivesFiveClasses) {
    const auto r = enumerate_minimal({.vertices = 5, .n = 2});
    ASSERT_EQ(r.divisors.size(), 5u);
    std::set<std::string> forms(r.forms.begin(), r.forms.end());
    EXPECT_TRUE(forms.contains(canonicalize(chain({-3, -1, -3, -1, -3}, {1, 2, 2, 2, 1}))));
    EXPECT_TRUE(forms.contains(canonicalize(chain({-2, -3, -1, -2, -3}, {1, 2, 3, 2, 1}))));
    TreeTopology star{5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}}};
    const Divisor s(tree_config(star, std::vector<Int>{-3, -2, -2, -1, -1}), {2, 1, 1, 1, 1});
    EXPECT_TRUE(forms.contains(canonicalize(s)));
    for (const auto& d : r.divisors) EXPECT_TRUE(declarative_filter(d, 2)) << d.to_string();
}

TEST(Enumerate, SmallTreesAreEmpty) {
    for (std::size_t v = 2; v <= 4; ++v) EXPECT_TRUE(enumerate_minimal({.vertices = v, .n = 2}).divisors.empty()) << v;
    const auto one = enumerate_minimal({.vertices = 1, .n = 2});
    ASSERT_EQ(one.divisors.size(), 1u);
    EXPECT_EQ(one.divisors[0].config().weight(0), -2);
}

TEST(Enumerate, SingleTopologyAndValidation) {
    TreeTopology path{3, {{0, 1}, {1, 2}}};
    EXPECT_NO_THROW(enumerate_minimal({.vertices = 3, .tree = path}));
    EXPECT_THROW(enumerate_minimal({.vertices = 3, .tree = TreeTopology{3, {{0, 1}}}}), InvalidInput);
    EXPECT_THROW(enumerate_minimal({.vertices = 3, .n = 0}), InvalidInput);
    EXPECT_THROW(enumerate_minimal({.vertices = 3, .min_weight = 0}), InvalidInput);
}

TEST(Enumerate, StateCapReportsBranch) {
    try {
        enumerate_minimal({.vertices = 6, .n = 2, .max_states = 10});
        FAIL();
    } catch (const EnumerationCapExceeded& e) {
        EXPECT_FALSE(e.branch().empty());
        EXPECT_GT(e.partial().stats.states, 10u);
    }
}

TEST(OracleEquivalence, UpToFourVertices) {
    for (std::size_t v = 1; v <= 4; ++v) {
        for (Int n : {1, 2, 3}) {
            EXPECT_EQ(enumerated_forms(v, n, 4, -5), oracle_forms(v, n, 4, -5)) << "v=" << v << " n=" << n;
        }
    }
}

TEST(OracleEquivalence, FiveVertexSweep) {
    const auto theirs = oracle_forms(5, 2, 3, -4);
    EXPECT_EQ(enumerated_forms(5, 2, 3, -4), theirs);
    EXPECT_EQ(theirs.size(), 5u);
}

TEST(Enumerate, PrunedStatesHaveNoCurvelikeCompletion) {
    const auto r = enumerate_minimal({.vertices = 5, .n = 2}, 200);
    ASSERT_FALSE(r.pruned_sample.empty());
    gen::Rng rng(71);
    const Int lo = EnumerationParams{.n = 2}.lowest_weight();
    for (const auto& s : r.pruned_sample) {
        std::size_t unknown = 0;
        for (const auto& w : s.weight) unknown += !w;
        for (int trial = 0; trial < 5; ++trial) {
            std::vector<Int> fill(unknown);
            for (auto& f : fill) f = gen::uniform(rng, lo, -1);
            const Divisor d = realize_state(r.trees[s.tree_index], s, fill);
            EXPECT_FALSE(oracle::negatively_closed(d)) << d.to_string();
            EXPECT_FALSE(oracle::has_negative_filtration(d)) << d.to_string();
        }
    }
}

TEST(Enumerate, OutputIsCanonicallyLabelled) {
    const auto r = enumerate_minimal({.vertices = 5, .n = 2});
    for (std::size_t i = 0; i < r.divisors.size(); ++i) {
        EXPECT_EQ(canonicalize(r.divisors[i]), r.forms[i]);
        EXPECT_EQ(r.divisors[i].config().label(0), "C1");
    }
    EXPECT_TRUE(std::is_sorted(r.forms.begin(), r.forms.end()));
}
