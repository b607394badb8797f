#include <variant>

#include <gtest/gtest.h>

#include "curvelike/decomposition.hpp"
#include "curvelike/exact.hpp"
#include "curvelike/laufer.hpp"
#include "curvelike/props.hpp"
#include "support/fixtures.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace curvelike;

namespace {

const CurvelikeN& expect_curvelike(const CurvelikeVerdict& v) {
    const auto* c = std::get_if<CurvelikeN>(&v);
    if (!c) throw std::runtime_error("expected a curvelike verdict");
    return *c;
}

Divisor parts_of(const Divisor& d, std::initializer_list<const char*> labels) {
    Divisor out = Divisor::zero(d.config_ptr());
    for (const char* l : labels) out = out + Divisor::curve(d.config_ptr(), fixtures::index(d, l));
    return out;
}

}  // namespace

TEST(Curvelike, Sph2Star) {
    const Divisor d = fixtures::divisor("sph-2-321");
    const auto v = is_curvelike(d);
    const CurvelikeN& c = expect_curvelike(v);
    EXPECT_EQ(c.n, 2);
    EXPECT_TRUE(validate_witness(d, c.one_decomposition));
    EXPECT_TRUE(validate_witness(d, c.negative_filtration));
    EXPECT_EQ(k_degree(d), 0);
}

TEST(Curvelike, NegativelyClosedButNotOneDecomposable) {
    const Divisor d = fixtures::divisor("negative-rational-tree_not_rigid");
    EXPECT_TRUE(is_negatively_closed(d));
    EXPECT_FALSE(find_one_decomposition(d).has_value());
    EXPECT_TRUE(std::holds_alternative<NotCurvelike>(is_curvelike(d)));
}

TEST(Curvelike, EllipticCurveIsInapplicable) {
    const Divisor d = fixtures::divisor("negative-elliptic-curve");
    EXPECT_TRUE(std::holds_alternative<Inapplicable>(is_curvelike(d)));
    EXPECT_FALSE(curvelike_n(d));
}

TEST(Curvelike, WellConnectedTriangleFailsOneConnectedness) {
    const Divisor d = fixtures::divisor("well-connected_not_1-connected");
    EXPECT_FALSE(is_one_connected(d));
    EXPECT_EQ(is_one_connected(d), oracle::one_connected(d));
    EXPECT_FALSE(curvelike_n(d));
}

TEST(Curvelike, NegativelyFilteredStarIsNotNegative) {
    const Divisor d = fixtures::divisor("negatively-filtered");
    EXPECT_TRUE(find_negative_filtration(d).has_value());
    EXPECT_FALSE(curvelike_n(d));
}

TEST(Curvelike, ZeroDivisorIsRejected) {
    const Divisor d = fixtures::divisor("d4");
    EXPECT_THROW(is_curvelike(Divisor::zero(d.config_ptr())), InvalidInput);
}

TEST(Curvelike, SingleCurves) {
    for (Int w = -1; w >= -6; --w) {
        const auto cfg = share(CurveConfig({{"A", w, 0}}, {}));
        EXPECT_EQ(curvelike_n(Divisor::curve(cfg, 0)), -w);
        // 2A is never 1-decomposable.
        EXPECT_FALSE(curvelike_n(Divisor::curve(cfg, 0, 2)));
    }
}

TEST(Witness, ValidationRejectsForgery) {
    const Divisor d = fixtures::divisor("sph-2-321");
    SequenceWitness w = expect_curvelike(is_curvelike(d)).one_decomposition;
    w.order.pop_back();
    EXPECT_FALSE(validate_witness(d, w));
    EXPECT_FALSE(validate_witness(d, {WitnessKind::OneDecomposition, {}}));
    const auto apart = share(CurveConfig({{"A", -2, 0}, {"B", -2, 0}}, {}));
    EXPECT_FALSE(validate_witness(Divisor::reduced(apart), {WitnessKind::OneDecomposition, {0, 1}}));
    EXPECT_TRUE(validate_witness(Divisor::reduced(apart), {WitnessKind::NegativeFiltration, {0, 1}}));
}

TEST(Witness, FirstFoundIsLowestIndexBranch) {
    // The chain A-B with A^2=B^2=-2 decomposes as A,B.
    const auto cfg = share(CurveConfig({{"A", -2, 0}, {"B", -2, 0}}, {{"A", "B", 1}}));
    const auto w = find_one_decomposition(Divisor::reduced(cfg));
    ASSERT_TRUE(w);
    EXPECT_EQ(format_order(*cfg, w->order), "A,B");
}

TEST(Witness, CompletePrefix) {
    const Divisor d = fixtures::divisor("sph-3-2211");
    // C.(D-C) = 2C.B = 2, so no 1-decomposition opens with C.
    const std::vector<std::size_t> bad{fixtures::index(d, "C")};
    EXPECT_FALSE(complete_one_decomposition(d, bad));
    const std::vector<std::size_t> good{fixtures::index(d, "B"), fixtures::index(d, "C")};
    const auto w = complete_one_decomposition(d, good);
    ASSERT_TRUE(w);
    EXPECT_TRUE(validate_witness(d, *w));
    EXPECT_EQ(w->order[0], good[0]);
    EXPECT_EQ(w->order[1], good[1]);
}

TEST(Minimality, Sph3StarReport) {
    const Divisor d = fixtures::divisor("sph-3-2211");
    const MinimalityReport r = is_minimal(d);
    EXPECT_TRUE(r.minimal());
    std::map<std::string, Int> deg;
    for (const auto& e : r.entries) deg[d.config().label(e.curve)] = e.degree;
    EXPECT_EQ(deg.at("E"), 1);
    EXPECT_EQ(deg.at("E'"), 1);
    EXPECT_EQ(deg.at("C"), 0);
    EXPECT_EQ(deg.at("C'"), 0);
}

TEST(Minimality, Sph2StarIsNotMinimal) {
    const Divisor d = fixtures::divisor("sph-2-321");
    const auto v = is_minimal(d).violations();
    ASSERT_FALSE(v.empty());
    EXPECT_EQ(d.config().label(v.front().curve), "C");
    EXPECT_EQ(v.front().move, MinimalityMove::TwistOff);
}

TEST(Minimality, ThrowsOnNonCurvelike) {
    EXPECT_THROW(is_minimal(fixtures::divisor("negatively-filtered")), PreconditionFailed);
}

TEST(Minimality, MinimalFiveChains) {
    for (const char* name : {"minimal-5-chain-31313", "minimal-5-chain-23123"}) {
        const Divisor d = fixtures::divisor(name);
        EXPECT_EQ(curvelike_n(d), 2) << name;
        EXPECT_TRUE(is_minimal(d).minimal()) << name;
    }
}

TEST(Decomposition, Sph3StarPaperPairs) {
    const Divisor d = fixtures::divisor("sph-3-2211");
    const Divisor first = parts_of(d, {"B", "C", "C'", "E"});
    const Divisor second = parts_of(d, {"B", "E'"});
    EXPECT_EQ(curvelike_n(first), 2);
    EXPECT_EQ(curvelike_n(second), 2);
    const std::vector<Divisor> a{first, second};
    EXPECT_TRUE(validate_decomposition(d, a));
    const std::vector<Divisor> b{parts_of(d, {"B", "C", "E"}), parts_of(d, {"B", "C'", "E'"})};
    EXPECT_TRUE(validate_decomposition(d, b));
    const std::vector<Divisor> wrong_sum{first, first};
    EXPECT_FALSE(validate_decomposition(d, wrong_sum));
}

TEST(Decomposition, Sph3FixtureNamedDivisorsMatch) {
    const auto doc = fixtures::load("sph-3-2211");
    const Divisor d = doc.default_divisor();
    EXPECT_EQ(doc.divisor("first") + doc.divisor("second"), d);
    EXPECT_EQ(doc.divisor("left") + doc.divisor("right"), d);
}

TEST(Decomposition, LibraryOutputValidates) {
    for (const char* name : {"sph-2-321", "sph-3-2211", "minimal-5-chain-31313", "minimal-5-chain-23123",
                             "spherelike-not-pullback"}) {
        const Divisor d = fixtures::divisor(name);
        if (!curvelike_n(d)) continue;
        const Decomposition dec = curvelike_decomposition(d);
        EXPECT_TRUE(validate_decomposition(d, dec.parts)) << name;
        for (const auto& p : dec.parts) EXPECT_TRUE(curvelike_n(p)) << name;
    }
}

TEST(Decomposition, RandomCurvelikeDivisors) {
    gen::Rng rng(99);
    for (int t = 0; t < 150; ++t) {
        const Divisor d = gen::curvelike_divisor(rng, 4, 7, 14);
        const Decomposition dec = curvelike_decomposition(d);
        ASSERT_TRUE(validate_decomposition(d, dec.parts)) << d.to_string();
    }
}

TEST(Decomposition, SplitAlongSimpleChain) {
    // A 1-decomposition starting at the (-3)-curve chops off the prefix
    // through the first (-1)-curve.
    const auto cfg = share(CurveConfig({{"A", -3, 0}, {"B", -1, 0}, {"C", -2, 0}}, {{"A", "B", 1}, {"B", "C", 1}}));
    const Divisor d = Divisor::reduced(cfg);
    ASSERT_EQ(curvelike_n(d), 2);
    const auto w = find_one_decomposition(d);
    ASSERT_TRUE(w);
    const auto parts = split_along(d, *w);
    Divisor sum = Divisor::zero(cfg);
    for (const auto& p : parts) sum = sum + p;
    EXPECT_EQ(sum, d);
    ASSERT_EQ(parts.size(), 2u);
    EXPECT_EQ(parts[0], Divisor(cfg, {1, 1, 0}));
    EXPECT_TRUE(validate_decomposition(d, parts));
}

TEST(NegativeDefinite, AgreesWithEigenOracle) {
    gen::Rng rng(7);
    for (int t = 0; t < 300; ++t) {
        const auto cfg = gen::config(rng, {.min_curves = 1, .max_curves = 6, .min_weight = -5, .max_weight = 1});
        const Inertia in = inertia(*cfg);
        const oracle::Signature s = oracle::eigen_signature(*cfg);
        ASSERT_EQ(in.positives, s.positives);
        ASSERT_EQ(in.zeros, s.zeros);
        ASSERT_EQ(in.negatives, s.negatives);
        EXPECT_EQ(is_negative_definite(*cfg, all_curves(*cfg)), s.negatives == cfg->size());
    }
}

TEST(NegativeDefinite, DominanceImpliesDefinite) {
    gen::Rng rng(8);
    for (int t = 0; t < 300; ++t) {
        const auto cfg = gen::config(rng, {.min_weight = -6, .max_weight = -1});
        const Divisor d = Divisor::reduced(cfg);
        if (dominance_sufficient(d) && is_connected(d)) {
            EXPECT_TRUE(is_negative_definite(d));
        }
    }
}

TEST(NegativeDefinite, Fixtures) {
    EXPECT_TRUE(is_negative_definite(fixtures::divisor("negative-definite_not_tree")));
    EXPECT_TRUE(is_negative_definite(fixtures::divisor("d4")));
    EXPECT_FALSE(is_negative_definite(fixtures::divisor("sph-3-2211")));
}

TEST(Closedness, MatchesOracleOnRandomDivisors) {
    gen::Rng rng(21);
    for (int t = 0; t < 300; ++t) {
        const auto cfg = gen::config(rng, {.max_curves = 4});
        const Divisor d = gen::divisor(rng, cfg, 2);
        if (!d.is_effective()) continue;
        ASSERT_EQ(is_negatively_closed(d), oracle::negatively_closed(d)) << d.to_string();
        ASSERT_EQ(is_one_connected(d), oracle::one_connected(d)) << d.to_string();
        ASSERT_EQ(find_one_decomposition(d).has_value(), oracle::has_one_decomposition(d)) << d.to_string();
        ASSERT_EQ(find_negative_filtration(d).has_value(), oracle::has_negative_filtration(d)) << d.to_string();
    }
}

TEST(Laufer, D4) {
    const Divisor d = fixtures::divisor("d4");
    const Divisor z = laufer_cycle(d.config_ptr());
    EXPECT_EQ(z[fixtures::index(d, "Z")], 2);
    for (const char* l : {"A", "B", "C"}) EXPECT_EQ(z[fixtures::index(d, l)], 1);
    EXPECT_EQ(self_intersection(z), -2);
}

TEST(Laufer, EllipticSingularity) {
    const Divisor d = fixtures::divisor("elliptic-sing");
    const Divisor z = laufer_cycle(d.config_ptr());
    EXPECT_EQ(z[fixtures::index(d, "M")], 3);
    for (const char* l : {"U2", "U3", "D2", "D3"}) EXPECT_EQ(z[fixtures::index(d, l)], 2) << l;
    for (const char* l : {"U1", "U4", "D1", "D4"}) EXPECT_EQ(z[fixtures::index(d, l)], 1) << l;
    EXPECT_EQ(euler_char(z), 0);
    EXPECT_FALSE(find_one_decomposition(z));
}

TEST(Laufer, Preconditions) {
    EXPECT_THROW(laufer_cycle(fixtures::divisor("sph-3-2211").config_ptr()), PreconditionFailed);
    const auto apart = share(CurveConfig({{"A", -2, 0}, {"B", -2, 0}}, {}));
    EXPECT_THROW(laufer_cycle(apart), PreconditionFailed);
}

TEST(Laufer, OrderIndependentAndBelowEveryAntiNefCycle) {
    gen::Rng rng(31);
    int checked = 0;
    while (checked < 200) {
        const auto cfg = gen::tree(rng, static_cast<std::size_t>(gen::uniform(rng, 1, 6)), -4, -2);
        if (!is_negative_definite(*cfg, all_curves(*cfg))) continue;
        ++checked;
        const Divisor z = laufer_cycle(cfg);
        for (std::size_t i = 0; i < cfg->size(); ++i) {
            EXPECT_GE(z[i], 1);
            EXPECT_LE(pairing(z, Divisor::curve(cfg, i)), 0);
        }
        std::vector<std::size_t> order = all_curves(*cfg);
        std::shuffle(order.begin(), order.end(), rng);
        EXPECT_EQ(laufer_cycle(cfg, all_curves(*cfg), order), z);
        // Every positive anti-nef cycle with small coefficients dominates Z.
        const Divisor box(cfg, std::vector<Int>(cfg->size(), 3));
        for (const Divisor& y : subdivisors(box, false)) {
            bool full = true, anti_nef = true;
            for (std::size_t i = 0; i < cfg->size(); ++i) {
                full = full && y[i] >= 1;
                anti_nef = anti_nef && pairing(y, Divisor::curve(cfg, i)) <= 0;
            }
            if (full && anti_nef) {
                EXPECT_TRUE(z.is_subdivisor_of(y));
            }
        }
    }
}
