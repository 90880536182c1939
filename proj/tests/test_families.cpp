#include <gtest/gtest.h>

#include <random>

#include "covmin/covmin.hpp"
#include "oracles.hpp"

using namespace covmin;

namespace {

WeightVector wv(std::initializer_list<Rat> xs) { return WeightVector(std::vector<Rat>(xs)); }

} // namespace

TEST(Families, WeightedSimplexVertices) {
    EXPECT_EQ(weighted_simplex(WeightVector::ones(2)), terminal_simplex(2));
    EXPECT_EQ(terminal_simplex(2), Polytope(2, {RatVec{Rat(-1), Rat(-1)}, RatVec{Rat(1), Rat(0)}, RatVec{Rat(0), Rat(1)}}));
    EXPECT_EQ(weighted_simplex(wv({Rat(1, 2), Rat(1), Rat(1)})),
              Polytope(2, {RatVec{Rat(-1, 2), Rat(-1, 2)}, RatVec{Rat(1), Rat(0)}, RatVec{Rat(0), Rat(1)}}));
    EXPECT_EQ(weighted_simplex(wv({Rat(2), Rat(3)})), segment(Rat(-2), Rat(3)));
}

TEST(Families, WeightValidation) {
    EXPECT_THROW(wv({Rat(1), Rat(0), Rat(1)}), Error);
    try {
        wv({Rat(1), Rat(-1)});
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::NonPositiveWeight);
    }
    try {
        weighted_conjectured_minimum(wv({Rat(3), Rat(1), Rat(2)}), 1);
        ADD_FAILURE();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::UnsortedWeights);
    }
}

TEST(Families, WeightedCoveringRadius) {
    for (std::size_t d = 1; d <= 6; ++d)
        EXPECT_EQ(weighted_covering_radius(WeightVector::ones(d)), Rat(long(d), 2));
    EXPECT_EQ(weighted_covering_radius(wv({Rat(1, 2), Rat(1), Rat(1)})), Rat(5, 4));
    EXPECT_EQ(weighted_covering_radius(wv({Rat(2), Rat(5)})), Rat(1, 7));
}

TEST(Families, ConjecturedMinimum) {
    auto w = WeightVector::ones(4);
    for (std::size_t i = 1; i <= 4; ++i)
        EXPECT_EQ(weighted_conjectured_minimum(w, i).upper(), Rat(long(i), 2));
    EXPECT_TRUE(weighted_conjectured_minimum(w, 2).conjectured);
    EXPECT_FALSE(weighted_conjectured_minimum(w, 1).conjectured);
    EXPECT_FALSE(weighted_conjectured_minimum(w, 4).conjectured);
    auto e = weighted_conjectured_minimum(wv({Rat(1), Rat(2), Rat(3)}), 1);
    EXPECT_EQ(e.upper(), Rat(1, 3));
    EXPECT_EQ(lattice_width(weighted_simplex(wv({Rat(1), Rat(2), Rat(3)})), Lattice::standard(2)).width, Rat(3));
}

TEST(Families, WeightedSlice) {
    EXPECT_EQ(weighted_slice(WeightVector::ones(4), IndexSet{0, 2}), wv({Rat(1, 3), Rat(1), Rat(1)}));
    auto w = wv({Rat(1), Rat(1), Rat(2), Rat(2)});
    EXPECT_EQ(weighted_slice(w, IndexSet{0, 1, 2}), w);
    EXPECT_EQ(weighted_slice(w, IndexSet{1, 2}), wv({Rat(1, 2), Rat(2), Rat(2)}));
    EXPECT_EQ(coord_slice(weighted_simplex(w), IndexSet{1, 2}).body, weighted_simplex(wv({Rat(1, 2), Rat(2), Rat(2)})));
}

TEST(Families, Constructors) {
    Polytope t = terminal_simplex(2);
    EXPECT_EQ(t.vertices().size(), 3u);
    EXPECT_TRUE(t.origin_interior());
    EXPECT_EQ(cube(3), box(RatVec(3, Rat(-1)), RatVec(3, Rat(1))));
    EXPECT_EQ(crosspolytope(2), Polytope(2, {RatVec{Rat(1), Rat(0)}, RatVec{Rat(-1), Rat(0)}, RatVec{Rat(0), Rat(1)},
                                             RatVec{Rat(0), Rat(-1)}}));
    EXPECT_THROW(segment(Rat(1), Rat(1)), Error);
    EXPECT_EQ(unimodular_simplex(3).vertices().size(), 4u);
    EXPECT_EQ(terminal_polytope({2, 1}), direct_sum(terminal_simplex(2), terminal_simplex(1)));
}

TEST(Families, DirectSumOfSegments) {
    MinimaTable seg = segment_table(Rat(-1), Rat(1));
    MinimaTable cross = direct_sum_table(direct_sum_table(seg, seg), seg);
    for (std::size_t i = 1; i <= 3; ++i) {
        EXPECT_EQ(cross.at(i).upper(), Rat(long(i), 2));
        EXPECT_TRUE(cross.at(i).is_exact());
    }
    std::vector<std::pair<Rat, Rat>> unit(3, {Rat(0), Rat(1)});
    for (std::size_t i = 1; i <= 3; ++i)
        EXPECT_EQ(segment_sum_minima(unit, i), Rat(long(i)));
    EXPECT_EQ(segment_sum_minima({{Rat(-1), Rat(1)}, {Rat(-1), Rat(1)}, {Rat(-1), Rat(1)}}, 2), Rat(1));
    EXPECT_EQ(segment_sum_minima({{Rat(-2), Rat(2)}, {Rat(-1), Rat(1)}, {Rat(0), Rat(1)}}, 2), Rat(3, 2));
    EXPECT_THROW(segment_sum_minima({{Rat(1), Rat(2)}}, 1), Error);
}

TEST(Families, TerminalPolytopeTable) {
    auto t = terminal_polytope_table({2, 2});
    for (std::size_t i = 1; i <= 4; ++i)
        EXPECT_EQ(t.at(i).upper(), Rat(long(i), 2));
    EXPECT_FALSE(t.any_conjectured());
    t = terminal_polytope_table({3, 1});
    for (std::size_t i = 1; i <= 4; ++i)
        EXPECT_EQ(t.at(i).upper(), Rat(long(i), 2));
    EXPECT_TRUE(t.at(2).conjectured);
    EXPECT_TRUE(t.any_conjectured());
    EXPECT_TRUE(t.is_monotone());
}

TEST(Families, MinimaTableErrors) {
    MinimaTable t(2);
    EXPECT_THROW(t.at(1), Error);
    EXPECT_THROW(t.set(3, MinimaEntry::exact(Rat(1), "x")), Error);
    EXPECT_EQ(t.at(0).upper(), Rat(0));
}

TEST(Families, RecognisesClosedForms) {
    EXPECT_EQ(closed_form_covering_radius(terminal_simplex(3)), Rat(3, 2));
    EXPECT_EQ(closed_form_covering_radius(box(RatVec{Rat(0), Rat(-1)}, RatVec{Rat(1, 2), Rat(2)})), Rat(2));
    EXPECT_EQ(closed_form_covering_radius(segment(Rat(-1, 3), Rat(1))), Rat(3, 4));
    EXPECT_FALSE(closed_form_covering_radius(crosspolytope(2)));
    auto w = as_weighted_simplex(weighted_simplex(wv({Rat(3), Rat(1, 2), Rat(2)})));
    ASSERT_TRUE(w);
    EXPECT_EQ(*w, wv({Rat(3), Rat(1, 2), Rat(2)}));
}

// ---- properties ----

TEST(FamiliesProperty, FormulaEndsAgree) {
    std::mt19937_64 rng(201);
    for (int trial = 0; trial < 50; ++trial) {
        std::size_t d = 1 + trial % 5;
        auto w = random_weights(rng, d, true);
        EXPECT_EQ(weighted_covering_radius(w), weighted_conjectured_minimum(w, d).upper());
        auto vals = w.values();
        std::shuffle(vals.begin(), vals.end(), rng);
        EXPECT_EQ(weighted_covering_radius(WeightVector(vals)), weighted_covering_radius(w));
        EXPECT_TRUE(weighted_table(w).is_monotone());
    }
}

TEST(FamiliesProperty, SliceConsistency) {
    std::mt19937_64 rng(202);
    for (int trial = 0; trial < 8; ++trial) {
        std::size_t d = 2 + trial % 4;
        auto w = random_weights(rng, d, false);
        Polytope s = weighted_simplex(w);
        for (unsigned long mask = 1; mask < (1UL << d); ++mask) {
            IndexSet idx = IndexSet::from_mask(mask, d);
            EXPECT_EQ(coord_slice(s, idx).body, weighted_simplex(weighted_slice(w, idx))) << w.str() << " " << idx.str();
        }
    }
}

TEST(FamiliesProperty, DirectSumEnds) {
    std::mt19937_64 rng(203);
    for (int trial = 0; trial < 30; ++trial) {
        auto a = weighted_table(random_weights(rng, 1 + trial % 3, true));
        auto b = weighted_table(random_weights(rng, 1 + trial % 2, true));
        auto s = direct_sum_table(a, b);
        EXPECT_EQ(s.at(s.dim()).upper(), a.at(a.dim()).upper() + b.at(b.dim()).upper());
        EXPECT_EQ(s.at(1).upper(), std::max(a.at(1).upper(), b.at(1).upper()));
        EXPECT_TRUE(s.is_monotone());
    }
}
