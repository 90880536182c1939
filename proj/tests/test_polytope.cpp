#include <gtest/gtest.h>

#include <random>

#include "covmin/covmin.hpp"
#include "oracles.hpp"

using namespace covmin;

namespace {

RatVec v2(long a, long b) { return RatVec{Rat(a), Rat(b)}; }

} // namespace

TEST(Polytope, DropsInteriorPointsAndSorts) {
    Polytope p(2, {v2(0, 0), v2(2, 0), v2(0, 2), v2(1, 1), v2(0, 1), v2(2, 0)});
    EXPECT_EQ(p.vertices(), (std::vector<RatVec>{v2(0, 0), v2(0, 2), v2(2, 0)}));
    EXPECT_TRUE(p.is_full_dimensional());
}

TEST(Polytope, FacetsOfUnitTriangle) {
    Polytope p(2, {v2(0, 0), v2(1, 0), v2(0, 1)});
    ASSERT_EQ(p.facets().size(), 3u);
    std::set<std::pair<RatVec, Rat>> got;
    for (const auto& f : p.facets())
        got.insert({f.normal, f.offset});
    std::set<std::pair<RatVec, Rat>> want{{v2(-1, 0), Rat(0)}, {v2(0, -1), Rat(0)}, {v2(1, 1), Rat(1)}};
    EXPECT_EQ(got, want);
}

TEST(Polytope, TerminalTriangleHasOriginInside) {
    Polytope t = terminal_simplex(2);
    EXPECT_EQ(t.facets().size(), 3u);
    for (const auto& f : t.facets())
        EXPECT_GT(f.offset, 0);
    EXPECT_TRUE(t.origin_interior());
}

TEST(Polytope, CubeFacets) {
    auto fs = cube(3).facets();
    ASSERT_EQ(fs.size(), 6u);
    for (const auto& f : fs) {
        EXPECT_EQ(f.offset, 1);
        int nz = 0;
        for (const auto& c : f.normal)
            if (c != 0) {
                ++nz;
                EXPECT_EQ(abs(c), 1);
            }
        EXPECT_EQ(nz, 1);
    }
}

TEST(Polytope, Gauge) {
    EXPECT_EQ(gauge(cube(2), RatVec{Rat(1, 2), Rat(-3, 4)}), Rat(3, 4));
    EXPECT_EQ(gauge(terminal_simplex(2), v2(-1, -1)), Rat(1));
    EXPECT_EQ(gauge(weighted_simplex(WeightVector({Rat(1), Rat(2), Rat(3)})), v2(2, 0)), Rat(1));
    EXPECT_EQ(gauge(cube(2), v2(0, 0)), Rat(0));
}

TEST(Polytope, Support) {
    EXPECT_EQ(support(cube(3), RatVec::unit(3, 0)), Rat(1));
    EXPECT_EQ(support(terminal_simplex(3), RatVec::unit(3, 0)), Rat(1));
    EXPECT_EQ(support(terminal_simplex(3), -RatVec::unit(3, 0)), Rat(1));
    EXPECT_EQ(support(segment(Rat(-2), Rat(5, 3)), RatVec{Rat(1)}), Rat(5, 3));
}

TEST(Polytope, CenterTranslate) {
    auto [c, shift] = center_translate(Polytope(2, {v2(0, 0), v2(1, 0), v2(0, 1), v2(1, 1)}));
    EXPECT_EQ(shift, (RatVec{Rat(-1, 2), Rat(-1, 2)}));
    EXPECT_TRUE(c.origin_interior());
    auto [t, s2] = center_translate(terminal_simplex(3));
    for (const auto& f : t.facets())
        EXPECT_GT(f.offset, 0);
    EXPECT_EQ(center_translate(cube(3)).second, RatVec(3));
}

TEST(Polytope, ProjectionAndSlice) {
    Polytope t4 = terminal_simplex(4);
    EXPECT_EQ(coord_project(t4, IndexSet{0, 1, 2}), terminal_simplex(3));
    EXPECT_EQ(coord_project(cube(3), IndexSet{0}), segment(Rat(-1), Rat(1)));
    auto s = coord_slice(cube(3), IndexSet{0, 1});
    EXPECT_TRUE(s.full_dimensional);
    EXPECT_EQ(s.body, cube(2));
    EXPECT_EQ(coord_slice(crosspolytope(3), IndexSet{0, 1}).body, crosspolytope(2));
    // T_d slice: S(1/(d-i+1), 1, ..., 1)
    EXPECT_EQ(coord_slice(t4, IndexSet{1, 3}).body, weighted_simplex(WeightVector({Rat(1, 3), Rat(1), Rat(1)})));
}

TEST(Polytope, FullIndexSetIsIdentity) {
    for (const auto& p : {terminal_simplex(3), cube(2), crosspolytope(3)}) {
        auto all = IndexSet::range(p.dim());
        EXPECT_EQ(coord_project(p, all), p);
        EXPECT_EQ(coord_slice(p, all).body, p);
    }
}

TEST(Polytope, DegenerateSliceIsFlagged) {
    Polytope p(2, {v2(0, 0), v2(1, 1), v2(2, 1)});
    auto s = coord_slice(p, IndexSet{0});
    EXPECT_FALSE(s.full_dimensional);
    Polytope q(2, {v2(1, 1), v2(2, 1), v2(1, 2)});
    EXPECT_THROW(coord_slice(q, IndexSet{0}), Error);
}

TEST(Polytope, DirectSumBlocks) {
    Polytope seg = segment(Rat(-1), Rat(1));
    EXPECT_EQ(direct_sum(seg, seg), crosspolytope(2));
    Polytope k = direct_sum(terminal_simplex(2), segment(Rat(-1, 2), Rat(1)));
    EXPECT_EQ(coord_project(k, IndexSet{0, 1}), terminal_simplex(2));
    EXPECT_EQ(coord_slice(k, IndexSet{0, 1}).body, terminal_simplex(2));
    EXPECT_EQ(coord_slice(k, IndexSet{2}).body, segment(Rat(-1, 2), Rat(1)));
    auto blocks = direct_sum_blocks(k);
    ASSERT_EQ(blocks.size(), 2u);
    EXPECT_EQ(blocks[0], (IndexSet{0, 1}));
    EXPECT_EQ(blocks[1], (IndexSet{2}));
    EXPECT_EQ(direct_sum_blocks(terminal_simplex(3)).size(), 1u);
    EXPECT_THROW(direct_sum(segment(Rat(1), Rat(2)), seg), Error);
}

TEST(Polytope, LocallyAntiBlocking) {
    EXPECT_TRUE(is_locally_anti_blocking(cube(3)));
    EXPECT_TRUE(is_locally_anti_blocking(crosspolytope(3)));
    EXPECT_FALSE(is_locally_anti_blocking(terminal_simplex(3)));
    EXPECT_THROW(is_locally_anti_blocking(unimodular_simplex(2)), Error);
}

TEST(Polytope, DifferenceBody) {
    EXPECT_EQ(difference_body(cube(2)), cube(2, Rat(2)));
    Polytope d = difference_body(terminal_simplex(2));
    EXPECT_EQ(d, d.negate());
}

TEST(Polytope, IndexSetHelpers) {
    EXPECT_EQ(subsets_of_size(4, 2).size(), 6u);
    EXPECT_EQ(subsets_of_size(4, 2).front(), (IndexSet{0, 1}));
    EXPECT_EQ((IndexSet{0, 2}).complement(4), (IndexSet{1, 3}));
    EXPECT_EQ((IndexSet{0, 2}).str(), "{1,3}");
}

// ---- properties ----

TEST(PolytopeProperty, GaugeHomogeneousAndConvex) {
    std::mt19937_64 rng(101);
    std::uniform_int_distribution<int> c(-8, 8), l(0, 6);
    for (int trial = 0; trial < 30; ++trial) {
        auto [k, shift] = center_translate(ref::random_body(rng, 2, 5));
        RatVec x{Rat(c(rng), 3), Rat(c(rng), 3)}, y{Rat(c(rng), 4), Rat(c(rng), 2)};
        Rat lam(l(rng), 2);
        EXPECT_EQ(gauge(k, lam * x), lam * gauge(k, x));
        EXPECT_LE(gauge(k, Rat(1, 2) * (x + y)), (gauge(k, x) + gauge(k, y)) / 2);
        EXPECT_EQ(gauge(k, x), ref::gauge_by_membership(k, x)) << k.str() << " at " << to_string(x);
    }
}

TEST(PolytopeProperty, FacetRoundTrip) {
    std::mt19937_64 rng(102);
    for (int trial = 0; trial < 20; ++trial) {
        Polytope k = ref::random_body(rng, trial % 2 ? 3 : 2, 7);
        // rebuild the vertices from the facets: every vertex lies on >= d facets
        std::vector<RatVec> from_h;
        for (const auto& idx : subsets_of_size(k.facets().size(), k.dim())) {
            RatMat a(k.dim(), k.dim());
            RatVec b(k.dim());
            for (std::size_t r = 0; r < k.dim(); ++r) {
                a.set_row(r, k.facets()[idx[r]].normal);
                b[r] = k.facets()[idx[r]].offset;
            }
            if (det(a) == 0)
                continue;
            RatVec x = mat_inverse(a) * b;
            if (k.contains(x))
                from_h.push_back(x);
        }
        EXPECT_EQ(Polytope(k.dim(), from_h), k);
        EXPECT_EQ(Polytope::from_vertices(k.dim(), k.vertices()), k);
    }
}
