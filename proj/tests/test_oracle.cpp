#include <gtest/gtest.h>

#include <random>

#include "covmin/covmin.hpp"
#include "oracles.hpp"

using namespace covmin;

namespace {

const Rat kTol(1, 10000);

Interval cr(const Polytope& k, const Lattice& lat, const Rat& tol = kTol) { return covering_radius(k, lat, tol).interval; }

Interval cr(const Polytope& k) { return cr(k, Lattice::standard(k.dim())); }

WeightVector wv(std::initializer_list<Rat> xs) { return WeightVector(std::vector<Rat>(xs)); }

} // namespace

TEST(CoveringRadius, ClosedFormBodies) {
    struct Case {
        Polytope body;
        Rat value;
    };
    std::vector<Case> cases{
        {terminal_simplex(2), Rat(1)},
        {cube(2), Rat(1, 2)},
        {segment(Rat(-1, 3), Rat(1)), Rat(3, 4)},
        {weighted_simplex(wv({Rat(1, 2), Rat(1), Rat(1)})), Rat(5, 4)},
        {weighted_simplex(wv({Rat(1), Rat(2), Rat(3)})), weighted_covering_radius(wv({Rat(1), Rat(2), Rat(3)}))},
        {crosspolytope(2), Rat(1)},
        {unimodular_simplex(2), Rat(2)},
        {box(RatVec{Rat(0), Rat(0)}, RatVec{Rat(2), Rat(1, 2)}), Rat(2)},
    };
    for (const auto& c : cases) {
        auto iv = cr(c.body);
        EXPECT_TRUE(iv.contains(c.value)) << c.body.str() << " " << to_string(iv);
        EXPECT_LE(iv.width(), 2 * kTol);
    }
}

TEST(CoveringRadius, HugeFacetDenominators) {
    // an off-centre translate with prime denominators pushes the exact fixed
    // point scale far past 2^40, so the rounded arithmetic path is taken
    CoveringOptions opt;
    opt.auto_translate = false;
    RatVec s3{Rat(1, 1009), Rat(-1, 1013), Rat(1, 1019)};
    auto c3 = covering_radius(terminal_simplex(3).translate(s3), Lattice::standard(3), opt).interval;
    EXPECT_TRUE(c3.contains(Rat(3, 2))) << to_string(c3);
    EXPECT_LE(c3.width(), opt.tol);
    RatVec s2{Rat(7, 10007), Rat(-3, 10009)};
    auto c2 = covering_radius(crosspolytope(2).translate(s2), Lattice::standard(2), opt).interval;
    EXPECT_TRUE(c2.contains(Rat(1))) << to_string(c2);
}

TEST(CoveringRadius, OtherLattices) {
    Lattice two(RatMat{{Rat(2), Rat(0)}, {Rat(0), Rat(2)}});
    EXPECT_TRUE(cr(cube(2), two).contains(Rat(1)));
    // a skew basis of Z^2 gives the same value as the standard one
    Lattice skew(RatMat{{Rat(1), Rat(3)}, {Rat(0), Rat(1)}});
    EXPECT_TRUE(cr(terminal_simplex(2), skew).contains(Rat(1)));
}

TEST(CoveringRadius, RejectsBadInput) {
    Polytope flat(2, {RatVec{Rat(0), Rat(0)}, RatVec{Rat(1), Rat(1)}});
    EXPECT_THROW(cr(flat), Error);
    EXPECT_THROW(cr(cube(2), Lattice::standard(3)), Error);
    CoveringOptions opt;
    opt.auto_translate = false;
    try {
        covering_radius(unimodular_simplex(2), Lattice::standard(2), opt);
        ADD_FAILURE();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::OriginNotInterior);
    }
}

TEST(CoveringRadius, BudgetIsAnError) {
    CoveringOptions opt;
    opt.budget.max_cells = 3;
    opt.tol = Rat(1, 1000000);
    try {
        covering_radius(terminal_simplex(3), Lattice::standard(3), opt);
        ADD_FAILURE();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::BudgetExceeded);
    }
}

TEST(LatticeWidth, Examples) {
    for (std::size_t d = 2; d <= 5; ++d)
        EXPECT_EQ(lattice_width(terminal_simplex(d), Lattice::standard(d)).width, Rat(2));
    for (std::size_t d = 1; d <= 4; ++d)
        EXPECT_EQ(lattice_width(cube(d), Lattice::standard(d)).width, Rat(2));
    EXPECT_EQ(lattice_width(weighted_simplex(wv({Rat(1), Rat(2), Rat(3)})), Lattice::standard(2)).width, Rat(3));
    auto w = lattice_width(terminal_simplex(3), Lattice::standard(3));
    EXPECT_EQ(ref::width_along(terminal_simplex(3), w.functional_x), Rat(2));
    // on 2Z^2 the dual lattice is (1/2)Z^2
    Lattice two(RatMat{{Rat(2), Rat(0)}, {Rat(0), Rat(2)}});
    EXPECT_EQ(lattice_width(cube(2), two).width, Rat(1));
}

TEST(SuccessiveMinima, Examples) {
    for (std::size_t d = 2; d <= 4; ++d) {
        auto m = successive_minima(difference_body(terminal_simplex(d)), Lattice::standard(d));
        for (const auto& l : m.lambda)
            EXPECT_EQ(l, Rat(long(d), long(d + 1)));
    }
    auto m = successive_minima(box(RatVec{Rat(-1), Rat(-3)}, RatVec{Rat(1), Rat(3)}), Lattice::standard(2));
    EXPECT_EQ(m.lambda, (std::vector<Rat>{Rat(1, 3), Rat(1)}));
    try {
        successive_minima(terminal_simplex(2), Lattice::standard(2));
        ADD_FAILURE();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::NotSymmetric);
    }
}

TEST(Sandwich, TerminalThree) {
    auto s = minima_sandwich(terminal_simplex(3), Lattice::standard(3), 2);
    EXPECT_GE(s.lower, Rat(1) - kTol);
    EXPECT_LE(s.upper, Rat(5, 4));
    EXPECT_TRUE(s.contains(Rat(1)));
    EXPECT_FALSE(s.exact);
    auto one = minima_sandwich(terminal_simplex(3), Lattice::standard(3), 1);
    EXPECT_TRUE(one.exact);
    EXPECT_EQ(one.lower, Rat(1, 2));
}

TEST(Sandwich, ExactFamilies) {
    auto t = minima_table(cube(3), Lattice::standard(3));
    for (std::size_t i = 1; i <= 3; ++i)
        EXPECT_EQ(t.at(i).interval(), Interval(Rat(1, 2)));
    auto x = minima_table(crosspolytope(3), Lattice::standard(3));
    for (std::size_t i = 1; i <= 3; ++i)
        EXPECT_EQ(x.at(i).interval(), Interval(Rat(long(i), 2)));
    // box [-1,1] x [-3,3] x [-1/2,1/2]: every slice keeps the shortest side it meets, so all minima are 1
    Polytope b = box(RatVec{Rat(-1), Rat(-3), Rat(-1, 2)}, RatVec{Rat(1), Rat(3), Rat(1, 2)});
    auto bt = minima_table(b, Lattice::standard(3));
    for (std::size_t i = 1; i <= 3; ++i)
        EXPECT_EQ(bt.at(i).interval(), Interval(Rat(1)));
}

TEST(Sandwich, LabEntry) {
    EXPECT_EQ(lab_minima(cube(3), 2).interval(), Interval(Rat(1, 2)));
    EXPECT_EQ(lab_minima(box(RatVec{Rat(-1), Rat(-1, 3)}, RatVec{Rat(1), Rat(1, 3)}), 2).interval(),
              Interval(Rat(3, 2)));
    try {
        lab_minima(terminal_simplex(3), 2);
        ADD_FAILURE();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::NotLAB);
    }
}

TEST(Sandwich, DirectSumReport) {
    auto r = verify_direct_sum(terminal_simplex(2), segment(Rat(-1), Rat(1)), 3);
    EXPECT_TRUE(r.ok());
    EXPECT_EQ(r.rhs, Interval(Rat(3, 2)));
    ASSERT_TRUE(r.sum_radius);
    EXPECT_TRUE(r.sum_radius->contains(Rat(3, 2)));
}

TEST(Sandwich, UserProjection) {
    SandwichOptions opt;
    opt.projections.push_back(IntMat{{Int(1), Int(1), Int(1)}});
    auto s = minima_sandwich(terminal_simplex(3), Lattice::standard(3), 2, opt);
    EXPECT_TRUE(s.contains(Rat(1)));
    opt.projections = {IntMat{{Int(1), Int(0)}}};
    EXPECT_THROW(minima_sandwich(terminal_simplex(3), Lattice::standard(3), 2, opt), Error);
}

TEST(Sandwich, JobsDoNotChangeResults) {
    Polytope k = terminal_simplex(4);
    SandwichOptions one, four;
    four.jobs = 4;
    for (std::size_t i = 1; i <= 4; ++i) {
        auto a = minima_sandwich(k, Lattice::standard(4), i, one);
        auto b = minima_sandwich(k, Lattice::standard(4), i, four);
        EXPECT_EQ(a.lower, b.lower);
        EXPECT_EQ(a.upper, b.upper);
        EXPECT_EQ(a.lb_witness, b.lb_witness);
        EXPECT_EQ(a.ub_witness, b.ub_witness);
    }
}

TEST(Parallel, DeterministicAndRethrows) {
    auto v = parallel_map(50, 4, [](std::size_t k) { return k * k; });
    for (std::size_t k = 0; k < 50; ++k)
        EXPECT_EQ(v[k], k * k);
    try {
        parallel_map(20, 4, [](std::size_t k) -> int {
            if (k == 7 || k == 13)
                fail(Errc::InvalidInput, std::to_string(k));
            return 0;
        });
        ADD_FAILURE();
    } catch (const Error& e) {
        EXPECT_NE(std::string(e.what()).find('7'), std::string::npos);
    }
}

// ---- properties against the brute-force references ----

TEST(OracleProperty, WidthMatchesEnumeration) {
    std::mt19937_64 rng(401);
    for (int trial = 0; trial < 25; ++trial) {
        std::size_t d = trial < 15 ? 2 : 3;
        Polytope k = ref::random_body(rng, d, d + 3);
        auto w = lattice_width(k, Lattice::standard(d));
        EXPECT_EQ(w.width, ref::width(k, d == 2 ? 6 : 3)) << k.str();
        EXPECT_EQ(ref::width_along(k, w.functional_x), w.width);
    }
}

TEST(OracleProperty, SuccessiveMinimaMatchEnumeration) {
    std::mt19937_64 rng(402);
    for (int trial = 0; trial < 15; ++trial) {
        std::size_t d = trial < 10 ? 2 : 3;
        Polytope c = difference_body(ref::random_body(rng, d, d + 2));
        auto m = successive_minima(c, Lattice::standard(d));
        EXPECT_EQ(m.lambda, ref::successive_minima(c, d == 2 ? 8 : 5)) << c.str();
        EXPECT_TRUE(std::is_sorted(m.lambda.begin(), m.lambda.end()));
        EXPECT_EQ(rank(m.witness, d), d);
        for (std::size_t j = 0; j < d; ++j)
            EXPECT_EQ(gauge(c, m.witness[j]), m.lambda[j]);
    }
}

TEST(OracleProperty, CoveringRadiusAgainstGrid) {
    std::mt19937_64 rng(403);
    for (int trial = 0; trial < 8; ++trial) {
        Polytope k = ref::random_body(rng, 2, 5);
        auto c = covering_radius(k, Lattice::standard(2), Rat(1, 1000));
        Polytope kc = k.translate(c.shift);
        Rat grid = ref::grid_covering(kc, 16, 8);
        EXPECT_LE(grid, c.interval.hi()) << k.str();
        // the deep point certifies the lower end exactly
        Rat deep = ref::distance_to_lattice(kc, c.deep_point, 8);
        EXPECT_GE(deep, c.interval.lo()) << k.str();
        EXPECT_LE(c.interval.width(), Rat(1, 1000));
    }
}

TEST(OracleProperty, DeepPointIn3d) {
    for (const auto& k : {terminal_simplex(3), crosspolytope(3), weighted_simplex(wv({Rat(1, 2), Rat(1), Rat(2), Rat(2)}))}) {
        auto c = covering_radius(k, Lattice::standard(3), kTol);
        Polytope kc = k.translate(c.shift);
        EXPECT_GE(ref::distance_to_lattice(kc, c.deep_point, 4), c.interval.lo()) << k.str();
    }
}

TEST(OracleProperty, UnimodularInvariance) {
    std::mt19937_64 rng(404);
    std::uniform_int_distribution<int> shift(-3, 3);
    for (int trial = 0; trial < 8; ++trial) {
        std::size_t d = trial < 6 ? 2 : 3;
        Polytope k = ref::random_body(rng, d, d + 2);
        RatMat u = ref::random_unimodular(rng, d);
        RatVec z(d);
        for (auto& x : z)
            x = Rat(shift(rng), 2);
        Polytope uk = k.linear_image(u).translate(z);
        auto a = cr(k, Lattice::standard(d), Rat(1, 1000));
        auto b = cr(uk, Lattice::standard(d), Rat(1, 1000));
        auto c = cr(k.linear_image(u), Lattice(u), Rat(1, 1000));
        EXPECT_TRUE(a.overlaps(b)) << to_string(a) << " " << to_string(b);
        EXPECT_TRUE(a.overlaps(c)) << to_string(a) << " " << to_string(c);
        EXPECT_EQ(lattice_width(k, Lattice::standard(d)).width, lattice_width(uk, Lattice::standard(d)).width);
    }
}

TEST(OracleProperty, RefinementIsMonotone) {
    std::mt19937_64 rng(405);
    for (int trial = 0; trial < 6; ++trial) {
        Polytope k = ref::random_body(rng, 2, 5);
        Rat tol(1, 100);
        auto prev = cr(k, Lattice::standard(2), tol);
        for (int step = 0; step < 4; ++step) {
            tol /= 2;
            auto next = cr(k, Lattice::standard(2), tol);
            EXPECT_GE(next.lo(), prev.lo()) << k.str();
            EXPECT_LE(next.hi(), prev.hi()) << k.str();
            prev = next;
        }
    }
}

TEST(OracleProperty, SymmetryUnderNegation) {
    std::mt19937_64 rng(406);
    for (int trial = 0; trial < 6; ++trial) {
        Polytope k = ref::random_body(rng, 2, 4);
        EXPECT_TRUE(cr(k).overlaps(cr(k.negate())));
        EXPECT_EQ(lattice_width(k, Lattice::standard(2)).width, lattice_width(k.negate(), Lattice::standard(2)).width);
    }
}

TEST(OracleProperty, AdditivityOfDirectSums) {
    std::mt19937_64 rng(407);
    for (int trial = 0; trial < 5; ++trial) {
        auto [a1, b1] = random_segment(rng);
        auto [a2, b2] = random_segment(rng);
        auto s = cr(direct_sum(segment(a1, b1), segment(a2, b2)));
        Rat expect = Rat(1) / (b1 - a1) + Rat(1) / (b2 - a2);
        EXPECT_LE(abs(s.mid() - expect), 4 * kTol);
    }
}

TEST(OracleProperty, SandwichFirstMinimumIsInverseWidth) {
    std::mt19937_64 rng(408);
    for (int trial = 0; trial < 10; ++trial) {
        std::size_t d = 2 + trial % 2;
        Polytope k = ref::random_body(rng, d, d + 2);
        auto s = minima_sandwich(k, Lattice::standard(d), 1);
        EXPECT_TRUE(s.exact);
        EXPECT_EQ(s.lower, Rat(1) / lattice_width(k, Lattice::standard(d)).width);
    }
}

TEST(OracleProperty, SandwichConsistentAndLowerMonotone) {
    std::mt19937_64 rng(409);
    for (int trial = 0; trial < 5; ++trial) {
        Polytope k = ref::random_body(rng, 3, 6);
        Rat last(0);
        for (std::size_t i = 1; i <= 3; ++i) {
            auto s = minima_sandwich(k, Lattice::standard(3), i);
            EXPECT_LE(s.lower, s.upper + 2 * kTol) << k.str() << " i=" << i;
            EXPECT_GE(s.lower + 2 * kTol, last) << k.str() << " i=" << i;
            last = s.lower;
        }
    }
}

TEST(OracleProperty, ExactTablesAreMonotone) {
    for (const auto& k : {cube(3), crosspolytope(3), direct_sum(terminal_simplex(2), segment(Rat(-1), Rat(1, 2)))}) {
        auto t = minima_table(k, Lattice::standard(3));
        EXPECT_TRUE(t.is_monotone()) << k.str();
    }
}
