#include <gtest/gtest.h>

#include <random>

#include "covmin/covmin.hpp"

using namespace covmin;

TEST(Rational, ParseAndPrint) {
    EXPECT_EQ(parse_rat("3/6"), Rat(1, 2));
    EXPECT_EQ(parse_rat("-7"), Rat(-7));
    EXPECT_EQ(parse_rat("+2/-4"), Rat(-1, 2));
    EXPECT_EQ(to_string(Rat(-6, 4)), "-3/2");
    EXPECT_EQ(to_string(Rat(5)), "5");
}

TEST(Rational, RejectsFloatsAndJunk) {
    for (const char* s : {"0.5", "1e3", "1/0", "", "a/b", "1/2/3"}) {
        try {
            parse_rat(s);
            ADD_FAILURE() << "accepted '" << s << "'";
        } catch (const Error& e) {
            EXPECT_EQ(e.code(), Errc::InvalidInput) << s;
        }
    }
}

TEST(Rational, FloorCeil) {
    EXPECT_EQ(covmin::floor(Rat(-1, 2)), Int(-1));
    EXPECT_EQ(covmin::ceil(Rat(-1, 2)), Int(0));
    EXPECT_EQ(covmin::floor(Rat(7, 3)), Int(2));
    EXPECT_EQ(covmin::ceil(Rat(7, 3)), Int(3));
    EXPECT_EQ(from_i128(to_i128(Int("-123456789012345678901234"))), Int("-123456789012345678901234"));
}

TEST(Linalg, InverseAndDeterminant) {
    RatMat a{{Rat(2), Rat(1)}, {Rat(1), Rat(1)}};
    EXPECT_EQ(det(a), Rat(1));
    EXPECT_EQ(a * mat_inverse(a), RatMat::identity(2));
    RatMat s{{Rat(1), Rat(2)}, {Rat(2), Rat(4)}};
    EXPECT_EQ(det(s), Rat(0));
    EXPECT_THROW(mat_inverse(s), Error);
    EXPECT_EQ(rank(s), 1u);
    auto ns = nullspace(s);
    ASSERT_EQ(ns.size(), 1u);
    EXPECT_EQ(s * ns[0], RatVec(2));
}

TEST(Linalg, PrimitiveInteger) {
    IntVec p = primitive_integer(RatVec{Rat(2, 3), Rat(-4, 9)});
    EXPECT_EQ(p[0], Int(3));
    EXPECT_EQ(p[1], Int(-2));
}

TEST(Hnf, SmallExample) {
    IntMat m{{Int(2), Int(4)}, {Int(1), Int(3)}};
    auto r = hnf(m);
    IntMat expect{{Int(1), Int(1)}, {Int(0), Int(2)}};
    EXPECT_EQ(r.h, expect);
    EXPECT_EQ(r.u * m, r.h);
    EXPECT_EQ(abs(Rat(int_det(r.u))), Rat(1));
}

TEST(Hnf, RandomInvariants) {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> c(-9, 9);
    for (int trial = 0; trial < 40; ++trial) {
        IntMat m(3, 3);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j)
                m(i, j) = Int(c(rng));
        auto r = hnf(m);
        EXPECT_EQ(r.u * m, r.h);
        EXPECT_EQ(abs(Rat(int_det(r.u))), Rat(1));
        EXPECT_EQ(abs(Rat(int_det(r.h))), abs(Rat(int_det(m))));
        // echelon: zero below pivots, entries above a pivot reduced
        std::size_t row = 0;
        for (std::size_t col = 0; col < 3 && row < 3; ++col) {
            if (r.h(row, col) == 0)
                continue;
            EXPECT_GT(r.h(row, col), 0);
            for (std::size_t k = row + 1; k < 3; ++k)
                EXPECT_EQ(r.h(k, col), 0);
            for (std::size_t k = 0; k < row; ++k) {
                EXPECT_GE(r.h(k, col), 0);
                EXPECT_LT(r.h(k, col), r.h(row, col));
            }
            ++row;
        }
    }
}

TEST(Hnf, IntegerKernel) {
    IntMat m{{Int(1), Int(2), Int(3)}};
    auto ker = integer_kernel(m);
    ASSERT_EQ(ker.size(), 2u);
    for (const auto& v : ker)
        EXPECT_EQ(m * v, IntVec(1));
}

TEST(Lp, TwoVariableOptimum) {
    RatMat a{{Rat(1), Rat(2)}, {Rat(3), Rat(1)}};
    auto r = lp_maximize<Rat>(a, {Rat(4), Rat(6)}, {Rat(1), Rat(1)});
    ASSERT_EQ(r.status, LpStatus::Optimal);
    EXPECT_EQ(r.value, Rat(14, 5));
    EXPECT_EQ(r.x[0], Rat(8, 5));
    EXPECT_EQ(r.x[1], Rat(6, 5));
}

TEST(Lp, InfeasibleAndUnbounded) {
    RatMat a{{Rat(1)}, {Rat(-1)}};
    EXPECT_EQ(lp_maximize<Rat>(a, {Rat(1), Rat(-2)}, {Rat(1)}).status, LpStatus::Infeasible);
    RatMat b{{Rat(-1)}};
    EXPECT_EQ(lp_maximize<Rat>(b, {Rat(1)}, {Rat(1)}).status, LpStatus::Unbounded);
}

TEST(Lp, InteriorPoint) {
    std::vector<HalfSpace> rows{{RatVec{Rat(1), Rat(1)}, Rat(1)}};
    auto p = interior_point(rows, RatVec{Rat(0), Rat(0)}, RatVec{Rat(1), Rat(1)});
    ASSERT_TRUE(p);
    EXPECT_LT((*p)[0] + (*p)[1], Rat(1));
    EXPECT_GT((*p)[0], 0);
    std::vector<HalfSpace> flat{{RatVec{Rat(1), Rat(1)}, Rat(0)}};
    EXPECT_FALSE(interior_point(flat, RatVec{Rat(0), Rat(0)}, RatVec{Rat(1), Rat(1)}));
}

TEST(Interval, Arithmetic) {
    Interval a(Rat(1), Rat(2)), b(Rat(1, 2));
    EXPECT_EQ(a + b, Interval(Rat(3, 2), Rat(5, 2)));
    EXPECT_EQ(max(a, b), a);
    EXPECT_EQ(to_string(b), "1/2");
    EXPECT_EQ(to_string(a), "[1, 2]");
    EXPECT_THROW(Interval(Rat(2), Rat(1)), Error);
}

TEST(Lattice, DualAndMembership) {
    Lattice l(RatMat{{Rat(2), Rat(1)}, {Rat(0), Rat(1)}});
    EXPECT_EQ(l.dual_basis().transpose() * l.basis(), RatMat::identity(2));
    EXPECT_TRUE(l.contains(RatVec{Rat(3), Rat(1)}));
    EXPECT_FALSE(l.contains(RatVec{Rat(1), Rat(0)}));
    Lattice same(RatMat{{Rat(2), Rat(3)}, {Rat(0), Rat(1)}});
    EXPECT_TRUE(l.same_lattice(same));
    EXPECT_FALSE(l.same_lattice(Lattice::standard(2)));
    EXPECT_THROW(Lattice(RatMat{{Rat(1), Rat(2)}, {Rat(2), Rat(4)}}), Error);
}

TEST(Lattice, GroupBasis) {
    // (1/2, 0), (0, 1), (1/2, 1) generate (1/2)Z x Z
    auto b = group_basis({RatVec{Rat(1, 2), Rat(0)}, RatVec{Rat(0), Rat(1)}, RatVec{Rat(1, 2), Rat(1)}}, 2);
    ASSERT_EQ(b.size(), 2u);
    Lattice got = Lattice::from_vectors(b);
    EXPECT_TRUE(got.same_lattice(Lattice(RatMat{{Rat(1, 2), Rat(0)}, {Rat(0), Rat(1)}})));
}

TEST(Lattice, PointsInBox) {
    auto pts = lattice_points_in_box(Lattice::standard(2), Box{RatVec{Rat(-1, 2), Rat(0)}, RatVec{Rat(1), Rat(3, 2)}});
    EXPECT_EQ(pts.size(), 4u);
    EXPECT_TRUE(std::is_sorted(pts.begin(), pts.end()));
}

TEST(Budget, EnvironmentOverride) {
    setenv("COVMIN_BUDGET", "17", 1);
    Budget b = Budget::from_env();
    EXPECT_EQ(b.max_candidates, 17u);
    EXPECT_EQ(b.max_cells, 17u);
    setenv("COVMIN_BUDGET", "x", 1);
    EXPECT_THROW(Budget::from_env(), Error);
    unsetenv("COVMIN_BUDGET");
    EXPECT_EQ(Budget::from_env().max_candidates, Budget{}.max_candidates);
}
