#include <doctest.h>

#include <nhc/lattice.hpp>

#include "oracle.hpp"

#include <random>

using namespace nhc;

namespace {
Semigroup2 plane() { return Semigroup2({1, 0}, {0, 1}); }
Semigroup2 a1() { return Semigroup2({1, 0}, {1, 2}); }
} // namespace

TEST_CASE("semigroup construction canonicalizes and validates") {
    Semigroup2 S({0, 1}, {1, 0}); // swapped input rays
    CHECK(S.ray1() == LatticePoint{1, 0});
    CHECK(S.ray2() == LatticePoint{0, 1});
    CHECK(S.det() == 1);
    CHECK(S.grading() == LatticePoint{1, 1});
    CHECK(S.normal1() == LatticePoint{0, 1});
    CHECK(S.normal2() == LatticePoint{1, 0});

    Semigroup2 T({1, 0}, {1, 2});
    CHECK(T.grading() == LatticePoint{1, 0});
    CHECK(T.det() == 2);

    CHECK_THROWS_AS(Semigroup2({2, 4}, {1, 0}), input_error);
    CHECK_THROWS_AS(Semigroup2({1, 1}, {-1, -1}), input_error);
    CHECK_THROWS_AS(Semigroup2({0, 0}, {1, 0}), input_error);
    CHECK_THROWS_AS(Semigroup2({1, 0}, {0, 1}, {1, -1}), input_error);
    CHECK(Semigroup2({1, 0}, {0, 1}, {2, 2}).grading() == LatticePoint{1, 1});
}

TEST_CASE("cone membership and barycentric coordinates") {
    Semigroup2 S = a1();
    CHECK(S.contains({1, 1}));
    CHECK(S.contains({5, 10}));
    CHECK(S.contains({0, 0}));
    CHECK_FALSE(S.contains({1, 3}));
    CHECK_FALSE(S.contains({0, -1}));
    auto [x, y] = S.bary({1, 1});
    CHECK(x == Rat(1, 2));
    CHECK(y == Rat(1, 2));
}

TEST_CASE("newton region: hull chain, membership, complement") {
    Semigroup2 S = plane();
    NewtonRegion R = newton_region(S, {{3, 0}, {1, 1}, {0, 3}});

    CHECK(R.vertices() == std::vector<LatticePoint>{{0, 3}, {1, 1}, {3, 0}});
    CHECK(R.chain().front() == LatticePoint{3, 0});
    CHECK(R.chain().back() == LatticePoint{0, 3});
    CHECK(R.contains({2, 1}));
    CHECK_FALSE(R.contains({2, 0}));
    CHECK(R.m_primary());
    CHECK(R.ray1_entry() == 3);
    CHECK(R.ray2_entry() == 3);

    CHECK(complement_count(R) == 5);
    CHECK(enumerate_complement(R) ==
          std::vector<LatticePoint>{{0, 0}, {1, 0}, {0, 1}, {2, 0}, {0, 2}});
}

TEST_CASE("newton region: collinear generators collapse to chain endpoints") {
    Semigroup2 S = a1();
    NewtonRegion R = newton_region(S, {{1, 0}, {1, 1}, {1, 2}});
    CHECK(R.vertices() == std::vector<LatticePoint>{{1, 0}, {1, 2}});
    CHECK(R.m_primary());
    CHECK(complement_count(R) == 1);

    NewtonRegion R2 = region_scale_sum(R, 2, R, 0);
    CHECK(complement_count(R2) == 4);
    NewtonRegion R3 = region_scale_sum(R, 3, R, 0);
    CHECK(complement_count(R3) == 9);
}

TEST_CASE("newton region rejects bad generators") {
    Semigroup2 S = plane();
    CHECK_THROWS_AS(newton_region(S, {}), input_error);
    CHECK_THROWS_AS(newton_region(S, {{1, -1}}), input_error);
    CHECK_THROWS_AS(newton_region(a1(), {{1, 3}}), input_error);
}

TEST_CASE("non-m-primary regions refuse colength") {
    Semigroup2 S = plane();
    NewtonRegion R = newton_region(S, {{3, 0}, {1, 3}});
    CHECK_FALSE(R.m_primary());
    CHECK_THROWS_AS(complement_count(R), input_error);
    CHECK_THROWS_AS(R.ray2_entry(), input_error);
    CHECK(ray_entry(S, R.linear_set(), true).has_value());
    CHECK_FALSE(ray_entry(S, R.linear_set(), false).has_value());
}

TEST_CASE("region scale-sum is the Minkowski combination") {
    Semigroup2 S = plane();
    NewtonRegion I = newton_region(S, {{3, 0}, {1, 1}, {0, 3}});
    NewtonRegion I2 = region_scale_sum(I, 1, I, 1);
    CHECK(I2.vertices() == std::vector<LatticePoint>{{0, 6}, {2, 2}, {6, 0}});

    NewtonRegion m = newton_region(S, {{1, 0}, {0, 1}});
    NewtonRegion m3 = region_scale_sum(m, 3, m, 0);
    CHECK(m3.vertices() == std::vector<LatticePoint>{{0, 3}, {3, 0}});
    CHECK(complement_count(m3) == 6);

    CHECK_THROWS_AS(region_scale_sum(m, 0, m, 0), input_error);
    CHECK_THROWS_AS(region_scale_sum(m, -1, m, 2), input_error);
    NewtonRegion other = newton_region(a1(), {{1, 0}, {1, 2}});
    CHECK_THROWS_AS(region_scale_sum(m, 1, other, 1), input_error);
}

TEST_CASE("union difference scan finds the first witness") {
    Semigroup2 S = plane();
    NewtonRegion m = newton_region(S, {{1, 0}, {0, 1}});
    LinearSet cone = cone_set(S);

    // m's region equals the union of the two shifted cones
    std::vector<LinearSet> lhs{m.linear_set()};
    std::vector<LinearSet> rhs{translate_set(cone, {1, 0}), translate_set(cone, {0, 1})};
    CHECK_FALSE(first_union_difference(S, lhs, rhs, 4).has_value());

    NewtonRegion m2 = region_scale_sum(m, 2, m, 0);
    auto w = first_union_difference(S, lhs, {m2.linear_set()}, 4);
    REQUIRE(w.has_value());
    CHECK(*w == LatticePoint{1, 0});
}

TEST_CASE("count_difference matches direct enumeration") {
    Semigroup2 S = plane();
    NewtonRegion I = newton_region(S, {{3, 0}, {1, 1}, {0, 3}});
    NewtonRegion I2 = region_scale_sum(I, 1, I, 1);
    // lattice points in NP(I) but not NP(I^2), graded sweep bound from entries
    RayEntries e = ray_entries_union(S, {I2.linear_set()});
    Int L = complement_level_bound(S, e, "test");
    Int n = count_difference(S, I.linear_set(), {I2.linear_set()}, L);
    auto pts = enumerate_difference(S, I.linear_set(), {I2.linear_set()}, L);
    CHECK(n == Int(pts.size()));
    for (auto p : pts) {
        CHECK(I.contains(p));
        CHECK_FALSE(I2.contains(p));
    }
}

TEST_CASE("randomized regions agree with brute-force oracles") {
    std::mt19937 rng(20260814u);
    std::vector<Semigroup2> cones{plane(), a1(), Semigroup2({2, 1}, {-1, 2})};
    std::uniform_int_distribution<int> coef(0, 5), count(1, 3), scale(0, 2);

    for (const auto& S : cones) {
        const LatticePoint u = S.ray1(), v = S.ray2();
        for (int iter = 0; iter < 24; ++iter) {
            std::vector<LatticePoint> gens;
            if (iter % 2 == 0) { // force an m-primary region half the time
                gens.push_back((1 + coef(rng) / 2) * u);
                gens.push_back((1 + coef(rng) / 2) * v);
            }
            int ng = count(rng);
            for (int k = 0; k < ng; ++k)
                gens.push_back(coef(rng) * u + coef(rng) * v);
            NewtonRegion R = newton_region(S, gens);

            for (long long a = -2; a <= 12; ++a)
                for (long long b = -2; b <= 12; ++b) {
                    LatticePoint p{a, b};
                    CHECK(R.contains(p) == oracle::region_member(S, gens, p));
                    if (R.contains(p)) {
                        CHECK(R.contains(p + u));
                        CHECK(R.contains(p + v));
                    }
                }

            bool primary1 = oracle::ray_entry_brute(S, gens, true) >= 0;
            bool primary2 = oracle::ray_entry_brute(S, gens, false) >= 0;
            CHECK(R.m_primary() == (primary1 && primary2));
            if (R.m_primary()) {
                CHECK(R.ray1_entry() == Int(oracle::ray_entry_brute(S, gens, true)));
                CHECK(R.ray2_entry() == Int(oracle::ray_entry_brute(S, gens, false)));
                auto expect = oracle::complement_brute(S, gens);
                CHECK(complement_count(R) == Int(expect.size()));
                auto got = enumerate_complement(R);
                std::sort(got.begin(), got.end(), lex_ab_less);
                CHECK(got == expect);
            }

            // Minkowski combination vs. the all-generators oracle route
            long long r = scale(rng), s = scale(rng);
            if (r + s == 0) r = 1;
            NewtonRegion RS = region_scale_sum(R, r, R, s);
            auto sumGens = oracle::scale_sum_gens(gens, r, gens, s);
            for (long long a = 0; a <= 12; ++a)
                for (long long b = 0; b <= 12; ++b) {
                    LatticePoint p{a, b};
                    CHECK(RS.contains(p) == oracle::region_member(S, sumGens, p));
                }
        }
    }
}
