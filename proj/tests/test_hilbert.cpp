#include <doctest.h>

#include "nhc/errors.hpp"
#include "nhc/hilbert.hpp"

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>

using namespace nhc;
namespace fs = std::filesystem;

namespace {

std::shared_ptr<const NormalFiltration> make_filtration(const Semigroup2& S,
                                                        std::vector<LatticePoint> gensI,
                                                        std::vector<LatticePoint> gensJ) {
    return std::make_shared<NormalFiltration>(MonomialIdeal(S, std::move(gensI)),
                                              MonomialIdeal(S, std::move(gensJ)));
}

Int c2(long long n) { return binom2(Int(n) + 1); } // C(n+1,2)

fs::path temp_file(const std::string& name, const std::string& content) {
    const fs::path dir = fs::temp_directory_path() / "nhc_hilbert_tests";
    fs::create_directories(dir);
    const fs::path p = dir / name;
    std::ofstream out(p);
    out << content;
    return p;
}

// The running ingested example: 0 at the origin, 1 + 3*C(r+s,2) elsewhere.
std::vector<std::vector<Int>> elliptic_values(long long n) {
    std::vector<std::vector<Int>> vals(n + 1);
    for (long long r = 0; r <= n; ++r)
        for (long long s = 0; s <= n; ++s) {
            const Int k(r + s);
            vals[r].push_back((r == 0 && s == 0) ? Int(0) : Int(1) + 3 * binom2(k));
        }
    return vals;
}

} // namespace

TEST_CASE("fit on the plane with both ideals the maximal ideal") {
    const Semigroup2 S({1, 0}, {0, 1});
    const std::vector<LatticePoint> m = {{1, 0}, {0, 1}};
    const auto T = HilbertTable::computed(make_filtration(S, m, m), 8, 8);
    CHECK(T.is_computed());
    CHECK(T.value(2, 3) == c2(5)); // length of R modulo the closure of m^5

    const auto P = fit_bhattacharya(T);
    CHECK(P.e20 == 1);
    CHECK(P.e11 == 1);
    CHECK(P.e02 == 1);
    CHECK(P.e10 == 0);
    CHECK(P.e01 == 0);
    CHECK(P.e00 == 0);
    CHECK(P.stabilizationN == 2);
    // the polynomial matches everywhere, so the frontier is the whole grid
    CHECK(P.frontier.size() == 81);
    CHECK(P.frontier.front() == std::pair<long long, long long>(0, 0));
    CHECK(P.frontier.back() == std::pair<long long, long long>(8, 8));

    for (Axis ax : {Axis::I, Axis::J}) {
        const auto Q = single_normal_poly(T, ax);
        CHECK(Q.e0 == 1);
        CHECK(Q.e1 == 0);
        CHECK(Q.e2 == 0);
        CHECK(Q.frontier.size() == 9);
    }

    for (long long r = 0; r <= 5; ++r) {
        CHECK(g_constant(T, P, r) == c2(r));
        CHECK(h_constant(T, P, r) == c2(r));
    }

    const auto B = make_coeff_bundle(T);
    CHECK(B.e0IJ == 4);
    CHECK(B.e1IJ == 1);
    CHECK(B.e2IJ == 0);
    CHECK(B.mixed() == 1);
    CHECK(mixed_multiplicity(P) == 1);
}

TEST_CASE("fit on the quadric cone: lengths (r+s)^2") {
    const Semigroup2 S({1, 0}, {1, 2});
    const std::vector<LatticePoint> m = {{1, 0}, {1, 1}, {1, 2}};
    const auto T = HilbertTable::computed(make_filtration(S, m, m), 8, 8);
    CHECK(T.value(1, 1) == 4);
    CHECK(T.value(2, 2) == 16);

    const auto P = fit_bhattacharya(T);
    CHECK(P.e20 == 2);
    CHECK(P.e11 == 2);
    CHECK(P.e02 == 2);
    CHECK(P.e10 == 1);
    CHECK(P.e01 == 1);
    CHECK(P.e00 == 0);
    CHECK(P.frontier.size() == 81);

    const auto Q = single_normal_poly(T, Axis::I);
    CHECK(Q.e0 == 2);
    CHECK(Q.e1 == 1);
    CHECK(Q.e2 == 0);

    for (long long r = 0; r <= 5; ++r) CHECK(g_constant(T, P, r) == Int(r) * Int(r));

    const auto B = make_coeff_bundle(T);
    CHECK(B.e0IJ == 8);
    CHECK(B.e1IJ == 4);
    CHECK(B.e2IJ == 0);
}

TEST_CASE("fit for the mixed pair I=(x^3,xy,y^3), J=(x,y)") {
    const Semigroup2 S({1, 0}, {0, 1});
    const auto T = HilbertTable::computed(
        make_filtration(S, {{3, 0}, {1, 1}, {0, 3}}, {{1, 0}, {0, 1}}), 8, 8);
    CHECK(T.value(1, 0) == 5);
    CHECK(T.value(2, 0) == 16);
    CHECK(T.value(3, 0) == 33);
    CHECK(T.value(1, 1) == 8);
    CHECK(T.value(2, 1) == 21);

    const auto P = fit_bhattacharya(T);
    CHECK(P.e20 == 6);
    CHECK(P.e11 == 2);
    CHECK(P.e02 == 1);
    CHECK(P.e10 == 1);
    CHECK(P.e01 == 0);
    CHECK(P.e00 == 0);

    const auto B = make_coeff_bundle(T);
    CHECK(B.axisI.e0 == 6);
    CHECK(B.axisI.e1 == 1);
    CHECK(B.axisI.e2 == 0);
    CHECK(B.axisJ.e0 == 1);
    CHECK(B.axisJ.e1 == 0);
    CHECK(B.axisJ.e2 == 0);
    CHECK(B.e0IJ == 11);
    CHECK(B.e1IJ == 3);
    CHECK(B.e2IJ == 0);

    CHECK(g_constant(T, P, 1) == 5);
    for (long long r = 1; r <= 6; ++r)
        CHECK(g_constant(T, P, r) == 6 * c2(r) - Int(r)); // e0(I)*C(r+1,2) - e1(I)*r
    for (long long s = 1; s <= 6; ++s) CHECK(h_constant(T, P, s) == c2(s));
}

TEST_CASE("fit for an ingested table with a transient at the origin") {
    const auto T = HilbertTable::ingested(elliptic_values(8));
    CHECK(!T.is_computed());
    CHECK(T.filtration() == nullptr);
    CHECK(T.rmax() == 8);
    CHECK(T.value(0, 0) == 0);
    CHECK(T.value(2, 2) == 19);
    CHECK_THROWS_AS((void)T.value(9, 0), input_error);
    CHECK_THROWS_AS((void)T.value(0, -1), input_error);

    const auto P = fit_bhattacharya(T);
    CHECK(P.e20 == 3);
    CHECK(P.e11 == 3);
    CHECK(P.e02 == 3);
    CHECK(P.e10 == 3);
    CHECK(P.e01 == 3);
    CHECK(P.e00 == 1);
    CHECK(P.stabilizationN == 2);
    // the polynomial misses only the origin
    CHECK(P.frontier.size() == 80);
    CHECK(P.frontier.front() == std::pair<long long, long long>(0, 1));

    const auto Q = single_normal_poly(T, Axis::I);
    CHECK(Q.e0 == 3);
    CHECK(Q.e1 == 3);
    CHECK(Q.e2 == 1);
    CHECK(Q.frontier.size() == 8); // every axis cell except 0

    for (long long r = 0; r <= 6; ++r) CHECK(g_constant(T, P, r) == 3 * binom2(Int(r)));

    const auto B = make_coeff_bundle(T);
    CHECK(B.e0IJ == 12);
    CHECK(B.e1IJ == 9);
    CHECK(B.e2IJ == 1);
}

TEST_CASE("csv and json ingestion round out to the same table") {
    std::string csv = "r,s,length\n";
    const auto vals = elliptic_values(5);
    // deliberately scrambled row order: ingestion must not rely on ordering
    for (long long s = 5; s >= 0; --s)
        for (long long r = 0; r <= 5; ++r)
            csv += std::to_string(r) + ", " + std::to_string(s) + ", " + vals[r][s].str() + "\n";
    const auto csvPath = temp_file("elliptic.csv", csv);
    const auto T = HilbertTable::ingest_file(csvPath.string());
    CHECK(T.rmax() == 5);
    CHECK(T.smax() == 5);
    CHECK(T.value(3, 2) == vals[3][2]);

    std::string json = "{\"values\": [";
    for (size_t r = 0; r < vals.size(); ++r) {
        json += (r ? ", [" : "[");
        for (size_t s = 0; s < vals[r].size(); ++s) {
            if (s) json += ", ";
            // exercise the decimal-string form for a few cells
            json += (r == s) ? ("\"" + vals[r][s].str() + "\"") : vals[r][s].str();
        }
        json += "]";
    }
    json += "]}";
    const auto jsonPath = temp_file("elliptic.json", json);
    const auto TJ = HilbertTable::ingest_file(jsonPath.string());
    CHECK(TJ.rmax() == 5);
    for (long long r = 0; r <= 5; ++r)
        for (long long s = 0; s <= 5; ++s) CHECK(TJ.value(r, s) == T.value(r, s));

    const auto P = fit_bhattacharya(T);
    CHECK(P.e20 == 3);
    CHECK(P.e00 == 1);
}

TEST_CASE("ingestion rejects malformed tables") {
    // nonzero at the origin
    auto bad = elliptic_values(4);
    bad[0][0] = 1;
    CHECK_THROWS_AS(HilbertTable::ingested(bad), input_error);

    // lengths must be nondecreasing in each direction
    auto drop = elliptic_values(4);
    drop[2][2] = 0;
    CHECK_THROWS_AS(HilbertTable::ingested(drop), input_error);

    // negative length
    auto neg = elliptic_values(4);
    neg[4][4] = -3;
    CHECK_THROWS_AS(HilbertTable::ingested(neg), input_error);

    // ragged rows
    auto ragged = elliptic_values(4);
    ragged[3].pop_back();
    CHECK_THROWS_AS(HilbertTable::ingested(ragged), input_error);

    CHECK_THROWS_AS(HilbertTable::ingested({}), input_error);

    const auto missing = temp_file("missing.csv", "r,s,length\n0,0,0\n1,0,2\n1,1,3\n");
    CHECK_THROWS_AS(HilbertTable::ingest_file(missing.string()), input_error);

    const auto dup = temp_file("dup.csv", "r,s,length\n0,0,0\n0,0,0\n");
    CHECK_THROWS_AS(HilbertTable::ingest_file(dup.string()), input_error);

    const auto header = temp_file("header.csv", "a,b,c\n0,0,0\n");
    CHECK_THROWS_AS(HilbertTable::ingest_file(header.string()), input_error);

    const auto negidx = temp_file("negidx.csv", "r,s,length\n-1,0,0\n");
    CHECK_THROWS_AS(HilbertTable::ingest_file(negidx.string()), input_error);

    const auto garble = temp_file("garble.csv", "r,s,length\n0,0,zero\n");
    CHECK_THROWS_AS(HilbertTable::ingest_file(garble.string()), input_error);

    const auto raggedJson = temp_file("ragged.json", "{\"values\": [[0, 1], [1]]}");
    CHECK_THROWS_AS(HilbertTable::ingest_file(raggedJson.string()), input_error);

    const auto noValues = temp_file("novalues.json", "{\"rows\": 2}");
    CHECK_THROWS_AS(HilbertTable::ingest_file(noValues.string()), input_error);

    CHECK_THROWS_AS(HilbertTable::ingest_file("/nonexistent/to/table.csv"), input_error);
}

TEST_CASE("fits report failure to stabilize on non-polynomial data") {
    // monotone table with a persistent parity wiggle: never polynomial
    std::vector<std::vector<Int>> vals(8);
    for (long long r = 0; r <= 7; ++r)
        for (long long s = 0; s <= 7; ++s) {
            const Int k(r + s);
            Int v = binom2(k + 1);
            if (r + s >= 1 && (r + s) % 2 == 0) v += 1;
            vals[r].push_back(v);
        }
    const auto T = HilbertTable::ingested(vals);
    CHECK_THROWS_WITH_AS(fit_bhattacharya(T),
                         doctest::Contains("no stabilization within grid"), stabilization_error);
    CHECK_THROWS_WITH_AS(single_normal_poly(T, Axis::I),
                         doctest::Contains("no stabilization within grid"), stabilization_error);
    const auto P0 = BhattacharyaPoly{Int(1), Int(1), Int(1), Int(0), Int(0), Int(0), 0, {}};
    CHECK_THROWS_AS(g_constant(T, P0, 3), stabilization_error);
}

TEST_CASE("fit controls: start index, window size, grid bounds") {
    const Semigroup2 S({1, 0}, {0, 1});
    const std::vector<LatticePoint> m = {{1, 0}, {0, 1}};
    const auto T = HilbertTable::computed(make_filtration(S, m, m), 8, 8);
    const auto P = fit_bhattacharya(T, 3, 2);
    CHECK(P.stabilizationN == 3);
    CHECK(P.e20 == 1);
    CHECK_THROWS_AS(fit_bhattacharya(T, -1, 3), input_error);
    CHECK_THROWS_AS(fit_bhattacharya(T, 2, 0), input_error);

    const auto small = HilbertTable::computed(make_filtration(S, m, m), 2, 2);
    CHECK_THROWS_AS(fit_bhattacharya(small), stabilization_error);
}

TEST_CASE("mixed multiplicity cross-check against a pair ideal") {
    const Semigroup2 S({1, 0}, {0, 1});
    const std::vector<LatticePoint> m = {{1, 0}, {0, 1}};
    const auto T = HilbertTable::computed(make_filtration(S, m, m), 6, 6);
    const auto P = fit_bhattacharya(T);
    const MonomialIdeal pair(S, {{1, 0}, {0, 1}});
    CHECK(mixed_multiplicity_checked(P, pair) == 1);
    const MonomialIdeal wrong(S, {{2, 0}, {0, 1}});
    CHECK_THROWS_AS(mixed_multiplicity_checked(P, wrong), invariant_error);
}

TEST_CASE("randomized fits satisfy the structural identities") {
    std::mt19937 rng(7391u);
    const std::vector<std::pair<LatticePoint, LatticePoint>> cones = {
        {{1, 0}, {0, 1}}, {{1, 0}, {1, 2}}, {{1, -1}, {1, 3}}};
    auto randIdeal = [&](const Semigroup2& S) {
        std::uniform_int_distribution<int> mul(1, 2), extra(0, 2), coef(0, 2);
        const int k1 = mul(rng), k2 = mul(rng);
        std::vector<LatticePoint> gens = {LatticePoint{k1 * S.ray1().a, k1 * S.ray1().b},
                                          LatticePoint{k2 * S.ray2().a, k2 * S.ray2().b}};
        const int extras = extra(rng);
        for (int i = 0; i < extras; ++i) {
            const int a = coef(rng), b = coef(rng);
            if (a + b == 0) continue;
            gens.push_back(LatticePoint{a * S.ray1().a + b * S.ray2().a,
                                        a * S.ray1().b + b * S.ray2().b});
        }
        return MonomialIdeal(S, gens);
    };

    for (const auto& [u, v] : cones) {
        const Semigroup2 S(u, v);
        for (int iter = 0; iter < 8; ++iter) {
            const MonomialIdeal I = randIdeal(S), J = randIdeal(S);
            const auto F = std::make_shared<NormalFiltration>(I, J);
            const auto T = HilbertTable::computed(F, 7, 7);
            CoeffBundle B;
            try {
                B = make_coeff_bundle(T);
            } catch (const stabilization_error&) {
                continue; // grid too small for this draw; nothing to assert
            }
            // multiplicities agree between the bivariate and axis fits
            CHECK(B.poly.e20 == B.axisI.e0);
            CHECK(B.poly.e02 == B.axisJ.e0);
            CHECK(B.poly.e11 >= 1);

            // frontier lists exactly the cells where table and polynomial agree
            size_t idx = 0;
            for (long long r = 0; r <= 7; ++r)
                for (long long s = 0; s <= 7; ++s) {
                    const bool agree = T.value(r, s) == B.poly.eval(Int(r), Int(s));
                    const bool listed = idx < B.poly.frontier.size() &&
                                        B.poly.frontier[idx] == std::make_pair(r, s);
                    CHECK(agree == listed);
                    if (listed) ++idx;
                }
            CHECK(idx == B.poly.frontier.size());

            // the diagonal r = s = n is the filtration of the product ideal
            const auto D = fit_univariate([&](long long n) { return T.value(n, n); }, 7);
            CHECK(D.e0 == B.e0IJ);
            CHECK(D.e1 == B.e1IJ);
            CHECK(D.e2 == B.e2IJ);

            // g and h constants reproduce the corner corrections
            for (long long r = 2; r <= 4; ++r) {
                try {
                    const Int gr = g_constant(T, B.poly, r);
                    CHECK(gr == B.axisI.e0 * c2(r) - B.axisI.e1 * Int(r) + B.e2IJ - B.axisJ.e2);
                } catch (const stabilization_error&) {
                    // acceptable on a small grid
                }
            }
        }
    }
}

TEST_CASE("equal ideals give the classical single-ideal corrections") {
    std::mt19937 rng(5150u);
    const Semigroup2 S({1, 0}, {1, 2});
    std::uniform_int_distribution<int> pick(1, 2);
    for (int iter = 0; iter < 6; ++iter) {
        std::vector<LatticePoint> gens = {{pick(rng), 0}};
        gens.push_back({gens[0].a, 2 * gens[0].a}); // same multiple on the second ray
        gens.push_back({pick(rng), 1});
        const MonomialIdeal I(S, gens);
        const auto T = HilbertTable::computed(std::make_shared<NormalFiltration>(I, I), 7, 7);
        CoeffBundle B;
        try {
            B = make_coeff_bundle(T);
        } catch (const stabilization_error&) {
            continue;
        }
        for (long long k = 0; k <= 4; ++k) {
            try {
                CHECK(g_constant(T, B.poly, k) == B.axisI.e0 * c2(k) - B.axisI.e1 * Int(k));
            } catch (const stabilization_error&) {
            }
        }
    }
}
