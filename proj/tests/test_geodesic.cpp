#include <doctest.h>

#include <cmath>

#include "orbicluster/geodesic.hpp"
#include "orbicluster/io_json.hpp"

using namespace orbicluster;

namespace {
constexpr double kPi = 3.14159265358979323846;

double max_abs_diff(const Mat2d& a, const Mat2d& b) {
    double r = 0;
    for (int i = 0; i < 4; ++i) r = std::max(r, std::abs(a.m[i] - b.m[i]));
    return r;
}

Mat2d neg(Mat2d m) {
    for (auto& x : m.m) x = -x;
    return m;
}
} // namespace

TEST_CASE("generator matrix relations") {
    Mat2d R = turn_matrix(false), L = turn_matrix(true);
    CHECK(max_abs_diff(R * R, L) == 0.0); // L = R^2

    Mat2d X = edge_matrix(0.37);
    Mat2d minus_e = neg(Mat2d{});
    CHECK(max_abs_diff(X * X, minus_e) < 1e-15); // X_S^2 = -E

    CHECK(max_abs_diff(L * L, neg(R)) < 1e-15); // L^2 = -R
    CHECK(edge_matrix(1.0).det() == doctest::Approx(1.0));
    CHECK(R.det() == doctest::Approx(1.0));
}

TEST_CASE("F_p^p = (-1)^{p-1} E exactly in the cyclotomic field") {
    for (long p = 2; p <= 8; ++p) {
        auto rep = verify_pgon_identities(p, kPi / (2 * static_cast<double>(p)));
        CHECK(rep.exact_fp_power_ok);
    }
}

TEST_CASE("full winding merely avoids the orbifold point") {
    // X_X L X_Z (-1)^{p-1} F_p^p X_Z L X_Y = X_X R X_Y
    for (long p : {2L, 3L, 5L}) {
        double w = 2 * std::cos(kPi / static_cast<double>(p));
        Mat2d F{{0, 1, -1, -w}};
        Mat2d Fp{};
        for (long i = 0; i < p; ++i) Fp = Fp * F;
        double sgn = (p % 2 == 0) ? -1.0 : 1.0;
        for (auto& x : Fp.m) x *= sgn;
        Mat2d X = edge_matrix(0.8), Y = edge_matrix(-0.4), Z = edge_matrix(1.1);
        Mat2d L = turn_matrix(true), R = turn_matrix(false);
        CHECK(max_abs_diff(X * L * Z * Fp * Z * L * Y, X * R * Y) < 1e-12);
    }
}

TEST_CASE("word realization rules") {
    auto tree = treegraph_spine(3, 3);

    // a two-crossing cycle through the handle closes for some turn pair
    int realizable = 0;
    for (bool t1 : {false, true})
        for (bool t2 : {false, true}) {
            PathWord w;
            w.tokens = {cross_token(0), turn_token(t1), cross_token(1), turn_token(t2)};
            if (realize_word(w, tree)) ++realizable;
        }
    CHECK(realizable > 0);

    // rotation at a non-pending edge is unrealizable
    PathWord bad;
    bad.tokens = {cross_token(0), rotate_token(0, 1)};
    CHECK_FALSE(realize_word(bad, tree).has_value());

    // winding out of range
    PathWord wind;
    wind.closed = false;
    wind.tokens = {cross_token(3), rotate_token(3, 3), cross_token(3)}; // order 3: k = 1, 2 only
    CHECK_FALSE(realize_word(wind, tree).has_value());
    wind.tokens = {cross_token(3), rotate_token(3, 2), cross_token(3)};
    CHECK(realize_word(wind, tree).has_value());
}

TEST_CASE("corner pattern builds the printed product") {
    auto tree = treegraph_spine(3, 3);
    // engage the Z1 pending edge (edge 3) between its neighbours at u1:
    // Y1-role = Y3 (edge 4), Y2-role = Y2 (edge 2)
    PathWord w;
    w.closed = false;
    w.tokens = {cross_token(4), turn_token(true),  cross_token(3), rotate_token(3, 1),
                cross_token(3), turn_token(true),  cross_token(2)};
    auto arr = realize_word(w, tree);
    REQUIRE(arr.has_value());

    Mat2d expect = edge_matrix(tree.shear[2]) * turn_matrix(true) * edge_matrix(tree.shear[3]) *
                   rotation_matrix(3, 1) * edge_matrix(tree.shear[3]) * turn_matrix(true) *
                   edge_matrix(tree.shear[4]);
    CHECK(max_abs_diff(evaluate_word(w, tree), expect) < 1e-14);
}

TEST_CASE("boundary words are parabolic when the face sum vanishes") {
    auto torus = torus_with_hole(0.3, -0.1, -0.2); // face multiplicities (2,2,2): sum = 0
    auto faces = boundary_walks(torus);
    PathWord b = boundary_word(torus, faces[0]);
    auto g = geodesic_function(b, torus);
    CHECK(g.G == doctest::Approx(2.0).epsilon(1e-12));

    // nonzero face sum gives a hyperbolic boundary
    auto torus2 = torus_with_hole(0.3, 0.1, 0.2);
    auto g2 = geodesic_function(boundary_word(torus2, boundary_walks(torus2)[0]), torus2);
    CHECK(g2.G > 2.0);
    CHECK(g2.length.has_value());
}

TEST_CASE("numeric and symbolic evaluation agree") {
    auto torus = torus_with_hole(0.0, 0.0, 0.0);
    SplitMix64 rng(2024);
    auto field = CyclotomicField::make(1);
    for (int t = 0; t < 10; ++t) {
        auto w = random_closed_word(torus, rng, false);
        REQUIRE(w.has_value());
        // at Z = 0 all lambda variables are 1
        double numeric = geodesic_function(*w, torus).G;
        LaurentPoly tr = geodesic_function_symbolic(*w, torus, field);
        CHECK(numeric == doctest::Approx(tr.eval({1, 1, 1})).epsilon(1e-9));

        // and on random shears
        Spine s = torus;
        for (auto& z : s.shear) z = rng.next_double(-1.2, 1.2);
        std::vector<double> lam(3);
        for (int e = 0; e < 3; ++e) lam[e] = std::exp(s.shear[e] / 2);
        CHECK(std::abs(geodesic_function(*w, s).G - tr.eval(lam)) /
                  std::max(1.0, std::abs(tr.eval(lam))) <
              1e-9);
    }
}

TEST_CASE("symbolic determinant is exactly one") {
    auto tree = treegraph_spine(3, 3);
    SplitMix64 rng(77);
    auto field = spine_field(tree);
    for (int t = 0; t < 5; ++t) {
        auto w = random_closed_word(tree, rng, true);
        REQUIRE(w.has_value());
        Mat2s m = evaluate_word_symbolic(*w, tree, field);
        LaurentPoly det = m.det();
        CHECK(det == LaurentPoly::constant(tree.edge_count(), field->one()));
    }
}

TEST_CASE("pgon shear data") {
    auto d3 = pgon_shear_data(3, kPi / 3);
    CHECK(d3.Z == doctest::Approx(0.0)); // symmetric point

    auto d4 = pgon_shear_data(4, 0.5);
    CHECK(d4.Yk.size() == 1);
    CHECK(d4.Yk[0] == doctest::Approx(0.0)); // sin(3pi/4)/sin(pi/4) = 1

    auto d5 = pgon_shear_data(5, 0.5);
    CHECK(d5.Zk.size() == 5);
    CHECK(d5.Yk.size() == 2);
    for (double z : d5.Zk) CHECK(std::isfinite(z));
    for (double y : d5.Yk) CHECK(std::isfinite(y));

    CHECK_THROWS_AS(pgon_shear_data(5, 1.9), std::invalid_argument);
}

TEST_CASE("p-gon matrix identities") {
    auto r3 = verify_pgon_identities(3, 0.9);
    CHECK(r3.max_residual < 1e-12);

    SplitMix64 rng(31);
    for (int t = 0; t < 100; ++t) {
        double phi = rng.next_double(1e-3, 2 * kPi / 5 - 1e-3);
        CHECK(verify_pgon_identities(5, phi).max_residual < 1e-9);
    }

    auto r2 = verify_pgon_identities(2, 1.0);
    CHECK(r2.max_residual < 1e-12); // degenerate chain: X_Z F_2 X_Z = X_{2Z}
    CHECK(r2.checked.size() == 1);
}

TEST_CASE("word JSON round trip") {
    auto tree = treegraph_spine(3, 3);
    SplitMix64 rng(8);
    auto w = random_closed_word(tree, rng, true);
    REQUIRE(w.has_value());
    Json j = word_to_json(*w);
    PathWord back = word_from_json(j);
    CHECK(word_to_json(back).dump() == j.dump());
    CHECK(geodesic_function(back, tree).G == geodesic_function(*w, tree).G);
}
