#include <doctest.h>

#include <cmath>

#include "orbicluster/polygon.hpp"
#include "orbicluster/rng.hpp"

using namespace orbicluster;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("lambda length in the chord model") {
    DecoratedPoint p{0.0, 1.0}, q{kPi, 1.0};
    CHECK(lambda_length(p, q) == doctest::Approx(2.0)); // diameter

    DecoratedPoint r{2 * kPi / 3, 1.0};
    CHECK(lambda_length(p, r) == doctest::Approx(2 * std::sin(kPi / 3)).epsilon(1e-12));
    CHECK(lambda_length(p, r) == doctest::Approx(1.732050808).epsilon(1e-9));

    // homogeneity: scaling both h by 4 divides lambda by 4
    DecoratedPoint p4{0.0, 4.0}, r4{2 * kPi / 3, 4.0};
    CHECK(lambda_length(p4, r4) == doctest::Approx(lambda_length(p, r) / 4).epsilon(1e-12));

    CHECK_THROWS_AS(lambda_length(p, p), std::invalid_argument);
    CHECK_THROWS_AS(lambda_length(DecoratedPoint{0, -1}, q), std::invalid_argument);
}

TEST_CASE("ptolemy flip") {
    CHECK(ptolemy_flip(1, 1, 1, 1, 1) == doctest::Approx(2.0));
    CHECK_THROWS_AS(ptolemy_flip(1, 1, 1, 1, 0.0), std::invalid_argument);

    // chord-model quadrilateral at right angles, unit horocycles
    DecoratedPoint v0{0, 1}, v1{kPi / 2, 1}, v2{kPi, 1}, v3{3 * kPi / 2, 1};
    double side = lambda_length(v0, v1);
    double diag = lambda_length(v0, v2);
    CHECK(side == doctest::Approx(std::sqrt(2.0)));
    CHECK(diag == doctest::Approx(2.0));
    CHECK(ptolemy_flip(side, side, side, side, diag) == doctest::Approx(2.0).epsilon(1e-12));

    // ptolemy involution, numerically
    SplitMix64 rng(5);
    for (int t = 0; t < 20; ++t) {
        double a1 = rng.next_double(0.2, 3), a2 = rng.next_double(0.2, 3);
        double a3 = rng.next_double(0.2, 3), a4 = rng.next_double(0.2, 3);
        double d = rng.next_double(0.2, 3);
        double d2 = ptolemy_flip(a1, a2, a3, a4, d);
        CHECK(ptolemy_flip(a2, a3, a4, a1, d2) == doctest::Approx(d).epsilon(1e-12));
    }
}

TEST_CASE("symbolic ptolemy flip") {
    std::vector<std::string> names = {"a1", "a2", "a3", "a4", "d"};
    auto field = CyclotomicField::make(1);
    auto v = [&](int i) { return LaurentPoly::variable(5, field, i); };
    LaurentPoly d2 = ptolemy_flip(v(0), v(1), v(2), v(3), v(4));
    CHECK(d2 == LaurentPoly::parse("1 * a1 a3 d^-1 + 1 * a2 a4 d^-1", names, field));
    // symbolic involution
    CHECK(ptolemy_flip(v(1), v(2), v(3), v(0), d2) == v(4));
}

TEST_CASE("p-gon diagonal ladder") {
    auto d3 = pgon_diagonals(3, 1.5);
    CHECK(d3[1] == doctest::Approx(d3[0]).epsilon(1e-12)); // c_2 = c for p = 3

    auto d4 = pgon_diagonals(4, 1.0);
    CHECK(d4[1] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));

    // symmetry c_k = c_{p-k}
    for (long p : {5L, 6L, 7L, 8L}) {
        auto d = pgon_diagonals(p, 2.0);
        for (long k = 1; k <= p - 1; ++k)
            CHECK(d[k - 1] == doctest::Approx(d[p - k - 1]).epsilon(1e-12));
    }

    // chord-model oracle: measured ratios match the sine ladder
    for (long p : {5L, 7L}) {
        auto d = pgon_diagonals(p, 1.0);
        DecoratedPoint v0{0, 1};
        for (long k = 1; k <= p - 1; ++k) {
            DecoratedPoint vk{2 * kPi * static_cast<double>(k) / static_cast<double>(p), 1};
            double measured = lambda_length(v0, vk);
            double base = lambda_length(v0, DecoratedPoint{2 * kPi / static_cast<double>(p), 1});
            CHECK(measured / base == doctest::Approx(d[k - 1] / d[0]).epsilon(1e-12));
        }
    }
}

TEST_CASE("cc-prime relation") {
    // p = 2: omega vanishes, cc' = a^2 + b^2
    auto r2 = verify_cc_prime(2, kPi / 2, 1, 1);
    CHECK(r2.ok);
    CHECK(r2.c * r2.c_prime ==
          doctest::Approx(r2.a * r2.a + r2.b * r2.b).epsilon(1e-12));

    // p = 3 at the symmetric angle: a = b and cc' = 3a^2
    auto r3 = verify_cc_prime(3, kPi / 3, 1, 1);
    CHECK(r3.ok);
    CHECK(r3.a == doctest::Approx(r3.b).epsilon(1e-12));
    CHECK(r3.c * r3.c_prime == doctest::Approx(3 * r3.a * r3.a).epsilon(1e-9));

    auto r5 = verify_cc_prime(5, 0.7, 1, 2);
    CHECK(r5.residual < 1e-9);

    CHECK_THROWS_AS(verify_cc_prime(5, 2.0, 1, 1), std::invalid_argument); // phi out of range

    // 100-point random sweep for each order
    SplitMix64 rng(11);
    for (long p = 2; p <= 8; ++p) {
        for (int t = 0; t < 100; ++t) {
            double phi = rng.next_double(1e-3, 2 * kPi / static_cast<double>(p) - 1e-3);
            auto rep = verify_cc_prime(p, phi, rng.next_double(0.1, 4), rng.next_double(0.1, 4));
            CHECK(rep.residual < 1e-9);
        }
    }
}

TEST_CASE("shear from lambda lengths") {
    CHECK(shear_from_lambda(1, 1, 1, 1) == doctest::Approx(0.0));
    CHECK(shear_from_lambda(2, 1, 2, 1) == doctest::Approx(std::log(4.0)));
    CHECK_THROWS_AS(shear_from_lambda(0, 1, 1, 1), std::invalid_argument);

    // the quadrangle {-1, 0, e^Z, inf} reproduces Z via the cross-ratio
    for (double Z : {-1.0, 0.0, 0.7, 2.3}) {
        double a = -1, b = 0, c = std::exp(Z);
        // d -> infinity limit of -(b-c)(d-a)/((b-a)(d-c)) is -(b-c)/(b-a)
        double limit = -(b - c) / (b - a);
        CHECK(std::log(limit) == doctest::Approx(Z).epsilon(1e-12));
        double finite = cross_ratio_shear(a, b, c, 1e9);
        CHECK(std::log(finite) == doctest::Approx(Z).epsilon(1e-6));
    }
}
