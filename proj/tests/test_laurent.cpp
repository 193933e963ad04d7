#include <doctest.h>

#include <cmath>

#include "orbicluster/laurent.hpp"
#include "orbicluster/rng.hpp"

using namespace orbicluster;

namespace {

const std::vector<std::string> kXY = {"x", "y"};

LaurentPoly parse_xy(const std::string& text, const FieldPtr& field) {
    return LaurentPoly::parse(text, kXY, field);
}

LaurentPoly random_poly(SplitMix64& rng, const FieldPtr& field, int arity, int terms) {
    LaurentPoly p(arity, field);
    for (int t = 0; t < terms; ++t) {
        ExpVec e(arity);
        for (auto& x : e) x = static_cast<int>(rng.next_int(-3, 3));
        p.add_term(e, field->from_int(rng.next_int(-5, 5)));
    }
    return p;
}

} // namespace

TEST_CASE("basic arithmetic") {
    auto field = CyclotomicField::make(1);
    auto x = LaurentPoly::variable(2, field, 0);
    auto y = LaurentPoly::variable(2, field, 1);
    CHECK((x + y) * (x - y) == x * x - y * y);
    auto xinv = LaurentPoly::variable(2, field, 0, -1);
    CHECK(xinv * x == LaurentPoly::constant(2, field->one()));
    CHECK_THROWS_AS(poly_arith(x, LaurentPoly::variable(3, field, 0), PolyOp::Add),
                    std::invalid_argument);
}

TEST_CASE("coefficient cancellation over Q(omega_5)") {
    auto field = CyclotomicField::for_orders({5});
    auto one = LaurentPoly::constant(2, field->one());
    auto y = LaurentPoly::variable(2, field, 1);
    auto w = LaurentPoly::constant(2, field->omega(5));
    LaurentPoly f = one + w * y + y * y;
    LaurentPoly g = -(w * y);
    CHECK(f + g == one + y * y);
}

TEST_CASE("exact division examples") {
    auto field = CyclotomicField::for_orders({5});
    auto x = LaurentPoly::variable(2, field, 0);
    auto y = LaurentPoly::variable(2, field, 1);
    auto one = LaurentPoly::constant(2, field->one());

    CHECK(exact_divide(x * x - y * y, x - y) == x + y);

    // monomial divisor shifts exponents
    auto w = LaurentPoly::constant(2, field->omega(5));
    LaurentPoly f = one + w * y + y * y;
    LaurentPoly q = exact_divide(f, y);
    CHECK(q == LaurentPoly::variable(2, field, 1, -1) + w + y);

    CHECK_THROWS_AS(exact_divide(x + y, x - y), InexactDivision);
    CHECK_THROWS_AS(exact_divide(x, LaurentPoly::zero(2, field)), std::domain_error);
}

TEST_CASE("multiply-divide round trip oracle") {
    auto field = CyclotomicField::for_orders({4, 5});
    SplitMix64 rng(7);
    int done = 0;
    while (done < 20) {
        LaurentPoly q = random_poly(rng, field, 3, 4);
        LaurentPoly g = random_poly(rng, field, 3, 3);
        if (g.is_zero() || q.is_zero()) continue;
        CHECK(exact_divide(q * g, g) == q);
        ++done;
    }
}

TEST_CASE("evaluation homomorphism") {
    auto field = CyclotomicField::for_orders({5});
    SplitMix64 rng(17);
    for (int trial = 0; trial < 10; ++trial) {
        LaurentPoly f = random_poly(rng, field, 2, 4);
        LaurentPoly g = random_poly(rng, field, 2, 4);
        std::vector<double> pt = {rng.next_double(0.2, 2.0), rng.next_double(0.2, 2.0)};
        double lhs = (f * g).eval(pt);
        double rhs = f.eval(pt) * g.eval(pt);
        if (std::abs(rhs) > 1e-9)
            CHECK(std::abs(lhs - rhs) / std::abs(rhs) < 1e-9);
    }
}

TEST_CASE("serialization is a fixed point") {
    auto field = CyclotomicField::for_orders({5});
    SplitMix64 rng(23);
    for (int trial = 0; trial < 10; ++trial) {
        LaurentPoly f = random_poly(rng, field, 2, 5);
        std::string s1 = f.to_string(kXY);
        LaurentPoly g = LaurentPoly::parse(s1, kXY, field);
        CHECK(g == f);
        CHECK(g.to_string(kXY) == s1);
    }
    CHECK(LaurentPoly::zero(2, field).to_string(kXY) == "0");
    CHECK(parse_xy("0", field).is_zero());
}

TEST_CASE("substitution") {
    auto field = CyclotomicField::make(1);
    auto none = LaurentPoly(); // unset slots keep the variable

    // x^-1 with x -> y^2
    auto f = LaurentPoly::variable(2, field, 0, -1);
    std::vector<LaurentPoly> sub = {LaurentPoly::variable(2, field, 1, 2), none};
    CHECK(substitute(f, sub) == LaurentPoly::variable(2, field, 1, -2));

    // x + y with x -> 1 + y
    auto x = LaurentPoly::variable(2, field, 0);
    auto y = LaurentPoly::variable(2, field, 1);
    auto one = LaurentPoly::constant(2, field->one());
    sub = {one + y, none};
    CHECK(substitute(x + y, sub) == one + y + y);

    // composition law on a sampled instance
    auto g = x * x + y;
    std::vector<LaurentPoly> s1 = {x + y, none};
    std::vector<LaurentPoly> s2 = {none, y * y};
    auto lhs = substitute(substitute(g, s1), s2);
    std::vector<LaurentPoly> s12 = {substitute(x + y, s2), y * y};
    CHECK(lhs == substitute(g, s12));

    // non-invertible value at a negative exponent
    CHECK_THROWS_AS(substitute(LaurentPoly::variable(2, field, 0, -1),
                               std::vector<LaurentPoly>{one + y, none}),
                    std::domain_error);
}

TEST_CASE("substituting x1 into y1 reproduces the B2 intermediate") {
    // variables: t (placeholder), x, y over generators a,b,c,p,q
    std::vector<std::string> names = {"t", "x", "y", "a", "b", "c", "p", "q"};
    auto field = CyclotomicField::make(1);
    auto P = [&](const std::string& s) { return LaurentPoly::parse(s, names, field); };
    LaurentPoly f = exact_divide(P("1 * p + 1 * q t"), P("1 * y"));
    std::vector<LaurentPoly> sub(8);
    sub[0] = exact_divide(P("1 * a + 1 * b y + 1 * c y^2"), P("1 * x"));
    LaurentPoly got = substitute(f, sub);
    LaurentPoly want =
        exact_divide(P("1 * p x + 1 * q a + 1 * b q y + 1 * c q y^2"), P("1 * x y"));
    CHECK(got == want);
}

TEST_CASE("positivity reports") {
    auto field = CyclotomicField::for_orders({5});
    auto one = LaurentPoly::constant(2, field->one());
    auto y = LaurentPoly::variable(2, field, 1);
    auto w = LaurentPoly::constant(2, field->omega(5));

    auto rep = positivity_report(one + w * y + y * y, {5});
    CHECK(rep.all_embed_positive);
    CHECK(rep.all_nonneg_integer_cone);

    rep = positivity_report(one - y, {5});
    CHECK_FALSE(rep.all_embed_positive);

    // (omega_5 - 1) y: embedding-positive but outside the nonneg cone
    rep = positivity_report((w - one) * y, {5});
    CHECK(rep.all_embed_positive);
    CHECK_FALSE(rep.all_nonneg_integer_cone);
}
