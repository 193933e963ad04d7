#include <doctest.h>

#include <cmath>

#include "orbicluster/moves.hpp"
#include "orbicluster/sweeps.hpp"

using namespace orbicluster;

namespace {

double max_shear_diff(const Spine& a, const Spine& b) {
    double r = 0;
    for (int e = 0; e < a.edge_count(); ++e) r = std::max(r, std::abs(a.shear[e] - b.shear[e]));
    return r;
}

double max_abs_diff(const Mat2d& a, const Mat2d& b) {
    double r = 0;
    for (int i = 0; i < 4; ++i) r = std::max(r, std::abs(a.m[i] - b.m[i]));
    return r;
}

} // namespace

TEST_CASE("inner flip at zero shears") {
    // treegraph Y3 flip has four distinct neighbour edges: Y2, Z1, Z2, Y4
    auto tree = treegraph_spine(3, 3);
    for (auto& z : tree.shear) z = 0.0;
    auto [flipped, rec] = flip_inner(tree, 4);
    (void)rec;
    double l2 = std::log(2.0);
    CHECK(flipped.shear[4] == doctest::Approx(0.0));
    // the diagonal slot pair gains phi(0) = log 2, the other pair loses it
    CHECK(flipped.shear[3] == doctest::Approx(l2));  // Z1 at u1
    CHECK(flipped.shear[6] == doctest::Approx(l2));  // Y4 at u2
    CHECK(flipped.shear[2] == doctest::Approx(-l2)); // Y2 at u1
    CHECK(flipped.shear[5] == doctest::Approx(-l2)); // Z2 at u2
    CHECK(validate(flipped).ok);
}

TEST_CASE("inner flip is an involution on shears") {
    SplitMix64 rng(42);
    for (int trial = 0; trial < 10; ++trial) {
        Spine s = random_spine(rng);
        for (int e = 0; e < s.edge_count(); ++e) {
            if (s.is_pending_edge(e) || s.vertex_of(2 * e) == s.vertex_of(2 * e + 1)) continue;
            auto [s1, r1] = flip_inner(s, e);
            auto [s2, r2] = flip_inner(s1, e);
            (void)r1;
            (void)r2;
            CHECK(max_shear_diff(s2, s) < 1e-12);
            CHECK(validate(s1).ok);
        }
    }
}

TEST_CASE("flip preserves the boundary center element") {
    auto torus = torus_with_hole(0.37, -0.61, 0.19);
    auto mult0 = face_multiplicities(torus);
    double before = 0;
    for (int e = 0; e < 3; ++e) before += mult0[0][e] * torus.shear[e];
    for (int e = 0; e < 3; ++e) {
        auto [s1, rec] = flip_inner(torus, e);
        (void)rec;
        auto mult1 = face_multiplicities(s1);
        double after = 0;
        for (int k = 0; k < 3; ++k) after += mult1[0][k] * s1.shear[k];
        CHECK(after == doctest::Approx(before).epsilon(1e-12));
    }
}

TEST_CASE("pending flip shifts") {
    auto tree = treegraph_spine(3, 3);
    for (auto& z : tree.shear) z = 0.0;
    auto [s1, rec] = flip_pending(tree, 3); // order 3, w = 1: shifts -+log 3
    (void)rec;
    double l3 = std::log(3.0);
    CHECK(s1.shear[3] == doctest::Approx(0.0));
    CHECK(std::abs(s1.shear[4]) == doctest::Approx(l3)); // Y3 neighbour
    CHECK(std::abs(s1.shear[2]) == doctest::Approx(l3)); // Y2 neighbour
    CHECK(s1.shear[4] * s1.shear[2] < 0);                // one up, one down
    CHECK(validate(s1).ok);

    auto two = treegraph_spine(2, 2);
    for (auto& z : two.shear) z = 0.0;
    auto [s2, rec2] = flip_pending(two, 3); // order 2, w = 0: shifts -+log 2
    (void)rec2;
    CHECK(std::abs(s2.shear[4]) == doctest::Approx(std::log(2.0)));

    // double application restores exactly
    SplitMix64 rng(9);
    for (int trial = 0; trial < 10; ++trial) {
        Spine s = treegraph_spine(2 + static_cast<long>(rng.next_below(5)),
                                  2 + static_cast<long>(rng.next_below(5)));
        for (auto& z : s.shear) z = rng.next_double(-1.5, 1.5);
        for (int e : {3, 5}) {
            auto a = flip_pending(s, e).first;
            auto b = flip_pending(a, e).first;
            CHECK(max_shear_diff(b, s) < 1e-12);
        }
    }

    CHECK_THROWS_AS(flip_pending(tree, 0), std::invalid_argument);
    CHECK_THROWS_AS(flip_inner(tree, 3), std::invalid_argument);
}

TEST_CASE("hole construction agrees with the pending flip") {
    SplitMix64 rng(123);
    for (long p : {2L, 3L, 6L}) {
        Spine s = treegraph_spine(p, p);
        for (auto& z : s.shear) z = rng.next_double(-1.0, 1.0);
        for (int e : {3, 5}) {
            auto rep = pending_flip_via_hole(s, e);
            CHECK(rep.max_imag < 1e-9);
            CHECK(rep.max_disagreement < 1e-12);
        }
    }
    // p = 6, Z = 1: the Y2-side shift is log(1 + sqrt(3) e + e^2)
    Spine s = treegraph_spine(6, 6);
    for (auto& z : s.shear) z = 0.0;
    s.shear[3] = 1.0;
    auto rep = pending_flip_via_hole(s, 3);
    double want = std::log(1.0 + std::sqrt(3.0) * std::exp(1.0) + std::exp(2.0));
    bool found = false;
    for (int e = 0; e < s.edge_count(); ++e)
        if (std::abs(rep.result.shear[e] - want) < 1e-12) found = true;
    CHECK(found);
}

TEST_CASE("spiral inversion") {
    auto s = loop_with_stem(3);
    auto sites = spiral_sites(s);
    REQUIRE(sites.size() == 1);
    CHECK(sites[0].loop_edge == 0);
    CHECK(sites[0].stem_edge == 1);

    // P = 0 is the identity on shears
    Spine s0 = s;
    s0.shear = {0.0, 0.7};
    auto [r0, rec0] = invert_spiral(s0, spiral_sites(s0)[0]);
    (void)rec0;
    CHECK(max_shear_diff(r0, s0) == 0.0);

    // (Y, P) = (1, 2) -> (3, -2) -> (1, 2)
    Spine s1 = s;
    s1.shear = {2.0, 1.0};
    auto r1 = invert_spiral(s1, spiral_sites(s1)[0]).first;
    CHECK(r1.shear[1] == doctest::Approx(3.0));
    CHECK(r1.shear[0] == doctest::Approx(-2.0));
    auto r2 = invert_spiral(r1, spiral_sites(r1)[0]).first;
    CHECK(max_shear_diff(r2, s1) < 1e-15);

    // matrix identities behind the invariance
    SplitMix64 rng(6);
    for (int t = 0; t < 20; ++t) {
        double Y = rng.next_double(-2, 2), P = rng.next_double(-2, 2);
        Mat2d L = turn_matrix(true), R = turn_matrix(false);
        Mat2d lhsL = edge_matrix(Y) * L * edge_matrix(P) * L * edge_matrix(Y);
        Mat2d rhsL = edge_matrix(Y + P) * L * edge_matrix(-P) * L * edge_matrix(Y + P);
        CHECK(max_abs_diff(lhsL, rhsL) < 1e-12);
        Mat2d lhsR = edge_matrix(Y) * R * edge_matrix(P) * R * edge_matrix(Y);
        Mat2d rhsR = edge_matrix(Y + P) * R * edge_matrix(-P) * R * edge_matrix(Y + P);
        CHECK(max_abs_diff(lhsR, rhsR) < 1e-12);
    }

    // the dumbbell has no pending edges but two spiral sites
    CHECK(spiral_sites(dumbbell_spine()).size() == 2);
    CHECK_THROWS_AS(invert_spiral(s, SpiralSite{0, 1, 0}), std::invalid_argument);
}

TEST_CASE("winding transport identities") {
    // A passage around the pending edge keeps its winding when it enters
    // and leaves through the same neighbour slot and shifts it by one when
    // it changes sides; turn tokens are re-read off the flipped rotation.
    // Windings 0 and p denote the plain corner turn.  These matrix
    // equalities are the content of the pending-flip trace invariance.
    SplitMix64 rng(14);
    for (long p : {2L, 3L, 4L, 5L, 7L}) {
        double w = 2 * std::cos(3.14159265358979323846 / static_cast<double>(p));
        for (int in_y1 = 0; in_y1 <= 1; ++in_y1)
            for (int out_y1 = 0; out_y1 <= 1; ++out_y1)
                for (long k = (in_y1 == out_y1 ? 1 : 0); k <= p - 1; ++k) {
                    double Z = rng.next_double(-1.2, 1.2);
                    double y1 = rng.next_double(-1.2, 1.2), y2 = rng.next_double(-1.2, 1.2);
                    double y1p = y1 - std::log(1 + w * std::exp(-Z) + std::exp(-2 * Z));
                    double y2p = y2 + std::log(1 + w * std::exp(Z) + std::exp(2 * Z));
                    double in_pre = in_y1 ? y1 : y2, out_pre = out_y1 ? y1 : y2;
                    double in_post = in_y1 ? y1p : y2p, out_post = out_y1 ? y1p : y2p;
                    Mat2d L = turn_matrix(true), R = turn_matrix(false);

                    Mat2d pre;
                    if (k == 0) {
                        pre = edge_matrix(out_pre) * (in_y1 ? R : L) * edge_matrix(in_pre);
                    } else {
                        pre = edge_matrix(out_pre) * (out_y1 ? R : L) * edge_matrix(Z) *
                              rotation_matrix(p, k) * edge_matrix(Z) * (in_y1 ? L : R) *
                              edge_matrix(in_pre);
                    }
                    long delta = in_y1 == out_y1 ? 0 : (in_y1 ? -1 : 1);
                    long k2 = ((k + delta) % p + p) % p;
                    Mat2d post;
                    if (k2 == 0) {
                        post = edge_matrix(out_post) * (in_y1 ? L : R) * edge_matrix(in_post);
                    } else {
                        post = edge_matrix(out_post) * (out_y1 ? L : R) * edge_matrix(-Z) *
                               rotation_matrix(p, k2) * edge_matrix(-Z) * (in_y1 ? R : L) *
                               edge_matrix(in_post);
                    }
                    CHECK(max_abs_diff(pre, post) < 1e-10);
                }
    }
}

TEST_CASE("path transport preserves geodesic functions") {
    SplitMix64 rng(2718);

    // untouched words are unchanged
    auto tree = treegraph_spine(3, 3);
    PathWord handle;
    handle.tokens = {cross_token(0), turn_token(false), cross_token(1), turn_token(true)};
    REQUIRE(realize_word(handle, tree).has_value());
    auto [t2, rec] = flip_pending(tree, 5);
    (void)t2;
    PathWord moved = transport_path(handle, rec);
    CHECK(moved.tokens.size() == handle.tokens.size());
    CHECK(geodesic_function(moved, rec.after).G ==
          doctest::Approx(geodesic_function(handle, tree).G).epsilon(1e-12));

    // all moves on random words, both spines of interest
    for (const Spine& base : {torus_with_hole(0.4, -0.2, 0.9), treegraph_spine(3, 3)}) {
        std::vector<PathWord> words;
        bool pend = base.orbifold_points > 0;
        for (int i = 0; i < 12; ++i)
            if (auto w = random_closed_word(base, rng, pend)) words.push_back(*w);
        REQUIRE(words.size() >= 6);

        for (int e = 0; e < base.edge_count(); ++e) {
            if (base.is_pending_edge(e)) {
                auto r = flip_pending(base, e).second;
                for (const auto& w : words) {
                    auto w2 = transport_path(w, r);
                    CHECK(realize_word(w2, r.after).has_value());
                    CHECK(geodesic_function(w2, r.after).G ==
                          doctest::Approx(geodesic_function(w, base).G).epsilon(1e-9));
                }
            } else if (base.vertex_of(2 * e) != base.vertex_of(2 * e + 1)) {
                auto r = flip_inner(base, e).second;
                for (const auto& w : words) {
                    auto w2 = transport_path(w, r);
                    CHECK(realize_word(w2, r.after).has_value());
                    CHECK(geodesic_function(w2, r.after).G ==
                          doctest::Approx(geodesic_function(w, base).G).epsilon(1e-9));
                }
            }
        }
    }
}

TEST_CASE("spiral transport preserves geodesic functions") {
    auto s = dumbbell_spine();
    SplitMix64 rng(31415);
    std::vector<PathWord> words;
    for (int i = 0; i < 10; ++i)
        if (auto w = random_closed_word(s, rng, false)) words.push_back(*w);
    REQUIRE(!words.empty());
    for (const auto& site : spiral_sites(s)) {
        auto rec = invert_spiral(s, site).second;
        for (const auto& w : words) {
            auto w2 = transport_path(w, rec);
            CHECK(geodesic_function(w2, rec.after).G ==
                  doctest::Approx(geodesic_function(w, s).G).epsilon(1e-9));
        }
    }
}

TEST_CASE("move invariance suite on both reference spines") {
    SweepOptions opt;
    opt.seed = 99;
    opt.samples = 0;
    auto torus_rep = move_invariance_suite(torus_with_hole(0.3, -0.8, 0.5), 20, opt);
    CHECK(torus_rep.ok);
    CHECK(torus_rep.max_relative_error < 1e-9);

    auto tree_rep = move_invariance_suite(treegraph_spine(3, 3), 20, opt);
    CHECK(tree_rep.ok);
    CHECK(tree_rep.max_relative_error < 1e-9);
    CHECK(tree_rep.max_hole_flip_disagreement < 1e-12);
}

TEST_CASE("treegraph windings survive pending flips") {
    auto tree = treegraph_spine(3, 3);
    // words winding each Z_3 point with k = 1 and k = 2
    for (int pend : {3, 5}) {
        for (long k = 1; k <= 2; ++k) {
            // find an engagement word: enter from one neighbour, wind, exit
            PathWord w;
            int hb = tree.vertices[tree.vertex_of(2 * pend)].pending_order != 0 ? 2 * pend + 1
                                                                                : 2 * pend;
            int y_in = tree.sigma(hb), y_out = tree.sigma2(hb);
            // build: cross y_in-edge (arriving at the base vertex), L onto the
            // pending edge, wind k, exit L onto y_out-edge, then return through
            // the graph; close by retracing the other way is not generally a
            // path, so use the invariance suite machinery instead: realize the
            // open engagement and check the matrix identity transported
            w.closed = false;
            w.tokens = {cross_token(Spine::edge_of(y_in)), turn_token(true), cross_token(pend),
                        rotate_token(pend, k), cross_token(pend), turn_token(true),
                        cross_token(Spine::edge_of(y_out))};
            REQUIRE(realize_word(w, tree).has_value());
        }
    }

    // closed winding words transported across the pending flips
    SplitMix64 rng(555);
    int checked = 0;
    for (int trial = 0; trial < 60 && checked < 8; ++trial) {
        auto w = random_closed_word(tree, rng, true);
        if (!w) continue;
        bool winds = false;
        for (const auto& t : w->tokens) winds = winds || t.kind == Token::Kind::Rotate;
        if (!winds) continue;
        ++checked;
        for (int pend : {3, 5}) {
            auto rec = flip_pending(tree, pend).second;
            auto w2 = transport_path(*w, rec);
            CHECK(geodesic_function(w2, rec.after).G ==
                  doctest::Approx(geodesic_function(*w, tree).G).epsilon(1e-9));
        }
    }
    CHECK(checked >= 4);
}
