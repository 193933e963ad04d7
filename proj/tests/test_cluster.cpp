#include <doctest.h>

#include "orbicluster/cluster.hpp"

using namespace orbicluster;

TEST_CASE("matrix mutation examples") {
    ExchangeMatrix m{{{0, 2}, {-1, 0}}, {2, 1}};
    m.validate();
    auto m1 = matrix_mutate(m, 0);
    CHECK(m1.b == std::vector<std::vector<long>>{{0, -2}, {1, 0}});

    // rank 3, mutation away from the flipped index
    ExchangeMatrix a{{{0, 1, 0}, {-1, 0, 1}, {0, -1, 0}}, {1, 1, 1}};
    auto a1 = matrix_mutate(a, 1);
    CHECK(a1.b == std::vector<std::vector<long>>{{0, -1, 1}, {1, 0, -1}, {-1, 1, 0}});
}

TEST_CASE("matrix mutation is an involution and preserves invariants") {
    SplitMix64 rng(3);
    for (int trial = 0; trial < 40; ++trial) {
        int n = static_cast<int>(rng.next_int(2, 4));
        ExchangeMatrix m;
        m.d.resize(n);
        for (auto& d : m.d) d = rng.next_int(1, 3);
        m.b.assign(n, std::vector<long>(n, 0));
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                long s = rng.next_int(-2, 2);
                m.b[i][j] = m.d[i] * s;
                m.b[j][i] = -m.d[j] * s;
            }
        m.validate();
        int k = static_cast<int>(rng.next_below(n));
        auto m1 = matrix_mutate(m, k); // validates internally: divisibility + skew-symmetrizability
        CHECK(matrix_mutate(m1, k).b == m.b);
    }
}

TEST_CASE("standard A2 mutation basics") {
    GenSeed seed = a2_seed();
    auto names = seed.all_names();
    GenSeed s1 = standard_mutate(seed, 0);
    CHECK(s1.cluster[0].to_string(names) ==
          exact_divide(LaurentPoly::parse("1 + 1 * y", names, seed.field),
                       LaurentPoly::parse("1 * x", names, seed.field))
              .to_string(names));
    // involution on seeds
    CHECK(standard_mutate(s1, 0) == seed);

    GenSeed b2 = b2_seed();
    CHECK_THROWS_AS(standard_mutate(b2, 0), std::invalid_argument);
}

TEST_CASE("generalized mutation reproduces the printed B2 step") {
    GenSeed seed = b2_seed();
    auto names = seed.all_names();
    GenSeed s1 = generalized_mutate(seed, 0);
    LaurentPoly want = exact_divide(
        LaurentPoly::parse("1 * a + 1 * b y + 1 * c y^2", names, seed.field),
        LaurentPoly::parse("1 * x", names, seed.field));
    CHECK(s1.cluster[0] == want);

    GenSeed s2 = generalized_mutate(s1, 1);
    LaurentPoly want2 = exact_divide(
        LaurentPoly::parse("1 * p x + 1 * q a + 1 * b q y + 1 * c q y^2", names, seed.field),
        LaurentPoly::parse("1 * x y", names, seed.field));
    CHECK(s2.cluster[1] == want2);
}

TEST_CASE("mutation is an involution on generalized seeds") {
    for (auto make : {b2_seed, g2_seed}) {
        GenSeed seed = make();
        for (int k = 0; k < seed.n; ++k) {
            GenSeed twice = generalized_mutate(generalized_mutate(seed, k), k);
            CHECK(twice == seed);
        }
    }
    // fixed-coefficient orbifold seed
    GenSeed seed = rank2_orbifold_seed(5);
    for (int k = 0; k < 2; ++k)
        CHECK(generalized_mutate(generalized_mutate(seed, k), k) == seed);
}

TEST_CASE("reciprocal tuples stay reciprocal under the reversal rule") {
    GenSeed seed = rank2_orbifold_seed(6);
    GenSeed cur = seed;
    for (int step = 0; step < 6; ++step) {
        cur = generalized_mutate(cur, step % 2);
        for (int i = 0; i < cur.n; ++i)
            for (long l = 0; l <= cur.mat.d[i]; ++l)
                CHECK(cur.theta[i][l] == cur.theta[i][cur.mat.d[i] - l]);
    }
}

TEST_CASE("rank-2 golden cycles") {
    auto a2 = rank2_cycle("A2");
    CHECK(a2.ok);
    CHECK(a2.period == 5);

    auto b2 = rank2_cycle("B2");
    CHECK(b2.ok);
    CHECK(b2.returned_to_initial);

    auto g2 = rank2_cycle("G2");
    CHECK(g2.ok);
    CHECK(g2.returned_to_initial);

    CHECK_THROWS_AS(rank2_cycle("E8"), std::invalid_argument);
}

TEST_CASE("mutation_sequence records intermediates and empty input is identity") {
    GenSeed seed = b2_seed();
    auto seeds = mutation_sequence(seed, {});
    CHECK(seeds.size() == 1);
    CHECK(seeds[0] == seed);

    auto six = mutation_sequence(seed, {0, 1, 0, 1, 0, 1});
    CHECK(six.size() == 7);
    CHECK(six.back() == seed);
}

TEST_CASE("corrupted divisibility is a precondition error, not a Laurent failure") {
    GenSeed seed = rank2_orbifold_seed(4);
    seed.mat.b = {{0, -3}, {1, 0}}; // row 0 no longer divisible by d_0 = 2
    CHECK_THROWS_AS(seed.mat.validate(), std::invalid_argument);
    CHECK_THROWS_AS(generalized_mutate(seed, 0), std::invalid_argument);
}

TEST_CASE("check_laurent reports statistics and failures") {
    GenSeed seed = rank2_orbifold_seed(5);
    auto rep = check_laurent(seed, {0, 1, 0, 1, 0, 1, 0, 1});
    CHECK(rep.ok);
    CHECK(rep.mutations == 8);
    CHECK(rep.max_terms >= 3);
}

TEST_CASE("finite type probe") {
    auto a2 = finite_type_probe(a2_seed(), 64, 12);
    REQUIRE(a2.finite.has_value());
    CHECK(*a2.finite);
    CHECK(a2.variable_count == 5); // classical pentagon count

    auto b2 = finite_type_probe(b2_seed(), 64, 12);
    REQUIRE(b2.finite.has_value());
    CHECK(*b2.finite);
    CHECK(b2.variable_count == 6); // x, y and the four printed variables

    // infinite type: rank 2 with b12 * b21 = -4
    GenSeed inf = a2_seed();
    inf.mat.b = {{0, 2}, {-2, 0}};
    inf.mat.d = {1, 1};
    auto probe = finite_type_probe(inf, 40, 20);
    CHECK_FALSE(probe.finite.has_value());
    CHECK(probe.variable_count > 6);
}

TEST_CASE("random reciprocal seeds validate and mutate exactly") {
    auto field = CyclotomicField::for_orders({4, 5});
    SplitMix64 rng(1234);
    RandomSeedParams params;
    for (int trial = 0; trial < 5; ++trial) {
        GenSeed seed = random_reciprocal_seed(rng, params, field);
        seed.validate();
        for (int k = 0; k < seed.n; ++k)
            CHECK(generalized_mutate(generalized_mutate(seed, k), k) == seed);
    }
}
