#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "orbicluster/laurent.hpp"
#include "orbicluster/rng.hpp"

namespace orbicluster {

// Skew-symmetrizable exchange matrix with its skew-symmetrizer.  Row k is
// divisible by d_k; both properties are mutation invariants and are
// re-checked after every mutate.
struct ExchangeMatrix {
    std::vector<std::vector<long>> b;
    std::vector<long> d;

    int size() const noexcept { return static_cast<int>(b.size()); }
    void validate() const; // throws std::invalid_argument naming the violation
    bool operator==(const ExchangeMatrix&) const = default;
};

// Matrix mutation in direction k (0-based).  The bare formula needs no
// skew-symmetrizer, so it is also usable on Poisson matrices.
std::vector<std::vector<long>> matrix_mutate_raw(const std::vector<std::vector<long>>& b, int k);
ExchangeMatrix matrix_mutate(const ExchangeMatrix& m, int k);

enum class CoeffMode { Fixed, Tracked };

// A generalized seed: cluster variables expressed as Laurent polynomials in
// the initial cluster, per-variable exchange-polynomial coefficient tuples,
// and the exchange matrix.  Polynomials have arity n + #generators; the
// trailing variables are frozen coefficient symbols.
struct GenSeed {
    FieldPtr field;
    int n = 0;
    std::vector<std::string> var_names; // n cluster variable names
    std::vector<std::string> gen_names; // frozen coefficient generators
    std::vector<LaurentPoly> cluster;   // size n
    std::vector<std::vector<LaurentPoly>> theta; // theta[i]: d_i + 1 unit monomials
    ExchangeMatrix mat;
    CoeffMode mode = CoeffMode::Fixed;

    int arity() const noexcept { return n + static_cast<int>(gen_names.size()); }
    std::vector<std::string> all_names() const;
    void validate() const;
    std::string cluster_string() const;            // canonical, order-preserving
    std::string cluster_key() const;               // canonical, order-insensitive
    bool operator==(const GenSeed& rhs) const;
};

// Seed mutation in direction k (0-based).  Throws InexactDivision when the
// exchange division leaves a remainder (a Laurent-phenomenon violation) and
// std::invalid_argument when preconditions fail.
GenSeed generalized_mutate(const GenSeed& seed, int k);

// Binomial-exchange special case; requires all d_i = 1.
GenSeed standard_mutate(const GenSeed& seed, int k);

// Folds mutations over dirs (0-based directions), returning every
// intermediate seed.  On failure rethrows with the failing prefix attached.
std::vector<GenSeed> mutation_sequence(const GenSeed& seed, const std::vector<int>& dirs);

struct LaurentReport {
    bool ok = true;
    std::size_t mutations = 0;
    std::size_t max_terms = 0;
    std::size_t max_coeff_bits = 0;
    std::string failure;
    std::vector<int> failing_prefix;
};

// Runs dirs, recording term-count and coefficient-height statistics; a
// division failure becomes the report payload instead of an exception.
LaurentReport check_laurent(const GenSeed& seed, const std::vector<int>& dirs);

struct FiniteTypeReport {
    std::optional<bool> finite;   // nullopt = unknown (bounds hit)
    std::size_t cluster_count = 0;
    std::size_t variable_count = 0;
    std::vector<std::string> variables; // canonical forms, sorted
};

// Breadth-first exploration of the exchange graph, deduplicating clusters
// by canonical serialized form.
FiniteTypeReport finite_type_probe(const GenSeed& seed, std::size_t max_variables,
                                   std::size_t max_depth);

// Built-in seeds.
GenSeed a2_seed();                 // standard A2, trivial coefficients
GenSeed b2_seed();                 // theta1 = a u^2 + b uv + c v^2, theta2 = p u + q v
GenSeed g2_seed();                 // theta1 cubic a,b,c,d; theta2 = p u + q v
GenSeed rank2_orbifold_seed(long p); // geometric B2 shape, theta1 = (1, omega_p, 1)

struct Rank2CycleReport {
    bool ok = true;
    int period = 0;
    bool returned_to_initial = false;
    std::vector<std::string> clusters; // canonical cluster after each step
    std::vector<std::string> mismatches;
};

// Alternating mutation cycle for type "A2" (period 5 on clusters), "B2"
// (period 6) or "G2" (period 8), checked symbolically against the known
// closed forms of every intermediate variable.
Rank2CycleReport rank2_cycle(const std::string& type);

struct RandomSeedParams {
    int max_rank = 4;
    long max_d = 3;
    long max_abs_b = 3;
    std::vector<long> omega_orders = {4, 5};
};

// Random fixed-mode seed with reciprocal coefficient tuples drawn from
// nonnegative combinations of 1 and the listed omegas.
GenSeed random_reciprocal_seed(SplitMix64& rng, const RandomSeedParams& params, const FieldPtr& field);

} // namespace orbicluster
