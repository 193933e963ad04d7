#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "orbicluster/cluster.hpp"
#include "orbicluster/moves.hpp"
#include "orbicluster/polygon.hpp"

namespace orbicluster {

// Every sweep below runs its items independently: item i derives its own
// RNG stream from the master seed, so the parallel (OpenMP) and serial
// paths produce identical reports.  `parallel = false` is the serial
// reference used by the tests and the benchmark.
struct SweepOptions {
    std::uint64_t seed = 1;
    int samples = 100;
    double tol = 1e-9;
    bool parallel = true;
};

struct CcPrimeSample {
    long p = 0;
    double phi = 0, h = 0, h_prime = 0;
    double a = 0, b = 0, c = 0, c_prime = 0;
    double residual = 0;
};

struct CcPrimeSweepResult {
    bool ok = true;
    double max_residual = 0;
    std::vector<CcPrimeSample> samples;
};

// Randomized check of the three-term lambda-length relation around a Z_p
// point: cc' = a^2 + 2cos(pi/p) ab + b^2.
CcPrimeSweepResult cc_prime_sweep(long p, const SweepOptions& opt);

struct IdentitySweepResult {
    bool ok = true;
    double max_residual = 0;
    bool exact_fp_power_ok = true;
    int samples = 0;
};

// Randomized phi sweep of the p-gon rotation/turn matrix identities.
IdentitySweepResult identity_sweep(long p, const SweepOptions& opt);

struct LaurentSweepResult {
    bool ok = true;
    std::size_t sequences = 0;
    std::size_t mutations = 0;
    std::size_t max_terms = 0;
    std::size_t max_coeff_bits = 0;
    std::vector<std::string> failures;
};

// Random generalized seeds with reciprocal coefficient tuples, random
// mutation sequences; any inexact division is a finding.
LaurentSweepResult laurent_sweep(int sequences, int max_length, const RandomSeedParams& params,
                                 const SweepOptions& opt);

struct HyperbolicitySample {
    double G = 0;
    bool symbolic_ok = true;
};

struct HyperbolicitySweepResult {
    bool ok = true;
    double min_G = 0;
    std::size_t words = 0;
    std::size_t symbolic_failures = 0;
};

// Random rotation-free closed words on random spines: numeric trace >= 2,
// symbolic trace a positive-integer Laurent polynomial containing the
// monomials e^{+sum Z/2} and e^{-sum Z/2}.
HyperbolicitySweepResult hyperbolicity_sweep(int words, const SweepOptions& opt);

struct PositivityVariable {
    std::string text;
    bool embed_positive = true;
    bool integer_cone = true;
};

struct PositivitySearchResult {
    long p = 0;
    bool all_embed_positive = true;
    bool all_integer_cone = true; // reported, never asserted
    std::size_t variables = 0;
    std::vector<PositivityVariable> counterexamples; // embed-negative findings
    std::vector<PositivityVariable> report;
};

// Exchange-graph exploration of the geometric rank-2 seed with tuple
// (1, omega_p, 1); positivity of every coefficient under the real
// embedding, with the integer-cone property reported alongside.
PositivitySearchResult positivity_search(long p, std::size_t depth);

struct PoissonSuiteResult {
    bool ok = true;
    int spines = 0;
    std::vector<std::string> failures;
};

// Random valid spines: skew-symmetry, kernel spanned by the boundary
// vectors with dimension exactly s, and flip/matrix-mutation compatibility.
PoissonSuiteResult poisson_suite(int spines, const SweepOptions& opt);

struct MoveInvarianceSuiteResult {
    bool ok = true;
    double max_relative_error = 0;
    double max_hole_flip_disagreement = 0;
    std::size_t words = 0;
    std::size_t moves = 0;
    std::vector<std::string> failures;
};

// Full move-invariance pass over one spine: random closed words, every
// flippable inner edge, every pending edge (both flip routes), every
// spiral site.
MoveInvarianceSuiteResult move_invariance_suite(const Spine& spine, int n_words,
                                                const SweepOptions& opt);

} // namespace orbicluster
