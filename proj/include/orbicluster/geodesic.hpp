#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "orbicluster/fatgraph.hpp"
#include "orbicluster/laurent.hpp"
#include "orbicluster/rng.hpp"

namespace orbicluster {

struct Token {
    enum class Kind { Cross, TurnL, TurnR, Rotate };
    Kind kind = Kind::Cross;
    int edge = -1;    // Cross / Rotate
    long winding = 0; // Rotate: 1 <= k <= p-1
};

// A free-homotopy class on a spine: alternating edge crossings and
// turn/rotation tokens.  Closed words compare up to cyclic rotation of
// (cross, turn) pairs.
struct PathWord {
    std::vector<Token> tokens;
    bool closed = true;
};

Token cross_token(int edge);
Token turn_token(bool left);
Token rotate_token(int edge, long winding);

// 2x2 matrices in both evaluation modes.
struct Mat2d {
    std::array<double, 4> m{1, 0, 0, 1}; // row-major a b c d
    Mat2d operator*(const Mat2d& rhs) const;
    double trace() const { return m[0] + m[3]; }
    double det() const { return m[0] * m[3] - m[1] * m[2]; }
};

struct Mat2s {
    std::array<LaurentPoly, 4> m;
    Mat2s operator*(const Mat2s& rhs) const;
    LaurentPoly trace() const { return m[0] + m[3]; }
    LaurentPoly det() const { return m[0] * m[3] - m[1] * m[2]; }
    static Mat2s identity(int arity, const FieldPtr& field);
};

// Numeric generator matrices.
Mat2d edge_matrix(double Z);
Mat2d turn_matrix(bool left);
Mat2d rotation_matrix(long p, long k); // (-1)^{k+1} F_p^k, w = 2cos(pi/p)

// Symbolic generators over one lambda-variable per spine edge
// (lambda_alpha = e^{Z_alpha/2}); rotation entries live in the field
// housing omega_p.
Mat2s edge_matrix_symbolic(const Spine& spine, const FieldPtr& field, int edge);
Mat2s turn_matrix_symbolic(const Spine& spine, const FieldPtr& field, bool left);
Mat2s rotation_matrix_symbolic(const Spine& spine, const FieldPtr& field, long p, long k);

// Exact F_p over the cyclotomic field (for the F_p^p identity).
std::array<FieldElem, 4> elliptic_generator(const FieldPtr& field, long p);

// Checks that word is realizable on the spine (turns connect consecutive
// edges at a common vertex, rotations only at pending edges); resolves the
// traversal direction.  Returns the arrival half-edge sequence or nullopt.
std::optional<std::vector<int>> realize_word(const PathWord& word, const Spine& spine);

Mat2d evaluate_word(const PathWord& word, const Spine& spine);
Mat2s evaluate_word_symbolic(const PathWord& word, const Spine& spine, const FieldPtr& field);

struct GeodesicValue {
    double G = 0;                   // trace
    std::optional<double> length;   // 2 arccosh(G/2) when G >= 2
};

// Trace of the word's matrix product; requires a closed word.
GeodesicValue geodesic_function(const PathWord& word, const Spine& spine);
LaurentPoly geodesic_function_symbolic(const PathWord& word, const Spine& spine, const FieldPtr& field);

// The all-R boundary word of one face walk.
PathWord boundary_word(const Spine& spine, const std::vector<int>& face_walk);

// Random closed word by a bounded walk on the spine; windings at pending
// edges are drawn uniformly when allow_rotations is set, otherwise pending
// edges are avoided.
std::optional<PathWord> random_closed_word(const Spine& spine, SplitMix64& rng,
                                           bool allow_rotations, int max_steps = 64);

// Smallest cyclotomic field housing every omega the spine needs.
FieldPtr spine_field(const Spine& spine);

struct PgonShearData {
    double Z = 0;
    std::vector<double> Zk; // Z_1 .. Z_p
    std::vector<double> Yk; // Y_2 .. Y_{p-2} (empty for p <= 3)
};

// Shear coordinates of the fan-triangulated equilateral p-gon covering,
// apex angle phi in (0, 2pi/p).
PgonShearData pgon_shear_data(long p, double phi);

struct IdentityReport {
    double max_residual = 0;
    std::vector<std::string> checked;
    bool exact_fp_power_ok = false; // F_p^p = (-1)^{p-1} E in the field
};

// Entrywise verification of the rotation-to-turn matrix identities on the
// p-gon shear data; p = 2 degenerates to X_Z F_2 X_Z = X_{2Z}.
IdentityReport verify_pgon_identities(long p, double phi, double tol = 1e-9);

} // namespace orbicluster
