#pragma once

#include <string>
#include <vector>

namespace orbicluster {

// Ribbon graph with trivalent vertices and 1-valent pending terminals
// carrying orbifold orders.  Half-edge h of edge e is 2e or 2e+1; the
// partner involution is h ^ 1.  sigma maps each half-edge to the next one
// counterclockwise around its vertex (identity at pending terminals).
struct Spine {
    struct Vertex {
        std::vector<int> halves; // counterclockwise order
        long pending_order = 0;  // 0 = trivalent, otherwise orbifold order p >= 2
    };

    std::vector<Vertex> vertices;
    std::vector<double> shear;   // Z_alpha per edge
    std::vector<long> label;     // distinct integer labels per edge
    long genus = 0, holes = 0, orbifold_points = 0;

    int edge_count() const noexcept { return static_cast<int>(shear.size()); }
    int half_count() const noexcept { return 2 * edge_count(); }
    static int partner(int h) noexcept { return h ^ 1; }
    static int edge_of(int h) noexcept { return h / 2; }

    int vertex_of(int h) const noexcept { return vertex_of_[h]; }
    int sigma(int h) const noexcept { return sigma_[h]; }
    int sigma2(int h) const noexcept { return sigma_[sigma_[h]]; }
    bool is_pending_edge(int e) const;
    long pending_order_of(int e) const; // 0 when not pending

    // Rebuilds sigma / vertex_of from the vertex lists.  Call after any
    // structural edit.
    void reindex();

    bool operator==(const Spine& rhs) const;

private:
    std::vector<int> vertex_of_;
    std::vector<int> sigma_;
};

struct ValidationReport {
    bool ok = true;
    std::vector<std::string> violations;
    int edge_count = 0;
    int face_count = 0;
};

// Checks the spine against (g, s, r): edge count 6g-6+3s+2r, vertex
// valences, face count s, and Euler characteristic.  Each violated
// condition is reported individually.
ValidationReport validate(const Spine& spine);

// Face orbits of h -> sigma(partner(h)); one walk of half-edges per face.
std::vector<std::vector<int>> boundary_walks(const Spine& spine);

// Per-face edge multiplicities (pending edges naturally count twice).
std::vector<std::vector<long>> face_multiplicities(const Spine& spine);

// Weil-Petersson Poisson matrix: per trivalent vertex, +1 for each edge
// pair (alpha_i, alpha_{i+1}) in counterclockwise order, antisymmetrized.
std::vector<std::vector<long>> poisson_matrix(const Spine& spine);

// The exchange matrix identified with the Poisson structure: pending-edge
// rows are doubled, making them divisible by d = 2 as the degree-2
// exchange requires.  Flips act on this matrix by matrix mutation at the
// flipped index.
std::vector<std::vector<long>> spine_exchange_matrix(const Spine& spine);

// The face multiplicity vectors; each spans the kernel of the Poisson
// matrix, and together they exhaust it (dimension s).
std::vector<std::vector<long>> poisson_center(const Spine& spine);

// Rank over Q of an integer matrix.
int rational_rank(const std::vector<std::vector<long>>& m);

// Built-in example library.
Spine torus_with_hole(double z0 = 0.1, double z1 = -0.2, double z2 = 0.3); // g=1, s=1
Spine theta_graph();                             // g=0, s=3
Spine dumbbell_spine();                          // g=0, s=3, two spiral loops
Spine loop_with_stem(long p);                    // g=0, s=2, one Z_p point
Spine tripod_spine(long p1, long p2, long p3);   // g=0, s=1, three orbifold points
Spine treegraph_spine(long p1 = 3, long p2 = 3); // g=1, s=1, two orbifold points

} // namespace orbicluster
