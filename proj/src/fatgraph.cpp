#include "orbicluster/fatgraph.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include <gmpxx.h>

namespace orbicluster {

void Spine::reindex() {
    vertex_of_.assign(half_count(), -1);
    sigma_.assign(half_count(), -1);
    for (size_t v = 0; v < vertices.size(); ++v) {
        const auto& hs = vertices[v].halves;
        for (size_t i = 0; i < hs.size(); ++i) {
            int h = hs[i];
            if (h < 0 || h >= half_count()) throw std::invalid_argument("half-edge id out of range");
            if (vertex_of_[h] != -1) throw std::invalid_argument("half-edge listed twice");
            vertex_of_[h] = static_cast<int>(v);
            sigma_[h] = hs[(i + 1) % hs.size()];
        }
    }
    for (int h = 0; h < half_count(); ++h)
        if (vertex_of_[h] == -1) throw std::invalid_argument("half-edge not attached to any vertex");
}

bool Spine::is_pending_edge(int e) const { return pending_order_of(e) != 0; }

long Spine::pending_order_of(int e) const {
    for (int h : {2 * e, 2 * e + 1}) {
        long p = vertices[vertex_of_[h]].pending_order;
        if (p != 0) return p;
    }
    return 0;
}

bool Spine::operator==(const Spine& rhs) const {
    return genus == rhs.genus && holes == rhs.holes && orbifold_points == rhs.orbifold_points &&
           shear == rhs.shear && label == rhs.label &&
           [&] {
               if (vertices.size() != rhs.vertices.size()) return false;
               for (size_t i = 0; i < vertices.size(); ++i)
                   if (vertices[i].halves != rhs.vertices[i].halves ||
                       vertices[i].pending_order != rhs.vertices[i].pending_order)
                       return false;
               return true;
           }();
}

std::vector<std::vector<int>> boundary_walks(const Spine& spine) {
    std::vector<char> seen(spine.half_count(), 0);
    std::vector<std::vector<int>> faces;
    for (int start = 0; start < spine.half_count(); ++start) {
        if (seen[start]) continue;
        std::vector<int> walk;
        int h = start;
        do {
            seen[h] = 1;
            walk.push_back(h);
            h = spine.sigma(Spine::partner(h));
        } while (h != start);
        faces.push_back(std::move(walk));
    }
    return faces;
}

std::vector<std::vector<long>> face_multiplicities(const Spine& spine) {
    auto faces = boundary_walks(spine);
    std::vector<std::vector<long>> mult;
    for (const auto& walk : faces) {
        std::vector<long> v(spine.edge_count(), 0);
        for (int h : walk) v[Spine::edge_of(h)] += 1;
        mult.push_back(std::move(v));
    }
    return mult;
}

ValidationReport validate(const Spine& spine) {
    ValidationReport rep;
    auto fail = [&](std::string msg) {
        rep.ok = false;
        rep.violations.push_back(std::move(msg));
    };

    const long g = spine.genus, s = spine.holes, r = spine.orbifold_points;
    rep.edge_count = spine.edge_count();
    long expected_edges = 6 * g - 6 + 3 * s + 2 * r;
    if (rep.edge_count != expected_edges)
        fail("edge count " + std::to_string(rep.edge_count) + " != 6g-6+3s+2r = " +
             std::to_string(expected_edges));

    long pending = 0;
    for (const auto& v : spine.vertices) {
        if (v.pending_order != 0) {
            ++pending;
            if (v.halves.size() != 1) fail("pending terminal must be 1-valent");
            if (v.pending_order < 2) fail("orbifold order must be >= 2");
        } else if (v.halves.size() != 3) {
            fail("non-pending vertex must be trivalent");
        }
    }
    if (pending != r) fail("pending terminal count " + std::to_string(pending) + " != r");

    auto faces = boundary_walks(spine);
    rep.face_count = static_cast<int>(faces.size());
    if (rep.face_count != s)
        fail("face count " + std::to_string(rep.face_count) + " != s = " + std::to_string(s));

    long V = static_cast<long>(spine.vertices.size());
    if (V - rep.edge_count != 2 - 2 * g - s)
        fail("Euler characteristic V - E = " + std::to_string(V - rep.edge_count) +
             " != 2 - 2g - s = " + std::to_string(2 - 2 * g - s));

    std::set<long> labels(spine.label.begin(), spine.label.end());
    if (static_cast<int>(labels.size()) != spine.edge_count()) fail("edge labels not distinct");

    return rep;
}

std::vector<std::vector<long>> poisson_matrix(const Spine& spine) {
    const int E = spine.edge_count();
    std::vector<std::vector<long>> B(E, std::vector<long>(E, 0));
    for (const auto& v : spine.vertices) {
        if (v.pending_order != 0) continue;
        for (size_t i = 0; i < v.halves.size(); ++i) {
            int a = Spine::edge_of(v.halves[i]);
            int b = Spine::edge_of(v.halves[(i + 1) % v.halves.size()]);
            B[a][b] += 1;
            B[b][a] -= 1;
        }
    }
    return B;
}

std::vector<std::vector<long>> spine_exchange_matrix(const Spine& spine) {
    auto B = poisson_matrix(spine);
    for (int e = 0; e < spine.edge_count(); ++e)
        if (spine.is_pending_edge(e))
            for (auto& v : B[e]) v *= 2;
    return B;
}

std::vector<std::vector<long>> poisson_center(const Spine& spine) { return face_multiplicities(spine); }

int rational_rank(const std::vector<std::vector<long>>& m) {
    if (m.empty()) return 0;
    std::vector<std::vector<mpq_class>> a(m.size(), std::vector<mpq_class>(m[0].size()));
    for (size_t i = 0; i < m.size(); ++i)
        for (size_t j = 0; j < m[i].size(); ++j) a[i][j] = m[i][j];
    size_t rows = a.size(), cols = a[0].size();
    size_t rank = 0;
    for (size_t col = 0; col < cols && rank < rows; ++col) {
        size_t sel = rank;
        while (sel < rows && a[sel][col] == 0) ++sel;
        if (sel == rows) continue;
        std::swap(a[sel], a[rank]);
        mpq_class inv = 1 / a[rank][col];
        for (size_t j = col; j < cols; ++j) a[rank][j] *= inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == rank || a[i][col] == 0) continue;
            mpq_class f = a[i][col];
            for (size_t j = col; j < cols; ++j) a[i][j] -= f * a[rank][j];
        }
        ++rank;
    }
    return static_cast<int>(rank);
}

namespace {

Spine finish(Spine s) {
    if (s.label.empty()) {
        s.label.resize(s.shear.size());
        for (size_t i = 0; i < s.label.size(); ++i) s.label[i] = static_cast<long>(i) + 1;
    }
    s.reindex();
    return s;
}

} // namespace

Spine torus_with_hole(double z0, double z1, double z2) {
    // two trivalent vertices, three parallel edges, one hexagonal face
    Spine s;
    s.genus = 1;
    s.holes = 1;
    s.orbifold_points = 0;
    s.shear = {z0, z1, z2};
    s.vertices = {{{0, 2, 4}, 0}, {{1, 3, 5}, 0}};
    return finish(std::move(s));
}

Spine theta_graph() {
    // same edges, opposite rotations: three bigon faces, genus 0
    Spine s;
    s.genus = 0;
    s.holes = 3;
    s.orbifold_points = 0;
    s.shear = {0.2, -0.1, 0.4};
    s.vertices = {{{0, 2, 4}, 0}, {{5, 3, 1}, 0}};
    return finish(std::move(s));
}

Spine dumbbell_spine() {
    // edges: loop 0 (halves 0,1), bar 1 (halves 2,3), loop 2 (halves 4,5)
    Spine s;
    s.genus = 0;
    s.holes = 3;
    s.orbifold_points = 0;
    s.shear = {0.5, -0.3, 0.7};
    s.vertices = {{{2, 0, 1}, 0}, {{3, 4, 5}, 0}};
    return finish(std::move(s));
}

Spine loop_with_stem(long p) {
    // loop edge 0 (halves 0,1) at a trivalent vertex, pending stem edge 1
    // (halves 2,3) of order p
    Spine s;
    s.genus = 0;
    s.holes = 2;
    s.orbifold_points = 1;
    s.shear = {0.4, 0.1};
    s.vertices = {{{2, 0, 1}, 0}, {{3}, p}};
    return finish(std::move(s));
}

Spine tripod_spine(long p1, long p2, long p3) {
    // one trivalent vertex, three pending edges
    Spine s;
    s.genus = 0;
    s.holes = 1;
    s.orbifold_points = 3;
    s.shear = {0.3, -0.2, 0.1};
    s.vertices = {{{0, 2, 4}, 0}, {{1}, p1}, {{3}, p2}, {{5}, p3}};
    return finish(std::move(s));
}

Spine treegraph_spine(long p1, long p2) {
    // torus-with-hole spine with one edge subdivided twice, each new
    // vertex carrying a pending edge to a Z_p terminal
    // edges: A=0 (0,1), B=1 (2,3), Y2=2 (4,5), Z1=3 (6,7), Y3=4 (8,9),
    //        Z2=5 (10,11), Y4=6 (12,13)
    Spine s;
    s.genus = 1;
    s.holes = 1;
    s.orbifold_points = 2;
    s.shear = {0.11, -0.07, 0.23, 0.05, -0.13, 0.17, 0.02};
    s.vertices = {
        {{0, 2, 4}, 0},   // v1: A, B, Y2
        {{5, 6, 8}, 0},   // u1: Y2, Z1, Y3
        {{9, 10, 12}, 0}, // u2: Y3, Z2, Y4
        {{1, 3, 13}, 0},  // v2: A, B, Y4
        {{7}, p1},
        {{11}, p2},
    };
    return finish(std::move(s));
}

} // namespace orbicluster
