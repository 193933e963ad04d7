#include "orbicluster/moves.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

#include "orbicluster/cluster.hpp"

namespace orbicluster {

namespace {

constexpr double kPi = 3.14159265358979323846;

// log(1 + e^Z) without overflow for large |Z|
double phi_log(double z) {
    return z > 0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
}

// log(1 + w e^Z + e^{2Z}) evaluated stably; the argument is >= 1 - ...
// always positive since w >= 0
double pending_log(double w, double z) {
    if (z > 0) return 2 * z + std::log1p(w * std::exp(-z) + std::exp(-2 * z));
    return std::log1p(w * std::exp(z) + std::exp(2 * z));
}

int half_of_edge_at(const Spine& s, int edge, int vertex) {
    if (s.vertex_of(2 * edge) == vertex) return 2 * edge;
    if (s.vertex_of(2 * edge + 1) == vertex) return 2 * edge + 1;
    throw std::logic_error("edge not incident to vertex");
}

Token turn_between(const Spine& s, int arrival, int depart) {
    if (s.sigma(arrival) == depart) return turn_token(false); // right
    if (s.sigma2(arrival) == depart) return turn_token(true); // left
    throw std::logic_error("halves not connectable by one turn");
}

} // namespace

std::pair<Spine, MoveRecord> flip_inner(const Spine& spine, int edge) {
    if (spine.is_pending_edge(edge)) throw std::invalid_argument("flip_inner: edge is pending");
    const int z1 = 2 * edge, z2 = 2 * edge + 1;
    const int v1 = spine.vertex_of(z1), v2 = spine.vertex_of(z2);
    if (v1 == v2) throw std::invalid_argument("flip_inner: edge endpoints coincide (loop)");

    const int p1 = spine.sigma(z1), p2 = spine.sigma2(z1);
    const int p3 = spine.sigma(z2), p4 = spine.sigma2(z2);
    const double Z = spine.shear[edge];

    MoveRecord rec;
    rec.kind = MoveRecord::Kind::FlipInner;
    rec.edge = edge;
    rec.before = spine;

    Spine out = spine;
    // counterclockwise-successor slots lose phi(-Z), the others gain phi(Z)
    auto bump = [&](int half, double delta) {
        out.shear[Spine::edge_of(half)] += delta;
        rec.shear_delta[Spine::edge_of(half)] += delta;
    };
    bump(p2, phi_log(Z));
    bump(p4, phi_log(Z));
    bump(p1, -phi_log(-Z));
    bump(p3, -phi_log(-Z));
    out.shear[edge] = -Z;
    rec.shear_delta[edge] += -2 * Z;

    out.vertices[v1].halves = {z1, p2, p3};
    out.vertices[v2].halves = {z2, p4, p1};
    out.reindex();
    rec.after = out;
    return {out, rec};
}

std::pair<Spine, MoveRecord> flip_pending(const Spine& spine, int edge) {
    long p = spine.pending_order_of(edge);
    if (p == 0) throw std::invalid_argument("flip_pending: edge is not pending");
    const int hp = spine.vertex_of(2 * edge) >= 0 &&
                           spine.vertices[spine.vertex_of(2 * edge)].pending_order != 0
                       ? 2 * edge
                       : 2 * edge + 1;
    const int hb = Spine::partner(hp);
    const int v = spine.vertex_of(hb);
    const int y1 = spine.sigma(hb), y2 = spine.sigma2(hb);
    const double Z = spine.shear[edge];
    const double w = 2.0 * std::cos(kPi / static_cast<double>(p));

    MoveRecord rec;
    rec.kind = MoveRecord::Kind::FlipPending;
    rec.edge = edge;
    rec.before = spine;

    Spine out = spine;
    auto bump = [&](int half, double delta) {
        out.shear[Spine::edge_of(half)] += delta;
        rec.shear_delta[Spine::edge_of(half)] += delta;
    };
    bump(y1, -pending_log(w, -Z));
    bump(y2, pending_log(w, Z));
    out.shear[edge] = -Z;
    rec.shear_delta[edge] += -2 * Z;

    out.vertices[v].halves = {hb, y2, y1};
    out.reindex();
    rec.after = out;
    return {out, rec};
}

HoleFlipReport pending_flip_via_hole(const Spine& spine, int edge) {
    long p = spine.pending_order_of(edge);
    if (p == 0) throw std::invalid_argument("pending_flip_via_hole: edge is not pending");
    using C = std::complex<double>;
    const C i_unit(0.0, 1.0);
    const C P = 2.0 * kPi * i_unit / static_cast<double>(p); // e^{P/2}+e^{-P/2} = 2cos(pi/p)
    auto phic = [](C z) { return std::log(C(1.0) + std::exp(z)); };

    const int hp = spine.vertices[spine.vertex_of(2 * edge)].pending_order != 0 ? 2 * edge : 2 * edge + 1;
    const int hb = Spine::partner(hp);
    const int y1 = spine.sigma(hb), y2 = spine.sigma2(hb);

    // the pending shear is the loop construction's Zbar = Z_aux + P/2
    C z_aux = C(spine.shear[edge], 0.0) - P / 2.0;
    C cy1(0.0), cy2(0.0);

    // flip 1: stem edge, loop slots coincide (A = D) and absorb +Z_aux
    C loop = P + z_aux;
    cy2 += phic(z_aux);
    cy1 -= phic(-z_aux);
    C stem = -z_aux;
    // flip 2: the bigon edge now carrying loop = P + Z_aux; the ex-stem
    // slots coincide and absorb it back into a loop of perimeter P
    stem += loop;                 // -Z_aux + (P + Z_aux) = P: the loop again
    cy2 += phic(loop);
    cy1 -= phic(-loop);
    C new_stem = -loop;           // -(P + Z_aux)
    // erase the hole: shift back by P/2
    C new_z = new_stem + P / 2.0; // = -(Z_aux + P/2) = -Zbar

    HoleFlipReport rep;
    rep.max_imag = std::max({std::abs(cy1.imag()), std::abs(cy2.imag()), std::abs(new_z.imag()),
                             std::abs((stem - P).real()) + std::abs((stem - P).imag())});

    auto [flipped, rec] = flip_pending(spine, edge);
    Spine out = spine;
    out.shear[Spine::edge_of(y1)] += cy1.real();
    out.shear[Spine::edge_of(y2)] += cy2.real();
    out.shear[edge] = new_z.real();
    out.vertices[spine.vertex_of(hb)].halves = {hb, y2, y1};
    out.reindex();

    rep.max_disagreement = 0;
    for (int e = 0; e < out.edge_count(); ++e)
        rep.max_disagreement = std::max(rep.max_disagreement, std::abs(out.shear[e] - flipped.shear[e]));
    rec.kind = MoveRecord::Kind::FlipPending;
    rep.record = rec;
    rep.record.after = out;
    rep.result = std::move(out);
    return rep;
}

std::vector<SpiralSite> spiral_sites(const Spine& spine) {
    std::vector<SpiralSite> sites;
    auto faces = boundary_walks(spine);
    for (size_t f = 0; f < faces.size(); ++f) {
        if (faces[f].size() != 1) continue;
        int h = faces[f][0];
        int loop_edge = Spine::edge_of(h);
        int v = spine.vertex_of(h);
        // the third edge at the loop vertex is the stem
        int stem = -1;
        for (int half : spine.vertices[v].halves)
            if (Spine::edge_of(half) != loop_edge) stem = Spine::edge_of(half);
        if (stem < 0) continue;
        sites.push_back(SpiralSite{static_cast<int>(f), loop_edge, stem});
    }
    return sites;
}

std::pair<Spine, MoveRecord> invert_spiral(const Spine& spine, const SpiralSite& site) {
    auto sites = spiral_sites(spine);
    bool found = false;
    for (const auto& s : sites)
        found = found || (s.loop_edge == site.loop_edge && s.stem_edge == site.stem_edge);
    if (!found)
        throw std::invalid_argument("invert_spiral: hole is not in loop-with-stem form");

    MoveRecord rec;
    rec.kind = MoveRecord::Kind::InvertSpiral;
    rec.edge = site.loop_edge;
    rec.before = spine;

    Spine out = spine;
    double P = spine.shear[site.loop_edge];
    out.shear[site.stem_edge] += P;
    out.shear[site.loop_edge] = -P;
    rec.shear_delta[site.stem_edge] += P;
    rec.shear_delta[site.loop_edge] += -2 * P;
    rec.after = out;
    return {out, rec};
}

namespace {

struct Crossing {
    int edge = -1;
    int arrival = -1; // arrival half on the pre-move spine
    size_t token_index = 0;
};

std::vector<Crossing> crossing_skeleton(const PathWord& word, const std::vector<int>& arrivals) {
    std::vector<Crossing> out;
    size_t ai = 0;
    for (size_t i = 0; i < word.tokens.size(); ++i) {
        if (word.tokens[i].kind != Token::Kind::Cross) continue;
        out.push_back(Crossing{word.tokens[i].edge, arrivals[ai], i});
        ++ai;
    }
    return out;
}

} // namespace

PathWord transport_path(const PathWord& word, const MoveRecord& record) {
    if (record.kind == MoveRecord::Kind::InvertSpiral) return word;

    auto arrivals = realize_word(word, record.before);
    if (!arrivals) throw std::invalid_argument("transport_path: word not realizable before the move");
    auto cross = crossing_skeleton(word, *arrivals);
    const int f = record.edge;
    const Spine& pre = record.before;
    const Spine& post = record.after;

    // anchor the cyclic word at a crossing that is not the moved edge
    size_t m = cross.size();
    size_t start = 0;
    while (start < m && cross[start].edge == f) ++start;
    if (start == m) throw std::invalid_argument("transport_path: word crosses only the moved edge");

    // flipped-edge vertex set on the pre spine, for affectedness tests
    auto at_moved_vertex = [&](int half) {
        int v = pre.vertex_of(half);
        return v == pre.vertex_of(2 * f) || v == pre.vertex_of(2 * f + 1);
    };

    PathWord out;
    out.closed = word.closed;

    size_t i = start;
    do {
        out.tokens.push_back(cross_token(cross[i].edge));
        // find the next non-f crossing and classify the connector
        size_t j = (i + 1) % m;
        long winding = 0; // 0: corner / no f crossing, otherwise the rotation count
        bool engagement = false;
        while (cross[j].edge == f) {
            // pending engagement: cross f, rotate k, cross f
            engagement = true;
            const Token& rot = word.tokens[(cross[j].token_index + 1) % word.tokens.size()];
            if (rot.kind == Token::Kind::Rotate) winding = rot.winding;
            j = (j + 1) % m;
        }
        const Crossing& a = cross[i];
        const Crossing& b = cross[j];
        int depart_pre = Spine::partner(b.arrival);

        // connector tokens on the pre spine
        size_t t0 = (a.token_index + 1) % word.tokens.size();
        size_t t1 = b.token_index;
        bool affected = engagement;
        if (!affected) {
            // single turn or rotation at a vertex of the moved edge?
            if (word.tokens[t0].kind != Token::Kind::Rotate && at_moved_vertex(a.arrival))
                affected = true;
        }
        if (record.kind == MoveRecord::Kind::FlipInner && !affected) {
            // connectors through f appear as [turn, cross f, turn]
            for (size_t t = t0; t != t1; t = (t + 1) % word.tokens.size())
                if (word.tokens[t].kind == Token::Kind::Cross && word.tokens[t].edge == f)
                    affected = true;
        }

        if (!affected) {
            for (size_t t = t0; t != t1; t = (t + 1) % word.tokens.size())
                out.tokens.push_back(word.tokens[t]);
        } else if (record.kind == MoveRecord::Kind::FlipInner) {
            // reroute from arrival a to departure depart_pre on the post spine
            if (post.vertex_of(a.arrival) == post.vertex_of(depart_pre)) {
                out.tokens.push_back(turn_between(post, a.arrival, depart_pre));
            } else {
                int hf = half_of_edge_at(post, f, post.vertex_of(a.arrival));
                out.tokens.push_back(turn_between(post, a.arrival, hf));
                out.tokens.push_back(cross_token(f));
                out.tokens.push_back(turn_between(post, Spine::partner(hf), depart_pre));
            }
        } else {
            // Pending flip.  The moved edge changes sides at its base
            // vertex, so passages gain or lose one winding depending on
            // which neighbour slots they enter and leave through; the turn
            // tokens are re-read off the flipped rotation.
            long p = pre.pending_order_of(f);
            int hb = pre.vertices[pre.vertex_of(2 * f)].pending_order != 0 ? 2 * f + 1 : 2 * f;
            bool in_y1 = a.arrival == pre.sigma(hb);
            bool out_y1 = depart_pre == pre.sigma(hb);
            long delta = in_y1 == out_y1 ? 0 : (in_y1 ? -1 : 1);
            long k_new = ((winding + delta) % p + p) % p;
            if (k_new == 0) {
                out.tokens.push_back(turn_between(post, a.arrival, depart_pre));
            } else {
                out.tokens.push_back(turn_between(post, a.arrival, hb));
                out.tokens.push_back(cross_token(f));
                out.tokens.push_back(rotate_token(f, k_new));
                out.tokens.push_back(cross_token(f));
                out.tokens.push_back(turn_between(post, hb, depart_pre));
            }
        }
        i = j;
    } while (i != start);

    return out;
}

InvarianceReport check_move_invariance(const Spine& spine, const std::vector<PathWord>& words,
                                       const MoveRecord& record, double tol, std::size_t term_budget) {
    InvarianceReport rep;
    const Spine& after = record.after;

    for (const auto& w : words) {
        double g0 = geodesic_function(w, spine).G;
        PathWord w2 = transport_path(w, record);
        double g1 = geodesic_function(w2, after).G;
        double rel = std::abs(g0 - g1) / std::max(1.0, std::abs(g0));
        rep.max_relative_error = std::max(rep.max_relative_error, rel);
        ++rep.words_checked;
        if (rel >= tol) {
            rep.ok = false;
            rep.failures.push_back("trace drift " + std::to_string(rel) + " on a word of " +
                                   std::to_string(w.tokens.size()) + " tokens");
            continue;
        }
        // symbolic layer: evaluate both trace polynomials on corresponding
        // shear assignments
        auto field = spine_field(spine);
        LaurentPoly t0 = geodesic_function_symbolic(w, spine, field);
        LaurentPoly t1 = geodesic_function_symbolic(w2, after, field);
        if (t0.term_count() <= term_budget && t1.term_count() <= term_budget) {
            ++rep.symbolic_checked;
            SplitMix64 rng(0x5eedULL + rep.symbolic_checked);
            for (int trial = 0; trial < 25; ++trial) {
                Spine s0 = spine;
                for (auto& z : s0.shear) z = rng.next_double(-1.5, 1.5);
                Spine s1 = s0;
                // replay the move's shear action on the random assignment
                switch (record.kind) {
                    case MoveRecord::Kind::FlipInner: s1 = flip_inner(s0, record.edge).first; break;
                    case MoveRecord::Kind::FlipPending: s1 = flip_pending(s0, record.edge).first; break;
                    case MoveRecord::Kind::InvertSpiral: {
                        auto sites = spiral_sites(s0);
                        for (const auto& site : sites)
                            if (site.loop_edge == record.edge) s1 = invert_spiral(s0, site).first;
                        break;
                    }
                }
                std::vector<double> lam0(s0.edge_count()), lam1(s1.edge_count());
                for (int e = 0; e < s0.edge_count(); ++e) {
                    lam0[e] = std::exp(s0.shear[e] / 2);
                    lam1[e] = std::exp(s1.shear[e] / 2);
                }
                double u0 = t0.eval(lam0), u1 = t1.eval(lam1);
                if (std::abs(u0 - u1) / std::max(1.0, std::abs(u0)) >= tol) {
                    rep.ok = false;
                    rep.failures.push_back("symbolic trace mismatch at random shears");
                    break;
                }
            }
        }
    }

    // Poisson compatibility through the weighted exchange matrix
    auto b0 = spine_exchange_matrix(spine);
    auto b1 = spine_exchange_matrix(after);
    if (record.kind == MoveRecord::Kind::InvertSpiral) {
        rep.poisson_compatible = b0 == b1;
    } else {
        rep.poisson_compatible = b1 == matrix_mutate_raw(b0, record.edge);
    }
    if (!rep.poisson_compatible) {
        rep.ok = false;
        rep.failures.push_back("Poisson matrix does not follow the matrix mutation rule");
    }

    const long s = spine.holes;
    auto center = poisson_center(after);
    bool center_ok = static_cast<long>(center.size()) == s;
    for (const auto& v : center) {
        for (size_t i = 0; i < b1.size() && center_ok; ++i) {
            long acc = 0;
            for (size_t j = 0; j < b1.size(); ++j) acc += b1[i][j] * v[j];
            center_ok = center_ok && acc == 0;
        }
    }
    center_ok = center_ok && rational_rank(b1) == static_cast<int>(b1.size()) - s;
    rep.center_dimension_preserved = center_ok;
    if (!center_ok) {
        rep.ok = false;
        rep.failures.push_back("Poisson center dimension not preserved");
    }
    return rep;
}

Spine random_spine(SplitMix64& rng) {
    Spine s;
    switch (rng.next_below(5)) {
        case 0: s = torus_with_hole(); break;
        case 1: s = theta_graph(); break;
        case 2: s = dumbbell_spine(); break;
        case 3: s = loop_with_stem(2 + static_cast<long>(rng.next_below(5))); break;
        default: s = treegraph_spine(2 + static_cast<long>(rng.next_below(4)),
                                     2 + static_cast<long>(rng.next_below(4)));
    }
    for (auto& z : s.shear) z = rng.next_double(-1.0, 1.0);
    int flips = static_cast<int>(rng.next_below(6));
    for (int i = 0; i < flips; ++i) {
        std::vector<int> candidates;
        for (int e = 0; e < s.edge_count(); ++e)
            if (!s.is_pending_edge(e) && s.vertex_of(2 * e) != s.vertex_of(2 * e + 1))
                candidates.push_back(e);
        if (candidates.empty()) break;
        s = flip_inner(s, candidates[rng.next_below(candidates.size())]).first;
    }
    return s;
}

} // namespace orbicluster
