#include "orbicluster/geodesic.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

namespace orbicluster {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

Token cross_token(int edge) { return Token{Token::Kind::Cross, edge, 0}; }
Token turn_token(bool left) { return Token{left ? Token::Kind::TurnL : Token::Kind::TurnR, -1, 0}; }
Token rotate_token(int edge, long winding) { return Token{Token::Kind::Rotate, edge, winding}; }

Mat2d Mat2d::operator*(const Mat2d& r) const {
    return Mat2d{{m[0] * r.m[0] + m[1] * r.m[2], m[0] * r.m[1] + m[1] * r.m[3],
                  m[2] * r.m[0] + m[3] * r.m[2], m[2] * r.m[1] + m[3] * r.m[3]}};
}

Mat2s Mat2s::operator*(const Mat2s& r) const {
    return Mat2s{{m[0] * r.m[0] + m[1] * r.m[2], m[0] * r.m[1] + m[1] * r.m[3],
                  m[2] * r.m[0] + m[3] * r.m[2], m[2] * r.m[1] + m[3] * r.m[3]}};
}

Mat2s Mat2s::identity(int arity, const FieldPtr& field) {
    auto one = LaurentPoly::constant(arity, field->one());
    auto zero = LaurentPoly::zero(arity, field);
    return Mat2s{{one, zero, zero, one}};
}

Mat2d edge_matrix(double Z) {
    double e = std::exp(Z / 2.0);
    return Mat2d{{0.0, -e, 1.0 / e, 0.0}};
}

Mat2d turn_matrix(bool left) {
    return left ? Mat2d{{0, 1, -1, -1}} : Mat2d{{1, 1, -1, 0}};
}

Mat2d rotation_matrix(long p, long k) {
    if (p < 2 || k < 1 || k > p - 1) throw std::invalid_argument("rotation winding out of range");
    double w = 2.0 * std::cos(kPi / static_cast<double>(p));
    Mat2d F{{0, 1, -1, -w}};
    Mat2d acc{};
    for (long i = 0; i < k; ++i) acc = acc * F;
    double sgn = (k % 2 == 0) ? -1.0 : 1.0; // (-1)^{k+1}
    for (auto& x : acc.m) x *= sgn;
    return acc;
}

Mat2s edge_matrix_symbolic(const Spine& spine, const FieldPtr& field, int edge) {
    const int E = spine.edge_count();
    auto zero = LaurentPoly::zero(E, field);
    auto lam = LaurentPoly::variable(E, field, edge, 1);
    auto lam_inv = LaurentPoly::variable(E, field, edge, -1);
    return Mat2s{{zero, -lam, lam_inv, zero}};
}

Mat2s turn_matrix_symbolic(const Spine& spine, const FieldPtr& field, bool left) {
    (void)spine;
    const int E = spine.edge_count();
    auto c = [&](long v) { return LaurentPoly::constant(E, field->from_int(v)); };
    if (left) return Mat2s{{c(0), c(1), c(-1), c(-1)}};
    return Mat2s{{c(1), c(1), c(-1), c(0)}};
}

std::array<FieldElem, 4> elliptic_generator(const FieldPtr& field, long p) {
    return {field->from_int(0), field->from_int(1), field->from_int(-1), -field->omega(p)};
}

Mat2s rotation_matrix_symbolic(const Spine& spine, const FieldPtr& field, long p, long k) {
    if (p < 2 || k < 1 || k > p - 1) throw std::invalid_argument("rotation winding out of range");
    const int E = spine.edge_count();
    auto f = elliptic_generator(field, p);
    auto c = [&](const FieldElem& v) { return LaurentPoly::constant(E, v); };
    Mat2s F{{c(f[0]), c(f[1]), c(f[2]), c(f[3])}};
    Mat2s acc = Mat2s::identity(E, field);
    for (long i = 0; i < k; ++i) acc = acc * F;
    if (k % 2 == 0) {
        auto minus_one = field->from_int(-1);
        for (auto& x : acc.m) x = x * minus_one;
    }
    return acc;
}

std::optional<std::vector<int>> realize_word(const PathWord& word, const Spine& spine) {
    const auto& toks = word.tokens;
    if (toks.empty()) return std::nullopt;
    // closed words alternate cross/turn and end on a turn; open words end
    // on a crossing
    if (word.closed ? (toks.size() % 2 != 0) : (toks.size() % 2 != 1)) return std::nullopt;
    for (size_t i = 0; i < toks.size(); ++i) {
        bool is_cross = toks[i].kind == Token::Kind::Cross;
        if ((i % 2 == 0) != is_cross) return std::nullopt;
    }
    const int e0 = toks[0].edge;
    if (e0 < 0 || e0 >= spine.edge_count()) return std::nullopt;

    auto try_from = [&](int arrival0) -> std::optional<std::vector<int>> {
        std::vector<int> arrivals;
        arrivals.push_back(arrival0);
        int h = arrival0; // arrival half of the last crossing
        for (size_t i = 1; i < toks.size(); ++i) {
            const Token& t = toks[i];
            if (t.kind == Token::Kind::Cross) {
                continue; // handled together with the preceding turn
            }
            int depart;
            if (t.kind == Token::Kind::Rotate) {
                if (spine.vertices[spine.vertex_of(h)].pending_order == 0) return std::nullopt;
                if (Spine::edge_of(h) != t.edge) return std::nullopt;
                long p = spine.vertices[spine.vertex_of(h)].pending_order;
                if (t.winding < 1 || t.winding > p - 1) return std::nullopt;
                depart = h; // turn around at the orbifold point
            } else {
                if (spine.vertices[spine.vertex_of(h)].pending_order != 0) return std::nullopt;
                depart = t.kind == Token::Kind::TurnR ? spine.sigma(h) : spine.sigma2(h);
            }
            int next_edge = (i + 1 < toks.size()) ? toks[i + 1].edge : toks[0].edge;
            if (Spine::edge_of(depart) != next_edge) return std::nullopt;
            h = Spine::partner(depart);
            if (i + 1 < toks.size()) arrivals.push_back(h);
        }
        if (word.closed && h != arrival0) return std::nullopt;
        return arrivals;
    };

    if (auto r = try_from(2 * e0)) return r;
    return try_from(2 * e0 + 1);
}

namespace {

template <typename Mat, typename CrossFn, typename TurnFn, typename RotFn>
Mat evaluate_generic(const PathWord& word, const Spine& spine, Mat identity, CrossFn cross_fn,
                     TurnFn turn_fn, RotFn rot_fn) {
    auto arrivals = realize_word(word, spine);
    if (!arrivals) throw std::invalid_argument("word is not realizable on this spine");
    Mat acc = identity;
    for (const Token& t : word.tokens) {
        switch (t.kind) {
            case Token::Kind::Cross: acc = cross_fn(t.edge) * acc; break;
            case Token::Kind::TurnL: acc = turn_fn(true) * acc; break;
            case Token::Kind::TurnR: acc = turn_fn(false) * acc; break;
            case Token::Kind::Rotate: {
                long p = spine.pending_order_of(t.edge);
                acc = rot_fn(p, t.winding) * acc;
                break;
            }
        }
    }
    return acc;
}

} // namespace

Mat2d evaluate_word(const PathWord& word, const Spine& spine) {
    return evaluate_generic(
        word, spine, Mat2d{}, [&](int e) { return edge_matrix(spine.shear[e]); },
        [&](bool l) { return turn_matrix(l); }, [&](long p, long k) { return rotation_matrix(p, k); });
}

Mat2s evaluate_word_symbolic(const PathWord& word, const Spine& spine, const FieldPtr& field) {
    return evaluate_generic(
        word, spine, Mat2s::identity(spine.edge_count(), field),
        [&](int e) { return edge_matrix_symbolic(spine, field, e); },
        [&](bool l) { return turn_matrix_symbolic(spine, field, l); },
        [&](long p, long k) { return rotation_matrix_symbolic(spine, field, p, k); });
}

GeodesicValue geodesic_function(const PathWord& word, const Spine& spine) {
    if (!word.closed) throw std::invalid_argument("geodesic function requires a closed word");
    GeodesicValue v;
    v.G = evaluate_word(word, spine).trace();
    if (v.G >= 2.0) v.length = 2.0 * std::acosh(v.G / 2.0);
    return v;
}

LaurentPoly geodesic_function_symbolic(const PathWord& word, const Spine& spine,
                                       const FieldPtr& field) {
    if (!word.closed) throw std::invalid_argument("geodesic function requires a closed word");
    return evaluate_word_symbolic(word, spine, field).trace();
}

PathWord boundary_word(const Spine& spine, const std::vector<int>& face_walk) {
    PathWord w;
    for (int h : face_walk) {
        w.tokens.push_back(cross_token(Spine::edge_of(h)));
        w.tokens.push_back(turn_token(false)); // sigma steps are right turns
    }
    return w;
}

std::optional<PathWord> random_closed_word(const Spine& spine, SplitMix64& rng,
                                           bool allow_rotations, int max_steps) {
    // arrival half-edges that sit at trivalent vertices are valid states
    std::vector<int> starts;
    for (int h = 0; h < spine.half_count(); ++h)
        if (spine.vertices[spine.vertex_of(h)].pending_order == 0) starts.push_back(h);
    if (starts.empty()) return std::nullopt;

    for (int attempt = 0; attempt < 32; ++attempt) {
        int h0 = starts[rng.next_below(starts.size())];
        PathWord w;
        w.tokens.push_back(cross_token(Spine::edge_of(h0)));
        int h = h0;
        for (int step = 0; step < max_steps; ++step) {
            bool left = rng.next_below(2) == 0;
            int depart = left ? spine.sigma2(h) : spine.sigma(h);
            int far = Spine::partner(depart);
            long p = spine.vertices[spine.vertex_of(far)].pending_order;
            if (p != 0) {
                if (!allow_rotations) {
                    // take the other branch; at a trivalent vertex it never
                    // leads back to the same pending edge
                    left = !left;
                    depart = left ? spine.sigma2(h) : spine.sigma(h);
                    far = Spine::partner(depart);
                    p = spine.vertices[spine.vertex_of(far)].pending_order;
                    if (p != 0) break; // both neighbours pending; give up this walk
                }
            }
            w.tokens.push_back(turn_token(left));
            w.tokens.push_back(cross_token(Spine::edge_of(depart)));
            h = far;
            if (p != 0) {
                long k = rng.next_int(1, p - 1);
                w.tokens.push_back(rotate_token(Spine::edge_of(h), k));
                w.tokens.push_back(cross_token(Spine::edge_of(h)));
                h = Spine::partner(h);
            }
            if (h == h0 && w.tokens.size() >= 4) {
                // close up: the final turn returns to the first crossing
                // only if the loop is consistent; realize_word checks it
                PathWord closed = w;
                closed.tokens.erase(closed.tokens.end() - 1); // drop duplicate first crossing
                if (closed.tokens.size() % 2 == 0 && realize_word(closed, spine)) return closed;
            }
        }
    }
    return std::nullopt;
}

FieldPtr spine_field(const Spine& spine) {
    std::set<long> orders;
    for (const auto& v : spine.vertices)
        if (v.pending_order != 0) orders.insert(v.pending_order);
    return CyclotomicField::for_orders(std::vector<long>(orders.begin(), orders.end()));
}

PgonShearData pgon_shear_data(long p, double phi) {
    if (p < 2) throw std::invalid_argument("pgon_shear_data: p >= 2 required");
    if (!(phi > 0 && phi < 2 * kPi / static_cast<double>(p)))
        throw std::invalid_argument("pgon_shear_data: phi out of (0, 2pi/p)");
    auto s = [&](double x) { return std::sin(x); };
    double P = static_cast<double>(p);
    PgonShearData d;
    d.Z = std::log(s(kPi / P - phi / 2) / s(phi / 2));
    d.Zk.resize(p);
    d.Zk[0] = d.Z + std::log(s(2 * kPi / P) / s(kPi / P));
    d.Zk[p - 1] = d.Z + std::log(s(kPi / P) / s(2 * kPi / P));
    for (long k = 2; k <= p - 1; ++k)
        d.Zk[k - 1] = d.Z + std::log(s((k - 1) * kPi / P) / s(k * kPi / P));
    for (long k = 2; k <= p - 2; ++k)
        d.Yk.push_back(std::log(s((k + 1) * kPi / P) / s((k - 1) * kPi / P)));
    return d;
}

namespace {

double max_abs_diff(const Mat2d& a, const Mat2d& b) {
    double r = 0;
    for (int i = 0; i < 4; ++i) r = std::max(r, std::abs(a.m[i] - b.m[i]));
    return r;
}

Mat2d fp_power(long p, long k, double extra_sign) {
    double w = 2.0 * std::cos(kPi / static_cast<double>(p));
    Mat2d F{{0, 1, -1, -w}};
    Mat2d acc{};
    for (long i = 0; i < k; ++i) acc = acc * F;
    for (auto& x : acc.m) x *= extra_sign;
    return acc;
}

} // namespace

IdentityReport verify_pgon_identities(long p, double phi, double tol) {
    IdentityReport rep;
    (void)tol;

    // exact part: F_p^p = (-1)^{p-1} E over Q(zeta_2p)
    auto field = CyclotomicField::for_orders({p});
    auto f = elliptic_generator(field, p);
    std::array<FieldElem, 4> acc = {field->one(), field->zero(), field->zero(), field->one()};
    for (long i = 0; i < p; ++i) {
        std::array<FieldElem, 4> nxt = {
            f[0] * acc[0] + f[1] * acc[2], f[0] * acc[1] + f[1] * acc[3],
            f[2] * acc[0] + f[3] * acc[2], f[2] * acc[1] + f[3] * acc[3]};
        acc = nxt;
    }
    FieldElem want = field->from_int(p % 2 == 0 ? -1 : 1);
    rep.exact_fp_power_ok = acc[0] == want && acc[3] == want && acc[1].is_zero() && acc[2].is_zero();

    if (p == 2) {
        // the chain degenerates: Z_1, Z_2 are infinite but the product has
        // the finite limit X_{2Z}
        auto d = pgon_shear_data(p, phi);
        Mat2d lhs = edge_matrix(d.Z) * fp_power(2, 1, 1.0) * edge_matrix(d.Z);
        double r = max_abs_diff(lhs, edge_matrix(2 * d.Z));
        rep.max_residual = r;
        rep.checked.push_back("X_Z F_2 X_Z = X_{2Z}");
        return rep;
    }

    auto d = pgon_shear_data(p, phi);
    auto XZ = edge_matrix(d.Z);
    auto X = [&](double z) { return edge_matrix(z); };
    Mat2d L = turn_matrix(true), R = turn_matrix(false);

    auto record = [&](const Mat2d& lhs, const Mat2d& rhs, std::string name) {
        rep.max_residual = std::max(rep.max_residual, max_abs_diff(lhs, rhs));
        rep.checked.push_back(std::move(name));
    };

    // X_Z F_p X_Z = X_{Z_1} L X_{Z_2}
    record(XZ * fp_power(p, 1, 1.0) * XZ, X(d.Zk[0]) * L * X(d.Zk[1]), "k=1 chain");

    // X_Z (-1)^{k-1} F_p^k X_Z = X_{Z_1} R X_{Y_2} R ... R X_{Y_k} L X_{Z_{k+1}}
    for (long k = 2; k <= p - 2; ++k) {
        double sgn = (k % 2 == 0) ? -1.0 : 1.0;
        Mat2d rhs = X(d.Zk[0]);
        for (long j = 2; j <= k; ++j) rhs = rhs * R * X(d.Yk[j - 2]);
        rhs = rhs * L * X(d.Zk[k]);
        record(XZ * fp_power(p, k, sgn) * XZ, rhs, "k=" + std::to_string(k) + " chain");
    }

    // X_Z (-1)^p F_p^{p-1} X_Z = X_{Z_1} R X_{Y_2} R ... R X_{Y_{p-2}} R X_{Z_p}
    {
        double sgn = (p % 2 == 0) ? 1.0 : -1.0;
        Mat2d rhs = X(d.Zk[0]);
        for (long j = 2; j <= p - 2; ++j) rhs = rhs * R * X(d.Yk[j - 2]);
        rhs = rhs * R * X(d.Zk[p - 1]);
        record(XZ * fp_power(p, p - 1, sgn) * XZ, rhs, "k=p-1 chain");
    }

    // single-rotation equivalences along the fan
    for (long k = 2; k <= p - 2; ++k)
        record(XZ * fp_power(p, 1, 1.0) * XZ, X(d.Zk[k - 1]) * L * X(d.Yk[k - 2]) * L * X(d.Zk[k]),
               "k=" + std::to_string(k) + " single-rotation");
    record(XZ * fp_power(p, 1, 1.0) * XZ, X(d.Zk[p - 2]) * L * X(d.Zk[p - 1]), "tail single-rotation");

    return rep;
}

} // namespace orbicluster
