#include "orbicluster/cluster.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

namespace orbicluster {

void ExchangeMatrix::validate() const {
    const int n = size();
    if (static_cast<int>(d.size()) != n) throw std::invalid_argument("d-vector size mismatch");
    for (long dk : d)
        if (dk <= 0) throw std::invalid_argument("skew-symmetrizer entries must be positive");
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(b[i].size()) != n) throw std::invalid_argument("exchange matrix not square");
        for (int j = 0; j < n; ++j) {
            if (b[i][j] * d[j] != -b[j][i] * d[i])
                throw std::invalid_argument("matrix is not skew-symmetrizable at (" + std::to_string(i) +
                                            "," + std::to_string(j) + ")");
            if (b[i][j] % d[i] != 0)
                throw std::invalid_argument("row " + std::to_string(i) + " not divisible by d_" +
                                            std::to_string(i));
        }
    }
}

std::vector<std::vector<long>> matrix_mutate_raw(const std::vector<std::vector<long>>& b, int k) {
    const int n = static_cast<int>(b.size());
    if (k < 0 || k >= n) throw std::invalid_argument("mutation direction out of range");
    std::vector<std::vector<long>> out(n, std::vector<long>(n, 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == k || j == k) out[i][j] = -b[i][j];
            else out[i][j] = b[i][j] + (std::abs(b[i][k]) * b[k][j] + b[i][k] * std::abs(b[k][j])) / 2;
        }
    return out;
}

ExchangeMatrix matrix_mutate(const ExchangeMatrix& m, int k) {
    ExchangeMatrix out{matrix_mutate_raw(m.b, k), m.d};
    out.validate();
    return out;
}

std::vector<std::string> GenSeed::all_names() const {
    std::vector<std::string> names = var_names;
    names.insert(names.end(), gen_names.begin(), gen_names.end());
    return names;
}

void GenSeed::validate() const {
    mat.validate();
    if (mat.size() != n) throw std::invalid_argument("matrix size differs from cluster rank");
    if (static_cast<int>(cluster.size()) != n) throw std::invalid_argument("cluster size mismatch");
    if (static_cast<int>(theta.size()) != n) throw std::invalid_argument("theta tuple count mismatch");
    for (int i = 0; i < n; ++i) {
        if (static_cast<long>(theta[i].size()) != mat.d[i] + 1)
            throw std::invalid_argument("theta tuple " + std::to_string(i) + " must have d_i+1 entries");
        for (const auto& t : theta[i]) {
            if (!t.is_monomial())
                throw std::invalid_argument("theta coefficients must be unit monomials");
            const auto& e = t.terms().begin()->first;
            for (int v = 0; v < n; ++v)
                if (e[v] != 0)
                    throw std::invalid_argument("theta coefficients may not involve cluster variables");
        }
    }
    if (mode == CoeffMode::Fixed) {
        for (int i = 0; i < n; ++i)
            for (long l = 0; l <= mat.d[i]; ++l)
                if (!(theta[i][l] == theta[i][mat.d[i] - l]))
                    throw std::invalid_argument("fixed-coefficient mode requires reciprocal tuples");
    }
}

std::string GenSeed::cluster_string() const {
    std::ostringstream os;
    auto names = all_names();
    for (int i = 0; i < n; ++i) {
        if (i) os << " ; ";
        os << cluster[i].to_string(names);
    }
    return os.str();
}

std::string GenSeed::cluster_key() const {
    auto names = all_names();
    std::vector<std::string> parts;
    for (const auto& x : cluster) parts.push_back(x.to_string(names));
    std::sort(parts.begin(), parts.end());
    std::string key;
    for (const auto& p : parts) key += p + " ; ";
    return key;
}

bool GenSeed::operator==(const GenSeed& rhs) const {
    if (n != rhs.n || mode != rhs.mode || !(mat == rhs.mat)) return false;
    for (int i = 0; i < n; ++i)
        if (!(cluster[i] == rhs.cluster[i])) return false;
    for (int i = 0; i < n; ++i)
        for (size_t l = 0; l < theta[i].size(); ++l)
            if (!(theta[i][l] == rhs.theta[i][l])) return false;
    return true;
}

namespace {

// Divide a monomial tuple by its monomial content: after this, for every
// variable some entry has exponent zero and none is negative-shifted.
void content_normalize(std::vector<LaurentPoly>& tuple, int arity) {
    if (tuple.empty()) return;
    ExpVec mins(arity, 0);
    bool first = true;
    for (const auto& t : tuple) {
        const auto& e = t.terms().begin()->first;
        for (int v = 0; v < arity; ++v) mins[v] = first ? e[v] : std::min(mins[v], e[v]);
        first = false;
    }
    ExpVec shift(arity);
    bool trivial = true;
    for (int v = 0; v < arity; ++v) {
        shift[v] = -mins[v];
        trivial = trivial && shift[v] == 0;
    }
    if (trivial) return;
    for (auto& t : tuple) t = t.shifted(shift);
}

} // namespace

GenSeed generalized_mutate(const GenSeed& seed, int k) {
    seed.validate();
    const int n = seed.n;
    if (k < 0 || k >= n) throw std::invalid_argument("mutation direction out of range");
    const int arity = seed.arity();
    const long dk = seed.mat.d[k];

    // u-products of the current cluster, exponents beta_kl = b_kl / d_k
    LaurentPoly u_pos = LaurentPoly::constant(arity, seed.field->one());
    LaurentPoly u_neg = u_pos;
    for (int l = 0; l < n; ++l) {
        long beta = seed.mat.b[k][l] / dk;
        if (beta > 0) u_pos = u_pos * seed.cluster[l].pow(beta);
        else if (beta < 0) u_neg = u_neg * seed.cluster[l].pow(-beta);
    }

    std::vector<LaurentPoly> pos_pow(dk + 1), neg_pow(dk + 1);
    pos_pow[0] = neg_pow[0] = LaurentPoly::constant(arity, seed.field->one());
    for (long l = 1; l <= dk; ++l) {
        pos_pow[l] = pos_pow[l - 1] * u_pos;
        neg_pow[l] = neg_pow[l - 1] * u_neg;
    }
    LaurentPoly theta_val(arity, seed.field);
    for (long l = 0; l <= dk; ++l)
        theta_val = theta_val + seed.theta[k][l] * pos_pow[l] * neg_pow[dk - l];

    GenSeed out = seed;
    try {
        out.cluster[k] = exact_divide(theta_val, seed.cluster[k]);
    } catch (const InexactDivision& e) {
        throw InexactDivision(std::string("mutation in direction ") + std::to_string(k + 1) +
                              ": " + e.what());
    }
    out.mat = matrix_mutate(seed.mat, k);

    if (seed.mode == CoeffMode::Tracked) {
        // tuples of the other rows rescale by powers of an end coefficient
        // of theta_k; the mutated row reverses
        for (int i = 0; i < n; ++i) {
            if (i == k) continue;
            long bki = seed.mat.b[k][i];
            if (bki == 0) continue;
            long beta_ki = bki / dk;
            const LaurentPoly& base = bki > 0 ? seed.theta[k][0] : seed.theta[k][dk];
            LaurentPoly f = base.pow(beta_ki);
            const long di = seed.mat.d[i];
            for (long l = 0; l <= di; ++l)
                out.theta[i][l] = seed.theta[i][l] * f.pow(di - l);
            content_normalize(out.theta[i], arity);
        }
        std::reverse(out.theta[k].begin(), out.theta[k].end());
    }
    return out;
}

GenSeed standard_mutate(const GenSeed& seed, int k) {
    for (long dk : seed.mat.d)
        if (dk != 1) throw std::invalid_argument("standard mutation requires all d_i = 1");
    return generalized_mutate(seed, k);
}

std::vector<GenSeed> mutation_sequence(const GenSeed& seed, const std::vector<int>& dirs) {
    std::vector<GenSeed> out;
    out.reserve(dirs.size() + 1);
    out.push_back(seed);
    for (size_t i = 0; i < dirs.size(); ++i) {
        try {
            out.push_back(generalized_mutate(out.back(), dirs[i]));
        } catch (const InexactDivision& e) {
            std::string prefix;
            for (size_t j = 0; j <= i; ++j) prefix += (j ? "," : "") + std::to_string(dirs[j] + 1);
            throw InexactDivision(std::string(e.what()) + " [failing prefix " + prefix + "]");
        }
    }
    return out;
}

LaurentReport check_laurent(const GenSeed& seed, const std::vector<int>& dirs) {
    LaurentReport rep;
    GenSeed cur = seed;
    for (size_t i = 0; i < dirs.size(); ++i) {
        try {
            cur = generalized_mutate(cur, dirs[i]);
        } catch (const InexactDivision& e) {
            rep.ok = false;
            rep.failure = e.what();
            rep.failing_prefix.assign(dirs.begin(), dirs.begin() + i + 1);
            return rep;
        }
        ++rep.mutations;
        for (const auto& x : cur.cluster) {
            rep.max_terms = std::max(rep.max_terms, x.term_count());
            rep.max_coeff_bits = std::max(rep.max_coeff_bits, x.coeff_height_bits());
        }
    }
    return rep;
}

FiniteTypeReport finite_type_probe(const GenSeed& seed, std::size_t max_variables,
                                   std::size_t max_depth) {
    FiniteTypeReport rep;
    auto names = seed.all_names();
    std::set<std::string> clusters_seen;
    std::set<std::string> variables;
    for (const auto& x : seed.cluster) variables.insert(x.to_string(names));

    std::deque<std::pair<GenSeed, std::size_t>> frontier;
    frontier.emplace_back(seed, 0);
    clusters_seen.insert(seed.cluster_key());
    bool truncated = false;

    while (!frontier.empty()) {
        auto [cur, depth] = std::move(frontier.front());
        frontier.pop_front();
        if (depth >= max_depth) {
            truncated = true;
            continue;
        }
        for (int k = 0; k < cur.n; ++k) {
            GenSeed next = generalized_mutate(cur, k);
            for (const auto& x : next.cluster) variables.insert(x.to_string(names));
            if (variables.size() > max_variables) {
                rep.finite = std::nullopt;
                rep.cluster_count = clusters_seen.size();
                rep.variable_count = variables.size();
                return rep;
            }
            if (clusters_seen.insert(next.cluster_key()).second)
                frontier.emplace_back(std::move(next), depth + 1);
        }
    }
    if (truncated) rep.finite = std::nullopt;
    else rep.finite = true;
    rep.cluster_count = clusters_seen.size();
    rep.variable_count = variables.size();
    rep.variables.assign(variables.begin(), variables.end());
    return rep;
}

namespace {

GenSeed make_rank2(const FieldPtr& field, std::vector<std::string> gens, long d1,
                   std::vector<std::string> theta1, std::vector<std::string> theta2,
                   long b12, CoeffMode mode) {
    GenSeed s;
    s.field = field;
    s.n = 2;
    s.var_names = {"x", "y"};
    s.gen_names = std::move(gens);
    const int arity = s.arity();
    s.cluster = {LaurentPoly::variable(arity, field, 0), LaurentPoly::variable(arity, field, 1)};
    s.mat.b = {{0, b12}, {-b12 / d1, 0}};
    s.mat.d = {d1, 1};
    auto names = s.all_names();
    auto parse_tuple = [&](const std::vector<std::string>& strs) {
        std::vector<LaurentPoly> t;
        for (const auto& str : strs) t.push_back(LaurentPoly::parse(str, names, field));
        return t;
    };
    s.theta = {parse_tuple(theta1), parse_tuple(theta2)};
    s.mode = mode;
    s.validate();
    return s;
}

} // namespace

GenSeed a2_seed() {
    auto field = CyclotomicField::make(1);
    return make_rank2(field, {}, 1, {"1", "1"}, {"1", "1"}, -1, CoeffMode::Fixed);
}

GenSeed b2_seed() {
    // Initial data reproducing the published six-step cycle verbatim:
    // theta_1 = a u^2 + b uv + c v^2 stored low-to-high as (c, b, a); the
    // second tuple is seeded as (a*q, p) so that the first coefficient
    // mutation hands (q, p) to the first mu_2 step.
    auto field = CyclotomicField::make(1);
    return make_rank2(field, {"a", "b", "c", "p", "q"}, 2,
                      {"1 * c", "1 * b", "1 * a"}, {"1 * a q", "1 * p"}, -2, CoeffMode::Tracked);
}

GenSeed g2_seed() {
    auto field = CyclotomicField::make(1);
    return make_rank2(field, {"a", "b", "c", "d", "p", "q"}, 3,
                      {"1 * d", "1 * c", "1 * b", "1 * a"}, {"1 * a q", "1 * p"}, -3,
                      CoeffMode::Tracked);
}

GenSeed rank2_orbifold_seed(long p) {
    auto field = CyclotomicField::for_orders({p});
    GenSeed s;
    s.field = field;
    s.n = 2;
    s.var_names = {"x", "y"};
    const int arity = 2;
    s.cluster = {LaurentPoly::variable(arity, field, 0), LaurentPoly::variable(arity, field, 1)};
    s.mat.b = {{0, -2}, {1, 0}};
    s.mat.d = {2, 1};
    auto one = LaurentPoly::constant(arity, field->one());
    auto w = LaurentPoly::constant(arity, field->omega(p));
    s.theta = {{one, w, one}, {one, one}};
    s.mode = CoeffMode::Fixed;
    s.validate();
    return s;
}

namespace {

// expected cluster variable: numerator polynomial over a monomial denominator
LaurentPoly expected_var(const GenSeed& seed, const std::string& numerator,
                         const std::string& denominator) {
    auto names = seed.all_names();
    LaurentPoly num = LaurentPoly::parse(numerator, names, seed.field);
    LaurentPoly den = LaurentPoly::parse(denominator, names, seed.field);
    return exact_divide(num, den);
}

} // namespace

Rank2CycleReport rank2_cycle(const std::string& type) {
    Rank2CycleReport rep;
    GenSeed seed;
    std::vector<std::pair<std::string, std::string>> expect; // numerator, denominator per step
    if (type == "A2") {
        seed = a2_seed();
        rep.period = 5;
        expect = {
            {"1 + 1 * y", "1 * x"},
            {"1 + 1 * x + 1 * y", "1 * x y"},
            {"1 + 1 * x", "1 * y"},
            {"1 * x", "1"},
            {"1 * y", "1"},
        };
    } else if (type == "B2") {
        seed = b2_seed();
        rep.period = 6;
        expect = {
            {"1 * a + 1 * b y + 1 * c y^2", "1 * x"},
            {"1 * p x + 1 * q a + 1 * b q y + 1 * c q y^2", "1 * x y"},
            {"1 * a^2 q^2 + 2 * a p q x + 1 * a c q^2 y^2 + 1 * a b q^2 y + 1 * b p q x y + "
             "1 * p^2 x^2",
             "1 * x y^2"},
            {"1 * q a + 1 * p x", "1 * y"},
            {"1 * x", "1"},
            {"1 * y", "1"},
        };
    } else if (type == "G2") {
        seed = g2_seed();
        rep.period = 8;
        expect = {
            {"1 * a + 1 * b y + 1 * c y^2 + 1 * d y^3", "1 * x"},
            {"1 * p x + 1 * a q + 1 * b q y + 1 * c q y^2 + 1 * d q y^3", "1 * x y"},
            {"1 * a^3 q^3 + 2 * a^2 c q^3 y^2 + 2 * a^2 d q^3 y^3 + 3 * a^2 p q^2 x + "
             "2 * a^2 b q^3 y + 2 * a b d q^3 y^4 + 3 * a p^2 q x^2 + 4 * a b p q^2 x y + "
             "1 * a c^2 q^3 y^4 + 2 * a c d q^3 y^5 + 1 * a d^2 q^3 y^6 + 3 * a c p q^2 x y^2 + "
             "3 * a d p q^2 x y^3 + 1 * a b^2 q^3 y^2 + 2 * a b c q^3 y^3 + 1 * b c p q^2 x y^3 + "
             "1 * b d p q^2 x y^4 + 1 * p^3 x^3 + 1 * b^2 p q^2 x y^2 + 2 * b p^2 q x^2 y + "
             "1 * p^2 c q x^2 y^2",
             "1 * x^2 y^3"},
            {"1 * q^2 a^2 + 1 * a b q^2 y + 1 * a c q^2 y^2 + 1 * a d q^2 y^3 + 2 * a p q x + "
             "1 * b p q x y + 1 * p^2 x^2",
             "1 * x y^2"},
            {"1 * a^2 d q^3 y^3 + 1 * a^2 c q^3 y^2 + 1 * a c p q^2 x y^2 + 1 * a^2 b q^3 y + "
             "2 * a b p q^2 x y + 1 * b p^2 q x^2 y + 1 * a^3 q^3 + 3 * a^2 p q^2 x + "
             "3 * a p^2 q x^2 + 1 * p^3 x^3",
             "1 * x y^3"},
            {"1 * p x + 1 * a q", "1 * y"},
            {"1 * x", "1"},
            {"1 * y", "1"},
        };
    } else {
        throw std::invalid_argument("rank2_cycle: type must be A2, B2 or G2");
    }

    const int steps = rep.period;
    auto names = seed.all_names();
    GenSeed cur = seed;
    for (int i = 0; i < steps; ++i) {
        int dir = i % 2;
        cur = generalized_mutate(cur, dir);
        rep.clusters.push_back(cur.cluster_string());
        const LaurentPoly& got = cur.cluster[dir];
        LaurentPoly want = expected_var(seed, expect[i].first, expect[i].second);
        if (!(got == want)) {
            rep.ok = false;
            rep.mismatches.push_back("step " + std::to_string(i + 1) + ": got " +
                                     got.to_string(names) + ", expected " + want.to_string(names));
        }
    }
    if (type == "A2") {
        // the pentagon returns the cluster as a set after 5 steps and the
        // seed exactly after 10
        rep.returned_to_initial = cur.cluster_key() == seed.cluster_key();
        for (int i = 5; i < 10; ++i) cur = generalized_mutate(cur, i % 2);
        rep.returned_to_initial = rep.returned_to_initial && cur == seed;
    } else {
        rep.returned_to_initial = cur == seed;
    }
    rep.ok = rep.ok && rep.returned_to_initial;
    return rep;
}

GenSeed random_reciprocal_seed(SplitMix64& rng, const RandomSeedParams& params, const FieldPtr& field) {
    const int n = static_cast<int>(rng.next_int(2, params.max_rank));
    GenSeed s;
    s.field = field;
    s.n = n;
    for (int i = 0; i < n; ++i) s.var_names.push_back("x" + std::to_string(i + 1));
    s.cluster.reserve(n);
    for (int i = 0; i < n; ++i) s.cluster.push_back(LaurentPoly::variable(n, field, i));

    // B = D * S with S skew-symmetric keeps rows divisible and the pair
    // skew-symmetrizable.  One coordinate carries the orbifold weight
    // d > 1 (the shape of the geometric seeds); unit quiver entries scaled
    // by d keep |b| within the bound while avoiding the doubly-exponential
    // seeds whose exact variables do not fit any runtime budget.
    s.mat.d.assign(n, 1);
    s.mat.d[rng.next_below(n)] = rng.next_int(1, params.max_d);
    s.mat.b.assign(n, std::vector<long>(n, 0));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            long sij = rng.next_int(-1, 1);
            if (std::max(s.mat.d[i], s.mat.d[j]) > params.max_abs_b) sij = 0;
            s.mat.b[i][j] = s.mat.d[i] * sij;
            s.mat.b[j][i] = -s.mat.d[j] * sij;
        }

    // Reciprocal tuples with unit ends: theta_i = u^d + ... + v^d.  The end
    // coefficients must be 1 for fixed tuples to satisfy the coefficient
    // mutation rule (the geometric (1, omega, 1) shape); interior entries
    // are free nonnegative combinations of 1 and the omegas.
    auto rand_coeff = [&]() {
        FieldElem c = field->from_int(rng.next_int(1, 3));
        if (!params.omega_orders.empty() && rng.next_below(2) == 0) {
            long p = params.omega_orders[rng.next_below(params.omega_orders.size())];
            c = c * field->omega(p);
        }
        return c;
    };
    s.theta.resize(n);
    for (int i = 0; i < n; ++i) {
        long di = s.mat.d[i];
        std::vector<FieldElem> half;
        half.push_back(field->one());
        for (long l = 1; l <= di / 2; ++l) half.push_back(rand_coeff());
        for (long l = 0; l <= di; ++l) {
            const FieldElem& c = half[std::min(l, di - l)];
            s.theta[i].push_back(LaurentPoly::constant(n, c));
        }
    }
    s.mode = CoeffMode::Fixed;
    s.validate();
    return s;
}

} // namespace orbicluster
