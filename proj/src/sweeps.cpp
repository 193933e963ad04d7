#include "orbicluster/sweeps.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace orbicluster {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

CcPrimeSweepResult cc_prime_sweep(long p, const SweepOptions& opt) {
    CcPrimeSweepResult res;
    res.samples.resize(opt.samples);
#pragma omp parallel for schedule(dynamic) if (opt.parallel)
    for (int i = 0; i < opt.samples; ++i) {
        SplitMix64 rng = item_rng(opt.seed, static_cast<std::uint64_t>(i));
        double phi = rng.next_double(1e-3, 2 * kPi / static_cast<double>(p) - 1e-3);
        double h = rng.next_double(0.1, 4.0);
        double hp = rng.next_double(0.1, 4.0);
        auto rep = verify_cc_prime(p, phi, h, hp, opt.tol);
        res.samples[i] = CcPrimeSample{p, phi, h, hp, rep.a, rep.b, rep.c, rep.c_prime, rep.residual};
    }
    for (const auto& s : res.samples) {
        res.max_residual = std::max(res.max_residual, s.residual);
        res.ok = res.ok && s.residual < opt.tol;
    }
    return res;
}

IdentitySweepResult identity_sweep(long p, const SweepOptions& opt) {
    IdentitySweepResult res;
    res.samples = opt.samples;
    std::vector<double> residuals(opt.samples, 0.0);
    std::vector<char> exact(opt.samples, 1);
#pragma omp parallel for schedule(dynamic) if (opt.parallel)
    for (int i = 0; i < opt.samples; ++i) {
        SplitMix64 rng = item_rng(opt.seed, static_cast<std::uint64_t>(i));
        double phi = rng.next_double(1e-3, 2 * kPi / static_cast<double>(p) - 1e-3);
        auto rep = verify_pgon_identities(p, phi, opt.tol);
        residuals[i] = rep.max_residual;
        exact[i] = rep.exact_fp_power_ok ? 1 : 0;
    }
    for (int i = 0; i < opt.samples; ++i) {
        res.max_residual = std::max(res.max_residual, residuals[i]);
        res.exact_fp_power_ok = res.exact_fp_power_ok && exact[i];
    }
    res.ok = res.exact_fp_power_ok && res.max_residual < opt.tol;
    return res;
}

LaurentSweepResult laurent_sweep(int sequences, int max_length, const RandomSeedParams& params,
                                 const SweepOptions& opt) {
    LaurentSweepResult res;
    res.sequences = sequences;
    // one field per listed order; each seed draws its tuples over one omega
    std::vector<FieldPtr> fields;
    for (long p : params.omega_orders) fields.push_back(CyclotomicField::for_orders({p}));
    if (fields.empty()) fields.push_back(CyclotomicField::make(1));
    std::vector<LaurentReport> reports(sequences);
#pragma omp parallel for schedule(dynamic) if (opt.parallel)
    for (int i = 0; i < sequences; ++i) {
        SplitMix64 rng = item_rng(opt.seed, static_cast<std::uint64_t>(i));
        RandomSeedParams local = params;
        size_t pick = rng.next_below(fields.size());
        local.omega_orders = {params.omega_orders.empty() ? 0 : params.omega_orders[pick]};
        if (params.omega_orders.empty()) local.omega_orders.clear();
        GenSeed seed = random_reciprocal_seed(rng, local, fields[pick]);
        int len = static_cast<int>(rng.next_int(1, max_length));
        std::vector<int> dirs(len);
        for (int j = 0; j < len; ++j) dirs[j] = static_cast<int>(rng.next_below(seed.n));
        reports[i] = check_laurent(seed, dirs);
    }
    for (int i = 0; i < sequences; ++i) {
        const auto& r = reports[i];
        res.mutations += r.mutations;
        res.max_terms = std::max(res.max_terms, r.max_terms);
        res.max_coeff_bits = std::max(res.max_coeff_bits, r.max_coeff_bits);
        if (!r.ok) {
            res.ok = false;
            res.failures.push_back("sequence " + std::to_string(i) + ": " + r.failure);
        }
    }
    return res;
}

namespace {

bool symbolic_hyperbolicity_ok(const PathWord& word, const Spine& spine) {
    auto field = CyclotomicField::make(1);
    LaurentPoly tr = geodesic_function_symbolic(word, spine, field);
    // positive integer coefficients
    for (const auto& [e, c] : tr.terms()) {
        (void)e;
        if (!c.is_rational()) return false;
        Rational q = c.rational_value();
        if (q <= 0 || q.get_den() != 1) return false;
    }
    // the extreme monomials e^{+sum Z/2}, e^{-sum Z/2} with unit coefficient
    ExpVec counts(spine.edge_count(), 0);
    for (const auto& t : word.tokens)
        if (t.kind == Token::Kind::Cross) counts[t.edge] += 1;
    ExpVec neg = counts;
    for (auto& v : neg) v = -v;
    auto it_hi = tr.terms().find(counts);
    auto it_lo = tr.terms().find(neg);
    if (it_hi == tr.terms().end() || it_lo == tr.terms().end()) return false;
    return it_hi->second.is_one() && it_lo->second.is_one();
}

} // namespace

HyperbolicitySweepResult hyperbolicity_sweep(int words, const SweepOptions& opt) {
    HyperbolicitySweepResult res;
    res.words = words;
    std::vector<HyperbolicitySample> samples(words);
#pragma omp parallel for schedule(dynamic) if (opt.parallel)
    for (int i = 0; i < words; ++i) {
        SplitMix64 rng = item_rng(opt.seed, static_cast<std::uint64_t>(i));
        HyperbolicitySample s;
        s.G = 2.0;
        for (int attempt = 0; attempt < 16; ++attempt) {
            Spine spine = random_spine(rng);
            auto w = random_closed_word(spine, rng, /*allow_rotations=*/false);
            if (!w) continue;
            s.G = geodesic_function(*w, spine).G;
            s.symbolic_ok = symbolic_hyperbolicity_ok(*w, spine);
            break;
        }
        samples[i] = s;
    }
    res.min_G = samples.empty() ? 2.0 : samples[0].G;
    for (const auto& s : samples) {
        res.min_G = std::min(res.min_G, s.G);
        if (!s.symbolic_ok) ++res.symbolic_failures;
    }
    res.ok = res.min_G >= 2.0 - opt.tol && res.symbolic_failures == 0;
    return res;
}

PositivitySearchResult positivity_search(long p, std::size_t depth) {
    PositivitySearchResult res;
    res.p = p;
    GenSeed seed = rank2_orbifold_seed(p);
    auto names = seed.all_names();

    std::set<std::string> seen_clusters{seed.cluster_key()};
    std::set<std::string> seen_vars;
    std::deque<std::pair<GenSeed, std::size_t>> frontier{{seed, 0}};
    std::vector<LaurentPoly> variables(seed.cluster.begin(), seed.cluster.end());
    for (const auto& x : seed.cluster) seen_vars.insert(x.to_string(names));

    while (!frontier.empty()) {
        auto [cur, d] = std::move(frontier.front());
        frontier.pop_front();
        if (d >= depth) continue;
        for (int k = 0; k < cur.n; ++k) {
            GenSeed next = generalized_mutate(cur, k);
            for (const auto& x : next.cluster)
                if (seen_vars.insert(x.to_string(names)).second) variables.push_back(x);
            if (seen_clusters.insert(next.cluster_key()).second)
                frontier.emplace_back(std::move(next), d + 1);
        }
    }

    res.variables = variables.size();
    for (const auto& x : variables) {
        auto rep = positivity_report(x, {p});
        PositivityVariable pv;
        pv.text = x.to_string(names);
        pv.embed_positive = rep.all_embed_positive;
        pv.integer_cone = rep.all_nonneg_integer_cone;
        res.all_embed_positive = res.all_embed_positive && pv.embed_positive;
        res.all_integer_cone = res.all_integer_cone && pv.integer_cone;
        if (!pv.embed_positive) res.counterexamples.push_back(pv);
        res.report.push_back(std::move(pv));
    }
    return res;
}

PoissonSuiteResult poisson_suite(int spines, const SweepOptions& opt) {
    PoissonSuiteResult res;
    res.spines = spines;
    std::vector<std::string> fails(spines);
#pragma omp parallel for schedule(dynamic) if (opt.parallel)
    for (int i = 0; i < spines; ++i) {
        SplitMix64 rng = item_rng(opt.seed, static_cast<std::uint64_t>(i));
        Spine s = random_spine(rng);
        std::string fail;
        auto val = validate(s);
        if (!val.ok) fail = "spine invalid: " + val.violations.front();
        auto B = poisson_matrix(s);
        const int E = s.edge_count();
        for (int a = 0; a < E && fail.empty(); ++a)
            for (int b = 0; b < E; ++b)
                if (B[a][b] != -B[b][a]) { fail = "matrix not skew-symmetric"; break; }
        auto center = poisson_center(s);
        if (fail.empty() && static_cast<long>(center.size()) != s.holes)
            fail = "center count != s";
        for (const auto& v : center) {
            for (int a = 0; a < E && fail.empty(); ++a) {
                long acc = 0;
                for (int b = 0; b < E; ++b) acc += B[a][b] * v[b];
                if (acc != 0) fail = "boundary vector not in kernel";
            }
        }
        if (fail.empty() && rational_rank(B) != E - s.holes)
            fail = "kernel dimension != s";
        if (fail.empty() && rational_rank(center) != static_cast<int>(s.holes))
            fail = "boundary vectors not independent";
        // flip compatibility on one random flippable edge
        if (fail.empty()) {
            std::vector<int> cands;
            for (int e = 0; e < E; ++e)
                if (!s.is_pending_edge(e) && s.vertex_of(2 * e) != s.vertex_of(2 * e + 1))
                    cands.push_back(e);
            if (!cands.empty()) {
                int e = cands[rng.next_below(cands.size())];
                auto [s2, rec] = flip_inner(s, e);
                (void)rec;
                if (spine_exchange_matrix(s2) != matrix_mutate_raw(spine_exchange_matrix(s), e))
                    fail = "flip does not act by matrix mutation";
            }
        }
        fails[i] = std::move(fail);
    }
    for (int i = 0; i < spines; ++i)
        if (!fails[i].empty()) {
            res.ok = false;
            res.failures.push_back("spine " + std::to_string(i) + ": " + fails[i]);
        }
    return res;
}

MoveInvarianceSuiteResult move_invariance_suite(const Spine& spine, int n_words,
                                                const SweepOptions& opt) {
    MoveInvarianceSuiteResult res;
    SplitMix64 rng(opt.seed);
    std::vector<PathWord> words;
    bool has_pending = false;
    for (const auto& v : spine.vertices) has_pending = has_pending || v.pending_order != 0;
    while (static_cast<int>(words.size()) < n_words) {
        auto w = random_closed_word(spine, rng, has_pending);
        if (w) words.push_back(std::move(*w));
        else break;
    }
    res.words = words.size();

    auto run = [&](const MoveRecord& rec, const std::string& name) {
        auto rep = check_move_invariance(spine, words, rec, opt.tol);
        res.max_relative_error = std::max(res.max_relative_error, rep.max_relative_error);
        ++res.moves;
        if (!rep.ok) {
            res.ok = false;
            for (const auto& f : rep.failures) res.failures.push_back(name + ": " + f);
        }
    };

    for (int e = 0; e < spine.edge_count(); ++e) {
        if (spine.is_pending_edge(e)) {
            auto [s2, rec] = flip_pending(spine, e);
            (void)s2;
            run(rec, "pending flip " + std::to_string(e));
            auto hole = pending_flip_via_hole(spine, e);
            res.max_hole_flip_disagreement =
                std::max(res.max_hole_flip_disagreement, hole.max_disagreement);
            if (hole.max_disagreement >= 1e-12) {
                res.ok = false;
                res.failures.push_back("hole-construction flip disagrees on edge " + std::to_string(e));
            }
        } else if (spine.vertex_of(2 * e) != spine.vertex_of(2 * e + 1)) {
            auto [s2, rec] = flip_inner(spine, e);
            (void)s2;
            run(rec, "inner flip " + std::to_string(e));
        }
    }
    for (const auto& site : spiral_sites(spine)) {
        auto [s2, rec] = invert_spiral(spine, site);
        (void)s2;
        run(rec, "spiral inversion at face " + std::to_string(site.face));
    }
    return res;
}

} // namespace orbicluster
