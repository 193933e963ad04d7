// Command-line front end: loads seeds/spines/words from JSON, runs the
// deterministic experiment drivers and emits human or JSON reports.
// Exit codes: 0 all checks passed, 1 check failure, 2 parse/usage error.

#include <cstdint>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "orbicluster/io_json.hpp"
#include "orbicluster/sweeps.hpp"

using namespace orbicluster;

namespace {

struct Common {
    std::uint64_t seed = 1;
    double tol = 1e-9;
    bool json = false;
    bool serial = false;
    std::string input;
    int depth = 8;
    int samples = 100;
    long p = 3;
};

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("--seed", c.seed, "RNG seed (SplitMix64 streams)");
    cmd->add_option("--tol", c.tol, "numeric tolerance");
    cmd->add_flag("--json", c.json, "emit a JSON report instead of text");
    cmd->add_flag("--serial", c.serial, "disable OpenMP and run the serial reference path");
    cmd->add_option("--input", c.input, "input file (JSON)");
    cmd->add_option("--depth", c.depth, "exploration depth");
    cmd->add_option("--samples", c.samples, "sample count for randomized sweeps");
    cmd->add_option("--p", c.p, "orbifold order");
}

SweepOptions sweep_opts(const Common& c) {
    SweepOptions o;
    o.seed = c.seed;
    o.samples = c.samples;
    o.tol = c.tol;
    o.parallel = !c.serial;
    return o;
}

int emit(const Common& c, const Json& report, bool ok) {
    if (c.json) {
        std::cout << report.dump(2) << "\n";
    } else {
        std::cout << (ok ? "PASS" : "FAIL") << " " << report.value("check", "") << "\n";
        for (auto& [k, v] : report.items()) {
            if (k == "check") continue;
            std::cout << "  " << k << ": " << v.dump() << "\n";
        }
    }
    return ok ? 0 : 1;
}

std::vector<int> parse_dirs(const std::string& text) {
    std::vector<int> dirs;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        int k = std::stoi(item);
        if (k < 1) throw std::invalid_argument("directions are 1-based");
        dirs.push_back(k - 1);
    }
    return dirs;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"generalized cluster algebras and orbifold spine geometry"};
    app.require_subcommand(1);
    Common c;

    std::string dirs_text, cycle_type = "B2", word_path, script_path;
    int nwords = 20;
    bool symbolic = false;
    std::string ps_text;

    auto* cmd_mutate = app.add_subcommand("mutate", "apply a mutation sequence to a seed file");
    add_common(cmd_mutate, c);
    cmd_mutate->add_option("--dirs", dirs_text, "comma-separated 1-based directions");

    auto* cmd_laurent = app.add_subcommand("check-laurent", "Laurent phenomenon sweep");
    add_common(cmd_laurent, c);
    int sweep_len = 10;
    cmd_laurent->add_option("--max-length", sweep_len, "max mutation sequence length");

    auto* cmd_pos = app.add_subcommand("check-positivity", "positivity search on rank-2 orbifold seeds");
    add_common(cmd_pos, c);
    cmd_pos->add_option("--orders", ps_text, "comma-separated orbifold orders (default 3,4,5,6)");

    auto* cmd_finite = app.add_subcommand("finite-type", "exchange-graph exploration of a seed");
    add_common(cmd_finite, c);
    std::size_t max_vars = 64;
    cmd_finite->add_option("--max-variables", max_vars, "variable budget before reporting unknown");

    auto* cmd_rank2 = app.add_subcommand("rank2-cycles", "A2/B2/G2 golden cycles");
    add_common(cmd_rank2, c);
    cmd_rank2->add_option("--type", cycle_type, "A2 | B2 | G2");

    auto* cmd_geo = app.add_subcommand("geodesic", "evaluate a word on a spine");
    add_common(cmd_geo, c);
    cmd_geo->add_option("--word", word_path, "word file (JSON)")->required();
    cmd_geo->add_flag("--symbolic", symbolic, "also print the symbolic trace");

    auto* cmd_ident = app.add_subcommand("verify-identities", "p-gon rotation/turn matrix identities");
    add_common(cmd_ident, c);

    auto* cmd_cc = app.add_subcommand("cc-prime", "lambda-length relation sweep (JSON lines)");
    add_common(cmd_cc, c);

    auto* cmd_poisson = app.add_subcommand("poisson", "Poisson matrix, center and flip compatibility");
    add_common(cmd_poisson, c);
    int flip_edge = -1;
    cmd_poisson->add_option("--flip", flip_edge, "also flip this edge and check compatibility");

    auto* cmd_inv = app.add_subcommand("invariance", "move-invariance suite on a spine");
    add_common(cmd_inv, c);
    cmd_inv->add_option("--nwords", nwords, "random closed words to track");
    cmd_inv->add_option("--script", script_path, "move script file (JSON)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*cmd_mutate) {
            GenSeed seed = seed_from_json(load_json_file(c.input));
            auto dirs = parse_dirs(dirs_text);
            auto seeds = mutation_sequence(seed, dirs);
            Json rep;
            rep["check"] = "mutate";
            rep["steps"] = dirs.size();
            Json list = Json::array();
            for (const auto& s : seeds) list.push_back(seed_to_json(s));
            Json clusters = Json::array();
            for (const auto& s : seeds) clusters.push_back(s.cluster_string());
            rep["clusters"] = std::move(clusters);
            rep["final"] = seed_to_json(seeds.back());
            return emit(c, rep, true);
        }
        if (*cmd_laurent) {
            RandomSeedParams params;
            auto res = laurent_sweep(c.samples, sweep_len, params, sweep_opts(c));
            Json rep;
            rep["check"] = "laurent sweep";
            rep["sequences"] = res.sequences;
            rep["mutations"] = res.mutations;
            rep["max_terms"] = res.max_terms;
            rep["max_coeff_bits"] = res.max_coeff_bits;
            rep["failures"] = res.failures;
            return emit(c, rep, res.ok);
        }
        if (*cmd_pos) {
            std::vector<long> orders = {3, 4, 5, 6};
            if (!ps_text.empty()) {
                orders.clear();
                for (int d : parse_dirs(ps_text)) orders.push_back(d + 1);
            }
            Json rep;
            rep["check"] = "positivity search";
            bool ok = true;
            Json per = Json::array();
            for (long p : orders) {
                auto res = positivity_search(p, static_cast<std::size_t>(c.depth));
                Json jp;
                jp["p"] = p;
                jp["variables"] = res.variables;
                jp["all_embed_positive"] = res.all_embed_positive;
                jp["all_integer_cone"] = res.all_integer_cone; // reported, not asserted
                Json cex = Json::array();
                for (const auto& v : res.counterexamples) cex.push_back(v.text);
                jp["counterexamples"] = std::move(cex);
                ok = ok && res.all_embed_positive;
                per.push_back(std::move(jp));
            }
            rep["orders"] = std::move(per);
            return emit(c, rep, ok);
        }
        if (*cmd_finite) {
            GenSeed seed = seed_from_json(load_json_file(c.input));
            auto res = finite_type_probe(seed, max_vars, static_cast<std::size_t>(c.depth));
            Json rep;
            rep["check"] = "finite type probe";
            rep["finite"] = res.finite ? Json(*res.finite) : Json("unknown");
            rep["clusters"] = res.cluster_count;
            rep["variables"] = res.variable_count;
            return emit(c, rep, true);
        }
        if (*cmd_rank2) {
            auto res = rank2_cycle(cycle_type);
            Json rep;
            rep["check"] = "rank-2 cycle " + cycle_type;
            rep["period"] = res.period;
            rep["returned_to_initial"] = res.returned_to_initial;
            rep["clusters"] = res.clusters;
            rep["mismatches"] = res.mismatches;
            return emit(c, rep, res.ok);
        }
        if (*cmd_geo) {
            Spine spine = spine_from_json(load_json_file(c.input));
            PathWord word = word_from_json(load_json_file(word_path));
            auto g = geodesic_function(word, spine);
            Json rep;
            rep["check"] = "geodesic function";
            rep["G"] = g.G;
            if (g.length) rep["length"] = *g.length;
            if (symbolic) {
                auto field = spine_field(spine);
                auto tr = geodesic_function_symbolic(word, spine, field);
                std::vector<std::string> names;
                for (int e = 0; e < spine.edge_count(); ++e)
                    names.push_back("l" + std::to_string(spine.label[e]));
                rep["trace"] = tr.to_string(names);
            }
            return emit(c, rep, true);
        }
        if (*cmd_ident) {
            auto res = identity_sweep(c.p, sweep_opts(c));
            Json rep;
            rep["check"] = "p-gon identities, p=" + std::to_string(c.p);
            rep["samples"] = res.samples;
            rep["max_residual"] = res.max_residual;
            rep["fp_power_exact"] = res.exact_fp_power_ok;
            return emit(c, rep, res.ok);
        }
        if (*cmd_cc) {
            auto res = cc_prime_sweep(c.p, sweep_opts(c));
            if (c.json) {
                for (const auto& s : res.samples) {
                    Json line;
                    line["p"] = s.p;
                    line["phi"] = s.phi;
                    line["h"] = s.h;
                    line["h_prime"] = s.h_prime;
                    line["a"] = s.a;
                    line["b"] = s.b;
                    line["c"] = s.c;
                    line["c_prime"] = s.c_prime;
                    line["residual"] = s.residual;
                    std::cout << line.dump() << "\n";
                }
            }
            Json rep;
            rep["check"] = "cc-prime sweep, p=" + std::to_string(c.p);
            rep["samples"] = res.samples.size();
            rep["max_residual"] = res.max_residual;
            if (!c.json) return emit(c, rep, res.ok);
            return res.ok ? 0 : 1;
        }
        if (*cmd_poisson) {
            Spine spine = spine_from_json(load_json_file(c.input));
            auto val = validate(spine);
            auto B = poisson_matrix(spine);
            auto center = poisson_center(spine);
            Json rep;
            rep["check"] = "poisson structure";
            rep["valid"] = val.ok;
            rep["violations"] = val.violations;
            rep["matrix"] = B;
            rep["center"] = center;
            rep["rank"] = rational_rank(B);
            bool ok = val.ok && rational_rank(B) == spine.edge_count() - spine.holes;
            if (flip_edge >= 0) {
                auto [s2, rec] = spine.is_pending_edge(flip_edge) ? flip_pending(spine, flip_edge)
                                                                  : flip_inner(spine, flip_edge);
                (void)rec;
                bool compat = spine_exchange_matrix(s2) ==
                              matrix_mutate_raw(spine_exchange_matrix(spine), flip_edge);
                rep["flip_compatible"] = compat;
                ok = ok && compat;
            }
            return emit(c, rep, ok);
        }
        if (*cmd_inv) {
            Spine spine = spine_from_json(load_json_file(c.input));
            Json rep;
            bool ok = true;
            if (!script_path.empty()) {
                // replay a move script, checking invariance move by move
                Json script = load_json_file(script_path);
                SweepOptions opts = sweep_opts(c);
                SplitMix64 rng(opts.seed);
                std::vector<PathWord> words;
                bool pend = spine.orbifold_points > 0;
                for (int i = 0; i < nwords; ++i)
                    if (auto w = random_closed_word(spine, rng, pend)) words.push_back(*w);
                Json moves = Json::array();
                Spine cur = spine;
                for (const auto& mv : script.at("moves")) {
                    std::string kind = mv.at("kind").get<std::string>();
                    MoveRecord rec;
                    if (kind == "flip") {
                        auto [s2, r] = flip_inner(cur, mv.at("target").get<int>());
                        rec = r;
                        cur = s2;
                    } else if (kind == "flip_pending") {
                        auto [s2, r] = flip_pending(cur, mv.at("target").get<int>());
                        rec = r;
                        cur = s2;
                    } else if (kind == "invert_spiral") {
                        auto sites = spiral_sites(cur);
                        int loop = mv.at("target").get<int>();
                        bool found = false;
                        for (const auto& site : sites)
                            if (site.loop_edge == loop) {
                                auto [s2, r] = invert_spiral(cur, site);
                                rec = r;
                                cur = s2;
                                found = true;
                            }
                        if (!found) throw std::invalid_argument("no spiral site at that loop edge");
                    } else {
                        throw std::invalid_argument("unknown move kind " + kind);
                    }
                    auto ir = check_move_invariance(rec.before, words, rec, c.tol);
                    Json jm;
                    jm["kind"] = kind;
                    jm["max_relative_error"] = ir.max_relative_error;
                    jm["ok"] = ir.ok;
                    jm["failures"] = ir.failures;
                    ok = ok && ir.ok;
                    moves.push_back(std::move(jm));
                    std::vector<PathWord> next;
                    for (const auto& w : words) next.push_back(transport_path(w, rec));
                    words = std::move(next);
                }
                rep["check"] = "move script invariance";
                rep["moves"] = std::move(moves);
            } else {
                auto res = move_invariance_suite(spine, nwords, sweep_opts(c));
                rep["check"] = "move invariance suite";
                rep["words"] = res.words;
                rep["moves"] = res.moves;
                rep["max_relative_error"] = res.max_relative_error;
                rep["hole_flip_disagreement"] = res.max_hole_flip_disagreement;
                rep["failures"] = res.failures;
                ok = res.ok;
            }
            return emit(c, rep, ok);
        }
    } catch (const InexactDivision& e) {
        std::cerr << "laurent violation: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
