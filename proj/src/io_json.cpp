#include "orbicluster/io_json.hpp"

#include <fstream>

namespace orbicluster {

Json seed_to_json(const GenSeed& seed) {
    Json j;
    j["n"] = seed.n;
    j["B"] = seed.mat.b;
    j["d"] = seed.mat.d;
    auto names = seed.all_names();
    Json theta = Json::array();
    for (const auto& tuple : seed.theta) {
        Json t = Json::array();
        for (const auto& c : tuple) t.push_back(c.to_string(names));
        theta.push_back(std::move(t));
    }
    j["theta"] = std::move(theta);
    j["mode"] = seed.mode == CoeffMode::Fixed ? "fixed" : "tracked";
    if (seed.field->primary_omega_order() >= 2)
        j["omega_order"] = seed.field->primary_omega_order();
    if (!seed.gen_names.empty()) j["generators"] = seed.gen_names;
    if (!seed.var_names.empty()) j["variables"] = seed.var_names;
    return j;
}

GenSeed seed_from_json(const Json& j) {
    GenSeed s;
    s.n = j.at("n").get<int>();
    s.mat.b = j.at("B").get<std::vector<std::vector<long>>>();
    s.mat.d = j.at("d").get<std::vector<long>>();
    long omega_order = j.value("omega_order", 0L);
    s.field = omega_order >= 2 ? CyclotomicField::for_orders({omega_order})
                               : CyclotomicField::make(1);
    if (j.contains("generators")) s.gen_names = j.at("generators").get<std::vector<std::string>>();
    if (j.contains("variables")) s.var_names = j.at("variables").get<std::vector<std::string>>();
    else
        for (int i = 0; i < s.n; ++i) s.var_names.push_back("x" + std::to_string(i + 1));
    const int arity = s.arity();
    for (int i = 0; i < s.n; ++i) s.cluster.push_back(LaurentPoly::variable(arity, s.field, i));
    auto names = s.all_names();
    for (const auto& tuple : j.at("theta")) {
        std::vector<LaurentPoly> t;
        for (const auto& c : tuple) t.push_back(LaurentPoly::parse(c.get<std::string>(), names, s.field));
        s.theta.push_back(std::move(t));
    }
    std::string mode = j.value("mode", "fixed");
    if (mode != "fixed" && mode != "tracked") throw std::invalid_argument("mode must be fixed|tracked");
    s.mode = mode == "fixed" ? CoeffMode::Fixed : CoeffMode::Tracked;
    s.validate();
    return s;
}

Json spine_to_json(const Spine& spine) {
    Json j;
    j["surface"] = {{"g", spine.genus}, {"s", spine.holes}, {"r", spine.orbifold_points}};
    Json verts = Json::array();
    for (const auto& v : spine.vertices) {
        Json jv;
        if (v.pending_order != 0) {
            jv["pending"] = v.halves[0];
            jv["order"] = v.pending_order;
        } else {
            jv["cyclic"] = v.halves;
        }
        verts.push_back(std::move(jv));
    }
    j["vertices"] = std::move(verts);
    Json edges = Json::array();
    for (int e = 0; e < spine.edge_count(); ++e) {
        Json je;
        je["label"] = spine.label[e];
        je["Z"] = spine.shear[e];
        je["halves"] = {2 * e, 2 * e + 1};
        edges.push_back(std::move(je));
    }
    j["edges"] = std::move(edges);
    return j;
}

Spine spine_from_json(const Json& j) {
    Spine s;
    s.genus = j.at("surface").at("g").get<long>();
    s.holes = j.at("surface").at("s").get<long>();
    s.orbifold_points = j.at("surface").at("r").get<long>();
    for (const auto& je : j.at("edges")) {
        auto halves = je.at("halves").get<std::vector<int>>();
        if (halves.size() != 2 || halves[0] / 2 != halves[1] / 2 || halves[0] + 1 != halves[1])
            throw std::invalid_argument("edge halves must be the pair {2e, 2e+1}");
        s.shear.push_back(je.at("Z").get<double>());
        s.label.push_back(je.at("label").get<long>());
    }
    for (const auto& jv : j.at("vertices")) {
        Spine::Vertex v;
        if (jv.contains("pending")) {
            v.halves = {jv.at("pending").get<int>()};
            v.pending_order = jv.at("order").get<long>();
        } else {
            v.halves = jv.at("cyclic").get<std::vector<int>>();
        }
        s.vertices.push_back(std::move(v));
    }
    s.reindex();
    return s;
}

Json word_to_json(const PathWord& word) {
    Json toks = Json::array();
    for (const auto& t : word.tokens) {
        switch (t.kind) {
            case Token::Kind::Cross: toks.push_back(Json{{"cross", t.edge}}); break;
            case Token::Kind::TurnL: toks.push_back(Json{{"turn", "L"}}); break;
            case Token::Kind::TurnR: toks.push_back(Json{{"turn", "R"}}); break;
            case Token::Kind::Rotate:
                toks.push_back(Json{{"rotate", {{"edge", t.edge}, {"k", t.winding}}}});
                break;
        }
    }
    Json j;
    j["tokens"] = std::move(toks);
    j["closed"] = word.closed;
    return j;
}

PathWord word_from_json(const Json& j) {
    PathWord w;
    w.closed = j.value("closed", true);
    for (const auto& jt : j.at("tokens")) {
        if (jt.contains("cross")) w.tokens.push_back(cross_token(jt.at("cross").get<int>()));
        else if (jt.contains("turn"))
            w.tokens.push_back(turn_token(jt.at("turn").get<std::string>() == "L"));
        else if (jt.contains("rotate"))
            w.tokens.push_back(rotate_token(jt.at("rotate").at("edge").get<int>(),
                                            jt.at("rotate").at("k").get<long>()));
        else
            throw std::invalid_argument("unknown token in word file");
    }
    return w;
}

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    Json j;
    in >> j;
    return j;
}

void save_json_file(const std::string& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << j.dump(2) << "\n";
}

} // namespace orbicluster
