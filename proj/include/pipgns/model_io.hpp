#pragma once

#include "pipgns/expr_parse.hpp"
#include "pipgns/model.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace pipgns {

/// Unreadable, malformed or schema-violating model input.
class ModelError : public Error {
public:
    using Error::Error;
};

/// A functional-derived B-weight whose construction checks failed.
class ConstructionFailure : public Error {
public:
    ConstructionFailure(const std::string& what, Report r) : Error(what), report(std::move(r)) {}
    Report report;
};

using json = nlohmann::ordered_json;

namespace io {

inline const json& member(const json& j, const std::string& key, const std::string& path) {
    if (!j.is_object()) throw ModelError(path + ": expected an object");
    auto it = j.find(key);
    if (it == j.end()) throw ModelError(path + ": missing required key '" + key + "'");
    return *it;
}

inline std::string text_of(const json& j, const std::string& path) {
    if (!j.is_string()) throw ModelError(path + ": expected a string");
    return j.get<std::string>();
}

class Reader {
public:
    explicit Reader(const Ambient& amb) : amb_(amb) {}

    void define(const std::string& name, Sequence s) { names_[name] = std::move(s); }

    Sequence sequence(const json& j, const std::string& path) const {
        Sequence s = literal(j, path);
        if (amb_.is_finite() && s.max_index() > amb_.dim)
            throw ModelError(path + ": literal uses coordinates beyond dimension " + std::to_string(amb_.dim));
        if (amb_.is_finite() && !s.eventually_zero()) throw ModelError(path + ": finite backend literals must be finitely supported");
        return s;
    }

    Scalar scalar(const json& j, const std::string& path) const {
        auto c = detail::as_constant(literal(j, path));
        if (!c) throw ModelError(path + ": expected a constant");
        return *c;
    }

    Sequence literal(const json& j, const std::string& path) const {
        const std::string t = text_of(j, path);
        NameResolver res = [this](const std::string& n) -> std::optional<Sequence> {
            auto it = names_.find(n);
            if (it == names_.end()) return std::nullopt;
            return it->second;
        };
        Sequence s;
        try {
            s = parse_sequence(t, res);
        } catch (const ParseError& e) {
            throw ModelError(path + ": " + e.what());
        } catch (const UnsupportedError& e) {
            throw ModelError(path + ": " + e.what());
        }
        return s;
    }

    Subspace subspace(const json& j, const std::string& path) const {
        bool phi = false;
        if (j.contains("phi")) {
            if (!j["phi"].is_boolean()) throw ModelError(path + "/phi: expected a boolean");
            phi = j["phi"].get<bool>();
        }
        if (phi && amb_.is_finite()) throw ModelError(path + "/phi: the finite backend has no phi");
        std::vector<Sequence> g;
        if (j.contains("span")) {
            const json& sp = j["span"];
            if (!sp.is_array()) throw ModelError(path + "/span: expected an array");
            for (std::size_t k = 0; k < sp.size(); ++k) g.push_back(sequence(sp[k], path + "/span/" + std::to_string(k)));
        }
        if (j.contains("full")) {
            if (!amb_.is_finite()) throw ModelError(path + "/full: only finite carriers can be full");
            return Subspace::full(amb_.dim);
        }
        return Subspace(amb_, g, phi);
    }

    RectangleRelation relation(const json& j, const Subspace& carrier, const std::string& path) const {
        if (!j.is_array()) throw ModelError(path + ": expected an array of rectangles");
        std::vector<Rect> rs;
        for (std::size_t k = 0; k < j.size(); ++k) {
            const std::string p = path + "/" + std::to_string(k);
            rs.push_back({subspace(member(j[k], "left", p), p + "/left"), subspace(member(j[k], "right", p), p + "/right")});
        }
        return RectangleRelation(carrier, std::move(rs));
    }

private:
    Ambient amb_;
    std::map<std::string, Sequence> names_;
};

inline json write_subspace(const Subspace& s) {
    json j;
    const Ambient& amb = s.ambient();
    if (amb.is_finite() && s.basis().size() == static_cast<std::size_t>(amb.dim)) {
        j["full"] = true;
        return j;
    }
    if (s.has_phi()) j["phi"] = true;
    json sp = json::array();
    for (const auto& b : s.basis()) sp.push_back(s.ambient().render(b));
    j["span"] = sp;
    return j;
}

inline json write_relation(const RectangleRelation& r) {
    json a = json::array();
    for (const auto& x : r.rects()) a.push_back(json{{"left", write_subspace(x.left)}, {"right", write_subspace(x.right)}});
    return a;
}

inline std::pair<std::size_t, std::size_t> line_col(const std::string& text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

}  // namespace io

inline Model model_from_json(const json& root) {
    using namespace io;
    Model M;
    M.name = root.contains("name") ? text_of(root["name"], "/name") : std::string("model");
    const json& be = member(root, "backend", "");
    const std::string kind = text_of(member(be, "kind", "/backend"), "/backend/kind");
    Ambient amb;
    if (kind == "finite") {
        const json& d = member(be, "dim", "/backend");
        if (!d.is_number_integer() || d.get<long>() < 1) throw ModelError("/backend/dim: expected a positive integer");
        amb = Ambient::finite(d.get<int>());
    } else if (kind == "symbolic") {
        amb = Ambient::symbolic();
    } else {
        throw ModelError("/backend/kind: expected 'finite' or 'symbolic'");
    }
    Reader rd(amb);
    if (root.contains("elements")) {
        const json& el = root["elements"];
        if (!el.is_object()) throw ModelError("/elements: expected an object");
        for (auto it = el.begin(); it != el.end(); ++it) {
            Sequence s = rd.sequence(it.value(), "/elements/" + it.key());
            M.elements[it.key()] = s;
            rd.define(it.key(), s);
        }
    }
    const json& alg = member(root, "algebra", "");
    const Subspace carrier = rd.subspace(member(alg, "carrier", "/algebra"), "/algebra/carrier");
    ProductRule rule = ProductRule::pointwise();
    if (alg.contains("product")) {
        const json& pr = alg["product"];
        const std::string pk = text_of(member(pr, "kind", "/algebra/product"), "/algebra/product/kind");
        if (pk == "structure") {
            const json& t = member(pr, "table", "/algebra/product");
            if (!t.is_array()) throw ModelError("/algebra/product/table: expected an array");
            std::vector<ProductRule::Entry> es;
            for (std::size_t k = 0; k < t.size(); ++k) {
                const std::string p = "/algebra/product/table/" + std::to_string(k);
                const json& e = t[k];
                if (!e.is_array() || e.size() != 4 || !e[0].is_number_integer() || !e[1].is_number_integer() ||
                    !e[2].is_number_integer())
                    throw ModelError(p + ": expected [i, j, k, \"coefficient\"]");
                int i = e[0].get<int>(), jj = e[1].get<int>(), kk = e[2].get<int>();
                const int d = amb.is_finite() ? amb.dim : 0;
                if (i < 1 || jj < 1 || kk < 1 || i > d || jj > d || kk > d) throw ModelError(p + ": index outside 1..dim");
                es.push_back({i, jj, kk, rd.scalar(e[3], p + "/3")});
            }
            rule = ProductRule::structure(std::move(es));
        } else if (pk != "pointwise") {
            throw ModelError("/algebra/product/kind: expected 'pointwise' or 'structure'");
        }
    }
    const RectangleRelation gamma = rd.relation(member(alg, "gamma", "/algebra"), carrier, "/algebra/gamma");

    if (root.contains("functional")) {
        const json& f = root["functional"];
        FunctionalData fd;
        const json& c = member(f, "coords", "/functional");
        const json& w = member(f, "weights", "/functional");
        if (!c.is_array() || !w.is_array() || c.size() != w.size())
            throw ModelError("/functional: coords and weights must be arrays of equal length");
        for (std::size_t k = 0; k < c.size(); ++k) {
            if (!c[k].is_number_integer()) throw ModelError("/functional/coords/" + std::to_string(k) + ": expected an integer");
            fd.coords.push_back(c[k].get<int>());
            fd.weights.push_back(rd.scalar(w[k], "/functional/weights/" + std::to_string(k)));
        }
        M.functional = fd;
    }

    std::vector<const Subspace*> spaces{&carrier};
    long K = probe_bound_for(spaces, M.elements);
    if (root.contains("probe_bound")) {
        if (!root["probe_bound"].is_number_integer() || root["probe_bound"].get<long>() < 1)
            throw ModelError("/probe_bound: expected a positive integer");
        K = root["probe_bound"].get<long>();
    }
    PartialStarAlgebra A;
    try {
        A = PartialStarAlgebra(carrier, gamma, rule, K);
    } catch (const Error& e) {
        throw ModelError(std::string("/algebra: ") + e.what());
    }

    const json& bw = member(root, "bweight", "");
    const Subspace B = rd.subspace(member(bw, "B", "/bweight"), "/bweight/B");
    const bool derive = bw.contains("derive") && bw["derive"].is_boolean() && bw["derive"].get<bool>();
    if (derive) {
        if (!M.functional) throw ModelError("/bweight/derive: needs a functional section");
        BuildResult r = build_from_functional(A, B, *M.functional);
        if (!r.weight) throw ConstructionFailure("B-weight construction from the functional failed", r.report);
        M.weight = *r.weight;
    } else {
        const RectangleRelation sharp = rd.relation(member(bw, "sharp", "/bweight"), carrier, "/bweight/sharp");
        const json& pj = member(bw, "pairing", "/bweight");
        const std::string mode = text_of(member(pj, "mode", "/bweight/pairing"), "/bweight/pairing/mode");
        PairingRule om;
        if (mode == "sum") {
            om = pj.contains("weight") ? PairingRule::sum(rd.sequence(pj["weight"], "/bweight/pairing/weight")) : PairingRule::sum();
        } else if (mode == "lim") {
            om = PairingRule::lim();
        } else if (mode == "zero") {
            om = PairingRule::zero();
        } else if (mode == "matrix") {
            if (!amb.is_finite()) throw ModelError("/bweight/pairing: matrix pairing needs the finite backend");
            const json& rows = member(pj, "rows", "/bweight/pairing");
            const std::size_t d = static_cast<std::size_t>(amb.dim);
            if (!rows.is_array() || rows.size() != d) throw ModelError("/bweight/pairing/rows: expected dim rows");
            Matrix m(d, d);
            for (std::size_t i = 0; i < d; ++i) {
                if (!rows[i].is_array() || rows[i].size() != d)
                    throw ModelError("/bweight/pairing/rows/" + std::to_string(i) + ": expected dim entries");
                for (std::size_t k = 0; k < d; ++k)
                    m(i, k) = rd.scalar(rows[i][k], "/bweight/pairing/rows/" + std::to_string(i) + "/" + std::to_string(k));
            }
            om = PairingRule::from_matrix(m);
        } else {
            throw ModelError("/bweight/pairing/mode: expected sum, lim, zero or matrix");
        }
        M.weight = BWeight{A, B, sharp, om};
    }
    if (root.contains("queries")) {
        const json& q = root["queries"];
        if (!q.is_array()) throw ModelError("/queries: expected an array");
        for (std::size_t k = 0; k < q.size(); ++k) M.queries.push_back(text_of(q[k], "/queries/" + std::to_string(k)));
    }
    return M;
}

/// Parses model text; JSON syntax errors carry line and column.
inline Model parse_model(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        auto [line, col] = io::line_col(text, e.byte);
        throw ModelError("line " + std::to_string(line) + ", column " + std::to_string(col) + ": malformed JSON");
    }
    return model_from_json(root);
}

inline Model load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ModelError(path + ": cannot open model file");
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return parse_model(ss.str());
    } catch (const ModelError& e) {
        throw ModelError(path + ": " + e.what());
    }
}

/// Deterministic serialization; the B-weight is always written out explicitly.
inline json model_to_json(const Model& M) {
    using namespace io;
    const Ambient& amb = M.ambient();
    const auto& A = M.algebra();
    json j;
    j["name"] = M.name;
    j["backend"] = amb.is_finite() ? json{{"kind", "finite"}, {"dim", amb.dim}} : json{{"kind", "symbolic"}};
    j["probe_bound"] = A.probe_bound();
    if (!M.elements.empty()) {
        json el = json::object();
        for (const auto& [k, v] : M.elements) el[k] = amb.render(v);
        j["elements"] = el;
    }
    json alg;
    alg["carrier"] = write_subspace(A.carrier());
    if (A.rule().kind == ProductRule::Kind::Structure) {
        json t = json::array();
        for (const auto& e : A.rule().table) t.push_back(json::array({e.i, e.j, e.k, e.c.to_string()}));
        alg["product"] = json{{"kind", "structure"}, {"table", t}};
    } else {
        alg["product"] = json{{"kind", "pointwise"}};
    }
    alg["gamma"] = write_relation(A.gamma());
    j["algebra"] = alg;
    json bw;
    bw["B"] = write_subspace(M.weight.B);
    bw["sharp"] = write_relation(M.weight.sharp);
    const PairingRule& om = M.weight.omega;
    json pj;
    switch (om.mode) {
        case PairingRule::Mode::Sum:
            pj["mode"] = "sum";
            if (om.weight != Sequence::constant(1)) pj["weight"] = amb.render(om.weight);
            break;
        case PairingRule::Mode::Lim: pj["mode"] = "lim"; break;
        case PairingRule::Mode::Zero: pj["mode"] = "zero"; break;
        case PairingRule::Mode::Matrix: {
            pj["mode"] = "matrix";
            json rows = json::array();
            for (std::size_t i = 0; i < om.matrix.rows(); ++i) {
                json r = json::array();
                for (std::size_t k = 0; k < om.matrix.cols(); ++k) r.push_back(om.matrix(i, k).to_string());
                rows.push_back(r);
            }
            pj["rows"] = rows;
            break;
        }
    }
    bw["pairing"] = pj;
    j["bweight"] = bw;
    if (M.functional) {
        json w = json::array();
        for (const auto& x : M.functional->weights) w.push_back(x.to_string());
        j["functional"] = json{{"coords", M.functional->coords}, {"weights", w}};
    }
    if (!M.queries.empty()) j["queries"] = M.queries;
    return j;
}

inline std::string serialize_model(const Model& M) { return model_to_json(M).dump(2) + "\n"; }

}  // namespace pipgns
