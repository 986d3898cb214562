#pragma once

#include "pipgns/gns.hpp"
#include "pipgns/model.hpp"
#include "pipgns/query.hpp"

#include <nlohmann/json.hpp>

#include <map>
#include <string>

namespace pipgns {

/// The regression view of a model: degeneracy spaces, criterion, GNS exits per product, query verdicts.
struct VerdictRecord {
    std::string name;
    std::string N1, N2, Ngns;
    bool criterion = false;
    std::map<std::string, int> gns_exit;
    std::map<std::string, std::string> queries;

    friend bool operator==(const VerdictRecord&, const VerdictRecord&) = default;

    nlohmann::ordered_json json() const {
        nlohmann::ordered_json j;
        j["name"] = name;
        j["N1"] = N1;
        j["N2"] = N2;
        j["Ngns"] = Ngns;
        j["criterion"] = criterion ? "pass" : "fail";
        nlohmann::ordered_json g;
        for (const char* m : {"star", "bullet", "circ"})
            if (gns_exit.count(m)) g[m] = gns_exit.at(m);
        j["gns_exit"] = g;
        nlohmann::ordered_json q = nlohmann::ordered_json::object();
        for (const auto& [k, v] : queries) q[k] = v;
        j["queries"] = q;
        return j;
    }
};

inline VerdictRecord verdict_record(const Model& M) {
    VerdictRecord r;
    r.name = M.name;
    const Degeneracy d = compute_degeneracy_spaces(M.weight);
    r.N1 = d.N1.to_string();
    r.N2 = d.N2.to_string();
    r.Ngns = d.Ngns.to_string();
    r.criterion = d.Ngns == d.N1 && d.N1 == d.N2;
    for (auto m : {ProductMode::Star, ProductMode::Bullet, ProductMode::Circ})
        r.gns_exit[mode_name(m)] = gns_pipeline(M.weight, m).report.exit_code();
    if (!M.queries.empty()) {
        PipBuild pb = pip_build(M.weight);
        for (const auto& q : M.queries)
            r.queries[q] = pb.space ? run_query(*pb.space, q, M.elements).verdict : "NoPipSpace";
    }
    return r;
}

/// Lines "field: expected X, got Y" for every mismatch.
inline std::vector<std::string> record_diff(const VerdictRecord& want, const VerdictRecord& got) {
    std::vector<std::string> out;
    auto cmp = [&](const std::string& f, const std::string& a, const std::string& b) {
        if (a != b) out.push_back(f + ": expected " + a + ", got " + b);
    };
    cmp("N1", want.N1, got.N1);
    cmp("N2", want.N2, got.N2);
    cmp("Ngns", want.Ngns, got.Ngns);
    cmp("criterion", want.criterion ? "pass" : "fail", got.criterion ? "pass" : "fail");
    for (const char* m : {"star", "bullet", "circ"}) {
        auto a = want.gns_exit.count(m) ? std::to_string(want.gns_exit.at(m)) : std::string("-");
        auto b = got.gns_exit.count(m) ? std::to_string(got.gns_exit.at(m)) : std::string("-");
        cmp(std::string("gns ") + m, a, b);
    }
    for (const auto& [q, v] : want.queries) cmp("query " + q, v, got.queries.count(q) ? got.queries.at(q) : "-");
    for (const auto& [q, v] : got.queries)
        if (!want.queries.count(q)) cmp("query " + q, "-", v);
    return out;
}

}  // namespace pipgns
