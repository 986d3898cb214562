// pipgns: command-line front end for model files.

#include "pipgns/pipgns.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

using namespace pipgns;
namespace fs = std::filesystem;

namespace {

enum Exit { Ok = 0, CheckFailed = 1, InputError = 2, Undecided = 3 };

struct Outcome {
    int code = Ok;
    std::string text;
    json record;
};

Model resolve_model(const std::string& arg) {
    const std::string prefix = "corpus:";
    if (arg.rfind(prefix, 0) == 0) {
        try {
            return corpus::by_name(arg.substr(prefix.size()));
        } catch (const Error& e) {
            throw ModelError(e.what());
        }
    }
    return load_model(arg);
}

json base_record(const std::string& cmd, const std::string& model) {
    json j;
    j["command"] = cmd;
    j["model"] = model;
    return j;
}

void finish(Outcome& o) {
    json r;
    for (auto it = o.record.begin(); it != o.record.end(); ++it) {
        r[it.key()] = it.value();
        if (it.key() == "model") r["exit_code"] = o.code;
    }
    if (!r.contains("exit_code")) r["exit_code"] = o.code;
    o.record = r;
}

Outcome cmd_validate(const Model& M) {
    Outcome o;
    Report r;
    r.append(validate_algebra(M.algebra()), "algebra/");
    r.append(check_bweight(M.weight), "bweight/");
    o.code = r.ok() ? Ok : CheckFailed;
    o.text = M.name + ": " + (r.ok() ? "all axioms hold" : "axiom failure") + "\n" + r.text();
    o.record = base_record("validate", M.name);
    o.record["status"] = r.ok() ? "pass" : "fail";
    o.record["checks"] = r.json();
    return o;
}

Outcome cmd_bweight(const Model& M) {
    Outcome o;
    Report bw = check_bweight(M.weight);
    const Degeneracy d = compute_degeneracy_spaces(M.weight);
    const bool crit = d.Ngns == d.N1 && d.N1 == d.N2;
    Report r;
    r.append(bw, "bweight/");
    r.add("criterion", crit, "Ngns = N1 = N2",
          crit ? "" : "N1 = " + d.N1.to_string() + ", N2 = " + d.N2.to_string() + ", Ngns = " + d.Ngns.to_string());
    o.code = r.ok() ? Ok : CheckFailed;
    o.text = M.name + ":\n  B#  = " + d.Bs.to_string() + "\n  B## = " + d.Bss.to_string() + "\n  N1  = " + d.N1.to_string() +
             "\n  N2  = " + d.N2.to_string() + "\n  Ngns = " + d.Ngns.to_string() + "\n" + r.text();
    o.record = base_record("bweight", M.name);
    o.record["status"] = r.ok() ? "pass" : "fail";
    o.record["spaces"] = json{{"B#", d.Bs.to_string()},
                              {"B##", d.Bss.to_string()},
                              {"N1", d.N1.to_string()},
                              {"N2", d.N2.to_string()},
                              {"Ngns", d.Ngns.to_string()}};
    o.record["criterion"] = crit ? "pass" : "fail";
    o.record["checks"] = r.json();
    return o;
}

Outcome cmd_pip(const Model& M) {
    Outcome o;
    PipBuild pb = pip_build(M.weight);
    Report r = pb.report;
    o.record = base_record("pip", M.name);
    std::string text = M.name + ":\n";
    if (pb.space) {
        const PipSpace& P = *pb.space;
        r.checks.push_back(density_check(P));
        json lat = json::array();
        for (const auto& X : P.lattice()) lat.push_back(P.render(X));
        o.record["space"] = json{{"V", P.V().to_string()}, {"V#", P.render(P.Vsharp())}, {"N", P.N().to_string()}, {"lattice", lat}};
        text += "  V  = " + P.V().to_string() + "\n  V# = " + P.render(P.Vsharp()) + "\n  N  = " + P.N().to_string() +
                "\n  lattice:";
        for (const auto& l : lat) text += " {" + l.get<std::string>() + "}";
        text += "\n";
    }
    const bool ok = pb.space && r.ok();
    o.code = ok ? Ok : CheckFailed;
    o.text = text + r.text();
    o.record["status"] = ok ? "pass" : "fail";
    o.record["checks"] = r.json();
    return o;
}

Outcome cmd_gns(const Model& M, ProductMode mode) {
    Outcome o;
    GnsOutcome g = gns_pipeline(M.weight, mode);
    HypothesisReport h = check_gns_hypotheses(M.weight);
    o.code = g.report.exit_code();
    o.text = M.name + " (" + mode_name(mode) + "): " +
             (g.report.failed_stage ? "failed at stage " + std::to_string(*g.report.failed_stage) + " (" +
                                          g.report.failed_stage_name() + ")"
                                    : std::string("representation built and verified")) +
             "\n" + g.report.report.text() + "hypotheses" + (h.moot ? " (moot)" : h.guaranteed ? " (guaranteed)" : "") +
             ":\n" + h.report.text();
    o.record = base_record("gns", M.name);
    o.record["product"] = mode_name(mode);
    o.record["status"] = g.report.failed_stage ? "fail" : "pass";
    o.record["failed_stage"] = g.report.failed_stage ? json(*g.report.failed_stage) : json(nullptr);
    o.record["failed_stage_name"] = g.report.failed_stage_name();
    o.record["checks"] = g.report.report.json();
    o.record["hypotheses"] = json{{"moot", h.moot}, {"guaranteed", h.guaranteed}, {"checks", h.report.json()}};
    return o;
}

Outcome cmd_product(const Model& M, const std::vector<std::string>& given) {
    Outcome o;
    o.record = base_record("product", M.name);
    const std::vector<std::string>& qs = given.empty() ? M.queries : given;
    if (qs.empty()) throw ModelError("no product query given and the model lists none");
    std::vector<ProductQuery> parsed;
    for (const auto& q : qs) parsed.push_back(parse_query(q, M.elements));
    PipBuild pb = pip_build(M.weight);
    if (!pb.space) {
        o.code = CheckFailed;
        o.text = M.name + ": no PIP-space, products are not available\n" + pb.report.text();
        o.record["status"] = "fail";
        o.record["checks"] = pb.report.json();
        return o;
    }
    bool undefined = false, undecided = false;
    json arr = json::array();
    for (const auto& q : qs) {
        QueryResult r = run_query(*pb.space, q, M.elements);
        undefined = undefined || (!r.outcome.ok() && !r.outcome.unsupported);
        undecided = undecided || (!r.outcome.ok() && r.outcome.unsupported);
        o.text += r.text();
        arr.push_back(query_json(r));
    }
    o.code = undecided ? Undecided : undefined ? CheckFailed : Ok;
    o.record["status"] = o.code == Ok ? "pass" : o.code == Undecided ? "undecided" : "fail";
    o.record["queries"] = arr;
    return o;
}

Outcome cmd_corpus(const std::string& models_dir) {
    Outcome o;
    o.record = base_record("corpus", "corpus");
    json entries = json::array();
    bool all = true;
    for (const auto& name : corpus::names()) {
        const Model M = corpus::by_name(name);
        const VerdictRecord got = verdict_record(M);
        std::vector<std::string> diff = record_diff(corpus::expected(name), got);
        if (!models_dir.empty()) {
            const fs::path p = fs::path(models_dir) / (name + ".json");
            const VerdictRecord viafile = verdict_record(load_model(p.string()));
            for (auto& d : record_diff(got, viafile)) diff.push_back("model file " + d);
        }
        all = all && diff.empty();
        o.text += (diff.empty() ? "  PASS  " : "  FAIL  ") + name + "\n";
        for (const auto& d : diff) o.text += "          " + d + "\n";
        json e = got.json();
        e["match"] = diff.empty();
        if (!diff.empty()) e["mismatches"] = diff;
        entries.push_back(e);
    }
    o.code = all ? Ok : CheckFailed;
    o.record["status"] = all ? "pass" : "fail";
    o.record["entries"] = entries;
    return o;
}

void write_json(const fs::path& p, const json& j) {
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    std::ofstream out(p);
    if (!out) throw ModelError(p.string() + ": cannot write report");
    out << j.dump(2) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"pipgns: partial *-algebras, B-weights, PIP-spaces and GNS representations"};
    app.require_subcommand(1);
    std::string model_arg, out_path, product = "star", models_dir;
    std::vector<std::string> queries;
    bool as_json = false;

    auto* v = app.add_subcommand("validate", "check the partial *-algebra and B-weight axioms");
    auto* b = app.add_subcommand("bweight", "degeneracy spaces and the PIP criterion");
    auto* p = app.add_subcommand("pip", "build the PIP-space V = B#/N");
    auto* g = app.add_subcommand("gns", "run the GNS pipeline");
    auto* q = app.add_subcommand("product", "decide partial products of operators");
    auto* c = app.add_subcommand("corpus", "run every bundled entry against its expected verdicts");
    for (auto* s : {v, b, p, g, q}) s->add_option("model", model_arg, "model file, or corpus:<name>")->required();
    for (auto* s : {v, b, p, g, q, c}) s->add_option("--out", out_path, "write the machine-readable record to this file");
    for (auto* s : {v, b, p, g, q, c}) s->add_flag("--json", as_json, "print the machine-readable record instead of text");
    g->add_option("--product", product, "star, bullet or circ")->check(CLI::IsMember({"star", "bullet", "circ"}));
    q->add_option("query", queries, "\"T2 <circ|bullet|star> T1\"; defaults to the model's queries");
    c->add_option("--models", models_dir, "also load <dir>/<name>.json and compare with the builders");
    std::string export_dir;
    c->add_option("--export", export_dir, "write every bundled entry as a model file into this directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? Ok : InputError;
    }

    Outcome o;
    std::string cmd = app.get_subcommands().front()->get_name();
    try {
        if (cmd == "corpus" && !export_dir.empty()) {
            fs::create_directories(export_dir);
            for (const auto& name : corpus::names()) {
                std::ofstream f(fs::path(export_dir) / (name + ".json"));
                f << serialize_model(corpus::by_name(name));
                o.text += "wrote " + (fs::path(export_dir) / (name + ".json")).string() + "\n";
            }
            o.record = base_record("corpus", "corpus");
            o.record["status"] = "exported";
        } else if (cmd == "corpus") {
            o = cmd_corpus(models_dir);
        } else {
            const Model M = resolve_model(model_arg);
            if (cmd == "validate") o = cmd_validate(M);
            else if (cmd == "bweight") o = cmd_bweight(M);
            else if (cmd == "pip") o = cmd_pip(M);
            else if (cmd == "gns") o = cmd_gns(M, parse_product_mode(product));
            else o = cmd_product(M, queries);
        }
    } catch (const ConstructionFailure& e) {
        o.code = CheckFailed;
        o.text = std::string(e.what()) + "\n" + e.report.text();
        o.record = base_record(cmd, model_arg);
        o.record["status"] = "fail";
        o.record["error"] = e.what();
        o.record["checks"] = e.report.json();
    } catch (const UnsupportedError& e) {
        o.code = Undecided;
        o.text = std::string("undecided: ") + e.what() + "\n";
        o.record = base_record(cmd, model_arg);
        o.record["status"] = "undecided";
        o.record["error"] = e.what();
    } catch (const Error& e) {
        o.code = InputError;
        o.text = std::string("input error: ") + e.what() + "\n";
        o.record = base_record(cmd, model_arg);
        o.record["status"] = "input-error";
        o.record["error"] = e.what();
    }
    finish(o);

    try {
        if (!out_path.empty()) write_json(out_path, o.record);
        if (const char* dir = std::getenv("PIPGNS_REPORT_DIR"); dir && *dir) {
            std::string stem = o.record["model"].get<std::string>();
            for (auto& ch : stem)
                if (ch == '/' || ch == ':' || ch == '\\') ch = '_';
            write_json(fs::path(dir) / (stem + "." + cmd + ".json"), o.record);
        }
    } catch (const std::exception& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return InputError;
    }
    if (as_json) std::cout << o.record.dump(2) << "\n";
    else (o.code == InputError ? std::cerr : std::cout) << o.text;
    return o.code;
}
