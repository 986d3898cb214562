#include <gtest/gtest.h>

#include <nlohmann/json.hpp>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

const std::string kSrc = PIPGNS_SOURCE_DIR;
const std::string kCli = PIPGNS_CLI_PATH;

struct CliRun {
    int code = -1;
    std::string out;
};

CliRun run(const std::string& args, const std::string& env = {}) {
    const std::string cmd = (env.empty() ? "" : env + " ") + "'" + kCli + "' " + args + " 2>&1";
    CliRun r;
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return r;
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
    const int st = pclose(p);
    r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

std::string model(const std::string& name) { return "'" + kSrc + "/models/" + name + ".json'"; }
std::string data(const std::string& name) { return "'" + kSrc + "/tests/data/" + name + "'"; }

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path scratch(const std::string& leaf) {
    fs::path d = fs::temp_directory_path() / ("pipgns_cli_" + std::to_string(::getpid())) / leaf;
    fs::create_directories(d.parent_path());
    return d;
}

bool has_witness(const nlohmann::json& j) {
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it) {
            if ((it.key() == "witness" || it.key() == "error" || it.key() == "mismatches") && !it.value().empty()) return true;
            if (has_witness(it.value())) return true;
        }
    }
    if (j.is_array())
        for (const auto& x : j)
            if (has_witness(x)) return true;
    if (j.is_object() && j.contains("checks"))
        for (const auto& c : j["checks"])
            if (c.contains("pass") && !c["pass"].get<bool>() && c.contains("detail")) return true;
    return false;
}

}  // namespace

TEST(CliValidate, ExitCodes) {
    CliRun ok = run("validate " + model("ex45"));
    EXPECT_EQ(ok.code, 0) << ok.out;
    EXPECT_NE(ok.out.find("all axioms hold"), std::string::npos);

    CliRun asym = run("validate " + data("asymmetric_sharp.json"));
    EXPECT_EQ(asym.code, 1) << asym.out;
    EXPECT_NE(asym.out.find("FAIL  bweight/sharp-symmetric [witness: rectangle #0 has no mirror]"), std::string::npos) << asym.out;

    CliRun lit = run("validate " + data("malformed_literal.json"));
    EXPECT_EQ(lit.code, 2);
    EXPECT_NE(lit.out.find("/elements/a: unexpected character '*' (column 4)"), std::string::npos) << lit.out;

    CliRun js = run("validate " + data("malformed_json.json"));
    EXPECT_EQ(js.code, 2);
    EXPECT_NE(js.out.find("line 5, column 29"), std::string::npos) << js.out;

    EXPECT_EQ(run("validate " + data("missing.json")).code, 2);
    EXPECT_EQ(run("validate " + data("derive_fail.json")).code, 1);
}

TEST(CliGns, StagedExitCodes) {
    CliRun star = run("gns " + model("ex46") + " --product=star");
    EXPECT_EQ(star.code, 0) << star.out;
    EXPECT_NE(star.out.find("PASS  products/pair (n, n): circ undefined, bullet = pi(xy), star = pi(xy)"), std::string::npos)
        << star.out;
    EXPECT_EQ(run("gns " + model("ex46") + " --product bullet").code, 0);

    CliRun circ = run("gns " + model("ex46") + " --product=circ");
    EXPECT_EQ(circ.code, 17);
    EXPECT_NE(circ.out.find("failed at stage 7 (products)"), std::string::npos) << circ.out;
    EXPECT_NE(circ.out.find("FAIL  products/pair (n, n)"), std::string::npos);

    CliRun e45 = run("gns " + model("ex45"));
    EXPECT_EQ(e45.code, 11);
    EXPECT_NE(e45.out.find("[witness: vec(0, 0, 0, 0, 1) * vec(1, 0, 0, 0, 0) = vec(0, 0, 1, 0, 0)]"), std::string::npos)
        << e45.out;

    EXPECT_EQ(run("gns " + model("desk-ex2")).code, 15);
    EXPECT_EQ(run("gns " + model("ex24")).code, 11);
    EXPECT_EQ(run("gns corpus:ex46 --product=circ").code, 17);
    EXPECT_EQ(run("gns " + model("ex46") + " --product=diamond").code, 2);
}

TEST(CliGns, RecordsAreDeterministic) {
    const fs::path a = scratch("a.json"), b = scratch("b.json");
    EXPECT_EQ(run("gns " + model("ex46") + " --product=circ --out '" + a.string() + "'").code, 17);
    EXPECT_EQ(run("gns " + model("ex46") + " --product=circ --out '" + b.string() + "'").code, 17);
    const std::string sa = slurp(a);
    EXPECT_FALSE(sa.empty());
    EXPECT_EQ(sa, slurp(b));
    const auto j = nlohmann::json::parse(sa);
    EXPECT_EQ(j["command"], "gns");
    EXPECT_EQ(j["exit_code"], 17);
    EXPECT_EQ(j["failed_stage"], 7);
    EXPECT_EQ(j["failed_stage_name"], "products");
    EXPECT_FALSE(j["hypotheses"]["guaranteed"].get<bool>());
}

TEST(CliProduct, Queries) {
    CliRun s = run("product " + model("ex46") + " 'pi(a) star pi(a)'");
    EXPECT_EQ(s.code, 0);
    EXPECT_EQ(s.out.rfind("pi(a) star pi(a): = pi(a^2)\n", 0), 0u) << s.out;

    CliRun c = run("product " + model("ex46") + " 'pi(a) circ pi(a)'");
    EXPECT_EQ(c.code, 1);
    EXPECT_NE(c.out.find("pi(a) circ pi(a): NotFactorizable"), std::string::npos);
    EXPECT_NE(c.out.find("FAIL  chain E1=phi:"), std::string::npos) << c.out;
    EXPECT_NE(c.out.find("FAIL  chain E1=phi + span{n, n^2}:"), std::string::npos) << c.out;
    EXPECT_NE(c.out.find("the only candidate n^3 is not in phi + span{n, n^2}"), std::string::npos);

    CliRun b = run("product " + model("ex46") + " 'id bullet pi(a)'");
    EXPECT_EQ(b.code, 0);
    EXPECT_EQ(b.out.rfind("id bullet pi(a): = pi(a)", 0), 0u) << b.out;

    CliRun all = run("product " + model("ex46") + " --json");
    EXPECT_EQ(all.code, 1);
    const auto j = nlohmann::json::parse(all.out);
    ASSERT_EQ(j["queries"].size(), 5u);
    EXPECT_EQ(j["queries"][1]["verdict"], "= pi(a^2)");
    EXPECT_EQ(j["queries"][1]["via"], "X = phi, Y = phi");

    EXPECT_EQ(run("product " + model("ex46") + " 'pi(a) circ'").code, 2);
    EXPECT_EQ(run("product " + model("ex46") + " 'pi(b) star pi(a)'").code, 2);
    CliRun none = run("product " + model("ex25") + " 'id star id'");
    EXPECT_EQ(none.code, 1);
    EXPECT_NE(none.out.find("no PIP-space"), std::string::npos);
}

TEST(CliOther, BweightPipCorpus) {
    CliRun bw = run("bweight " + model("ex24"));
    EXPECT_EQ(bw.code, 1);
    EXPECT_NE(bw.out.find("N1  = {0}"), std::string::npos) << bw.out;
    EXPECT_NE(bw.out.find("FAIL  criterion"), std::string::npos);
    EXPECT_EQ(run("bweight " + model("ex46")).code, 0);

    CliRun pip = run("pip " + model("ex46"));
    EXPECT_EQ(pip.code, 0);
    EXPECT_NE(pip.out.find("lattice: {phi + span{n, n^2}} {phi}"), std::string::npos) << pip.out;
    EXPECT_EQ(run("pip " + model("ex25")).code, 1);

    CliRun c = run("corpus --models '" + kSrc + "/models'");
    EXPECT_EQ(c.code, 0) << c.out;
    for (const char* n : {"ex24", "ex25", "ex45", "ex46", "desk-ex2", "prop2-demo"})
        EXPECT_NE(c.out.find(std::string("PASS  ") + n + "\n"), std::string::npos) << n;

    EXPECT_EQ(run("").code, 2);
    EXPECT_EQ(run("frobnicate x").code, 2);
    EXPECT_EQ(run("--help").code, 0);
}

TEST(CliOther, ReportDirectoryAndWitnesses) {
    const fs::path dir = scratch("reports");
    const std::string env = "PIPGNS_REPORT_DIR='" + dir.string() + "'";
    struct Case {
        std::string args;
        std::string file;
        int code;
    };
    const Case cases[] = {
        {"validate " + data("asymmetric_sharp.json"), "ex45-asym.validate.json", 1},
        {"validate " + data("malformed_literal.json"), "", 2},
        {"gns " + model("ex46") + " --product=circ", "ex46.gns.json", 17},
        {"gns " + model("desk-ex2"), "desk-ex2.gns.json", 15},
        {"gns " + model("ex45"), "ex45.gns.json", 11},
        {"product " + model("ex46") + " 'pi(a) circ pi(a)'", "ex46.product.json", 1},
        {"bweight " + model("ex24"), "ex24.bweight.json", 1},
        {"pip " + model("ex25"), "ex25.pip.json", 1},
    };
    for (const auto& c : cases) {
        CliRun r = run(c.args + " --json", env);
        EXPECT_EQ(r.code, c.code) << c.args << "\n" << r.out;
        const auto j = nlohmann::json::parse(r.out);
        EXPECT_EQ(j["exit_code"], c.code);
        EXPECT_TRUE(has_witness(j)) << c.args << "\n" << r.out;
        if (!c.file.empty()) {
            ASSERT_TRUE(fs::exists(dir / c.file)) << c.file;
            EXPECT_EQ(nlohmann::json::parse(slurp(dir / c.file)), j);
        }
    }
    fs::remove_all(dir.parent_path());
}
