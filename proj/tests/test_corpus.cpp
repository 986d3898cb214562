#include <gtest/gtest.h>

#include "pipgns/pipgns.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace pipgns;

namespace {

const std::string kModels = std::string(PIPGNS_SOURCE_DIR) + "/models/";
const std::string kData = std::string(PIPGNS_SOURCE_DIR) + "/tests/data/";

std::string read_file(const std::string& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string error_of(const std::string& text) {
    try {
        parse_model(text);
    } catch (const ModelError& e) {
        return e.what();
    }
    return {};
}

}  // namespace

TEST(Corpus, EveryEntryMatchesItsExpectedRecord) {
    for (const auto& name : corpus::names()) {
        const VerdictRecord got = verdict_record(corpus::by_name(name));
        const auto diff = record_diff(corpus::expected(name), got);
        EXPECT_TRUE(diff.empty()) << name << ": " << (diff.empty() ? "" : diff.front());
        EXPECT_TRUE(got == corpus::expected(name)) << got.json().dump(1);
    }
}

TEST(Corpus, RecordDiffNamesTheField) {
    VerdictRecord a = corpus::expected("ex46"), b = a;
    b.gns_exit["circ"] = 0;
    b.queries["pi(a) circ pi(a)"] = "= pi(a^2)";
    const auto d = record_diff(a, b);
    ASSERT_EQ(d.size(), 2u);
    EXPECT_EQ(d[0], "gns circ: expected 17, got 0");
    EXPECT_EQ(d[1], "query pi(a) circ pi(a): expected NotFactorizable, got = pi(a^2)");
}

TEST(Corpus, Ex24InvariantUnderSlotCount) {
    for (int m = 1; m <= 5; ++m) {
        const Model M = corpus::ex24(m);
        const Degeneracy d = compute_degeneracy_spaces(M.weight);
        EXPECT_TRUE(d.N1.is_zero()) << m;
        EXPECT_EQ(d.N2, corpus::detail::coord_span(2 * m, m + 1, 2 * m)) << m;
        EXPECT_NE(d.N1, d.N2);
        EXPECT_EQ(gns_build(M.weight, ProductMode::Star).report.exit_code(), 11);
    }
    EXPECT_THROW(corpus::ex24(0), Error);
}

TEST(Corpus, Ex46GrowthVariantsAgree) {
    for (auto g : {corpus::Growth::Linear, corpus::Growth::Quadratic, corpus::Growth::Geometric}) {
        Model M = corpus::ex46(g);
        VerdictRecord r = verdict_record(M);
        r.name = "ex46";
        EXPECT_TRUE(record_diff(corpus::expected("ex46"), r).empty()) << M.ambient().render(M.elements["a"]);
    }
    EXPECT_EQ(corpus::parse_growth("2^n"), corpus::Growth::Geometric);
    EXPECT_THROW(corpus::parse_growth("n^3"), Error);
    EXPECT_THROW(corpus::by_name("ex99"), Error);
}

TEST(ModelIo, CorpusRoundTripsByteIdentically) {
    std::vector<Model> ms;
    for (const auto& name : corpus::names()) ms.push_back(corpus::by_name(name));
    ms.push_back(corpus::ex24(1));
    ms.push_back(corpus::ex46(corpus::Growth::Geometric));
    for (const auto& M : ms) {
        const std::string s = serialize_model(M);
        const Model R = parse_model(s);
        EXPECT_EQ(serialize_model(R), s) << M.name;
        EXPECT_EQ(serialize_model(parse_model(serialize_model(R))), s) << M.name;
        EXPECT_EQ(R.weight.B, M.weight.B);
        EXPECT_EQ(R.algebra().carrier(), M.algebra().carrier());
        EXPECT_EQ(R.queries, M.queries);
    }
}

TEST(ModelIo, BundledFilesAreTheSerializedBuilders) {
    for (const auto& name : corpus::names()) {
        const std::string path = kModels + name + ".json";
        ASSERT_TRUE(std::filesystem::exists(path)) << path;
        EXPECT_EQ(read_file(path), serialize_model(corpus::by_name(name))) << name;
        const Model F = load_model(path);
        const Degeneracy a = compute_degeneracy_spaces(F.weight), b = compute_degeneracy_spaces(corpus::by_name(name).weight);
        EXPECT_EQ(a.N1, b.N1);
        EXPECT_EQ(a.N2, b.N2);
        EXPECT_EQ(a.Ngns, b.Ngns);
    }
}

TEST(ModelIo, DeriveSectionReproducesTheFunctionalConstruction) {
    Model D = load_model(kModels + "prop2-derive.json");
    Model P = corpus::prop2_demo();
    D.name = P.name;
    EXPECT_EQ(serialize_model(D), serialize_model(P));
    EXPECT_TRUE(check_bweight(D.weight).ok());
    try {
        load_model(kData + "derive_fail.json");
        FAIL() << "construction should fail";
    } catch (const ConstructionFailure& e) {
        EXPECT_FALSE(e.report.find("hyp-ii")->pass);
        EXPECT_EQ(e.report.find("hyp-ii")->witness, "span{vec(0, 0, 0, 0, 1, 0, 0, 0)}");
    }
}

TEST(ModelIo, SyntaxErrorsCarryLineAndColumn) {
    EXPECT_EQ(error_of("{\n  \"name\": \"x\",\n  \"backend\": {\"kind\": \"symbolic\",}\n}"), "line 3, column 34: malformed JSON");
    EXPECT_NE(std::string(error_of(read_file(kData + "malformed_json.json"))).find("line 5"), std::string::npos);
}

TEST(ModelIo, SchemaErrorsCarryJsonPaths) {
    const std::string base = serialize_model(corpus::ex46());
    auto edit = [&](const std::function<void(json&)>& f) {
        json j = json::parse(base);
        f(j);
        return error_of(j.dump());
    };
    EXPECT_EQ(edit([](json& j) { j.erase("bweight"); }), ": missing required key 'bweight'");
    EXPECT_EQ(edit([](json& j) { j["backend"]["kind"] = "hilbert"; }), "/backend/kind: expected 'finite' or 'symbolic'");
    EXPECT_EQ(edit([](json& j) { j["elements"]["a"] = "n +* 2"; }), "/elements/a: unexpected character '*' (column 4)");
    EXPECT_EQ(edit([](json& j) { j["bweight"]["pairing"]["mode"] = "max"; }),
              "/bweight/pairing/mode: expected sum, lim, zero or matrix");
    EXPECT_EQ(edit([](json& j) { j["algebra"]["gamma"][0].erase("right"); }), "/algebra/gamma/0: missing required key 'right'");
    EXPECT_EQ(edit([](json& j) { j["queries"] = "pi(a) star pi(a)"; }), "/queries: expected an array");

    json f = json::parse(serialize_model(corpus::ex45()));
    f["elements"]["a"] = "e[6]";
    EXPECT_EQ(error_of(f.dump()), "/elements/a: literal uses coordinates beyond dimension 5");
    f["elements"]["a"] = "n";
    EXPECT_EQ(error_of(f.dump()), "/elements/a: finite backend literals must be finitely supported");
    f = json::parse(serialize_model(corpus::ex45()));
    f["algebra"]["product"]["table"][0][2] = 9;
    EXPECT_EQ(error_of(f.dump()), "/algebra/product/table/0: index outside 1..dim");
    EXPECT_THROW(load_model(kData + "does_not_exist.json"), ModelError);
}

TEST(ModelIo, NamedElementsResolveInLaterLiterals) {
    json j = json::parse(serialize_model(corpus::ex46()));
    j["elements"]["b"] = "a * a + e[3]";
    Model M = parse_model(j.dump());
    EXPECT_EQ(M.elements["b"], parse_sequence("n^2 + e[3]"));
}

TEST(ModelIo, MatrixPairingAndStructureProductRoundTrip) {
    Model M = corpus::ex45();
    Matrix m(5, 5);
    for (std::size_t k = 1; k < 4; ++k) m(k, k) = Scalar(1);
    m(1, 2) = Scalar(Rational(1, 2), Rational(1));
    m(2, 1) = m(1, 2).conj();
    M.weight.omega = PairingRule::from_matrix(m);
    const std::string s = serialize_model(M);
    const Model R = parse_model(s);
    EXPECT_EQ(R.weight.omega.mode, PairingRule::Mode::Matrix);
    EXPECT_EQ(R.weight.omega.matrix(1, 2), m(1, 2));
    EXPECT_EQ(serialize_model(R), s);
}
