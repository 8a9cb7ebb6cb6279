#include <gtest/gtest.h>

#include <filesystem>

#include "rpq/rpq.hpp"
#include "support/oracles.hpp"

using namespace rpq;

namespace fs = std::filesystem;

TEST(AlgebraJson, RoundTripOnCorpus) {
    for (const auto& e : corpus()) {
        auto text = format_algebra(e.algebra);
        EXPECT_EQ(parse_algebra(text, false), e.algebra) << e.name;
        EXPECT_EQ(parse_algebra(algebra_to_json(e.algebra).dump(), false), e.algebra) << e.name;
        EXPECT_EQ(Json::parse(text), algebra_to_json(e.algebra)) << e.name;
    }
}

TEST(AlgebraJson, RoundTripOnRandomAlgebras) {
    std::mt19937 rng(1);
    for (const auto& a : oracle::all_two_element_algebras(true))
        if (rng() % 16 == 0) { ASSERT_EQ(parse_algebra(format_algebra(a), false), a); }
}

TEST(AlgebraJson, DerivesMissingDivisions) {
    const char* text = R"({"size": 3, "mul": [[0,1,2],[1,2,0],[2,0,1]]})";
    auto derived = parse_algebra(text);
    EXPECT_EQ(derived, cyclic_group(3));
    auto bare = parse_algebra(text, false);
    EXPECT_FALSE(bare.has(Op::LDiv));
    EXPECT_FALSE(bare.has(Op::RDiv));
    // Right zero: rows are permutations, columns are not.
    auto rz = parse_algebra(R"({"size": 2, "mul": [[0,1],[0,1]]})");
    EXPECT_TRUE(rz.has(Op::LDiv));
    EXPECT_FALSE(rz.has(Op::RDiv));
}

TEST(AlgebraJson, PointAndKeyOrder) {
    auto a = cyclic_group(3, 0);
    auto text = format_algebra(a);
    EXPECT_NE(text.find("\"point\": 0"), std::string::npos);
    EXPECT_LT(text.find("\"size\""), text.find("\"mul\""));
    EXPECT_LT(text.find("\"ldiv\""), text.find("\"rdiv\""));
    EXPECT_EQ(parse_algebra(text), a);
}

TEST(AlgebraJson, StructuralErrors) {
    for (const char* bad : {
             "not json",
             "[]",
             R"({"mul": [[0]]})",
             R"({"size": 0, "mul": []})",
             R"({"size": 2})",
             R"({"size": 2, "mul": [[0,1]]})",
             R"({"size": 2, "mul": [[0,1],[0]]})",
             R"({"size": 2, "mul": [[0,1],[0,2]]})",
             R"({"size": 2, "mul": [[0,1],[0,-1]]})",
             R"({"size": 2, "mul": [[0,1],[0,"1"]]})",
             R"({"size": 2, "mul": [[0,1],[1,0]], "point": 2})",
             R"({"size": 2, "mul": [[0,1],[1,0]], "point": "e"})",
         })
        EXPECT_THROW(parse_algebra(bad), StructuralError) << bad;
    EXPECT_THROW(read_algebra("/nonexistent/file.json"), Error);
}

TEST(IdentityFile, ParsesLabelsAndComments) {
    auto lines = parse_identity_file("# header\n\nx*y = y*x  # COMM\n  x\\(x*y) = y\n");
    ASSERT_EQ(lines.size(), 2u);
    EXPECT_EQ(lines[0].line, 3u);
    EXPECT_EQ(lines[0].label, "COMM");
    EXPECT_EQ(lines[0].identity, parse_identity("x*y = y*x"));
    EXPECT_EQ(lines[1].label, "");
    EXPECT_EQ(lines[1].line, 4u);
}

TEST(IdentityFile, ErrorsNameTheLine) {
    try {
        parse_identity_file("x = x\nx * = y\n");
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
    }
}

TEST(IdentityFile, CatalogRoundTrip) {
    auto lines = parse_identity_file(format_catalog());
    std::set<std::string> labels;
    for (const auto& l : lines) {
        ASSERT_FALSE(l.label.empty());
        ASSERT_TRUE(labels.insert(l.label).second) << l.label;
        EXPECT_EQ(l.identity, identity_labelled(l.label).identity) << l.label;
    }
    for (const auto& sys : builtin_systems())
        for (const auto& li : sys.identities) EXPECT_TRUE(labels.count(li.label)) << li.label;
}

TEST(CorpusFiles, MatchEmbeddedCorpus) {
    const fs::path dir = fs::path(RPQ_SOURCE_DIR) / "corpus";
    std::set<std::string> on_disk;
    for (const auto& f : fs::directory_iterator(dir))
        if (f.path().extension() == ".json") on_disk.insert(f.path().stem().string());
    std::set<std::string> embedded;
    for (const auto& e : corpus()) {
        embedded.insert(e.name);
        auto path = dir / (e.name + ".json");
        ASSERT_TRUE(fs::exists(path)) << e.name;
        EXPECT_EQ(read_file(path.string()), format_algebra(e.algebra)) << e.name;
        EXPECT_EQ(read_algebra(path.string(), false), e.algebra) << e.name;
    }
    EXPECT_EQ(on_disk, embedded);
    EXPECT_EQ(read_file((dir / "axioms.txt").string()), format_catalog());
}

TEST(CorpusFiles, SamplesUseTheSameFormat) {
    const fs::path dir = fs::path(RPQ_SOURCE_DIR) / "samples";
    for (const auto& f : fs::directory_iterator(dir)) {
        if (f.path().extension() == ".json") { EXPECT_NO_THROW(read_algebra(f.path().string())) << f.path(); }
        if (f.path().extension() == ".txt") { EXPECT_NO_THROW(read_identity_file(f.path().string())) << f.path(); }
    }
}

TEST(ReportJson, Shapes) {
    auto s = direct_product(cyclic_group(3), right_zero(2));
    auto d = to_json(decompose(s));
    EXPECT_TRUE(d.contains("witness"));
    auto sol = to_json(solve_xa_b(s, 2, 0));
    EXPECT_EQ(sol["solutions"], Json::array({4, 5}));
    auto wp = to_json(decide_rpq(parse_term("(x*y)/y"), parse_term("x")));
    EXPECT_EQ(wp["valid"], false);
    auto rep = to_json(check_system(corpus_algebra("notA3"), system_named("A")));
    EXPECT_FALSE(rep.dump().empty());
}
