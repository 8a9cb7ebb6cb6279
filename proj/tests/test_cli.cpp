#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <sys/wait.h>

#include "rpq/rpq.hpp"

using namespace rpq;

namespace fs = std::filesystem;

namespace {

struct Run {
    int code = -1;
    std::string out;
};

// Runs the CLI with stdout captured; stderr goes to `err_to` ("/dev/null" or "&1").
Run run(const std::string& args, const std::string& err_to = "/dev/null") {
    std::string cmd = std::string(RPQ_CLI_PATH) + " " + args + " 2>" + err_to;
    Run r;
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return r;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
    int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string data(const std::string& name) { return (fs::path(RPQ_SOURCE_DIR) / "corpus" / name).string(); }

std::string quote(const std::string& s) { return "'" + s + "'"; }

}  // namespace

TEST(Cli, UsageErrors) {
    EXPECT_EQ(run("").code, 1);
    EXPECT_EQ(run("frobnicate").code, 1);
    EXPECT_EQ(run("check").code, 1);
    EXPECT_EQ(run("solve " + data("z3.json") + " --right 1").code, 1);
    EXPECT_EQ(run("--help").code, 0);
    EXPECT_NE(run("--help").out.find("decompose"), std::string::npos);
}

TEST(Cli, DomainErrors) {
    EXPECT_EQ(run("classify /nonexistent.json").code, 2);
    EXPECT_EQ(run("decompose " + data("notA3.json")).code, 2);
    EXPECT_EQ(run("solve " + data("z3xR2.json") + " --right 2 1").code, 2);
    EXPECT_NE(run("solve " + data("z3xR2.json") + " --right 2 1", "&1").out.find("inconsistent"), std::string::npos);
    EXPECT_EQ(run("wp " + quote("x*y = ")).code, 2);
    EXPECT_EQ(run("search -n 5 --satisfy A").code, 2);
}

TEST(Cli, CheckReportsFailingAxiom) {
    auto r = run("--json check " + data("notA3.json"));
    EXPECT_EQ(r.code, 3);
    auto j = Json::parse(r.out);
    EXPECT_EQ(j["all_hold"], false);
    auto expected = to_json(check_system(corpus_algebra("notA3"), system_named("A")));
    EXPECT_EQ(j, expected);
    EXPECT_EQ(run("check " + data("z3xR2.json")).code, 0);
    auto human = run("check " + data("notA3.json"));
    EXPECT_NE(human.out.find("FAIL A3"), std::string::npos);
}

TEST(Cli, CheckWithIdentityFile) {
    auto file = (fs::path(RPQ_SOURCE_DIR) / "samples" / "extra.txt").string();
    auto r = run("check " + data("z3xR2.json") + " --identities " + file);
    EXPECT_EQ(r.code, 3);
    EXPECT_NE(r.out.find("FAIL COMM"), std::string::npos);
    EXPECT_NE(r.out.find("ok   RPCOMM"), std::string::npos);
}

TEST(Cli, DecomposeGolden) {
    auto r = run("--json decompose " + data("z3xR2.json"));
    ASSERT_EQ(r.code, 0);
    auto j = Json::parse(r.out);
    EXPECT_EQ(j["witness"], Json::parse("[[0,0],[0,1],[1,0],[1,1],[2,0],[2,1]]"));
    EXPECT_EQ(j["l_representatives"], Json::parse("[0,2,4]"));
    EXPECT_EQ(algebra_from_json(j["L"], false), cyclic_group(3));
    EXPECT_EQ(algebra_from_json(j["R"], false), right_zero(2));
}

TEST(Cli, ClassifyAndStructure) {
    auto c = run("classify " + data("z3xR2.json"));
    EXPECT_EQ(c.code, 0);
    EXPECT_NE(c.out.find("RPQ"), std::string::npos);
    for (const char* f : {"z3xR2.json", "z3xR2-pointed.json", "right_zero-3.json"}) {
        auto s = run("--json structure " + data(f));
        EXPECT_EQ(s.code, 0) << f;
        EXPECT_EQ(Json::parse(s.out)["verified"], true) << f;
    }
}

TEST(Cli, SolveGolden) {
    auto r = run("--json solve " + data("z3xR2.json") + " --right 2 0");
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(Json::parse(r.out)["solutions"], Json::parse("[4,5]"));
    auto idem = run("--json solve " + data("z3xR2.json") + " --right 2 0 --idempotent");
    EXPECT_EQ(Json::parse(idem.out)["solutions"], Json::parse("[4,5]"));
    auto left = run("--json solve " + data("z3.json") + " --left 1 0");
    EXPECT_EQ(Json::parse(left.out)["solutions"], Json::parse("[2]"));
}

TEST(Cli, WordProblem) {
    auto comm = run("--json wp " + quote("x*y = y*x"));
    ASSERT_EQ(comm.code, 0);
    auto j = Json::parse(comm.out);
    EXPECT_EQ(j["verdict"], "INVALID");
    auto model = algebra_from_json(j["refutation"]["model"], false);
    EXPECT_FALSE(holds(model, parse_identity("x*y = y*x")).holds);
    auto a5 = run("wp " + quote("((x*y)/z)*z = x*((y/z)*z)"));
    EXPECT_NE(a5.out.find("VALID"), std::string::npos);
    EXPECT_EQ(a5.out.find("INVALID"), std::string::npos);
    auto q3 = run("--json wp --variety q " + quote("(x*y)/y = x"));
    EXPECT_EQ(Json::parse(q3.out)["verdict"], "VALID");
    auto pointed = run("--json wp " + quote("e*x = x"));
    EXPECT_EQ(Json::parse(pointed.out)["mode"], "refutation-only");
    EXPECT_EQ(Json::parse(pointed.out)["verdict"], "INVALID");
}

TEST(Cli, Products) {
    auto r = run("--json product " + data("z3.json") + " --shape '((..)(..))' --seq 1,2,0,1");
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(Json::parse(r.out)["value"], 1);
    auto rho = run("--json product " + data("z3xR2.json") + " --rho 0,2,1,5,1 --reduce");
    EXPECT_EQ(rho.code, 0);
    auto shape = run("product " + data("z3xR2.json") + " --shape '((..)(..))' --seq 0,2,1,5 --reduce");
    EXPECT_EQ(shape.code, 0);
    EXPECT_EQ(run("product " + data("z3.json") + " --shape '(..' --seq 1,2").code, 2);
}

TEST(Cli, SearchFindsPrintedTable) {
    auto r = run("--json search -n 2 --satisfy A1,A2,A4,A5 --violate A3 --all");
    ASSERT_EQ(r.code, 0);
    auto j = Json::parse(r.out);
    std::vector<FiniteAlgebra> models;
    for (const auto& m : j["models"]) models.push_back(algebra_from_json(m, false));
    EXPECT_EQ(models.size(), 3u);
    EXPECT_NE(std::find(models.begin(), models.end(), corpus_algebra("notA3")), models.end());
    auto none = run("--json search -n 2 --satisfy A1,A3,A4,A5 --violate A2");
    EXPECT_EQ(none.code, 0);
    EXPECT_TRUE(Json::parse(none.out)["models"].empty());
}

TEST(Cli, NoDeriveKeepsTablesAbsent) {
    auto file = (fs::path(RPQ_SOURCE_DIR) / "samples" / "loop5.json").string();
    auto with = run("classify " + file);
    EXPECT_NE(with.out.find("Loop"), std::string::npos);
    auto without = run("--no-derive classify " + file);
    EXPECT_EQ(without.code, 0);
    EXPECT_EQ(without.out.find("Loop"), std::string::npos);
}

TEST(Cli, CorpusCommands) {
    EXPECT_EQ(run("corpus verify").code, 0);
    auto list = run("corpus list");
    EXPECT_NE(list.out.find("z3xR2"), std::string::npos);
    auto dir = fs::temp_directory_path() / "rpq_cli_export";
    fs::remove_all(dir);
    ASSERT_EQ(run("corpus export " + dir.string()).code, 0);
    for (const auto& e : corpus())
        EXPECT_EQ(read_file((dir / (e.name + ".json")).string()), format_algebra(e.algebra)) << e.name;
    fs::remove_all(dir);
}
