#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "commands.hpp"
#include "document.hpp"

using namespace coarsecat;
using namespace coarsecat::cli;

namespace {

const char* kMinimal = R"({
  "version": "1",
  "spaces": {
    "X": {"carrier": ["a", "b", "c"], "coarse_generators": [["a", "b"]], "classical": true}
  }
})";

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string two_factor_doc() {
  return R"({
    "version": "1",
    "spaces": {
      "X": {"carrier": ["0", "1"], "coarse_generators": [["0", "1"]], "classical": false},
      "Y": {"carrier": ["p", "q"], "classical": true}
    }
  })";
}

struct BinaryRun {
  int exit_code = -1;
  std::string out;
};

#ifdef COARSECAT_BINARY
BinaryRun run_binary(const std::string& args, const std::string& input, const std::string& env = "") {
  const ::testing::TestInfo* info = ::testing::UnitTest::GetInstance()->current_test_info();
  const std::string in_path = ::testing::TempDir() + "coarsecat_cli_" + info->test_suite_name() + "_" +
                              info->name() + ".json";
  {
    std::ofstream f(in_path);
    f << input;
  }
  const std::string cmd = env + " \"" COARSECAT_BINARY "\" " + args + " < \"" + in_path + "\" 2>&1";
  BinaryRun r;
  FILE* p = popen(cmd.c_str(), "r");
  if (p == nullptr) return r;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(p);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}
#endif

}  // namespace

TEST(Parse, MinimalDocumentRoundTrips) {
  const Document d = parse(kMinimal);
  ASSERT_EQ(d.spaces.size(), 1U);
  const GBCSpace& x = std::get<GBCSpace>(d.space("X").space);
  EXPECT_EQ(x.size(), 3U);
  EXPECT_TRUE(x.classical());
  EXPECT_TRUE(x.max_entourage().contains(0, 1));
  const std::string once = serialize(d).dump(2);
  const std::string twice = serialize(parse(once)).dump(2);
  EXPECT_EQ(once, twice);
  EXPECT_EQ(std::get<GBCSpace>(parse(once).space("X").space), x);
}

TEST(Parse, FixturesAreNormalized) {
  for (const char* name : {"exa_N", "ex_PO"}) {
    const std::string text = read_file(std::string(COARSECAT_FIXTURE_DIR) + "/" + name + ".json");
    ASSERT_FALSE(text.empty());
    EXPECT_EQ(serialize(parse(text)).dump(2) + "\n", text) << name;
    ASSERT_TRUE(fixture_text(name).has_value());
    EXPECT_EQ(std::string(*fixture_text(name)), text);
  }
  EXPECT_FALSE(fixture_text("nope").has_value());
}

TEST(Parse, MaxEmptyHasNoBoundedPoints) {
  const Document d = parse(R"({"version": "1", "spaces": {"H": {"carrier": ["x", "y", "z"],
      "coarse_generators": [["x", "y"], ["y", "z"]], "classical": false}}})");
  const GBCSpace& h = std::get<GBCSpace>(d.space("H").space);
  EXPECT_TRUE(h.bounded_region().empty());
  EXPECT_EQ(h, max_empty(Carrier({"x", "y", "z"})));
}

TEST(Parse, IncompatibleGeneratorsEchoWitness) {
  const char* text = R"({"version": "1", "spaces": {"X": {"carrier": ["a", "b"],
      "coarse_generators": [["a", "b"]], "bounded_generators": [["a"]], "classical": false}}})";
  try {
    parse(text);
    FAIL();
  } catch (const IncompatibleStructures& e) {
    EXPECT_EQ(e.witness().bounded_point, "a");
    EXPECT_EQ(e.witness().escaping_point, "b");
    const Report r = error_report("validate", e);
    EXPECT_EQ(r.exit_code, 2);
    EXPECT_EQ(r.body["error"]["kind"], "IncompatibleStructures");
    EXPECT_EQ(r.body["error"]["witness"]["escaping_point"], "b");
  }
}

TEST(Parse, SyntaxErrorsAreLocated) {
  try {
    parse("{\n  \"version\": \"1\",\n  \"spaces\": {,}\n}");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(e.where().find("line 3"), std::string::npos) << e.where();
  }
}

TEST(Parse, ValidationErrors) {
  EXPECT_THROW(parse(R"({"version": "7"})"), ParseError);
  EXPECT_THROW(parse(R"({"version": "1", "spaces": {"X": {"carrier": ["a", "a"]}}})"), ParseError);
  EXPECT_THROW(parse(R"({"version": "1", "spaces": {"X": {"carrier": ["a"], "coarse_generators": [["a", "q"]]}}})"),
               ParseError);
  EXPECT_THROW(parse(R"({"version": "1", "spaces": {"X": {"carrier": ["a"]}},
      "maps": {"f": {"dom": "X", "cod": "Z", "table": {"a": "a"}}}})"),
               ParseError);
  try {
    parse(R"({"version": "1", "spaces": {"X": {"carrier": ["a"]}},
        "maps": {"f": {"dom": "X", "cod": "X", "table": {"a": "b"}}}})");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.where(), "/maps/f/table/a");
  }
}

TEST(Parse, CarrierCap) {
  const char* text = R"({"version": "1", "spaces": {"X": {"carrier": ["a", "b", "c"]}}})";
  EXPECT_NO_THROW(parse(text, 3));
  try {
    parse(text, 2);
    FAIL();
  } catch (const CapExceeded& e) {
    EXPECT_EQ(e.cap(), 2U);
    EXPECT_EQ(e.flag(), "COARSECAT_MAX_CARRIER");
  }
}

TEST(Parse, SymbolicSpacesAndMaps) {
  const Document d = parse(*fixture_text("exa_N"));
  EXPECT_EQ(std::get<SymSpace>(d.space("N_min_min").space), n_min_min());
  EXPECT_TRUE(is_symbolic(d, d.diagram("exa_N")));
  const SymDiagram s = build_sym_diagram(d, d.diagram("exa_N"));
  EXPECT_EQ(s.objects(), exa_N().objects());
  EXPECT_EQ(s.names(), exa_N().names());
  const Document m = parse(R"({"version": "1", "spaces": {"N": {"symbolic": true, "bornology": "all", "coarse": "diag"}},
      "maps": {"f": {"dom": "N", "cod": "N", "exceptions": {"0": 4}, "tail": [2, 2, 1]}}})");
  const SymMap& f = std::get<SymMap>(m.map("f").map);
  EXPECT_EQ(f(0), 4U);
  EXPECT_EQ(f(1), 3U);
  EXPECT_EQ(f(5), 11U);
}

TEST(Run, AdmissibleOnExaN) {
  const Report r = run("admissible", parse(*fixture_text("exa_N")), Flags{});
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_EQ(r.body["holds"], false);
  EXPECT_EQ(r.body["witness"]["preimage"], "ℕ");
  EXPECT_EQ(r.body["witness"]["object"], "N_min_min");
  EXPECT_EQ(r.body["witness"]["chain"], Json::array({"N_max_max"}));
}

TEST(Run, ColimitOnExPO) {
  Flags f;
  f.diagram = "ex_PO";
  const Report r = run("colimit", parse(*fixture_text("ex_PO")), f);
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_EQ(r.body["tag"], "(Triv, Full)");
  EXPECT_EQ(r.body["space"], to_json(n_max_empty()));
}

TEST(Run, OracleOnProduct) {
  Flags f;
  f.side = "limit";
  f.mutations = 10;
  const Report r = run("oracle", parse(two_factor_doc()), f);
  EXPECT_EQ(r.exit_code, 0) << r.body.dump(2);
  EXPECT_EQ(r.body["mutations"]["rejected"], 10);
}

TEST(Run, EveryCommandIsKnown) {
  const std::vector<std::string> expect{"validate", "normalize", "product", "coproduct", "equalizer",
                                        "coequalizer", "limit", "colimit", "tensor", "pullback",
                                        "components", "split", "flasque", "close", "equivalent",
                                        "excisive", "nice", "admissible", "exists-classical", "oracle"};
  std::vector<std::string> got = command_names();
  std::sort(got.begin(), got.end());
  std::vector<std::string> want = expect;
  std::sort(want.begin(), want.end());
  EXPECT_EQ(got, want);
  EXPECT_THROW(run("frobnicate", parse(kMinimal), Flags{}), std::exception);
}

TEST(Run, PredicatesOnSmallDocument) {
  const Document d = parse(two_factor_doc());
  Flags on_x;
  on_x.spaces = {"X"};
  EXPECT_EQ(run("flasque", d, on_x).exit_code, 0);
  Flags on_y;
  on_y.spaces = {"Y"};
  EXPECT_EQ(run("flasque", d, on_y).exit_code, 1);
  EXPECT_EQ(run("components", d, on_y).body["count"], 2);
  const Report s = run("split", d, on_y);
  EXPECT_EQ(s.exit_code, 0);
  EXPECT_EQ(run("product", d, Flags{}).exit_code, 0);
  EXPECT_EQ(run("coproduct", d, Flags{}).exit_code, 0);
  EXPECT_EQ(run("tensor", d, Flags{}).exit_code, 0);
  EXPECT_EQ(run("validate", d, Flags{}).exit_code, 0);
  EXPECT_EQ(run("normalize", d, Flags{}).body, serialize(d));
}

TEST(Run, ValidateReportsBadMorphisms) {
  const Document d = parse(R"({"version": "1", "spaces": {
      "X": {"carrier": ["a", "b"], "coarse_generators": [["a", "b"]], "classical": true},
      "Y": {"carrier": ["a", "b"], "classical": true}},
    "maps": {"id": {"dom": "X", "cod": "Y", "table": {"a": "a", "b": "b"}}}})");
  const Report r = run("validate", d, Flags{});
  EXPECT_EQ(r.exit_code, 1);
}

TEST(Run, Determinism) {
  Flags f;
  f.side = "limit";
  f.seed = 5;
  f.mutations = 3;
  const Document d = parse(two_factor_doc());
  EXPECT_EQ(run("oracle", d, f).body.dump(), run("oracle", d, f).body.dump());
  EXPECT_EQ(run("admissible", parse(*fixture_text("exa_N")), Flags{}).body.dump(),
            run("admissible", parse(*fixture_text("exa_N")), Flags{}).body.dump());
}

#ifdef COARSECAT_BINARY

TEST(Binary, ExitCodes) {
  const BinaryRun adm = run_binary("admissible --fixture exa_N", "");
  EXPECT_EQ(adm.exit_code, 1) << adm.out;
  EXPECT_NE(adm.out.find("N_max_max"), std::string::npos);

  const BinaryRun po = run_binary("colimit --fixture ex_PO --diagram ex_PO", "");
  EXPECT_EQ(po.exit_code, 0) << po.out;
  EXPECT_NE(po.out.find("(Triv, Full)"), std::string::npos);

  const BinaryRun oracle = run_binary("oracle --test-cap 3 --side limit", two_factor_doc());
  EXPECT_EQ(oracle.exit_code, 0) << oracle.out;

  const BinaryRun bad = run_binary("frobnicate", kMinimal);
  EXPECT_EQ(bad.exit_code, 2) << bad.out;

  const BinaryRun syntax = run_binary("validate", "{ nope");
  EXPECT_EQ(syntax.exit_code, 2);
  EXPECT_NE(syntax.out.find("ParseError"), std::string::npos);
}

TEST(Binary, CapsAndFlags) {
  const BinaryRun cap = run_binary("oracle --test-cap 9 --side limit", two_factor_doc());
  EXPECT_EQ(cap.exit_code, 2);
  EXPECT_NE(cap.out.find("CapExceeded"), std::string::npos);
  EXPECT_NE(cap.out.find("--test-cap"), std::string::npos);

  const BinaryRun env = run_binary("validate", kMinimal, "COARSECAT_MAX_CARRIER=2");
  EXPECT_EQ(env.exit_code, 2);
  EXPECT_NE(env.out.find("COARSECAT_MAX_CARRIER"), std::string::npos);
  EXPECT_EQ(run_binary("validate", kMinimal, "COARSECAT_MAX_CARRIER=3").exit_code, 0);
}

TEST(Binary, ByteIdenticalReports) {
  const BinaryRun a = run_binary("normalize --fixture ex_PO", "");
  const BinaryRun b = run_binary("normalize --fixture ex_PO", "");
  EXPECT_EQ(a.exit_code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out, read_file(std::string(COARSECAT_FIXTURE_DIR) + "/ex_PO.json"));
}

#endif
