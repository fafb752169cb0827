#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "edparse/conllu.h"
#include "testing/fixtures.h"
#include "testing/synthetic.h"

namespace edparse {
namespace {

namespace fs = std::filesystem;

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string ReadFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void WriteFile(const fs::path& path, const std::string& text) {
  std::ofstream(path, std::ios::binary) << text;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("edparse_cli_" + std::to_string(::getpid()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string Path(const std::string& name) const { return (dir_ / name).string(); }

  // Runs `edparse <args>` through the shell with optional stdin file.
  RunResult Edparse(const std::string& args, const std::string& stdin_path = "") {
    const std::string out = Path("stdout.txt");
    const std::string err = Path("stderr.txt");
    std::string command = std::string(EDPARSE_CLI_PATH) + " " + args + " >" +
                          out + " 2>" + err;
    command += " <" + (stdin_path.empty() ? std::string("/dev/null") : stdin_path);
    const int status = std::system(command.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = ReadFile(out);
    r.err = ReadFile(err);
    return r;
  }

  fs::path dir_;
};

std::string Data(const std::string& name) { return testing::DataPath(name); }

int CountLines(const std::string& text, const std::string& prefix) {
  int count = 0;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    count += line.rfind(prefix, 0) == 0;
  }
  return count;
}

TEST_F(CliTest, OracleWritesFigure4Trace) {
  const RunResult r = Edparse("oracle --input " + Data("figure2.conllu"));
  ASSERT_EQ(r.exit_code, 0) << r.err;
  EXPECT_EQ(r.out.rfind("# sent_id = wiki-3745.p.38.s.5\n1\tSHIFT\n", 0), 0u);
  EXPECT_NE(r.out.find("\n73\tFINISH\n"), std::string::npos);
  EXPECT_EQ(r.out.find("\n74\t"), std::string::npos);
}

TEST_F(CliTest, OracleOnEmptyInput) {
  WriteFile(Path("empty.conllu"), "");
  const RunResult r = Edparse("oracle", Path("empty.conllu"));
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_EQ(r.out, "");
}

TEST_F(CliTest, OracleReportsUnderivableSentence) {
  WriteFile(Path("heads.conllu"),
            SerializeConllu({testing::LoadSingle("figure1.conllu"),
                             testing::ManyHeadSentence(8)}));
  const RunResult r = Edparse("oracle -i " + Path("heads.conllu") + " --trace " +
                              Path("t.tsv"));
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_NE(r.err.find("many-heads-8: "), std::string::npos);
  EXPECT_NE(r.err.find("heads"), std::string::npos);
  EXPECT_NE(ReadFile(Path("t.tsv")).find("# error = "), std::string::npos);
}

TEST_F(CliTest, ReplayMatchesFixtures) {
  for (const char* name :
       {"figure1.conllu", "figure2.conllu", "synthetic50.conllu"}) {
    const RunResult r = Edparse("replay --input " + Data(name));
    EXPECT_EQ(r.exit_code, 0) << name << r.out;
    EXPECT_EQ(CountLines(r.out, "replay_match="), 1);
    EXPECT_NE(r.out.find("(100.00%)"), std::string::npos);
    EXPECT_EQ(r.out.find("MISMATCH"), std::string::npos);
  }
}

TEST_F(CliTest, ReplayDetectsCorruptedGold) {
  ASSERT_EQ(Edparse("oracle -i " + Data("figure1.conllu") + " -o " +
                    Path("t.tsv"))
                .exit_code,
            0);
  std::string text = ReadFile(Data("figure1.conllu"));
  const size_t at = text.find(":punct");
  ASSERT_NE(at, std::string::npos);
  text.replace(at, 6, ":dep");
  WriteFile(Path("corrupt.conllu"), text);
  const RunResult r =
      Edparse("replay -i " + Path("corrupt.conllu") + " --trace " + Path("t.tsv"));
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_NE(r.out.find("reviews-077034-0002\tMISMATCH"), std::string::npos);
  EXPECT_NE(r.out.find("replay_match=0/1"), std::string::npos);
}

TEST_F(CliTest, EvalIdentity) {
  const RunResult r = Edparse("eval --gold " + Data("figure2.conllu") +
                              " --pred " + Data("figure2.conllu") +
                              " --per-label");
  ASSERT_EQ(r.exit_code, 0) << r.err;
  EXPECT_NE(r.out.find("ELAS_F1=100.00\n"), std::string::npos);
  EXPECT_NE(r.out.find("nmod:van"), std::string::npos);
}

TEST_F(CliTest, EvalMisalignedIsSemanticError) {
  const RunResult r = Edparse("eval -g " + Data("figure1.conllu") + " -p " +
                              Data("figure2.conllu"));
  EXPECT_EQ(r.exit_code, 2);
}

TEST_F(CliTest, OracleParseThenEval) {
  const std::string in = Data("synthetic50.conllu");
  ASSERT_EQ(Edparse("parse --policy oracle --gold " + in + " -i " + in +
                    " -o " + Path("p.conllu"))
                .exit_code,
            0);
  EXPECT_EQ(Edparse("validate -i " + Path("p.conllu")).exit_code, 0);
  const RunResult r = Edparse("eval -g " + in + " -p " + Path("p.conllu"));
  EXPECT_NE(r.out.find("ELAS_F1=100.00\n"), std::string::npos) << r.out;
}

TEST_F(CliTest, ShiftParseValidates) {
  const RunResult parsed =
      Edparse("parse --policy shift", Data("figure2.conllu"));
  ASSERT_EQ(parsed.exit_code, 0);
  WriteFile(Path("s.conllu"), parsed.out);
  const RunResult v = Edparse("validate", Path("s.conllu"));
  EXPECT_EQ(v.exit_code, 0);
  EXPECT_EQ(v.out, "valid=1/1\n");
}

TEST_F(CliTest, ValidateListsViolations) {
  EnhancedGraph g = EnhancedGraph::WithWords(3);
  g.AddArc(NodeId::Root(), NodeId::Word(1), "root");
  g.AddArc(NodeId::Word(2), NodeId::Word(3), "x");
  g.AddArc(NodeId::Word(3), NodeId::Word(2), "y");
  Sentence s = testing::LoadSingle("figure1.conllu");
  s.rows.resize(3);
  s.metadata = {"# sent_id = broken"};
  WriteFile(Path("b.conllu"), SerializeConllu({InjectGraph(s, g)}));
  const RunResult r = Edparse("validate -i " + Path("b.conllu"));
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_EQ(r.out, "broken\tUnreachable(2)\tUnreachable(3)\nvalid=0/1\n");
}

TEST_F(CliTest, StatsCountsLabels) {
  const RunResult r = Edparse("stats -i " + Data("figure2.conllu"));
  ASSERT_EQ(r.exit_code, 0);
  EXPECT_NE(r.out.find("labels=15\n"), std::string::npos);
  EXPECT_NE(r.out.find("null_nodes=1\n"), std::string::npos);
  EXPECT_EQ(CountLines(r.out, "label\t"), 15);
}

TEST_F(CliTest, TrainParseIsDeterministic) {
  const std::string a = Data("figure1.conllu");
  const std::string b = Data("figure2.conllu");
  for (const char* run : {"1", "2"}) {
    const RunResult t = Edparse("train -i " + a + " -i " + b +
                                " --epochs 3 --seed 7 -m " + Path(std::string("m") + run) +
                                " --log " + Path(std::string("log") + run));
    ASSERT_EQ(t.exit_code, 0) << t.err;
    const RunResult p = Edparse("parse -m " + Path(std::string("m") + run) +
                                " -i " + b + " -o " + Path(std::string("p") + run));
    ASSERT_EQ(p.exit_code, 0) << p.err;
  }
  EXPECT_EQ(ReadFile(Path("m1")), ReadFile(Path("m2")));
  EXPECT_EQ(ReadFile(Path("p1")), ReadFile(Path("p2")));
  EXPECT_EQ(ReadFile(Path("log1")), ReadFile(Path("log2")));
  EXPECT_EQ(CountLines(ReadFile(Path("log1")), "epoch "), 3);
  EXPECT_EQ(ReadFile(Path("m1")).rfind("edparse-model 1\n", 0), 0u);
  EXPECT_EQ(Edparse("validate -i " + Path("p1")).exit_code, 0);
}

TEST_F(CliTest, JobsPreserveOrder) {
  const std::string in = Data("synthetic50.conllu");
  const RunResult one = Edparse("parse --policy shift -j 1 -i " + in);
  const RunResult four = Edparse("parse --policy shift -j 4 -i " + in);
  ASSERT_EQ(one.exit_code, 0);
  EXPECT_EQ(one.out, four.out);
  EXPECT_EQ(Edparse("oracle -j 3 -i " + in).out, Edparse("oracle -i " + in).out);
  EXPECT_EQ(Edparse("eval -j 3 -g " + in + " -p " + in).out,
            Edparse("eval -g " + in + " -p " + in).out);
}

TEST_F(CliTest, UsageAndIoErrors) {
  EXPECT_EQ(Edparse("").exit_code, 1);
  EXPECT_EQ(Edparse("frobnicate").exit_code, 1);
  EXPECT_EQ(Edparse("parse -i " + Data("figure1.conllu")).exit_code, 1);
  EXPECT_EQ(Edparse("eval -g " + Path("missing") + " -p " + Path("missing")).exit_code, 1);
  EXPECT_EQ(Edparse("parse -m " + Path("missing") + " -i " + Data("figure1.conllu")).exit_code, 1);
  WriteFile(Path("bad.conllu"), "1\tonly\tthree\n\n");
  const RunResult r = Edparse("stats -i " + Path("bad.conllu"));
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_NE(r.err.find("line 1"), std::string::npos) << r.err;
  EXPECT_EQ(Edparse("--help").exit_code, 0);
}

}  // namespace
}  // namespace edparse
