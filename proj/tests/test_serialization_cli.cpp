#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "ptmat/analytic.hpp"
#include "ptmat/cli.hpp"
#include "ptmat/errors.hpp"
#include "ptmat/serialization.hpp"
#include "test_support.hpp"

namespace ptmat {
namespace {

namespace fs = std::filesystem;
using io::Json;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "ptmat");
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("ptmat_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  std::string write_system(const std::string& name, const PTSystem& sys) const {
    io::write_text_file(path(name), io::dump(io::to_json(sys)));
    return path(name);
  }

  fs::path dir_;
};

TEST(Format, Doubles) {
  EXPECT_EQ(io::format_double(1.0), "1");
  EXPECT_EQ(io::format_double(0.1), "0.10000000000000001");
  EXPECT_EQ(io::format_double(-0.0), "0");
  EXPECT_EQ(io::format_double(-2.5e-300), "-2.5e-300");
  EXPECT_EQ(io::format_double(1.0 / 3.0), "0.33333333333333331");
  EXPECT_EQ(io::format_double(std::numeric_limits<double>::infinity()), "null");
}

TEST(Json, MatrixRoundTripIsExact) {
  Rng rng(1);
  const ComplexMatrix m = testing::random_matrix(5, rng);
  const Json j = Json::parse(io::dump(io::to_json(m)));
  EXPECT_EQ(io::complex_matrix_from_json(j), m);
}

TEST(Json, MatrixLayout) {
  const ComplexMatrix m(1, {Complex(0.5, -1)});
  EXPECT_EQ(io::dump(io::to_json(m)), "{\n  \"dim\": 1,\n  \"entries\": [[0.5, -1]]\n}\n");
}

TEST(Json, SystemRoundTripIsExact) {
  const PTSystem sys = random_pt_system({4, 2}, 77, 0.5);
  const PTSystem back = io::pt_system_from_json(Json::parse(io::dump(io::to_json(sys))));
  EXPECT_EQ(back.h(), sys.h());
  EXPECT_EQ(back.p(), sys.p());
  EXPECT_EQ(back.provenance().seed, std::optional<std::uint64_t>(77));
  EXPECT_EQ(back.provenance().coupling, std::optional<double>(0.5));
  EXPECT_EQ(back.provenance().blocks->b, sys.provenance().blocks->b);
  EXPECT_EQ(back.provenance().parity->angles, sys.provenance().parity->angles);
}

TEST(Json, MalformedInputs) {
  EXPECT_THROW(io::complex_matrix_from_json(Json::parse(R"({"dim": 2, "entries": [[1, 0]]})")), InvalidArgument);
  EXPECT_THROW(io::complex_matrix_from_json(Json::parse(R"({"entries": []})")), InvalidArgument);
  EXPECT_THROW(io::complex_matrix_from_json(Json::parse(R"({"dim": 1, "entries": [["a", 0]]})")),
               InvalidArgument);
}

TEST(Csv, TraceLayout) {
  EvolutionTrace trace{{0.0, 0.5}, {Complex(1, 0), Complex(0.25, -1)}, 0.0};
  std::ostringstream out;
  io::write_trace_csv(out, trace);
  EXPECT_EQ(out.str(), "t,re_inner,im_inner\n0,1,0\n0.5,0.25,-1\n");
}

TEST_F(Cli, CountsMatchesTable) {
  const Result r = run({"counts", "6", "--csv"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out,
            "D,parity_max,h0,pt,hermitian,real_symmetric\n1,0,1,1,1,1\n2,1,3,4,4,3\n3,2,6,8,9,6\n"
            "4,4,10,14,16,10\n5,6,15,21,25,15\n6,9,21,30,36,21\n");
  const Result text = run({"counts", "--max-dim", "2"});
  EXPECT_EQ(text.out.substr(0, text.out.find('\n')), "class              D=1   D=2");
  EXPECT_NE(text.out.find("\nhermitian            1     4\n"), std::string::npos) << text.out;
  EXPECT_EQ(run({"counts", "0"}).code, cli::kUsageError);
}

TEST_F(Cli, GenerateWritesValidSystem) {
  const Result r = run({"generate", "--dim", "2", "--signature", "1,1", "--seed", "7", "--out", path("s.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("parity params: 1"), std::string::npos);
  const PTSystem sys = io::pt_system_from_json(io::read_json_file(path("s.json")));
  EXPECT_TRUE(sys.h().is_symmetric(0.0));
  EXPECT_LT(max_abs(mat_mul(sys.p(), sys.p()) - ComplexMatrix::identity(2)), 1e-12);
}

TEST_F(Cli, GenerateReportsParityCount) {
  const Result r = run({"generate", "--dim", "8", "--signature", "6,2", "--seed", "1", "--out", path("s.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("parity params: 12\n"), std::string::npos) << r.out;
  // JSON on stdout pushes the report to stderr.
  const Result piped = run({"generate", "--dim", "8", "--signature", "6,2", "--seed", "1"});
  EXPECT_NE(piped.err.find("parity params: 12\n"), std::string::npos);
  EXPECT_EQ(piped.out, slurp(path("s.json")));
}

TEST_F(Cli, GenerateSingleSignatureIsReal) {
  ASSERT_EQ(run({"generate", "--dim", "3", "--signature", "3,0", "--out", path("s.json")}).code, 0);
  const PTSystem sys = io::pt_system_from_json(io::read_json_file(path("s.json")));
  EXPECT_TRUE(sys.h().is_real(0.0));
}

TEST_F(Cli, GenerateIsDeterministic) {
  ASSERT_EQ(run({"generate", "--dim", "5", "--seed", "42", "--out", path("a.json")}).code, 0);
  ASSERT_EQ(run({"generate", "--dim", "5", "--seed", "42", "--out", path("b.json")}).code, 0);
  EXPECT_EQ(slurp(path("a.json")), slurp(path("b.json")));
  ASSERT_EQ(run({"generate", "--dim", "5", "--seed", "43", "--out", path("c.json")}).code, 0);
  EXPECT_NE(slurp(path("a.json")), slurp(path("c.json")));
}

TEST_F(Cli, GenerateUsageErrors) {
  EXPECT_EQ(run({"generate", "--dim", "3", "--signature", "2,2"}).code, cli::kUsageError);
  EXPECT_EQ(run({"generate", "--dim", "3", "--signature", "x"}).code, cli::kUsageError);
  EXPECT_EQ(run({"generate"}).code, cli::kUsageError);
  EXPECT_EQ(run({}).code, cli::kUsageError);
  EXPECT_EQ(run({"--help"}).code, cli::kSuccess);
  EXPECT_EQ(run({"generate", "--dim", "2", "--out", path("missing/dir/x.json")}).code, cli::kUsageError);
}

TEST_F(Cli, GenerateUnbrokenAdvancesSeed) {
  const Result r = run({"generate", "--dim", "6", "--seed", "0", "--coupling", "0.25", "--unbroken", "--out",
                        path("s.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  const PTSystem sys = io::pt_system_from_json(io::read_json_file(path("s.json")));
  EXPECT_EQ(classify_phase(sys).phase, Phase::Unbroken);
}

TEST_F(Cli, AnalyzeRoundTripsHamiltonian) {
  ASSERT_EQ(run({"generate", "--dim", "4", "--seed", "9", "--out", path("s.json")}).code, 0);
  const Result r = run({"analyze", path("s.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json report = Json::parse(r.out);
  const PTSystem sys = io::pt_system_from_json(io::read_json_file(path("s.json")));
  EXPECT_EQ(io::complex_matrix_from_json(report["h"]), sys.h());
  EXPECT_EQ(report["dim"], 4);
}

TEST_F(Cli, AnalyzeUnbrokenTwoByTwo) {
  const analytic::TwoByTwoParams params{0.0, 0.5, 1.0, 0.9};
  const std::string file = write_system("u.json", PTSystem(analytic::h2(params), analytic::p2(0.9)));
  const Result r = run({"analyze", file});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json report = Json::parse(r.out);
  EXPECT_EQ(report["phase"], "unbroken");
  EXPECT_EQ(report["pt_norm_signs"], Json::array({-1, 1}));  // ascending: eps- then eps+
  EXPECT_TRUE(report["c_operator"].is_object());
  EXPECT_LT(report["invariants"]["c_squared"].get<double>(), 1e-10);
}

TEST_F(Cli, AnalyzeBrokenTwoByTwo) {
  const analytic::TwoByTwoParams params{0.0, 1.5, 1.0, 0.9};
  const std::string file = write_system("b.json", PTSystem(analytic::h2(params), analytic::p2(0.9)));
  const Result r = run({"analyze", file});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json report = Json::parse(r.out);
  EXPECT_EQ(report["phase"], "broken");
  EXPECT_EQ(report["conjugate_pairs"], 1);
  EXPECT_TRUE(report["c_operator"].is_null());
  EXPECT_TRUE(report["pt_norm_signs"].is_null());
}

TEST_F(Cli, AnalyzeRealSymmetricFlags) {
  const ComplexMatrix h(2, {1.0, 2.0, 2.0, -3.0});
  const std::string file = write_system("r.json", PTSystem(h, ComplexMatrix::identity(2)));
  const Json report = Json::parse(run({"analyze", file}).out);
  const auto classes = report["classes"].get<std::vector<std::string>>();
  for (const char* name : {"Hermitian", "PTSymmetric", "RealSymmetric"})
    EXPECT_NE(std::find(classes.begin(), classes.end(), name), classes.end()) << name;
}

TEST_F(Cli, AnalyzeMalformedInput) {
  io::write_text_file(path("bad.json"), "{ not json");
  EXPECT_EQ(run({"analyze", path("bad.json")}).code, cli::kUsageError);
  EXPECT_EQ(run({"analyze", path("absent.json")}).code, cli::kUsageError);
}

TEST_F(Cli, SweepAcrossBoundary) {
  const Result r = run({"sweep", "--param", "s", "--t", "1", "--range", "0,2,0.25"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "value,re_0,im_0,re_1,im_1,phase,min_gap");
  std::vector<std::string> phases;
  while (std::getline(lines, line)) {
    std::vector<std::string> fields;
    std::istringstream cells(line);
    for (std::string cell; std::getline(cells, cell, ',');) fields.push_back(cell);
    ASSERT_EQ(fields.size(), 7u) << line;
    phases.push_back(fields[5]);
  }
  EXPECT_EQ(phases, (std::vector<std::string>{"unbroken", "unbroken", "unbroken", "unbroken", "exceptional",
                                              "broken", "broken", "broken"}));
}

TEST_F(Cli, SweepPhiKeepsSpectrum) {
  const Result r = run({"sweep", "--param", "phi", "--r", "0.2", "--s", "0.6", "--range", "0,6.283185307179586,0.5",
                        "--out", path("phi.csv")});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream lines(slurp(path("phi.csv")));
  std::string line;
  std::getline(lines, line);
  int rows = 0;
  while (std::getline(lines, line)) {
    double value, re0, im0, re1, im1;
    char c;
    std::istringstream fields(line);
    fields >> value >> c >> re0 >> c >> im0 >> c >> re1 >> c >> im1;
    EXPECT_NEAR(re0, 0.2 - 0.8, 1e-12);
    EXPECT_NEAR(re1, 0.2 + 0.8, 1e-12);
    ++rows;
  }
  EXPECT_EQ(rows, 13);
}

TEST_F(Cli, SweepRangeHandling) {
  const Result empty = run({"sweep", "--param", "s", "--range", "1,1,0.1"});
  EXPECT_EQ(empty.code, 0);
  EXPECT_EQ(empty.out, "value,re_0,im_0,re_1,im_1,phase,min_gap\n");
  EXPECT_EQ(run({"sweep", "--param", "s", "--range", "2,1,0.1"}).code, cli::kUsageError);
  EXPECT_EQ(run({"sweep", "--param", "s", "--range", "0,1,0"}).code, cli::kUsageError);
  EXPECT_EQ(run({"sweep", "--param", "q", "--range", "0,1,0.5"}).code, cli::kUsageError);
}

TEST_F(Cli, SweepBlockEntryIsThreadIndependent) {
  ASSERT_EQ(run({"generate", "--dim", "4", "--seed", "3", "--out", path("s.json")}).code, 0);
  const Result one = run({"sweep", "--in", path("s.json"), "--param", "B[1,0]", "--range", "-1,1,0.05", "--threads", "1"});
  const Result many = run({"sweep", "--in", path("s.json"), "--param", "B[1,0]", "--range", "-1,1,0.05", "--threads", "7"});
  ASSERT_EQ(one.code, 0) << one.err;
  EXPECT_EQ(one.out, many.out);
  EXPECT_EQ(run({"sweep", "--in", path("s.json"), "--param", "A[5,0]", "--range", "0,1,0.5"}).code,
            cli::kUsageError);
  EXPECT_EQ(run({"sweep", "--in", path("s.json"), "--param", "angle[2]", "--range", "0,1,0.5"}).code, 0);
}

TEST_F(Cli, EvolveEigenstateIsConstant) {
  ASSERT_EQ(run({"generate", "--dim", "4", "--seed", "7", "--coupling", "0.25", "--unbroken", "--out", path("s.json")})
                .code,
            0);
  const Result r = run({"evolve", path("s.json"), "--state", "eigen:2", "--steps", "11"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "t,re_inner,im_inner");
  int rows = 0;
  while (std::getline(lines, line)) {
    double t, re, im;
    char c;
    std::istringstream(line) >> t >> c >> re >> c >> im;
    EXPECT_NEAR(re, 1.0, 1e-9);
    EXPECT_NEAR(im, 0.0, 1e-9);
    ++rows;
  }
  EXPECT_EQ(rows, 11);
}

TEST_F(Cli, EvolveRandomStateSucceeds) {
  ASSERT_EQ(run({"generate", "--dim", "5", "--seed", "2", "--coupling", "0.25", "--unbroken", "--out", path("s.json")})
                .code,
            0);
  const Result r = run({"evolve", path("s.json"), "--seed", "5", "--out", path("t.csv")});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(run({"evolve", path("s.json"), "--inner", "pt"}).code, 0);
  EXPECT_EQ(run({"evolve", path("s.json"), "--state", "eigen:9"}).code, cli::kUsageError);
  EXPECT_EQ(run({"evolve", path("s.json"), "--inner", "xyz"}).code, cli::kUsageError);
}

TEST_F(Cli, EvolveBrokenSystemFails) {
  const analytic::TwoByTwoParams params{0.0, 1.5, 1.0, 0.9};
  const std::string file = write_system("b.json", PTSystem(analytic::h2(params), analytic::p2(0.9)));
  EXPECT_EQ(run({"evolve", file}).code, cli::kNumericalFailure);
}

TEST_F(Cli, EvolveAsymmetricFixtureFlagsViolation) {
  const Result r = run({"evolve", std::string(PTMAT_FIXTURE_DIR) + "/asymmetric_h.json"});
  EXPECT_EQ(r.code, cli::kUnitarityViolation);
  EXPECT_NE(r.err.find("max_drift"), std::string::npos);
}

}  // namespace
}  // namespace ptmat
