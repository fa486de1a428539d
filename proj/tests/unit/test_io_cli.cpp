#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qsanov/cli.hpp"
#include "qsanov/errors.hpp"
#include "qsanov/format.hpp"
#include "qsanov/io.hpp"

using namespace qsanov;

namespace {

const std::string kData = QSANOV_DATA_DIR;

std::string state(const char* name) { return kData + "/" + name + ".json"; }

struct Captured {
  int code;
  std::string out;
  std::string err;
};

Captured run_raw(const RawConfig& raw) {
  std::ostringstream out, err;
  const int code = run(validate_config(raw), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> validation_errors(const RawConfig& raw) {
  try {
    validate_config(raw);
  } catch (const ValidationError& e) {
    return e.errors();
  }
  return {};
}

bool mentions(const std::vector<std::string>& errors, const std::string& needle) {
  for (const auto& e : errors)
    if (e.find(needle) != std::string::npos) return true;
  return false;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Format, ShortestRoundTrip) {
  EXPECT_EQ(format_number(0.25), "0.25");
  EXPECT_EQ(format_number(0.1), "0.1");
  EXPECT_EQ(format_number(std::numeric_limits<double>::infinity()), "inf");
  EXPECT_EQ(format_number(-std::numeric_limits<double>::infinity()), "-inf");
  const double x = 0.1 + 0.2;
  EXPECT_EQ(std::stod(format_number(x)), x);
}

TEST(StateJson, ParsesAndRoundTrips) {
  const auto rho = load_density_matrix(state("coherent"));
  EXPECT_NEAR(rho.matrix()(0, 1).real(), 0.2, 0.0);
  const auto again = parse_density_matrix(density_matrix_to_json(rho));
  EXPECT_EQ((again.matrix() - rho.matrix()).cwiseAbs().maxCoeff(), 0.0);
  const auto no_im = parse_density_matrix(R"({"dim":2,"re":[[0.5,0],[0,0.5]]})");
  EXPECT_EQ(no_im.dim(), 2);
}

TEST(StateJson, ErrorsNameTheField) {
  auto message = [](const std::string& text) {
    try {
      parse_density_matrix(text, "state.json");
    } catch (const ValidationError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  EXPECT_NE(message(R"({"dim":2,"re":[[0.5,0],[0,"x"]]})").find("\"re\""), std::string::npos);
  EXPECT_NE(message(R"({"dim":2,"re":[[0.5,0],[0,0.5]],"im":[[0,0]]})").find("\"im\""), std::string::npos);
  EXPECT_NE(message(R"({"re":[[1]]})").find("\"dim\""), std::string::npos);
  EXPECT_NE(message(R"({"dim":2,"re":[[0.5,0],[0,0.5]])").find("malformed"), std::string::npos);
  EXPECT_NE(message(R"({"dim":2,"re":[[0.7,0],[0,0.5]]})").find("state.json"), std::string::npos);
}

TEST(Grid, Parsing) {
  EXPECT_EQ(parse_grid("0.1:0.3:3"), (std::vector<double>{0.1, 0.2, 0.3}));
  EXPECT_EQ(parse_grid("0.5:0.5:1"), (std::vector<double>{0.5}));
  EXPECT_THROW(parse_grid("0.1:0.3:0"), ValidationError);
  EXPECT_THROW(parse_grid("0.3:0.1:3"), ValidationError);
  EXPECT_THROW(parse_grid("0.1:0.3"), ValidationError);
  EXPECT_EQ(parse_n_range("2..4"), (std::vector<int>{2, 3, 4}));
  EXPECT_EQ(parse_n_range("7"), (std::vector<int>{7}));
  EXPECT_THROW(parse_n_range("4..2"), ValidationError);
}

TEST(Validation, AggregatesEveryProblem) {
  const auto errors = validation_errors({{"command", "exponents"}, {"r-grid", "0.1:0.2:0"}, {"bogus", "1"}});
  EXPECT_TRUE(mentions(errors, "r-grid"));
  EXPECT_TRUE(mentions(errors, "sigma"));
  EXPECT_TRUE(mentions(errors, "rho"));
  EXPECT_TRUE(mentions(errors, "bogus"));
  EXPECT_GE(errors.size(), 4u);
}

TEST(Validation, SampleNeedsSeed) {
  const auto errors = validation_errors({{"command", "sample"}, {"sigma", state("maximally-mixed")}, {"n", "2"}});
  ASSERT_EQ(errors.size(), 1u);
  EXPECT_TRUE(mentions(errors, "seed"));
}

TEST(Validation, DefaultsAndLimits) {
  const auto cfg = validate_config({{"command", "verify"}});
  EXPECT_EQ(cfg.n_values, (std::vector<int>{2, 3, 4, 5, 6}));
  EXPECT_EQ(cfg.s_grid.size(), 9u);
  EXPECT_EQ(cfg.d, 2);
  EXPECT_TRUE(mentions(validation_errors({{"command", "verify"}, {"n", "2..9"}}), "budget"));
  EXPECT_TRUE(mentions(validation_errors({{"command", "verify"}, {"d", "4"}}), "d"));
  EXPECT_TRUE(mentions(validation_errors({{"command", "measure"}, {"sigma", "x"}, {"n", "2"}, {"format", "csv"}}),
                       "csv"));
  EXPECT_TRUE(mentions(validation_errors({{"command", "launch"}}), "unknown command"));
}

TEST(Validation, JsonConfig) {
  const auto cfg = validate_config_text(R"({"command":"sample","sigma":"a.json","n":3,"seed":9})");
  EXPECT_EQ(cfg.command, Command::sample);
  EXPECT_EQ(cfg.n_values, (std::vector<int>{3}));
  EXPECT_EQ(*cfg.seed, 9u);
  EXPECT_THROW(validate_config_text("{"), ValidationError);
  EXPECT_THROW(validate_config_text(R"({"command":["verify"]})"), ValidationError);
}

TEST(Run, MeasureMaximallyMixed) {
  const auto res = run_raw({{"command", "measure"}, {"sigma", state("maximally-mixed")}, {"n", "2"}});
  EXPECT_EQ(res.code, 0);
  const auto doc = nlohmann::json::parse(res.out);
  ASSERT_EQ(doc.size(), 4u);
  for (const auto& e : doc) EXPECT_EQ(e.at("prob").get<double>(), 0.25);
  EXPECT_EQ(doc[0].at("young"), nlohmann::json::parse("[2,0]"));
  EXPECT_NE(res.out.find("\"prob\":0.25"), std::string::npos);
}

TEST(Run, SampleIsReproducible) {
  const RawConfig raw{{"command", "sample"}, {"sigma", state("coherent")}, {"n", "3"}, {"seed", "17"},
                      {"count", "200"}};
  const auto a = run_raw(raw);
  const auto b = run_raw(raw);
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(nlohmann::json::parse(a.out).size(), 200u);
}

TEST(Run, VerifyIsByteIdenticalAndPasses) {
  const auto a = run_raw({{"command", "verify"}});
  const auto b = run_raw({{"command", "verify"}});
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  const auto last = a.out.substr(a.out.rfind('{', a.out.rfind("\"summary\"")));
  const auto summary = nlohmann::json::parse(last).at("summary");
  EXPECT_EQ(summary.at("failed").get<int>(), 0);
  EXPECT_GT(summary.at("total").get<int>(), 0);
}

TEST(Run, FailedBoundsExitTwo) {
  const auto res = run_raw({{"command", "verify"}, {"n", "3..4"}, {"bound-scale", "1e-12"}});
  EXPECT_EQ(res.code, 2);
  EXPECT_NE(res.err.find("bounds failed"), std::string::npos);
}

TEST(Run, ExponentsCsvWithSidecar) {
  const auto dir = std::filesystem::temp_directory_path() / "qsanov_io_cli_test";
  std::filesystem::create_directories(dir);
  const auto csv = dir / "curve.csv";
  const auto res = run_raw({{"command", "exponents"},
                            {"sigma", state("diag-1-2")},
                            {"rho", state("maximally-mixed")},
                            {"r-grid", "0.01:0.05:5"},
                            {"format", "csv"},
                            {"out", csv.string()}});
  ASSERT_EQ(res.code, 0) << res.err;
  const std::string text = slurp(csv);
  EXPECT_EQ(text.rfind(kExponentCurveHeader, 0), 0u);
  std::istringstream lines(text);
  std::string line;
  std::getline(lines, line);
  std::getline(lines, line);
  EXPECT_EQ(line, "r,b_e_hat,s_opt");
  int rows = 0;
  while (std::getline(lines, line)) {
    const double r = std::stod(line.substr(0, line.find(',')));
    const double b = std::stod(line.substr(line.find(',') + 1));
    double best = 0.0;
    for (int k = 1; k < 10000; ++k) {
      const double s = k / 10000.0;
      const double phi = std::log(std::pow(1.0 / 3, s) * std::pow(0.5, 1 - s) + std::pow(2.0 / 3, s) * std::pow(0.5, 1 - s));
      best = std::max(best, (-(1 - s) * r - phi) / s);
    }
    EXPECT_NEAR(b, best, 1e-6) << line;
    ++rows;
  }
  EXPECT_EQ(rows, 5);
  const auto sidecar = nlohmann::json::parse(slurp(dir.string() + "/curve.csv.json"));
  EXPECT_TRUE(sidecar.contains("d_hat"));
  EXPECT_TRUE(sidecar.contains("d_sigma_rho"));
  std::filesystem::remove_all(dir);
}

TEST(Run, DivergenceReport) {
  const auto res = run_raw({{"command", "divergence"}, {"sigma", state("pure-zero")}, {"rho", state("maximally-mixed")}});
  ASSERT_EQ(res.code, 0) << res.err;
  const auto doc = nlohmann::json::parse(res.out);
  // rho = I/2 against a pure sigma: the slope limit diverges and is reported, not thrown
  EXPECT_TRUE(doc.at("d_hat").is_null());
  EXPECT_TRUE(doc.contains("d_hat_error"));
  EXPECT_EQ(doc.at("relative_entropy").get<std::string>(), "inf");
  const auto swapped = run_raw({{"command", "divergence"}, {"sigma", state("maximally-mixed")}, {"rho", state("pure-zero")}});
  EXPECT_NEAR(nlohmann::json::parse(swapped.out).at("d_hat").get<double>(), std::log(2.0), 1e-6);
}

TEST(Run, ScanWritesDiagnostics) {
  const auto res = run_raw({{"command", "scan"}, {"sigma", state("diag-1-2")}, {"rho", state("maximally-mixed")},
                            {"r", "0.02"}, {"n", "2..4"}, {"format", "csv"}});
  EXPECT_EQ(res.code, 0) << res.err;
  EXPECT_EQ(res.out.rfind(kScanHeader, 0), 0u);
}

TEST(Run, MissingFileIsAnError) {
  const auto res = run_raw({{"command", "measure"}, {"sigma", kData + "/nope.json"}, {"n", "2"}});
  EXPECT_EQ(res.code, 1);
  EXPECT_NE(res.err.find("nope.json"), std::string::npos);
}
