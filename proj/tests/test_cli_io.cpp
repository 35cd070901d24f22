#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "lindblad/cli.hpp"
#include "lindblad/model_io.hpp"
#include "lindblad/scenarios.hpp"
#include "lindblad/superop.hpp"

using namespace lindblad;

namespace {

int run_argv(std::vector<std::string> args) {
  std::vector<char*> argv;
  argv.reserve(args.size());
  for (auto& a : args) argv.push_back(a.data());
  return run_cli(static_cast<int>(argv.size()), argv.data());
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name)
      : path(std::string("/tmp/lindblad_test_") + name) {}
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("model serialization round-trips bitwise") {
  LindbladModel models[] = {ce1_model(true), ce2_model(), depolarizing_model(0.3)};
  for (const LindbladModel& m : models) {
    std::string once = serialize_model(m);
    LindbladModel back = parse_model_text(once);
    CHECK(serialize_model(back) == once);
    CHECK(back.dim == m.dim);
    CHECK(back.jumps.jumps.size() == m.jumps.jumps.size());
  }
}

TEST_CASE("parse errors carry the offending field path") {
  auto expect_path = [](const std::string& text, const std::string& fragment) {
    try {
      parse_model_text(text);
      FAIL("expected ModelParseError for ", fragment);
    } catch (const ModelParseError& e) {
      CHECK(e.path().find(fragment) != std::string::npos);
    }
  };

  expect_path(R"({"jumps": []})", "dim");
  expect_path(R"({"dim": 0, "jumps": []})", "dim");
  expect_path(R"({"dim": 200, "jumps": []})", "dim");
  // ragged row
  expect_path(R"({"dim": 2, "jumps": [[[[0,0],[0,0]],[[0,0]]]]})", "jumps[0]");
  // an entry that is not an [re, im] pair
  expect_path(R"({"dim": 2, "jumps": [[[[0,0],[0,0]],[[0,0],[1,2,3]]]]})",
              "jumps[0]");
  expect_path(
      R"({"dim": 2, "jumps": [], "hamiltonian": {"kind": "nonsense"}})",
      "hamiltonian");
  // constant Hamiltonian must be Hermitian
  expect_path(
      R"({"dim": 2, "jumps": [], "hamiltonian": {"kind": "constant",
          "matrix": [[[0,0],[1,0]],[[0,0],[0,0]]]}})",
      "hamiltonian");
  expect_path(
      R"({"dim": 2, "jumps": [], "hamiltonian": {"kind": "phi_drive", "c": 1}})",
      "hamiltonian");
  CHECK_THROWS_AS(parse_model_text("not json at all"), ModelParseError);
}

TEST_CASE("loading a missing file names the file") {
  try {
    load_model("/nonexistent/path/model.json");
    FAIL("expected a throw");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("/nonexistent/path/model.json") !=
          std::string::npos);
  }
}

TEST_CASE("state specs accept kets and inline matrices") {
  Matrix plus1 = parse_state_spec("+1", 4);
  CHECK((plus1 - ket_density("+1")).cwiseAbs().maxCoeff() < 1e-15);
  Matrix zz = parse_state_spec("00", 4);
  CHECK((zz - ket_density("00")).cwiseAbs().maxCoeff() < 1e-15);

  Matrix inline_state =
      parse_state_spec(R"([[[0.5,0],[0,0]],[[0,0],[0.5,0]]])", 2);
  CHECK((inline_state - 0.5 * Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() <
        1e-15);

  CHECK_THROWS_AS(parse_state_spec("0q", 4), std::invalid_argument);
  CHECK_THROWS_AS(parse_state_spec("0", 4), std::invalid_argument);
  // trace 2
  CHECK_THROWS_AS(parse_state_spec(R"([[[1,0],[0,0]],[[0,0],[1,0]]])", 2),
                  std::invalid_argument);
  // not positive semidefinite
  CHECK_THROWS_AS(parse_state_spec(R"([[[1.5,0],[0,0]],[[0,0],[-0.5,0]]])", 2),
                  std::invalid_argument);
}

TEST_CASE("observable specs accept Pauli strings") {
  Matrix iz = parse_observable_spec("IZ", 4);
  CHECK((iz - kron(Matrix::Identity(2, 2), pauli_z())).cwiseAbs().maxCoeff() <
        1e-15);
  Matrix xy = parse_observable_spec("xy", 4);
  CHECK((xy - kron(pauli_x(), pauli_y())).cwiseAbs().maxCoeff() < 1e-15);
  CHECK_THROWS_AS(parse_observable_spec("XQ", 4), std::invalid_argument);
  CHECK_THROWS_AS(parse_observable_spec("X", 4), std::invalid_argument);
  // inline must be Hermitian
  CHECK_THROWS_AS(parse_observable_spec(R"([[[0,0],[1,0]],[[0,0],[0,0]]])", 2),
                  std::invalid_argument);
}

TEST_CASE("real formatting survives a round-trip") {
  for (double x : {1.0 / 3.0, 2.0, -1.7976931348623157e308, 6.02e23,
                   0.1234567890123456789, 1e-300}) {
    CHECK(std::stod(format_real(x)) == x);
  }
}

TEST_CASE("fnv1a matches the reference constants") {
  CHECK(fnv1a("") == 14695981039346656037ULL);
  CHECK(fnv1a("a") == 0xaf63dc4c8601ec8cULL);
  CHECK(fnv1a("ab") != fnv1a("ba"));
}

TEST_CASE("cli maps usage errors to exit code 2") {
  CHECK(run_argv({"lindblad", "no-such-command"}) == 2);
  CHECK(run_argv({"lindblad", "certify"}) == 2);  // --model is required
  CHECK(run_argv({"lindblad", "certify", "--model", "/nonexistent.json"}) == 2);
  CHECK(run_argv({"lindblad"}) == 2);  // a subcommand is required
}

TEST_CASE("certify subcommand writes a parseable report") {
  TempFile model("certify_model.json");
  TempFile out("certify_out.json");
  {
    std::ofstream f(model.path);
    f << serialize_model(depolarizing_model(1.0));
  }
  int code = run_argv({"lindblad", "certify", "--model", model.path, "--out",
                       out.path});
  REQUIRE(code == 0);

  nlohmann::json report = nlohmann::json::parse(slurp(out.path));
  CHECK(report.at("command").get<std::string>().find("certify") !=
        std::string::npos);
  CHECK(report.contains("inputs_digest"));
  const auto& cert = report.at("results").at("certificate");
  CHECK(cert.at("method") == "R");
  CHECK(cert.at("gamma").get<double>() == doctest::Approx(4.0).epsilon(1e-9));
  CHECK(cert.at("K").get<double>() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("cli output is deterministic across runs") {
  TempFile model("det_model.json");
  TempFile out("det_out.json");
  {
    std::ofstream f(model.path);
    f << serialize_model(ladder3_model(1.3, 0.9));
  }
  std::vector<std::string> args{"lindblad", "certify", "--model", model.path,
                                "--seed",   "7",       "--out",   out.path};
  REQUIRE(run_argv(args) == 0);
  std::string a = slurp(out.path);
  REQUIRE(run_argv(args) == 0);
  std::string b = slurp(out.path);
  REQUIRE(!a.empty());
  CHECK(a == b);
}

TEST_CASE("perturb subcommand reports the corrected pair") {
  TempFile out("perturb_out.json");
  int code = run_argv({"lindblad", "perturb", "lemma", "--k", "1", "--gamma",
                       "2", "--delta", "0.5", "--out", out.path});
  REQUIRE(code == 0);
  nlohmann::json report = nlohmann::json::parse(slurp(out.path));
  const auto& contraction = report.at("results").at("contraction");
  CHECK(contraction.at("gamma_tilde").get<double>() ==
        doctest::Approx(1.5).epsilon(1e-12));
  CHECK(contraction.at("K_tilde").get<double>() ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("ladder scan emits one row per dimension") {
  TempFile out("scan_out.csv");
  int code = run_argv({"lindblad", "ladder", "scan", "--family", "am",
                       "--dmax", "4", "--out", out.path});
  REQUIRE(code == 0);
  std::string csv = slurp(out.path);
  std::istringstream lines(csv);
  std::string line;
  std::vector<std::string> rows;
  while (std::getline(lines, line)) {
    if (!line.empty()) rows.push_back(line);
  }
  REQUIRE(rows.size() == 4);  // header + d = 2, 3, 4
  CHECK(rows[0] == "d,mu2");
  CHECK(rows[1].rfind("2,", 0) == 0);
  CHECK(std::stod(rows[1].substr(2)) == doctest::Approx(-0.5).epsilon(1e-9));
}

TEST_CASE("envelope subcommand rejects a non-density state") {
  TempFile model("env_model.json");
  {
    std::ofstream f(model.path);
    f << serialize_model(depolarizing_model(1.0));
  }
  int code = run_argv({"lindblad", "envelope", "--model", model.path, "--rho",
                       "0", "--sigma", "0q", "--t-end", "1"});
  CHECK(code == 2);
}
