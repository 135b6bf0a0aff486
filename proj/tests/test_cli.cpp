#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "kershaw/commands.hpp"
#include "kershaw/config.hpp"
#include "kershaw/errors.hpp"
#include "kershaw/output.hpp"
#include "kershaw/realizability.hpp"

using namespace kershaw;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("kershaw_cli_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("parse_config examples") {
  const auto c = parse_config("scenario = plane_source\nmodel = kershaw\norder = 2\nn_cells = 1000");
  CHECK(c.scenario == ScenarioName::PlaneSource);
  CHECK(c.model_kind() == ClosureKind::kershaw(2));
  CHECK(c.n_cells == 1000);
  CHECK(c.cfl == 0.5);
  CHECK(c.echo().find("cfl=0.5") != std::string::npos);

  try {
    parse_config("order = 0");
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    CHECK(e.field() == "order");
  }

  const auto m = parse_config("model = mn\norder = 2\nscenario = source_beam");
  CHECK(m.model_kind() == ClosureKind::mn(2));
  CHECK(m.scenario == ScenarioName::SourceBeam);
  CHECK(m.effective_final_time() == 2.5);
}

TEST_CASE("parse_config reports line numbers and fields") {
  try {
    parse_config("# comment\nmodel = kershaw\n\ncolour = blue\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 4);
  }
  try {
    parse_config("order = 2\norder = 3");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
  CHECK_THROWS_AS(parse_config("model kershaw"), ParseError);
  try {
    parse_config("cfl = fast");
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    CHECK(e.field() == "cfl");
  }
  CHECK_THROWS_AS(parse_config("model = sn"), ValidationError);
  CHECK_THROWS_AS(parse_config("scenario = lattice"), ValidationError);
  CHECK_THROWS_AS(parse_config("cfl = 1.5"), ValidationError);
  CHECK_THROWS_AS(parse_config("n_cells = 201"), ValidationError);
  CHECK_THROWS_AS(parse_config("output_times = 0.5, 3"), ValidationError);
  CHECK_THROWS_AS(parse_config("orders = 1, 0"), ValidationError);
}

TEST_CASE("parse_config reads lists, references and comments") {
  const auto c = parse_config(
      "scenario = source_beam  # trailing comment\n"
      "reference_model = pn\nreference_order = 39\n"
      "orders = 4, 1, 2\noutput_times = 0, 1.25, 2.5\nfinal_time = 2.5\noutput_dir = out/x\n");
  REQUIRE(c.reference_kind().has_value());
  CHECK(*c.reference_kind() == ClosureKind::pn(39));
  CHECK(c.orders == std::vector<std::size_t>{4, 1, 2});
  CHECK(c.output_times == std::vector<double>{0.0, 1.25, 2.5});
  CHECK(c.output_dir == "out/x");
  CHECK_FALSE(parse_config("reference_model = none").reference_kind().has_value());
}

TEST_CASE("CSV round trip keeps the schema") {
  OutputTable t;
  t.kind = TableKind::Surface;
  t.meta = "model=kershaw order=2";
  t.columns = {"phi1", "phi2", "phi3"};
  t.add_row({format_cell(0.1), format_cell(0.5), format_cell(std::nan(""))});
  t.add_row({format_cell(1.0 / 3.0), format_cell(1e-300), format_cell(-2.5)});
  CHECK_THROWS_AS(t.add_row({"1"}), Error);

  const std::string text = to_csv(t);
  CHECK(text.rfind("# config: surface; model=kershaw order=2\n# phi1,phi2,phi3\n", 0) == 0);
  const auto back = parse_csv(text);
  CHECK(back.kind == TableKind::Surface);
  CHECK(back.meta == t.meta);
  CHECK(back.columns == t.columns);
  CHECK(back.rows == t.rows);
  CHECK(back.rows[0][2].empty());
  CHECK(std::stod(back.rows[1][0]) == 1.0 / 3.0);

  CHECK_THROWS_AS(parse_csv("phi1\n"), ParseError);
  try {
    parse_csv("# config: errors; x\n# model,N\nkershaw,1\nkershaw\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 4);
  }
}

TEST_CASE("run writes profile and diagnostics tables") {
  const fs::path out = scratch_dir("run");
  auto c = parse_config("scenario = plane_source\nmodel = kershaw\norder = 3\nn_cells = 40\n"
                        "reference_model = pn\nreference_order = 9\n");
  const auto files = run_command(c, out);
  REQUIRE(files.size() == 3);

  const auto profile = read_csv(out / "profile.csv");
  CHECK(profile.kind == TableKind::Profile);
  CHECK(profile.columns == std::vector<std::string>{"t", "z", "u0", "u1", "u2", "u3"});
  CHECK(profile.rows.size() == 11 * 40);
  CHECK(profile.meta == c.echo());
  for (std::size_t i = 1; i < 40; ++i) {
    CHECK(std::stod(profile.rows[i][1]) > std::stod(profile.rows[i - 1][1]));
  }
  for (const auto& row : profile.rows) {
    MomentVector u(3);
    for (std::size_t j = 0; j <= 3; ++j) u[j] = std::stod(row[2 + j]);
    CHECK(is_realizable(u, 1e-8));
  }

  const auto diag = read_csv(out / "diagnostics.csv");
  CHECK(diag.columns == std::vector<std::string>{"t", "mass", "min_slack"});
  CHECK(diag.rows.size() == 11);

  const auto err = read_csv(out / "errors.csv");
  CHECK(err.columns == std::vector<std::string>{"model", "N", "L1", "Linf"});
  REQUIRE(err.rows.size() == 1);
  CHECK(err.rows[0][0] == "kershaw");
  CHECK(err.rows[0][1] == "3");
}

TEST_CASE("sweep errors decrease with the order") {
  const fs::path out = scratch_dir("sweep");
  const auto c = parse_config("scenario = plane_source\nmodel = kershaw\nn_cells = 1000\n"
                              "reference_model = pn\nreference_order = 99\norders = 1,2,3,4\n");
  sweep_command(c, out, 2);
  const auto err = read_csv(out / "errors.csv");
  REQUIRE(err.rows.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) CHECK(err.rows[i][1] == std::to_string(i + 1));
  for (std::size_t i = 1; i < 4; ++i) CHECK(std::stod(err.rows[i][2]) < std::stod(err.rows[i - 1][2]));
  CHECK(fs::exists(out / "profile_k4.csv"));
  CHECK(fs::exists(out / "diagnostics_k1.csv"));

  CHECK_THROWS_AS(sweep_command(parse_config("n_cells = 20"), out), ValidationError);
}

TEST_CASE("identical configs give byte-identical files") {
  const auto c = parse_config("scenario = source_beam\nmodel = kershaw\nn_cells = 60\n"
                              "reference_model = pn\nreference_order = 15\norders = 1,2,3\n");
  const fs::path a = scratch_dir("det_a"), b = scratch_dir("det_b");
  sweep_command(c, a, 1);
  sweep_command(c, b, 3);
  for (const auto& entry : fs::directory_iterator(a)) {
    const fs::path other = b / entry.path().filename();
    REQUIRE(fs::exists(other));
    CHECK(slurp(entry.path()) == slurp(other));
  }
}

TEST_CASE("surface masks exactly the non-realizable cells") {
  const fs::path out = scratch_dir("surface");
  const auto c = parse_config("model = kershaw\norder = 2\n");
  CHECK(c.surface_n == 200);
  const auto files = surface_command(c, out);
  const auto s = read_csv(files.at(0));
  CHECK(s.columns == std::vector<std::string>{"phi1", "phi2", "phi3", "lambda1", "lambda2", "lambda3"});
  REQUIRE(s.rows.size() == 200 * 200);
  for (const auto& row : s.rows) {
    const double p1 = std::stod(row[0]), p2 = std::stod(row[1]);
    const bool realizable = p2 >= p1 * p1 && p2 <= 1.0;
    CHECK(row[2].empty() == !realizable);
    if (realizable) {
      const double k2 = p1 * (p1 * p1 + p2 * p2 - 2.0 * p2) / (p1 * p1 - 1.0);
      CHECK(std::abs(std::stod(row[2]) - k2) <= 1e-12);
      for (int k = 3; k < 6; ++k) CHECK(std::abs(std::stod(row[static_cast<std::size_t>(k)])) <= 1.0 + 1e-8);
    }
  }
  // Row-major with phi_2 outer.
  CHECK(std::stod(s.rows[0][1]) == std::stod(s.rows[199][1]));
  CHECK(std::stod(s.rows[200][1]) > std::stod(s.rows[0][1]));
  CHECK_THROWS_AS(surface_command(parse_config("order = 3"), out), ValidationError);
}
