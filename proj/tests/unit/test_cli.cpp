// Copyright 2026 The sta-open Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "sta/app/commands.hpp"
#include "sta/app/output.hpp"

using namespace sta;
using namespace sta::app;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

// Removes the per-process scratch tree at exit.
struct ScratchRoot {
  ~ScratchRoot() {
    std::error_code ec;
    fs::remove_all(fs::temp_directory_path() / ("sta_cli_" + std::to_string(::getpid())), ec);
  }
} scratch_root;

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("sta_cli_" + std::to_string(::getpid())) / name;
  fs::remove_all(p);
  fs::create_directories(p.parent_path());
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::vector<std::string>> rows_of(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    for (std::string c; std::getline(ls, c, ',');) cells.push_back(c);
    rows.push_back(cells);
  }
  return rows;
}

int column(const std::vector<std::string>& header, const std::string& name) {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return static_cast<int>(i);
  }
  FAIL("missing column " << name);
  return -1;
}

int cli(const std::string& args) {
  const int status = std::system((std::string(STA_CLI_PATH) + " " + args + " >/dev/null 2>&1").c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path write_json(const fs::path& p, const json& j) {
  fs::create_directories(p.parent_path());
  std::ofstream(p) << j.dump(2);
  return p;
}

json isothermal_doc(int steps) {
  return {{"scenario", "tls-isothermal"},
          {"parameters", {{"beta", 1.0}, {"omega", 1.0}, {"delta0", 1.0}, {"deltaf", -1.0}}},
          {"grid", {{"tf", 1.0}, {"steps", steps}}}};
}

}  // namespace

TEST_SUITE("config") {
  TEST_CASE("valid documents parse") {
    const RunConfig c = parse_config(isothermal_doc(200));
    CHECK(c.scenario == Scenario::TlsIsothermal);
    CHECK(c.steps == 200);
    CHECK(c.param("beta") == 1.0);
    CHECK(c.generators == default_generators(Scenario::TlsIsothermal));
  }

  TEST_CASE("rejections") {
    auto doc = isothermal_doc(200);
    doc["parameters"].erase("beta");
    CHECK_THROWS_AS(parse_config(doc), ConfigError);
    doc = isothermal_doc(200);
    doc["colour"] = "blue";
    CHECK_THROWS_AS(parse_config(doc), ConfigError);
    doc = isothermal_doc(200);
    doc["parameters"]["temperature"] = 2.0;
    CHECK_THROWS_AS(parse_config(doc), ConfigError);
    doc = isothermal_doc(1);
    CHECK_THROWS_AS(parse_config(doc), ConfigError);
    doc = isothermal_doc(200);
    doc["scenario"] = "tls-unknown";
    CHECK_THROWS_AS(parse_config(doc), ConfigError);
    doc = isothermal_doc(200);
    doc["parameters"]["beta"] = -1.0;
    CHECK_THROWS_AS(parse_config(doc), ConfigError);
    doc = isothermal_doc(200);
    doc["generators"] = {"OscillatorDephasing"};
    CHECK_THROWS_AS(parse_config(doc), ConfigError);
  }

  TEST_CASE("sweep axes") {
    const RunConfig c = parse_config(isothermal_doc(200));
    CHECK(has_axis(c, "tf"));
    CHECK(has_axis(c, "steps"));
    CHECK(has_axis(c, "deltaf"));
    CHECK_FALSE(has_axis(c, "omegaf"));
    CHECK(with_axis(c, "tf", 2.0).tf == 2.0);
    CHECK_THROWS_AS(with_axis(c, "beta", -2.0), ConfigError);
    CHECK(parse_values("1, 2.5,3e-1") == std::vector<double>{1.0, 2.5, 0.3});
    CHECK_THROWS_AS(parse_values("1,,2"), ConfigError);
    CHECK_THROWS_AS(parse_values("1,x"), ConfigError);
  }

  TEST_CASE("all shipped configs parse") {
    for (const auto& e : fs::directory_iterator(fs::path(STA_SOURCE_DIR) / "configs")) {
      if (e.path().extension() != ".json") continue;
      CAPTURE(e.path().string());
      CHECK_NOTHROW(load_config(e.path()));
    }
  }
}

TEST_SUITE("run") {
  TEST_CASE("isothermal stroke outputs") {
    const fs::path dir = scratch("iso");
    const RunOutcome r = run_config(parse_config(isothermal_doc(400)), dir, true);
    REQUIRE(r.exit_code == kExitOk);
    const json m = json::parse(slurp(dir / "manifest.json"));
    CHECK(m["status"] == "ok");
    CHECK(m["exit_code"] == 0);
    CHECK(m["generators"].size() == 3);

    for (const char* gen : {"LindbladLike", "BalancedNonlinear", "GainLoss"}) {
      const std::string text = slurp(dir / ("timeseries_" + std::string(gen) + ".csv"));
      CHECK(text.find('\r') == std::string::npos);
      CHECK(text.back() == '\n');
      const auto rows = rows_of(text);
      REQUIRE(rows.size() == 402);
      const auto& header = rows.front();
      CHECK(header.front() == "t");
      for (std::size_t i = 1; i < rows.size(); ++i) {
        REQUIRE(rows[i].size() == header.size());
        for (const auto& cell : rows[i]) {
          if (cell == "nan") continue;
          // every number is printed with 17 significant digits
          CHECK(format_number(std::strtod(cell.c_str(), nullptr)) == cell);
        }
      }
      // rates cross zero at the avoided crossing, t = 1/2
      const int pm = column(header, "gamma_plus_minus"), mp = column(header, "gamma_minus_plus");
      CHECK(std::abs(std::stod(rows[201][static_cast<std::size_t>(pm)])) <= 1e-12);
      CHECK(std::abs(std::stod(rows[201][static_cast<std::size_t>(mp)])) <= 1e-12);
      CHECK(std::stod(rows[100][static_cast<std::size_t>(pm)]) * std::stod(rows[300][static_cast<std::size_t>(pm)]) < 0.0);
      CHECK(std::stod(rows.back()[static_cast<std::size_t>(column(header, "t"))]) == 1.0);
    }
  }

  TEST_CASE("identical config and seed give byte-identical CSVs") {
    const json doc = {{"scenario", "custom-trajectory"},
                      {"parameters", {{"dim", 3}, {"rank", 2}}},
                      {"grid", {{"tf", 1.0}, {"steps", 200}}},
                      {"seed", 7}};
    const fs::path a = scratch("det_a"), b = scratch("det_b");
    REQUIRE(run_config(parse_config(doc), a, false).exit_code == kExitOk);
    REQUIRE(run_config(parse_config(doc), b, false).exit_code == kExitOk);
    int compared = 0;
    for (const auto& e : fs::directory_iterator(a)) {
      if (e.path().extension() != ".csv") continue;
      CHECK(slurp(e.path()) == slurp(b / e.path().filename()));
      ++compared;
    }
    CHECK(compared >= 1);
    json other = doc;
    other["seed"] = 8;
    const fs::path c = scratch("det_c");
    REQUIRE(run_config(parse_config(other), c, false).exit_code == kExitOk);
    CHECK(slurp(a / "timeseries_LindbladLike.csv") != slurp(c / "timeseries_LindbladLike.csv"));
  }

  TEST_CASE("oscillator heating columns") {
    const json doc = {{"scenario", "osc-heat"},
                      {"parameters", {{"omega0", 1.0}, {"omegaf", 2.0}, {"beta0", 1.0}, {"betaf", 0.1}, {"fock", 0}}},
                      {"grid", {{"tf", 2.0}, {"steps", 400}}}};
    const fs::path dir = scratch("heat");
    REQUIRE(run_config(parse_config(doc), dir, true).exit_code == kExitOk);
    fs::path csv;
    for (const auto& e : fs::directory_iterator(dir)) {
      if (e.path().extension() == ".csv") csv = e.path();
    }
    const auto rows = rows_of(slurp(csv));
    REQUIRE(rows.size() == 402);
    const int w = column(rows[0], "omega_cd2_over_omega0_sq"), g = column(rows[0], "gamma_hbar_over_m_omega0");
    double wmax = 0.0, gsum = 0.0;
    for (std::size_t i = 1; i < rows.size(); ++i) {
      wmax = std::max(wmax, std::stod(rows[i][static_cast<std::size_t>(w)]));
      gsum += std::stod(rows[i][static_cast<std::size_t>(g)]);
    }
    // overshoots the final omega_f^2 / omega0^2 = 4 and dephases mostly with gamma > 0
    CHECK(wmax > 4.0);
    CHECK(gsum > 0.0);
    CHECK(std::stod(rows.back()[static_cast<std::size_t>(w)]) == doctest::Approx(4.0).epsilon(1e-6));
  }
}

TEST_SUITE("exit codes") {
  TEST_CASE("missing beta: exit 2 and no outputs") {
    auto doc = isothermal_doc(100);
    doc["parameters"].erase("beta");
    const fs::path out = scratch("nobeta_out");
    const fs::path cfg = write_json(scratch("nobeta") / "c.json", doc);
    CHECK(cli("--out " + out.string() + " run " + cfg.string()) == 2);
    CHECK_FALSE(fs::exists(out));
  }

  TEST_CASE("usage errors and unreadable configs are validation errors") {
    CHECK(cli("run") == 2);
    CHECK(cli("frobnicate") == 2);
    CHECK(cli("run /nonexistent/config.json") == 2);
  }

  TEST_CASE("numerical abort: exit 3 with the reason in the manifest") {
    const json doc = {{"scenario", "osc-cool"},
                      {"parameters", {{"omega0", 1.0}, {"omegaf", 0.5}, {"beta0", 1.0}, {"betaf", 100.0}}},
                      {"grid", {{"tf", 2.0}, {"steps", 200}}}};
    const fs::path out = scratch("abort_out");
    CHECK(cli("--out " + out.string() + " run " + write_json(scratch("abort") / "c.json", doc).string()) == 3);
    const json m = json::parse(slurp(out / "manifest.json"));
    CHECK(m["status"] == "numerical_abort");
    CHECK(m["reason"] == "DegenerateU");
  }

  TEST_CASE("strict threshold miss: exit 4, otherwise 0") {
    auto doc = isothermal_doc(100);
    doc["thresholds"] = {{"min_eigenvalue", 0.5}};
    const fs::path cfg = write_json(scratch("thr") / "c.json", doc);
    const fs::path out = scratch("thr_out");
    CHECK(cli("--strict --out " + out.string() + " run " + cfg.string()) == 4);
    CHECK(json::parse(slurp(out / "manifest.json"))["reason"] == "AcceptanceThreshold");
    CHECK(cli("--out " + out.string() + " run " + cfg.string()) == 0);
  }
}

TEST_SUITE("sweep") {
  const json otto = {{"scenario", "tls-otto-cool"},
                     {"parameters", {{"delta", 1.0}, {"omega", 1.0}, {"beta0", 1.0}, {"betaf", 2.0}}},
                     {"grid", {{"tf", 1.0}, {"steps", 500}}}};

  TEST_CASE("final-temperature sweep stays exact") {
    const fs::path cfg = write_json(scratch("sw") / "c.json", otto);
    GlobalOptions opts;
    opts.out = scratch("sw_out");
    opts.workers = 2;
    std::ostringstream log;
    REQUIRE(cmd_sweep(cfg, "betaf", "1.5,2,3,4", opts, log) == kExitOk);
    const auto rows = rows_of(slurp(*opts.out / "sweep.csv"));
    REQUIRE(rows.size() >= 5);
    CHECK(rows[0] == std::vector<std::string>{"value", "generator", "status", "final_fidelity", "tau_min_fisher",
                                              "tau_min_trace", "min_omega_cd2"});
    for (std::size_t i = 1; i < rows.size(); ++i) {
      CHECK(rows[i][2] == "ok");
      CHECK(std::stod(rows[i][3]) >= 1.0 - 1e-6);
    }
    for (int i = 0; i < 4; ++i) CHECK(fs::exists(*opts.out / ("betaf_" + std::to_string(i)) / "manifest.json"));
  }

  TEST_CASE("single-value sweep equals a run") {
    const fs::path cfg = write_json(scratch("one") / "c.json", otto);
    GlobalOptions opts;
    opts.out = scratch("one_out");
    std::ostringstream log;
    REQUIRE(cmd_sweep(cfg, "betaf", "2", opts, log) == kExitOk);
    const fs::path run_dir = scratch("one_run");
    REQUIRE(run_config(parse_config(otto), run_dir, false).exit_code == kExitOk);
    for (const auto& e : fs::directory_iterator(run_dir)) {
      if (e.path().extension() == ".csv") CHECK(slurp(e.path()) == slurp(*opts.out / "betaf_0" / e.path().filename()));
    }
  }

  TEST_CASE("failed runs are recorded and the sweep continues") {
    const fs::path cfg = write_json(scratch("bad") / "c.json", otto);
    GlobalOptions opts;
    opts.out = scratch("bad_out");
    std::ostringstream log;
    CHECK(cmd_sweep(cfg, "betaf", "2,-1,3", opts, log) == kExitValidation);
    const auto rows = rows_of(slurp(*opts.out / "sweep.csv"));
    int ok = 0, bad = 0;
    for (std::size_t i = 1; i < rows.size(); ++i) (rows[i][2] == "ok" ? ok : bad)++;
    CHECK(bad == 1);
    CHECK(ok >= 2);
    CHECK(cmd_sweep(cfg, "nosuchaxis", "1", opts, log) == kExitValidation);
  }

  TEST_CASE("worker budget") {
    CHECK(resolve_workers(3) == 3);
    ::setenv("STA_OPEN_WORKERS", "5", 1);
    CHECK(resolve_workers(0) == 5);
    ::unsetenv("STA_OPEN_WORKERS");
    CHECK(resolve_workers(0) >= 1);
  }
}
