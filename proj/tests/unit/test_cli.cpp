#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "ringchain/cli.hpp"
#include "ringchain/errors.hpp"

using namespace ringchain;
using namespace ringchain::cli;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result invoke(std::vector<std::string> args) {
  std::vector<const char*> argv{"ringchain"};
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  for (std::string l; std::getline(is, l);) out.push_back(l);
  return out;
}

// Data rows of a CSV report (after the # metadata and the header).
std::vector<std::vector<std::string>> csv_rows(const std::string& s, std::string* header = nullptr) {
  std::vector<std::vector<std::string>> rows;
  bool seen_header = false;
  for (const auto& l : lines(s)) {
    if (l.empty() || l[0] == '#') continue;
    if (!seen_header) {
      seen_header = true;
      if (header) *header = l;
      continue;
    }
    std::vector<std::string> cells;
    std::istringstream is(l);
    for (std::string c; std::getline(is, c, ',');) cells.push_back(c);
    rows.push_back(cells);
  }
  return rows;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("bands header and metadata") {
  const auto r = invoke({"bands", "--ell", "1", "--k-max", "10"});
  REQUIRE(r.code == 0);
  const auto ls = lines(r.out);
  REQUIRE(ls.size() > 4);
  CHECK(ls[0].rfind("# ringchain ", 0) == 0);
  CHECK(ls[1].rfind("# config {", 0) == 0);
  std::string header;
  const auto rows = csv_rows(r.out, &header);
  CHECK(header == "band_index,e_lo,e_hi,edge_theta_lo,edge_theta_hi");
  CHECK(rows.size() == 14);
}

TEST_CASE("negative band count") {
  CHECK(csv_rows(invoke({"negative", "--ell-pi"}).out).size() == 1);
  CHECK(csv_rows(invoke({"negative", "--ell", "1"}).out).size() == 2);
  const auto tight = invoke({"negative"});
  CHECK(tight.code == 0);
  CHECK(csv_rows(tight.out).empty());
}

TEST_CASE("schemas") {
  std::string h;
  csv_rows(invoke({"flat", "--e-max", "10"}).out, &h);
  CHECK(h == "energy,embedded,source");
  csv_rows(invoke({"dispersion", "--ell", "1", "--theta", "0.5", "--k-max", "4"}).out, &h);
  CHECK(h == "theta,k,energy");
  csv_rows(invoke({"measure", "--ell", "1", "--e-max", "1000"}).out, &h);
  CHECK(h == "K,measure,fraction,band_count,gap_count");
  csv_rows(invoke({"asymptotics", "--ell", "0.001"}).out, &h);
  CHECK(h == "quantity,predicted,solved,ratio");
  csv_rows(invoke({"scattering", "--n", "4"}).out, &h);
  CHECK(h == "n,k,norm_s_minus_i,unitarity_residual");
  csv_rows(invoke({"certify", "--ell", "1", "--k", "2.5,7.25"}).out, &h);
  CHECK(h == "k,strong,asymptotic,certificate,phi");
}

TEST_CASE("measure summary line") {
  const auto r = invoke({"measure", "--ell", "1", "--e-max", "1000"});
  CHECK(r.out.find("# decay_exponent=") != std::string::npos);
  CHECK(csv_rows(r.out).size() == 3);
}

TEST_CASE("exit codes") {
  CHECK(invoke({"bands", "--ell", "-1"}).code == 1);
  CHECK(invoke({"nonsense"}).code == 1);
  CHECK(invoke({"bands", "--format", "xml"}).code == 1);
  CHECK(invoke({"asymptotics"}).code == 1);
  CHECK(invoke({"certify"}).code == 1);
  CHECK(invoke({"bands", "--ell", "1", "--resolution", "0.5"}).code == 1);
  CHECK(invoke({"scattering", "--n", "1"}).code == 1);
  CHECK(invoke({"bands", "--ell", "1", "--ell-pi"}).code == 1);
  CHECK(invoke({"--help"}).code == 0);
  const auto bad = invoke({"bands", "--ell", "-1"});
  CHECK_FALSE(bad.err.empty());
  CHECK(bad.out.empty());
}

TEST_CASE("determinism") {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"bands", "--ell", "0.7", "--k-max", "12"},
           {"measure", "--ell", "2", "--e-max", "1000"},
           {"certify", "--ell", "1", "--k-max", "6"}}) {
    const auto a = invoke(args);
    const auto b = invoke(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
  }
}

TEST_CASE("csv and json carry the same numbers") {
  for (const auto& base : std::vector<std::vector<std::string>>{
           {"bands", "--ell", "1", "--k-max", "8"},
           {"negative", "--ell", "2"},
           {"dispersion", "--ell", "1", "--theta", "1", "--k-max", "6"},
           {"asymptotics", "--ell", "20"}}) {
    auto csv_args = base;
    auto json_args = base;
    json_args.insert(json_args.end(), {"--format", "json"});
    std::string header;
    const auto rows = csv_rows(invoke(csv_args).out, &header);
    const auto j = nlohmann::json::parse(invoke(json_args).out);
    CHECK(j.at("schema_version") == kSchemaVersion);
    CHECK(j.at("config").at("format") == "json");
    const auto& jrows = j.at("rows");
    REQUIRE(jrows.size() == rows.size());

    std::vector<std::string> cols;
    std::istringstream hs(header);
    for (std::string c; std::getline(hs, c, ',');) cols.push_back(c);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      for (std::size_t c = 0; c < cols.size(); ++c) {
        const auto& cell = jrows[r].at(cols[c]);
        if (cell.is_string()) {
          CHECK(cell.get<std::string>() == rows[r][c]);
        } else {
          const double a = std::stod(rows[r][c]);
          const double b = cell.get<double>();
          CHECK(std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(a)));
        }
      }
    }
  }
}

TEST_CASE("config echo round trip") {
  RunConfig c;
  c.command = Command::certify;
  c.ell = 0.25;
  c.k = {1.5, 2.5};
  c.seed = 99;
  c.format = Format::json;
  const RunConfig back = config_from_json(config_json(c));
  CHECK(config_json(back) == config_json(c));
  CHECK_THROWS_AS(config_from_json("{\"command\":\"bands\"}"), InvalidArgument);

  // The echoed line reproduces the run.
  const auto r = invoke({"bands", "--ell", "0.9", "--k-max", "5"});
  const auto echo = lines(r.out)[1].substr(std::string("# config ").size());
  std::ostringstream out, err;
  CHECK(run(config_from_json(echo), out, err) == 0);
  CHECK(out.str() == r.out);
}

TEST_CASE("output file and output directory") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "ringchain_cli_test";
  fs::create_directories(dir);
  setenv("RINGCHAIN_OUTPUT_DIR", dir.c_str(), 1);
  CHECK(resolve_output_path("x.csv") == (dir / "x.csv").string());
  CHECK(resolve_output_path("/abs/x.csv") == "/abs/x.csv");
  const auto r = invoke({"flat", "--e-max", "10", "--output", "flat.csv"});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(dir / "flat.csv");
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(csv_rows(ss.str()).size() == 4);
  unsetenv("RINGCHAIN_OUTPUT_DIR");
  fs::remove_all(dir);
}

TEST_CASE("selfcheck passes") {
  const auto r = invoke({"selfcheck"});
  CHECK(r.code == 0);
  for (const auto& row : csv_rows(r.out)) CHECK(row.back() == "1");
}

}  // TEST_SUITE
