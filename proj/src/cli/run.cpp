#include "ringchain/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <variant>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "json.hpp"
#include "ringchain/asymptotics.hpp"
#include "ringchain/errors.hpp"
#include "ringchain/oracle.hpp"
#include "ringchain/secular.hpp"
#include "ringchain/spectral_measure.hpp"

#ifndef RINGCHAIN_VERSION
#define RINGCHAIN_VERSION "0.0.0"
#endif

namespace ringchain::cli {

namespace {

using Json = nlohmann::ordered_json;

const std::map<std::string, Command>& command_names() {
  static const std::map<std::string, Command> names{
      {"flat", Command::flat},           {"bands", Command::bands},
      {"negative", Command::negative},   {"dispersion", Command::dispersion},
      {"measure", Command::measure},     {"certify", Command::certify},
      {"asymptotics", Command::asymptotics}, {"scattering", Command::scattering},
      {"selfcheck", Command::selfcheck}};
  return names;
}

Command parse_command(const std::string& s) {
  const auto it = command_names().find(s);
  if (it == command_names().end()) throw InvalidArgument("unknown command '" + s + "'");
  return it->second;
}

Format parse_format(const std::string& s) {
  if (s == "csv") return Format::csv;
  if (s == "json") return Format::json;
  throw InvalidArgument("unknown format '" + s + "' (expected csv or json)");
}

using Cell = std::variant<double, long long, std::string>;
using Row = std::vector<Cell>;

struct Table {
  std::vector<std::string> columns;
  std::vector<Row> rows;
  std::vector<std::pair<std::string, double>> summary;
};

std::string number(double v) { return fmt::format("{:.17g}", v); }

std::string csv_cell(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return number(*d);
  if (const auto* i = std::get_if<long long>(&c)) return std::to_string(*i);
  return std::get<std::string>(c);
}

std::string json_cell(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return std::isfinite(*d) ? number(*d) : "null";
  if (const auto* i = std::get_if<long long>(&c)) return std::to_string(*i);
  return Json(std::get<std::string>(c)).dump();
}

void write_table(const RunConfig& cfg, const Table& t, std::ostream& os) {
  if (cfg.format == Format::csv) {
    os << "# ringchain " << RINGCHAIN_VERSION << '\n';
    os << "# config " << config_json(cfg) << '\n';
    os << "# schema_version " << kSchemaVersion << '\n';
    for (const auto& [k, v] : t.summary) os << "# " << k << '=' << number(v) << '\n';
    for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
    os << '\n';
    for (const auto& row : t.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_cell(row[i]);
      os << '\n';
    }
    return;
  }
  os << "{\"config\":" << config_json(cfg) << ",\"schema_version\":" << kSchemaVersion;
  if (!t.summary.empty()) {
    os << ",\"summary\":{";
    for (std::size_t i = 0; i < t.summary.size(); ++i) {
      os << (i ? "," : "") << Json(t.summary[i].first).dump() << ':' << json_cell(t.summary[i].second);
    }
    os << '}';
  }
  os << ",\"rows\":[";
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    os << (r ? "," : "") << '{';
    for (std::size_t i = 0; i < t.columns.size(); ++i) {
      os << (i ? "," : "") << Json(t.columns[i]).dump() << ':' << json_cell(t.rows[r][i]);
    }
    os << '}';
  }
  os << "]}\n";
}

ChainSpec spec_of(const RunConfig& cfg) { return ChainSpec(cfg.link_length()); }

ChainSpec loose_spec(const RunConfig& cfg, std::string_view what) {
  if (!(cfg.link_length() > 0.0)) throw InvalidArgument(std::string(what) + " needs --ell > 0");
  return ChainSpec::loose(cfg.link_length());
}

void band_rows(const std::vector<Band>& bands, Table& t) {
  t.columns = {"band_index", "e_lo", "e_hi", "edge_theta_lo", "edge_theta_hi"};
  long long i = 0;
  for (const auto& b : bands) t.rows.push_back({i++, b.e_lo, b.e_hi, b.edge_theta_lo, b.edge_theta_hi});
}

Table table_flat(const RunConfig& cfg) {
  Table t;
  t.columns = {"energy", "embedded", "source"};
  for (const auto& fb : flat_bands(spec_of(cfg), cfg.e_max)) {
    t.rows.push_back({fb.energy, static_cast<long long>(fb.embedded), std::string(to_string(fb.source))});
  }
  return t;
}

Table table_dispersion(const RunConfig& cfg) {
  Table t;
  t.columns = {"theta", "k", "energy"};
  const Quasimomentum q = normalize_theta(cfg.theta);
  for (const auto& sp : dispersion(spec_of(cfg), q, 0.0, cfg.k_max, cfg.resolution)) {
    t.rows.push_back({q.value(), sp.k(), sp.energy()});
  }
  return t;
}

Table table_measure(const RunConfig& cfg) {
  if (!(cfg.e_max > 0.0) || !std::isfinite(cfg.e_max)) throw InvalidArgument("--e-max must be positive");
  std::vector<double> windows;
  for (double K = 10.0; K <= cfg.e_max * (1.0 + 1e-12); K *= 10.0) windows.push_back(K);
  if (windows.empty()) windows.push_back(cfg.e_max);

  const ChainSpec spec = spec_of(cfg);
  const auto bands = positive_bands(spec, std::sqrt(windows.back()), cfg.resolution);
  std::vector<MeasureReport> reports;
  Table t;
  t.columns = {"K", "measure", "fraction", "band_count", "gap_count"};
  for (double K : windows) {
    reports.push_back(measure_from_bands(spec, bands, K, cfg.resolution));
    const auto& r = reports.back();
    t.rows.push_back({K, r.measure, r.fraction, static_cast<long long>(r.band_count),
                      static_cast<long long>(r.gap_count)});
  }
  if (reports.size() >= 2) t.summary.emplace_back("decay_exponent", fit_decay_exponent(reports));
  return t;
}

Table table_certify(const RunConfig& cfg) {
  const ChainSpec spec = loose_spec(cfg, "certify");
  std::vector<double> ks = cfg.k;
  if (ks.empty()) {
    for (int i = 4; i <= static_cast<int>(std::floor(4.0 * cfg.k_max)); ++i) ks.push_back(0.25 * i);
  }
  Table t;
  t.columns = {"k", "strong", "asymptotic", "certificate", "phi"};
  for (double k : ks) {
    const auto c = certify(spec, k);
    t.rows.push_back({k, static_cast<long long>(c.strong), static_cast<long long>(c.asymptotic),
                      std::string(to_string(c.certificate)), c.phi});
  }
  return t;
}

Table table_asymptotics(const RunConfig& cfg) {
  const double ell = loose_spec(cfg, "asymptotics").link_length();
  Table t;
  t.columns = {"quantity", "predicted", "solved", "ratio"};
  for (const auto& r : asymptotic_comparison(ell, cfg.resolution)) {
    t.rows.push_back({r.quantity, r.predicted, r.solved, r.ratio});
  }
  return t;
}

Table table_scattering(const RunConfig& cfg) {
  std::vector<double> ks = cfg.k;
  if (ks.empty()) ks = {1.0, 10.0, 1e2, 1e3, 1e4};
  Table t;
  t.columns = {"n", "k", "norm_s_minus_i", "unitarity_residual"};
  for (double k : ks) {
    const ComplexMatrix s = vertex_scattering(cfg.n, k);
    const auto id = ComplexMatrix::Identity(cfg.n, cfg.n);
    const double dist = (s - id).operatorNorm();
    const double unit = (s.adjoint() * s - id).operatorNorm();
    t.rows.push_back({static_cast<long long>(cfg.n), k, dist, unit});
  }
  return t;
}

constexpr double kOracleTolerance = 1e-7;

Table table_selfcheck(const RunConfig& cfg, bool& all_passed) {
  Table t;
  t.columns = {"check", "value", "expected", "tolerance", "passed"};
  all_passed = true;
  for (const auto& w : evaluate_lemma_witnesses()) {
    all_passed = all_passed && w.passed;
    t.rows.push_back({w.name, w.computed, w.expected, w.tolerance, static_cast<long long>(w.passed)});
  }
  for (double ell : {0.0, 0.3, 1.0, detail::kPi, 5.0}) {
    for (Branch br : {Branch::positive, Branch::negative}) {
      const auto rep = check_oracle_equivalence(ChainSpec(ell), br, 200, cfg.seed, kOracleTolerance);
      const std::string tag = fmt::format("oracle_l{:.6g}_{}", ell, to_string(br));
      all_passed = all_passed && rep.passed();
      t.rows.push_back({tag + "_root_distance", rep.max_root_distance, 0.0, kOracleTolerance,
                        static_cast<long long>(rep.passed())});
      t.rows.push_back({tag + "_unmatched_roots", static_cast<double>(rep.mismatches.size()), 0.0, 0.0,
                        static_cast<long long>(rep.mismatches.empty())});
    }
  }
  return t;
}

}  // namespace

std::string_view to_string(Command c) {
  for (const auto& [name, cmd] : command_names()) {
    if (cmd == c) return name;
  }
  return "unknown";
}

std::string_view to_string(Format f) { return f == Format::csv ? "csv" : "json"; }

double RunConfig::link_length() const { return ell_pi ? detail::kPi : ell; }

std::string config_json(const RunConfig& c) {
  Json j;
  j["version"] = RINGCHAIN_VERSION;
  j["command"] = std::string(to_string(c.command));
  j["ell"] = c.ell;
  j["ell_pi"] = c.ell_pi;
  j["k_max"] = c.k_max;
  j["e_max"] = c.e_max;
  j["theta"] = c.theta;
  j["resolution"] = c.resolution;
  j["format"] = std::string(to_string(c.format));
  j["output"] = c.output;
  j["seed"] = c.seed;
  j["k"] = c.k;
  j["n"] = c.n;
  return j.dump();
}

RunConfig config_from_json(std::string_view text) {
  try {
    const Json j = Json::parse(text);
    RunConfig c;
    c.command = parse_command(j.at("command").get<std::string>());
    c.ell = j.at("ell").get<double>();
    c.ell_pi = j.at("ell_pi").get<bool>();
    c.k_max = j.at("k_max").get<double>();
    c.e_max = j.at("e_max").get<double>();
    c.theta = j.at("theta").get<double>();
    c.resolution = j.at("resolution").get<double>();
    c.format = parse_format(j.at("format").get<std::string>());
    c.output = j.at("output").get<std::string>();
    c.seed = j.at("seed").get<std::uint64_t>();
    c.k = j.at("k").get<std::vector<double>>();
    c.n = j.at("n").get<int>();
    return c;
  } catch (const Json::exception& e) {
    throw InvalidArgument(std::string("malformed config: ") + e.what());
  }
}

namespace {

void configure(CLI::App& app, RunConfig& c, std::string& command, std::string& format) {
  app.add_option("command", command, "flat | bands | negative | dispersion | measure | certify | "
                                     "asymptotics | scattering | selfcheck")
      ->required();
  app.add_option("--ell", c.ell, "link length (0 selects the tight chain)");
  app.add_flag("--ell-pi", c.ell_pi, "use link length exactly pi");
  app.add_option("--k-max", c.k_max, "upper momentum for bands, dispersion and certify");
  app.add_option("--e-max", c.e_max, "upper energy for flat and measure");
  app.add_option("--theta", c.theta, "quasimomentum for dispersion");
  app.add_option("--resolution", c.resolution, "scan step in momentum units");
  app.add_option("--format", format, "csv or json");
  app.add_option("--output", c.output, "output file (default standard output)");
  app.add_option("--seed", c.seed, "seed for the randomized selfcheck sweeps");
  app.add_option("--k", c.k, "momenta for certify and scattering")->delimiter(',');
  app.add_option("--n", c.n, "vertex degree for scattering");
}

constexpr const char* kDescription = "Spectra of periodic ring chains with rotational vertex coupling";

}  // namespace

RunConfig parse_args(int argc, const char* const* argv) {
  RunConfig c;
  std::string command;
  std::string format = "csv";
  CLI::App app{kDescription, "ringchain"};
  configure(app, c, command, format);
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    throw;
  } catch (const CLI::ParseError& e) {
    throw InvalidArgument(e.what());
  }
  c.command = parse_command(command);
  c.format = parse_format(format);
  if (!std::isfinite(c.ell) || c.ell < 0.0) throw InvalidArgument("--ell must be finite and nonnegative");
  if (c.ell_pi && c.ell != 0.0) throw InvalidArgument("--ell and --ell-pi are mutually exclusive");
  return c;
}

std::string resolve_output_path(const std::string& path) {
  namespace fs = std::filesystem;
  if (path.empty() || fs::path(path).is_absolute()) return path;
  const char* dir = std::getenv("RINGCHAIN_OUTPUT_DIR");
  if (dir == nullptr || *dir == '\0') return path;
  return (fs::path(dir) / path).string();
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  Table table;
  bool selfcheck_ok = true;
  try {
    switch (cfg.command) {
      case Command::flat: table = table_flat(cfg); break;
      case Command::bands: band_rows(positive_bands(spec_of(cfg), cfg.k_max, cfg.resolution), table); break;
      case Command::negative: {
        const auto bands = negative_bands(spec_of(cfg), cfg.resolution);
        band_rows(bands, table);
        // interior band-edge points (l = pi has one at E = -3)
        std::size_t t = 0;
        for (const auto& b : bands) {
          for (double e : b.touchings) table.summary.emplace_back(fmt::format("touching_{}", t++), e);
        }
        break;
      }
      case Command::dispersion: table = table_dispersion(cfg); break;
      case Command::measure: table = table_measure(cfg); break;
      case Command::certify: table = table_certify(cfg); break;
      case Command::asymptotics: table = table_asymptotics(cfg); break;
      case Command::scattering: table = table_scattering(cfg); break;
      case Command::selfcheck: table = table_selfcheck(cfg, selfcheck_ok); break;
    }
  } catch (const InvalidArgument& e) {
    err << "ringchain: invalid argument: " << e.what() << '\n';
    return 1;
  } catch (const SolverError& e) {
    err << "ringchain: solver failure: " << e.what() << '\n';
    for (const auto& s : e.profile()) err << "  " << number(s.x) << ' ' << number(s.value) << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "ringchain: failure: " << e.what() << '\n';
    return 2;
  }

  const std::string path = resolve_output_path(cfg.output);
  if (path.empty()) {
    write_table(cfg, table, out);
  } else {
    std::ofstream file(path, std::ios::binary);
    if (!file) {
      err << "ringchain: cannot open output file " << path << '\n';
      return 1;
    }
    write_table(cfg, table, file);
  }
  if (!selfcheck_ok) {
    err << "ringchain: selfcheck failed\n";
    return 3;
  }
  return 0;
}

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  try {
    cfg = parse_args(argc, argv);
  } catch (const CLI::CallForHelp&) {
    RunConfig scratch;
    std::string command, format;
    CLI::App app{kDescription, "ringchain"};
    configure(app, scratch, command, format);
    out << app.help();
    return 0;
  } catch (const InvalidArgument& e) {
    err << "ringchain: " << e.what() << '\n';
    return 1;
  }
  return run(cfg, out, err);
}

}  // namespace ringchain::cli
