#include "greedy_riesz/cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <limits>
#include <optional>
#include <sstream>

#include "greedy_riesz/arith_fn.hpp"
#include "greedy_riesz/asymptotics.hpp"
#include "greedy_riesz/binary_core.hpp"
#include "greedy_riesz/circle_energy.hpp"
#include "greedy_riesz/errors.hpp"
#include "greedy_riesz/limit_sets.hpp"

namespace greedy_riesz::cli {

namespace {

using json = nlohmann::json;
namespace fs = std::filesystem;

struct RunConfig {
  std::string command;
  std::optional<double> s;
  std::optional<std::uint64_t> n;
  std::optional<std::string> range;
  int m = 16;
  std::optional<double> tol;
  std::string out;
  std::string manifest;
  std::string target = "H";
  int grid_bits = 20;
  unsigned jobs = 1;
};

struct Range {
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;
};

class VerificationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double require_s(const RunConfig& cfg) {
  if (!cfg.s) throw DomainError(cfg.command + ": --s is required");
  return *cfg.s;
}

Range parse_range(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw DomainError("--range must have the form a:b");
  try {
    std::size_t p1 = 0;
    std::size_t p2 = 0;
    const std::string a = text.substr(0, colon);
    const std::string b = text.substr(colon + 1);
    Range r{std::stoull(a, &p1), std::stoull(b, &p2)};
    if (p1 != a.size() || p2 != b.size() || a.empty() || b.empty() || a[0] == '-' || b[0] == '-')
      throw std::invalid_argument("range");
    if (r.hi < r.lo) throw DomainError("--range: upper end below lower end");
    return r;
  } catch (const std::logic_error&) {
    throw DomainError("--range must have the form a:b with non-negative integers");
  }
}

// --range a:b, or --N n as the range n:n.
Range require_range(const RunConfig& cfg) {
  if (cfg.range) return parse_range(*cfg.range);
  if (cfg.n) return {*cfg.n, *cfg.n};
  throw DomainError(cfg.command + ": --range or --N is required");
}

std::string csv_header(std::initializer_list<const char*> cols) {
  std::string h;
  for (const char* c : cols) {
    if (!h.empty()) h += ',';
    h += c;
  }
  return h + '\n';
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoFailure("cannot open " + path.string() + " for writing");
  f << text;
  f.flush();
  if (!f) throw IoFailure("failed writing " + path.string());
}

// ---- commands; each returns CSV text and fills a summary object ----

std::string cmd_eta(const RunConfig& cfg, json& summary) {
  if (!cfg.n || *cfg.n < 1) throw DomainError("eta: --N >= 1 is required");
  const auto d = binary::decompose(*cfg.n);
  const auto theta = binary::eta(*cfg.n);
  std::string csv = csv_header({"k", "exponent", "numerator", "denominator", "theta"});
  for (std::size_t k = 0; k < d.size(); ++k) {
    const auto& r = theta.exact_components()[k];
    csv += std::to_string(k + 1) + ',' + std::to_string(d.exponents[k]) + ',' +
           std::to_string(r.num()) + ',' + std::to_string(r.den()) + ',' + num(r.to_double()) + '\n';
  }
  summary["tau_b"] = binary::tau_b(*cfg.n);
  return csv;
}

std::string cmd_energy(const RunConfig& cfg, json& summary) {
  const double s = require_s(cfg);
  if (!(s > -2.0)) throw DomainError("energy: s must exceed -2");
  const auto r = require_range(cfg);
  if (r.lo < 1 || r.hi > (std::uint64_t{1} << 40)) throw DomainError("energy: N must lie in [1, 2^40]");
  if (r.hi - r.lo > (std::uint64_t{1} << 22)) throw DomainError("energy: range too long");
  energy::EnergyEvaluator ev(energy::EnergyParams::for_s(s));
  std::string csv = csv_header({"N", "s", "greedy_energy", "roots_energy", "extremal_potential"});
  for (std::uint64_t n = r.lo; n <= r.hi; ++n) {
    csv += std::to_string(n) + ',' + num(s) + ',' + num(ev.greedy(n)) + ',' +
           num(energy::roots_energy(n, ev.params())) + ',' + num(ev.extremal_potential(n)) + '\n';
  }
  summary["rows"] = r.hi - r.lo + 1;
  return csv;
}

std::string cmd_sequence(const RunConfig& cfg, json& summary, bool t_seq) {
  const double s = require_s(cfg);
  if (!(s > -2.0)) throw DomainError(cfg.command + ": s must exceed -2");
  const auto r = require_range(cfg);
  const std::uint64_t min_n = t_seq ? 2 : 1;
  if (r.lo < min_n || r.hi > (std::uint64_t{1} << 20))
    throw DomainError(cfg.command + ": N must lie in [" + std::to_string(min_n) + ", 2^20]");
  const bool has_prediction = t_seq ? s >= -1.0 : s > 0.0;
  energy::EnergyEvaluator ev(energy::EnergyParams::for_s(s));
  std::string csv = csv_header(
      {"N", "s", "exact", "scaled", "prediction", "remainder", "scaled_remainder"});
  double sup = 0.0;
  for (std::uint64_t n = r.lo; n <= r.hi; ++n) {
    asymptotics::EnergyReport rep;
    if (has_prediction) {
      rep = t_seq ? asymptotics::t_report(ev, n) : asymptotics::f_report(ev, n);
    } else {
      rep.exact_energy = t_seq ? ev.greedy(n) : ev.extremal_potential(n);
      rep.scaled_value = t_seq ? asymptotics::t_sequence(ev, n) : asymptotics::f_sequence(ev, n);
      rep.prediction = rep.remainder = std::numeric_limits<double>::quiet_NaN();
    }
    const double sr = has_prediction ? rep.scaled_remainder() : rep.remainder;
    if (has_prediction) sup = std::max(sup, std::abs(sr));
    csv += std::to_string(n) + ',' + num(s) + ',' + num(rep.exact_energy) + ',' +
           num(rep.scaled_value) + ',' + num(rep.prediction) + ',' + num(rep.remainder) + ',' +
           num(sr) + '\n';
  }
  if (has_prediction) summary["sup_scaled_remainder"] = sup;
  summary["rows"] = r.hi - r.lo + 1;
  return csv;
}

limits::ScanTarget parse_target(const std::string& t) {
  if (t == "H") return limits::ScanTarget::H;
  if (t == "K") return limits::ScanTarget::K;
  if (t == "R") return limits::ScanTarget::R;
  throw DomainError("--target must be H, K or R");
}

std::string scan_csv(const limits::ScanResult& res) {
  std::string csv = csv_header({"x", "value"});
  for (const auto& p : res.values) csv += num(p.x.to_double()) + ',' + num(p.value) + '\n';
  return csv;
}

json scan_summary(const limits::ScanResult& res) {
  json j;
  j["M"] = res.m;
  if (res.s) j["s"] = *res.s;
  j["orientation"] = res.maximize ? "max" : "min";
  j["extremum"] = res.extremum;
  j["arg"] = res.arg.str();
  j["arg_value"] = res.arg.to_double();
  if (res.error_bound) j["error_bound"] = *res.error_bound;
  return j;
}

void require_m(int m) {
  if (m < 1 || m > 24) throw DomainError("--M must lie in [1, 24]");
}

std::string cmd_scan(const RunConfig& cfg, json& summary) {
  require_m(cfg.m);
  const auto target = parse_target(cfg.target);
  double s = 0.0;
  if (target == limits::ScanTarget::H) {
    s = require_s(cfg);
    if (!(s > -1.0) || s == 0.0 || s == 1.0) throw DomainError("scan: H needs s > -1, s not 0 or 1");
  }
  const auto res = limits::scan_extremum(cfg.m, target, s, cfg.jobs);
  summary = scan_summary(res);
  summary["target"] = cfg.target;
  return scan_csv(res);
}

void cmd_figures(const RunConfig& cfg, json& summary, json& outputs) {
  require_m(cfg.m);
  const fs::path dir = cfg.out.empty() ? fs::path("figures") : fs::path(cfg.out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoFailure("cannot create directory " + dir.string());
  struct Fig {
    const char* file;
    limits::ScanTarget target;
    double s;
  };
  const Fig figs[] = {
      {"fig1_R.csv", limits::ScanTarget::R, 0.0},
      {"fig2_H_s-0.5.csv", limits::ScanTarget::H, -0.5},
      {"fig3_H_s0.333333.csv", limits::ScanTarget::H, 1.0 / 3.0},
      {"fig4_H_s3.5.csv", limits::ScanTarget::H, 3.5},
      {"fig5_K.csv", limits::ScanTarget::K, 0.0},
  };
  for (const auto& f : figs) {
    const auto res = limits::scan_extremum(cfg.m, f.target, f.s, cfg.jobs);
    write_file(dir / f.file, scan_csv(res));
    summary[f.file] = scan_summary(res);
    outputs.push_back((dir / f.file).string());
  }
}

std::string cmd_expansion_check(const RunConfig& cfg, json& summary) {
  const double s = require_s(cfg);
  const auto r = require_range(cfg);
  if (!(s >= -1.0) || s == 0.0) throw DomainError("expansion-check: s >= -1, s != 0 required");
  const auto scan = asymptotics::remainder_scan(s, r.lo, r.hi, asymptotics::Sequence::expansion,
                                                cfg.jobs);
  std::string csv = csv_header({"N", "s", "exact", "expansion", "remainder"});
  for (const auto& row : scan.rows)
    csv += std::to_string(row.n) + ',' + num(s) + ',' + num(row.exact) + ',' +
           num(row.prediction) + ',' + num(row.remainder) + '\n';
  summary["sup_abs_remainder"] = scan.sup;
  summary["argmax"] = scan.argmax;
  summary["divergence_alarm"] = scan.divergence_alarm;
  return csv;
}

std::string cmd_cesaro(const RunConfig& cfg, json& summary) {
  const double s = require_s(cfg);
  if (!(s > -2.0 && s < 0.0)) throw DomainError("cesaro: s must lie in (-2, 0)");
  const auto r = require_range(cfg);
  if (r.lo < 1 || r.hi > (std::uint64_t{1} << 20)) throw DomainError("cesaro: N must lie in [1, 2^20]");
  const double target = 0.5 * asymptotics::arclength_energy(s);
  std::string csv = csv_header({"N", "s", "mean", "target", "deviation", "scaled_deviation"});
  for (std::uint64_t n = r.lo; n <= r.hi; ++n) {
    const double mean = asymptotics::cesaro_mean(n, s);
    const double nd = static_cast<double>(n);
    double rate = std::pow(nd, s);  // O(N^s) for -1 < s < 0
    if (s == -1.0) rate = std::log(nd + 1.0) / nd;
    if (s < -1.0) rate = 1.0 / nd;
    csv += std::to_string(n) + ',' + num(s) + ',' + num(mean) + ',' + num(target) + ',' +
           num(mean - target) + ',' + num((mean - target) / rate) + '\n';
  }
  summary["target"] = target;
  return csv;
}

std::string cmd_oracle_verify(const RunConfig& cfg, json& summary, bool& failed) {
  const double s = require_s(cfg);
  if (!(s > -2.0)) throw DomainError("oracle-verify: s must exceed -2");
  if (!cfg.n || *cfg.n < 2 || *cfg.n > 4096) throw DomainError("oracle-verify: --N in [2, 4096] required");
  const double tol = cfg.tol.value_or(1e-7);
  const int n = static_cast<int>(*cfg.n);
  const auto params = energy::EnergyParams::for_s(s);
  const auto oracle = energy::greedy_oracle(n, params, cfg.grid_bits, 1e-12, cfg.jobs);
  energy::EnergyEvaluator ev(params);
  std::string csv = csv_header({"N", "s", "oracle_energy", "formula_energy", "relative_gap"});
  double worst = 0.0;
  energy::CircleConfig prefix;
  for (int k = 1; k <= n; ++k) {
    prefix.angles.push_back(oracle.config.angles[static_cast<std::size_t>(k - 1)]);
    if (k < 2) continue;
    const double e_or = energy::pairwise_energy(prefix, params);
    const double e_fm = ev.greedy(static_cast<std::uint64_t>(k));
    const double gap = std::abs(e_or - e_fm) / std::max(1.0, std::abs(e_fm));
    worst = std::max(worst, gap);
    csv += std::to_string(k) + ',' + num(s) + ',' + num(e_or) + ',' + num(e_fm) + ',' + num(gap) + '\n';
  }
  summary["max_relative_gap"] = worst;
  summary["tolerance"] = tol;
  failed = !(worst <= tol);
  return csv;
}

std::string cmd_identities(const RunConfig& cfg, json& summary, bool& failed) {
  const double s = require_s(cfg);
  if (cfg.m < 1 || cfg.m > 16) throw DomainError("identities: --M must lie in [1, 16]");
  const double tol = cfg.tol.value_or(1e-12);
  std::string csv = csv_header(
      {"M", "n", "s", "odd_lhs", "odd_rhs", "even_lhs", "even_rhs", "mismatch"});
  double worst = 0.0;
  for (int m = 1; m <= cfg.m; ++m) {
    const std::int64_t count = std::int64_t{1} << (m - 1);
    for (std::int64_t n = 0; n < count; ++n) {
      const auto id = limits::child_identities(m, n, s);
      worst = std::max(worst, id.max_mismatch());
      csv += std::to_string(m) + ',' + std::to_string(n) + ',' + num(s) + ',' + num(id.odd_lhs) +
             ',' + num(id.odd_rhs) + ',' + num(id.even_lhs) + ',' + num(id.even_rhs) + ',' +
             num(id.max_mismatch()) + '\n';
    }
  }
  summary["max_mismatch"] = worst;
  summary["tolerance"] = tol;
  failed = !(worst <= tol);
  return csv;
}

json parameters_json(const RunConfig& cfg) {
  json p = json::object();
  if (cfg.s) p["s"] = *cfg.s;
  if (cfg.n) p["N"] = *cfg.n;
  if (cfg.range) p["range"] = *cfg.range;
  p["M"] = cfg.m;
  if (cfg.tol) p["tol"] = *cfg.tol;
  if (!cfg.out.empty()) p["out"] = cfg.out;
  p["target"] = cfg.target;
  p["grid_bits"] = cfg.grid_bits;
  p["jobs"] = cfg.jobs;
  return p;
}

fs::path manifest_path(const RunConfig& cfg) {
  if (!cfg.manifest.empty()) return cfg.manifest;
  if (cfg.command == "figures") return (cfg.out.empty() ? fs::path("figures") : fs::path(cfg.out)) / "manifest.json";
  if (!cfg.out.empty()) return cfg.out + ".manifest.json";
  return cfg.command + ".manifest.json";
}

const char* const kCommands[] = {"eta",     "energy",          "tseq",   "fseq",
                                  "scan",    "figures",         "expansion-check",
                                  "cesaro",  "oracle-verify",   "identities"};

void add_common_flags(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--s", cfg.s, "Riesz parameter s");
  sub->add_option("--N", cfg.n, "number of points N");
  sub->add_option("--range", cfg.range, "inclusive N range a:b");
  sub->add_option("--M", cfg.m, "grid order M (default 16)");
  sub->add_option("--tol", cfg.tol, "verification tolerance");
  sub->add_option("--out", cfg.out, "output CSV path (figures: output directory)");
  sub->add_option("--manifest", cfg.manifest, "JSON run manifest path");
  sub->add_option("--jobs", cfg.jobs, "worker threads (0 = all cores)");
  sub->add_option("--target", cfg.target, "scan target H, K or R (default H)");
  sub->add_option("--grid-bits", cfg.grid_bits, "oracle grid size exponent (default 20)");
}

}  // namespace

std::string usage() {
  return R"(usage: greedy-riesz <command> [flags]

commands and CSV columns:
  eta              --N                   k,exponent,numerator,denominator,theta
  energy           --s --N|--range       N,s,greedy_energy,roots_energy,extremal_potential
  tseq             --s --N|--range       N,s,exact,scaled,prediction,remainder,scaled_remainder
  fseq             --s --N|--range       same columns as tseq, for F_{N,s}
  scan             --M [--s] [--target]  x,value
  figures          --M [--out DIR]       five x,value files (R, H at s=-1/2, 1/3, 7/2, K)
  expansion-check  --s --N|--range       N,s,exact,expansion,remainder
  cesaro           --s --N|--range       N,s,mean,target,deviation,scaled_deviation
  oracle-verify    --s --N [--tol]       N,s,oracle_energy,formula_energy,relative_gap
  identities       --s [--M] [--tol]     M,n,s,odd_lhs,odd_rhs,even_lhs,even_rhs,mismatch

flags: --s <real> --N <int> --range <a:b> --M <int> --tol <real> --out <path>
       --jobs <int> --target <H|K|R> --grid-bits <int> --manifest <path>

CSV goes to --out (stdout otherwise). A JSON manifest is written to --manifest,
<out>.manifest.json, or <command>.manifest.json.
exit status: 0 ok, 2 domain error, 3 verification failure, 64 usage, 74 I/O error
)";
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  if (args.empty()) {
    err << usage();
    return kExitUsage;
  }
  if (args[0] == "--help" || args[0] == "-h" || args[0] == "help") {
    out << usage();
    return kExitOk;
  }
  if (std::find(std::begin(kCommands), std::end(kCommands), args[0]) == std::end(kCommands)) {
    err << "unknown command: " << args[0] << "\n" << usage();
    return kExitUsage;
  }

  RunConfig cfg;
  CLI::App app{"greedy Riesz energies on the circle", "greedy-riesz"};
  app.require_subcommand(1);
  for (const char* c : kCommands) add_common_flags(app.add_subcommand(c), cfg);
  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << usage();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << usage();
    return kExitUsage;
  }
  cfg.command = args[0];

  const auto start = std::chrono::steady_clock::now();
  json manifest;
  manifest["command"] = cfg.command;
  manifest["parameters"] = parameters_json(cfg);
  manifest["version"] = GREEDY_RIESZ_VERSION;
  json summary = json::object();
  json outputs = json::array();
  int status = kExitOk;
  std::string message;
  std::string csv;
  bool verification_failed = false;

  try {
    if (cfg.jobs > 256) throw DomainError("--jobs must not exceed 256");
    const auto& c = cfg.command;
    if (c == "eta") csv = cmd_eta(cfg, summary);
    else if (c == "energy") csv = cmd_energy(cfg, summary);
    else if (c == "tseq") csv = cmd_sequence(cfg, summary, true);
    else if (c == "fseq") csv = cmd_sequence(cfg, summary, false);
    else if (c == "scan") csv = cmd_scan(cfg, summary);
    else if (c == "figures") cmd_figures(cfg, summary, outputs);
    else if (c == "expansion-check") csv = cmd_expansion_check(cfg, summary);
    else if (c == "cesaro") csv = cmd_cesaro(cfg, summary);
    else if (c == "oracle-verify") csv = cmd_oracle_verify(cfg, summary, verification_failed);
    else if (c == "identities") csv = cmd_identities(cfg, summary, verification_failed);

    if (c != "figures") {
      if (cfg.out.empty()) {
        out << csv;
        outputs.push_back("-");
      } else {
        write_file(cfg.out, csv);
        outputs.push_back(cfg.out);
      }
    }
    if (verification_failed) {
      status = kExitVerification;
      message = "verification failed: tolerance exceeded";
    }
  } catch (const IoFailure& e) {
    status = kExitIo;
    message = e.what();
  } catch (const DomainError& e) {
    status = kExitDomain;
    message = e.what();
  } catch (const StructureError& e) {
    status = kExitDomain;
    message = e.what();
  } catch (const ConstructionError& e) {
    status = kExitVerification;
    message = e.what();
  }

  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
  manifest["wall_time_seconds"] = elapsed.count();
  manifest["exit_status"] = status;
  manifest["summary"] = summary;
  manifest["outputs"] = outputs;
  if (!message.empty()) manifest["message"] = message;

  try {
    write_file(manifest_path(cfg), manifest.dump(2) + "\n");
  } catch (const IoFailure& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  }
  if (!message.empty()) err << "error: " << message << "\n";
  return status;
}

}  // namespace greedy_riesz::cli
