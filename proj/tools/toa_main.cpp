// toa -- time-of-arrival distributions for free quantum particles.
//
// Subcommands: kijowski | halfline | extension | moments | check.
// Exit codes: 0 success / check passed, 1 check failed, 2 invalid input,
// 3 resolution guard tripped.  Identical config + flags reproduce
// byte-identical output; TOA_THREADS only caps the worker pool and never
// changes a bit of the numbers.

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "toa/arrival.hpp"
#include "toa/extensions.hpp"
#include "toa/halfline.hpp"
#include "toa/quadrature.hpp"
#include "toa/states.hpp"

using nlohmann::json;
using namespace toa;

namespace {

struct RunConfig {
  PhysicalConstants constants;
  std::vector<states::GaussianSpec> packets;
  double pmax = 10.0;
  int n = 4096;
  std::string hash;
};

uint64_t fnv1a(const std::string& s) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw invalid_param_error("cannot open config file: " + path);
  json j = json::parse(in);

  RunConfig cfg;
  cfg.constants.hbar = j.value("hbar", 1.0);
  cfg.constants.mass = j.value("mass", 1.0);
  cfg.constants.validate();

  if (!j.contains("packets") || !j["packets"].is_array() || j["packets"].empty())
    throw invalid_param_error("config: packets must be a non-empty array");
  for (const auto& pk : j["packets"]) {
    states::GaussianSpec s;
    s.p0 = pk.value("p0", 0.0);
    s.sigma_p = pk.value("sigma_p", 1.0);
    s.x0 = pk.value("x0", 0.0);
    if (pk.contains("weight"))
      s.weight = {pk["weight"].value("re", 1.0), pk["weight"].value("im", 0.0)};
    cfg.packets.push_back(s);
  }

  const auto& grid = j.at("grid");
  cfg.pmax = grid.value("pmax", 10.0);
  cfg.n = grid.value("n", 4096);
  if (cfg.n < 64 || cfg.n % 2 != 0)
    throw invalid_param_error("config: grid.n must be even and >= 64");
  for (const auto& s : cfg.packets) {
    if (!(s.sigma_p > 0.0)) throw invalid_param_error("config: sigma_p must be > 0");
    if (cfg.pmax <= std::abs(s.p0) + 8.0 * s.sigma_p)
      throw invalid_param_error("config: grid.pmax must exceed |p0| + 8 sigma_p");
  }

  char buf[32];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, fnv1a(j.dump()));
  cfg.hash = buf;
  return cfg;
}

states::MomentumState state_of(const RunConfig& cfg) {
  return states::build_state(cfg.packets, cfg.constants, cfg.pmax, cfg.n);
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty() || out_path == "-") {
    std::fputs(text.c_str(), stdout);
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw invalid_param_error("cannot open output file: " + out_path);
  out << text;
}

std::string render_distribution(const Distribution& dist, const RunConfig& cfg,
                                const std::string& tool, const std::string& column,
                                const std::string& format) {
  if (format == "csv") {
    std::ostringstream os;
    os << "# toa " << tool << "\n";
    os << "# config_hash=" << cfg.hash << "\n";
    os << "# hbar=" << fmt(cfg.constants.hbar) << " mass=" << fmt(cfg.constants.mass)
       << " pmax=" << fmt(cfg.pmax) << " n=" << cfg.n << "\n";
    os << "# total=" << fmt(dist.total) << " plus_total=" << fmt(dist.meta.plus_total)
       << " minus_total=" << fmt(dist.meta.minus_total) << "\n";
    os << "# columns: " << column << ",density\n";
    for (int j = 0; j < dist.grid.n; ++j)
      os << fmt(dist.grid.nodes[j]) << "," << fmt(dist.density[j]) << "\n";
    return os.str();
  }
  json j;
  j[column] = dist.grid.nodes;
  j["density"] = dist.density;
  j["meta"] = {{"config_hash", cfg.hash},
               {"total", dist.total},
               {"plus_total", dist.meta.plus_total},
               {"minus_total", dist.meta.minus_total},
               {"source", dist.meta.source}};
  return j.dump(2) + "\n";
}

json report_json(const CheckReport& rep) {
  return json{{"name", rep.name},
              {"measured", rep.measured},
              {"tolerance", rep.tolerance},
              {"passed", rep.passed},
              {"details", rep.details}};
}

num::Grid time_window(double tmin, double tmax, int nt) {
  if (nt < 2 || !(tmax > tmin))
    throw invalid_param_error("time window: need tmax > tmin and nt >= 2");
  return num::Grid::uniform(tmin, tmax, nt);
}

int run(int argc, char** argv) {
  CLI::App app{"time-of-arrival distributions for free quantum particles"};
  app.require_subcommand(1);

  std::string config_path, out_path, format = "csv";
  double tmin = -10.0, tmax = 14.0;
  int nt = 2401;
  double tau = 1.0, alpha = 0.0, field = 1.0, lambda = 1.0;

  auto add_common = [&](CLI::App* cmd, bool with_window) {
    cmd->add_option("--config", config_path, "run configuration (JSON)")->required();
    cmd->add_option("--out", out_path, "output path (default stdout)");
    cmd->add_option("--format", format, "csv|json")
        ->check(CLI::IsMember({"csv", "json"}));
    if (with_window) {
      cmd->add_option("--tmin", tmin, "window start");
      cmd->add_option("--tmax", tmax, "window end");
      cmd->add_option("--nt", nt, "window nodes");
    }
  };

  auto* kij = app.add_subcommand("kijowski", "arrival-time density of T_AB");
  add_common(kij, true);

  auto* half = app.add_subcommand("halfline", "momentum density of the half-line POVM");
  add_common(half, false);
  half->add_option("--lambda", lambda, "decay rate of the reference state");

  auto* extension = app.add_subcommand("extension", "spectral density of T'_alpha");
  add_common(extension, true);
  extension->add_option("--alpha", alpha, "extension phase in [0, 2pi)");

  auto* moments = app.add_subcommand("moments", "arrival/presence/second moments");
  add_common(moments, true);
  auto* field_opt =
      moments->add_option("--field", field, "constant-field mean via T_g = p/(m g)");

  auto* check = app.add_subcommand("check", "run one invariant check");
  std::string which;
  check->add_option("which", which, "covariance|second-moment|deficiency|kernel|"
                                    "flux-equality|alpha-violation")
      ->required();
  add_common(check, true);
  check->add_option("--tau", tau, "time shift for covariance checks");
  check->add_option("--alpha", alpha, "extension phase");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  const RunConfig cfg = load_config(config_path);

  if (kij->parsed()) {
    const auto dist =
        arrival::kijowski_distribution(state_of(cfg), time_window(tmin, tmax, nt));
    emit(out_path, render_distribution(dist, cfg, "kijowski", "t", format));
    return 0;
  }

  if (half->parsed()) {
    const double xmax = 20.0 / lambda;
    const int nx =
        std::max(4001, static_cast<int>(xmax * cfg.pmax * 8.0 / std::numbers::pi /
                                        cfg.constants.hbar) + 1);
    const auto st = halfline::exponential_state(lambda, cfg.constants, xmax, nx);
    const auto dist =
        halfline::momentum_density(st, num::Grid::uniform(-cfg.pmax, cfg.pmax, cfg.n));
    emit(out_path, render_distribution(dist, cfg, "halfline", "p", format));
    return 0;
  }

  if (extension->parsed()) {
    const auto ch = states::to_energy_channels(state_of(cfg));
    const auto dist = ext::alpha_distribution(ch, alpha, time_window(tmin, tmax, nt));
    emit(out_path, render_distribution(dist, cfg, "extension", "tau", format));
    return 0;
  }

  if (moments->parsed()) {
    if (!moments->count("--tmin")) tmin = -15.0;
    if (!moments->count("--tmax")) tmax = 20.0;
    if (!moments->count("--nt")) nt = 3501;
    const auto st = state_of(cfg);
    const auto tg = time_window(tmin, tmax, nt);

    const auto fm = arrival::flux_mean(st, tg);
    const auto pm = arrival::presence_mean(st, tg);
    const auto smr = arrival::second_moment_check(st, tg);

    const auto dist = arrival::kijowski_distribution(st, tg);
    std::vector<double> t2d(tg.n);
    for (int k = 0; k < tg.n; ++k)
      t2d[k] = tg.nodes[k] * tg.nodes[k] * dist.density[k];
    const double m2_dist = num::integrate(tg, t2d);
    const auto applied = arrival::arrival_expression(st.samples, st.constants);
    const double m2_op =
        num::integrate(st.samples.grid, num::abs_squared(applied.samples));

    json j{{"config_hash", cfg.hash},
           {"t_flux", fm.mean_flux},
           {"t_flux_operator", fm.mean_operator},
           {"flux_total", fm.flux_total},
           {"t_presence", pm.mean_quotient},
           {"t_presence_time_integral", pm.mean_time_integral},
           {"second_moment_dist", m2_dist},
           {"second_moment_operator", m2_op},
           {"reports",
            {report_json(fm.report), report_json(pm.report), report_json(smr)}}};
    if (field_opt->count() > 0) {
      const auto cf = ext::constant_field_distribution(st, field);
      std::vector<double> td(cf.grid.n);
      for (int k = 0; k < cf.grid.n; ++k) td[k] = cf.grid.nodes[k] * cf.density[k];
      j["field_mean"] = num::integrate(cf.grid, td) / cf.total;
      j["field"] = field;
    }
    emit(out_path, j.dump(2) + "\n");
    return 0;
  }

  // check
  CheckReport rep;
  if (which == "covariance") {
    rep = arrival::covariance_check(state_of(cfg), tau, time_window(tmin, tmax, nt));
  } else if (which == "second-moment") {
    if (!check->count("--tmin")) tmin = -15.0;
    if (!check->count("--tmax")) tmax = 20.0;
    if (!check->count("--nt")) nt = 3501;
    rep = arrival::second_moment_check(state_of(cfg), time_window(tmin, tmax, nt));
  } else if (which == "deficiency") {
    rep = arrival::deficiency_check(cfg.constants);
  } else if (which == "kernel") {
    const num::Grid pg = num::Grid::uniform(-8.0, 8.0, 3201);
    auto window = [&](double c, double w) {
      std::vector<num::cplx> v(pg.n);
      for (int j = 0; j < pg.n; ++j) {
        const double a = (pg.nodes[j] - c) / w;
        v[j] = std::exp(-a * a);
      }
      return num::ComplexSamples(pg, std::move(v));
    };
    rep = halfline::overlap_kernel_check(window(2.0, 0.5), window(3.2, 0.5),
                                         cfg.constants);
  } else if (which == "flux-equality") {
    if (!check->count("--tmin")) tmin = -15.0;
    if (!check->count("--tmax")) tmax = 20.0;
    if (!check->count("--nt")) nt = 3501;
    rep = arrival::flux_mean(state_of(cfg), time_window(tmin, tmax, nt)).report;
  } else if (which == "alpha-violation") {
    const auto ch = states::to_energy_channels(state_of(cfg));
    rep = ext::alpha_covariance_violation(ch, alpha, tau, time_window(tmin, tmax, nt));
  } else {
    throw invalid_param_error("unknown check: " + which);
  }

  json j = report_json(rep);
  j["config_hash"] = cfg.hash;
  emit(out_path, j.dump(2) + "\n");
  return rep.passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const toa::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.kind() == toa::ErrorKind::resolution ? 3 : 2;
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
