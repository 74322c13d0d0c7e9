// coverspectra: spectra, thresholds, covering simulations and constructor
// tables for dynamical covering sets on self-similar sets, driven by a JSON
// config. Subcommands: spectrum | simulate | converge | cantor.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "coverspectra/cantor.hpp"
#include "coverspectra/errors.hpp"
#include "coverspectra/ifs.hpp"
#include "coverspectra/orbit.hpp"
#include "coverspectra/orbit_sim.hpp"
#include "coverspectra/pressure.hpp"
#include "coverspectra/prob_pressure.hpp"
#include "coverspectra/schedule.hpp"

namespace cs = coverspectra;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "0.1.0";

uint64_t fnv1a64(const std::string& data) {
  uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

struct RunConfig {
  json raw;
  std::string raw_text;
  cs::IfsSpec spec = cs::IfsSpec::validate(std::vector<double>{0.5, 0.5},
                                           std::vector<double>{0.5, 0.5});
  std::vector<double> alphas;
  std::string out_format = "csv";
  std::string out_path;
};

std::vector<double> parse_alpha_grid(const json& j) {
  std::vector<double> alphas;
  if (j.contains("alphas")) {
    alphas = j.at("alphas").get<std::vector<double>>();
  } else if (j.contains("alpha_grid")) {
    const json& g = j.at("alpha_grid");
    double start = g.at("start").get<double>();
    double stop = g.at("stop").get<double>();
    uint64_t count = g.at("count").get<uint64_t>();
    if (count < 2 || count > 100000)
      throw cs::Error(cs::Errc::ConfigError,
                      "alpha_grid.count must lie in [2, 1e5]");
    if (!(start > 0.0) || !(stop > start))
      throw cs::Error(cs::Errc::ConfigError,
                      "alpha_grid needs 0 < start < stop");
    for (uint64_t i = 0; i < count; ++i)
      alphas.push_back(start + (stop - start) * double(i) / double(count - 1));
  }
  for (double a : alphas)
    if (!(a > 0.0))
      throw cs::Error(cs::Errc::ConfigError, "alphas must be positive");
  return alphas;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw cs::Error(cs::Errc::IoError, "cannot open config " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  RunConfig cfg;
  cfg.raw_text = ss.str();
  try {
    cfg.raw = json::parse(cfg.raw_text);
  } catch (const json::exception& e) {
    throw cs::Error(cs::Errc::ConfigError,
                    std::string("config is not valid JSON: ") + e.what());
  }
  if (cfg.raw.value("schema", 0) != 1)
    throw cs::Error(cs::Errc::ConfigError, "config requires \"schema\": 1");
  if (!cfg.raw.contains("lambdas") || !cfg.raw.contains("probs"))
    throw cs::Error(cs::Errc::ConfigError, "config needs lambdas and probs");
  cfg.spec =
      cs::IfsSpec::validate(cfg.raw.at("lambdas").get<std::vector<double>>(),
                            cfg.raw.at("probs").get<std::vector<double>>());
  cfg.alphas = parse_alpha_grid(cfg.raw);
  if (cfg.raw.contains("output")) {
    cfg.out_format = cfg.raw.at("output").value("format", "csv");
    cfg.out_path = cfg.raw.at("output").value("path", "");
  }
  return cfg;
}

// Writes through a temp file so failed runs never leave partial artifacts.
class OutputFile {
 public:
  explicit OutputFile(const std::string& path) : path_(path) {
    if (path_.empty()) return;
    tmp_ = path_ + ".tmp";
    stream_.open(tmp_, std::ios::binary | std::ios::trunc);
    if (!stream_)
      throw cs::Error(cs::Errc::IoError, "cannot write to " + tmp_);
  }
  ~OutputFile() {
    if (!committed_ && !tmp_.empty()) {
      stream_.close();
      std::error_code ec;
      std::filesystem::remove(tmp_, ec);
    }
  }
  std::ostream& stream() { return path_.empty() ? std::cout : stream_; }
  void commit() {
    if (path_.empty()) {
      committed_ = true;
      return;
    }
    stream_.close();
    if (!stream_)
      throw cs::Error(cs::Errc::IoError, "write failed for " + path_);
    std::error_code ec;
    std::filesystem::rename(tmp_, path_, ec);
    if (ec)
      throw cs::Error(cs::Errc::IoError,
                      "cannot move output into place: " + ec.message());
    committed_ = true;
  }

 private:
  std::string path_, tmp_;
  std::ofstream stream_;
  bool committed_ = false;
};

void write_metadata(std::ostream& os, const RunConfig& cfg, uint64_t seed) {
  char hash[20];
  std::snprintf(hash, sizeof hash, "%016llx",
                (unsigned long long)fnv1a64(cfg.raw_text));
  os << "# coverspectra " << kVersion << " config_hash=" << hash
     << " seed=" << seed << "\n";
}

int cmd_spectrum(const RunConfig& cfg, const std::string& out_path) {
  if (cfg.alphas.empty())
    throw cs::Error(cs::Errc::ConfigError, "spectrum needs an alpha grid");
  cs::CriticalAlphas crit = cs::critical_alphas(cfg.spec);
  double s0 = cs::similarity_dimension(cfg.spec);
  OutputFile out(out_path);
  write_metadata(out.stream(), cfg, 0);
  out.stream() << "alpha,s_alpha,t_alpha,regime,alpha0,alpha1,alpha2,s0\n";
  for (double a : cfg.alphas) {
    cs::SpectrumPoint pt = cs::spectrum_point(cfg.spec, a);
    out.stream() << fmt(a) << ',' << fmt(pt.s_alpha) << ','
                 << (pt.t_alpha ? fmt(*pt.t_alpha) : std::string()) << ','
                 << cs::regime_name(pt.regime) << ',' << fmt(crit.alpha0)
                 << ',' << fmt(crit.alpha1) << ',' << fmt(crit.alpha2) << ','
                 << fmt(s0) << "\n";
  }
  out.commit();
  return 0;
}

int cmd_simulate(const RunConfig& cfg, const std::string& out_path,
                 std::optional<uint64_t> seed_override) {
  if (!cfg.raw.contains("simulate"))
    throw cs::Error(cs::Errc::ConfigError, "config lacks a simulate block");
  const json& sim = cfg.raw.at("simulate");
  unsigned replicas = sim.value("replicas", 20u);
  size_t depth = sim.value("depth", size_t(6));
  uint64_t seed0 = seed_override.value_or(sim.value("seed0", uint64_t(1)));
  cs::HorizonRule rule;
  rule.fixed_horizon = sim.value("horizon", uint64_t(0));
  rule.exponent_factor = sim.value("horizon_exponent", double(depth + 1));
  rule.fixed_tail = sim.value("tail_start", uint64_t(0));
  rule.tail_fraction = sim.value("tail_fraction", 0.5);
  if (cfg.alphas.empty())
    throw cs::Error(cs::Errc::ConfigError, "simulate needs an alpha grid");

  std::vector<cs::ThresholdRow> rows = cs::threshold_experiment(
      cfg.spec, cfg.alphas, replicas, rule, depth, seed0);
  OutputFile out(out_path);
  write_metadata(out.stream(), cfg, seed0);
  out.stream() << "alpha,horizon,mean_fraction,min_fraction,mean_q0_measure,"
                  "full_cover_freq,alpha0,alpha1,alpha2\n";
  for (const auto& r : rows) {
    out.stream() << fmt(r.alpha) << ',' << r.horizon << ','
                 << fmt(r.mean_fraction) << ',' << fmt(r.min_fraction) << ','
                 << fmt(r.mean_q0_measure) << ',' << fmt(r.full_cover_freq)
                 << ',' << fmt(r.alpha0) << ',' << fmt(r.alpha1) << ','
                 << fmt(r.alpha2) << "\n";
  }
  out.commit();
  return 0;
}

int cmd_converge(const RunConfig& cfg, const std::string& out_path) {
  if (!cfg.raw.contains("converge"))
    throw cs::Error(cs::Errc::ConfigError, "config lacks a converge block");
  const json& cv = cfg.raw.at("converge");
  double alpha = cv.at("alpha").get<double>();
  std::vector<uint64_t> n_list = cv.at("n_list").get<std::vector<uint64_t>>();
  auto rows = cs::convergence_report(cfg.spec, alpha, n_list);
  OutputFile out(out_path);
  write_metadata(out.stream(), cfg, 0);
  out.stream() << "n,m_n,s_n,s_n_exp,s_alpha,gap\n";
  for (const auto& r : rows)
    out.stream() << r.n << ',' << fmt(r.m_n) << ',' << fmt(r.s_n) << ','
                 << fmt(r.s_n_exp) << ',' << fmt(r.s_alpha) << ','
                 << fmt(r.gap) << "\n";
  out.commit();
  return 0;
}

int cmd_cantor(const RunConfig& cfg, const std::string& out_path,
               std::optional<uint64_t> seed_override) {
  if (!cfg.raw.contains("cantor"))
    throw cs::Error(cs::Errc::ConfigError, "config lacks a cantor block");
  const json& ca = cfg.raw.at("cantor");
  double gamma = ca.at("gamma").get<double>();
  double alpha = ca.at("alpha").get<double>();
  uint64_t n_min = ca.value("n_min", uint64_t(2));
  size_t max_words = ca.value("max_words", size_t(7));
  int levels = ca.value("levels", 0);
  uint64_t seeds = ca.value("seeds", uint64_t(0));
  uint64_t seed = seed_override.value_or(ca.value("seed", uint64_t(1)));
  uint64_t horizon = ca.value("horizon", uint64_t(0));

  cs::ConstructorTable table =
      cs::build_constructor(cfg.spec, gamma, alpha, n_min, max_words);
  cs::TargetSchedule sched = cs::TargetSchedule::canonical(alpha, 2);

  json out_doc;
  out_doc["schema"] = 1;
  out_doc["version"] = kVersion;
  char hash[20];
  std::snprintf(hash, sizeof hash, "%016llx",
                (unsigned long long)fnv1a64(cfg.raw_text));
  out_doc["config_hash"] = hash;
  out_doc["config"] = cfg.raw;  // echo for round-trip checks
  json jt;
  jt["gamma"] = table.gamma;
  jt["alpha"] = table.alpha;
  jt["n0"] = table.n0;
  jt["s_gamma"] = table.s_gamma;
  jt["entries"] = json::array();
  for (const auto& e : table.entries) {
    std::string w;
    for (uint8_t d : e.word.digits()) w += char('0' + d);
    jt["entries"].push_back({{"word", w},
                             {"n", e.n},
                             {"base", e.base},
                             {"m", e.m},
                             {"s", e.s},
                             {"gap", e.gap}});
  }
  out_doc["table"] = std::move(jt);

  if (seeds >= 30) {
    cs::MartingaleStats st =
        cs::martingale_stats(cfg.spec, table, sched, seeds, seed);
    out_doc["martingale"] = {{"seeds", st.seeds},
                             {"mean_X1", st.mean},
                             {"var_X1", st.variance},
                             {"stderr", st.stderr_mean}};
  }
  if (levels >= 1) {
    if (horizon == 0)
      throw cs::Error(cs::Errc::ConfigError,
                      "cantor.levels needs cantor.horizon for the orbit");
    cs::OrbitView view(cfg.spec, seed, horizon);
    cs::GenerationSets gens =
        cs::grow_generations(cfg.spec, view, table, sched, levels);
    json jg = json::array();
    for (const auto& lvl : gens.levels) {
      json jl = json::array();
      for (const auto& w : lvl) {
        std::string sw;
        for (uint8_t d : w.digits()) sw += char('0' + d);
        jl.push_back(sw);
      }
      jg.push_back(std::move(jl));
    }
    out_doc["generations"] = std::move(jg);
    out_doc["generation_seed"] = gens.seed;
  }

  OutputFile out(out_path);
  out.stream() << out_doc.dump(2) << "\n";
  out.commit();
  return 0;
}

int run(int argc, char** argv) {
  CLI::App app{"spectra and covering simulations for self-similar sets"};
  app.require_subcommand(1);
  std::string config_path, out_path;
  std::optional<uint64_t> seed;
  unsigned threads = 1;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON config path")->required();
    sub->add_option("--out", out_path, "output path (overrides config)");
    sub->add_option("--seed", seed, "seed override");
    sub->add_option("--threads", threads, "worker threads");
  };
  CLI::App* sp = app.add_subcommand("spectrum", "dimension spectra over an alpha grid");
  CLI::App* si = app.add_subcommand("simulate", "Monte Carlo covering runs");
  CLI::App* co = app.add_subcommand("converge", "finite-n pressure roots");
  CLI::App* cn = app.add_subcommand("cantor", "constructor tables and martingale stats");
  for (CLI::App* sub : {sp, si, co, cn}) add_common(sub);

  CLI11_PARSE(app, argc, argv);

  RunConfig cfg = load_config(config_path);
  std::string path = !out_path.empty() ? out_path : cfg.out_path;

  if (sp->parsed()) return cmd_spectrum(cfg, path);
  if (si->parsed()) return cmd_simulate(cfg, path, seed);
  if (co->parsed()) return cmd_converge(cfg, path);
  if (cn->parsed()) return cmd_cantor(cfg, path, seed);
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const cs::Error& e) {
    json err = {{"error",
                 {{"code", cs::errc_name(e.code())}, {"message", e.what()}}}};
    std::cerr << err.dump() << "\n";
    if (e.code() == cs::Errc::IoError) return 4;
    return e.is_config_error() ? 2 : 3;
  } catch (const std::exception& e) {
    json err = {{"error", {{"code", "Internal"}, {"message", e.what()}}}};
    std::cerr << err.dump() << "\n";
    return 3;
  }
}
