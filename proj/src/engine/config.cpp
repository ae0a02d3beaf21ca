#include "engine/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "core/errors.hpp"

namespace vqb {

void ExperimentConfig::validate() const {
  if (observable.empty()) throw ConfigError("config: observable path is required");
  if (target.empty()) throw ConfigError("config: target path is required");
  if (iterations < 1) throw ConfigError("config: iterations must be >= 1");
  if (seeds < 1) throw ConfigError("config: seeds must be >= 1");
  if (shots < 1) throw ConfigError("config: shots must be >= 1");
  if (!(init_low < init_high))
    throw ConfigError("config: init range must be nonempty");
  if (optimizer != "nft" && optimizer != "spsa" && optimizer != "nelder-mead")
    throw ConfigError("config: unknown optimizer '" + optimizer + "'");
  if (mitigate && calibration.empty())
    throw ConfigError("config: mitigation needs a calibration profile");
}

namespace {

bool parse_flag(const std::string& v, int lineno) {
  if (v == "on" || v == "true" || v == "1") return true;
  if (v == "off" || v == "false" || v == "0") return false;
  throw ParseError("config line " + std::to_string(lineno) +
                   ": flag must be on/off, got '" + v + "'");
}

}  // namespace

ExperimentConfig parse_experiment_config(const std::string& text) {
  ExperimentConfig cfg;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string key, value;
    if (!(ls >> key)) continue;
    if (!(ls >> value))
      throw ParseError("config line " + std::to_string(lineno) +
                       ": key '" + key + "' has no value");
    auto num = [&]() {
      try {
        std::size_t used = 0;
        double d = std::stod(value, &used);
        if (used != value.size() || !std::isfinite(d))
          throw std::invalid_argument(value);
        return d;
      } catch (const std::logic_error&) {
        throw ParseError("config line " + std::to_string(lineno) +
                         ": bad number '" + value + "'");
      }
    };
    auto count = [&]() {
      double d = num();
      if (d != std::floor(d))
        throw ParseError("config line " + std::to_string(lineno) +
                         ": expected an integer");
      return int(d);
    };
    if (key == "name") cfg.name = value;
    else if (key == "observable") cfg.observable = value;
    else if (key == "target") cfg.target = value;
    else if (key == "calibration") cfg.calibration = value == "none" ? "" : value;
    else if (key == "optimizer") cfg.optimizer = value;
    else if (key == "shots") cfg.shots = count();
    else if (key == "iterations") cfg.iterations = count();
    else if (key == "seeds") cfg.seeds = count();
    else if (key == "init_low") cfg.init_low = num();
    else if (key == "init_high") cfg.init_high = num();
    else if (key == "mitigate") cfg.mitigate = parse_flag(value, lineno);
    else if (key == "thermal") cfg.thermal = parse_flag(value, lineno);
    else if (key == "exact") cfg.exact = parse_flag(value, lineno);
    else if (key == "master_seed") cfg.master_seed = std::uint64_t(num());
    else if (key == "nft_reset_interval") cfg.nft_reset_interval = count();
    else if (key == "spsa_a") cfg.spsa.a = num();
    else if (key == "spsa_c") cfg.spsa.c = num();
    else if (key == "spsa_stability") cfg.spsa.stability = num();
    else if (key == "spsa_alpha") cfg.spsa.alpha = num();
    else if (key == "spsa_gamma") cfg.spsa.gamma = num();
    else if (key == "nm_reflect") cfg.nelder_mead.reflect = num();
    else if (key == "nm_expand") cfg.nelder_mead.expand = num();
    else if (key == "nm_contract") cfg.nelder_mead.contract = num();
    else if (key == "nm_shrink") cfg.nelder_mead.shrink = num();
    else
      throw ParseError("config line " + std::to_string(lineno) +
                       ": unknown key '" + key + "'");
    std::string trailing;
    if (ls >> trailing)
      throw ParseError("config line " + std::to_string(lineno) +
                       ": unexpected trailing token '" + trailing + "'");
  }
  return cfg;
}

ExperimentConfig load_experiment_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_experiment_config(buf.str());
}

std::string serialize_experiment_config(const ExperimentConfig& c) {
  std::ostringstream out;
  out.precision(17);
  out << "name " << c.name << "\n";
  // unset paths are omitted; the parser treats a key with no value as an error
  if (!c.observable.empty()) out << "observable " << c.observable << "\n";
  if (!c.target.empty()) out << "target " << c.target << "\n";
  out << "calibration " << (c.calibration.empty() ? "none" : c.calibration)
      << "\n"
      << "optimizer " << c.optimizer << "\n"
      << "shots " << c.shots << "\n"
      << "iterations " << c.iterations << "\n"
      << "seeds " << c.seeds << "\n"
      << "init_low " << c.init_low << "\n"
      << "init_high " << c.init_high << "\n"
      << "mitigate " << (c.mitigate ? "on" : "off") << "\n"
      << "thermal " << (c.thermal ? "on" : "off") << "\n"
      << "exact " << (c.exact ? "on" : "off") << "\n"
      << "master_seed " << c.master_seed << "\n"
      << "nft_reset_interval " << c.nft_reset_interval << "\n"
      << "spsa_a " << c.spsa.a << "\n"
      << "spsa_c " << c.spsa.c << "\n"
      << "spsa_stability " << c.spsa.stability << "\n"
      << "spsa_alpha " << c.spsa.alpha << "\n"
      << "spsa_gamma " << c.spsa.gamma << "\n"
      << "nm_reflect " << c.nelder_mead.reflect << "\n"
      << "nm_expand " << c.nelder_mead.expand << "\n"
      << "nm_contract " << c.nelder_mead.contract << "\n"
      << "nm_shrink " << c.nelder_mead.shrink << "\n";
  return out.str();
}

std::string config_hash(const ExperimentConfig& config) {
  const std::string s = serialize_experiment_config(config);
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  std::ostringstream out;
  out << std::hex << h;
  return out.str();
}

}  // namespace vqb
