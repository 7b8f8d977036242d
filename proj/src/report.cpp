#include "qfi/report.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace qfi::report {

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string hash_tag(std::string_view canonical_text) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "fnv1a64:%016llx",
                static_cast<unsigned long long>(fnv1a64(canonical_text)));
  return buf;
}

namespace {

std::pair<int, int> line_col(const std::string& text, std::size_t byte) {
  int line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

}  // namespace

LoadedConfig parse_config_text(const std::string& text,
                               const std::string& origin) {
  LoadedConfig out;
  try {
    out.raw = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    const auto [line, col] = line_col(text, e.byte > 0 ? e.byte - 1 : 0);
    std::ostringstream msg;
    msg << origin << ": parse error at line " << line << ", column " << col
        << ": " << e.what();
    throw ConfigError(msg.str());
  }
  if (!out.raw.is_object()) {
    throw ConfigError(origin + ": config root must be a JSON object");
  }
  out.canonical = out.raw.dump();
  out.hash = hash_tag(out.canonical);
  return out;
}

LoadedConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file: " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str(), path.string());
}

namespace {

GridSpec grid_from(const nlohmann::json& j, const GridSpec& defaults) {
  GridSpec g = defaults;
  if (j.contains("min")) g.min = j.at("min").get<double>();
  if (j.contains("max")) g.max = j.at("max").get<double>();
  if (j.contains("points")) g.points = j.at("points").get<int>();
  if (j.contains("log")) g.log_scale = j.at("log").get<bool>();
  return g;
}

template <typename T>
void maybe(const nlohmann::json& cfg, const char* key, T& target) {
  if (cfg.contains(key)) target = cfg.at(key).get<T>();
}

}  // namespace

ExperimentConfig experiment_from_config(const nlohmann::json& cfg,
                                        const std::string& scenario) {
  ExperimentConfig e;
  e.scenario = scenario;
  try {
    maybe(cfg, "amp", e.amp);
    maybe(cfg, "omega", e.omega);
    maybe(cfg, "deltas_rel", e.deltas_rel);
    if (cfg.contains("time_grid")) {
      e.time_grid = grid_from(cfg.at("time_grid"), e.time_grid);
    }
    maybe(cfg, "numeric_overlay", e.numeric_overlay);
    maybe(cfg, "delta_frame", e.delta_frame);
    maybe(cfg, "dt_factors_top", e.dt_factors_top);
    maybe(cfg, "dt_factors_bottom", e.dt_factors_bottom);
    maybe(cfg, "n_slots", e.n_slots);
    maybe(cfg, "tau", e.tau);
    maybe(cfg, "delta_small", e.delta_small);
    if (cfg.contains("total_grid")) {
      e.total_grid = grid_from(cfg.at("total_grid"), e.total_grid);
    }
    maybe(cfg, "taus", e.taus);
    if (cfg.contains("delta_grid")) {
      e.delta_grid = grid_from(cfg.at("delta_grid"), e.delta_grid);
    }
    maybe(cfg, "total", e.total);
    maybe(cfg, "steps", e.steps);
    maybe(cfg, "threads", e.threads);
    maybe(cfg, "two_time_grid", e.two_time_grid);
  } catch (const nlohmann::json::exception& ex) {
    throw ConfigError(std::string("config field error: ") + ex.what());
  }
  return e;
}

std::string format_double(double v) {
  char buf[64];
  const auto res =
      std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::string csv_from_dataset(const CurveDataset& ds) {
  std::string out;
  out.reserve(ds.rows.size() * 48 + 64);
  out += ds.x_column;
  out += ",series,";
  out += ds.y_column;
  out += '\n';
  for (const auto& r : ds.rows) {
    out += format_double(r.x);
    out += ',';
    out += r.series;
    out += ',';
    out += format_double(r.y);
    out += '\n';
  }
  return out;
}

nlohmann::json manifest_json(const RunManifest& m) {
  nlohmann::json j;
  j["tool"] = kToolName;
  j["version"] = kToolVersion;
  j["scenario"] = m.scenario;
  j["config_hash"] = m.config_hash;
  j["parameters"] = m.parameters;
  auto& outs = j["outputs"] = nlohmann::json::array();
  for (const auto& o : m.outputs) {
    outs.push_back({{"file", o.file},
                    {"columns", o.columns},
                    {"rows", o.rows}});
  }
  return j;
}

nlohmann::json claims_json(const std::vector<ClaimCheck>& claims) {
  nlohmann::json j;
  j["tool"] = kToolName;
  j["version"] = kToolVersion;
  bool all = true;
  auto& arr = j["claims"] = nlohmann::json::array();
  for (const auto& c : claims) {
    arr.push_back({{"id", c.id},
                   {"paper_value", c.paper_value},
                   {"computed", c.computed},
                   {"deviation", c.deviation},
                   {"tolerance", c.tolerance},
                   {"pass", c.pass},
                   {"note", c.note}});
    all = all && c.pass;
  }
  j["all_pass"] = all;
  return j;
}

void write_text_file(const std::filesystem::path& path,
                     const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

}  // namespace qfi::report
