#include "kpp/config.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace kpp {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::string strip_comment(const std::string& line) {
  bool in_string = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') in_string = !in_string;
    if (line[i] == '#' && !in_string) return line.substr(0, i);
  }
  return line;
}

json parse_scalar(const std::string& tok) {
  if (tok.size() >= 2 && tok.front() == '"' && tok.back() == '"')
    return tok.substr(1, tok.size() - 2);
  if (tok == "true") return true;
  if (tok == "false") return false;
  try {
    std::size_t used = 0;
    if (tok.find_first_of(".eE") == std::string::npos) {
      long long v = std::stoll(tok, &used);
      if (used == tok.size()) return v;
    } else {
      double d = std::stod(tok, &used);
      if (used == tok.size()) return d;
    }
  } catch (const std::exception&) {
  }
  throw std::invalid_argument("toml: cannot parse value '" + tok + "'");
}

json parse_value(const std::string& tok) {
  if (!tok.empty() && tok.front() == '[') {
    if (tok.back() != ']') throw std::invalid_argument("toml: unterminated array");
    json arr = json::array();
    std::string body = tok.substr(1, tok.size() - 2);
    std::string cur;
    bool in_string = false;
    int depth = 0;
    for (char c : body) {
      if (c == '"') in_string = !in_string;
      if (c == '[' && !in_string) ++depth;
      if (c == ']' && !in_string) --depth;
      if (c == ',' && !in_string && depth == 0) {
        std::string t = trim(cur);
        if (!t.empty()) arr.push_back(parse_value(t));
        cur.clear();
      } else {
        cur += c;
      }
    }
    std::string t = trim(cur);
    if (!t.empty()) arr.push_back(parse_value(t));
    return arr;
  }
  return parse_scalar(tok);
}

}  // namespace

json parse_toml(const std::string& text) {
  json doc = json::object();
  json* table = &doc;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(strip_comment(line));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw std::invalid_argument("toml line " + std::to_string(lineno) +
                                    ": malformed table header");
      std::string name = trim(line.substr(1, line.size() - 2));
      table = &doc;
      std::size_t pos = 0;
      while (pos != std::string::npos) {
        std::size_t dot = name.find('.', pos);
        std::string part = name.substr(pos, dot == std::string::npos ? dot : dot - pos);
        table = &(*table)[trim(part)];
        if (!table->is_object()) *table = json::object();
        pos = dot == std::string::npos ? dot : dot + 1;
      }
      continue;
    }
    std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("toml line " + std::to_string(lineno) +
                                  ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));
    if (key.empty() || val.empty())
      throw std::invalid_argument("toml line " + std::to_string(lineno) +
                                  ": empty key or value");
    (*table)[key] = parse_value(val);
  }
  return doc;
}

json parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  if (path.size() >= 5 && path.substr(path.size() - 5) == ".toml")
    return parse_toml(buf.str());
  return json::parse(buf.str());
}

Nonlinearity reaction_from_config(const json& fragment) {
  const std::string family = fragment.value("family", "fisher");
  const double period = fragment.value("period", 1.0);
  if (family == "fisher") return make_fisher(period);
  if (family == "periodic_fisher")
    return make_periodic_fisher(fragment.value("amplitude", 0.5), period);
  if (family == "table") {
    const std::string path = fragment.value("table_path", "");
    json table = parse_config_file(path);
    std::vector<std::vector<double>> values =
        table.at("values").get<std::vector<std::vector<double>>>();
    return make_table_nonlinearity(values, table.value("period", period));
  }
  throw std::invalid_argument("reaction: unknown family '" + family + "'");
}

InitialData initial_data_from_config(const json& fragment) {
  const std::string family = fragment.value("family", "algebraic");
  const double plateau = fragment.value("plateau", 1.0);
  if (family == "algebraic")
    return make_algebraic(fragment.value("alpha", 2.0), plateau);
  if (family == "stretched")
    return make_stretched(fragment.value("beta", 0.25), plateau);
  if (family == "log_algebraic")
    return make_log_algebraic(fragment.value("alpha", 2.0),
                              fragment.value("gamma", 0.5), plateau);
  if (family == "table") {
    const std::string path = fragment.value("table_path", "");
    json table = parse_config_file(path);
    return make_table_profile(table.at("samples").get<std::vector<double>>(),
                              table.at("x_span").get<double>());
  }
  throw std::invalid_argument("initial_data: unknown family '" + family + "'");
}

ExperimentConfig load_experiment_config(const std::string& path) {
  ExperimentConfig cfg;
  cfg.raw = parse_config_file(path);
  if (!cfg.raw.contains("experiment") || !cfg.raw["experiment"].is_string())
    throw std::invalid_argument("config: missing string field 'experiment'");
  cfg.experiment = cfg.raw["experiment"].get<std::string>();
  cfg.out_dir = cfg.raw.value("out", "out");
  cfg.seed = cfg.raw.value("seed", 0u);

  // Fail early on malformed fragments.
  if (cfg.raw.contains("reaction")) reaction_from_config(cfg.raw["reaction"]);
  if (cfg.raw.contains("initial_data")) initial_data_from_config(cfg.raw["initial_data"]);
  if (cfg.raw.contains("numerics")) {
    const json& n = cfg.raw["numerics"];
    if (n.contains("T") && n["T"].get<double>() <= 0.0)
      throw std::invalid_argument("config: horizon T must be positive");
    if (n.contains("dt") && n["dt"].get<double>() <= 0.0)
      throw std::invalid_argument("config: dt must be positive");
  }
  return cfg;
}

}  // namespace kpp
