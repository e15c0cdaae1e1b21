#include "pshardy/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

#include "pshardy/measures.hpp"

namespace pshardy {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

double parse_number(const std::string& s, int line) {
  const char* begin = s.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0')
    throw std::runtime_error("line " + std::to_string(line) +
                             ": expected a number, got '" + s + "'");
  return v;
}

std::vector<double> parse_number_list(const std::string& s, int line) {
  std::istringstream in(s);
  std::vector<double> out;
  std::string tok;
  while (in >> tok) out.push_back(parse_number(tok, line));
  if (out.empty())
    throw std::runtime_error("line " + std::to_string(line) +
                             ": expected a list of numbers");
  return out;
}

std::vector<int> parse_int_list(const std::string& s, int line) {
  std::vector<int> out;
  for (double v : parse_number_list(s, line)) {
    if (v != std::floor(v) || std::abs(v) > 1e9)
      throw std::runtime_error("line " + std::to_string(line) +
                               ": expected integers, got " + s);
    out.push_back(static_cast<int>(v));
  }
  return out;
}

std::size_t edit_distance(const std::string& a, const std::string& b) {
  std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

}  // namespace

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names = {
      "norm",    "alpha",   "mu-pair", "monotone",         "weakstar",
      "dilation", "balls",  "density", "strict-inclusion", "compare"};
  return names;
}

ExperimentConfig parse_config(const std::string& text) {
  ExperimentConfig cfg;
  std::string section;
  std::string section_u, section_v, section_f;

  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string s = trim(raw);
    if (s.empty() || s[0] == '#') continue;

    if (s.front() == '[') {
      if (s.back() != ']')
        throw std::runtime_error("line " + std::to_string(line) +
                                 ": unterminated section header");
      section = trim(s.substr(1, s.size() - 2));
      if (section != "exhaustion" && section != "exhaustion2" &&
          section != "function")
        throw std::runtime_error(
            "line " + std::to_string(line) + ": unknown section [" + section +
            "] (expected exhaustion, exhaustion2 or function)");
      continue;
    }

    if (section == "exhaustion") {
      section_u += s + "\n";
      continue;
    }
    if (section == "exhaustion2") {
      section_v += s + "\n";
      continue;
    }
    if (section == "function") {
      section_f += s + "\n";
      continue;
    }

    const auto eq = s.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("line " + std::to_string(line) +
                               ": expected 'key = value'");
    const std::string key = trim(s.substr(0, eq));
    const std::string val = trim(s.substr(eq + 1));
    if (val.empty())
      throw std::runtime_error("line " + std::to_string(line) +
                               ": empty value for '" + key + "'");

    if (key == "experiment") {
      cfg.experiment = val;
    } else if (key == "p") {
      cfg.p = parse_number(val, line);
    } else if (key == "tol") {
      cfg.tol = parse_number(val, line);
    } else if (key == "format") {
      cfg.format = val;
    } else if (key == "out") {
      cfg.out = val;
    } else if (key == "phi") {
      cfg.phi = val;
    } else if (key == "r_seq") {
      cfg.r_seq = parse_number_list(val, line);
    } else if (key == "t_seq") {
      cfg.t_seq = parse_number_list(val, line);
    } else if (key == "j_seq") {
      cfg.j_seq = parse_int_list(val, line);
    } else if (key == "K_seq") {
      cfg.K_seq = parse_int_list(val, line);
    } else if (key == "grid_n") {
      cfg.grid_n = parse_int_list(val, line).front();
    } else if (key == "pole_ratio") {
      cfg.pole_ratio = parse_number(val, line);
    } else if (key == "weight_ratio") {
      cfg.weight_ratio = parse_number(val, line);
    } else {
      throw std::runtime_error(
          "line " + std::to_string(line) + ": unknown key '" + key +
          "' (known: experiment p tol format out phi r_seq t_seq j_seq "
          "K_seq grid_n pole_ratio weight_ratio)");
    }
  }

  if (!section_u.empty()) cfg.u = Exhaustion::parse_record(section_u);
  if (!section_v.empty()) cfg.v = Exhaustion::parse_record(section_v);
  if (!section_f.empty()) cfg.f = AnalyticFunction::parse_record(section_f);
  return cfg;
}

std::vector<std::string> validate_config(const ExperimentConfig& cfg) {
  std::vector<std::string> issues;
  auto need = [&issues](bool ok, const std::string& msg) {
    if (!ok) issues.push_back(msg);
  };

  const auto& names = experiment_names();
  const bool known =
      std::find(names.begin(), names.end(), cfg.experiment) != names.end();
  if (cfg.experiment.empty()) {
    issues.push_back("missing experiment name");
  } else if (!known) {
    std::string best = names.front();
    std::size_t best_d = edit_distance(cfg.experiment, best);
    for (const std::string& n : names) {
      const std::size_t d = edit_distance(cfg.experiment, n);
      if (d < best_d) {
        best = n;
        best_d = d;
      }
    }
    issues.push_back("unknown experiment '" + cfg.experiment +
                     "'; did you mean '" + best + "'?");
    return issues;
  }

  need(std::isfinite(cfg.p) && cfg.p > 0.0, "p must be a positive number");
  need(std::isfinite(cfg.tol) && cfg.tol >= 0.0, "tol must be nonnegative");
  need(cfg.format == "csv" || cfg.format == "json",
       "format must be csv or json");
  need(cfg.grid_n >= 64 && cfg.grid_n <= 4096,
       "grid_n must lie in 64..4096");

  const std::string& e = cfg.experiment;
  auto one_of = [&e](std::initializer_list<const char*> set) {
    for (const char* s : set)
      if (e == s) return true;
    return false;
  };

  if (one_of({"norm", "alpha", "mu-pair", "monotone", "weakstar", "dilation",
              "density", "compare"}))
    need(cfg.u.has_value(), "experiment '" + e +
                                "' needs an [exhaustion] section");
  if (one_of({"norm", "weakstar", "dilation", "balls", "density",
              "strict-inclusion", "compare"}))
    need(cfg.f.has_value(), "experiment '" + e + "' needs a [function] section");
  if (e == "compare")
    need(cfg.v.has_value(), "compare needs an [exhaustion2] section");

  if (one_of({"mu-pair", "monotone", "weakstar"})) {
    try {
      field_by_name(cfg.phi);
    } catch (const std::domain_error& ex) {
      issues.emplace_back(ex.what());
    }
  }
  if (e == "weakstar") need(cfg.p > 1.0, "weakstar requires p > 1");
  if (e == "strict-inclusion") {
    need(cfg.pole_ratio > 0.0 && cfg.pole_ratio < 1.0,
         "pole_ratio must lie in (0, 1)");
    need(cfg.weight_ratio > 0.0 && cfg.weight_ratio < 1.0,
         "weight_ratio must lie in (0, 1)");
  }

  for (std::size_t i = 0; i < cfg.r_seq.size(); ++i) {
    if (!std::isfinite(cfg.r_seq[i]) || cfg.r_seq[i] >= 0.0) {
      issues.push_back("r_seq entries must be finite and negative");
      break;
    }
    if (i > 0 && cfg.r_seq[i] <= cfg.r_seq[i - 1]) {
      issues.push_back("r_seq must be strictly increasing");
      break;
    }
  }
  for (std::size_t i = 0; i < cfg.t_seq.size(); ++i) {
    if (!(cfg.t_seq[i] > 0.0 && cfg.t_seq[i] < 1.0)) {
      issues.push_back("t_seq entries must lie in (0, 1)");
      break;
    }
    if (i > 0 && cfg.t_seq[i] <= cfg.t_seq[i - 1]) {
      issues.push_back("t_seq must be strictly increasing");
      break;
    }
  }
  for (std::size_t i = 0; i < cfg.j_seq.size(); ++i) {
    if (cfg.j_seq[i] < 1 || cfg.j_seq[i] > 14) {
      issues.push_back("j_seq entries must lie in 1..14");
      break;
    }
    if (i > 0 && cfg.j_seq[i] <= cfg.j_seq[i - 1]) {
      issues.push_back("j_seq must be strictly increasing");
      break;
    }
  }
  for (std::size_t i = 0; i < cfg.K_seq.size(); ++i) {
    if (cfg.K_seq[i] < 2) {
      issues.push_back("K_seq entries must be at least 2");
      break;
    }
    if (i > 0 && cfg.K_seq[i] <= cfg.K_seq[i - 1]) {
      issues.push_back("K_seq must be strictly increasing");
      break;
    }
  }

  return issues;
}

}  // namespace pshardy
