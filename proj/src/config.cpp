#include "kpindex/config.hpp"

#include <charconv>
#include <fstream>

#include "kpindex/error.hpp"

namespace kpindex {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::size_t parse_size(const std::string& key, const std::string& value) {
  std::size_t out = 0;
  const char* end = value.data() + value.size();
  auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end) {
    throw UsageError("config key " + key + ": expected a non-negative integer, got \"" +
                     value + "\"");
  }
  return out;
}

double parse_real(const std::string& key, const std::string& value) {
  double out = 0.0;
  const char* end = value.data() + value.size();
  auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end) {
    throw UsageError("config key " + key + ": expected a number, got \"" + value +
                     "\"");
  }
  return out;
}

}  // namespace

const std::vector<std::string>& Config::keys() {
  static const std::vector<std::string> k = {
      "max_len",      "window",  "k_neighbors", "min_sim",      "lambda_domain",
      "beta",         "absent_quota", "damping", "tol",        "max_iter",
      "gamma_absent", "top_n",   "stopwords_path"};
  return k;
}

void Config::set(const std::string& key, const std::string& raw) {
  const std::string value = trim(raw);
  if (key == "max_len") max_len = parse_size(key, value);
  else if (key == "window") window = parse_size(key, value);
  else if (key == "k_neighbors") k_neighbors = parse_size(key, value);
  else if (key == "min_sim") min_sim = parse_real(key, value);
  else if (key == "lambda_domain") lambda_domain = parse_real(key, value);
  else if (key == "beta") beta = parse_real(key, value);
  else if (key == "absent_quota") absent_quota = parse_size(key, value);
  else if (key == "damping") damping = parse_real(key, value);
  else if (key == "tol") tol = parse_real(key, value);
  else if (key == "max_iter") max_iter = parse_size(key, value);
  else if (key == "gamma_absent") gamma_absent = parse_real(key, value);
  else if (key == "top_n") top_n = parse_size(key, value);
  else if (key == "stopwords_path") {
    std::string v = value;
    if (v.size() >= 2 && v.front() == '"' && v.back() == '"') {
      v = v.substr(1, v.size() - 2);
    }
    stopwords_path = v;
  } else {
    throw UsageError("unknown config key \"" + key + "\"");
  }
}

void Config::validate() const {
  if (max_len < 1) throw UsageError("max_len must be at least 1");
  if (window < 1) throw UsageError("window must be at least 1");
  if (!(min_sim >= 0.0 && min_sim <= 1.0)) {
    throw UsageError("min_sim must lie in [0, 1]");
  }
  if (!(lambda_domain >= 0.0)) throw UsageError("lambda_domain must be >= 0");
  if (!(beta >= 1.0)) throw UsageError("beta must be >= 1");
  rank_params().validate();
}

Config Config::parse(std::istream& in) {
  Config cfg;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string body = line;
    // '#' inside a quoted value is kept
    bool quoted = false;
    for (std::size_t i = 0; i < body.size(); ++i) {
      if (body[i] == '"') quoted = !quoted;
      if (body[i] == '#' && !quoted) {
        body.resize(i);
        break;
      }
    }
    body = trim(body);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      throw UsageError("config line " + std::to_string(line_no) +
                       ": expected key = value");
    }
    cfg.set(trim(body.substr(0, eq)), body.substr(eq + 1));
  }
  return cfg;
}

Config Config::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file " + path);
  return parse(in);
}

RankParams Config::rank_params() const {
  return RankParams{damping, tol, max_iter, gamma_absent, top_n};
}

ExpansionParams Config::expansion_params() const {
  return ExpansionParams{window, lambda_domain, absent_quota};
}

StopwordSet Config::load_stopwords() const {
  if (stopwords_path.empty()) return StopwordSet::english();
  return StopwordSet::from_file(stopwords_path);
}

Config Config::without_expansion() const {
  Config c = *this;
  c.k_neighbors = 0;
  c.absent_quota = 0;
  c.lambda_domain = 0.0;
  return c;
}

nlohmann::ordered_json Config::to_json() const {
  nlohmann::ordered_json j;
  j["max_len"] = max_len;
  j["window"] = window;
  j["k_neighbors"] = k_neighbors;
  j["min_sim"] = min_sim;
  j["lambda_domain"] = lambda_domain;
  j["beta"] = beta;
  j["absent_quota"] = absent_quota;
  j["damping"] = damping;
  j["tol"] = tol;
  j["max_iter"] = max_iter;
  j["gamma_absent"] = gamma_absent;
  j["top_n"] = top_n;
  j["stopwords_path"] = stopwords_path;
  return j;
}

}  // namespace kpindex
