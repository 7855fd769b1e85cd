#include "cspstream/formats.hpp"

#include <json.hpp>

#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace cspstream {

using nlohmann::json;

namespace {

constexpr const char* kUnicodeMinus = "\xE2\x88\x92";

std::string strip(std::string line) {
  if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
  const auto b = line.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = line.find_last_not_of(" \t\r\n");
  return line.substr(b, e - b + 1);
}

std::string normalize_minus(std::string s) {
  for (std::size_t p; (p = s.find(kUnicodeMinus)) != std::string::npos;) s.replace(p, 3, "-");
  return s;
}

// Next non-empty line with its number; false at end of input.
bool next_line(std::istream& in, std::string& out, std::size_t& lineno) {
  std::string raw;
  while (std::getline(in, raw)) {
    ++lineno;
    out = strip(raw);
    if (!out.empty()) return true;
  }
  return false;
}

std::size_t parse_size(const std::string& tok, std::size_t lineno, const char* what) {
  if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos || tok.size() > 18) {
    throw ParseError(std::string("bad ") + what + " '" + tok + "'", lineno);
  }
  return std::stoull(tok);
}

int parse_sign(const std::string& tok, std::size_t lineno) {
  if (tok == "+1" || tok == "1") return 1;
  if (tok == "-1") return -1;
  throw ParseError("sign must be +1 or -1, got '" + tok + "'", lineno);
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  return in;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  return out;
}

Rational json_rational(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_string()) throw ParseError(std::string("missing rational field ") + key, 0);
  return parse_rational(j[key].get<std::string>());
}

}  // namespace

Stream read_stream(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  if (!next_line(in, line, lineno) || line != "CSPSTREAM v1") throw ParseError("expected header 'CSPSTREAM v1'", lineno);
  if (!next_line(in, line, lineno)) throw ParseError("missing 'n=<n> k=<k>' line", lineno);
  Stream s;
  {
    std::istringstream ls(line);
    std::string a, b, extra;
    ls >> a >> b;
    if (a.rfind("n=", 0) != 0 || b.rfind("k=", 0) != 0 || (ls >> extra)) {
      throw ParseError("expected 'n=<n> k=<k>'", lineno);
    }
    s.n = parse_size(a.substr(2), lineno, "n");
    const std::size_t k = parse_size(b.substr(2), lineno, "k");
    if (s.n == 0) throw ParseError("n must be positive", lineno);
    if (k < 1 || k > static_cast<std::size_t>(kMaxArity)) throw ParseError("k must be in [1, 6]", lineno);
    s.k = static_cast<int>(k);
  }
  const std::size_t K = static_cast<std::size_t>(s.k);
  while (next_line(in, line, lineno)) {
    std::istringstream ls(normalize_minus(line));
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.size() != 1 + 2 * K) {
      throw ParseError("event needs an op, " + std::to_string(K) + " ids and " + std::to_string(K) + " signs", lineno);
    }
    StreamEvent e;
    if (tok[0] == "+") {
      e.insert = true;
    } else if (tok[0] == "-") {
      e.insert = false;
    } else {
      throw ParseError("event op must be + or -, got '" + tok[0] + "'", lineno);
    }
    for (std::size_t t = 0; t < K; ++t) {
      const std::size_t j = parse_size(tok[1 + t], lineno, "variable id");
      if (j < 1 || j > s.n) throw ParseError("variable id " + tok[1 + t] + " outside [1, n]", lineno);
      e.constraint.indices.push_back(j - 1);
      e.constraint.signs.push_back(parse_sign(tok[1 + K + t], lineno));
    }
    for (std::size_t t = 0; t < K; ++t) {
      for (std::size_t u = 0; u < t; ++u) {
        if (e.constraint.indices[t] == e.constraint.indices[u]) throw ParseError("event repeats a variable", lineno);
      }
    }
    s.events.push_back(std::move(e));
  }
  return s;
}

void write_stream(std::ostream& out, const Stream& s) {
  out << "CSPSTREAM v1\n";
  out << "n=" << s.n << " k=" << s.k << "\n";
  for (const auto& e : s.events) {
    out << (e.insert ? '+' : '-');
    for (auto j : e.constraint.indices) out << ' ' << j + 1;
    for (int b : e.constraint.signs) out << ' ' << (b > 0 ? "+1" : "-1");
    out << '\n';
  }
}

Stream read_stream_file(const std::string& path) {
  auto in = open_in(path);
  return read_stream(in);
}

void write_stream_file(const std::string& path, const Stream& s) {
  auto out = open_out(path);
  write_stream(out, s);
}

std::string point_string(unsigned index, int k) {
  std::string s(static_cast<std::size_t>(k), '0');
  for (int t = 0; t < k; ++t) {
    if (index & coord_bit(t, k)) s[static_cast<std::size_t>(t)] = '1';
  }
  return s;
}

unsigned parse_point(const std::string& s, int k) {
  if (static_cast<int>(s.size()) != k || s.find_first_not_of("01") != std::string::npos) {
    throw std::invalid_argument("point '" + s + "' is not a " + std::to_string(k) + "-bit string");
  }
  unsigned idx = 0;
  for (char c : s) idx = (idx << 1) | (c == '1' ? 1u : 0u);
  return idx;
}

Dist read_dist(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  if (!next_line(in, line, lineno) || line != "DIST v1") throw ParseError("expected header 'DIST v1'", lineno);
  if (!next_line(in, line, lineno) || line.rfind("k=", 0) != 0) throw ParseError("expected 'k=<k>'", lineno);
  const std::size_t k = parse_size(line.substr(2), lineno, "k");
  if (k < 1 || k > static_cast<std::size_t>(kMaxArity)) throw ParseError("k must be in [1, 6]", lineno);
  Dist d;
  d.k = static_cast<int>(k);
  d.p.assign(std::size_t{1} << k, Rational(0));
  std::vector<bool> seen(d.p.size(), false);
  std::size_t count = 0;
  while (next_line(in, line, lineno)) {
    std::istringstream ls(line);
    std::string point, prob, extra;
    if (!(ls >> point >> prob) || (ls >> extra)) throw ParseError("expected '<bitstring> <p/q>'", lineno);
    unsigned idx;
    Rational p;
    try {
      idx = parse_point(point, d.k);
      p = parse_rational(normalize_minus(prob));
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what(), lineno);
    }
    if (seen[idx]) throw ParseError("point " + point + " listed twice", lineno);
    if (p < 0) throw ParseError("negative probability", lineno);
    seen[idx] = true;
    d.p[idx] = p;
    ++count;
  }
  if (count != d.p.size()) throw ParseError("expected " + std::to_string(d.p.size()) + " points, got " + std::to_string(count), lineno);
  Rational s = 0;
  for (const auto& v : d.p) s += v;
  if (s != 1) throw ParseError("probabilities sum to " + to_string(s) + ", not 1", lineno);
  return d;
}

void write_dist(std::ostream& out, const Dist& d) {
  out << "DIST v1\n";
  out << "k=" << d.k << "\n";
  for (unsigned i = 0; i < d.p.size(); ++i) out << point_string(i, d.k) << ' ' << to_string(d.p[i]) << '\n';
}

Dist read_dist_file(const std::string& path) {
  auto in = open_in(path);
  return read_dist(in);
}

void write_dist_file(const std::string& path, const Dist& d) {
  auto out = open_out(path);
  write_dist(out, d);
}

void write_trace(std::ostream& out, const PolarizationTrace& t) {
  const int k = t.final.k;
  for (std::size_t i = 0; i < t.steps.size(); ++i) {
    const auto& s = t.steps[i];
    json j = {{"step", i + 1},
              {"u", point_string(s.u, k)},
              {"v", point_string(s.v, k)},
              {"eps", to_string(s.eps)},
              {"phi_before", to_string(s.phi_before)},
              {"phi_after", to_string(s.phi_after)}};
    out << j.dump() << '\n';
  }
  json values = json::object();
  for (unsigned b = 0; b < t.final.values.size(); ++b) values[point_string(b, k)] = to_string(t.final.values[b]);
  out << json{{"final", {{"k", k}, {"values", values}}}}.dump() << '\n';
}

PolarizationTrace read_trace(std::istream& in) {
  PolarizationTrace t;
  std::vector<json> steps;
  std::string line;
  std::size_t lineno = 0;
  bool have_final = false;
  while (next_line(in, line, lineno)) {
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      throw ParseError(e.what(), lineno);
    }
    if (j.contains("final")) {
      const json& f = j["final"];
      t.final.k = f.at("k").get<int>();
      t.final.values.assign(std::size_t{1} << t.final.k, Rational(0));
      for (const auto& [key, val] : f.at("values").items()) {
        t.final.values[parse_point(key, t.final.k)] = parse_rational(val.get<std::string>());
      }
      have_final = true;
    } else {
      steps.push_back(std::move(j));
    }
  }
  if (!have_final) throw ParseError("trace has no final line", lineno);
  for (const auto& j : steps) {
    PolarizationStep s;
    s.u = parse_point(j.at("u").get<std::string>(), t.final.k);
    s.v = parse_point(j.at("v").get<std::string>(), t.final.k);
    s.eps = json_rational(j, "eps");
    s.phi_before = json_rational(j, "phi_before");
    s.phi_after = json_rational(j, "phi_after");
    t.steps.push_back(std::move(s));
  }
  return t;
}

void write_metadata(std::ostream& out, const GenMetadata& m) {
  json head = {{"kind", "cspstream-gen"}, {"mode", m.mode},   {"n", m.n},
               {"k", m.k},                {"T", m.T},         {"alpha_m", to_string(m.alpha_m)},
               {"tau", to_string(m.tau)}, {"seed", m.seed},   {"prefix", m.prefix},
               {"events", m.masks.size()}};
  if (m.x_star) head["x_star"] = *m.x_star;
  out << head.dump() << '\n';
  for (std::size_t i = 0; i < m.masks.size(); ++i) {
    out << json{{"event", i + 1}, {"mask", point_string(m.masks[i], m.k)}}.dump() << '\n';
  }
}

GenMetadata read_metadata(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  if (!next_line(in, line, lineno)) throw ParseError("empty metadata", lineno);
  GenMetadata m;
  try {
    json head = json::parse(line);
    m.mode = head.at("mode").get<std::string>();
    m.n = head.at("n").get<std::size_t>();
    m.k = head.at("k").get<int>();
    m.T = head.at("T").get<std::size_t>();
    m.alpha_m = json_rational(head, "alpha_m");
    m.tau = json_rational(head, "tau");
    m.seed = head.at("seed").get<std::uint64_t>();
    m.prefix = head.at("prefix").get<std::size_t>();
    if (head.contains("x_star")) m.x_star = head["x_star"].get<Assignment>();
    while (next_line(in, line, lineno)) {
      json j = json::parse(line);
      m.masks.push_back(parse_point(j.at("mask").get<std::string>(), m.k));
    }
  } catch (const json::exception& e) {
    throw ParseError(e.what(), lineno);
  }
  return m;
}

}  // namespace cspstream
