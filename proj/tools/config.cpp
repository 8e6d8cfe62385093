#include "config.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

namespace padicheat::cli {

using nlohmann::json;

ConfigError::ConfigError(std::vector<std::string> issues)
    : std::runtime_error([&] {
        std::string msg = "invalid config:";
        for (const auto& s : issues) msg += "\n  " + s;
        return msg;
      }()),
      issues_(std::move(issues)) {}

namespace {

// Walks one JSON object, reading known fields and remembering what it saw.
class Reader {
 public:
  Reader(const json& obj, std::string where, std::vector<std::string>& issues)
      : obj_(obj), where_(std::move(where)), issues_(issues) {
    if (!obj_.is_object()) issue("", "must be an object");
  }
  ~Reader() {
    if (!obj_.is_object()) return;
    for (const auto& [key, value] : obj_.items())
      if (!seen_.count(key)) issue(key, "unknown field");
  }

  const json* find(const std::string& key) {
    seen_.insert(key);
    if (!obj_.is_object()) return nullptr;
    const auto it = obj_.find(key);
    return it == obj_.end() ? nullptr : &*it;
  }

  void issue(const std::string& key, const std::string& what) {
    std::string path = where_;
    if (!key.empty()) path += path.empty() ? key : "." + key;
    issues_.push_back((path.empty() ? "<root>" : path) + ": " + what);
  }
  std::string path(const std::string& key) const { return where_.empty() ? key : where_ + "." + key; }

  template <class T>
  void get(const std::string& key, T& out, bool required = false) {
    const json* v = find(key);
    if (!v) {
      if (required) issue(key, "missing required field");
      return;
    }
    read(key, *v, out);
  }

  template <class T>
  void get_optional(const std::string& key, std::optional<T>& out) {
    const json* v = find(key);
    if (!v || v->is_null()) return;
    T tmp{};
    if (read(key, *v, tmp)) out = tmp;
  }

 private:
  bool read(const std::string& key, const json& v, double& out) {
    if (!v.is_number()) return issue(key, "expected a number"), false;
    out = v.get<double>();
    return true;
  }
  bool read(const std::string& key, const json& v, long& out) {
    if (!v.is_number_integer()) return issue(key, "expected an integer"), false;
    out = v.get<long>();
    return true;
  }
  bool read(const std::string& key, const json& v, std::size_t& out) {
    if (!v.is_number_unsigned()) return issue(key, "expected a non-negative integer"), false;
    out = v.get<std::size_t>();
    return true;
  }
  bool read(const std::string& key, const json& v, unsigned& out) {
    if (!v.is_number_unsigned() || v.get<std::uint64_t>() > 1000000) return issue(key, "expected a small positive integer"), false;
    out = v.get<unsigned>();
    return true;
  }
  bool read(const std::string& key, const json& v, bool& out) {
    if (!v.is_boolean()) return issue(key, "expected true or false"), false;
    out = v.get<bool>();
    return true;
  }
  bool read(const std::string& key, const json& v, std::string& out) {
    if (!v.is_string()) return issue(key, "expected a string"), false;
    out = v.get<std::string>();
    return true;
  }
  bool read(const std::string& key, const json& v, std::vector<double>& out) {
    if (!v.is_array()) return issue(key, "expected an array of numbers"), false;
    std::vector<double> tmp;
    for (const auto& e : v) {
      if (!e.is_number()) return issue(key, "expected an array of numbers"), false;
      tmp.push_back(e.get<double>());
    }
    out = std::move(tmp);
    return true;
  }
  bool read(const std::string& key, const json& v, std::vector<std::uint64_t>& out) {
    if (!v.is_array()) return issue(key, "expected an array of non-negative integers"), false;
    std::vector<std::uint64_t> tmp;
    for (const auto& e : v) {
      if (!e.is_number_unsigned()) return issue(key, "expected an array of non-negative integers"), false;
      tmp.push_back(e.get<std::uint64_t>());
    }
    out = std::move(tmp);
    return true;
  }

  const json& obj_;
  std::string where_;
  std::vector<std::string>& issues_;
  std::set<std::string> seen_;
};

bool increasing(const std::vector<double>& v) {
  for (std::size_t i = 1; i < v.size(); ++i)
    if (!(v[i] > v[i - 1])) return false;
  return true;
}

template <class Fn>
void block(Reader& parent, const std::string& key, std::vector<std::string>& issues, Fn&& fn) {
  if (const json* v = parent.find(key)) {
    Reader r(*v, parent.path(key), issues);
    fn(r);
  }
}

}  // namespace

std::vector<Monomial> parse_polynomial(const std::string& literal, std::size_t n, unsigned& degree) {
  std::size_t i = 0;
  const auto skip = [&] {
    while (i < literal.size() && std::isspace(static_cast<unsigned char>(literal[i]))) ++i;
  };
  const auto number = [&]() -> std::string {
    std::string digits;
    while (i < literal.size() && std::isdigit(static_cast<unsigned char>(literal[i]))) digits += literal[i++];
    return digits;
  };
  const auto fail = [&](const std::string& what) {
    throw std::invalid_argument(what + " at position " + std::to_string(i) + " in \"" + literal + "\"");
  };

  std::map<std::vector<unsigned>, BigInt> terms;
  std::optional<unsigned> deg;
  bool first = true;
  skip();
  if (i == literal.size()) fail("empty polynomial");
  while (i < literal.size()) {
    int sign = 1;
    skip();
    if (i < literal.size() && (literal[i] == '+' || literal[i] == '-')) {
      sign = literal[i] == '-' ? -1 : 1;
      ++i;
    } else if (!first) {
      fail("expected '+' or '-'");
    }
    first = false;
    skip();
    BigInt coeff = 1;
    bool have_coeff = false;
    if (i < literal.size() && std::isdigit(static_cast<unsigned char>(literal[i]))) {
      coeff = BigInt(number());
      have_coeff = true;
      skip();
      if (i < literal.size() && literal[i] == '/') fail("coefficients must be integers");
      if (i < literal.size() && literal[i] == '*') ++i, skip();
    }
    std::vector<unsigned> exps(n, 0);
    bool have_var = false;
    while (i < literal.size() && literal[i] == 'x') {
      ++i;
      if (i < literal.size() && literal[i] == 'i') ++i;  // "xi1" reads like "x1"
      const std::string idx = number();
      if (idx.empty()) fail("expected a variable index after 'x'");
      const unsigned long v = std::stoul(idx);
      if (v < 1 || v > n) fail("variable x" + idx + " outside x1..x" + std::to_string(n));
      unsigned e = 1;
      skip();
      if (i < literal.size() && literal[i] == '^') {
        ++i;
        skip();
        const std::string ex = number();
        if (ex.empty()) fail("expected an exponent after '^'");
        e = static_cast<unsigned>(std::stoul(ex));
        skip();
      }
      exps[v - 1] += e;
      have_var = true;
      if (i < literal.size() && literal[i] == '*') ++i, skip();
    }
    if (!have_coeff && !have_var) fail("expected a term");
    unsigned d = 0;
    for (unsigned e : exps) d += e;
    if (deg && *deg != d)
      throw std::invalid_argument("not homogeneous: a term of degree " + std::to_string(d) + " next to degree " +
                                  std::to_string(*deg) + " in \"" + literal + "\"");
    deg = d;
    terms[exps] += sign * coeff;
    skip();
  }
  std::vector<Monomial> out;
  for (const auto& [e, c] : terms)
    if (c != 0) out.push_back({e, c});
  if (out.empty()) throw std::invalid_argument("polynomial is identically zero: \"" + literal + "\"");
  if (*deg == 0) throw std::invalid_argument("polynomial must have positive degree");
  degree = *deg;
  return out;
}

EllipticPolynomial RunConfig::make_polynomial() const {
  unsigned d = 0;
  auto monomials = parse_polynomial(polynomial, n, d);
  return EllipticPolynomial(p, n, d, std::move(monomials));
}

RunConfig parse_config_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError({std::string("not valid JSON: ") + e.what()});
  }
  std::vector<std::string> issues;
  RunConfig c;
  {
    Reader r(doc, "", issues);
    r.get("name", c.name);
    r.get("p", c.p, true);
    r.get("n", c.n, true);
    r.get("polynomial", c.polynomial, true);
    r.get("beta", c.beta_text, true);
    r.get("target_eps", c.target_eps);
    r.get("seeds", c.seeds);
    block(r, "kernel", issues, [&](Reader& b) {
      b.get("times", c.kernel.times);
      b.get("k_min", c.kernel.k_min);
      b.get("k_max", c.kernel.k_max);
      b.get("points_per_sphere", c.kernel.points_per_sphere);
      b.get("include_origin", c.kernel.include_origin);
      if (c.kernel.k_min > c.kernel.k_max) b.issue("k_min", "must not exceed k_max");
      for (double t : c.kernel.times)
        if (!(t > 0)) b.issue("times", "all times must be positive");
    });
    block(r, "semigroup", issues, [&](Reader& b) {
      b.get("times", c.semigroup.times);
      b.get("probes", c.semigroup.probes);
      b.get("conservativity_radius", c.semigroup.conservativity_radius);
      for (double t : c.semigroup.times)
        if (!(t > 0)) b.issue("times", "all times must be positive");
      if (c.semigroup.probes == 0) b.issue("probes", "must be positive");
    });
    block(r, "paths", issues, [&](Reader& b) {
      b.get("times", c.paths.times);
      b.get("depth", c.paths.depth);
      b.get_optional("cap_radius", c.paths.cap_radius);
      b.get("paths", c.paths.paths);
      b.get("seed", c.paths.seed);
      if (c.paths.times.size() < 2 || c.paths.times.front() != 0.0 || !increasing(c.paths.times))
        b.issue("times", "must start at 0 and increase strictly");
    });
    block(r, "negdef", issues, [&](Reader& b) {
      b.get("trials", c.negdef.trials);
      b.get("m_max", c.negdef.m_max);
      b.get("seed", c.negdef.seed);
      b.get("negate_symbol", c.negdef.negate_symbol);
      if (c.negdef.m_max < 1 || c.negdef.m_max > 64) b.issue("m_max", "must lie in [1, 64]");
      if (c.negdef.trials == 0) b.issue("trials", "must be positive");
    });
    block(r, "levy", issues, [&](Reader& b) {
      b.get("r", c.levy.r);
      b.get("t_start", c.levy.t_start);
      b.get("t_steps", c.levy.t_steps);
      if (!(c.levy.t_start > 0)) b.issue("t_start", "must be positive");
      if (c.levy.t_steps < 3) b.issue("t_steps", "need at least 3 times");
    });
    block(r, "sampler", issues, [&](Reader& b) {
      b.get("draws", c.sampler.draws);
      b.get("depth", c.sampler.depth);
      b.get("t", c.sampler.t);
      if (!(c.sampler.t > 0)) b.issue("t", "must be positive");
    });
  }

  if (c.p != 0 && !is_prime(c.p)) issues.push_back("p: " + std::to_string(c.p) + " is not prime");
  if (doc.is_object() && doc.contains("n") && c.n == 0) issues.push_back("n: must be at least 1");
  if (!(c.target_eps > 0 && c.target_eps < 1)) issues.push_back("target_eps: must lie in (0, 1)");
  if (doc.is_object() && doc.contains("beta") && doc["beta"].is_string()) {
    try {
      c.beta = parse_rational(c.beta_text);
      if (c.beta <= 0) issues.push_back("beta: must be positive, got \"" + c.beta_text + "\"");
    } catch (const std::exception& e) {
      issues.push_back("beta: " + std::string(e.what()));
    }
  }
  if (c.n > 0 && c.p != 0 && !c.polynomial.empty()) {
    try {
      c.make_polynomial();
    } catch (const std::exception& e) {
      issues.push_back("polynomial: " + std::string(e.what()));
    }
  }
  if (c.seeds.empty())
    for (std::uint64_t s = 1; s <= 20; ++s) c.seeds.push_back(s);
  if (!issues.empty()) throw ConfigError(std::move(issues));
  return c;
}

RunConfig parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError({path + ": cannot open"});
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

}  // namespace padicheat::cli
