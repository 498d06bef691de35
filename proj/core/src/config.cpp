#include "infid/config.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <json.hpp>

#include "infid/errors.hpp"
#include "infid/psi_text.hpp"

namespace infid {

namespace {

using nlohmann::json;

struct Location {
  int line = 1;
  int column = 1;
};

Location location_of_offset(std::string_view text, std::size_t offset) {
  Location loc;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++loc.line;
      loc.column = 1;
    } else {
      ++loc.column;
    }
  }
  return loc;
}

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  // Errors point at the first occurrence of "key" in the text (or the start when absent).
  [[noreturn]] void fail(const std::string& key, const std::string& msg) const {
    std::size_t at = 0;
    if (!key.empty()) {
      const auto pos = text_.find("\"" + key + "\"");
      if (pos != std::string_view::npos) at = pos;
    }
    const Location loc = location_of_offset(text_, at);
    throw ParseError("config:" + std::to_string(loc.line) + ":" + std::to_string(loc.column) + ": " + msg,
                     loc.line, loc.column);
  }

  void allow_keys(const json& obj, std::initializer_list<const char*> allowed, const std::string& where) const {
    if (!obj.is_object()) fail(where, "'" + where + "' must be an object");
    for (const auto& item : obj.items()) {
      const bool known = std::any_of(allowed.begin(), allowed.end(), [&](const char* k) { return item.key() == k; });
      if (!known) fail(item.key(), "unknown key '" + item.key() + "' in " + where);
    }
  }

  double number(const json& j, const std::string& key) const {
    if (!j.is_number()) fail(key, "'" + key + "' must be a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) fail(key, "'" + key + "' must be finite");
    return v;
  }

  long long integer(const json& j, const std::string& key) const {
    if (!j.is_number_integer()) fail(key, "'" + key + "' must be an integer");
    return j.get<long long>();
  }

  std::string string(const json& j, const std::string& key) const {
    if (!j.is_string()) fail(key, "'" + key + "' must be a string");
    return j.get<std::string>();
  }

  Vector vector(const json& j, const std::string& key) const {
    if (!j.is_array()) fail(key, "'" + key + "' must be an array of numbers");
    Vector v;
    for (const auto& e : j) v.push_back(number(e, key));
    return v;
  }

  Space space(const json& j) const {
    allow_keys(j, {"n", "p"}, "space");
    if (!j.contains("n")) fail("space", "space needs 'n'");
    const long long n = integer(j.at("n"), "n");
    if (n < 1) fail("n", "'n' must be at least 1");
    double p = 2.0;
    if (j.contains("p")) {
      const auto& jp = j.at("p");
      if (jp.is_string()) {
        if (jp.get<std::string>() != "inf") fail("p", "'p' must be a number >= 1 or \"inf\"");
        p = kInfinity;
      } else {
        p = number(jp, "p");
        if (p < 1.0) fail("p", "'p' must be a number >= 1 or \"inf\"");
      }
    }
    return Space(static_cast<std::size_t>(n), p);
  }

  ProblemInstance instance(const json& j, const std::string& where) const {
    allow_keys(j, {"space", "phi", "psi", "regime"}, where);
    for (const char* k : {"space", "phi", "psi"}) {
      if (!j.contains(k)) fail(where, std::string(where) + " needs '" + k + "'");
    }
    const Space sp = space(j.at("space"));
    const Vector c = vector(j.at("phi"), "phi");
    if (c.size() != sp.dim()) fail("phi", "'phi' has the wrong dimension");
    const std::string psi_text = string(j.at("psi"), "psi");
    const Regime regime = j.contains("regime") ? regime_of(j.at("regime")) : Regime::Equal;
    try {
      LinearFunctional phi{c};
      LipschitzFn psi = parse_psi(psi_text, sp);
      return ProblemInstance(std::move(phi), std::move(psi), regime);
    } catch (const ParseError& e) {
      psi_fail(psi_text, e);
    } catch (const std::exception& e) {
      fail("psi", e.what());
    }
  }

  Regime regime_of(const json& j) const {
    const std::string name = string(j, "regime");
    try {
      return regime_from_string(name);
    } catch (const InvalidInput& e) {
      fail("regime", e.what());
    }
  }

  [[noreturn]] void psi_fail(const std::string& psi_text, const ParseError& e) const {
    // Column inside the psi string, shifted to the string's position in the file.
    const auto pos = text_.find(psi_text);
    if (pos == std::string_view::npos) fail("psi", e.what());
    const Location loc = location_of_offset(text_, pos + static_cast<std::size_t>(e.column() - 1));
    throw ParseError("config:" + std::to_string(loc.line) + ":" + std::to_string(loc.column) + ": " + e.what(),
                     loc.line, loc.column);
  }

  GammaFn gamma(const json& j) const {
    allow_keys(j, {"kind", "a", "b", "kappa", "beta", "knots"}, "gamma");
    if (!j.contains("kind")) fail("kind", "gamma needs 'kind'");
    const std::string kind = string(j.at("kind"), "kind");
    const double a = j.contains("a") ? number(j.at("a"), "a") : -1.0;
    const double b = j.contains("b") ? number(j.at("b"), "b") : 1.0;
    try {
      if (kind == "quadratic") {
        const double kappa = j.contains("kappa") ? number(j.at("kappa"), "kappa") : 1.0;
        return GammaFn::quadratic(kappa, a, b);
      }
      if (kind == "entropy") return GammaFn::entropy(a, b);
      if (kind == "linear") {
        if (!j.contains("beta")) fail("kind", "linear gamma needs 'beta'");
        return GammaFn::linear_plus(number(j.at("beta"), "beta"), a, b);
      }
      if (kind == "tabulated") {
        if (!j.contains("knots") || !j.at("knots").is_array()) fail("kind", "tabulated gamma needs 'knots'");
        std::vector<std::pair<double, double>> knots;
        for (const auto& k : j.at("knots")) {
          if (!k.is_array() || k.size() != 2) fail("knots", "each knot must be [lambda, value]");
          knots.emplace_back(number(k[0], "knots"), number(k[1], "knots"));
        }
        return GammaFn::tabulated(std::move(knots));
      }
    } catch (const InvalidInput& e) {
      fail("kind", e.what());
    }
    fail("kind", "unknown gamma kind '" + kind + "' (quadratic, entropy, linear, tabulated)");
  }

 private:
  std::string_view text_;
};

bool needs_equal_regime(StatementId id) { return id != StatementId::Prop21 && id != StatementId::Thm2Haus; }

}  // namespace

std::string format_space_p(double p) { return std::isinf(p) ? "inf" : format_number(p); }

ExperimentConfig parse_config(std::string_view text) {
  json root;
  try {
    root = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const std::size_t byte = e.byte > 0 ? e.byte - 1 : 0;
    const Location loc = location_of_offset(text, byte);
    throw ParseError("config:" + std::to_string(loc.line) + ":" + std::to_string(loc.column) +
                         ": malformed JSON (" + std::string(e.what()) + ")",
                     loc.line, loc.column);
  }

  const Reader rd(text);
  rd.allow_keys(root,
                {"space", "phi", "psi", "regime", "instances", "generate", "gammas", "statements", "budget", "seed",
                 "output", "tolerance", "fixed_point", "hausdorff", "nonattainment", "unboundedness"},
                "config");

  ExperimentConfig cfg;
  if (root.contains("seed")) {
    const long long s = rd.integer(root.at("seed"), "seed");
    if (s < 0) rd.fail("seed", "'seed' must be nonnegative");
    cfg.seed = static_cast<std::uint64_t>(s);
  }
  if (root.contains("output")) cfg.output = rd.string(root.at("output"), "output");

  // Single-instance shorthand at the top level.
  if (root.contains("phi") || root.contains("psi") || root.contains("space")) {
    json single = json::object();
    for (const char* k : {"space", "phi", "psi", "regime"}) {
      if (root.contains(k)) single[k] = root.at(k);
    }
    cfg.instances.push_back(rd.instance(single, "config"));
  } else if (root.contains("regime")) {
    rd.fail("regime", "'regime' at top level needs 'space', 'phi' and 'psi'");
  }
  if (root.contains("instances")) {
    const auto& arr = root.at("instances");
    if (!arr.is_array()) rd.fail("instances", "'instances' must be an array");
    for (const auto& inst : arr) cfg.instances.push_back(rd.instance(inst, "instances"));
  }
  if (root.contains("generate")) {
    const auto& g = root.at("generate");
    rd.allow_keys(g, {"count", "regime", "spaces"}, "generate");
    const long long count = g.contains("count") ? rd.integer(g.at("count"), "count") : 1;
    if (count < 0) rd.fail("count", "'count' must be nonnegative");
    const Regime regime = g.contains("regime") ? rd.regime_of(g.at("regime")) : Regime::Equal;
    std::vector<Space> spaces;
    if (g.contains("spaces")) {
      if (!g.at("spaces").is_array() || g.at("spaces").empty()) rd.fail("spaces", "'spaces' must be a nonempty array");
      for (const auto& s : g.at("spaces")) spaces.push_back(rd.space(s));
    } else {
      spaces.push_back(Space::l2(2));
    }
    for (long long i = 0; i < count; ++i) {
      const Space& sp = spaces[static_cast<std::size_t>(i) % spaces.size()];
      cfg.instances.push_back(generate_instance(cfg.seed + static_cast<std::uint64_t>(i), sp, regime));
    }
  }

  if (root.contains("gammas")) {
    const auto& arr = root.at("gammas");
    if (!arr.is_array()) rd.fail("gammas", "'gammas' must be an array");
    for (const auto& g : arr) cfg.gammas.push_back(rd.gamma(g));
  } else {
    cfg.gammas.push_back(GammaFn::entropy());
  }

  if (root.contains("statements")) {
    const auto& arr = root.at("statements");
    if (!arr.is_array()) rd.fail("statements", "'statements' must be an array");
    std::set<StatementId> seen;
    for (const auto& s : arr) {
      const std::string name = rd.string(s, "statements");
      try {
        seen.insert(statement_from_string(name));
      } catch (const InvalidInput& e) {
        rd.fail(name, e.what());
      }
    }
    for (StatementId id : all_statements()) {
      if (seen.count(id)) cfg.statements.push_back(id);
    }
  }

  if (root.contains("budget")) {
    const auto& b = root.at("budget");
    rd.allow_keys(b, {"starts", "iters_per_start", "radii"}, "budget");
    if (b.contains("starts")) cfg.budget.starts = static_cast<int>(rd.integer(b.at("starts"), "starts"));
    if (b.contains("iters_per_start")) {
      cfg.budget.iters_per_start = static_cast<int>(rd.integer(b.at("iters_per_start"), "iters_per_start"));
    }
    if (b.contains("radii")) cfg.budget.radii = rd.vector(b.at("radii"), "radii");
  }
  cfg.budget.seed = cfg.seed;
  try {
    cfg.budget.validate();
  } catch (const InvalidInput& e) {
    rd.fail("budget", e.what());
  }

  if (root.contains("tolerance")) {
    const auto& t = root.at("tolerance");
    rd.allow_keys(t, {"optimizer", "closed_form", "hausdorff_rel", "rate_slack", "ray_rel"}, "tolerance");
    auto set = [&](const char* key, double& field) {
      if (!t.contains(key)) return;
      field = rd.number(t.at(key), key);
      if (!(field >= 0.0)) rd.fail(key, std::string("'") + key + "' must be nonnegative");
    };
    set("optimizer", cfg.tolerance.optimizer);
    set("closed_form", cfg.tolerance.closed_form);
    set("hausdorff_rel", cfg.tolerance.hausdorff_rel);
    set("rate_slack", cfg.tolerance.rate_slack);
    set("ray_rel", cfg.tolerance.ray_rel);
  }
  if (root.contains("fixed_point")) {
    const auto& f = root.at("fixed_point");
    rd.allow_keys(f, {"lambda", "r", "starts"}, "fixed_point");
    if (f.contains("lambda")) cfg.fixed_point.lambda = rd.number(f.at("lambda"), "lambda");
    if (f.contains("r")) cfg.fixed_point.r = rd.number(f.at("r"), "r");
    if (f.contains("starts")) cfg.fixed_point.starts = static_cast<int>(rd.integer(f.at("starts"), "starts"));
    if (!(std::abs(cfg.fixed_point.lambda) < 1.0)) rd.fail("fixed_point", "fixed_point.lambda must satisfy |lambda| < 1");
    if (cfg.fixed_point.starts < 1) rd.fail("fixed_point", "fixed_point.starts must be positive");
  }
  if (root.contains("hausdorff")) {
    const auto& h = root.at("hausdorff");
    rd.allow_keys(h, {"t", "s", "samples"}, "hausdorff");
    if (h.contains("t")) cfg.hausdorff.t = rd.number(h.at("t"), "t");
    if (h.contains("s")) cfg.hausdorff.s = rd.number(h.at("s"), "s");
    if (h.contains("samples")) {
      const long long n = rd.integer(h.at("samples"), "samples");
      if (n < 1) rd.fail("samples", "'samples' must be positive");
      cfg.hausdorff.samples = static_cast<std::size_t>(n);
    }
  }
  if (root.contains("nonattainment")) {
    const auto& n = root.at("nonattainment");
    rd.allow_keys(n, {"r"}, "nonattainment");
    if (n.contains("r")) cfg.nonattainment_r = rd.number(n.at("r"), "r");
  }
  if (root.contains("unboundedness")) {
    const auto& u = root.at("unboundedness");
    rd.allow_keys(u, {"lambda"}, "unboundedness");
    if (u.contains("lambda")) cfg.unboundedness_lambda = rd.number(u.at("lambda"), "lambda");
  }

  for (StatementId id : cfg.statements) {
    if (!needs_equal_regime(id)) continue;
    for (const auto& inst : cfg.instances) {
      if (inst.regime() != Regime::Equal) {
        rd.fail("regime", std::string(to_string(id)) + " requires the EQUAL regime (L = ||phi||_*)");
      }
    }
  }
  return cfg;
}

std::string config_skeleton(std::uint64_t seed, Regime regime, const Space& space) {
  const ProblemInstance inst = generate_instance(seed, space, regime);
  nlohmann::ordered_json j;
  j["seed"] = seed;
  j["space"] = {{"n", space.dim()}};
  if (std::isinf(space.p())) {
    j["space"]["p"] = "inf";
  } else {
    j["space"]["p"] = space.p();
  }
  j["phi"] = inst.phi().coeffs();
  j["psi"] = format_psi(inst.psi());
  j["regime"] = to_string(regime);
  j["gammas"] = nlohmann::ordered_json::array({{{"kind", "entropy"}, {"a", -1.0}, {"b", 1.0}}});
  if (regime == Regime::Equal) {
    j["statements"] = {"THM1", "THM4_3"};
  } else {
    j["statements"] = {"PROP21"};
  }
  j["budget"] = {{"starts", 32}, {"iters_per_start", 2000}, {"radii", {1.0, 10.0, 100.0, 1000.0}}};
  j["output"] = "report.jsonl";
  return j.dump(2) + "\n";
}

}  // namespace infid
