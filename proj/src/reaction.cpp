#include "freewave/reaction.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "freewave/errors.hpp"
#include "freewave/roots.hpp"

namespace freewave {

namespace {

constexpr double kEndpointTol = 1e-12;
constexpr int kGrid = 1000;

double horner(const std::vector<double>& a, double u) {
  double acc = 0.0;
  for (auto it = a.rbegin(); it != a.rend(); ++it) acc = acc * u + *it;
  return acc;
}

double horner_derivative(const std::vector<double>& a, double u) {
  double acc = 0.0;
  for (std::size_t k = a.size(); k-- > 1;) acc = acc * u + static_cast<double>(k) * a[k];
  return acc;
}

double horner_primitive(const std::vector<double>& a, double u) {
  double acc = 0.0;
  for (std::size_t k = a.size(); k-- > 0;) acc = acc * u + a[k] / static_cast<double>(k + 1);
  return acc * u;
}

std::string fmt_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  // Prefer the shortest representation that round-trips.
  for (int prec = 1; prec <= 17; ++prec) {
    char shorter[32];
    std::snprintf(shorter, sizeof shorter, "%.*g", prec, v);
    if (std::strtod(shorter, nullptr) == v) return shorter;
  }
  return buf;
}

[[noreturn]] void fail(const std::string& condition) {
  throw ClassificationError("classification failed: " + condition);
}

// Interior grid points of (lo, hi): lo + (hi - lo) * i / (kGrid + 1).
template <class Fn>
void for_grid(double lo, double hi, Fn&& fn) {
  for (int i = 1; i <= kGrid; ++i) fn(lo + (hi - lo) * i / (kGrid + 1));
}

}  // namespace

std::string to_string(Family family) {
  switch (family) {
    case Family::logistic:
      return "logistic";
    case Family::cubic_bistable:
      return "cubic_bistable";
    case Family::polynomial:
      return "polynomial";
  }
  return "?";
}

std::string to_string(Kind kind) { return kind == Kind::monostable ? "M" : "B"; }

Classification classify(const std::vector<double>& a) {
  if (a.empty()) fail("polynomial has no coefficients");
  for (double v : a) {
    if (!std::isfinite(v)) fail("coefficients must be finite");
  }
  if (std::abs(horner(a, 0.0)) > kEndpointTol) fail("f(0) = 0");
  if (std::abs(horner(a, 1.0)) > kEndpointTol) fail("f(1) = 0");

  const double d0 = horner_derivative(a, 0.0);
  const double d1 = horner_derivative(a, 1.0);

  if (d0 > 0.0) {
    if (!(d1 < 0.0)) fail("monostable: f'(1) < 0");
    bool ok = true;
    for_grid(0.0, 1.0, [&](double u) { ok = ok && horner(a, u) * (1.0 - u) > 0.0; });
    for_grid(1.0, 2.0, [&](double u) { ok = ok && horner(a, u) * (1.0 - u) > 0.0; });
    if (!(horner(a, 2.0) < 0.0)) ok = false;
    if (!ok) fail("monostable: (1 - u) f(u) > 0 on (0,1) and (1,2]");
    return {Kind::monostable, std::nullopt};
  }
  if (d0 < 0.0) {
    if (!(d1 < 0.0)) fail("bistable: f'(1) < 0");
    if (!(horner_primitive(a, 1.0) > 0.0)) fail("bistable: integral of f over [0,1] > 0");
    // Exactly one sign change, from negative to positive, on the (0,1) grid.
    double prev_u = 0.0;
    double prev_v = -1.0;
    int changes = 0;
    double lo = 0.0, hi = 0.0;
    bool zero_hit = false;
    for_grid(0.0, 1.0, [&](double u) {
      const double v = horner(a, u);
      if (v == 0.0) zero_hit = true;
      if ((v > 0.0) != (prev_v > 0.0)) {
        ++changes;
        lo = prev_u;
        hi = u;
      }
      prev_u = u;
      prev_v = v;
    });
    if (changes != 1 || zero_hit || !(prev_v > 0.0)) {
      fail("bistable: f < 0 on (0,theta) and f > 0 on (theta,1)");
    }
    bool negative_beyond = true;
    for_grid(1.0, 2.0, [&](double u) { negative_beyond = negative_beyond && horner(a, u) < 0.0; });
    if (!negative_beyond || !(horner(a, 2.0) < 0.0)) fail("bistable: f < 0 on (1,2]");
    const double theta = find_root_monotone([&](double u) { return horner(a, u); },
                                            {lo, hi, 1e-15});
    return {Kind::bistable, theta};
  }
  fail("f'(0) != 0 (degenerate nonlinearity)");
}

ReactionSpec::ReactionSpec(Family family, std::vector<double> coeffs)
    : family_(family), coeffs_(std::move(coeffs)) {
  classification_ = classify(coeffs_);
  if (classification_.kind == Kind::bistable) {
    const double theta = *classification_.theta;
    theta_bar_ = find_root_monotone([this](double u) { return horner_primitive(coeffs_, u); },
                                    {theta, 1.0, 1e-15});
  }
}

ReactionSpec ReactionSpec::logistic() { return ReactionSpec(Family::logistic, {0.0, 1.0, -1.0}); }

ReactionSpec ReactionSpec::cubic_bistable(double theta) {
  if (!(theta > 0.0 && theta < 1.0)) {
    throw ClassificationError("classification failed: cubic_bistable needs theta in (0,1)");
  }
  // u (u - theta) (1 - u)
  ReactionSpec f(Family::cubic_bistable, {0.0, -theta, 1.0 + theta, -1.0});
  f.classification_.theta = theta;
  return f;
}

ReactionSpec ReactionSpec::polynomial(std::vector<double> coefficients) {
  while (coefficients.size() > 1 && coefficients.back() == 0.0) coefficients.pop_back();
  return ReactionSpec(Family::polynomial, std::move(coefficients));
}

double ReactionSpec::evaluate(double u) const {
  if (!(u >= 0.0)) throw DomainError("reaction: evaluate needs u >= 0, got " + fmt_real(u));
  return horner(coeffs_, u);
}

double ReactionSpec::operator()(double u) const { return horner(coeffs_, u); }

double ReactionSpec::derivative(double u) const { return horner_derivative(coeffs_, u); }

double ReactionSpec::primitive(double u) const {
  if (!(u >= 0.0 && u <= 1.0)) {
    throw DomainError("reaction: primitive needs u in [0,1], got " + fmt_real(u));
  }
  return horner_primitive(coeffs_, u);
}

std::string ReactionSpec::label() const {
  switch (family_) {
    case Family::logistic:
      return "logistic";
    case Family::cubic_bistable:
      return "cubic_bistable:" + fmt_real(*classification_.theta);
    case Family::polynomial: {
      std::string out = "polynomial:";
      for (std::size_t k = 0; k < coeffs_.size(); ++k) {
        if (k) out += ',';
        out += fmt_real(coeffs_[k]);
      }
      return out;
    }
  }
  return "?";
}

ReactionSpec reaction_from_json(const nlohmann::json& j) {
  if (j.is_string()) return parse_reaction(j.get<std::string>());
  if (!j.is_object()) throw SchemaError("reaction: expected an object or a string");
  for (const auto& [key, _] : j.items()) {
    if (key != "family" && key != "theta" && key != "coefficients") {
      throw SchemaError("reaction: unknown field '" + key + "'");
    }
  }
  if (!j.contains("family") || !j["family"].is_string()) {
    throw SchemaError("reaction: field 'family' is required and must be a string");
  }
  const std::string family = j["family"].get<std::string>();
  if (family == "logistic") {
    if (j.contains("theta") || j.contains("coefficients")) {
      throw SchemaError("reaction: family 'logistic' takes no 'theta' or 'coefficients'");
    }
    return ReactionSpec::logistic();
  }
  if (family == "cubic_bistable") {
    if (!j.contains("theta") || !j["theta"].is_number()) {
      throw SchemaError("reaction: field 'theta' is required for cubic_bistable and must be a number");
    }
    if (j.contains("coefficients")) {
      throw SchemaError("reaction: family 'cubic_bistable' takes no 'coefficients'");
    }
    return ReactionSpec::cubic_bistable(j["theta"].get<double>());
  }
  if (family == "polynomial") {
    if (!j.contains("coefficients") || !j["coefficients"].is_array()) {
      throw SchemaError("reaction: field 'coefficients' is required for polynomial and must be an array");
    }
    std::vector<double> coeffs;
    std::size_t index = 0;
    for (const auto& v : j["coefficients"]) {
      if (!v.is_number()) {
        throw SchemaError("reaction: field 'coefficients[" + std::to_string(index) +
                          "]' must be a number");
      }
      coeffs.push_back(v.get<double>());
      ++index;
    }
    if (j.contains("theta")) throw SchemaError("reaction: family 'polynomial' takes no 'theta'");
    return ReactionSpec::polynomial(std::move(coeffs));
  }
  throw SchemaError("reaction: field 'family' has unknown value '" + family + "'");
}

ReactionSpec reaction_from_json_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw SchemaError("reaction: JSON syntax error at line " + std::to_string(line) + ", column " +
                      std::to_string(column));
  }
  return reaction_from_json(j);
}

nlohmann::json to_json(const ReactionSpec& f) {
  nlohmann::json j;
  j["family"] = to_string(f.family());
  if (f.family() == Family::cubic_bistable) j["theta"] = *f.theta();
  if (f.family() == Family::polynomial) j["coefficients"] = f.coefficients();
  return j;
}

ReactionSpec parse_reaction(const std::string& text) {
  const auto colon = text.find(':');
  const std::string name = text.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : text.substr(colon + 1);
  auto number = [&](const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != s.size()) {
      throw SchemaError("reaction '" + text + "': '" + s + "' is not a number");
    }
    return v;
  };
  if (name == "logistic") {
    if (!arg.empty()) throw SchemaError("reaction '" + text + "': logistic takes no parameter");
    return ReactionSpec::logistic();
  }
  if (name == "cubic" || name == "cubic_bistable") {
    if (arg.empty()) throw SchemaError("reaction '" + text + "': expected cubic:<theta>");
    return ReactionSpec::cubic_bistable(number(arg));
  }
  if (name == "polynomial" || name == "poly") {
    std::vector<double> coeffs;
    std::stringstream ss(arg);
    std::string item;
    while (std::getline(ss, item, ',')) coeffs.push_back(number(item));
    if (coeffs.empty()) throw SchemaError("reaction '" + text + "': expected polynomial:a0,a1,...");
    return ReactionSpec::polynomial(std::move(coeffs));
  }
  throw SchemaError("reaction '" + text + "': unknown family '" + name + "'");
}

}  // namespace freewave
