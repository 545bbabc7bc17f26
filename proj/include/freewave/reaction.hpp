#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace freewave {

enum class Family { logistic, cubic_bistable, polynomial };
enum class Kind { monostable, bistable };

std::string to_string(Family family);
std::string to_string(Kind kind);

struct Classification {
  Kind kind;
  std::optional<double> theta;  // interior zero, bistable only
};

// A polynomial nonlinearity f(u) = sum_k a_k u^k that is either monostable
// (f(0)=f(1)=0, f'(0)>0, f'(1)<0, (1-u) f(u) > 0) or bistable (f(0)=f(1)=0,
// f'(0)<0, f'(1)<0, negative on (0,theta), positive on (theta,1), negative
// beyond 1, positive total integral over [0,1]).
//
// Construction validates and classifies; an instance is immutable afterwards.
class ReactionSpec {
 public:
  static ReactionSpec logistic();
  static ReactionSpec cubic_bistable(double theta);
  static ReactionSpec polynomial(std::vector<double> coefficients);

  Family family() const { return family_; }
  Kind kind() const { return classification_.kind; }
  const std::vector<double>& coefficients() const { return coeffs_; }
  // Interior zero of a bistable f.
  std::optional<double> theta() const { return classification_.theta; }
  // Zero of the primitive in (theta, 1) for bistable f; 0 for monostable.
  // Compact waves of height sigma need F(sigma) > 0, i.e. sigma > theta_bar.
  double theta_bar() const { return theta_bar_; }

  // Polynomial value without a domain check; the numerical code calls this
  // because trial stages and transient PDE states can dip slightly below 0.
  double operator()(double u) const;
  // Checked evaluation: u >= 0.
  double evaluate(double u) const;
  double derivative(double u) const;
  double primitive(double u) const;

  // Human readable tag, e.g. "logistic" or "cubic_bistable:0.25".
  std::string label() const;

 private:
  ReactionSpec(Family family, std::vector<double> coeffs);

  Family family_;
  std::vector<double> coeffs_;
  Classification classification_{};
  double theta_bar_ = 0.0;
};

// Sampled sign/derivative tests. Throws ClassificationError naming the first
// violated condition when neither the monostable nor the bistable set holds.
Classification classify(const std::vector<double>& coefficients);
inline Classification classify(const ReactionSpec& f) { return classify(f.coefficients()); }

// JSON form: {"family": "logistic" | "cubic_bistable" | "polynomial",
//             "theta": <real, cubic_bistable only>,
//             "coefficients": [a0, a1, ...] (polynomial only)}
ReactionSpec reaction_from_json(const nlohmann::json& j);
ReactionSpec reaction_from_json_text(const std::string& text);
nlohmann::json to_json(const ReactionSpec& f);

// Short CLI form: "logistic", "cubic:<theta>", "cubic_bistable:<theta>",
// "polynomial:a0,a1,...".
ReactionSpec parse_reaction(const std::string& text);

}  // namespace freewave
