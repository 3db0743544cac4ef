#include "routecog/choice.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "routecog/error.hpp"

namespace routecog {

namespace {

std::vector<double> softmax(std::vector<double> scores) {
  const double top = *std::max_element(scores.begin(), scores.end());
  double total = 0.0;
  for (double& s : scores) {
    s = std::exp(s - top);
    total += s;
  }
  for (double& s : scores) s /= total;
  return scores;
}

void require_finite(std::span<const double> values, const char* what) {
  if (values.empty()) throw ChoiceError(std::string(what) + ": empty input");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i]))
      throw ChoiceError(std::string(what) + ": non-finite value at index " + std::to_string(i));
  }
}

void require_positive(std::span<const double> values, const char* what) {
  require_finite(values, what);
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] <= 0.0)
      throw ChoiceError(std::string(what) + ": non-positive value at index " + std::to_string(i));
  }
}

}  // namespace

std::string_view to_string(ChoiceModel model) {
  return model == ChoiceModel::logit ? "logit" : "kirchhoff";
}

std::optional<ChoiceModel> parse_choice_model(std::string_view text) {
  if (text == "logit") return ChoiceModel::logit;
  if (text == "kirchhoff") return ChoiceModel::kirchhoff;
  return std::nullopt;
}

void validate(const ChoiceParams& params) {
  if (!std::isfinite(params.sensitivity))
    throw ConfigError("choice.sensitivity must be finite");
  if (params.model == ChoiceModel::logit && params.sensitivity <= 0.0)
    throw ConfigError("choice.sensitivity must be > 0 for the logit model");
  if (params.model == ChoiceModel::kirchhoff && params.sensitivity < 0.0)
    throw ConfigError("choice.sensitivity must be >= 0 for the kirchhoff model");
}

std::vector<double> utilities(std::span<const double> costs) {
  require_positive(costs, "utilities: cost");
  std::vector<double> u(costs.size());
  std::transform(costs.begin(), costs.end(), u.begin(), [](double c) { return 1.0 / c; });
  return u;
}

std::vector<double> logit_probabilities(std::span<const double> utilities, double mu) {
  require_finite(utilities, "logit_probabilities: utility");
  if (!(mu > 0.0) || !std::isfinite(mu))
    throw ChoiceError("logit_probabilities: sensitivity must be finite and > 0");
  std::vector<double> scores(utilities.size());
  std::transform(utilities.begin(), utilities.end(), scores.begin(),
                 [mu](double u) { return mu * u; });
  return softmax(std::move(scores));
}

std::vector<double> kirchhoff_probabilities(std::span<const double> utilities, double k) {
  require_positive(utilities, "kirchhoff_probabilities: utility");
  if (!(k >= 0.0) || !std::isfinite(k))
    throw ChoiceError("kirchhoff_probabilities: sensitivity must be finite and >= 0");
  std::vector<double> scores(utilities.size());
  std::transform(utilities.begin(), utilities.end(), scores.begin(),
                 [k](double u) { return k * std::log(u); });
  return softmax(std::move(scores));
}

std::vector<double> kirchhoff_as_logit(std::span<const double> utilities, double k) {
  require_positive(utilities, "kirchhoff_as_logit: utility");
  if (!(k >= 0.0) || !std::isfinite(k))
    throw ChoiceError("kirchhoff_as_logit: sensitivity must be finite and >= 0");
  std::vector<double> log_u(utilities.size());
  std::transform(utilities.begin(), utilities.end(), log_u.begin(),
                 [](double u) { return std::log(u); });
  if (k == 0.0) return std::vector<double>(utilities.size(), 1.0 / utilities.size());
  return logit_probabilities(log_u, k);
}

std::vector<double> choice_probabilities(std::span<const double> costs,
                                         const ChoiceParams& params) {
  const auto u = utilities(costs);
  return params.model == ChoiceModel::logit ? logit_probabilities(u, params.sensitivity)
                                            : kirchhoff_probabilities(u, params.sensitivity);
}

std::size_t sample_route(std::span<const double> probabilities, RandomStream& stream) {
  if (probabilities.empty()) throw ChoiceError("sample_route: empty probability vector");
  double total = 0.0;
  for (std::size_t i = 0; i < probabilities.size(); ++i) {
    const double p = probabilities[i];
    if (!std::isfinite(p) || p < 0.0)
      throw ChoiceError("sample_route: invalid probability at index " + std::to_string(i));
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-9)
    throw ChoiceError("sample_route: probabilities sum to " + std::to_string(total) + ", not 1");

  const double draw = stream.uniform();
  double cumulative = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < probabilities.size(); ++i) {
    if (probabilities[i] <= 0.0) continue;
    last_positive = i;
    cumulative += probabilities[i];
    if (draw < cumulative) return i;
  }
  return last_positive;  // draw landed in the rounding gap below 1
}

}  // namespace routecog
