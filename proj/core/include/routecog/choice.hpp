#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "routecog/random.hpp"

namespace routecog {

enum class ChoiceModel { logit, kirchhoff };

std::string_view to_string(ChoiceModel model);
std::optional<ChoiceModel> parse_choice_model(std::string_view text);

/// Sensitivity is mu for Logit (> 0) and k for Kirchhoff (>= 0).
struct ChoiceParams {
  ChoiceModel model = ChoiceModel::kirchhoff;
  double sensitivity = 3.0;
};

void validate(const ChoiceParams& params);

/// U_j = 1 / C_j. Throws ChoiceError naming the first non-positive cost.
std::vector<double> utilities(std::span<const double> costs);

/// exp(mu U_j) / sum_i exp(mu U_i), evaluated with the maximum subtracted.
std::vector<double> logit_probabilities(std::span<const double> utilities, double mu);

/// U_j^k / sum_i U_i^k, evaluated as exp(k log U_j - max).
std::vector<double> kirchhoff_probabilities(std::span<const double> utilities, double k);

/// Kirchhoff written as a Logit over log-utilities; a cross-check of
/// kirchhoff_probabilities.
std::vector<double> kirchhoff_as_logit(std::span<const double> utilities, double k);

/// Utilities from costs, then the configured distribution.
std::vector<double> choice_probabilities(std::span<const double> costs, const ChoiceParams& params);

/// Inverse-CDF draw of one index. Throws ChoiceError when the vector is not
/// a probability distribution (negative/non-finite entries, sum off 1 by
/// more than 1e-9).
std::size_t sample_route(std::span<const double> probabilities, RandomStream& stream);

}  // namespace routecog
