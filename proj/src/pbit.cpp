#include "pbitsa/pbit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace pbitsa {

void VariabilityConfig::validate() const {
  // Negated comparisons so NaN is rejected too.
  if (!(sigma_lambda >= 0.0) || !(sigma_delta >= 0.0) || !(sigma_nu >= 0.0)) {
    throw std::invalid_argument("VariabilityConfig: standard deviations must be non-negative");
  }
  if (t_res < 1) throw std::invalid_argument("VariabilityConfig: t_res must be at least 1");
}

VariabilityProfile VariabilityProfile::ideal(std::size_t n, int t_res) {
  if (t_res < 1) throw std::invalid_argument("VariabilityProfile: t_res must be at least 1");
  return {std::vector<double>(n, 1.0), std::vector<double>(n, 0.0),
          std::vector<std::uint32_t>(n, static_cast<std::uint32_t>(t_res))};
}

void VariabilityProfile::validate(std::size_t n) const {
  if (lambda.size() != n || delta.size() != n || period.size() != n) {
    throw std::invalid_argument("VariabilityProfile: expected " + std::to_string(n) +
                                " entries per parameter");
  }
  if (std::find(period.begin(), period.end(), 0u) != period.end()) {
    throw std::invalid_argument("VariabilityProfile: update periods must be at least 1");
  }
}

std::uint32_t discretize_period(double nu, int t_res) {
  constexpr double kMaxPeriod = 1u << 30;
  const double scaled = std::round(static_cast<double>(t_res) * (1.0 + nu));
  return static_cast<std::uint32_t>(std::clamp(scaled, 1.0, kMaxPeriod));
}

VariabilityProfile sample_variability(const VariabilityConfig& config, std::size_t n, const RandomStream& rng) {
  config.validate();
  if (n == 0) throw std::invalid_argument("sample_variability: n must be at least 1");
  if (n > std::numeric_limits<std::uint32_t>::max()) {
    throw std::invalid_argument("sample_variability: n exceeds the 32-bit node range");
  }

  VariabilityProfile profile;
  profile.lambda.resize(n);
  profile.delta.resize(n);
  profile.period.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto node = static_cast<std::uint32_t>(i);
    const auto [z_lambda, z_delta] = to_normal_pair(rng.block(node, 0, StreamPurpose::kVariabilityLambdaDelta));
    const double z_nu = to_normal_pair(rng.block(node, 0, StreamPurpose::kVariabilityTiming)).first;
    profile.lambda[i] = 1.0 + config.sigma_lambda * z_lambda;
    profile.delta[i] = config.sigma_delta * z_delta;
    profile.period[i] = discretize_period(config.sigma_nu * z_nu, config.t_res);
  }
  return profile;
}

}  // namespace pbitsa
