#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "pbitsa/model.hpp"
#include "pbitsa/random.hpp"

namespace pbitsa {

/// Standard deviations of the per-device intensity, offset and timing
/// variations, plus the number of sub-steps per annealing cycle.
struct VariabilityConfig {
  double sigma_lambda = 0.0;
  double sigma_delta = 0.0;
  double sigma_nu = 0.0;
  int t_res = 10;

  /// Throws std::invalid_argument on negative sigmas or t_res < 1.
  void validate() const;
};

/// One realization of device variability: intensity scale, input offset and
/// update period (in sub-steps) for every p-bit.
struct VariabilityProfile {
  std::vector<double> lambda;
  std::vector<double> delta;
  std::vector<std::uint32_t> period;

  [[nodiscard]] std::size_t size() const noexcept { return lambda.size(); }
  /// lambda = 1, delta = 0, period = t_res everywhere.
  static VariabilityProfile ideal(std::size_t n, int t_res);
  /// Throws std::invalid_argument if the vectors disagree with n or a period is 0.
  void validate(std::size_t n) const;
};

/// period = max(1, round(t_res * (1 + nu))), saturating far above any
/// realistic schedule length.
[[nodiscard]] std::uint32_t discretize_period(double nu, int t_res);

/// lambda ~ N(1, s_l^2), delta ~ N(0, s_d^2), nu ~ N(0, s_n^2) per p-bit.
/// Each p-bit draws from its own counter block, so the result depends only on
/// the stream seed and n.
[[nodiscard]] VariabilityProfile sample_variability(const VariabilityConfig& config, std::size_t n,
                                                    const RandomStream& rng);

/// sgn(r + tanh(lambda * (input + delta))) with sgn(0) = +1.
[[nodiscard]] inline Spin pbit_update(double input, double r, double lambda, double delta) noexcept {
  return (r + std::tanh(lambda * (input + delta))) >= 0.0 ? Spin{1} : Spin{-1};
}

}  // namespace pbitsa
