#pragma once

#include <cstdint>
#include <vector>

namespace specdiff {

// Constants of the mean-reverting variance-exploding diffusion
//   dx = gamma*(y - x) dt + g(t) dw,   g(t) = sigma_min*(sigma_max/sigma_min)^t
//                                             * sqrt(2*ln(sigma_max/sigma_min))
// plus the time interval [t_min, T] the reverse process operates on.
// All logarithms are natural; anything else breaks the closed-form variance.
struct OuveParams {
  double gamma = 1.5;
  double sigma_min = 0.05;
  double sigma_max = 0.5;
  double t_min = 0.03;
  double t_max = 1.0;  // process horizon T

  void validate() const;
  double log_ratio() const;  // ln(sigma_max / sigma_min)
};

// State tensors are flat vectors; spectrogram states store re/im interleaved
// per time-frequency position.
struct DiffusionState {
  std::vector<double> x;
  double t = 0.0;
};

struct ConditionPair {
  std::vector<double> x0;  // clean
  std::vector<double> y;   // degraded / conditioning
};

// gamma * (y - x_t), elementwise
std::vector<double> drift(const std::vector<double>& x_t, const std::vector<double>& y,
                          const OuveParams& p);

// g(t); requires t in [0, T]
double diffusion_coeff(double t, const OuveParams& p);

// closed-form kernel mean: exp(-gamma t) x0 + (1 - exp(-gamma t)) y
std::vector<double> kernel_mean(const ConditionPair& pair, double t, const OuveParams& p);

// closed-form kernel standard deviation sigma(t)
double kernel_std(double t, const OuveParams& p);

// x_t = kernel_mean + sigma(t) * z
DiffusionState sample_forward(const ConditionPair& pair, double t, const OuveParams& p,
                              const std::vector<double>& z);

// conditional score -(x_t - kernel_mean) / sigma(t)^2; requires sigma(t) > 0
std::vector<double> analytic_score(const std::vector<double>& x_t, const ConditionPair& pair,
                                   double t, const OuveParams& p);

// Brute-force Euler-Maruyama integration of the forward process from t=0 to
// t=horizon with step horizon/n_steps. Deterministic given the seed. Used as
// an oracle for the closed-form kernel statistics.
DiffusionState simulate_forward(const ConditionPair& pair, const OuveParams& p,
                                std::size_t n_steps, std::uint64_t seed);
DiffusionState simulate_forward(const ConditionPair& pair, const OuveParams& p, double horizon,
                                std::size_t n_steps, std::uint64_t seed);

}  // namespace specdiff
