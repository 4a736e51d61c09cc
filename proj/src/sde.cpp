#include "specdiff/sde.hpp"

#include <cmath>
#include <string>

#include "specdiff/errors.hpp"
#include "specdiff/rng.hpp"

namespace specdiff {

namespace {

constexpr double kTimeTol = 1e-12;

void check_time(double t, const OuveParams& p, const char* op) {
  if (!(t >= -kTimeTol) || !(t <= p.t_max + kTimeTol)) {
    throw ValidationError(std::string(op) + ": t=" + std::to_string(t) + " outside [0, T]");
  }
}

void check_same_size(std::size_t a, std::size_t b, const char* op) {
  if (a != b) throw ValidationError(std::string(op) + ": tensor shape mismatch");
}

}  // namespace

void OuveParams::validate() const {
  if (!(gamma > 0.0)) throw ValidationError("sde: gamma must be positive");
  if (!(sigma_min > 0.0)) throw ValidationError("sde: sigma_min must be positive");
  if (!(sigma_max > sigma_min)) throw ValidationError("sde: sigma_max must exceed sigma_min");
  if (!(t_min > 0.0) || !(t_min < t_max)) throw ValidationError("sde: need 0 < t_min < T");
}

double OuveParams::log_ratio() const { return std::log(sigma_max / sigma_min); }

std::vector<double> drift(const std::vector<double>& x_t, const std::vector<double>& y,
                          const OuveParams& p) {
  check_same_size(x_t.size(), y.size(), "drift");
  std::vector<double> out(x_t.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = p.gamma * (y[i] - x_t[i]);
  return out;
}

double diffusion_coeff(double t, const OuveParams& p) {
  check_time(t, p, "diffusion_coeff");
  const double lr = p.log_ratio();
  return p.sigma_min * std::pow(p.sigma_max / p.sigma_min, t) * std::sqrt(2.0 * lr);
}

std::vector<double> kernel_mean(const ConditionPair& pair, double t, const OuveParams& p) {
  check_time(t, p, "kernel_mean");
  check_same_size(pair.x0.size(), pair.y.size(), "kernel_mean");
  const double w = std::exp(-p.gamma * t);
  std::vector<double> out(pair.x0.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = w * pair.x0[i] + (1.0 - w) * pair.y[i];
  return out;
}

double kernel_std(double t, const OuveParams& p) {
  check_time(t, p, "kernel_std");
  const double lr = p.log_ratio();
  const double ratio2t = std::pow(p.sigma_max / p.sigma_min, 2.0 * t);
  const double var =
      p.sigma_min * p.sigma_min * (ratio2t - std::exp(-2.0 * p.gamma * t)) * lr / (p.gamma + lr);
  return var > 0.0 ? std::sqrt(var) : 0.0;
}

DiffusionState sample_forward(const ConditionPair& pair, double t, const OuveParams& p,
                              const std::vector<double>& z) {
  check_same_size(z.size(), pair.x0.size(), "sample_forward");
  std::vector<double> mean = kernel_mean(pair, t, p);
  const double sd = kernel_std(t, p);
  for (std::size_t i = 0; i < mean.size(); ++i) mean[i] += sd * z[i];
  return {std::move(mean), t};
}

std::vector<double> analytic_score(const std::vector<double>& x_t, const ConditionPair& pair,
                                   double t, const OuveParams& p) {
  const double sd = kernel_std(t, p);
  if (!(sd > 0.0)) {
    throw ValidationError("analytic_score: sigma(t) vanishes at t=" + std::to_string(t));
  }
  std::vector<double> mean = kernel_mean(pair, t, p);
  check_same_size(x_t.size(), mean.size(), "analytic_score");
  const double inv_var = 1.0 / (sd * sd);
  std::vector<double> out(x_t.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = -(x_t[i] - mean[i]) * inv_var;
  return out;
}

DiffusionState simulate_forward(const ConditionPair& pair, const OuveParams& p, double horizon,
                                std::size_t n_steps, std::uint64_t seed) {
  if (n_steps < 100) throw ValidationError("simulate_forward: need at least 100 steps");
  check_same_size(pair.x0.size(), pair.y.size(), "simulate_forward");
  check_time(horizon, p, "simulate_forward");

  const double dt = horizon / static_cast<double>(n_steps);
  const double sqrt_dt = std::sqrt(dt);
  Rng rng(seed);
  std::vector<double> x = pair.x0;
  for (std::size_t step = 0; step < n_steps; ++step) {
    const double t = dt * static_cast<double>(step);
    const double g = diffusion_coeff(t, p);
    for (std::size_t i = 0; i < x.size(); ++i) {
      x[i] += p.gamma * (pair.y[i] - x[i]) * dt + g * sqrt_dt * rng.normal();
    }
  }
  return {std::move(x), horizon};
}

DiffusionState simulate_forward(const ConditionPair& pair, const OuveParams& p,
                                std::size_t n_steps, std::uint64_t seed) {
  return simulate_forward(pair, p, p.t_max, n_steps, seed);
}

}  // namespace specdiff
