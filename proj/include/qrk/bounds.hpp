#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "qrk/random.hpp"
#include "qrk/solvers.hpp"
#include "qrk/types.hpp"

namespace qrk {

/// Scalars controlling the quantile solvers' expected geometric decay and
/// noise amplification. `varphi` must be positive for any of the bound
/// curves to be meaningful (assumption_holds()).
struct RateParams {
  double q = 0.0;
  double beta = 0.0;
  std::int64_t m = 0;
  double sigma_max = 0.0;
  double sigma_subset_min = 0.0;  // estimate of the row-subset minimum singular value
  double p = 1.0;                 // probability the picked row is admissible: q for qrk1, 1 for qrk2
  double varphi = 0.0;            // per-iteration rate parameter
  double zeta = 0.0;              // noise-amplification parameter

  bool assumption_holds() const { return varphi > 0.0; }
};

/// Exact minimum over all row subsets S with |S| = floor((q-beta)*m) of the
/// smallest singular value of A_S. Throws TooManySubsetsError when the
/// subset count exceeds 10^6.
double min_subset_sigma_exhaustive(const Matrix& a, double q, double beta);

/// Minimum of sigma_min(A_S) over `num_subsets` uniformly drawn subsets; an
/// upper estimate of the exhaustive value. When `num_subsets` covers every
/// subset the enumeration is exhaustive and the values coincide.
double min_subset_sigma_sampled(const Matrix& a, double q, double beta, std::int64_t num_subsets,
                                RandomStream& rng);

/// Deterministic witness subsets that starve the matrix's weakest singular
/// directions: for each of the bottom `directions` right singular vectors v,
/// keep the subset-size rows with the smallest (a_i . v)^2 and take the least
/// sigma_min found. Like any subset value this upper-bounds the exhaustive
/// minimum, but it searches adversarially, so feeding it to rate_params can
/// certify that the rate parameter is NOT positive (the rate is increasing in
/// this input). Random sampling cannot provide such a certificate.
double min_subset_sigma_witness(const Matrix& a, double q, double beta, int directions = 3);

/// Rate and noise-amplification parameters for the given conditioning inputs.
/// Requires beta < q < 1 - beta (InvalidRegimeError otherwise).
RateParams rate_params(double sigma_max, double sigma_subset_min, double q, double beta,
                       std::int64_t m, Algorithm algorithm);

/// Running value of the convergence horizon
///   H_k = sum_{j=0}^{k} (1 - p*varphi)^{k-j} * (noisediff_j + zeta*l1(n_j)^2),
/// maintained by the equivalent one-step recursion.
class HorizonAccumulator {
 public:
  HorizonAccumulator(double p, double varphi, double zeta);

  /// Folds in iteration k's contribution and returns H_k.
  double update(double noisediff, double noise_l1_sq);

  double value() const { return value_; }
  std::int64_t count() const { return static_cast<std::int64_t>(history_.size()); }
  double p() const { return p_; }
  double varphi() const { return varphi_; }
  double zeta() const { return zeta_; }

  /// (noisediff_j, l1(n_j)^2) pairs, oldest first.
  const std::vector<std::pair<double, double>>& history() const { return history_; }

 private:
  double p_;
  double varphi_;
  double zeta_;
  double value_ = 0.0;
  std::vector<std::pair<double, double>> history_;
};

/// Expected squared error of plain randomized projections after k+1 steps on
/// a system with i.i.d. per-entry noise of mean mu and deviation sigma.
double rk_noisy_bound(std::int64_t k, double err0_sq, std::int64_t m, double frob_sq,
                      double sigma_min, double mu, double sigma);

/// Quantile-solver error bound after k+1 steps: geometric decay plus the
/// accumulated horizon. Throws AssumptionViolatedError when varphi <= 0.
double qrk_error_bound(std::int64_t k, double err0_sq, const RateParams& rate, double horizon_k);

/// Specializations of the horizon bound to concrete noise models.
enum class NoiseBoundKind { bounded, moments, gaussian };

struct NoiseBoundParams {
  double n_max = 0.0;      // bounded: |entry| <= n_max
  double mu = 0.0;         // moments: entry mean
  double sigma = 0.0;      // moments/gaussian: entry deviation
  double mu_abs = 0.0;     // moments: mean of |entry|
  double sigma_abs = 0.0;  // moments: deviation of |entry|
};

double noise_model_bound(NoiseBoundKind kind, std::int64_t k, double err0_sq,
                         const RateParams& rate, const NoiseBoundParams& params);

/// Lower bound on the probability that, at iteration k, the corrupted rows
/// are exactly the floor(beta*m) largest residual magnitudes. Clamped to
/// [0, 1]. n_max = 0 uses the noiseless form (no margin term); otherwise the
/// margin condition (1 + zeta m^2) n_max^2 / varphi <= c_min^2 / (4 M) is
/// checked and MarginConditionError thrown when it fails.
double detection_probability(std::int64_t k, double err0_sq, const RateParams& rate, double c_min,
                             double n_max, double margin);

/// Upper bound on the q-quantile of the perturbed residual magnitudes at an
/// arbitrary point v with error norm `v_err_norm`:
///   (sqrt(m(1-beta)) * sigma_max * v_err_norm + noise_l1) / (m(1-q-beta)).
double residual_quantile_bound(double v_err_norm, double noise_l1, std::int64_t m, double q,
                               double beta, double sigma_max);

}  // namespace qrk
