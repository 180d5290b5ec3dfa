#include "qrk/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <numeric>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "qrk/errors.hpp"
#include "qrk/linalg.hpp"

namespace qrk {

namespace {

constexpr double kSubsetCap = 1e6;

std::int64_t subset_rows(double q, double beta, std::int64_t m) {
  const double fraction = q - beta;
  if (!(fraction > 0.0)) {
    throw InvalidRegimeError("subset fraction q - beta must be positive");
  }
  const auto size = static_cast<std::int64_t>(std::floor(fraction * static_cast<double>(m)));
  if (size < 1) {
    throw InvalidRegimeError("floor((q - beta) * m) must be at least 1");
  }
  return size;
}

/// C(m, s), saturating at kSubsetCap + 1.
double subset_count(std::int64_t m, std::int64_t s) {
  double count = 1.0;
  for (std::int64_t i = 1; i <= s; ++i) {
    count *= static_cast<double>(m - s + i) / static_cast<double>(i);
    if (count > kSubsetCap) {
      return kSubsetCap + 1.0;
    }
  }
  return count;
}

// Smallest singular value of the row-subset matrix (compact convention: the
// least of its min(|S|, n) singular values), via the smaller of the two Gram
// matrices.
double subset_sigma_min(const Matrix& a, const std::vector<std::int64_t>& rows) {
  const Index n = a.cols();
  const auto s = static_cast<Index>(rows.size());
  Eigen::MatrixXd gram;
  if (s >= n) {
    gram = Eigen::MatrixXd::Zero(n, n);
    for (std::int64_t i : rows) {
      gram.noalias() += a.row(i).transpose() * a.row(i);
    }
  } else {
    gram.resize(s, s);
    for (Index r = 0; r < s; ++r) {
      for (Index c = 0; c <= r; ++c) {
        gram(r, c) = gram(c, r) = a.row(rows[static_cast<std::size_t>(r)])
                                      .dot(a.row(rows[static_cast<std::size_t>(c)]));
      }
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(gram, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw ConvergenceFailureError("subset sigma_min: eigen-solver did not converge");
  }
  return std::sqrt(std::max(0.0, solver.eigenvalues()(0)));
}

/// Visits every size-s subset of {0..m-1} in lexicographic order.
template <typename Visitor>
void for_each_subset(std::int64_t m, std::int64_t s, Visitor&& visit) {
  std::vector<std::int64_t> idx(static_cast<std::size_t>(s));
  std::iota(idx.begin(), idx.end(), std::int64_t{0});
  while (true) {
    visit(idx);
    std::int64_t i = s - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == m - s + i) {
      --i;
    }
    if (i < 0) {
      break;
    }
    ++idx[static_cast<std::size_t>(i)];
    for (std::int64_t j = i + 1; j < s; ++j) {
      idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
}

}  // namespace

double min_subset_sigma_exhaustive(const Matrix& a, double q, double beta) {
  const std::int64_t m = a.rows();
  const std::int64_t s = subset_rows(q, beta, m);
  if (subset_count(m, s) > kSubsetCap) {
    throw TooManySubsetsError("subset count exceeds the enumeration cap");
  }
  double min_sigma = std::numeric_limits<double>::infinity();
  for_each_subset(m, s, [&](const std::vector<std::int64_t>& rows) {
    min_sigma = std::min(min_sigma, subset_sigma_min(a, rows));
  });
  return min_sigma;
}

double min_subset_sigma_sampled(const Matrix& a, double q, double beta, std::int64_t num_subsets,
                                RandomStream& rng) {
  const std::int64_t m = a.rows();
  const std::int64_t s = subset_rows(q, beta, m);
  if (num_subsets < 1) {
    throw std::invalid_argument("num_subsets must be >= 1");
  }
  if (s < a.cols()) {
    std::cerr << "warning: subset size " << s << " is below the column count " << a.cols()
              << "; the conditioning parameter is not meaningful in this regime\n";
  }
  // When the draw budget covers the whole family, enumerate it instead.
  if (subset_count(m, s) <= static_cast<double>(num_subsets)) {
    return min_subset_sigma_exhaustive(a, q, beta);
  }
  SubsetSampler sampler(m);
  std::vector<std::int64_t> rows;
  double min_sigma = std::numeric_limits<double>::infinity();
  for (std::int64_t draw = 0; draw < num_subsets; ++draw) {
    sampler.sample(rng, s, rows);
    min_sigma = std::min(min_sigma, subset_sigma_min(a, rows));
  }
  return min_sigma;
}

double min_subset_sigma_witness(const Matrix& a, double q, double beta, int directions) {
  const std::int64_t m = a.rows();
  const std::int64_t s = subset_rows(q, beta, m);
  if (directions < 1) {
    throw std::invalid_argument("min_subset_sigma_witness: directions must be >= 1");
  }
  const Eigen::MatrixXd gram = a.transpose() * a;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(gram);
  if (solver.info() != Eigen::Success) {
    throw ConvergenceFailureError("min_subset_sigma_witness: eigen-solver did not converge");
  }
  const int probes = std::min<int>(directions, static_cast<int>(a.cols()));
  double min_sigma = std::numeric_limits<double>::infinity();
  std::vector<std::int64_t> order(static_cast<std::size_t>(m));
  std::vector<std::int64_t> rows(static_cast<std::size_t>(s));
  const auto pick_starving_rows = [&](const Eigen::VectorXd& direction) {
    const Eigen::VectorXd scores = (a * direction).array().square();
    std::iota(order.begin(), order.end(), std::int64_t{0});
    std::nth_element(order.begin(), order.begin() + (s - 1), order.end(),
                     [&scores](std::int64_t lhs, std::int64_t rhs) {
                       if (scores(lhs) != scores(rhs)) return scores(lhs) < scores(rhs);
                       return lhs < rhs;
                     });
    std::copy(order.begin(), order.begin() + s, rows.begin());
  };
  for (int d = 0; d < probes; ++d) {
    Eigen::VectorXd direction = solver.eigenvectors().col(d);
    if (s < a.cols()) {
      // wide subsets use the compact spectrum; no alternation direction
      pick_starving_rows(direction);
      min_sigma = std::min(min_sigma, subset_sigma_min(a, rows));
      continue;
    }
    double best = std::numeric_limits<double>::infinity();
    // alternate subset <-> weakest direction of that subset; each step can
    // only lower the value, so stop at the first non-improvement
    for (int sweep = 0; sweep < 16; ++sweep) {
      pick_starving_rows(direction);
      Eigen::MatrixXd sub_gram = Eigen::MatrixXd::Zero(a.cols(), a.cols());
      for (std::int64_t i : rows) {
        sub_gram.noalias() += a.row(i).transpose() * a.row(i);
      }
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> sub_solver(sub_gram);
      if (sub_solver.info() != Eigen::Success) {
        throw ConvergenceFailureError("min_subset_sigma_witness: eigen-solver did not converge");
      }
      const double value = std::sqrt(std::max(0.0, sub_solver.eigenvalues()(0)));
      if (value >= best * (1.0 - 1e-10)) {
        best = std::min(best, value);
        break;
      }
      best = value;
      direction = sub_solver.eigenvectors().col(0);
    }
    min_sigma = std::min(min_sigma, best);
  }
  return min_sigma;
}

RateParams rate_params(double sigma_max, double sigma_subset_min, double q, double beta,
                       std::int64_t m, Algorithm algorithm) {
  if (m < 1) {
    throw std::invalid_argument("rate_params: m must be >= 1");
  }
  if (beta < 0.0 || !(beta < q && q < 1.0 - beta)) {
    throw InvalidRegimeError("rate_params: requires 0 <= beta < q < 1 - beta");
  }
  if (sigma_max < 0.0 || sigma_subset_min < 0.0) {
    throw std::invalid_argument("rate_params: singular values must be >= 0");
  }

  const double md = static_cast<double>(m);
  const double gap = 1.0 - q - beta;

  const double decay_term = sigma_subset_min * sigma_subset_min / (q * md) * ((q - beta) / q);
  const double corruption_term =
      sigma_max * sigma_max / (q * md) *
      (2.0 * std::sqrt(beta * (1.0 - beta)) / gap + beta * (1.0 - beta) / (gap * gap));
  const double cross_term =
      sigma_max / (q * md) *
      (2.0 * std::sqrt(beta * md) / (md * gap) +
       2.0 * beta * std::sqrt(md * (1.0 - beta)) / (md * gap * gap));

  RateParams rate;
  rate.q = q;
  rate.beta = beta;
  rate.m = m;
  rate.sigma_max = sigma_max;
  rate.sigma_subset_min = sigma_subset_min;
  rate.p = algorithm == Algorithm::qrk1 ? q : 1.0;
  rate.varphi = decay_term - corruption_term - cross_term;
  rate.zeta = cross_term + beta / (q * md * md * gap * gap);
  return rate;
}

HorizonAccumulator::HorizonAccumulator(double p, double varphi, double zeta)
    : p_(p), varphi_(varphi), zeta_(zeta) {}

double HorizonAccumulator::update(double noisediff, double noise_l1_sq) {
  if (noisediff < 0.0 || noise_l1_sq < 0.0) {
    throw std::invalid_argument("horizon contributions must be >= 0");
  }
  value_ = (1.0 - p_ * varphi_) * value_ + (noisediff + zeta_ * noise_l1_sq);
  history_.emplace_back(noisediff, noise_l1_sq);
  return value_;
}

double rk_noisy_bound(std::int64_t k, double err0_sq, std::int64_t m, double frob_sq,
                      double sigma_min, double mu, double sigma) {
  if (!(sigma_min > 0.0) || !(sigma_min * sigma_min <= frob_sq)) {
    throw std::invalid_argument("rk_noisy_bound: requires 0 < sigma_min^2 <= frob_sq");
  }
  const double phi = 1.0 - sigma_min * sigma_min / frob_sq;
  const double decay = std::pow(phi, static_cast<double>(k + 1));
  const double noise_power = sigma * sigma + mu * mu;
  if (noise_power == 0.0) {
    return decay * err0_sq;
  }
  const double plateau = static_cast<double>(m) / frob_sq * noise_power;
  return decay * err0_sq + (1.0 - decay) / (1.0 - phi) * plateau;
}

double qrk_error_bound(std::int64_t k, double err0_sq, const RateParams& rate, double horizon_k) {
  if (!rate.assumption_holds()) {
    throw AssumptionViolatedError("qrk_error_bound: rate parameter is not positive");
  }
  const double decay = std::pow(1.0 - rate.p * rate.varphi, static_cast<double>(k + 1));
  return decay * err0_sq + rate.p * horizon_k;
}

double noise_model_bound(NoiseBoundKind kind, std::int64_t k, double err0_sq,
                         const RateParams& rate, const NoiseBoundParams& params) {
  if (!rate.assumption_holds()) {
    throw AssumptionViolatedError("noise_model_bound: rate parameter is not positive");
  }
  const double md = static_cast<double>(rate.m);
  const double decay = std::pow(1.0 - rate.p * rate.varphi, static_cast<double>(k + 1));
  const double geometric_sum = (1.0 - decay) / rate.varphi;
  switch (kind) {
    case NoiseBoundKind::bounded: {
      const double amplification = 1.0 + rate.zeta * md * md;
      return decay * err0_sq + amplification * params.n_max * params.n_max * geometric_sum;
    }
    case NoiseBoundKind::moments: {
      const double gamma = params.mu * params.mu + params.sigma * params.sigma +
                           rate.zeta * (md * md * params.mu_abs * params.mu_abs +
                                        md * params.sigma_abs * params.sigma_abs);
      return decay * err0_sq + geometric_sum * gamma;
    }
    case NoiseBoundKind::gaussian: {
      NoiseBoundParams folded;
      folded.mu = 0.0;
      folded.sigma = params.sigma;
      folded.mu_abs = params.sigma * std::sqrt(2.0 / M_PI);
      folded.sigma_abs = params.sigma * std::sqrt(1.0 - 2.0 / M_PI);
      return noise_model_bound(NoiseBoundKind::moments, k, err0_sq, rate, folded);
    }
  }
  throw std::invalid_argument("noise_model_bound: unknown kind");
}

double detection_probability(std::int64_t k, double err0_sq, const RateParams& rate, double c_min,
                             double n_max, double margin) {
  if (!rate.assumption_holds()) {
    throw AssumptionViolatedError("detection_probability: rate parameter is not positive");
  }
  if (!(c_min > 0.0)) {
    throw std::invalid_argument("detection_probability: c_min must be positive");
  }
  const double decay = std::pow(1.0 - rate.p * rate.varphi, static_cast<double>(k));
  const double miss_term = 4.0 * decay * err0_sq / (c_min * c_min);
  double probability = 0.0;
  if (n_max == 0.0) {
    probability = 1.0 - miss_term;
  } else {
    if (!(margin > 1.0)) {
      throw std::invalid_argument("detection_probability: margin must exceed 1");
    }
    const double md = static_cast<double>(rate.m);
    const double noise_floor = (1.0 + rate.zeta * md * md) * n_max * n_max / rate.varphi;
    if (!(noise_floor <= c_min * c_min / (4.0 * margin))) {
      throw MarginConditionError("detection_probability: noise floor exceeds c_min^2 / (4 margin)");
    }
    probability = (margin - 1.0) / margin - miss_term;
  }
  return std::clamp(probability, 0.0, 1.0);
}

double residual_quantile_bound(double v_err_norm, double noise_l1, std::int64_t m, double q,
                               double beta, double sigma_max) {
  const double gap = 1.0 - q - beta;
  if (!(gap > 0.0) || !(q > 0.0)) {
    throw InvalidRegimeError("residual_quantile_bound: requires 0 < q < 1 - beta");
  }
  const double md = static_cast<double>(m);
  return (std::sqrt(md * (1.0 - beta)) * sigma_max * v_err_norm + noise_l1) / (md * gap);
}

}  // namespace qrk
