#pragma once

#include <span>
#include <vector>

#include "wm/common.hpp"
#include "wm/linalg.hpp"
#include "wm/tensor.hpp"

namespace wm {

// Discrete belief: nonnegative entries summing to 1 within kProbTol.
struct Categorical {
  std::vector<double> probs;

  Categorical() = default;
  explicit Categorical(std::vector<double> p) : probs(std::move(p)) {}

  std::size_t size() const { return probs.size(); }
  double operator[](std::size_t i) const { return probs[i]; }

  static Categorical uniform(std::size_t n) {
    return Categorical(std::vector<double>(n, 1.0 / static_cast<double>(n)));
  }
  static Categorical delta(std::size_t n, std::size_t k) {
    std::vector<double> p(n, 0.0);
    p[k] = 1.0;
    return Categorical(std::move(p));
  }
};

bool is_valid(const Categorical& c, double tol = kProbTol);

// Dirichlet pseudo-counts over a conditional-probability tensor; axis 0 is
// the normalised axis (see Tensor).
struct DirichletCounts {
  Tensor counts;

  DirichletCounts() = default;
  explicit DirichletCounts(Tensor t) : counts(std::move(t)) {}
};

// Gaussian belief over a continuous state.
struct GaussianBelief {
  linalg::Vec<double> mean;
  linalg::Mat<double> cov;
};

// Symmetric within tol and eigenvalues >= -tol.
bool is_valid(const GaussianBelief& g, double tol = kProbTol);

Categorical normalize(std::span<const double> v);
double kl_categorical(const Categorical& p, const Categorical& q);
Categorical softmax(std::span<const double> logits, double precision = 1.0);
double entropy(const Categorical& p);

double digamma(double x);

// Entrywise E[ln theta] under the Dirichlet: digamma(count) minus digamma of
// the slice total.
Tensor expected_log_params(const DirichletCounts& counts);

// KL(Dir(post) || Dir(prior)) summed over every axis-0 slice.
double dirichlet_kl(const DirichletCounts& post, const DirichletCounts& prior);

// Expected KL(Dir(alpha + e_o) || Dir(alpha)) contribution of observing
// outcome `i0` in slice `slice`: the information gained about the slice's
// parameters from one draw.
double dirichlet_info_gain(const DirichletCounts& counts, std::size_t i0, std::size_t slice);

inline double clamped_log(double p) { return std::log(p < kLogFloor ? kLogFloor : p); }

}  // namespace wm
