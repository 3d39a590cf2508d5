#include "wm/beliefs.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace wm {

bool is_valid(const Categorical& c, double tol) {
  if (c.size() == 0) return false;
  double total = 0.0;
  for (double p : c.probs) {
    if (!(p >= 0.0) || !std::isfinite(p)) return false;
    total += p;
  }
  return std::abs(total - 1.0) <= tol;
}

bool is_valid(const GaussianBelief& g, double tol) {
  const auto& c = g.cov;
  if (c.rows() != c.cols() || c.rows() != g.mean.size()) return false;
  for (std::size_t i = 0; i < c.rows(); ++i)
    for (std::size_t j = i + 1; j < c.cols(); ++j)
      if (std::abs(c(i, j) - c(j, i)) > tol) return false;
  auto [evals, evecs] = linalg::eigen_sym(c);
  for (double lam : evals)
    if (lam < -tol) return false;
  return true;
}

Categorical normalize(std::span<const double> v) {
  if (v.empty()) throw ZeroMassError("normalize: empty vector");
  double total = 0.0;
  for (double x : v) {
    if (x < 0.0 || !std::isfinite(x))
      throw ZeroMassError("normalize: negative or non-finite entry");
    total += x;
  }
  if (!(total > 0.0)) throw ZeroMassError("normalize: zero total mass");
  std::vector<double> p(v.begin(), v.end());
  for (double& x : p) x /= total;
  return Categorical(std::move(p));
}

double kl_categorical(const Categorical& p, const Categorical& q) {
  if (p.size() != q.size())
    throw DimensionError("kl_categorical: dimension mismatch " +
                         std::to_string(p.size()) + " vs " + std::to_string(q.size()));
  double kl = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= 0.0) continue;  // 0 log 0 = 0
    if (q[i] <= 0.0)
      throw SupportMismatchError("kl_categorical: q has zero mass at index " +
                                 std::to_string(i) + " where p > 0");
    kl += p[i] * std::log(p[i] / q[i]);
  }
  return std::max(kl, 0.0);
}

Categorical softmax(std::span<const double> logits, double precision) {
  if (logits.empty()) throw DimensionError("softmax: empty logits");
  if (!(precision > 0.0)) throw NonFiniteError("softmax: precision must be > 0");
  double top = -std::numeric_limits<double>::infinity();
  for (double x : logits) {
    if (!std::isfinite(x)) throw NonFiniteError("softmax: non-finite logit");
    top = std::max(top, precision * x);
  }
  std::vector<double> p(logits.size());
  double total = 0.0;
  for (std::size_t i = 0; i < logits.size(); ++i) {
    p[i] = std::exp(precision * logits[i] - top);
    total += p[i];
  }
  for (double& x : p) x /= total;
  return Categorical(std::move(p));
}

double entropy(const Categorical& p) {
  double h = 0.0;
  for (double x : p.probs)
    if (x > 0.0) h -= x * std::log(x);
  return std::max(h, 0.0);
}

double digamma(double x) {
  // Recurrence up to x >= 6, then the standard asymptotic series.
  double result = 0.0;
  while (x < 6.0) {
    result -= 1.0 / x;
    x += 1.0;
  }
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  result += std::log(x) - 0.5 * inv -
            inv2 * (1.0 / 12.0 - inv2 * (1.0 / 120.0 - inv2 * (1.0 / 252.0 -
                    inv2 * (1.0 / 240.0 - inv2 * (1.0 / 132.0)))));
  return result;
}

Tensor expected_log_params(const DirichletCounts& counts) {
  const Tensor& c = counts.counts;
  if (c.rank() == 0) throw DimensionError("expected_log_params: empty tensor");
  Tensor out(c.shape());
  const std::size_t card = c.shape()[0];
  const std::size_t slices = c.slice_count();
  for (std::size_t s = 0; s < slices; ++s) {
    double total = 0.0;
    for (std::size_t i = 0; i < card; ++i) {
      const double a = c.at_slice(i, s);
      if (a < 0.0) throw ZeroSliceError("expected_log_params: negative count");
      total += a;
    }
    if (!(total > 0.0))
      throw ZeroSliceError("expected_log_params: zero-mass slice " + std::to_string(s));
    const double dg_total = digamma(total);
    for (std::size_t i = 0; i < card; ++i) {
      const double a = c.at_slice(i, s);
      // A zero count contributes a floor-log expectation rather than -inf.
      out.at_slice(i, s) = a > 0.0 ? digamma(a) - dg_total : std::log(kLogFloor);
    }
  }
  return out;
}

double dirichlet_kl(const DirichletCounts& post, const DirichletCounts& prior) {
  const Tensor& a = post.counts;
  const Tensor& b = prior.counts;
  if (!a.same_shape(b)) throw ShapeMismatchError("dirichlet_kl: shape mismatch");
  const std::size_t card = a.shape()[0];
  const std::size_t slices = a.slice_count();
  double kl = 0.0;
  for (std::size_t s = 0; s < slices; ++s) {
    double sa = 0.0, sb = 0.0;
    for (std::size_t i = 0; i < card; ++i) {
      sa += a.at_slice(i, s);
      sb += b.at_slice(i, s);
    }
    kl += std::lgamma(sa) - std::lgamma(sb);
    const double dg_sa = digamma(sa);
    for (std::size_t i = 0; i < card; ++i) {
      const double ai = a.at_slice(i, s), bi = b.at_slice(i, s);
      kl -= std::lgamma(ai) - std::lgamma(bi);
      kl += (ai - bi) * (digamma(ai) - dg_sa);
    }
  }
  return kl;
}

double dirichlet_info_gain(const DirichletCounts& counts, std::size_t i0, std::size_t slice) {
  const Tensor& c = counts.counts;
  const std::size_t card = c.shape()[0];
  double total = 0.0;
  for (std::size_t i = 0; i < card; ++i) total += c.at_slice(i, slice);
  const double a = c.at_slice(i0, slice);
  if (!(a > 0.0) || !(total > 0.0)) return 0.0;
  // KL(Dir(alpha + e_o) || Dir(alpha)) in closed form.
  return std::log(total) - std::log(a) + digamma(a + 1.0) - digamma(total + 1.0);
}

}  // namespace wm
