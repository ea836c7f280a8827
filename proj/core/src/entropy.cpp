#include "entrimur/entropy.hpp"

#include <cmath>
#include <stdexcept>

namespace entrimur {

double s_func(double u, double v) {
  if (u < -1e-12 || u > 1 + 1e-12 || v < -1e-12 || v > 1 + 1e-12) {
    throw std::invalid_argument("s_func: arguments outside [0, 1]");
  }
  if (u <= kEpsP) return 0.0;
  if (v <= kEpsP) return kInf;
  return u * std::log2(u / v);
}

double rel_entropy(const ProbabilityDistribution& p, const ProbabilityDistribution& q) {
  if (p.outcomes != q.outcomes) {
    throw std::invalid_argument("rel_entropy: mismatched outcome sets");
  }
  double sum = 0;
  for (std::size_t x = 0; x < p.weights.size(); ++x) {
    double term = s_func(p.weights[x], q.weights[x]);
    if (term == kInf) return kInf;
    sum += term;
  }
  return sum;
}

double shannon(const ProbabilityDistribution& p) {
  double h = 0;
  for (double w : p.weights) {
    if (w > kEpsP) h -= w * std::log2(w);
  }
  return h;
}

double error_function(const Observable& a, const Observable& b, const BiObservable& m,
                      const State& rho) {
  if (m.factors() != 2) throw std::invalid_argument("error_function: need a bi-observable");
  return error_function_multi({a, b}, m, rho);
}

double error_function_multi(const std::vector<Observable>& targets, const MultiObservable& m,
                            const State& rho) {
  if (static_cast<int>(targets.size()) != m.factors()) {
    throw std::invalid_argument("error_function: target count does not match factors");
  }
  double sum = 0;
  for (int i = 0; i < m.factors(); ++i) {
    const Observable& t = targets[static_cast<std::size_t>(i)];
    if (t.outcomes != m.outcome_sets[static_cast<std::size_t>(i)]) {
      throw std::invalid_argument("error_function: outcome set mismatch on a factor");
    }
    if (t.dim != m.dim || t.dim != rho.dim) {
      throw std::invalid_argument("error_function: dimension mismatch");
    }
    double term = rel_entropy(outcome_distribution(t, rho),
                              outcome_distribution(m.marginal(i), rho));
    if (term == kInf) return kInf;
    sum += term;
  }
  return sum;
}

namespace {

constexpr double kKernelTol = 1e-9;

bool kernel_contained(const Mat& outer, const Mat& inner) {
  // ker(outer) subset of ker(inner): every eigenvector of `outer` with
  // eigenvalue below the kernel threshold must be annihilated by `inner`.
  Eigen::SelfAdjointEigenSolver<Mat> es((outer + outer.adjoint()) / 2.0);
  for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
    if (es.eigenvalues()(k) < kKernelTol) {
      Vec v = es.eigenvectors().col(k);
      if (std::abs((v.adjoint() * inner * v)(0, 0)) > kKernelTol) return false;
    }
  }
  return true;
}

}  // namespace

bool divergence_finiteness_multi(const std::vector<Observable>& targets,
                                 const MultiObservable& m) {
  for (int i = 0; i < m.factors(); ++i) {
    Observable mi = m.marginal(i);
    const Observable& t = targets[static_cast<std::size_t>(i)];
    for (std::size_t x = 0; x < t.size(); ++x) {
      if (!kernel_contained(mi.effects[x], t.effects[x])) return false;
    }
  }
  return true;
}

bool divergence_finiteness(const Observable& a, const Observable& b, const BiObservable& m) {
  return divergence_finiteness_multi({a, b}, m);
}

double max_rel_entropy_mixture(double lambda, const ProbabilityDistribution& q) {
  if (lambda <= 0 || lambda > 1) {
    throw std::invalid_argument("max_rel_entropy_mixture: lambda must be in (0, 1]");
  }
  double qmin = 1.0;
  for (double w : q.weights) qmin = std::min(qmin, w);
  return std::log2(1.0 / (lambda + (1.0 - lambda) * qmin));
}

}  // namespace entrimur
