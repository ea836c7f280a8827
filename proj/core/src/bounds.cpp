#include "entrimur/bounds.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>

#include "entrimur/entropy.hpp"
#include "entrimur/rng.hpp"

namespace entrimur {

namespace {

constexpr double kLn2 = 0.693147180559945309;

// Negated Shannon entropies of the listed outcome distributions; convex in
// the state, so the sphere maximizer applies.
SphereObjective neg_entropy_objective(const std::vector<Observable>& obs) {
  auto targets = std::make_shared<std::vector<Observable>>(obs);
  SphereObjective o;
  o.value = [targets](const Vec& psi) {
    double v = 0;
    for (const Observable& a : *targets) {
      for (const Mat& e : a.effects) {
        double p = (psi.adjoint() * e * psi)(0, 0).real();
        if (p > 1e-12) v += p * std::log2(p);
      }
    }
    return v;
  };
  o.grad = [targets](const Vec& psi) {
    Mat g = Mat::Zero(psi.size(), psi.size());
    for (const Observable& a : *targets) {
      for (const Mat& e : a.effects) {
        double p = (psi.adjoint() * e * psi)(0, 0).real();
        if (p > 1e-12) g += (std::log2(p) + 1.0 / kLn2) * e;
      }
    }
    return g;
  };
  return o;
}

double max_neg_entropy(const std::vector<Observable>& obs, const SolverConfig& cfg) {
  int d = obs.front().dim;
  std::vector<Vec> seeds;
  for (const Observable& a : obs) {
    for (const Mat& e : a.effects) {
      Eigen::SelfAdjointEigenSolver<Mat> es((e + e.adjoint()) / 2.0);
      for (Eigen::Index k = 0; k < es.eigenvectors().cols(); ++k) {
        seeds.push_back(es.eigenvectors().col(k));
      }
    }
  }
  Rng rng(cfg.seed, 0);
  for (int r = 0; r < cfg.restarts; ++r) seeds.push_back(rng.random_unit(d));
  return maximize_on_sphere(neg_entropy_objective(obs), d, seeds, cfg.inner_iters).first;
}

}  // namespace

BiObservable cloning_biobservable(const Observable& a, const Observable& b) {
  a.validate();
  b.validate();
  if (a.dim != b.dim) {
    throw std::invalid_argument("cloning_biobservable: dimension mismatch");
  }
  int d = a.dim;
  Mat s2 = symmetric_projector(d, 2);
  double scale = 2.0 / (d + 1);
  std::vector<Mat> effects;
  for (const Mat& ea : a.effects) {
    for (const Mat& eb : b.effects) {
      Mat z = s2 * tensor(ea, eb) * s2;
      effects.push_back(scale * partial_trace(z, d, d, 2));
    }
  }
  return make_biobservable(d, a.outcomes, b.outcomes, effects);
}

MultiObservable cloning_multiobservable(const std::vector<Observable>& targets) {
  if (targets.empty()) {
    throw std::invalid_argument("cloning_multiobservable: need at least one observable");
  }
  int d = targets.front().dim;
  int n = static_cast<int>(targets.size());
  std::vector<std::size_t> sizes;
  for (const Observable& a : targets) {
    a.validate();
    if (a.dim != d) throw std::invalid_argument("cloning_multiobservable: dimension mismatch");
    sizes.push_back(a.size());
  }
  Mat sn = symmetric_projector(d, n);
  // scale = d! n! / (d+n-1)!
  double scale = 1;
  for (int k = 1; k <= n; ++k) scale *= k;
  for (int k = d + 1; k <= d + n - 1; ++k) scale /= k;
  int rest_dim = 1;
  for (int k = 0; k < n - 1; ++k) rest_dim *= d;

  MultiObservable m;
  m.dim = d;
  for (const Observable& a : targets) m.outcome_sets.push_back(a.outcomes);
  std::size_t total = 1;
  for (std::size_t s : sizes) total *= s;
  for (std::size_t t = 0; t < total; ++t) {
    std::size_t rest = t;
    Mat z = Mat::Identity(1, 1);
    for (int i = n - 1; i >= 0; --i) {
      std::size_t xi = rest % sizes[static_cast<std::size_t>(i)];
      rest /= sizes[static_cast<std::size_t>(i)];
      z = tensor(targets[static_cast<std::size_t>(i)].effects[xi], z);
    }
    m.effects.push_back(scale * partial_trace(sn * z * sn, d, rest_dim, 2));
  }
  return m;
}

double cloning_upper_bound(const std::vector<Observable>& targets) {
  if (targets.empty()) {
    throw std::invalid_argument("cloning_upper_bound: need at least one observable");
  }
  int d = targets.front().dim;
  double n = static_cast<double>(targets.size());
  double total = 0;
  for (const Observable& a : targets) {
    a.validate();
    if (a.dim != d) throw std::invalid_argument("cloning_upper_bound: dimension mismatch");
    double min_tr = kInf;
    for (const Mat& e : a.effects) min_tr = std::min(min_tr, e.trace().real());
    total += std::log2(n * (d + 1) / (d + n + (n - 1) * min_tr));
  }
  return total;
}

double min_shannon_entropy(const Observable& a, const SolverConfig& cfg) {
  a.validate();
  return -max_neg_entropy({a}, cfg);
}

double prep_coefficient(const Observable& a, const Observable& b, const SolverConfig& cfg) {
  a.validate();
  b.validate();
  if (a.dim != b.dim) throw std::invalid_argument("prep_coefficient: dimension mismatch");
  return -max_neg_entropy({a, b}, cfg);
}

double kp_lower_bound(const Observable& a, const Observable& b) {
  a.validate();
  b.validate();
  if (a.dim != b.dim) throw std::invalid_argument("kp_lower_bound: dimension mismatch");
  double worst = 0;
  for (const Mat& ea : a.effects) {
    Mat ra = mat_sqrt(ea);
    for (const Mat& eb : b.effects) {
      double nrm = operator_norm(ra * mat_sqrt(eb));
      worst = std::max(worst, nrm * nrm);
    }
  }
  return -std::log2(worst);
}

bool tradeoff_check(const Observable& a, const Observable& b, double icomp_upper, double prep) {
  double rhs =
      std::log2(static_cast<double>(a.size())) + std::log2(static_cast<double>(b.size()));
  return icomp_upper + prep <= rhs + 1e-6;
}

BoundReport bound_report(const std::vector<Observable>& targets, const SolverConfig& cfg) {
  if (targets.size() < 2) {
    throw std::invalid_argument("bound_report: need at least two observables");
  }
  BoundReport rep;
  rep.cloning2 = cloning_upper_bound({targets[0], targets[1]});
  rep.cloningN = cloning_upper_bound(targets);
  rep.shannon_cap = kInf;
  rep.tradeoff_rhs = 0;
  for (const Observable& a : targets) {
    double cap = std::log2(static_cast<double>(a.size())) - min_shannon_entropy(a, cfg);
    rep.shannon_cap = std::min(rep.shannon_cap, cap);
    rep.tradeoff_rhs += std::log2(static_cast<double>(a.size()));
  }
  rep.kp_lower = kp_lower_bound(targets[0], targets[1]);
  rep.prep_coeff = prep_coefficient(targets[0], targets[1], cfg);
  return rep;
}

}  // namespace entrimur
