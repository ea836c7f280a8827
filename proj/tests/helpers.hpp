#pragma once

#include <entrimur/linalg.hpp>
#include <entrimur/quantum.hpp>
#include <entrimur/rng.hpp>
#include <entrimur/solver.hpp>

#include <cmath>
#include <string>
#include <vector>

namespace testutil {

using namespace entrimur;

inline std::vector<std::string> default_labels(int n) {
  std::vector<std::string> out;
  for (int i = 0; i < n; ++i) out.push_back(std::to_string(i));
  return out;
}

// Random POVM: conjugate random PSD blocks by the inverse square root of
// their sum so the effects add up to the identity.
inline Observable random_observable(Rng& rng, int dim, int n_out) {
  std::vector<Mat> raw(n_out);
  Mat sum = Mat::Zero(dim, dim);
  for (int x = 0; x < n_out; ++x) {
    Mat g(dim, dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) g(i, j) = cplx(rng.normal(), rng.normal());
    raw[x] = g * g.adjoint();
    sum += raw[x];
  }
  Mat corr = inv_sqrt(sum);
  Observable obs;
  obs.dim = dim;
  obs.outcomes = default_labels(n_out);
  for (int x = 0; x < n_out; ++x) obs.effects.push_back(corr * raw[x] * corr);
  obs.validate();
  return obs;
}

// Random sharp observable: rank-one projectors onto the columns of a Haar
// random unitary.
inline Observable random_sharp_observable(Rng& rng, int dim) {
  Mat u = rng.random_unitary(dim);
  Observable obs;
  obs.dim = dim;
  obs.outcomes = default_labels(dim);
  for (int x = 0; x < dim; ++x) {
    Vec col = u.col(x);
    obs.effects.push_back(col * col.adjoint());
  }
  obs.validate();
  return obs;
}

inline ProbabilityDistribution random_distribution(Rng& rng, int n) {
  ProbabilityDistribution p;
  p.outcomes = default_labels(n);
  p.weights.resize(n);
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    p.weights[i] = -std::log(rng.uniform() + 1e-300);
    total += p.weights[i];
  }
  for (double& w : p.weights) w /= total;
  return p;
}

// Random instrument with n_out outcomes: random PSD Choi blocks corrected to
// trace preservation by conjugating with kron(R^{-1/2}, I).
inline Instrument random_instrument(Rng& rng, int dim, int n_out) {
  Instrument ins;
  ins.dim_in = dim;
  ins.dim_out = dim;
  ins.outcomes = default_labels(n_out);
  std::vector<Mat> raw(n_out);
  for (int x = 0; x < n_out; ++x) {
    Mat g(dim * dim, dim * dim);
    for (int i = 0; i < dim * dim; ++i)
      for (int j = 0; j < dim * dim; ++j)
        g(i, j) = cplx(rng.normal(), rng.normal());
    raw[x] = g * g.adjoint();
  }
  Mat red = Mat::Zero(dim, dim);
  for (int x = 0; x < n_out; ++x)
    red += partial_trace(raw[x], dim, dim, 2);
  Mat corr = tensor(inv_sqrt(red), Mat::Identity(dim, dim));
  for (int x = 0; x < n_out; ++x) ins.choi.push_back(corr * raw[x] * corr);
  ins.validate();
  return ins;
}

// Exchange brackets must tighten monotonically: lower bounds never decrease,
// upper bounds never increase along the recorded rounds.
inline bool bracket_monotone(const Bracket& br) {
  for (size_t k = 1; k < br.trace.size(); ++k) {
    if (br.trace[k].lower < br.trace[k - 1].lower - 1e-12) return false;
    if (br.trace[k].upper > br.trace[k - 1].upper + 1e-12) return false;
  }
  if (!br.trace.empty()) {
    if (std::abs(br.trace.back().lower - br.lower) > 1e-12) return false;
    if (std::abs(br.trace.back().upper - br.upper) > 1e-12) return false;
  }
  return br.lower <= br.upper + 1e-12;
}

}  // namespace testutil
