#pragma once

#include <string>
#include <vector>

#include "entrimur/linalg.hpp"

namespace entrimur {

struct ProbabilityDistribution {
  std::vector<std::string> outcomes;
  std::vector<double> weights;  // nonnegative, sum 1 within 1e-10

  void validate(double tol = 1e-10) const;
};

ProbabilityDistribution uniform_distribution(const std::vector<std::string>& outcomes);
ProbabilityDistribution point_distribution(const std::vector<std::string>& outcomes, int at);

// POVM given by its discrete density: one PSD effect per outcome, summing to
// the identity. Zero effects are allowed.
struct Observable {
  int dim = 0;
  std::vector<std::string> outcomes;
  std::vector<Mat> effects;

  std::size_t size() const { return effects.size(); }
  void validate(double psd_tol = kPsdTol, double sum_tol = 1e-9) const;
  bool is_sharp(double tol = 1e-9) const;  // all effects are orthogonal projections
};

// POVM on a product outcome set. Effects are stored flat in row-major order
// over the factors (the last factor varies fastest). A bi-observable is the
// two-factor case.
struct MultiObservable {
  int dim = 0;
  std::vector<std::vector<std::string>> outcome_sets;
  std::vector<Mat> effects;

  int factors() const { return static_cast<int>(outcome_sets.size()); }
  std::size_t size() const { return effects.size(); }
  std::size_t flat_index(const std::vector<int>& idx) const;
  std::vector<int> unflatten(std::size_t flat) const;
  const Mat& effect(const std::vector<int>& idx) const { return effects[flat_index(idx)]; }
  Observable marginal(int factor) const;  // factor is 0-based
  void validate(double psd_tol = kPsdTol, double sum_tol = 1e-9) const;
};

using BiObservable = MultiObservable;

BiObservable make_biobservable(int dim, std::vector<std::string> outcomes1,
                               std::vector<std::string> outcomes2, std::vector<Mat> effects);

struct State {
  int dim = 0;
  Mat rho;

  void validate(double psd_tol = kPsdTol, double trace_tol = 1e-10) const;
  bool is_pure(double tol = 1e-9) const;  // Tr{rho^2} = 1 within tol
};

State pure_state(const Vec& psi);
State maximally_mixed(int dim);

// Outcome-indexed completely positive maps, trace preserving in total.
// Choi block for outcome x stores J_x applied to the matrix units of the
// input space: choi[x]((i,a),(j,b)) = J_x[E_ij](a,b) with flat row index
// i*dim_out + a. The adjoint is derived so that the duality
// Tr{J_x[rho] F} = Tr{rho J*_x[F]} holds identically.
struct Instrument {
  int dim_in = 0;
  int dim_out = 0;
  std::vector<std::string> outcomes;
  std::vector<Mat> choi;  // each (dim_in*dim_out) square, PSD

  std::size_t size() const { return choi.size(); }
  void validate(double psd_tol = kPsdTol, double tp_tol = 1e-9) const;
  Mat apply(int x, const Mat& rho) const;          // J_x[rho], acts on states
  Mat adjoint_apply(int x, const Mat& f) const;    // J*_x[F], acts on effects
  Mat input_reduction(int x) const;                // Tr_out of the Choi block
};

// Lueders-style single-Kraus instrument: J_x[rho] = K_x rho K_x* with
// K_x = sqrt(a(x)). Implements the observable a.
Instrument lueders_instrument(const Observable& a);

ProbabilityDistribution outcome_distribution(const Observable& o, const State& rho);

Observable trivial_observable(int dim, const ProbabilityDistribution& p);
Observable uniform_observable(int dim, const std::vector<std::string>& outcomes);

// lambda * o(x) + (1 - lambda) * o^{rho0}(x) * I. Throws if any resulting
// effect fails the PSD check (lambda may leave [0,1] only when positivity
// still holds).
Observable noisy_version(const Observable& o, double lambda, const State& rho0);

BiObservable sequential_measurement(const Instrument& j, const Observable& b);

// Instrument with J_x[rho] = sum_y Tr{rho m(x,y)} b(y)/Tr{b(y)} over outcomes
// with b(y) != 0. Requires b sharp and m's second outcome set equal to b's.
// Satisfies sequential_measurement(result, b) = m.
Instrument sharp_b_instrument(const BiObservable& m, const Observable& b);

}  // namespace entrimur
