#pragma once

#include <array>
#include <functional>
#include <utility>

#include "entrimur/quantum.hpp"
#include "entrimur/solver.hpp"

namespace entrimur {

// Pauli matrix, k in {1,2,3}.
Mat pauli(int k);

// Target geometry for a spin pair at angle alpha in [0, pi/2]. The unit
// vectors a and b live in the 1-2 plane and close the angle alpha; n and m
// are the normalized sum and difference directions.
struct SpinPairConfig {
  double alpha = 0;
  double a1 = 0;
  double a2 = 0;
  std::array<double, 3> a{};
  std::array<double, 3> b{};
  std::array<double, 3> n{};
  std::array<double, 3> m{};
};

SpinPairConfig spin_pair_config(double alpha);

// Two-outcome observable with effects (I +/- c.sigma)/2; sharp iff |c| = 1.
Observable spin_component(double c1, double c2, double c3 = 0.0);

// Equatorial qubit state (I + cos(phi) sigma1 + sin(phi) sigma2)/2.
State equatorial_state(double phi);

// Sharp targets along a and b.
std::pair<Observable, Observable> target_pair(double alpha);

// Parameters of the symmetric covariant family of joint measurements.
// Feasibility: sqrt(2)|c1+c2| - 1 <= gamma <= 1 - sqrt(2)|c1-c2|.
struct CovariantParams {
  double gamma = 0;
  double c1 = 0;
  double c2 = 0;
};

BiObservable covariant_biobservable(const CovariantParams& p);

// One-parameter optimal family: c1 = 1/sqrt(2), c2 = gamma/sqrt(2).
BiObservable m_gamma(double gamma);

// Closed-form error sum for m_gamma(gamma) at the equatorial state of
// angle phi, against the targets at angle alpha.
double covariant_error_at(double alpha, double gamma, double phi);

// Maximum of the error sum over phi: 720-point grid with golden-section
// polish in the bracketing cell. Returns (phi*, value).
std::pair<double, double> max_error_over_phi(double alpha, double gamma, int grid = 720);

struct AnalyticLowerBound {
  double lb = 0;
  double gamma = 0;
  double ell = 0;
};

// Closed-form lower bound on the incompatibility degree of the spin pair,
// with the minimizing family parameter gamma and likelihood parameter ell.
AnalyticLowerBound analytic_lower_bound(double alpha);

struct QubitMinimaxResult {
  double value = 0;
  double gamma_star = 0;
  double phi_star = 0;
};

// Exact two-parameter minimax over the covariant family: min over gamma in
// [-1,1] (201-point grid + golden section) of max over phi (grid + golden
// section). Valid because covariant averaging preserves the max error.
QubitMinimaxResult qubit_minimax(double alpha, const SolverConfig& cfg = SolverConfig{});

struct ComparisonPoint {
  double gamma = 0;
  double value = 0;
  double phi = 0;
};

// The four columns of the qubit comparison table at angle alpha.
struct ComparisonReport {
  ComparisonPoint blw;    // gamma = sqrt(2) a2
  ComparisonPoint nv;     // gamma = a2 / a1
  ComparisonPoint icomp;  // minimax optimum
  double lb_gamma = 0;
  double lb_value = 0;
};

ComparisonReport comparison_points(double alpha);

// Three orthogonal spin components: the noisy joint observable m0, its
// extremal version m1 with four rank-one effects, the rotation-covariant
// family, and the incompatibility degree of the triple.
struct ThreeSpinReport {
  Observable x, y, z;
  MultiObservable m0, m1;
  std::function<MultiObservable(double)> family;  // |c| <= 1/sqrt(3)
  double c_star = 0;
  double icomp = 0;
};

ThreeSpinReport three_spin_suite();

}  // namespace entrimur
