#pragma once

#include <vector>

#include "entrimur/quantum.hpp"
#include "entrimur/solver.hpp"

namespace entrimur {

// Joint measurement obtained from the optimal symmetric 2-cloning channel:
// M(x,y) = Phi*(a(x) (x) b(y)). Its marginals are the uniformly noisy
// versions of a and b at lambda_cl = (d+2)/(2(d+1)).
BiObservable cloning_biobservable(const Observable& a, const Observable& b);

// n-ary analogue via the optimal symmetric n-cloning channel: marginal i is
// the uniformly noisy version of targets[i] at lambda = (d+n)/(n(d+1)).
MultiObservable cloning_multiobservable(const std::vector<Observable>& targets);

// Closed-form incompatibility upper bound from the n-cloning channel, n =
// targets.size(): sum_i log2[n(d+1)/(d+n+(n-1) min_x Tr a_i(x))]. At most
// n log2 n.
double cloning_upper_bound(const std::vector<Observable>& targets);

// Minimum Shannon entropy of the outcome distribution over pure states,
// found by the shared sphere maximizer on the negated objective.
double min_shannon_entropy(const Observable& a, const SolverConfig& cfg = SolverConfig{});

// Preparation uncertainty coefficient: min over pure states of
// H(a^rho) + H(b^rho). Descent with restarts; reports the best value found.
double prep_coefficient(const Observable& a, const Observable& b,
                        const SolverConfig& cfg = SolverConfig{});

// Kraus-Partovi style lower bound on the preparation coefficient:
// -log2 max_{x,y} ||a(x)^{1/2} b(y)^{1/2}||^2 in operator norm.
double kp_lower_bound(const Observable& a, const Observable& b);

// Tradeoff inequality: icomp_upper + prep <= log2|X| + log2|Y| + 1e-6.
bool tradeoff_check(const Observable& a, const Observable& b, double icomp_upper, double prep);

struct BoundReport {
  double cloning2 = 0;      // 2-cloning bound for the first two targets
  double cloningN = 0;      // n-cloning bound for the full list
  double shannon_cap = 0;   // best single-factor trivial-measurement cap
  double kp_lower = 0;      // KP preparation lower bound (first two)
  double prep_coeff = 0;    // preparation coefficient (first two)
  double tradeoff_rhs = 0;  // sum of log2 outcome counts
};

BoundReport bound_report(const std::vector<Observable>& targets,
                         const SolverConfig& cfg = SolverConfig{});

}  // namespace entrimur
