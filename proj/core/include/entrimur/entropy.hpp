#pragma once

#include "entrimur/quantum.hpp"

namespace entrimur {

// All entropic quantities are base 2. Extended reals are IEEE doubles with
// +infinity for the off-support branch.

// Probabilities at or below this threshold count as exactly zero for every
// support test.
inline constexpr double kEpsP = 1e-12;

// s(u, v) = u log2(u/v) for u, v > 0; 0 for u = 0; +inf for u > 0, v = 0.
// Arguments must lie in [0, 1] up to 1e-12 slack. Finite values are bounded
// below by -(log2 e)/e.
double s_func(double u, double v);

// sum_x s(p(x), q(x)); +inf iff supp p is not contained in supp q.
double rel_entropy(const ProbabilityDistribution& p, const ProbabilityDistribution& q);

double shannon(const ProbabilityDistribution& p);

// S(a^rho || m1^rho) + S(b^rho || m2^rho) where m1, m2 are the marginals of m.
double error_function(const Observable& a, const Observable& b, const BiObservable& m,
                      const State& rho);

// n-ary analogue against the marginals of a multi-observable.
double error_function_multi(const std::vector<Observable>& targets, const MultiObservable& m,
                            const State& rho);

// True iff ker m_[i](x) is contained in ker target_i(x) for every factor and
// outcome; equivalent to the divergence being finite. Kernel eigenvalue
// threshold 1e-9.
bool divergence_finiteness(const Observable& a, const Observable& b, const BiObservable& m);
bool divergence_finiteness_multi(const std::vector<Observable>& targets,
                                 const MultiObservable& m);

// max over p of S(p || lambda p + (1-lambda) q) = log2 1/(lambda + (1-lambda) min q).
// Requires lambda in (0, 1].
double max_rel_entropy_mixture(double lambda, const ProbabilityDistribution& q);

}  // namespace entrimur
