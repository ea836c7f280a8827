#pragma once

#include <utility>
#include <vector>

#include "entrimur/quantum.hpp"
#include "entrimur/solver.hpp"

namespace entrimur {

// Finite field GF(p^n) with exhaustive operation tables. Elements are the
// integers 0..p^n-1 read as base-p coefficient vectors of polynomials over
// Z_p; the modulus is the lexicographically smallest monic irreducible of
// degree n (ordered by the integer encoding of the non-leading coefficients).
class FiniteField {
 public:
  FiniteField(int p, int n);

  int p() const { return p_; }
  int n() const { return n_; }
  int size() const { return d_; }
  // Coefficient list c0..cn of the modulus, cn = 1.
  const std::vector<int>& modulus() const { return modulus_; }

  int add(int a, int b) const { return add_[check(a)][check(b)]; }
  int mul(int a, int b) const { return mul_[check(a)][check(b)]; }
  int neg(int a) const { return neg_[check(a)]; }
  int sub(int a, int b) const { return add(a, neg(b)); }
  int inv(int a) const;
  int pow(int a, long long e) const;

 private:
  int check(int a) const;
  int p_ = 0, n_ = 0, d_ = 0;
  std::vector<int> modulus_;
  std::vector<std::vector<int>> add_, mul_;
  std::vector<int> neg_, inv_;
};

FiniteField field_construct(int p, int n);

// Field trace sum_{k<n} x^(p^k); always lands in the prime subfield, so the
// return value is an integer in 0..p-1.
int field_trace(const FiniteField& f, int x);

struct PhasePoint {
  int u1 = 0;
  int u2 = 0;
};

// Unitary with entries F(z,t) = exp(-2 pi i tr(z t)/p)/sqrt(d).
Mat fourier(const FiniteField& f);

// (Q, P): Q measures the standard basis, P the conjugate basis F* delta_y;
// mutually unbiased, P = F* Q F effectwise.
std::pair<Observable, Observable> mub_pair(const FiniteField& f);

// Phase-space translation (W(u) phi)(z) = exp(2 pi i tr(u2 (z-u1))/p) phi(z-u1).
Mat weyl(const FiniteField& f, PhasePoint u);

// Squeezing (D(a) phi)(z) = phi(a^-1 z), a != 0.
Mat squeeze(const FiniteField& f, int a);

// Covariant phase-space observable M(x,y) = W((x,y)) tau W((x,y))* / d.
BiObservable covariant_phase_space_obs(const FiniteField& f, const State& tau);

// Optimal approximate joint measurement of the MUB pair, with the noise
// parameter lambda0 of its marginals: marginal i equals the uniformly noisy
// version of Q (resp. P) at lambda0 = 1 - sqrt(d)/(2(sqrt(d)+1)).
std::pair<BiObservable, double> optimal_mub_measurement(const FiniteField& f);

struct MubSandwich {
  double lower = 0;
  double value = 0;
  double upper = 0;
};

// lower = log2(2 sqrt(d)/(sqrt(d)+1)) <= value <= upper = 2 log2(2(d+1)/(d+3)),
// where value is the maximal error sum of the optimal measurement over pure
// states, computed by the generic inner maximizer.
MubSandwich mub_bound_sandwich(const FiniteField& f, const SolverConfig& cfg = SolverConfig{});

}  // namespace entrimur
