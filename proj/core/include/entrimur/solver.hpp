#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "entrimur/entropy.hpp"
#include "entrimur/quantum.hpp"

namespace entrimur {

struct SolverConfig {
  int restarts = 32;
  double inner_tol = 1e-7;
  double outer_tol = 1e-4;
  int max_exchange_rounds = 200;
  std::uint64_t seed = 0xC0FFEE;
  // Step-size policy for the restricted convex solves. Only "backtracking"
  // is implemented: eta grows by 1.3 on accepted steps and halves on
  // rejected ones, with a 1e-10 floor.
  std::string step_schedule = "backtracking";
  int inner_iters = 200;       // ascent iterations per inner-maximizer seed
  int restricted_iters = 300;  // mirror-descent iterations per smoothing level
  int dual_steps = 300;        // dual ascent steps for the certificate
  std::string trace_path;      // when set, appends one JSON line per round
};

struct RoundTrace {
  int round = 0;
  double lower = 0.0;
  double upper = 0.0;
  int atlas_size = 0;
};

// Certified enclosure of a minimax value. `lower` comes from a convexity plus
// duality certificate, `upper` from evaluating the witness measurement with
// the inner maximizer; lower <= upper + 1e-12 always holds.
struct Bracket {
  double lower = 0.0;
  double upper = kInf;
  MultiObservable witness_measurement;
  std::vector<State> witness_states;
  int rounds_used = 0;
  bool converged = false;  // gap closed below outer_tol before the round limit
  std::vector<RoundTrace> trace;
};

// Divergence of m from (a, b): sup over states of the error function,
// attained at pure states. Returns the best value found together with the
// maximizing state. If the finiteness test fails, returns +inf with a
// violating kernel state as witness.
std::pair<double, State> max_over_states(const Observable& a, const Observable& b,
                                         const BiObservable& m, const SolverConfig& cfg = {});
std::pair<double, State> max_over_states_multi(const std::vector<Observable>& targets,
                                               const MultiObservable& m,
                                               const SolverConfig& cfg = {});

// Incompatibility degree: exchange loop over bi-observables.
Bracket icomp(const Observable& a, const Observable& b, const SolverConfig& cfg = {});

// Error/disturbance coefficient: exchange loop over instruments implementing
// the first measurement, with the second observable fixed; the witness is the
// induced sequential bi-observable.
Bracket iad(const Observable& a, const Observable& b, const SolverConfig& cfg = {});

// n-ary incompatibility degree over multi-observables.
Bracket icomp_multi(const std::vector<Observable>& targets, const SolverConfig& cfg = {});

// Generic maximizer of a convex-in-rho objective over the unit sphere of pure
// state vectors. `value` evaluates psi; `grad` returns the Hermitian operator
// G with d/dt value(psi + t dpsi) = 2 Re <dpsi| G |psi>. Shared by the
// divergence evaluator and the preparation-coefficient search.
struct SphereObjective {
  std::function<double(const Vec&)> value;
  std::function<Mat(const Vec&)> grad;
};

std::pair<double, Vec> maximize_on_sphere(const SphereObjective& obj, int dim,
                                          const std::vector<Vec>& seeds, int iters);

}  // namespace entrimur
