#include "entrimur/spin.hpp"

#include <cmath>
#include <stdexcept>

#include "entrimur/entropy.hpp"

namespace entrimur {

namespace {

constexpr double kPi = 3.14159265358979323846;
const double kSqrt2 = std::sqrt(2.0);

void check_alpha(double alpha) {
  if (!(alpha >= -1e-12 && alpha <= kPi / 2 + 1e-12)) {
    throw std::invalid_argument("spin: alpha must lie in [0, pi/2]");
  }
}

// s(u, v) with the public extended-real semantics, scalar case.
double s_term(double u, double v) {
  if (u <= 1e-12) return 0.0;
  if (v <= 1e-12) return kInf;
  return u * std::log2(u / v);
}

// Golden-section maximization on [lo, hi]; assumes a single interior peak.
std::pair<double, double> golden_max(const std::function<double(double)>& f, double lo, double hi,
                                     double tol = 1e-12) {
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = f(d);
    }
  }
  double x = (a + b) / 2;
  return {x, f(x)};
}

Mat bloch(double t, double c1, double c2, double c3) {
  // t * I + c . sigma
  Mat m(2, 2);
  m(0, 0) = cplx(t + c3, 0);
  m(0, 1) = cplx(c1, -c2);
  m(1, 0) = cplx(c1, c2);
  m(1, 1) = cplx(t - c3, 0);
  return m;
}

}  // namespace

Mat pauli(int k) {
  switch (k) {
    case 1:
      return bloch(0, 1, 0, 0);
    case 2:
      return bloch(0, 0, 1, 0);
    case 3:
      return bloch(0, 0, 0, 1);
    default:
      throw std::invalid_argument("pauli: index must be 1, 2 or 3");
  }
}

SpinPairConfig spin_pair_config(double alpha) {
  check_alpha(alpha);
  SpinPairConfig cfg;
  cfg.alpha = alpha;
  cfg.a1 = std::sqrt((1 + std::sin(alpha)) / 2);
  cfg.a2 = std::cos(alpha) / std::sqrt(2 * (1 + std::sin(alpha)));
  cfg.a = {cfg.a1, cfg.a2, 0};
  cfg.b = {cfg.a2, cfg.a1, 0};
  cfg.n = {1 / kSqrt2, 1 / kSqrt2, 0};
  cfg.m = {1 / kSqrt2, -1 / kSqrt2, 0};
  return cfg;
}

Observable spin_component(double c1, double c2, double c3) {
  Observable o;
  o.dim = 2;
  o.outcomes = {"+1", "-1"};
  o.effects = {bloch(1, c1, c2, c3) / 2.0, bloch(1, -c1, -c2, -c3) / 2.0};
  return o;
}

State equatorial_state(double phi) {
  return State{2, bloch(1, std::cos(phi), std::sin(phi), 0) / 2.0};
}

std::pair<Observable, Observable> target_pair(double alpha) {
  SpinPairConfig cfg = spin_pair_config(alpha);
  return {spin_component(cfg.a[0], cfg.a[1]), spin_component(cfg.b[0], cfg.b[1])};
}

BiObservable covariant_biobservable(const CovariantParams& p) {
  double lo = kSqrt2 * std::abs(p.c1 + p.c2) - 1;
  double hi = 1 - kSqrt2 * std::abs(p.c1 - p.c2);
  if (!(p.gamma >= lo - 1e-12 && p.gamma <= hi + 1e-12)) {
    throw std::invalid_argument("covariant_biobservable: parameters violate positivity");
  }
  std::vector<Mat> effects;
  for (double x : {1.0, -1.0}) {
    for (double y : {1.0, -1.0}) {
      effects.push_back(
          bloch(1 + p.gamma * x * y, p.c1 * x + p.c2 * y, p.c2 * x + p.c1 * y, 0) / 4.0);
    }
  }
  return make_biobservable(2, {"+1", "-1"}, {"+1", "-1"}, effects);
}

BiObservable m_gamma(double gamma) {
  if (!(gamma >= -1 - 1e-12 && gamma <= 1 + 1e-12)) {
    throw std::invalid_argument("m_gamma: gamma must lie in [-1, 1]");
  }
  return covariant_biobservable({gamma, 1 / kSqrt2, gamma / kSqrt2});
}

double covariant_error_at(double alpha, double gamma, double phi) {
  SpinPairConfig cfg = spin_pair_config(alpha);
  double ua = cfg.a1 * std::cos(phi) + cfg.a2 * std::sin(phi);
  double ub = cfg.a2 * std::cos(phi) + cfg.a1 * std::sin(phi);
  double va = (std::cos(phi) + gamma * std::sin(phi)) / kSqrt2;
  double vb = (std::sin(phi) + gamma * std::cos(phi)) / kSqrt2;
  double tot = 0;
  for (double x : {1.0, -1.0}) tot += s_term((1 + x * ua) / 2, (1 + x * va) / 2);
  for (double y : {1.0, -1.0}) tot += s_term((1 + y * ub) / 2, (1 + y * vb) / 2);
  return tot;
}

std::pair<double, double> max_error_over_phi(double alpha, double gamma, int grid) {
  int best_k = 0;
  double best_v = -kInf;
  for (int k = 0; k < grid; ++k) {
    double v = covariant_error_at(alpha, gamma, 2 * kPi * k / grid);
    if (v > best_v) {
      best_v = v;
      best_k = k;
    }
  }
  double lo = 2 * kPi * (best_k - 1) / grid;
  double hi = 2 * kPi * (best_k + 1) / grid;
  auto [x, v] =
      golden_max([&](double p) { return covariant_error_at(alpha, gamma, p); }, lo, hi);
  x = std::fmod(x, 2 * kPi);
  if (x < 0) x += 2 * kPi;
  return {x, v};
}

AnalyticLowerBound analytic_lower_bound(double alpha) {
  check_alpha(alpha);
  SpinPairConfig cfg = spin_pair_config(alpha);
  double sa = std::sin(alpha), ca = std::cos(alpha);
  double u = (1 + std::sqrt(1 + sa)) * sa / 2;
  double disc = std::sqrt(u * u + 8 * (1 + u) * cfg.a2 * cfg.a2);
  double ell = cfg.a2 < 1e-15 ? 0.0 : (disc - u) / (2 * kSqrt2 * cfg.a2);
  double gamma = (kSqrt2 * ell - cfg.a2) / cfg.a1;
  double w = 0.5 + disc / (4 * kSqrt2 * cfg.a1) + (sa / 8) * (3 / (kSqrt2 * cfg.a1) - 1);
  double lb = -std::log2(w);
  lb += ((1 + ca) / 2) * std::log2((1 + ca) / (1 + ell));
  if (1 - ca > 1e-15) lb += ((1 - ca) / 2) * std::log2((1 - ca) / (1 - ell));
  return {lb, gamma, ell};
}

QubitMinimaxResult qubit_minimax(double alpha, const SolverConfig&) {
  check_alpha(alpha);
  const int ggrid = 201;
  auto val = [&](double g) { return max_error_over_phi(alpha, g).second; };
  int best_k = 0;
  double best_v = kInf;
  for (int k = 0; k < ggrid; ++k) {
    double v = val(-1 + 2.0 * k / (ggrid - 1));
    if (v < best_v) {
      best_v = v;
      best_k = k;
    }
  }
  double g0 = -1 + 2.0 * best_k / (ggrid - 1);
  double lo = std::max(-1.0, g0 - 2.0 / (ggrid - 1));
  double hi = std::min(1.0, g0 + 2.0 / (ggrid - 1));
  auto [g, negv] = golden_max([&](double gg) { return -val(gg); }, lo, hi);
  (void)negv;
  auto [phi, v] = max_error_over_phi(alpha, g);
  return {v, g, phi};
}

ComparisonReport comparison_points(double alpha) {
  check_alpha(alpha);
  SpinPairConfig cfg = spin_pair_config(alpha);
  ComparisonReport rep;
  double g_blw = kSqrt2 * cfg.a2;
  auto [phi_blw, v_blw] = max_error_over_phi(alpha, g_blw);
  rep.blw = {g_blw, v_blw, phi_blw};
  double g_nv = cfg.a2 / cfg.a1;
  auto [phi_nv, v_nv] = max_error_over_phi(alpha, g_nv);
  rep.nv = {g_nv, v_nv, phi_nv};
  QubitMinimaxResult mm = qubit_minimax(alpha);
  rep.icomp = {mm.gamma_star, mm.value, mm.phi_star};
  AnalyticLowerBound lb = analytic_lower_bound(alpha);
  rep.lb_gamma = lb.gamma;
  rep.lb_value = lb.lb;
  return rep;
}

ThreeSpinReport three_spin_suite() {
  ThreeSpinReport rep;
  rep.x = spin_component(1, 0, 0);
  rep.y = spin_component(0, 1, 0);
  rep.z = spin_component(0, 0, 1);
  const double lam = 1 / std::sqrt(3.0);

  auto family = [](double c) {
    if (!(std::abs(c) <= 1 / std::sqrt(3.0) + 1e-12)) {
      throw std::invalid_argument("three-spin family: |c| must not exceed 1/sqrt(3)");
    }
    MultiObservable m;
    m.dim = 2;
    m.outcome_sets = {{"+1", "-1"}, {"+1", "-1"}, {"+1", "-1"}};
    for (double x : {1.0, -1.0}) {
      for (double y : {1.0, -1.0}) {
        for (double z : {1.0, -1.0}) {
          m.effects.push_back(bloch(1, c * x, c * y, c * z) / 8.0);
        }
      }
    }
    return m;
  };
  rep.family = family;
  rep.m0 = family(lam);

  rep.m1 = rep.m0;
  // Keep twice the noisy effect on the four outcomes with x*y*z = -1; the
  // result has four rank-one effects and the same marginals.
  for (std::size_t t = 0; t < rep.m1.effects.size(); ++t) {
    double x = (t & 4) ? -1 : 1;
    double y = (t & 2) ? -1 : 1;
    double z = (t & 1) ? -1 : 1;
    if (x * y * z < 0) {
      rep.m1.effects[t] *= 2.0;
    } else {
      rep.m1.effects[t] = Mat::Zero(2, 2);
    }
  }
  rep.m0.validate();
  rep.m1.validate();
  for (int i = 0; i < 3; ++i) {
    Observable ma = rep.m0.marginal(i);
    Observable mb = rep.m1.marginal(i);
    for (std::size_t k = 0; k < ma.size(); ++k) {
      if ((ma.effects[k] - mb.effects[k]).norm() > 1e-10) {
        throw std::logic_error("three-spin: marginals of m0 and m1 disagree");
      }
    }
  }

  std::vector<Observable> targets = {rep.x, rep.y, rep.z};
  std::vector<State> eigenstates;
  for (int k = 1; k <= 3; ++k) {
    for (double sign : {1.0, -1.0}) {
      eigenstates.push_back(State{2, (Mat::Identity(2, 2) + sign * pauli(k)) / 2.0});
    }
  }
  auto worst = [&](double c) {
    MultiObservable m = family(c);
    double v = -kInf;
    for (const State& rho : eigenstates) {
      v = std::max(v, error_function_multi(targets, m, rho));
    }
    return v;
  };
  const int grid = 201;
  int best_k = 0;
  double best_v = kInf;
  for (int k = 0; k < grid; ++k) {
    double v = worst(-lam + 2 * lam * k / (grid - 1));
    if (v < best_v) {
      best_v = v;
      best_k = k;
    }
  }
  double c0 = -lam + 2 * lam * best_k / (grid - 1);
  double lo = std::max(-lam, c0 - 2 * lam / (grid - 1));
  double hi = std::min(lam, c0 + 2 * lam / (grid - 1));
  auto [c, negv] = golden_max([&](double cc) { return -worst(cc); }, lo, hi);
  (void)negv;
  rep.c_star = c;
  rep.icomp = worst(c);
  return rep;
}

}  // namespace entrimur
