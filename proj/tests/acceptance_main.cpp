// Acceptance suite: one pass/fail line per criterion, exit 0 iff all pass.

#include <entrimur/bounds.hpp>
#include <entrimur/entropy.hpp>
#include <entrimur/gallery.hpp>
#include <entrimur/mub.hpp>
#include <entrimur/quantum.hpp>
#include <entrimur/rng.hpp>
#include <entrimur/solver.hpp>
#include <entrimur/spin.hpp>

#include "helpers.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

using namespace entrimur;

namespace {

const double kPi = 3.14159265358979323846;
const double kOrth = std::log2(2 * (2 - std::sqrt(2.0)));  // 0.2284467

struct Check {
  bool ok = true;
  std::ostringstream detail;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      if (detail.tellp() > 0) detail << "; ";
      detail << what;
    }
  }
};

std::vector<Bracket> g_brackets;  // every solver run, checked in criterion 8

Bracket record(Bracket br) {
  g_brackets.push_back(br);
  return br;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Distance between two closed intervals; zero when they overlap.
double interval_distance(double l1, double u1, double l2, double u2) {
  return std::max(0.0, std::max(l1, l2) - std::min(u1, u2));
}

ProbabilityDistribution random_full_support(Rng& rng, int n, double floor = 1e-4) {
  ProbabilityDistribution p = testutil::random_distribution(rng, n);
  double total = 0;
  for (double& w : p.weights) {
    w = floor + (1 - n * floor) * w;
    total += w;
  }
  for (double& w : p.weights) w /= total;
  return p;
}

std::vector<std::string> labels(int n) { return testutil::default_labels(n); }

// ---------------------------------------------------------------------------

Check criterion1() {
  Check c;
  auto t0 = std::chrono::steady_clock::now();
  QubitMinimaxResult mm = qubit_minimax(kPi / 2);
  double t_cov = seconds_since(t0);
  c.require(std::abs(mm.value - kOrth) <= 1e-4, "covariant value off");
  c.require(t_cov < 60.0, "covariant path too slow");

  t0 = std::chrono::steady_clock::now();
  auto [a, b] = target_pair(kPi / 2);
  Bracket br = record(icomp(a, b));
  double t_gen = seconds_since(t0);
  c.require(br.lower <= kOrth + 1e-3 && br.upper >= kOrth - 1e-3, "generic bracket misses value");
  c.require(br.converged, "generic bracket did not converge");
  c.require(t_gen < 60.0, "generic path too slow");
  c.detail << "covariant " << mm.value << " (" << t_cov << "s), generic [" << br.lower << ", "
           << br.upper << "] (" << t_gen << "s)";
  return c;
}

Check criterion2() {
  Check c;
  ComparisonReport rep = comparison_points(kPi / 4);
  c.require(std::abs(rep.icomp.value - 0.120035) <= 5e-4, "minimax value off");
  c.require(std::abs(rep.icomp.gamma - 0.743999) <= 5e-3, "gamma_star off");
  c.require(std::abs(rep.icomp.phi - 0.282743) <= 5e-3, "phi_star off");
  c.require(std::abs(rep.lb_gamma - 0.795559) <= 1e-5, "lb gamma off");
  c.require(std::abs(rep.lb_value - 0.110081) <= 1e-5, "lb value off");
  c.require(std::abs(rep.blw.gamma - 0.541195) <= 5e-4, "blw gamma off");
  c.require(std::abs(rep.blw.value - 0.160886) <= 5e-4, "blw value off");
  c.require(std::abs(rep.nv.gamma - 0.414213) <= 5e-4, "nv gamma off");
  c.require(std::abs(rep.nv.value - 0.212079) <= 5e-4, "nv value off");
  c.detail << "value " << rep.icomp.value << ", gamma* " << rep.icomp.gamma << ", phi* "
           << rep.icomp.phi;
  return c;
}

Check criterion3() {
  Check c;
  const int points = 20;
  double v_first = 0, v_last = 0;
  for (int k = 0; k < points; ++k) {
    double alpha = (kPi / 2) * k / (points - 1);
    double lb = analytic_lower_bound(alpha).lb;
    double v = qubit_minimax(alpha).value;
    if (k == 0) v_first = v;
    if (k == points - 1) v_last = v;
    c.require(lb >= -1e-12, "negative lower bound");
    c.require(lb <= v + 1e-6, "lower bound exceeds value");
  }
  c.require(std::abs(v_first) <= 1e-4, "left endpoint off");
  c.require(std::abs(v_last - kOrth) <= 1e-4, "right endpoint off");
  c.detail << points << " angles, endpoints " << v_first << " and " << v_last;
  return c;
}

Check criterion4() {
  Check c;
  ThreeSpinReport rep = three_spin_suite();
  c.require(std::abs(rep.icomp - std::log2(3 - std::sqrt(3.0))) <= 1e-4, "minimum off");

  rep.m0.validate();
  rep.m1.validate();
  for (int i = 0; i < 3; ++i) {
    Observable g0 = rep.m0.marginal(i);
    Observable g1 = rep.m1.marginal(i);
    for (std::size_t x = 0; x < g0.size(); ++x) {
      c.require(approx_equal(g0.effects[x], g1.effects[x], 1e-10), "marginals differ");
    }
  }

  std::vector<Observable> targets = {rep.x, rep.y, rep.z};
  double eigen_max = 0;
  for (int k = 1; k <= 3; ++k) {
    for (double sign : {1.0, -1.0}) {
      State rho{2, (Mat::Identity(2, 2) + sign * pauli(k)) / 2.0};
      eigen_max = std::max(eigen_max, error_function_multi(targets, rep.m0, rho));
    }
  }
  auto [global, rho_star] = max_over_states_multi(targets, rep.m0);
  (void)rho_star;
  c.require(std::abs(global - eigen_max) <= 1e-6, "eigenstate max misses global scan");
  c.detail << "minimum " << rep.icomp << " at c " << rep.c_star << ", global scan " << global;
  return c;
}

Check criterion5() {
  Check c;
  for (auto [p, n] : {std::pair{2, 1}, {3, 1}, {2, 2}, {5, 1}}) {
    FiniteField f = field_construct(p, n);
    double d = f.size();
    MubSandwich s = mub_bound_sandwich(f);
    double lower_formula = std::log2(2 * std::sqrt(d) / (std::sqrt(d) + 1));
    double upper_formula = 2 * std::log2(2 * (d + 1) / (d + 3));
    c.require(std::abs(s.lower - lower_formula) <= 1e-12, "lower formula off");
    c.require(std::abs(s.upper - upper_formula) <= 1e-12, "upper formula off");
    c.require(s.lower <= s.value + 1e-9, "value below lower");
    c.require(s.value <= s.upper + 1e-4, "value above upper");
    if (f.size() == 2) c.require(std::abs(s.value - kOrth) <= 1e-3, "d=2 value off");

    auto [m, lambda0] = optimal_mub_measurement(f);
    auto [q, pp] = mub_pair(f);
    State mixed = maximally_mixed(f.size());
    Observable nq = noisy_version(q, lambda0, mixed);
    Observable np = noisy_version(pp, lambda0, mixed);
    Observable m1 = m.marginal(0), m2 = m.marginal(1);
    for (std::size_t x = 0; x < nq.size(); ++x) {
      c.require(approx_equal(m1.effects[x], nq.effects[x], 1e-10), "first marginal off");
      c.require(approx_equal(m2.effects[x], np.effects[x], 1e-10), "second marginal off");
    }
    c.detail << "d=" << f.size() << " [" << s.lower << ", " << s.value << ", " << s.upper
             << "] ";
  }
  return c;
}

Check criterion6() {
  Check c;
  Rng rng(0xC0FFEE, 600);
  for (int rep = 0; rep < 20; ++rep) {
    int d = (rep < 10) ? 2 : 3;
    double lambda_cl = (d + 2.0) / (2.0 * (d + 1.0));
    Observable a = testutil::random_observable(rng, d, 2 + rep % 2);
    Observable b = testutil::random_observable(rng, d, 2);
    BiObservable m = cloning_biobservable(a, b);
    State mixed = maximally_mixed(d);
    Observable na = noisy_version(a, lambda_cl, mixed);
    Observable nb = noisy_version(b, lambda_cl, mixed);
    Observable m1 = m.marginal(0), m2 = m.marginal(1);
    for (std::size_t x = 0; x < a.size(); ++x)
      c.require(approx_equal(m1.effects[x], na.effects[x], 1e-10), "binary marginal 1 off");
    for (std::size_t y = 0; y < b.size(); ++y)
      c.require(approx_equal(m2.effects[y], nb.effects[y], 1e-10), "binary marginal 2 off");
  }

  for (int d : {2, 3}) {
    double lambda3 = (d + 3.0) / (3.0 * (d + 1.0));
    std::vector<Observable> ts;
    for (int i = 0; i < 3; ++i) ts.push_back(testutil::random_observable(rng, d, 2));
    MultiObservable m3 = cloning_multiobservable(ts);
    State mixed = maximally_mixed(d);
    for (int i = 0; i < 3; ++i) {
      Observable noisy = noisy_version(ts[static_cast<std::size_t>(i)], lambda3, mixed);
      Observable mi = m3.marginal(i);
      for (std::size_t x = 0; x < noisy.size(); ++x)
        c.require(approx_equal(mi.effects[x], noisy.effects[x], 1e-10), "ternary marginal off");
    }
  }
  c.detail << "20 binary pairs (d=2,3) and ternary triples at both dimensions";
  return c;
}

Check criterion7() {
  Check c;
  for (auto [p, n] : {std::pair{2, 1}, {3, 1}, {2, 2}, {5, 1}}) {
    FiniteField f = field_construct(p, n);
    double logd = std::log2(static_cast<double>(f.size()));
    auto [q, pp] = mub_pair(f);
    double prep = prep_coefficient(q, pp);
    double kp = kp_lower_bound(q, pp);
    c.require(std::abs(prep - logd) <= 1e-4, "prep coefficient off at d=" + std::to_string(f.size()));
    c.require(std::abs(kp - logd) <= 1e-10, "kp bound off at d=" + std::to_string(f.size()));
    c.require(tradeoff_check(q, pp, cloning_upper_bound({q, pp}), prep), "tradeoff fails (mub)");
    c.detail << "d=" << f.size() << " prep " << prep << " ";
  }

  // Tradeoff on the other solved instances of this suite.
  auto [sa, sb] = target_pair(kPi / 2);
  c.require(tradeoff_check(sa, sb, cloning_upper_bound({sa, sb}), prep_coefficient(sa, sb)),
            "tradeoff fails (spin)");
  for (const GalleryCase& g : {hw_example_1(), hw_example_2()}) {
    c.require(tradeoff_check(g.a, g.b, cloning_upper_bound({g.a, g.b}),
                             prep_coefficient(g.a, g.b)),
              "tradeoff fails (" + g.name + ")");
  }
  return c;
}

// --- criterion 8 sub-blocks -------------------------------------------------

void entropy_axioms(Check& c) {
  Rng rng(0xC0FFEE, 801);
  for (int rep = 0; rep < 1000; ++rep) {
    int n = 2 + rep % 5;
    std::vector<std::string> names = labels(n);
    ProbabilityDistribution p = random_full_support(rng, n);
    ProbabilityDistribution q = random_full_support(rng, n);
    p.outcomes = q.outcomes = names;

    // (i) range bounds
    double h = shannon(p);
    c.require(h >= -1e-12 && h <= std::log2(n) + 1e-12, "entropy range");
    c.require(rel_entropy(p, q) >= -1e-12, "relative entropy nonnegative");

    // (ii) vanishing cases
    c.require(std::abs(shannon(point_distribution(names, rep % n))) <= 1e-12, "point entropy");
    c.require(std::abs(rel_entropy(p, p)) <= 1e-12, "self relative entropy");
    double max_w = *std::max_element(p.weights.begin(), p.weights.end());
    if (max_w < 1 - 1e-3) c.require(h > 1e-4, "entropy strictly positive");
    double l1 = 0;
    for (int i = 0; i < n; ++i) l1 += std::abs(p.weights[i] - q.weights[i]);
    if (l1 > 1e-3) c.require(rel_entropy(p, q) > 1e-8, "relative entropy strictly positive");

    // (iii) uniform reference duality
    ProbabilityDistribution u = uniform_distribution(names);
    c.require(std::abs(shannon(u) - std::log2(n)) <= 1e-12, "uniform entropy");
    c.require(std::abs(h - (std::log2(n) - rel_entropy(p, u))) <= 1e-10, "uniform duality");

    // (iv) relabeling invariance
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    for (int i = n - 1; i > 0; --i)
      std::swap(perm[i], perm[static_cast<int>(rng.uniform() * (i + 1))]);
    ProbabilityDistribution pp_, qq_;
    pp_.outcomes = qq_.outcomes = names;
    pp_.weights.resize(n);
    qq_.weights.resize(n);
    for (int i = 0; i < n; ++i) {
      pp_.weights[perm[i]] = p.weights[i];
      qq_.weights[perm[i]] = q.weights[i];
    }
    c.require(std::abs(shannon(pp_) - h) <= 1e-12, "entropy relabeling");
    c.require(std::abs(rel_entropy(pp_, qq_) - rel_entropy(p, q)) <= 1e-10,
              "relative entropy relabeling");

    // (v) concavity / joint convexity
    double theta = rng.uniform();
    ProbabilityDistribution p2 = random_full_support(rng, n);
    ProbabilityDistribution q2 = random_full_support(rng, n);
    p2.outcomes = q2.outcomes = names;
    ProbabilityDistribution pm, qm;
    pm.outcomes = qm.outcomes = names;
    for (int i = 0; i < n; ++i) {
      pm.weights.push_back(theta * p.weights[i] + (1 - theta) * p2.weights[i]);
      qm.weights.push_back(theta * q.weights[i] + (1 - theta) * q2.weights[i]);
    }
    c.require(shannon(pm) >= theta * h + (1 - theta) * shannon(p2) - 1e-10, "concavity");
    c.require(rel_entropy(pm, qm) <=
                  theta * rel_entropy(p, q) + (1 - theta) * rel_entropy(p2, q2) + 1e-10,
              "joint convexity");

    // (vi) continuity of the entropy; blow-up of the divergence toward the
    // boundary of the support set (lower semicontinuity seen along sequences)
    ProbabilityDistribution pert = p;
    for (int i = 0; i < n; ++i)
      pert.weights[i] = (1 - 1e-8) * p.weights[i] + 1e-8 / n;
    c.require(std::abs(shannon(pert) - h) <= 1e-4, "entropy continuity");
    double prev = -kInf;
    for (double eps : {1e-3, 1e-6, 1e-9}) {
      ProbabilityDistribution qe = q;
      qe.weights[0] = eps;
      double total = 0;
      for (double w : qe.weights) total += w;
      for (double& w : qe.weights) w /= total;
      double se = rel_entropy(u, qe);
      c.require(se > prev, "divergence not increasing toward boundary");
      prev = se;
    }
    ProbabilityDistribution q0 = q;
    q0.weights[0] = 0.0;
    c.require(rel_entropy(p, q0) == kInf, "off-support divergence finite");

    // (vii) additivity over products
    int n2 = 2 + rep % 3;
    std::vector<std::string> names2 = labels(n2);
    ProbabilityDistribution pa = random_full_support(rng, n2);
    ProbabilityDistribution qa = random_full_support(rng, n2);
    pa.outcomes = qa.outcomes = names2;
    ProbabilityDistribution pprod, qprod;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n2; ++j) {
        pprod.outcomes.push_back(names[i] + "," + names2[j]);
        pprod.weights.push_back(p.weights[i] * pa.weights[j]);
        qprod.weights.push_back(q.weights[i] * qa.weights[j]);
      }
    }
    qprod.outcomes = pprod.outcomes;
    c.require(std::abs(rel_entropy(pprod, qprod) -
                       (rel_entropy(p, q) + rel_entropy(pa, qa))) <= 1e-9,
              "product additivity");
  }
}

void mixture_closed_form(Check& c) {
  Rng rng(0xC0FFEE, 802);
  for (int rep = 0; rep < 500; ++rep) {
    int n = 2 + rep % 5;
    std::vector<std::string> names = labels(n);
    ProbabilityDistribution q = random_full_support(rng, n);
    q.outcomes = names;
    double lambda = 0.02 + 0.96 * rng.uniform();
    double closed = max_rel_entropy_mixture(lambda, q);
    double best = 0;
    for (int x = 0; x < n; ++x) {
      ProbabilityDistribution px = point_distribution(names, x);
      ProbabilityDistribution mix;
      mix.outcomes = names;
      for (int i = 0; i < n; ++i)
        mix.weights.push_back(lambda * px.weights[i] + (1 - lambda) * q.weights[i]);
      best = std::max(best, rel_entropy(px, mix));
    }
    c.require(std::abs(best - closed) <= 1e-9, "mixture formula vs vertices");
  }
}

void kernel_finiteness(Check& c) {
  auto [a, b] = target_pair(kPi / 2);
  c.require(divergence_finiteness(a, b, m_gamma(0.5)), "interior family flagged infinite");
  c.require(!divergence_finiteness(a, b, m_gamma(1.0)), "boundary family flagged finite");

  Observable z = spin_component(0, 0, 1);
  std::vector<Mat> effects = {z.effects[0], Mat::Zero(2, 2), Mat::Zero(2, 2), z.effects[1]};
  BiObservable sharp_joint = make_biobservable(2, a.outcomes, b.outcomes, effects);
  c.require(!divergence_finiteness(a, b, sharp_joint), "sharp mismatched joint flagged finite");
  auto [val, wit] = max_over_states(a, b, sharp_joint);
  c.require(val == kInf, "infinite case returned finite");
  c.require(error_function(a, b, sharp_joint, wit) == kInf, "witness not infinite");

  GalleryCase g1 = hw_example_1();
  c.require(divergence_finiteness(g1.a, g1.b, *g1.provided_joint), "gallery joint flagged infinite");

  ThreeSpinReport rep3 = three_spin_suite();
  std::vector<Observable> targets = {rep3.x, rep3.y, rep3.z};
  c.require(divergence_finiteness_multi(targets, rep3.m1), "extremal triple flagged infinite");
  MultiObservable trivial;
  trivial.dim = 2;
  trivial.outcome_sets = rep3.m0.outcome_sets;
  trivial.effects.assign(8, Mat::Zero(2, 2));
  trivial.effects[0] = Mat::Identity(2, 2);
  c.require(!divergence_finiteness_multi(targets, trivial), "point joint flagged finite");
}

void invariance(Check& c, const Bracket& baseline) {
  Rng rng(0xC0FFEE, 803);
  auto [a, b] = target_pair(kPi / 2);
  BiObservable m = m_gamma(0.3);

  for (int rep = 0; rep < 100; ++rep) {
    Mat u = rng.random_unitary(2);
    Vec psi = rng.random_unit(2);
    State rho = pure_state(psi);
    State rho_u = pure_state(Vec(u * psi));
    Observable au = a, bu = b;
    BiObservable mu = m;
    for (Mat& e : au.effects) e = u * e * u.adjoint();
    for (Mat& e : bu.effects) e = u * e * u.adjoint();
    for (Mat& e : mu.effects) e = u * e * u.adjoint();
    double before = error_function(a, b, m, rho);
    double after = error_function(au, bu, mu, rho_u);
    c.require(std::abs(before - after) <= 1e-10, "unitary invariance of error function");

    // Relabeling: reverse outcome order of the first factor everywhere.
    Observable ar = a;
    std::reverse(ar.outcomes.begin(), ar.outcomes.end());
    std::reverse(ar.effects.begin(), ar.effects.end());
    BiObservable mr = m;
    mr.outcome_sets[0] = ar.outcomes;
    for (int x = 0; x < 2; ++x)
      for (int y = 0; y < 2; ++y) mr.effects[static_cast<std::size_t>(2 * x + y)] =
          m.effects[static_cast<std::size_t>(2 * (1 - x) + y)];
    double relabeled = error_function(ar, b, mr, rho);
    c.require(std::abs(before - relabeled) <= 1e-10, "relabeling invariance of error function");
  }

  // Brackets: the conjugated and relabeled problems enclose the same value,
  // so valid brackets must overlap the baseline.
  Mat u = rng.random_unitary(2);
  Observable au = a, bu = b;
  for (Mat& e : au.effects) e = u * e * u.adjoint();
  for (Mat& e : bu.effects) e = u * e * u.adjoint();
  Bracket conj = record(icomp(au, bu));
  c.require(interval_distance(baseline.lower, baseline.upper, conj.lower, conj.upper) <= 1e-12,
            "conjugated bracket does not overlap");

  Observable ar = a;
  std::reverse(ar.outcomes.begin(), ar.outcomes.end());
  std::reverse(ar.effects.begin(), ar.effects.end());
  Bracket rel = record(icomp(ar, b));
  c.require(interval_distance(baseline.lower, baseline.upper, rel.lower, rel.upper) <= 1e-12,
            "relabeled bracket does not overlap");
}

void choi_duality(Check& c) {
  Rng rng(0xC0FFEE, 804);
  for (int rep = 0; rep < 200; ++rep) {
    int d = 2 + rep % 2;
    int n_out = 2 + rep % 3;
    Instrument j = testutil::random_instrument(rng, d, n_out);
    Mat rho = rng.random_density(d);
    Mat f = 0.8 * rng.random_pure_state(d) + 0.1 * Mat::Identity(d, d);
    for (int x = 0; x < n_out; ++x) {
      cplx lhs = (j.apply(x, rho) * f).trace();
      cplx rhs = (rho * j.adjoint_apply(x, f)).trace();
      c.require(std::abs(lhs - rhs) <= 1e-9, "duality violated");
    }
  }
}

void sharp_b_agreement(Check& c) {
  Rng rng(0xC0FFEE, 805);
  for (int rep = 0; rep < 10; ++rep) {
    double w = 0.5 + 0.5 * rng.uniform();
    double th = 2 * kPi * rng.uniform(), ph = kPi * rng.uniform();
    Observable a = spin_component(w * std::sin(ph) * std::cos(th),
                                  w * std::sin(ph) * std::sin(th), w * std::cos(ph));
    Observable b = testutil::random_sharp_observable(rng, 2);
    Bracket bi = record(icomp(a, b));
    Bracket bd = record(iad(a, b));
    double dist = interval_distance(bi.lower, bi.upper, bd.lower, bd.upper);
    c.require(dist <= 2e-4, "sharp-B disturbance bracket far from incompatibility bracket");
  }
}

void adding_observable(Check& c) {
  Rng rng(0xC0FFEE, 806);
  for (int rep = 0; rep < 10; ++rep) {
    Observable a = testutil::random_observable(rng, 2, 2);
    Observable b = testutil::random_observable(rng, 2, 2);
    Observable extra = testutil::random_observable(rng, 2, 2);
    Bracket two = record(icomp(a, b));
    Bracket three = record(icomp_multi({a, b, extra}));
    // The pairwise value never exceeds the triple value; valid brackets keep
    // the certified lower end of the pair below the upper end of the triple.
    c.require(two.lower <= three.upper + 1e-9, "pairwise bracket exceeds triple bracket");
  }
}

Check criterion8(const Bracket& baseline) {
  Check c;
  entropy_axioms(c);
  mixture_closed_form(c);
  kernel_finiteness(c);
  invariance(c, baseline);
  choi_duality(c);
  sharp_b_agreement(c);
  adding_observable(c);
  for (const Bracket& br : g_brackets) {
    c.require(testutil::bracket_monotone(br), "bracket trace not monotone");
  }
  c.detail << "axioms x1000, mixture x500, duality x200, invariance, sharp-B x10, "
           << "monotone x" << g_brackets.size();
  return c;
}

Check criterion9() {
  Check c;
  GalleryCase g1 = hw_example_1();
  GalleryCase g2 = hw_example_2();

  for (const GalleryCase* g : {&g1, &g2}) {
    Observable m1 = g->provided_joint->marginal(0);
    Observable m2 = g->provided_joint->marginal(1);
    for (std::size_t x = 0; x < g->a.size(); ++x)
      c.require(approx_equal(m1.effects[x], g->a.effects[x], 1e-10), g->name + " marginal 1 off");
    for (std::size_t y = 0; y < g->b.size(); ++y)
      c.require(approx_equal(m2.effects[y], g->b.effects[y], 1e-10), g->name + " marginal 2 off");
  }

  std::vector<Bracket> local;
  local.push_back(record(icomp(g1.a, g1.b)));
  const Bracket i1 = local.back();
  c.require(i1.lower <= 1e-12 && i1.upper >= -1e-12, "example-1 bracket misses zero");
  c.require(i1.upper <= 1e-3, "example-1 upper too large");
  local.push_back(record(icomp(g2.a, g2.b)));
  const Bracket i2 = local.back();
  c.require(i2.lower <= 1e-12 && i2.upper >= -1e-12, "example-2 bracket misses zero");
  c.require(i2.upper <= 1e-3, "example-2 upper too large");

  // Measuring the five-outcome observable first need not disturb the other.
  local.push_back(record(iad(g1.b, g1.a)));
  c.require(local.back().upper <= 1e-3, "example-1 reverse disturbance not near zero");

  // Amended sub-item (see the project decision ledger): the sequential
  // disturbance of example 2 is genuinely positive but tiny, so the evidence
  // is the pinned witness value rather than a certified lower bound above it.
  local.push_back(record(iad(g2.a, g2.b)));
  const Bracket d2 = local.back();
  c.require(d2.lower >= 0.0 && d2.lower <= d2.upper + 1e-12, "example-2 iad bracket invalid");
  c.require(d2.upper <= 1e-3, "example-2 iad upper too large");
  c.require(d2.upper > 1e-7, "example-2 iad witness not positive");
  BiObservable lueders_seq = sequential_measurement(lueders_instrument(g2.a), g2.b);
  auto [lv, lw] = max_over_states(g2.a, g2.b, lueders_seq);
  (void)lw;
  c.require(std::abs(lv - 6.008e-6) <= 5e-8, "example-2 sequential witness value off");
  for (const Bracket& br : local) {
    c.require(testutil::bracket_monotone(br), "gallery bracket trace not monotone");
  }
  c.detail << "icomp [" << i1.lower << "," << i1.upper << "] / [" << i2.lower << ","
           << i2.upper << "], iad upper " << d2.upper << ", sequential witness " << lv
           << " (amended: positivity evidence via witness)";
  return c;
}

}  // namespace

int main() {
  struct Entry {
    int id;
    const char* name;
    std::function<Check()> run;
  };

  Bracket baseline;  // generic orthogonal-pair bracket, reused by criterion 8

  std::vector<Entry> entries = {
      {1, "orthogonal pair exact value", [&] {
         Check c = criterion1();
         baseline = g_brackets.front();
         return c;
       }},
      {2, "comparison table at pi/4", criterion2},
      {3, "angle scan bounds", criterion3},
      {4, "three orthogonal components", criterion4},
      {5, "conjugate basis sandwich", criterion5},
      {6, "cloning marginal identity", criterion6},
      {7, "preparation uncertainty suite", criterion7},
      {8, "property suites", [&] { return criterion8(baseline); }},
      {9, "fixture gallery", criterion9},
  };

  bool all_ok = true;
  for (const Entry& e : entries) {
    Check c;
    try {
      c = e.run();
    } catch (const std::exception& ex) {
      c.ok = false;
      c.detail << "exception: " << ex.what();
    }
    all_ok = all_ok && c.ok;
    std::printf("criterion %d (%s): %s%s%s\n", e.id, e.name, c.ok ? "PASS" : "FAIL",
                c.detail.tellp() > 0 ? " - " : "", c.detail.str().c_str());
    std::fflush(stdout);
  }
  std::printf("%s\n", all_ok ? "acceptance: all criteria passed" : "acceptance: FAILURES above");
  return all_ok ? 0 : 1;
}
