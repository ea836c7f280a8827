#include "entrimur/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <memory>
#include <thread>

#include "entrimur/rng.hpp"

namespace entrimur {

namespace {

constexpr double kLn2 = 0.693147180559945309;
// Restart budget for the per-round searches inside the exchange loop; the
// public divergence evaluator uses the full configured budget.
constexpr int kExchangeRestarts = 12;

// Solver-internal kernel: the floor on q is applied by the caller, so the
// value is always finite. Public extended-real semantics live in s_func.
inline double s_floored(double u, double v) {
  if (u <= 1e-12) return 0.0;
  return u * std::log2(u / v);
}

int thread_budget() {
  if (const char* env = std::getenv("ENTRIMUR_THREADS")) {
    int v = std::atoi(env);
    if (v >= 1) return v;
  }
  unsigned hc = std::thread::hardware_concurrency();
  return hc > 0 ? static_cast<int>(hc) : 1;
}

using Blocks = std::vector<Mat>;

// ---------------------------------------------------------------------------
// Decision-variable geometries. A candidate is a list of PSD blocks; the
// effective product measurement, the feasibility repair, the linearized
// gradient blocks, the dual bound and the mirror-descent step all depend on
// whether the variable is a product POVM or an instrument.

class Geometry {
 public:
  std::vector<std::vector<Mat>> targets;          // effects per factor
  std::vector<std::vector<std::string>> labels;   // outcome labels per factor
  std::vector<std::size_t> sizes;
  std::size_t n_eff = 1;
  int d = 0;

  virtual ~Geometry() = default;
  virtual Blocks start() const = 0;
  virtual Blocks canonical() const = 0;
  virtual Blocks repair(const Blocks& c, double w) const = 0;
  virtual std::vector<Mat> to_eff(const Blocks& c) const = 0;
  virtual Blocks grad(const std::vector<std::vector<double>>& ws, const std::vector<double>& mu,
                      const std::vector<Mat>& atlas) const = 0;
  virtual double inner(const Blocks& g, const Blocks& c) const = 0;
  virtual double dual(const Blocks& g, int steps) const = 0;
  virtual Blocks mmw(const Blocks& c, const Blocks& g, double eta) const = 0;
  virtual MultiObservable wrap(const Blocks& c) const = 0;

  void init_product(const std::vector<Observable>& obs) {
    d = obs.front().dim;
    for (const Observable& o : obs) {
      targets.push_back(o.effects);
      labels.push_back(o.outcomes);
      sizes.push_back(o.effects.size());
      n_eff *= o.effects.size();
    }
  }

  std::vector<std::size_t> strides() const {
    std::vector<std::size_t> st(sizes.size(), 1);
    for (std::size_t i = sizes.size() - 1; i-- > 0;) st[i] = st[i + 1] * sizes[i + 1];
    return st;
  }
};

class PovmGeometry final : public Geometry {
 public:
  explicit PovmGeometry(const std::vector<Observable>& obs) { init_product(obs); }

  Blocks start() const override {
    Blocks c(n_eff, Mat::Identity(d, d) / static_cast<double>(n_eff));
    return project(c);
  }

  Blocks canonical() const override {
    // Nested square-root cascade over the factors; exactly feasible and close
    // to optimal whenever the targets nearly commute.
    Blocks acc = targets.back();
    for (std::size_t i = targets.size() - 1; i-- > 0;) {
      Blocks next;
      next.reserve(targets[i].size() * acc.size());
      for (const Mat& a : targets[i]) {
        Mat r = mat_sqrt(a);
        for (const Mat& blk : acc) next.push_back(r * blk * r);
      }
      acc = std::move(next);
    }
    return acc;
  }

  Blocks repair(const Blocks& c, double w) const override {
    Mat u = Mat::Identity(d, d) / static_cast<double>(n_eff);
    Blocks out;
    out.reserve(c.size());
    for (const Mat& blk : c) out.push_back((1.0 - w) * blk + w * u);
    return out;
  }

  std::vector<Mat> to_eff(const Blocks& c) const override { return c; }

  Blocks project(const Blocks& c, int sweeps = 60, double floor = 1e-9) const {
    Blocks x = c;
    Blocks p(c.size(), Mat::Zero(d, d));
    for (int s = 0; s < sweeps; ++s) {
      double delta = 0;
      for (std::size_t k = 0; k < x.size(); ++k) {
        Mat y = x[k] + p[k];
        Mat xn = psd_clip(y);
        p[k] = y - xn;
        delta += (xn - x[k]).norm();
        x[k] = xn;
      }
      Mat sum = Mat::Zero(d, d);
      for (const Mat& blk : x) sum += blk;
      Mat corr = (sum - Mat::Identity(d, d)) / static_cast<double>(x.size());
      for (Mat& blk : x) blk -= corr;
      if (delta < 1e-12) break;
    }
    Mat sum = Mat::Zero(d, d);
    for (Mat& blk : x) {
      blk = psd_clip(blk) + (floor / static_cast<double>(x.size())) * Mat::Identity(d, d);
      sum += blk;
    }
    Mat sinv = inv_sqrt(sum);
    for (Mat& blk : x) blk = sinv * blk * sinv;
    return x;
  }

  Blocks grad(const std::vector<std::vector<double>>& ws, const std::vector<double>& mu,
              const std::vector<Mat>& atlas) const override {
    Blocks g(n_eff, Mat::Zero(d, d));
    for (std::size_t k = 0; k < atlas.size(); ++k) {
      if (mu[k] < 1e-16) continue;
      for (std::size_t t = 0; t < n_eff; ++t) {
        if (ws[k][t] != 0.0) g[t] += mu[k] * ws[k][t] * atlas[k];
      }
    }
    return g;
  }

  double inner(const Blocks& g, const Blocks& c) const override {
    double sum = 0;
    for (std::size_t t = 0; t < n_eff; ++t) sum += (g[t] * c[t]).trace().real();
    return sum;
  }

  double dual(const Blocks& g, int steps) const override {
    // max Tr Y subject to Y <= G_t for every block.
    Mat y = Mat::Zero(d, d);
    for (const Mat& blk : g) y += blk;
    y /= static_cast<double>(g.size());
    double delta = -kInf;
    for (const Mat& blk : g) delta = std::max(delta, max_eigenvalue(y - blk));
    y -= (std::max(delta, 0.0) + 1e-12) * Mat::Identity(d, d);
    double best = y.trace().real();
    Blocks p(g.size(), Mat::Zero(d, d));
    for (int t = 1; t <= steps; ++t) {
      y += (0.1 / std::sqrt(static_cast<double>(t))) * Mat::Identity(d, d);
      for (int sweep = 0; sweep < 6; ++sweep) {
        for (std::size_t k = 0; k < g.size(); ++k) {
          Mat dmat = (g[k] - y) + p[k];
          Mat dn = psd_clip(dmat);
          p[k] = dmat - dn;
          y = g[k] - dn;
        }
      }
      double viol = -kInf;
      for (const Mat& blk : g) viol = std::max(viol, max_eigenvalue(y - blk));
      Mat yf = y - std::max(viol, 0.0) * Mat::Identity(d, d);
      best = std::max(best, yf.trace().real());
    }
    return best;
  }

  Blocks mmw(const Blocks& c, const Blocks& g, double eta) const override {
    Blocks x(c.size());
    Mat sum = Mat::Zero(d, d);
    for (std::size_t k = 0; k < c.size(); ++k) {
      x[k] = mat_exp_capped(mat_log(c[k]) - eta * g[k]);
      sum += x[k];
    }
    Mat sinv = inv_sqrt(sum);
    for (Mat& blk : x) blk = sinv * blk * sinv;
    return x;
  }

  MultiObservable wrap(const Blocks& c) const override {
    MultiObservable m;
    m.dim = d;
    m.outcome_sets = labels;
    m.effects = c;
    return m;
  }
};

class InstrGeometry final : public Geometry {
 public:
  // targets = {A, B}; the candidate holds one Choi block per outcome of A,
  // and the effective bi-observable is the sequential measurement with B.
  explicit InstrGeometry(const Observable& a, const Observable& b) : a_(a), b_(b) {
    init_product({a, b});
    nx_ = a.effects.size();
    ny_ = b.effects.size();
  }

  Blocks start() const override {
    Eigen::Index big = static_cast<Eigen::Index>(d) * d;
    Blocks c(nx_, Mat::Identity(big, big) / static_cast<double>(nx_ * d));
    return project(c);
  }

  Blocks canonical() const override { return lueders_instrument(a_).choi; }

  Blocks repair(const Blocks& c, double w) const override {
    Eigen::Index big = static_cast<Eigen::Index>(d) * d;
    Mat u = Mat::Identity(big, big) / static_cast<double>(nx_ * d);
    Blocks out;
    out.reserve(c.size());
    for (const Mat& blk : c) out.push_back((1.0 - w) * blk + w * u);
    return out;
  }

  std::vector<Mat> to_eff(const Blocks& c) const override {
    std::vector<Mat> eff;
    eff.reserve(nx_ * ny_);
    for (std::size_t x = 0; x < nx_; ++x) {
      for (std::size_t y = 0; y < ny_; ++y) {
        // adjoint map: E(x,y)(j,i) = sum_{a,b} C_x((i,a),(j,b)) B(y)(b,a)
        Mat e = Mat::Zero(d, d);
        const Mat& cx = c[x];
        const Mat& by = b_.effects[y];
        for (int i = 0; i < d; ++i) {
          for (int j = 0; j < d; ++j) {
            cplx s = 0;
            for (int aa = 0; aa < d; ++aa) {
              for (int bb = 0; bb < d; ++bb) s += cx(i * d + aa, j * d + bb) * by(bb, aa);
            }
            e(j, i) = s;
          }
        }
        eff.push_back(e);
      }
    }
    return eff;
  }

  Mat out_reduction(const Mat& cx) const {
    Mat r = Mat::Zero(d, d);
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) {
        cplx s = 0;
        for (int a = 0; a < d; ++a) s += cx(i * d + a, j * d + a);
        r(i, j) = s;
      }
    }
    return r;
  }

  Blocks project(const Blocks& c, int sweeps = 60, double floor = 1e-9) const {
    Eigen::Index big = static_cast<Eigen::Index>(d) * d;
    Blocks x = c;
    Blocks p(c.size(), Mat::Zero(big, big));
    for (int s = 0; s < sweeps; ++s) {
      double delta = 0;
      for (std::size_t k = 0; k < x.size(); ++k) {
        Mat y = x[k] + p[k];
        Mat xn = psd_clip(y);
        p[k] = y - xn;
        delta += (xn - x[k]).norm();
        x[k] = xn;
      }
      Mat r = Mat::Zero(d, d);
      for (const Mat& blk : x) r += out_reduction(blk);
      r -= Mat::Identity(d, d);
      Mat corr = tensor(r / static_cast<double>(nx_ * d), Mat::Identity(d, d));
      for (Mat& blk : x) blk -= corr;
      if (delta < 1e-12) break;
    }
    Mat sum = Mat::Zero(d, d);
    for (Mat& blk : x) {
      blk = psd_clip(blk) + (floor / static_cast<double>(nx_ * d)) * Mat::Identity(big, big);
      sum += out_reduction(blk);
    }
    Mat k = tensor(inv_sqrt(sum), Mat::Identity(d, d));
    for (Mat& blk : x) blk = k * blk * k;
    return x;
  }

  Blocks grad(const std::vector<std::vector<double>>& ws, const std::vector<double>& mu,
              const std::vector<Mat>& atlas) const override {
    Eigen::Index big = static_cast<Eigen::Index>(d) * d;
    Blocks g(nx_, Mat::Zero(big, big));
    for (std::size_t k = 0; k < atlas.size(); ++k) {
      if (mu[k] < 1e-16) continue;
      Mat rt = atlas[k].transpose();
      for (std::size_t x = 0; x < nx_; ++x) {
        for (std::size_t y = 0; y < ny_; ++y) {
          double w = ws[k][x * ny_ + y];
          if (w != 0.0) g[x] += mu[k] * w * tensor(rt, b_.effects[y]);
        }
      }
    }
    return g;
  }

  double inner(const Blocks& g, const Blocks& c) const override {
    double sum = 0;
    for (std::size_t x = 0; x < nx_; ++x) sum += (g[x] * c[x]).trace().real();
    return sum;
  }

  double dual(const Blocks& g, int steps) const override {
    // max Tr Y subject to Y (x) I <= G_x for every x.
    Mat y = Mat::Zero(d, d);
    for (const Mat& blk : g) y += out_reduction(blk);
    y /= static_cast<double>(g.size() * static_cast<std::size_t>(d));
    auto viol = [&](const Mat& yy) {
      Mat k = tensor(yy, Mat::Identity(d, d));
      double v = -kInf;
      for (const Mat& blk : g) v = std::max(v, max_eigenvalue(k - blk));
      return v;
    };
    y -= (std::max(viol(y), 0.0) + 1e-12) * Mat::Identity(d, d);
    double best = y.trace().real();
    for (int t = 1; t <= steps; ++t) {
      y += (0.1 / std::sqrt(static_cast<double>(t))) * Mat::Identity(d, d);
      Mat yf = y - std::max(viol(y), 0.0) * Mat::Identity(d, d);
      double tr = yf.trace().real();
      if (tr > best) best = tr;
      y = yf;
    }
    return best;
  }

  Blocks mmw(const Blocks& c, const Blocks& g, double eta) const override {
    Blocks x(c.size());
    Mat sum = Mat::Zero(d, d);
    for (std::size_t k = 0; k < c.size(); ++k) {
      x[k] = mat_exp_capped(mat_log(c[k]) - eta * g[k]);
      sum += out_reduction(x[k]);
    }
    Mat kk = tensor(inv_sqrt(sum), Mat::Identity(d, d));
    for (Mat& blk : x) blk = kk * blk * kk;
    return x;
  }

  MultiObservable wrap(const Blocks& c) const override {
    MultiObservable m;
    m.dim = d;
    m.outcome_sets = labels;
    m.effects = to_eff(c);
    return m;
  }

 private:
  Observable a_, b_;
  std::size_t nx_ = 0, ny_ = 0;
};

// ---------------------------------------------------------------------------
// Per-state evaluation of the restricted objective.

struct StateData {
  double f = 0;
  std::vector<double> w;  // d f / d q contributions keyed by product outcome
};

StateData state_data(const Geometry& geom, const std::vector<Mat>& eff, const Mat& rho,
                     double qfloor) {
  const std::size_t nf = geom.sizes.size();
  auto strides = geom.strides();
  // q-marginals accumulated from the product effects
  std::vector<std::vector<double>> q(nf);
  for (std::size_t i = 0; i < nf; ++i) q[i].assign(geom.sizes[i], 0.0);
  std::vector<double> traces(geom.n_eff);
  for (std::size_t t = 0; t < geom.n_eff; ++t) {
    traces[t] = (rho * eff[t]).trace().real();
    std::size_t rest = t;
    for (std::size_t i = 0; i < nf; ++i) {
      std::size_t xi = rest / strides[i];
      rest %= strides[i];
      q[i][xi] += traces[t];
    }
  }
  std::vector<std::vector<double>> p(nf);
  StateData out;
  for (std::size_t i = 0; i < nf; ++i) {
    p[i].resize(geom.sizes[i]);
    for (std::size_t x = 0; x < geom.sizes[i]; ++x) {
      p[i][x] = (rho * geom.targets[i][x]).trace().real();
      double qq = std::max(q[i][x], qfloor);
      q[i][x] = qq;
      out.f += s_floored(p[i][x], qq);
    }
  }
  out.w.assign(geom.n_eff, 0.0);
  for (std::size_t t = 0; t < geom.n_eff; ++t) {
    double w = 0;
    std::size_t rest = t;
    for (std::size_t i = 0; i < nf; ++i) {
      std::size_t xi = rest / strides[i];
      rest %= strides[i];
      if (p[i][xi] > 1e-12) w += -p[i][xi] / (q[i][xi] * kLn2);
    }
    out.w[t] = w;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Inner maximization over pure states.

SphereObjective divergence_objective(const std::vector<std::vector<Mat>>& targets,
                                     const std::vector<Mat>& eff,
                                     const std::vector<std::size_t>& sizes) {
  // One (target effect, marginal effect) pair per factor outcome.
  auto pairs = std::make_shared<std::vector<std::pair<Mat, Mat>>>();
  std::vector<std::size_t> strides(sizes.size(), 1);
  for (std::size_t i = sizes.size() - 1; i-- > 0;) strides[i] = strides[i + 1] * sizes[i + 1];
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    for (std::size_t x = 0; x < sizes[i]; ++x) {
      Mat marg = Mat::Zero(eff[0].rows(), eff[0].cols());
      for (std::size_t t = 0; t < eff.size(); ++t) {
        if ((t / strides[i]) % sizes[i] == x) marg += eff[t];
      }
      pairs->emplace_back(targets[i][x], marg);
    }
  }
  SphereObjective obj;
  obj.value = [pairs](const Vec& psi) {
    double f = 0;
    for (const auto& [ea, em] : *pairs) {
      double p = (psi.adjoint() * ea * psi)(0, 0).real();
      double q = std::max((psi.adjoint() * em * psi)(0, 0).real(), 1e-300);
      f += s_floored(p, q);
    }
    return f;
  };
  obj.grad = [pairs](const Vec& psi) {
    Mat g = Mat::Zero(psi.size(), psi.size());
    for (const auto& [ea, em] : *pairs) {
      double p = (psi.adjoint() * ea * psi)(0, 0).real();
      double q = std::max((psi.adjoint() * em * psi)(0, 0).real(), 1e-300);
      if (p > 1e-12) {
        g += (std::log2(p / q) + 1.0 / kLn2) * ea - (p / (q * kLn2)) * em;
      }
    }
    return g;
  };
  return obj;
}

std::vector<Vec> eigenvector_seeds(const std::vector<std::vector<Mat>>& targets,
                                   const std::vector<Mat>& eff) {
  std::vector<Vec> seeds;
  auto push_all = [&seeds](const Mat& m) {
    Eigen::SelfAdjointEigenSolver<Mat> es((m + m.adjoint()) / 2.0);
    for (Eigen::Index k = 0; k < es.eigenvectors().cols(); ++k) {
      seeds.push_back(es.eigenvectors().col(k));
    }
  };
  for (const auto& t : targets) {
    for (const Mat& e : t) push_all(e);
  }
  for (const Mat& e : eff) push_all(e);
  return seeds;
}

std::pair<double, Vec> inner_max(const Geometry& geom, const std::vector<Mat>& eff, int restarts,
                                 int iters, const std::vector<Vec>& extra_seeds, std::uint64_t seed,
                                 std::uint64_t stream) {
  std::vector<Vec> seeds = eigenvector_seeds(geom.targets, eff);
  seeds.insert(seeds.end(), extra_seeds.begin(), extra_seeds.end());
  Rng rng(seed, stream);
  for (int r = 0; r < restarts; ++r) seeds.push_back(rng.random_unit(geom.d));
  return maximize_on_sphere(divergence_objective(geom.targets, eff, geom.sizes), geom.d, seeds,
                            iters);
}

// ---------------------------------------------------------------------------
// Restricted minimization over the atlas and the duality certificate.

struct EvalAll {
  std::vector<double> fs;
  std::vector<std::vector<double>> ws;
};

EvalAll all_data(const Geometry& geom, const Blocks& c, const std::vector<Mat>& atlas,
                 double qfloor = 1e-9) {
  std::vector<Mat> eff = geom.to_eff(c);
  EvalAll out;
  for (const Mat& rho : atlas) {
    StateData sd = state_data(geom, eff, rho, qfloor);
    out.fs.push_back(sd.f);
    out.ws.push_back(std::move(sd.w));
  }
  return out;
}

double gnorm_inf(const Blocks& g) {
  double m = 0;
  for (const Mat& blk : g) {
    m = std::max(m, std::max(std::abs(max_eigenvalue(blk)), std::abs(-min_eigenvalue(blk, 1e-6))));
  }
  return m + 1e-30;
}

struct LseResult {
  Blocks c;
  std::vector<double> w;   // softmax weights over the atlas
  std::vector<double> fs;  // per-state values at the final candidate
};

LseResult mmw_lse(const Geometry& geom, const Blocks& c0, const std::vector<Mat>& atlas,
                  double tau, int iters) {
  auto eval = [&](const Blocks& c) {
    EvalAll ea = all_data(geom, c, atlas);
    double fmax = *std::max_element(ea.fs.begin(), ea.fs.end());
    std::vector<double> w(ea.fs.size());
    double zsum = 0;
    for (std::size_t k = 0; k < ea.fs.size(); ++k) {
      w[k] = std::exp(tau * kLn2 * (ea.fs[k] - fmax));
      zsum += w[k];
    }
    for (double& v : w) v /= zsum;
    double lse = fmax + std::log2(zsum) / tau;
    Blocks g = geom.grad(ea.ws, w, atlas);
    return std::tuple<double, Blocks, std::vector<double>, std::vector<double>>(
        lse, std::move(g), std::move(w), std::move(ea.fs));
  };
  Blocks c = c0;
  auto [f, g, w, fs] = eval(c);
  double eta = 1.0;
  for (int it = 0; it < iters; ++it) {
    Blocks c2 = geom.mmw(c, g, eta / gnorm_inf(g));
    auto [f2, g2, w2, fs2] = eval(c2);
    if (f2 < f - 1e-15) {
      c = std::move(c2);
      f = f2;
      g = std::move(g2);
      w = std::move(w2);
      fs = std::move(fs2);
      eta *= 1.3;
    } else {
      eta *= 0.5;
      if (eta < 1e-10) break;
    }
  }
  return {std::move(c), std::move(w), std::move(fs)};
}

struct RestrictedResult {
  double value = kInf;
  Blocks c;
  std::vector<double> w;
  std::vector<double> fs;
};

RestrictedResult restricted_solve(const Geometry& geom, const Blocks& warm,
                                  const std::vector<Mat>& atlas, int iters) {
  RestrictedResult best;
  const Blocks seeds[3] = {warm, geom.start(), geom.repair(geom.canonical(), 1e-6)};
  for (const Blocks& seed : seeds) {
    Blocks c = seed;
    LseResult res;
    for (double tau : {1e2, 1e3, 1e4}) {
      res = mmw_lse(geom, c, atlas, tau, iters);
      c = res.c;
    }
    double fmax = *std::max_element(res.fs.begin(), res.fs.end());
    if (fmax < best.value) {
      best = {fmax, std::move(res.c), std::move(res.w), std::move(res.fs)};
    }
  }
  return best;
}

double certify(const Geometry& geom, const Blocks& c0, const std::vector<Mat>& atlas,
               const std::vector<double>& mu, int remin_iters, int dual_steps) {
  auto eval = [&](const Blocks& c, double qfloor) {
    EvalAll ea = all_data(geom, c, atlas, qfloor);
    double f = 0;
    for (std::size_t k = 0; k < mu.size(); ++k) f += mu[k] * ea.fs[k];
    Blocks g = geom.grad(ea.ws, mu, atlas);
    return std::pair<double, Blocks>(f, std::move(g));
  };
  Blocks c = c0;
  auto [f, g] = eval(c, 1e-9);
  double eta = 1.0;
  for (int it = 0; it < remin_iters; ++it) {
    Blocks c2 = geom.mmw(c, g, eta / gnorm_inf(g));
    auto [f2, g2] = eval(c2, 1e-9);
    if (f2 < f - 1e-15) {
      c = std::move(c2);
      f = f2;
      g = std::move(g2);
      eta *= 1.3;
    } else {
      eta *= 0.5;
      if (eta < 1e-10) break;
    }
  }
  // Certificate on the exact objective: the mirror iterate is strictly
  // positive definite, so the tiny floor never binds and the linearization
  // plus the dual bound is a true lower bound for the convex problem.
  auto [fx, gx] = eval(c, 1e-300);
  return fx - geom.inner(gx, c) + geom.dual(gx, dual_steps);
}

double lower_bound(const Geometry& geom, const RestrictedResult& res, const std::vector<Mat>& atlas,
                   int remin_iters, int dual_steps) {
  double fmax = *std::max_element(res.fs.begin(), res.fs.end());
  std::vector<double> mu_active(res.fs.size(), 0.0);
  double count = 0;
  for (std::size_t k = 0; k < res.fs.size(); ++k) {
    if (res.fs[k] >= fmax - 1e-3) {
      mu_active[k] = 1.0;
      count += 1.0;
    }
  }
  for (double& v : mu_active) v /= count;
  double best = -kInf;
  for (const std::vector<double>* mu :
       std::initializer_list<const std::vector<double>*>{&res.w, &mu_active}) {
    best = std::max(best, certify(geom, res.c, atlas, *mu, remin_iters, dual_steps));
  }
  return best;
}

bool add_state(std::vector<Mat>& atlas, const Mat& rho, double tol = 1e-7) {
  for (const Mat& s : atlas) {
    if ((rho * s).trace().real() > 1.0 - tol) return false;
  }
  atlas.push_back(rho);
  return true;
}

// ---------------------------------------------------------------------------
// Exchange loop.

Bracket exchange(const Geometry& geom, const SolverConfig& cfg) {
  Bracket br;
  std::ofstream trace;
  if (!cfg.trace_path.empty()) trace.open(cfg.trace_path, std::ios::trunc);

  Blocks c = geom.start();
  Blocks witness = c;
  std::vector<Mat> atlas;
  std::vector<Vec> seeds;
  double lower = 0.0, upper = kInf;
  int stale = 0;
  int r = 0;
  for (; r < cfg.max_exchange_rounds; ++r) {
    Blocks cr = geom.repair(c, 1e-6);
    auto [val, psi] = inner_max(geom, geom.to_eff(cr), kExchangeRestarts, cfg.inner_iters, seeds,
                                cfg.seed, static_cast<std::uint64_t>(r) + 1);
    if (val < upper) {
      upper = val;
      witness = cr;
    }
    Mat rho = psi * psi.adjoint();
    if (add_state(atlas, rho)) {
      seeds.push_back(psi);
      stale = 0;
    } else {
      ++stale;
    }
    RestrictedResult res = restricted_solve(geom, cr, atlas, cfg.restricted_iters);
    double cert = lower_bound(geom, res, atlas, cfg.restricted_iters, cfg.dual_steps);
    lower = std::max(lower, std::min(cert, upper));
    c = std::move(res.c);
    br.trace.push_back({r, lower, upper, static_cast<int>(atlas.size())});
    if (trace.is_open()) {
      trace << "{\"round\":" << r << ",\"lower\":" << lower << ",\"upper\":" << upper
            << ",\"atlas_size\":" << atlas.size() << "}\n";
    }
    if (upper - lower <= cfg.outer_tol) {
      br.converged = true;
      ++r;
      break;
    }
    if (stale >= 2) {
      ++r;
      break;  // atlas stable and the restricted optimum stopped moving
    }
  }
  br.rounds_used = r;
  br.lower = lower;
  br.upper = upper;
  br.witness_measurement = geom.wrap(witness);
  for (const Mat& rho : atlas) br.witness_states.push_back(State{geom.d, rho});
  return br;
}

void check_common_dim(const std::vector<Observable>& obs) {
  for (const Observable& o : obs) {
    o.validate();
    if (o.dim != obs.front().dim) {
      throw std::invalid_argument("solver: observables must share one dimension");
    }
  }
}

void check_config(const SolverConfig& cfg) {
  if (cfg.step_schedule != "backtracking") {
    throw std::invalid_argument("solver: unknown step schedule '" + cfg.step_schedule + "'");
  }
  if (cfg.restarts < 1 || cfg.inner_iters < 1 || cfg.max_exchange_rounds < 1) {
    throw std::invalid_argument("solver: iteration budgets must be positive");
  }
}

}  // namespace

std::pair<double, Vec> maximize_on_sphere(const SphereObjective& obj, int dim,
                                          const std::vector<Vec>& seeds, int iters) {
  struct Result {
    double f = -kInf;
    Vec psi;
  };
  std::vector<Result> results(seeds.size());
  auto run_seed = [&](std::size_t k) {
    double n0 = seeds[k].norm();
    if (n0 < 1e-12) return;
    Vec psi = seeds[k] / n0;
    double f = obj.value(psi);
    for (int it = 0; it < iters; ++it) {
      Mat g = obj.grad(psi);
      Eigen::SelfAdjointEigenSolver<Mat> es((g + g.adjoint()) / 2.0);
      // Convexity in rho: jumping to the top eigenvector of the linearization
      // can only help; otherwise take a Riemannian ascent step.
      Vec cand = es.eigenvectors().col(dim - 1);
      double f2 = obj.value(cand);
      if (f2 > f + 1e-13) {
        psi = cand;
        f = f2;
        continue;
      }
      Vec grad_vec = g * psi;
      grad_vec -= psi.dot(grad_vec) * psi;
      double gn = grad_vec.norm();
      if (gn < 1e-11) break;
      double step = 0.5;
      bool ok = false;
      for (int bt = 0; bt < 50; ++bt) {
        Vec c2 = psi + step * grad_vec;
        c2 /= c2.norm();
        double fc = obj.value(c2);
        if (fc > f + 1e-4 * step * gn * gn) {
          psi = c2;
          f = fc;
          ok = true;
          break;
        }
        step *= 0.5;
      }
      if (!ok) break;
    }
    results[k] = {f, psi};
  };

  int nt = std::min<int>(thread_budget(), static_cast<int>(seeds.size()));
  if (nt <= 1) {
    for (std::size_t k = 0; k < seeds.size(); ++k) run_seed(k);
  } else {
    std::vector<std::thread> pool;
    std::size_t chunk = (seeds.size() + static_cast<std::size_t>(nt) - 1) / static_cast<std::size_t>(nt);
    for (int t = 0; t < nt; ++t) {
      std::size_t lo = static_cast<std::size_t>(t) * chunk;
      std::size_t hi = std::min(seeds.size(), lo + chunk);
      if (lo >= hi) break;
      pool.emplace_back([&run_seed, lo, hi] {
        for (std::size_t k = lo; k < hi; ++k) run_seed(k);
      });
    }
    for (std::thread& th : pool) th.join();
  }
  // Sequential reduction in seed order keeps the result independent of the
  // thread partition.
  Result best;
  for (const Result& res : results) {
    if (res.f > best.f) best = res;
  }
  return {best.f, best.psi};
}

namespace {

std::pair<double, State> divergence_eval(const std::vector<Observable>& targets,
                                         const MultiObservable& m, const SolverConfig& cfg) {
  check_config(cfg);
  check_common_dim(targets);
  m.validate();
  if (static_cast<int>(targets.size()) != m.factors()) {
    throw std::invalid_argument("max_over_states: target count does not match factors");
  }
  for (std::size_t i = 0; i < targets.size(); ++i) {
    if (targets[i].outcomes != m.outcome_sets[i]) {
      throw std::invalid_argument("max_over_states: outcome set mismatch");
    }
  }
  if (!divergence_finiteness_multi(targets, m)) {
    // Witness: a kernel vector of some marginal effect that the target still
    // detects with positive probability.
    double best_p = 0;
    Vec best_v;
    for (int i = 0; i < m.factors(); ++i) {
      Observable mi = m.marginal(i);
      for (std::size_t x = 0; x < mi.size(); ++x) {
        Eigen::SelfAdjointEigenSolver<Mat> es(
            (mi.effects[x] + mi.effects[x].adjoint()) / 2.0);
        for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
          if (es.eigenvalues()(k) < 1e-9) {
            Vec v = es.eigenvectors().col(k);
            double p =
                (v.adjoint() * targets[static_cast<std::size_t>(i)].effects[x] * v)(0, 0).real();
            if (p > best_p) {
              best_p = p;
              best_v = v;
            }
          }
        }
      }
    }
    return {kInf, pure_state(best_v)};
  }
  PovmGeometry geom(targets);
  auto [val, psi] =
      inner_max(geom, m.effects, cfg.restarts, cfg.inner_iters, {}, cfg.seed, 0);
  return {val, pure_state(psi)};
}

}  // namespace

std::pair<double, State> max_over_states(const Observable& a, const Observable& b,
                                         const BiObservable& m, const SolverConfig& cfg) {
  return divergence_eval({a, b}, m, cfg);
}

std::pair<double, State> max_over_states_multi(const std::vector<Observable>& targets,
                                               const MultiObservable& m, const SolverConfig& cfg) {
  return divergence_eval(targets, m, cfg);
}

Bracket icomp(const Observable& a, const Observable& b, const SolverConfig& cfg) {
  check_config(cfg);
  check_common_dim({a, b});
  PovmGeometry geom({a, b});
  return exchange(geom, cfg);
}

Bracket iad(const Observable& a, const Observable& b, const SolverConfig& cfg) {
  check_config(cfg);
  check_common_dim({a, b});
  InstrGeometry geom(a, b);
  return exchange(geom, cfg);
}

Bracket icomp_multi(const std::vector<Observable>& targets, const SolverConfig& cfg) {
  if (targets.size() < 2) {
    throw std::invalid_argument("icomp_multi: need at least two observables");
  }
  check_config(cfg);
  check_common_dim(targets);
  PovmGeometry geom(targets);
  return exchange(geom, cfg);
}

}  // namespace entrimur
