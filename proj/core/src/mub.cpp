#include "entrimur/mub.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace entrimur {

namespace {

constexpr double kTwoPi = 6.28318530717958647692;

bool is_prime(int p) {
  if (p < 2) return false;
  for (int q = 2; q * q <= p; ++q) {
    if (p % q == 0) return false;
  }
  return true;
}

using Poly = std::vector<int>;  // coefficients, index = degree

int degree(const Poly& a) {
  for (int k = static_cast<int>(a.size()) - 1; k >= 0; --k) {
    if (a[static_cast<std::size_t>(k)] != 0) return k;
  }
  return -1;
}

Poly poly_mul(const Poly& a, const Poly& b, int p) {
  Poly out(a.size() + b.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      out[i + j] = (out[i + j] + a[i] * b[j]) % p;
    }
  }
  return out;
}

// Remainder of a modulo a monic divisor.
Poly poly_rem(Poly a, const Poly& m, int p) {
  int dm = degree(m);
  for (int k = degree(a); k >= dm; k = degree(a)) {
    int c = a[static_cast<std::size_t>(k)];
    for (int j = 0; j <= dm; ++j) {
      std::size_t idx = static_cast<std::size_t>(k - dm + j);
      a[idx] = ((a[idx] - c * m[static_cast<std::size_t>(j)]) % p + p) % p;
    }
  }
  return a;
}

Poly element_poly(int e, int p, int n) {
  Poly c(static_cast<std::size_t>(n), 0);
  for (int k = 0; k < n && e > 0; ++k) {
    c[static_cast<std::size_t>(k)] = e % p;
    e /= p;
  }
  return c;
}

int poly_element(const Poly& c, int p, int n) {
  int e = 0;
  for (int k = n - 1; k >= 0; --k) e = e * p + c[static_cast<std::size_t>(k)];
  return e;
}

bool irreducible(const Poly& m, int p) {
  int n = degree(m);
  if (n <= 1) return n == 1;
  // Trial division by every monic polynomial of degree up to n/2.
  for (int dd = 1; 2 * dd <= n; ++dd) {
    int count = 1;
    for (int k = 0; k < dd; ++k) count *= p;
    for (int enc = 0; enc < count; ++enc) {
      Poly b = element_poly(enc, p, dd);
      b.push_back(1);
      if (degree(poly_rem(m, b, p)) < 0) return false;
    }
  }
  return true;
}

}  // namespace

FiniteField::FiniteField(int p, int n) : p_(p), n_(n) {
  if (!is_prime(p)) throw std::invalid_argument("field_construct: p must be prime");
  if (n < 1) throw std::invalid_argument("field_construct: degree must be positive");
  long long d = 1;
  for (int k = 0; k < n; ++k) {
    d *= p;
    if (d > 64) throw std::invalid_argument("field_construct: p^n must not exceed 64");
  }
  d_ = static_cast<int>(d);

  for (int enc = 0;; ++enc) {
    if (enc >= d_) throw std::logic_error("field_construct: no irreducible modulus found");
    Poly m = element_poly(enc, p_, n_);
    m.push_back(1);
    if (irreducible(m, p_)) {
      modulus_ = m;
      break;
    }
  }

  add_.assign(static_cast<std::size_t>(d_), std::vector<int>(static_cast<std::size_t>(d_), 0));
  mul_ = add_;
  neg_.assign(static_cast<std::size_t>(d_), 0);
  inv_.assign(static_cast<std::size_t>(d_), -1);
  for (int a = 0; a < d_; ++a) {
    Poly pa = element_poly(a, p_, n_);
    Poly na(pa.size(), 0);
    for (std::size_t k = 0; k < pa.size(); ++k) na[k] = (p_ - pa[k]) % p_;
    neg_[static_cast<std::size_t>(a)] = poly_element(na, p_, n_);
    for (int b = 0; b < d_; ++b) {
      Poly pb = element_poly(b, p_, n_);
      Poly sum(pa.size(), 0);
      for (std::size_t k = 0; k < pa.size(); ++k) sum[k] = (pa[k] + pb[k]) % p_;
      add_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = poly_element(sum, p_, n_);
      Poly prod = poly_rem(poly_mul(pa, pb, p_), modulus_, p_);
      prod.resize(static_cast<std::size_t>(n_), 0);
      mul_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = poly_element(prod, p_, n_);
    }
  }
  for (int a = 1; a < d_; ++a) {
    for (int b = 1; b < d_; ++b) {
      if (mul_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] == 1) {
        inv_[static_cast<std::size_t>(a)] = b;
        break;
      }
    }
  }
}

int FiniteField::check(int a) const {
  if (a < 0 || a >= d_) throw std::invalid_argument("FiniteField: element out of range");
  return a;
}

int FiniteField::inv(int a) const {
  check(a);
  if (a == 0) throw std::invalid_argument("FiniteField: zero has no inverse");
  return inv_[static_cast<std::size_t>(a)];
}

int FiniteField::pow(int a, long long e) const {
  check(a);
  if (e < 0) return pow(inv(a), -e);
  int r = 1;
  int base = a;
  while (e > 0) {
    if (e & 1) r = mul(r, base);
    base = mul(base, base);
    e >>= 1;
  }
  return r;
}

FiniteField field_construct(int p, int n) { return FiniteField(p, n); }

int field_trace(const FiniteField& f, int x) {
  int t = 0;
  long long q = 1;
  for (int k = 0; k < f.n(); ++k) {
    t = f.add(t, f.pow(x, q));
    q *= f.p();
  }
  if (t >= f.p()) throw std::logic_error("field_trace: value not in the prime subfield");
  return t;
}

Mat fourier(const FiniteField& f) {
  int d = f.size();
  Mat out(d, d);
  double root = std::sqrt(static_cast<double>(d));
  for (int z = 0; z < d; ++z) {
    for (int t = 0; t < d; ++t) {
      double theta = -kTwoPi * field_trace(f, f.mul(z, t)) / f.p();
      out(z, t) = std::polar(1.0 / root, theta);
    }
  }
  return out;
}

std::pair<Observable, Observable> mub_pair(const FiniteField& f) {
  int d = f.size();
  Mat fm = fourier(f);
  Observable q, p;
  q.dim = p.dim = d;
  for (int x = 0; x < d; ++x) {
    q.outcomes.push_back(std::to_string(x));
    p.outcomes.push_back(std::to_string(x));
    Vec delta = Vec::Zero(d);
    delta(x) = 1;
    q.effects.push_back(delta * delta.adjoint());
    Vec omega = fm.adjoint() * delta;
    p.effects.push_back(omega * omega.adjoint());
  }
  return {q, p};
}

Mat weyl(const FiniteField& f, PhasePoint u) {
  int d = f.size();
  Mat w = Mat::Zero(d, d);
  for (int z = 0; z < d; ++z) {
    int src = f.sub(z, u.u1);
    double theta = kTwoPi * field_trace(f, f.mul(u.u2, src)) / f.p();
    w(z, src) = std::polar(1.0, theta);
  }
  return w;
}

Mat squeeze(const FiniteField& f, int a) {
  if (a == 0) throw std::invalid_argument("squeeze: parameter must be nonzero");
  int d = f.size();
  int ainv = f.inv(a);
  Mat m = Mat::Zero(d, d);
  for (int z = 0; z < d; ++z) m(z, f.mul(ainv, z)) = 1;
  return m;
}

BiObservable covariant_phase_space_obs(const FiniteField& f, const State& tau) {
  tau.validate();
  int d = f.size();
  if (tau.dim != d) {
    throw std::invalid_argument("covariant_phase_space_obs: state dimension mismatch");
  }
  std::vector<std::string> labels;
  for (int x = 0; x < d; ++x) labels.push_back(std::to_string(x));
  std::vector<Mat> effects;
  for (int x = 0; x < d; ++x) {
    for (int y = 0; y < d; ++y) {
      Mat w = weyl(f, {x, y});
      effects.push_back(w * tau.rho * w.adjoint() / static_cast<double>(d));
    }
  }
  return make_biobservable(d, labels, labels, effects);
}

std::pair<BiObservable, double> optimal_mub_measurement(const FiniteField& f) {
  int d = f.size();
  Mat fm = fourier(f);
  double root = std::sqrt(static_cast<double>(d));
  double lambda0 = 1.0 - root / (2 * (root + 1));
  std::vector<std::string> labels;
  for (int x = 0; x < d; ++x) labels.push_back(std::to_string(x));
  std::vector<Mat> effects;
  double norm = 2 * (d + root);
  for (int x = 0; x < d; ++x) {
    for (int y = 0; y < d; ++y) {
      Vec psi = Vec::Zero(d);
      psi(x) = 1;
      Vec delta = Vec::Zero(d);
      delta(f.neg(y)) = 1;
      double theta = -kTwoPi * field_trace(f, f.mul(x, y)) / f.p();
      psi += std::polar(1.0, theta) * (fm * delta);
      effects.push_back(psi * psi.adjoint() / norm);
    }
  }
  BiObservable m = make_biobservable(d, labels, labels, effects);
  auto [q, p] = mub_pair(f);
  State mix = maximally_mixed(d);
  Observable qn = noisy_version(q, lambda0, mix);
  Observable pn = noisy_version(p, lambda0, mix);
  Observable m1 = m.marginal(0);
  Observable m2 = m.marginal(1);
  for (int x = 0; x < d; ++x) {
    if ((m1.effects[static_cast<std::size_t>(x)] - qn.effects[static_cast<std::size_t>(x)]).norm() >
            1e-10 ||
        (m2.effects[static_cast<std::size_t>(x)] - pn.effects[static_cast<std::size_t>(x)]).norm() >
            1e-10) {
      throw std::logic_error("optimal_mub_measurement: marginals are not the noisy pair");
    }
  }
  return {m, lambda0};
}

MubSandwich mub_bound_sandwich(const FiniteField& f, const SolverConfig& cfg) {
  int d = f.size();
  double root = std::sqrt(static_cast<double>(d));
  MubSandwich s;
  s.lower = std::log2(2 * root / (root + 1));
  s.upper = 2 * std::log2(2 * (d + 1) / (static_cast<double>(d) + 3));
  auto [m, lambda0] = optimal_mub_measurement(f);
  (void)lambda0;
  auto [q, p] = mub_pair(f);
  s.value = max_over_states(q, p, m, cfg).first;
  if (!(s.value >= s.lower - 1e-9 && s.value <= s.upper + 1e-6)) {
    throw std::logic_error("mub_bound_sandwich: value escaped the bracket");
  }
  return s;
}

}  // namespace entrimur
