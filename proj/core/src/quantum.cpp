#include "entrimur/quantum.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

namespace entrimur {

void ProbabilityDistribution::validate(double tol) const {
  if (outcomes.size() != weights.size()) {
    throw std::invalid_argument("distribution: outcome/weight size mismatch");
  }
  double sum = 0;
  for (double w : weights) {
    if (!(w >= -tol)) throw std::invalid_argument("distribution: negative weight");
    sum += w;
  }
  if (std::abs(sum - 1.0) > tol) throw std::invalid_argument("distribution: weights do not sum to 1");
}

ProbabilityDistribution uniform_distribution(const std::vector<std::string>& outcomes) {
  std::vector<double> w(outcomes.size(), 1.0 / static_cast<double>(outcomes.size()));
  return {outcomes, w};
}

ProbabilityDistribution point_distribution(const std::vector<std::string>& outcomes, int at) {
  std::vector<double> w(outcomes.size(), 0.0);
  w.at(at) = 1.0;
  return {outcomes, w};
}

namespace {

void check_effects(int dim, const std::vector<Mat>& effects, double psd_tol, double sum_tol,
                   const char* who) {
  if (effects.empty()) throw std::invalid_argument(std::string(who) + ": no effects");
  Mat sum = Mat::Zero(dim, dim);
  for (const Mat& e : effects) {
    if (e.rows() != dim || e.cols() != dim) {
      throw std::invalid_argument(std::string(who) + ": effect dimension mismatch");
    }
    if (!is_hermitian(e, 1e-8) || min_eigenvalue((e + e.adjoint()) / 2.0) < -psd_tol) {
      throw std::invalid_argument(std::string(who) + ": effect not PSD");
    }
    sum += e;
  }
  if (!approx_equal(sum, Mat::Identity(dim, dim), sum_tol)) {
    throw std::invalid_argument(std::string(who) + ": effects do not sum to identity");
  }
}

void check_distinct(const std::vector<std::string>& labels, const char* who) {
  std::set<std::string> seen(labels.begin(), labels.end());
  if (seen.size() != labels.size()) {
    throw std::invalid_argument(std::string(who) + ": duplicate outcome labels");
  }
}

}  // namespace

void Observable::validate(double psd_tol, double sum_tol) const {
  if (outcomes.size() != effects.size()) {
    throw std::invalid_argument("observable: outcome/effect size mismatch");
  }
  check_distinct(outcomes, "observable");
  check_effects(dim, effects, psd_tol, sum_tol, "observable");
}

bool Observable::is_sharp(double tol) const {
  for (const Mat& e : effects) {
    if (!approx_equal(e * e, e, tol)) return false;
  }
  return true;
}

std::size_t MultiObservable::flat_index(const std::vector<int>& idx) const {
  if (idx.size() != outcome_sets.size()) {
    throw std::invalid_argument("multi-observable: index arity mismatch");
  }
  std::size_t flat = 0;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (idx[i] < 0 || idx[i] >= static_cast<int>(outcome_sets[i].size())) {
      throw std::out_of_range("multi-observable: outcome index out of range");
    }
    flat = flat * outcome_sets[i].size() + static_cast<std::size_t>(idx[i]);
  }
  return flat;
}

std::vector<int> MultiObservable::unflatten(std::size_t flat) const {
  std::vector<int> idx(outcome_sets.size());
  for (std::size_t i = outcome_sets.size(); i-- > 0;) {
    idx[i] = static_cast<int>(flat % outcome_sets[i].size());
    flat /= outcome_sets[i].size();
  }
  return idx;
}

Observable MultiObservable::marginal(int factor) const {
  if (factor < 0 || factor >= factors()) {
    throw std::out_of_range("multi-observable: marginal factor out of range");
  }
  const auto& labels = outcome_sets[static_cast<std::size_t>(factor)];
  std::vector<Mat> out(labels.size(), Mat::Zero(dim, dim));
  for (std::size_t flat = 0; flat < effects.size(); ++flat) {
    out[static_cast<std::size_t>(unflatten(flat)[static_cast<std::size_t>(factor)])] +=
        effects[flat];
  }
  return Observable{dim, labels, out};
}

void MultiObservable::validate(double psd_tol, double sum_tol) const {
  std::size_t expect = 1;
  for (const auto& set : outcome_sets) {
    check_distinct(set, "multi-observable");
    expect *= set.size();
  }
  if (effects.size() != expect) {
    throw std::invalid_argument("multi-observable: effect count does not match outcome grid");
  }
  check_effects(dim, effects, psd_tol, sum_tol, "multi-observable");
}

BiObservable make_biobservable(int dim, std::vector<std::string> outcomes1,
                               std::vector<std::string> outcomes2, std::vector<Mat> effects) {
  BiObservable m;
  m.dim = dim;
  m.outcome_sets = {std::move(outcomes1), std::move(outcomes2)};
  m.effects = std::move(effects);
  return m;
}

void State::validate(double psd_tol, double trace_tol) const {
  if (rho.rows() != dim || rho.cols() != dim) {
    throw std::invalid_argument("state: dimension mismatch");
  }
  if (!is_hermitian(rho, 1e-8) || min_eigenvalue((rho + rho.adjoint()) / 2.0) < -psd_tol) {
    throw std::invalid_argument("state: not PSD");
  }
  if (std::abs(rho.trace().real() - 1.0) > trace_tol || std::abs(rho.trace().imag()) > trace_tol) {
    throw std::invalid_argument("state: trace is not 1");
  }
}

bool State::is_pure(double tol) const {
  return std::abs((rho * rho).trace().real() - 1.0) <= tol;
}

State pure_state(const Vec& psi) {
  Vec v = psi / psi.norm();
  return State{static_cast<int>(v.size()), v * v.adjoint()};
}

State maximally_mixed(int dim) {
  return State{dim, Mat::Identity(dim, dim) / static_cast<double>(dim)};
}

void Instrument::validate(double psd_tol, double tp_tol) const {
  if (outcomes.size() != choi.size()) {
    throw std::invalid_argument("instrument: outcome/block size mismatch");
  }
  check_distinct(outcomes, "instrument");
  const Eigen::Index big = static_cast<Eigen::Index>(dim_in) * dim_out;
  Mat total = Mat::Zero(dim_in, dim_in);
  for (std::size_t x = 0; x < choi.size(); ++x) {
    if (choi[x].rows() != big || choi[x].cols() != big) {
      throw std::invalid_argument("instrument: Choi block dimension mismatch");
    }
    if (!is_hermitian(choi[x], 1e-8) ||
        min_eigenvalue((choi[x] + choi[x].adjoint()) / 2.0) < -psd_tol) {
      throw std::invalid_argument("instrument: Choi block not PSD");
    }
    total += input_reduction(static_cast<int>(x));
  }
  if (!approx_equal(total, Mat::Identity(dim_in, dim_in), tp_tol)) {
    throw std::invalid_argument("instrument: total map is not trace preserving");
  }
}

Mat Instrument::input_reduction(int x) const {
  // Row/column blocks are indexed by the input space; tracing the output
  // index of choi[x] yields the operator whose total must be the identity.
  const Mat& c = choi.at(static_cast<std::size_t>(x));
  Mat out = Mat::Zero(dim_in, dim_in);
  for (int i = 0; i < dim_in; ++i) {
    for (int j = 0; j < dim_in; ++j) {
      cplx s = 0;
      for (int a = 0; a < dim_out; ++a) s += c(i * dim_out + a, j * dim_out + a);
      out(i, j) = s;
    }
  }
  return out;
}

Mat Instrument::apply(int x, const Mat& rho) const {
  if (rho.rows() != dim_in || rho.cols() != dim_in) {
    throw std::invalid_argument("instrument apply: dimension mismatch");
  }
  const Mat& c = choi.at(static_cast<std::size_t>(x));
  Mat out = Mat::Zero(dim_out, dim_out);
  for (int a = 0; a < dim_out; ++a) {
    for (int b = 0; b < dim_out; ++b) {
      cplx s = 0;
      for (int i = 0; i < dim_in; ++i) {
        for (int j = 0; j < dim_in; ++j) {
          s += rho(i, j) * c(i * dim_out + a, j * dim_out + b);
        }
      }
      out(a, b) = s;
    }
  }
  return out;
}

Mat Instrument::adjoint_apply(int x, const Mat& f) const {
  if (f.rows() != dim_out || f.cols() != dim_out) {
    throw std::invalid_argument("instrument adjoint: dimension mismatch");
  }
  const Mat& c = choi.at(static_cast<std::size_t>(x));
  Mat out = Mat::Zero(dim_in, dim_in);
  for (int i = 0; i < dim_in; ++i) {
    for (int j = 0; j < dim_in; ++j) {
      cplx s = 0;
      for (int a = 0; a < dim_out; ++a) {
        for (int b = 0; b < dim_out; ++b) {
          s += c(i * dim_out + a, j * dim_out + b) * f(b, a);
        }
      }
      out(j, i) = s;
    }
  }
  return out;
}

Instrument lueders_instrument(const Observable& a) {
  Instrument j;
  j.dim_in = j.dim_out = a.dim;
  j.outcomes = a.outcomes;
  const int d = a.dim;
  for (const Mat& e : a.effects) {
    Mat k = mat_sqrt(e);
    // Choi block of rho -> K rho K*: rank one on vec(K^T).
    Vec v(d * d);
    for (int i = 0; i < d; ++i) {
      for (int out = 0; out < d; ++out) v(i * d + out) = k(out, i);
    }
    j.choi.push_back(v * v.adjoint());
  }
  return j;
}

ProbabilityDistribution outcome_distribution(const Observable& o, const State& rho) {
  if (o.dim != rho.dim) throw std::invalid_argument("outcome_distribution: dimension mismatch");
  std::vector<double> w(o.size());
  double sum = 0;
  for (std::size_t x = 0; x < o.size(); ++x) {
    double p = (rho.rho * o.effects[x]).trace().real();
    if (p < 0 && p > -1e-9) p = 0;
    if (p > 1 && p < 1 + 1e-9) p = 1;
    w[x] = p;
    sum += p;
  }
  if (std::abs(sum - 1.0) < 1e-9 && sum != 1.0) {
    for (double& v : w) v /= sum;
  }
  return {o.outcomes, w};
}

Observable trivial_observable(int dim, const ProbabilityDistribution& p) {
  Observable o;
  o.dim = dim;
  o.outcomes = p.outcomes;
  for (double w : p.weights) o.effects.push_back(w * Mat::Identity(dim, dim));
  return o;
}

Observable uniform_observable(int dim, const std::vector<std::string>& outcomes) {
  return trivial_observable(dim, uniform_distribution(outcomes));
}

Observable noisy_version(const Observable& o, double lambda, const State& rho0) {
  ProbabilityDistribution p = outcome_distribution(o, rho0);
  Observable out;
  out.dim = o.dim;
  out.outcomes = o.outcomes;
  for (std::size_t x = 0; x < o.size(); ++x) {
    Mat e = lambda * o.effects[x] +
            (1.0 - lambda) * p.weights[x] * Mat::Identity(o.dim, o.dim);
    if (min_eigenvalue((e + e.adjoint()) / 2.0) < -kPsdTol) {
      throw std::invalid_argument("noisy_version: effect not PSD at this lambda");
    }
    out.effects.push_back(e);
  }
  return out;
}

BiObservable sequential_measurement(const Instrument& j, const Observable& b) {
  if (j.dim_out != b.dim) {
    throw std::invalid_argument("sequential_measurement: dimension mismatch");
  }
  std::vector<Mat> effects;
  effects.reserve(j.size() * b.size());
  for (std::size_t x = 0; x < j.size(); ++x) {
    for (std::size_t y = 0; y < b.size(); ++y) {
      effects.push_back(j.adjoint_apply(static_cast<int>(x), b.effects[y]));
    }
  }
  return make_biobservable(j.dim_in, j.outcomes, b.outcomes, std::move(effects));
}

Instrument sharp_b_instrument(const BiObservable& m, const Observable& b) {
  if (m.factors() != 2) throw std::invalid_argument("sharp_b_instrument: need a bi-observable");
  if (!b.is_sharp()) throw std::invalid_argument("sharp_b_instrument: b is not sharp");
  if (m.outcome_sets[1] != b.outcomes) {
    throw std::invalid_argument("sharp_b_instrument: outcome sets do not match");
  }
  const int d = m.dim;
  Instrument j;
  j.dim_in = j.dim_out = d;
  j.outcomes = m.outcome_sets[0];
  const std::size_t nx = m.outcome_sets[0].size();
  const std::size_t ny = m.outcome_sets[1].size();
  for (std::size_t x = 0; x < nx; ++x) {
    // J_x[rho] = sum_y Tr{rho M(x,y)} b(y)/Tr{b(y)}; in Choi form the
    // trace functional against M(x,y) contributes M(x,y)^T (x) (normalized b(y)).
    Mat block = Mat::Zero(d * d, d * d);
    for (std::size_t y = 0; y < ny; ++y) {
      double tr = b.effects[y].trace().real();
      if (tr <= 0) continue;
      block += tensor(m.effects[x * ny + y].transpose(), b.effects[y] / tr);
    }
    j.choi.push_back(block);
  }
  return j;
}

}  // namespace entrimur
