#include "entrimur/linalg.hpp"

#include <numeric>
#include <stdexcept>
#include <vector>

namespace entrimur {

bool approx_equal(const Mat& a, const Mat& b, double tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  return (a - b).cwiseAbs().maxCoeff() <= tol;
}

bool is_hermitian(const Mat& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

double min_eigenvalue(const Mat& h, double herm_tol) {
  if (!is_hermitian(h, herm_tol)) {
    throw std::invalid_argument("min_eigenvalue: matrix is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<Mat> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

bool is_psd(const Mat& m, double tol) {
  return is_hermitian(m, 1e-8) && min_eigenvalue(m, 1e-8) >= -tol;
}

Mat tensor(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Mat partial_trace(const Mat& m, Eigen::Index d1, Eigen::Index d2, int which) {
  if (m.rows() != d1 * d2 || m.cols() != d1 * d2) {
    throw std::invalid_argument("partial_trace: size does not match factor dimensions");
  }
  if (which == 1) {
    Mat out = Mat::Zero(d2, d2);
    for (Eigen::Index a = 0; a < d2; ++a) {
      for (Eigen::Index b = 0; b < d2; ++b) {
        cplx s = 0;
        for (Eigen::Index i = 0; i < d1; ++i) s += m(i * d2 + a, i * d2 + b);
        out(a, b) = s;
      }
    }
    return out;
  }
  if (which == 2) {
    Mat out = Mat::Zero(d1, d1);
    for (Eigen::Index i = 0; i < d1; ++i) {
      for (Eigen::Index j = 0; j < d1; ++j) {
        cplx s = 0;
        for (Eigen::Index a = 0; a < d2; ++a) s += m(i * d2 + a, j * d2 + a);
        out(i, j) = s;
      }
    }
    return out;
  }
  throw std::invalid_argument("partial_trace: factor index must be 1 or 2");
}

namespace {

void permutations_of(int n, std::vector<std::vector<int>>& out) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
}

}  // namespace

Mat symmetric_projector(int d, int n) {
  if (d < 1 || n < 1) throw std::invalid_argument("symmetric_projector: bad arguments");
  Eigen::Index dim = 1;
  for (int k = 0; k < n; ++k) dim *= d;
  std::vector<std::vector<int>> perms;
  permutations_of(n, perms);
  Mat sum = Mat::Zero(dim, dim);
  std::vector<int> digits(n);
  for (Eigen::Index col = 0; col < dim; ++col) {
    Eigen::Index rest = col;
    for (int k = n - 1; k >= 0; --k) {
      digits[k] = static_cast<int>(rest % d);
      rest /= d;
    }
    // Slot k of the image receives digit perm[k]; ranging over all perms
    // enumerates every factor-permutation operator exactly once.
    for (const auto& perm : perms) {
      Eigen::Index row = 0;
      for (int k = 0; k < n; ++k) row = row * d + digits[perm[k]];
      sum(row, col) += 1.0;
    }
  }
  return sum / static_cast<double>(perms.size());
}

namespace {

template <typename F>
Mat spectral_map(const Mat& m, F f) {
  Mat h = (m + m.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Mat> es(h);
  Eigen::VectorXd w = es.eigenvalues();
  for (Eigen::Index i = 0; i < w.size(); ++i) w(i) = f(w(i));
  return es.eigenvectors() * w.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

Mat psd_clip(const Mat& m) {
  return spectral_map(m, [](double x) { return x > 0 ? x : 0.0; });
}

Mat mat_sqrt(const Mat& m) {
  return spectral_map(m, [](double x) { return x > 0 ? std::sqrt(x) : 0.0; });
}

Mat inv_sqrt(const Mat& m, double floor) {
  return spectral_map(m, [floor](double x) { return 1.0 / std::sqrt(x > floor ? x : floor); });
}

Mat mat_log(const Mat& m, double floor) {
  return spectral_map(m, [floor](double x) { return std::log(x > floor ? x : floor); });
}

Mat mat_exp_capped(const Mat& m, double cap) {
  return spectral_map(m, [cap](double x) { return std::exp(x > cap ? cap : (x < -cap ? -cap : x)); });
}

double max_eigenvalue(const Mat& h) {
  Mat hh = (h + h.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Mat> es(hh, Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff();
}

double operator_norm(const Mat& m) {
  Eigen::JacobiSVD<Mat> svd(m);
  return svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
}

}  // namespace entrimur
