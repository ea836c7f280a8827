#pragma once

#include <complex>
#include <limits>

#include <Eigen/Dense>

namespace entrimur {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline constexpr double kPsdTol = 1e-9;
inline constexpr double kHermTol = 1e-10;
inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Entrywise max-abs comparison with an explicit absolute tolerance.
bool approx_equal(const Mat& a, const Mat& b, double tol);

bool is_hermitian(const Mat& m, double tol = kHermTol);

// Smallest eigenvalue of a Hermitian matrix. Throws on non-Hermitian input.
double min_eigenvalue(const Mat& h, double herm_tol = kHermTol);

// PSD test: min eigenvalue >= -tol.
bool is_psd(const Mat& m, double tol = kPsdTol);

// Kronecker product; (a (x) b)(c (x) d) = (ac) (x) (bd) on compatible shapes.
Mat tensor(const Mat& a, const Mat& b);

// Trace over tensor factor `which` (1 or 2) of a (d1*d2)-square matrix.
// Preserves the total trace.
Mat partial_trace(const Mat& m, Eigen::Index d1, Eigen::Index d2, int which);

// Orthogonal projector of (C^d)^(x n) onto its symmetric subspace, built by
// averaging the n! permutation operators. Rank = binomial(d+n-1, n).
Mat symmetric_projector(int d, int n);

// Spectral calculus on the Hermitian part (A+A*)/2.
Mat psd_clip(const Mat& m);                       // eigenvalues clamped to >= 0
Mat mat_sqrt(const Mat& m);                       // sqrt of the clipped spectrum
Mat inv_sqrt(const Mat& m, double floor = 1e-30); // 1/sqrt with eigenvalue floor
Mat mat_log(const Mat& m, double floor = 1e-300);
Mat mat_exp_capped(const Mat& m, double cap = 300.0);  // eigenvalues clamped to [-cap, cap]

double max_eigenvalue(const Mat& h);
double operator_norm(const Mat& m);  // largest singular value

}  // namespace entrimur
