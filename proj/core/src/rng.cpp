#include "entrimur/rng.hpp"

#include <cmath>

namespace entrimur {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void round_once(std::array<std::uint32_t, 4>& x, const std::array<std::uint32_t, 2>& k) {
  std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * x[0];
  std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * x[2];
  std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32), lo0 = static_cast<std::uint32_t>(p0);
  std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32), lo1 = static_cast<std::uint32_t>(p1);
  x = {hi1 ^ x[1] ^ k[0], lo1, hi0 ^ x[3] ^ k[1], lo0};
}

}  // namespace

std::array<std::uint32_t, 4> philox4x32(const std::array<std::uint32_t, 4>& counter,
                                        const std::array<std::uint32_t, 2>& key) {
  std::array<std::uint32_t, 4> x = counter;
  std::array<std::uint32_t, 2> k = key;
  for (int r = 0; r < 10; ++r) {
    if (r > 0) {
      k[0] += kWeyl0;
      k[1] += kWeyl1;
    }
    round_once(x, k);
  }
  return x;
}

Rng::Rng(std::uint64_t seed, std::uint64_t stream)
    : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
      stream_(stream) {}

std::uint32_t Rng::next_u32() {
  if (pos_ == 4) {
    std::array<std::uint32_t, 4> ctr = {
        static_cast<std::uint32_t>(block_), static_cast<std::uint32_t>(block_ >> 32),
        static_cast<std::uint32_t>(stream_), static_cast<std::uint32_t>(stream_ >> 32)};
    buf_ = philox4x32(ctr, key_);
    ++block_;
    pos_ = 0;
  }
  return buf_[pos_++];
}

double Rng::uniform() {
  std::uint64_t hi = next_u32();
  std::uint64_t lo = next_u32();
  std::uint64_t bits = (hi << 21) | (lo >> 11);  // 53 random bits
  return static_cast<double>(bits) * 0x1p-53;
}

double Rng::normal() {
  if (have_cached_normal_) {
    have_cached_normal_ = false;
    return cached_normal_;
  }
  double u1 = 0.0;
  while (u1 <= 0.0) u1 = uniform();
  double u2 = uniform();
  double r = std::sqrt(-2.0 * std::log(u1));
  cached_normal_ = r * std::sin(2.0 * M_PI * u2);
  have_cached_normal_ = true;
  return r * std::cos(2.0 * M_PI * u2);
}

Vec Rng::random_unit(int d) {
  Vec v(d);
  for (int i = 0; i < d; ++i) v(i) = cplx(normal(), normal());
  return v / v.norm();
}

Mat Rng::random_unitary(int d) {
  Mat g(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) g(i, j) = cplx(normal(), normal());
  }
  Eigen::HouseholderQR<Mat> qr(g);
  Mat q = qr.householderQ();
  Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix column phases so the distribution is Haar.
  for (int j = 0; j < d; ++j) {
    cplx rjj = r(j, j);
    double a = std::abs(rjj);
    q.col(j) *= (a > 0 ? rjj / a : cplx(1, 0));
  }
  return q;
}

Mat Rng::random_pure_state(int d) {
  Vec v = random_unit(d);
  return v * v.adjoint();
}

Mat Rng::random_density(int d) {
  Mat g(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) g(i, j) = cplx(normal(), normal());
  }
  Mat rho = g * g.adjoint();
  return rho / rho.trace().real();
}

}  // namespace entrimur
