#pragma once

#include <array>
#include <cstdint>

#include "entrimur/linalg.hpp"

namespace entrimur {

// One round-10 Philox 4x32 block. Counter-based: the same (counter, key)
// always produces the same block, so independent streams are cheap.
std::array<std::uint32_t, 4> philox4x32(const std::array<std::uint32_t, 4>& counter,
                                        const std::array<std::uint32_t, 2>& key);

// Deterministic generator: key from `seed`, counter words 2..3 from `stream`.
// Distinct (seed, stream) pairs give statistically independent sequences.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint32_t next_u32();
  double uniform();   // [0, 1)
  double normal();    // standard Gaussian (Box-Muller)

  Vec random_unit(int d);       // Haar-like unit vector from complex Gaussians
  Mat random_unitary(int d);    // QR of a complex Gaussian matrix, phase-fixed
  Mat random_pure_state(int d); // projector onto random_unit
  Mat random_density(int d);    // full-rank random density matrix

 private:
  std::array<std::uint32_t, 2> key_;
  std::uint64_t block_ = 0;
  std::uint64_t stream_ = 0;
  std::array<std::uint32_t, 4> buf_{};
  int pos_ = 4;
  bool have_cached_normal_ = false;
  double cached_normal_ = 0.0;
};

}  // namespace entrimur
