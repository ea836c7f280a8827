#pragma once

#include <optional>
#include <string>

#include "entrimur/quantum.hpp"

namespace entrimur {

// Fixture pairs with special compatibility structure, used by tests and the
// appendix report command.
struct GalleryCase {
  std::string name;
  Observable a, b;
  std::optional<BiObservable> provided_joint;
  std::string notes;
};

// Dimension-3 pair with |X| = 2, |Y| = 5 and an explicit joint measurement:
// compatible, and the second observable admits a nondisturbing instrument
// for the first direction of sequential measurement.
GalleryCase hw_example_1();

// Pair built from uniform smearings of two noncommuting projections p and q
// at mixing weight lambda in (1/2, 2/3]; an explicit four-effect joint makes
// the pair compatible, yet every instrument measuring the first observable
// disturbs the second.
GalleryCase hw_example_2(double lambda, const Mat& p_proj, const Mat& q_proj);

// Defaults: lambda = 0.6, rank-one qubit projections along the 3-axis and at
// 45 degrees in the 1-3 plane.
GalleryCase hw_example_2();

}  // namespace entrimur
