#include "entrimur/gallery.hpp"

#include <cmath>
#include <stdexcept>

namespace entrimur {

namespace {

Mat real3(double a11, double a12, double a13, double a21, double a22, double a23, double a31,
          double a32, double a33) {
  Mat m(3, 3);
  m << cplx(a11, 0), cplx(a12, 0), cplx(a13, 0), cplx(a21, 0), cplx(a22, 0), cplx(a23, 0),
      cplx(a31, 0), cplx(a32, 0), cplx(a33, 0);
  return m;
}

void check_marginals(const GalleryCase& g) {
  if (!g.provided_joint) return;
  Observable m1 = g.provided_joint->marginal(0);
  Observable m2 = g.provided_joint->marginal(1);
  for (std::size_t x = 0; x < g.a.size(); ++x) {
    if ((m1.effects[x] - g.a.effects[x]).norm() > 1e-10) {
      throw std::logic_error("gallery: first marginal mismatch");
    }
  }
  for (std::size_t y = 0; y < g.b.size(); ++y) {
    if ((m2.effects[y] - g.b.effects[y]).norm() > 1e-10) {
      throw std::logic_error("gallery: second marginal mismatch");
    }
  }
}

}  // namespace

GalleryCase hw_example_1() {
  const double r2 = std::sqrt(2.0);
  GalleryCase g;
  g.name = "example-1";
  g.notes =
      "compatible pair in dimension 3; a measure-and-prepare instrument for "
      "the five-outcome observable implements it without disturbing the other";

  g.a.dim = 3;
  g.a.outcomes = {"1", "2"};
  g.a.effects = {real3(2, 0, 0, 0, 0, 0, 0, 0, 1) / 2.0, real3(0, 0, 0, 0, 2, 0, 0, 0, 1) / 2.0};

  g.b.dim = 3;
  g.b.outcomes = {"1", "2", "3", "4", "5"};
  g.b.effects = {real3(2, 0, -r2, 0, 0, 0, -r2, 0, 1) / 4.0,
                 real3(0, 0, 0, 0, 1, -2, 0, -2, 4) / 10.0,
                 real3(0, 0, 0, 0, 1, 0, 0, 0, 0) / 2.0,
                 real3(0, 0, 0, 0, 4, 2, 0, 2, 1) / 10.0,
                 real3(2, 0, r2, 0, 0, 0, r2, 0, 1) / 4.0};

  std::vector<Mat> joint(10, Mat::Zero(3, 3));
  joint[0] = g.b.effects[0];  // (1,1)
  joint[4] = g.b.effects[4];  // (1,5)
  joint[6] = g.b.effects[1];  // (2,2)
  joint[7] = g.b.effects[2];  // (2,3)
  joint[8] = g.b.effects[3];  // (2,4)
  g.provided_joint = make_biobservable(3, g.a.outcomes, g.b.outcomes, joint);

  g.a.validate();
  g.b.validate();
  g.provided_joint->validate();
  check_marginals(g);
  return g;
}

GalleryCase hw_example_2(double lambda, const Mat& p_proj, const Mat& q_proj) {
  if (!(lambda > 0.5 && lambda <= 2.0 / 3.0 + 1e-12)) {
    throw std::invalid_argument("hw_example_2: lambda must lie in (1/2, 2/3]");
  }
  auto check_projection = [](const Mat& p) {
    if (!is_hermitian(p) || (p * p - p).norm() > 1e-9) {
      throw std::invalid_argument("hw_example_2: argument is not a projection");
    }
  };
  check_projection(p_proj);
  check_projection(q_proj);
  if ((p_proj * q_proj - q_proj * p_proj).norm() < 1e-12) {
    throw std::invalid_argument("hw_example_2: projections must not commute");
  }
  int d = static_cast<int>(p_proj.rows());
  Mat id = Mat::Identity(d, d);

  GalleryCase g;
  g.name = "example-2";
  g.notes =
      "uniform smearings of two noncommuting projections; an explicit joint "
      "exists, yet measuring the first observable disturbs the second";

  g.a.dim = g.b.dim = d;
  g.a.outcomes = g.b.outcomes = {"1", "2"};
  Mat a1 = lambda * p_proj + (1 - lambda) * (id - p_proj);
  Mat b1 = lambda * q_proj + (1 - lambda) * (id - q_proj);
  g.a.effects = {a1, id - a1};
  g.b.effects = {b1, id - b1};

  std::vector<Mat> joint = {(1 - lambda) * id, (2 * lambda - 1) * p_proj,
                            (2 * lambda - 1) * q_proj,
                            lambda * id + (1 - 2 * lambda) * (p_proj + q_proj)};
  g.provided_joint = make_biobservable(d, g.a.outcomes, g.b.outcomes, joint);

  g.a.validate();
  g.b.validate();
  g.provided_joint->validate();
  check_marginals(g);
  return g;
}

GalleryCase hw_example_2() {
  Mat p(2, 2);
  p << 1, 0, 0, 0;
  const double r2 = std::sqrt(2.0);
  Mat q(2, 2);
  // Rank-one projection along (1/sqrt(2), 0, 1/sqrt(2)).
  q << cplx(0.5 + 0.5 / r2, 0), cplx(0.5 / r2, 0), cplx(0.5 / r2, 0), cplx(0.5 - 0.5 / r2, 0);
  return hw_example_2(0.6, p, q);
}

}  // namespace entrimur
