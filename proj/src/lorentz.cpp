#include "circpoly/lorentz.hpp"

#include <cmath>

#include "circpoly/error.hpp"

namespace circpoly {

Vec4 complement(const Vec4& a, const Vec4& b, const Vec4& c) {
  Eigen::Matrix4d m;
  m.row(1) = a.transpose();
  m.row(2) = b.transpose();
  m.row(3) = c.transpose();
  Vec4 w;
  for (int i = 0; i < 4; ++i) {
    m.row(0) = Eigen::RowVector4d::Unit(i);
    w[i] = m.determinant();
  }
  w[3] = -w[3];
  return w;
}

Vec4 normalize_spacelike(const Vec4& x) {
  double q = eta(x, x);
  if (!(q > 0.0)) throw Error(ErrorCode::NoRealOrthoCircle, "vector is not space-like");
  return x / std::sqrt(q);
}

}  // namespace circpoly
