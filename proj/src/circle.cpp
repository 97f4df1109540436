#include "circpoly/circle.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "circpoly/error.hpp"

namespace circpoly {

namespace {

// Point of the extended line in homogeneous form; (1, 0) is infinity.
struct Homog {
  Complex x;
  Complex y;
};

Complex hdet(const Homog& a, const Homog& b) { return a.x * b.y - b.x * a.y; }

double cross2(Complex a, Complex b) { return a.real() * b.imag() - a.imag() * b.real(); }

// Oriented auxiliary circle orthogonal to both inputs: a line through `base`
// along `dir`, or the unit circle about `base` traversed counterclockwise.
struct Auxiliary {
  bool is_line;
  Complex base;
  Complex dir;
};

struct MarkedPair {
  Homog first;
  Homog second;
};

// Intersections of the auxiliary circle with c, ordered so that the arc of
// the auxiliary circle from first to second lies in the companion disk.
MarkedPair mark(const Auxiliary& aux, const PlanarOrientedCircle& c) {
  using Kind = PlanarOrientedCircle::Kind;
  if (aux.is_line) {
    if (c.kind == Kind::Circle) {
      double s0 = std::real(std::conj(aux.dir) * (c.center - aux.base));
      double s1 = s0 - c.radius;
      double s2 = s0 + c.radius;
      Complex mid = aux.base + s0 * aux.dir;
      bool segment_inside = c.in_disk(mid);
      Homog a{aux.base + s1 * aux.dir, 1.0};
      Homog b{aux.base + s2 * aux.dir, 1.0};
      return segment_inside ? MarkedPair{a, b} : MarkedPair{b, a};
    }
    // A line crossing the auxiliary line: one finite point and infinity.
    Complex normal = Complex(0.0, 1.0) * c.direction;
    double denom = std::real(std::conj(normal) * aux.dir);
    double s = (c.offset - std::real(std::conj(normal) * aux.base)) / denom;
    Homog finite{aux.base + s * aux.dir, 1.0};
    Homog inf{1.0, 0.0};
    Complex beyond = aux.base + (s + 1.0) * aux.dir;
    return c.in_disk(beyond) ? MarkedPair{finite, inf} : MarkedPair{inf, finite};
  }
  // Auxiliary unit circle about a point of the line c.
  Complex p = aux.base + c.direction;
  Complex q = aux.base - c.direction;
  // Counterclockwise arc from p to q has midpoint base + i*direction.
  Complex mid = aux.base + Complex(0.0, 1.0) * c.direction;
  Homog hp{p, 1.0};
  Homog hq{q, 1.0};
  return c.in_disk(mid) ? MarkedPair{hp, hq} : MarkedPair{hq, hp};
}

bool same_unoriented(const PlanarOrientedCircle& a, const PlanarOrientedCircle& b, double tol) {
  using Kind = PlanarOrientedCircle::Kind;
  if (a.kind != b.kind) return false;
  if (a.kind == Kind::Circle) {
    return std::abs(a.center - b.center) <= tol * (1.0 + std::abs(a.center)) &&
           approx_equal(a.radius, b.radius, tol);
  }
  double along = std::abs(cross2(a.direction, b.direction));
  if (along > tol) return false;
  double sign = std::real(std::conj(a.direction) * b.direction) > 0 ? 1.0 : -1.0;
  return approx_equal(a.offset, sign * b.offset, tol);
}

}  // namespace

PlanarOrientedCircle PlanarOrientedCircle::circle(Complex center, double radius, int orientation) {
  PlanarOrientedCircle c;
  c.kind = Kind::Circle;
  c.center = center;
  c.radius = radius;
  c.orientation = orientation >= 0 ? 1 : -1;
  return c;
}

PlanarOrientedCircle PlanarOrientedCircle::line(Complex direction, double offset, int orientation) {
  PlanarOrientedCircle c;
  c.kind = Kind::Line;
  c.direction = direction / std::abs(direction);
  c.offset = offset;
  c.orientation = orientation >= 0 ? 1 : -1;
  return c;
}

bool PlanarOrientedCircle::in_disk(Complex z) const {
  if (kind == Kind::Circle) {
    double r = std::abs(z - center);
    return orientation > 0 ? r < radius : r > radius;
  }
  double h = std::imag(std::conj(direction) * z) - offset;
  return orientation > 0 ? h > 0.0 : h < 0.0;
}

OrientedCircle OrientedCircle::from_lorentz(const Vec4& x) { return OrientedCircle(normalize_spacelike(x)); }

OrientedCircle OrientedCircle::from_cap(const SphericalCap& cap) {
  Vec3 p = cap.center.normalized();
  double s = std::sin(cap.radius);
  Vec4 v;
  v.head<3>() = p / s;
  v[3] = std::cos(cap.radius) / s;
  return OrientedCircle(v);
}

OrientedCircle OrientedCircle::from_planar(const PlanarOrientedCircle& c) {
  Vec4 v;
  if (c.kind == PlanarOrientedCircle::Kind::Circle) {
    double a = -c.orientation / c.radius;
    double b = a * (c.radius * c.radius - std::norm(c.center));
    v << -c.center.real() * a, c.center.imag() * a, (a + b) / 2.0, (b - a) / 2.0;
  } else {
    Complex nu = static_cast<double>(c.orientation) * Complex(0.0, 1.0) * c.direction;
    double d = c.orientation * c.offset;
    v << nu.real(), -nu.imag(), d, d;
  }
  return from_lorentz(v);
}

OrientedCircle OrientedCircle::through(const Vec3& q1, const Vec3& q2, const Vec3& q3) {
  Vec4 x = complement(null_of(q1), null_of(q2), null_of(q3));
  Vec3 normal = (q2 - q1).cross(q3 - q1);
  if (normal.dot(x.head<3>()) < 0.0) x = -x;
  return from_lorentz(x);
}

OrientedCircle OrientedCircle::reversed() const { return OrientedCircle(-v_); }

SphericalCap OrientedCircle::to_cap() const {
  Vec3 a = v_.head<3>();
  return SphericalCap{a.normalized(), std::atan2(1.0, v_[3])};
}

PlanarOrientedCircle OrientedCircle::to_planar() const {
  double a = v_[2] - v_[3];
  double scale = 1.0 + v_.cwiseAbs().maxCoeff();
  if (std::abs(a) <= 1e-13 * scale) {
    Complex nu(v_[0], -v_[1]);
    double len = std::abs(nu);
    Complex dir = Complex(0.0, -1.0) * nu / len;
    return PlanarOrientedCircle::line(dir, (v_[2] + v_[3]) / 2.0 / len, 1);
  }
  if (std::abs(a) < 1e-10 * scale)
    throw Error(ErrorCode::NearPoleDegeneracy, "circle passes too close to the projection pole");
  Complex center(-v_[0] / a, v_[1] / a);
  return PlanarOrientedCircle::circle(center, 1.0 / std::abs(a), a < 0 ? 1 : -1);
}

std::array<Vec3, 3> OrientedCircle::sample_points() const {
  SphericalCap cap = to_cap();
  Vec3 u = perpendicular_unit(cap.center);
  Vec3 w = cap.center.cross(u);
  std::array<Vec3, 3> pts;
  for (int k = 0; k < 3; ++k) {
    double th = 2.0 * std::numbers::pi * k / 3.0;
    pts[k] = std::cos(cap.radius) * cap.center + std::sin(cap.radius) * (std::cos(th) * u + std::sin(th) * w);
  }
  return pts;
}

double inv_dist_spherical(const SphericalCap& c1, const SphericalCap& c2) {
  return (-c1.center.dot(c2.center) + std::cos(c1.radius) * std::cos(c2.radius)) /
         (std::sin(c1.radius) * std::sin(c2.radius));
}

double inv_dist_crossratio(const PlanarOrientedCircle& c1, const PlanarOrientedCircle& c2, double tol) {
  using Kind = PlanarOrientedCircle::Kind;
  if (same_unoriented(c1, c2, tol)) throw Error(ErrorCode::DegeneratePair, "circles coincide");

  Auxiliary aux{true, 0.0, 1.0};
  if (c1.kind == Kind::Circle && c2.kind == Kind::Circle) {
    Complex gap = c2.center - c1.center;
    aux.base = c1.center;
    aux.dir = std::abs(gap) > 0.0 ? gap / std::abs(gap) : Complex(1.0, 0.0);
  } else if (c1.kind == Kind::Circle || c2.kind == Kind::Circle) {
    const auto& round = c1.kind == Kind::Circle ? c1 : c2;
    const auto& straight = c1.kind == Kind::Circle ? c2 : c1;
    aux.base = round.center;
    aux.dir = Complex(0.0, 1.0) * straight.direction;
  } else {
    double det = cross2(c1.direction, c2.direction);
    if (std::abs(det) > tol) {
      // Intersection point of the two lines; unit circle about it.
      Complex n1 = Complex(0.0, 1.0) * c1.direction;
      Complex n2 = Complex(0.0, 1.0) * c2.direction;
      Eigen::Matrix2d m;
      m << n1.real(), n1.imag(), n2.real(), n2.imag();
      Eigen::Vector2d rhs(c1.offset, c2.offset);
      Eigen::Vector2d sol = m.partialPivLu().solve(rhs);
      aux = Auxiliary{false, Complex(sol[0], sol[1]), 1.0};
    } else {
      aux.base = Complex(0.0, 1.0) * c1.direction * c1.offset;
      aux.dir = Complex(0.0, 1.0) * c1.direction;
    }
  }

  MarkedPair z = mark(aux, c1);
  MarkedPair w = mark(aux, c2);
  Complex cr = hdet(z.first, w.first) * hdet(z.second, w.second) /
               (hdet(z.first, z.second) * hdet(w.first, w.second));
  return 2.0 * cr.real() - 1.0;
}

double inv_dist(const OrientedCircle& c1, const OrientedCircle& c2) { return -eta(c1.lorentz(), c2.lorentz()); }

double circle_distance(const OrientedCircle& a, const OrientedCircle& b) {
  double scale = std::max({1.0, a.lorentz().cwiseAbs().maxCoeff(), b.lorentz().cwiseAbs().maxCoeff()});
  return (a.lorentz() - b.lorentz()).cwiseAbs().maxCoeff() / scale;
}

double unoriented_distance(const OrientedCircle& a, const OrientedCircle& b) {
  return std::min(circle_distance(a, b), circle_distance(a.reversed(), b));
}

std::string_view pair_tag_name(PairTag tag) {
  switch (tag) {
    case PairTag::CoupledNested: return "coupled_nested";
    case PairTag::CoupledEnclosing: return "coupled_enclosing";
    case PairTag::Separated: return "separated";
    case PairTag::Tangent: return "tangent";
    case PairTag::Orthogonal: return "orthogonal";
    case PairTag::OverlappingAcute: return "overlapping_acute";
    case PairTag::OverlappingObtuse: return "overlapping_obtuse";
  }
  return "unknown";
}

PairClass classify_pair(const OrientedCircle& c1, const OrientedCircle& c2, double tol) {
  double d = inv_dist(c1, c2);
  // For d >= 1 the disks are disjoint exactly when the radii sum below pi,
  // i.e. when the cotangents of the radii have positive sum.
  bool disks_apart = c1.lorentz()[3] + c2.lorentz()[3] > 0.0;
  PairClass pc{};
  pc.invdist = d;
  bool near_plus = approx_equal(d, 1.0, tol);
  bool near_minus = approx_equal(d, -1.0, tol);
  pc.non_unitary = !near_plus && !near_minus;
  if (near_plus || near_minus) {
    pc.tag = PairTag::Tangent;
    pc.uncoupled = near_plus && disks_apart;
  } else if (std::abs(d) <= tol) {
    pc.tag = PairTag::Orthogonal;
    pc.uncoupled = true;
  } else if (d < -1.0) {
    pc.tag = PairTag::CoupledNested;
    pc.uncoupled = false;
  } else if (d > 1.0) {
    pc.tag = disks_apart ? PairTag::Separated : PairTag::CoupledEnclosing;
    pc.uncoupled = disks_apart;
  } else {
    pc.tag = d > 0.0 ? PairTag::OverlappingAcute : PairTag::OverlappingObtuse;
    pc.uncoupled = true;
  }
  pc.segregated = pc.uncoupled && d >= -tol;
  pc.separated = pc.tag == PairTag::Separated;
  pc.deep_overlap = pc.tag == PairTag::OverlappingObtuse;
  return pc;
}

std::vector<Vec4> null_directions(const Vec4& a, const Vec4& b) {
  Eigen::Matrix2d g;
  g << eta(a, a), eta(a, b), eta(a, b), eta(b, b);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(g);
  double l1 = es.eigenvalues()[0];
  double l2 = es.eigenvalues()[1];
  double scale = std::max(std::abs(l1), std::abs(l2));
  if (!(l1 < -1e-14 * scale && l2 > 1e-14 * scale)) return {};
  Eigen::Vector2d u1 = es.eigenvectors().col(0);
  Eigen::Vector2d u2 = es.eigenvectors().col(1);
  std::vector<Vec4> out;
  for (double sign : {1.0, -1.0}) {
    Eigen::Vector2d x = sign * std::sqrt(l2) * u1 + std::sqrt(-l1) * u2;
    Vec4 n = x[0] * a + x[1] * b;
    if (n[3] < 0.0) n = -n;
    out.push_back(n);
  }
  return out;
}

namespace {

std::array<Vec4, 2> complement_plane(const Vec4& a, const Vec4& b) {
  std::array<Vec4, 4> cand;
  for (int i = 0; i < 4; ++i) cand[i] = complement(a, b, Vec4::Unit(i));
  int best = 0;
  for (int i = 1; i < 4; ++i)
    if (cand[i].norm() > cand[best].norm()) best = i;
  Vec4 first = cand[best].normalized();
  int second = -1;
  double second_norm = -1.0;
  for (int i = 0; i < 4; ++i) {
    if (i == best) continue;
    Vec4 r = cand[i] - cand[i].dot(first) * first;
    if (r.norm() > second_norm) {
      second_norm = r.norm();
      second = i;
    }
  }
  Vec4 r = cand[second] - cand[second].dot(first) * first;
  return {first, r.normalized()};
}

}  // namespace

FamilyInfo coaxial_family(const OrientedCircle& c1, const OrientedCircle& c2, double tol) {
  if (unoriented_distance(c1, c2) <= tol) throw Error(ErrorCode::IdenticalCircles, "coaxial family of one circle");
  const Vec4& a = c1.lorentz();
  const Vec4& b = c2.lorentz();
  double d = inv_dist(c1, c2);
  FamilyInfo info;
  info.perp_basis = complement_plane(a, b);
  if (approx_equal(std::abs(d), 1.0, tol)) {
    info.tag = FamilyTag::Parabolic;
    Vec4 n = a - eta(a, b) * b;
    if (n[3] < 0.0) n = -n;
    info.points.push_back(point_of_null(n));
    return info;
  }
  std::vector<Vec4> nulls;
  if (std::abs(d) > 1.0) {
    info.tag = FamilyTag::Hyperbolic;
    nulls = null_directions(a, b);
  } else {
    info.tag = FamilyTag::Elliptic;
    nulls = null_directions(info.perp_basis[0], info.perp_basis[1]);
  }
  for (const Vec4& n : nulls) info.points.push_back(point_of_null(n));
  return info;
}

bool are_coaxial(const OrientedCircle& a, const OrientedCircle& b, const OrientedCircle& c, double tol) {
  Eigen::MatrixXd m(3, 4);
  m.row(0) = a.lorentz().normalized().transpose();
  m.row(1) = b.lorentz().normalized().transpose();
  m.row(2) = c.lorentz().normalized().transpose();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& s = svd.singularValues();
  return s[2] <= tol * s[0];
}

OrientedCircle ortho_circle(const OrientedCircle& c1, const OrientedCircle& c2, const OrientedCircle& c3,
                            double tol) {
  if (are_coaxial(c1, c2, c3, tol)) throw Error(ErrorCode::Coaxial, "three circles are coaxial");
  Vec4 x = complement(c1.lorentz(), c2.lorentz(), c3.lorentz());
  x.normalize();
  if (eta(x, x) <= tol) throw Error(ErrorCode::NoRealOrthoCircle, "common orthogonal vector is not space-like");
  return OrientedCircle::from_lorentz(x);
}

OrthoFit fit_ortho_circle(const std::vector<OrientedCircle>& circles, double tol) {
  const Eigen::Index n = static_cast<Eigen::Index>(circles.size());
  if (n < 3) throw Error(ErrorCode::Coaxial, "fewer than three circles");
  Eigen::MatrixXd m(n, 4);
  for (Eigen::Index i = 0; i < n; ++i) {
    Vec4 row = circles[i].lorentz();
    row[3] = -row[3];
    m.row(i) = row.normalized().transpose();
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  double margin = s[2] / s[0];
  if (margin <= tol) throw Error(ErrorCode::Coaxial, "face circles span fewer than three dimensions");
  Vec4 x = svd.matrixV().col(3);
  if (eta(x, x) <= tol) throw Error(ErrorCode::NoRealOrthoCircle, "face has no real ortho-circle");
  OrientedCircle o = OrientedCircle::from_lorentz(x);
  double residual = 0.0;
  for (const auto& c : circles) residual = std::max(residual, std::abs(inv_dist(o, c)));
  return OrthoFit{o, residual, margin};
}

OrientedCircle antipodal_image(const OrientedCircle& c) {
  Vec4 v = c.lorentz();
  v[3] = -v[3];
  return OrientedCircle::from_lorentz(v);
}

OrientedCircle antipodal_reversed(const OrientedCircle& c) { return antipodal_image(c).reversed(); }

}  // namespace circpoly
