#pragma once

#include <array>
#include <complex>
#include <optional>
#include <string_view>
#include <vector>

#include "circpoly/lorentz.hpp"

namespace circpoly {

inline constexpr double kDefaultTol = 1e-9;

using Complex = std::complex<double>;

// Absolute-plus-relative comparison used by every predicate decision.
inline bool approx_equal(double a, double b, double tol) {
  double scale = 1.0 + (std::abs(a) > std::abs(b) ? std::abs(a) : std::abs(b));
  return std::abs(a - b) <= tol * scale;
}

// Companion disk given by its spherical center and radius.
struct SphericalCap {
  Vec3 center;
  double radius;
};

// Oriented circle or line of the plane; the companion disk lies to the left.
// A line is {z : Im(conj(direction) z) = offset}, traversed along +direction
// when orientation is +1.
struct PlanarOrientedCircle {
  enum class Kind { Circle, Line };

  Kind kind = Kind::Circle;
  Complex center{};
  double radius = 1.0;
  Complex direction{1.0, 0.0};
  double offset = 0.0;
  int orientation = 1;

  static PlanarOrientedCircle circle(Complex center, double radius, int orientation = 1);
  static PlanarOrientedCircle line(Complex direction, double offset, int orientation = 1);

  // Strict membership in the companion disk.
  bool in_disk(Complex z) const;
};

// Oriented circle on the sphere as a unit space-like vector; the companion
// disk is {q : eta(v, (q, 1)) > 0}.
class OrientedCircle {
 public:
  OrientedCircle() = default;

  // Rescales to unit norm; throws NoRealOrthoCircle if x is not space-like.
  static OrientedCircle from_lorentz(const Vec4& x);
  static OrientedCircle from_cap(const SphericalCap& cap);
  static OrientedCircle from_planar(const PlanarOrientedCircle& c);
  // Circle through three distinct sphere points, oriented so that they are
  // met in the given order.
  static OrientedCircle through(const Vec3& q1, const Vec3& q2, const Vec3& q3);

  const Vec4& lorentz() const { return v_; }
  OrientedCircle reversed() const;

  SphericalCap to_cap() const;
  // Throws NearPoleDegeneracy when the boundary passes too close to the pole.
  PlanarOrientedCircle to_planar() const;

  // Signed membership: > 0 inside the companion disk, 0 on the circle.
  double side(const Vec3& q) const { return eta(v_, null_of(q)); }

  // Three boundary points in orientation order.
  std::array<Vec3, 3> sample_points() const;

 private:
  explicit OrientedCircle(const Vec4& v) : v_(v) {}
  Vec4 v_ = Vec4(0.0, 0.0, 1.0, 0.0);
};

inline OrientedCircle reverse_orientation(const OrientedCircle& c) { return c.reversed(); }

double inv_dist_spherical(const SphericalCap& c1, const SphericalCap& c2);
// Throws DegeneratePair when the circles coincide as unoriented circles.
double inv_dist_crossratio(const PlanarOrientedCircle& c1, const PlanarOrientedCircle& c2,
                           double tol = kDefaultTol);
double inv_dist(const OrientedCircle& c1, const OrientedCircle& c2);

// Largest coordinate difference of the unit vectors relative to their size.
double circle_distance(const OrientedCircle& a, const OrientedCircle& b);
// Same, ignoring orientation.
double unoriented_distance(const OrientedCircle& a, const OrientedCircle& b);

enum class PairTag {
  CoupledNested,
  CoupledEnclosing,
  Separated,
  Tangent,
  Orthogonal,
  OverlappingAcute,
  OverlappingObtuse,
};

std::string_view pair_tag_name(PairTag tag);

struct PairClass {
  PairTag tag;
  double invdist;
  bool uncoupled;
  bool segregated;
  bool separated;
  bool deep_overlap;
  bool non_unitary;
};

PairClass classify_pair(const OrientedCircle& c1, const OrientedCircle& c2, double tol = kDefaultTol);

enum class FamilyTag { Elliptic, Parabolic, Hyperbolic };

struct FamilyInfo {
  FamilyTag tag;
  // Common points for elliptic families, limit points for hyperbolic ones.
  std::vector<Vec3> points;
  // Basis of the orthogonal complement family.
  std::array<Vec4, 2> perp_basis;
};

FamilyInfo coaxial_family(const OrientedCircle& c1, const OrientedCircle& c2, double tol = kDefaultTol);

// Null directions of the plane spanned by a and b; empty if the plane has
// no real null lines.
std::vector<Vec4> null_directions(const Vec4& a, const Vec4& b);

// Unique circle orthogonal to three non-coaxial circles, with arbitrary
// orientation.  Throws Coaxial or NoRealOrthoCircle.
OrientedCircle ortho_circle(const OrientedCircle& c1, const OrientedCircle& c2,
                            const OrientedCircle& c3, double tol = kDefaultTol);

struct OrthoFit {
  OrientedCircle circle;
  double residual;        // max |eta(O, c_i)|
  double rank_margin;     // third singular value over the first
};

// Least-squares common orthogonal circle of n >= 3 circles.  Throws Coaxial
// when the system has rank < 3 and NoRealOrthoCircle when the null
// direction is not space-like; the caller gates the residual.
OrthoFit fit_ortho_circle(const std::vector<OrientedCircle>& circles, double tol = kDefaultTol);

// Rank test for three circles, relative to their normalized rows.
bool are_coaxial(const OrientedCircle& a, const OrientedCircle& b, const OrientedCircle& c,
                 double tol = kDefaultTol);

// Image of the oriented curve under the antipodal map.  The map reverses the
// orientation of the sphere, so the new companion disk is the image of the
// old complement.
OrientedCircle antipodal_image(const OrientedCircle& c);
// The same followed by orientation reversal: the companion disk is carried
// along, so coupling and inversive distances are kept while the cyclic order
// of every face flips.
OrientedCircle antipodal_reversed(const OrientedCircle& c);

}  // namespace circpoly
