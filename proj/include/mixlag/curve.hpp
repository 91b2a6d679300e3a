// Oriented polylines with per-segment quadrature data, used for surface-area
// and flux integrals along material interfaces.  The unit normal of a segment
// is the right-hand normal of its tangent, so boundaries traversed
// counterclockwise carry outward normals.
#pragma once

#include <iosfwd>
#include <vector>

#include "mixlag/vec2.hpp"

namespace mixlag {

struct CurveSegment {
  Vec2 a, b;
  Vec2 midpoint;
  Vec2 tangent;  // unit
  Vec2 normal;   // unit, right of tangent
  double length = 0.0;
};

class Curve {
 public:
  Curve() = default;
  Curve(std::vector<Vec2> vertices, bool closed);

  static Curve horizontal_line(double y0, int pieces = 1, bool closed = true);
  static Curve vertical_line(double x0, int pieces = 1, bool closed = true);
  static Curve circle(Vec2 center, double radius, int pieces);

  const std::vector<Vec2>& vertices() const { return vertices_; }
  const std::vector<CurveSegment>& segments() const { return segments_; }
  bool closed() const { return closed_; }
  double length() const;

  void flip_orientation();

 private:
  std::vector<Vec2> vertices_;
  bool closed_ = false;
  std::vector<CurveSegment> segments_;
};

// Even-odd parity test against a closed polyline; ties with vertices are
// broken by jittering the ray direction by 1e-7 radians.
bool point_inside(const Curve& curve, Vec2 p);

// Fixes the orientation of a closed contractible curve so that segment
// normals point outward (ray-cast parity from segment midpoints).
void orient_outward(Curve& curve);

// Plain-text format: first line "closed" or "open", then one "x y" pair per
// line.
Curve read_curve(std::istream& is);
void write_curve(const Curve& curve, std::ostream& os);

}  // namespace mixlag
