#include "mixlag/curve.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <string>

namespace mixlag {

namespace {
// A closed vertex list may end exactly where it started, or one lattice
// translation away (a loop winding around the torus); in both cases no
// implicit closing segment is wanted.
bool matches_mod_lattice(Vec2 a, Vec2 b) {
  const double dx = std::abs(a.x - b.x);
  const double dy = std::abs(a.y - b.y);
  auto near_int = [](double v) { return std::abs(v - std::round(v)) < 1e-12; };
  return near_int(dx) && near_int(dy);
}
}  // namespace

Curve::Curve(std::vector<Vec2> vertices, bool closed)
    : vertices_(std::move(vertices)), closed_(closed) {
  if (vertices_.size() < 2)
    throw std::invalid_argument("Curve: need at least two vertices");

  bool add_closing = false;
  if (closed_) {
    const Vec2 front = vertices_.front();
    const Vec2 back = vertices_.back();
    if (norm(back - front) < 1e-12) {
      vertices_.pop_back();  // repeated endpoint: polygon form
      add_closing = true;
      if (vertices_.size() < 2)
        throw std::invalid_argument("Curve: degenerate closed curve");
    } else if (matches_mod_lattice(front, back)) {
      add_closing = false;  // wrapped loop, already geometrically closed
    } else {
      add_closing = true;  // polygon without repeated endpoint
    }
  }

  const std::size_t nseg =
      closed_ ? (add_closing ? vertices_.size() : vertices_.size() - 1)
              : vertices_.size() - 1;
  segments_.reserve(nseg);
  for (std::size_t i = 0; i < nseg; ++i) {
    CurveSegment s;
    s.a = vertices_[i];
    s.b = vertices_[(i + 1) % vertices_.size()];
    const Vec2 d = s.b - s.a;
    s.length = norm(d);
    if (!(s.length > 0.0))
      throw std::invalid_argument("Curve: zero-length segment");
    s.midpoint = 0.5 * (s.a + s.b);
    s.tangent = (1.0 / s.length) * d;
    s.normal = {s.tangent.y, -s.tangent.x};
    segments_.push_back(s);
  }
}

Curve Curve::horizontal_line(double y0, int pieces, bool closed) {
  std::vector<Vec2> v;
  for (int i = 0; i <= pieces; ++i) v.push_back({double(i) / pieces, y0});
  return Curve(std::move(v), closed);
}

Curve Curve::vertical_line(double x0, int pieces, bool closed) {
  std::vector<Vec2> v;
  for (int i = 0; i <= pieces; ++i) v.push_back({x0, double(i) / pieces});
  return Curve(std::move(v), closed);
}

Curve Curve::circle(Vec2 center, double radius, int pieces) {
  if (pieces < 3) throw std::invalid_argument("Curve::circle: need >= 3 pieces");
  std::vector<Vec2> v;
  v.reserve(pieces);
  for (int i = 0; i < pieces; ++i) {
    const double a = 2.0 * std::numbers::pi * i / pieces;
    v.push_back({center.x + radius * std::cos(a), center.y + radius * std::sin(a)});
  }
  return Curve(std::move(v), true);
}

double Curve::length() const {
  double s = 0.0;
  for (const auto& seg : segments_) s += seg.length;
  return s;
}

void Curve::flip_orientation() {
  std::vector<Vec2> rev(vertices_.rbegin(), vertices_.rend());
  const bool closed = closed_;
  *this = Curve(std::move(rev), closed);
}

namespace {

// Counts crossings of the ray p + s*dir, s > 0, with the closed curve.
// Returns -1 when the ray passes suspiciously close to a vertex.
int ray_crossings(const Curve& curve, Vec2 p, Vec2 dir) {
  int crossings = 0;
  for (const auto& seg : curve.segments()) {
    const Vec2 e = seg.b - seg.a;
    const double denom = cross(dir, e);
    if (std::abs(denom) < 1e-14) continue;  // parallel
    const Vec2 w = seg.a - p;
    const double s = cross(w, e) / denom;    // along the ray
    const double t = cross(w, dir) / denom;  // along the segment
    if (s <= 0.0) continue;
    if (t < -1e-12 || t > 1.0 + 1e-12) continue;
    if (t < 1e-9 || t > 1.0 - 1e-9) return -1;  // hits a vertex; retry jittered
    ++crossings;
  }
  return crossings;
}

}  // namespace

bool point_inside(const Curve& curve, Vec2 p) {
  if (!curve.closed())
    throw std::invalid_argument("point_inside: curve must be closed");
  double angle = 0.123456789;  // arbitrary fixed direction
  for (int attempt = 0; attempt < 64; ++attempt) {
    const Vec2 dir{std::cos(angle), std::sin(angle)};
    const int c = ray_crossings(curve, p, dir);
    if (c >= 0) return (c % 2) == 1;
    angle += 1e-7;  // jitter past the vertex
  }
  throw std::runtime_error("point_inside: ray casting failed to resolve parity");
}

void orient_outward(Curve& curve) {
  if (!curve.closed())
    throw std::invalid_argument("orient_outward: curve must be closed");
  const CurveSegment& s = curve.segments().front();
  const double step = 1e-6 * std::max(s.length, 1e-6);
  const Vec2 probe = s.midpoint + step * s.normal;
  if (point_inside(curve, probe)) curve.flip_orientation();
}

Curve read_curve(std::istream& is) {
  std::string header;
  if (!(is >> header))
    throw std::invalid_argument("read_curve: missing header line");
  bool closed;
  if (header == "closed")
    closed = true;
  else if (header == "open")
    closed = false;
  else
    throw std::invalid_argument("read_curve: header must be 'closed' or 'open'");
  std::vector<Vec2> v;
  double x, y;
  while (is >> x >> y) v.push_back({x, y});
  return Curve(std::move(v), closed);
}

void write_curve(const Curve& curve, std::ostream& os) {
  os << (curve.closed() ? "closed" : "open") << "\n";
  for (const Vec2& p : curve.vertices()) os << p.x << " " << p.y << "\n";
}

}  // namespace mixlag
