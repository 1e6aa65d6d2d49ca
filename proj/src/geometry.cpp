#include "evendt/geometry.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace evendt {
namespace {

// Forward error bounds for the double-precision determinant evaluations
// (Shewchuk's ccwerrboundA / iccerrboundA with epsilon = 2^-53).
constexpr double kEpsilon = 0x1p-53;
constexpr double kOrientBound = (3.0 + 16.0 * kEpsilon) * kEpsilon;
constexpr double kIncircleBound = (10.0 + 96.0 * kEpsilon) * kEpsilon;

thread_local std::size_t exact_calls = 0;

int sign_of(const mpq_class& v) { return sgn(v); }

int orient_exact(const Point& a, const Point& b, const Point& c) {
  ++exact_calls;
  const mpq_class acx = mpq_class(a.x) - mpq_class(c.x);
  const mpq_class bcx = mpq_class(b.x) - mpq_class(c.x);
  const mpq_class acy = mpq_class(a.y) - mpq_class(c.y);
  const mpq_class bcy = mpq_class(b.y) - mpq_class(c.y);
  return sign_of(acx * bcy - acy * bcx);
}

int incircle_exact(const Point& a, const Point& b, const Point& c, const Point& d) {
  ++exact_calls;
  const mpq_class dx(d.x), dy(d.y);
  const mpq_class adx = mpq_class(a.x) - dx, ady = mpq_class(a.y) - dy;
  const mpq_class bdx = mpq_class(b.x) - dx, bdy = mpq_class(b.y) - dy;
  const mpq_class cdx = mpq_class(c.x) - dx, cdy = mpq_class(c.y) - dy;
  const mpq_class alift = adx * adx + ady * ady;
  const mpq_class blift = bdx * bdx + bdy * bdy;
  const mpq_class clift = cdx * cdx + cdy * cdy;
  const mpq_class det = alift * (bdx * cdy - cdx * bdy) + blift * (cdx * ady - adx * cdy) +
                        clift * (adx * bdy - bdx * ady);
  return sign_of(det);
}

int orient_sign(const Point& a, const Point& b, const Point& c) {
  const double left = (a.x - c.x) * (b.y - c.y);
  const double right = (a.y - c.y) * (b.x - c.x);
  const double det = left - right;
  const double bound = kOrientBound * (std::fabs(left) + std::fabs(right));
  if (det > bound) return 1;
  if (-det > bound) return -1;
  if (left == 0.0 && right == 0.0) return 0;
  return orient_exact(a, b, c);
}

// Positive when d is inside the circle of counterclockwise abc.
int incircle_sign(const Point& a, const Point& b, const Point& c, const Point& d) {
  const double adx = a.x - d.x, ady = a.y - d.y;
  const double bdx = b.x - d.x, bdy = b.y - d.y;
  const double cdx = c.x - d.x, cdy = c.y - d.y;

  const double bdxcdy = bdx * cdy, cdxbdy = cdx * bdy;
  const double cdxady = cdx * ady, adxcdy = adx * cdy;
  const double adxbdy = adx * bdy, bdxady = bdx * ady;
  const double alift = adx * adx + ady * ady;
  const double blift = bdx * bdx + bdy * bdy;
  const double clift = cdx * cdx + cdy * cdy;

  const double det = alift * (bdxcdy - cdxbdy) + blift * (cdxady - adxcdy) + clift * (adxbdy - bdxady);
  const double permanent = (std::fabs(bdxcdy) + std::fabs(cdxbdy)) * alift +
                           (std::fabs(cdxady) + std::fabs(adxcdy)) * blift +
                           (std::fabs(adxbdy) + std::fabs(bdxady)) * clift;
  const double bound = kIncircleBound * permanent;
  if (det > bound) return 1;
  if (-det > bound) return -1;
  return incircle_exact(a, b, c, d);
}

Orientation to_orientation(int s) {
  if (s > 0) return Orientation::CounterClockwise;
  if (s < 0) return Orientation::Clockwise;
  return Orientation::Collinear;
}

CirclePosition to_position(int s) {
  if (s > 0) return CirclePosition::Inside;
  if (s < 0) return CirclePosition::Outside;
  return CirclePosition::OnCircle;
}

// Collinear q lies on the closed segment ab.
bool within_box(const Point& a, const Point& b, const Point& q) {
  return std::min(a.x, b.x) <= q.x && q.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= q.y &&
         q.y <= std::max(a.y, b.y);
}

int cmp(double u, double v) { return (u > v) - (u < v); }

}  // namespace

void require_finite(const Point& p) {
  if (!std::isfinite(p.x) || !std::isfinite(p.y)) throw InvalidInput("non-finite coordinate");
}

Orientation orient2d(const Point& a, const Point& b, const Point& c) {
  require_finite(a);
  require_finite(b);
  require_finite(c);
  return to_orientation(orient_sign(a, b, c));
}

CirclePosition incircle(const Point& a, const Point& b, const Point& c, const Point& d) {
  require_finite(d);
  const Orientation turn = orient2d(a, b, c);
  if (turn == Orientation::Collinear) throw DegenerateCircle("incircle: collinear defining points");
  const int o = turn == Orientation::CounterClockwise ? 1 : -1;
  return to_position(o * incircle_sign(a, b, c, d));
}

CirclePosition incircle_ccw(const Point& a, const Point& b, const Point& c, const Point& d) {
  return to_position(incircle_sign(a, b, c, d));
}

Circle circumcircle(const Point& a, const Point& b, const Point& c) {
  if (orient2d(a, b, c) == Orientation::Collinear) throw DegenerateCircle("circumcircle: collinear points");
  const double bx = b.x - a.x, by = b.y - a.y;
  const double cx = c.x - a.x, cy = c.y - a.y;
  const double d = 2.0 * (bx * cy - by * cx);
  const double b2 = bx * bx + by * by;
  const double c2 = cx * cx + cy * cy;
  const double ux = (cy * b2 - by * c2) / d;
  const double uy = (bx * c2 - cx * b2) / d;
  return Circle{{a.x + ux, a.y + uy}, ux * ux + uy * uy};
}

std::vector<Point> arc_points(const Circle& circle, const Point& from, const Point& to,
                              Orientation through_side, std::size_t k) {
  if (k == 0) throw InvalidInput("arc_points: k must be positive");
  if (through_side == Orientation::Collinear) throw InvalidInput("arc_points: side must be a turn");
  if (!(circle.radius_sq > 0.0) || !std::isfinite(circle.radius_sq)) {
    throw DegenerateCircle("arc_points: degenerate circle");
  }
  if (from == to) throw DegenerateCircle("arc_points: empty arc");

  const double radius = std::sqrt(circle.radius_sq);
  const double start = std::atan2(from.y - circle.center.y, from.x - circle.center.x);
  double sweep = std::atan2(to.y - circle.center.y, to.x - circle.center.x) - start;
  // Counterclockwise sweep in (0, 2pi); the other arc is sweep - 2pi.
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  while (sweep <= 0.0) sweep += kTwoPi;
  while (sweep >= kTwoPi) sweep -= kTwoPi;

  auto at = [&](double t, double s) {
    const double angle = start + t * s;
    return Point{circle.center.x + radius * std::cos(angle), circle.center.y + radius * std::sin(angle)};
  };
  // The counterclockwise arc from `from` to `to` lies to the right of the chord.
  const Point mid_ccw = at(0.5, sweep);
  const double cross = (to.x - from.x) * (mid_ccw.y - from.y) - (to.y - from.y) * (mid_ccw.x - from.x);
  const bool ccw_is_left = cross > 0.0;
  const bool want_left = through_side == Orientation::CounterClockwise;
  if (ccw_is_left != want_left) sweep -= kTwoPi;

  std::vector<std::size_t> order(k);
  for (std::size_t j = 0; j < k; ++j) order[j] = j + 1;
  const double denom = static_cast<double>(k + 1);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t lhs, std::size_t rhs) {
    return std::fabs(lhs / denom - 0.5) < std::fabs(rhs / denom - 0.5);
  });
  std::vector<Point> out;
  out.reserve(k);
  for (std::size_t j : order) out.push_back(at(static_cast<double>(j) / denom, sweep));
  return out;
}

bool segments_intersect(const Point& p, const Point& q, const Point& a, const Point& b) {
  const bool share_p = p == a || p == b;
  const bool share_q = q == a || q == b;
  if (share_p && share_q) return true;  // same segment
  if (share_p || share_q) {
    const Point& common = share_p ? p : q;
    const Point& mine = share_p ? q : p;
    const Point& theirs = (common == a) ? b : a;
    if (orient_sign(common, mine, theirs) != 0) return false;
    return cmp(mine.x, common.x) == cmp(theirs.x, common.x) && cmp(mine.y, common.y) == cmp(theirs.y, common.y);
  }
  const int o1 = orient_sign(p, q, a);
  const int o2 = orient_sign(p, q, b);
  const int o3 = orient_sign(a, b, p);
  const int o4 = orient_sign(a, b, q);
  if (o1 * o2 < 0 && o3 * o4 < 0) return true;
  if (o1 == 0 && within_box(p, q, a)) return true;
  if (o2 == 0 && within_box(p, q, b)) return true;
  if (o3 == 0 && within_box(a, b, p)) return true;
  if (o4 == 0 && within_box(a, b, q)) return true;
  return false;
}

std::size_t exact_fallback_count() { return exact_calls; }

}  // namespace evendt
