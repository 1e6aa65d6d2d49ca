#pragma once

// Exact-decision predicates and approximate circle constructions.
//
// orient2d and incircle never round: a floating-point filter decides the easy
// cases and an exact rational evaluation takes over whenever the filter's
// error bound does not separate the determinant from zero. Circle
// constructions (circumcircle, arc_points) are approximate and are only used
// to generate candidates that callers re-check with the exact predicates.

#include <compare>
#include <cstddef>
#include <vector>

#include "evendt/errors.hpp"

namespace evendt {

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

/// Lexicographic (x, then y) order. This is the sort order of the whole library.
inline bool lex_less(const Point& a, const Point& b) {
  return a.x < b.x || (a.x == b.x && a.y < b.y);
}

enum class Orientation { CounterClockwise, Clockwise, Collinear };
enum class CirclePosition { Inside, Outside, OnCircle };

struct Circle {
  Point center;
  double radius_sq = 0.0;
};

/// Throws InvalidInput unless both coordinates are finite.
void require_finite(const Point& p);

/// Exact sign of the signed area of triangle abc.
Orientation orient2d(const Point& a, const Point& b, const Point& c);

/// Exact position of d relative to the circle through a, b, c. The triple may
/// be given in either orientation; throws DegenerateCircle if it is collinear.
CirclePosition incircle(const Point& a, const Point& b, const Point& c, const Point& d);

/// Same as incircle but assumes abc is counterclockwise and skips the check.
/// Collinear abc yields an unspecified classification.
CirclePosition incircle_ccw(const Point& a, const Point& b, const Point& c, const Point& d);

/// Approximate circumcircle. Throws DegenerateCircle when abc is collinear.
Circle circumcircle(const Point& a, const Point& b, const Point& c);

/// k approximate points strictly inside the arc of `circle` joining `from` and
/// `to` on the `through_side` of the directed chord from->to, midpoint first and
/// then alternating outwards towards both endpoints.
std::vector<Point> arc_points(const Circle& circle, const Point& from, const Point& to,
                              Orientation through_side, std::size_t k);

/// True if closed segments pq and ab share any point other than a common
/// endpoint. Segments that share an endpoint only intersect when they overlap.
bool segments_intersect(const Point& p, const Point& q, const Point& a, const Point& b);

/// Number of predicate calls that fell through to exact arithmetic, per thread.
std::size_t exact_fallback_count();

}  // namespace evendt
