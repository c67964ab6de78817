#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "extrange/store.hpp"

namespace extrange {

struct Point3 {
  Coord x = 0;
  Coord y = 0;
  Coord z = 0;
  PointId id = 0;

  friend bool operator==(const Point3& a, const Point3& b) {
    return a.x == b.x && a.y == b.y && a.z == b.z && a.id == b.id;
  }
};

inline Record to_record(const Point3& p) {
  Record r;
  r.key = {p.x, p.y, p.z};
  r.id = p.id;
  return r;
}

inline Point3 to_point(const Record& r) {
  return Point3{r.key[0], r.key[1], r.key[2], r.id};
}

/// q dominates p iff every coordinate of q is >= the matching coordinate of
/// p. Raw coordinates; ids do not participate.
inline bool dominates(const Point3& q, const Point3& p) {
  return q.x >= p.x && q.y >= p.y && q.z >= p.z;
}

inline bool dominates(const Record& q, const Record& p) {
  return q.key[0] >= p.key[0] && q.key[1] >= p.key[1] && q.key[2] >= p.key[2];
}

/// One axis of a query box: either bound may be open (absent). Finite bounds
/// are closed.
struct AxisRange {
  std::optional<Coord> lo;
  std::optional<Coord> hi;

  bool contains(Coord c) const {
    if (lo && c < *lo) return false;
    if (hi && c > *hi) return false;
    return true;
  }
  int sides() const { return (lo ? 1 : 0) + (hi ? 1 : 0); }
  bool well_formed() const { return !(lo && hi) || *lo <= *hi; }
};

struct QueryBox {
  AxisRange x, y, z;

  bool contains(const Point3& p) const {
    return x.contains(p.x) && y.contains(p.y) && z.contains(p.z);
  }
  bool contains(const Record& r) const {
    return x.contains(r.key[0]) && y.contains(r.key[1]) && z.contains(r.key[2]);
  }
  const AxisRange& axis(int i) const { return i == 0 ? x : (i == 1 ? y : z); }
  AxisRange& axis(int i) { return i == 0 ? x : (i == 1 ? y : z); }

  /// (b_x, b_y, b_z): number of finite bounds per axis.
  std::array<int, 3> sidedness() const {
    return {x.sides(), y.sides(), z.sides()};
  }
  bool well_formed() const {
    return x.well_formed() && y.well_formed() && z.well_formed();
  }

  static QueryBox all() { return QueryBox{}; }

  /// Canonical empty box (used for padding query batches).
  static QueryBox empty_box() {
    QueryBox q;
    q.x = {1, 0};
    return q;
  }
  bool is_empty_box() const {
    return x.lo && x.hi && *x.lo > *x.hi;
  }

  /// The dominance query at q as a box: [q.x,inf) x [q.y,inf) x [q.z,inf).
  static QueryBox dominance(const Point3& q) {
    QueryBox b;
    b.x.lo = q.x;
    b.y.lo = q.y;
    b.z.lo = q.z;
    return b;
  }
};

/// Per-axis rank reduction under the (coordinate, id) order. Produces points
/// with distinct coordinates in [0, n) on every axis and maps query bounds
/// into rank space (lower bounds by successor, upper bounds by predecessor).
class RankMap {
 public:
  static RankMap build(const std::vector<Point3>& pts);

  std::vector<Point3> reduced() const;
  Point3 reduce(const Point3& p) const;  // p must be one of the input points
  QueryBox reduce_box(const QueryBox& box) const;
  Point3 restore(const Point3& rank_pt) const;

  std::size_t size() const { return xs_.size(); }

 private:
  // Sorted (coordinate, id) keys per axis; rank = index.
  std::vector<std::pair<Coord, PointId>> xs_, ys_, zs_;

  static Coord lower_rank(const std::vector<std::pair<Coord, PointId>>& v, Coord c);
  static Coord upper_rank(const std::vector<std::pair<Coord, PointId>>& v, Coord c);
};

/// Text point format: one point per line, "x y z id", ASCII decimal.
std::string format_points(const std::vector<Point3>& pts);
std::vector<Point3> parse_points(std::istream& in);
std::vector<Point3> parse_points_string(const std::string& text);

}  // namespace extrange
