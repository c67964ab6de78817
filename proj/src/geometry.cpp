#include "extrange/geometry.hpp"

#include <algorithm>
#include <sstream>

namespace extrange {

RankMap RankMap::build(const std::vector<Point3>& pts) {
  RankMap m;
  m.xs_.reserve(pts.size());
  m.ys_.reserve(pts.size());
  m.zs_.reserve(pts.size());
  for (const Point3& p : pts) {
    m.xs_.emplace_back(p.x, p.id);
    m.ys_.emplace_back(p.y, p.id);
    m.zs_.emplace_back(p.z, p.id);
  }
  std::sort(m.xs_.begin(), m.xs_.end());
  std::sort(m.ys_.begin(), m.ys_.end());
  std::sort(m.zs_.begin(), m.zs_.end());
  return m;
}

namespace {

Coord rank_of(const std::vector<std::pair<Coord, PointId>>& v, Coord c, PointId id) {
  auto it = std::lower_bound(v.begin(), v.end(), std::make_pair(c, id));
  return static_cast<Coord>(it - v.begin());
}

}  // namespace

Point3 RankMap::reduce(const Point3& p) const {
  return Point3{rank_of(xs_, p.x, p.id), rank_of(ys_, p.y, p.id),
                rank_of(zs_, p.z, p.id), p.id};
}

std::vector<Point3> RankMap::reduced() const {
  // Reconstruct points from the three axis arrays keyed by id.
  std::vector<Point3> out(xs_.size());
  std::vector<std::pair<PointId, std::size_t>> byid(xs_.size());
  for (std::size_t i = 0; i < xs_.size(); ++i) byid[i] = {xs_[i].second, i};
  std::sort(byid.begin(), byid.end());
  auto slot = [&](PointId id) {
    auto it = std::lower_bound(byid.begin(), byid.end(),
                               std::make_pair(id, std::size_t(0)));
    return it->second;
  };
  for (std::size_t r = 0; r < xs_.size(); ++r) {
    std::size_t i = slot(xs_[r].second);
    out[i].x = static_cast<Coord>(r);
    out[i].id = xs_[r].second;
  }
  for (std::size_t r = 0; r < ys_.size(); ++r) out[slot(ys_[r].second)].y = static_cast<Coord>(r);
  for (std::size_t r = 0; r < zs_.size(); ++r) out[slot(zs_[r].second)].z = static_cast<Coord>(r);
  return out;
}

Coord RankMap::lower_rank(const std::vector<std::pair<Coord, PointId>>& v, Coord c) {
  // Smallest rank whose coordinate is >= c.
  auto it = std::lower_bound(v.begin(), v.end(), std::make_pair(c, PointId(0)));
  return static_cast<Coord>(it - v.begin());
}

Coord RankMap::upper_rank(const std::vector<std::pair<Coord, PointId>>& v, Coord c) {
  // Largest rank whose coordinate is <= c; -1 when none.
  auto it = std::upper_bound(v.begin(), v.end(),
                             std::make_pair(c, ~PointId(0)));
  return static_cast<Coord>(it - v.begin()) - 1;
}

QueryBox RankMap::reduce_box(const QueryBox& box) const {
  QueryBox out;
  const std::vector<std::pair<Coord, PointId>>* axes[3] = {&xs_, &ys_, &zs_};
  for (int a = 0; a < 3; ++a) {
    const AxisRange& in = box.axis(a);
    AxisRange& o = out.axis(a);
    if (in.lo) o.lo = lower_rank(*axes[a], *in.lo);
    if (in.hi) o.hi = upper_rank(*axes[a], *in.hi);
  }
  return out;
}

Point3 RankMap::restore(const Point3& rank_pt) const {
  Point3 p;
  p.id = rank_pt.id;
  p.x = xs_[static_cast<std::size_t>(rank_pt.x)].first;
  p.y = ys_[static_cast<std::size_t>(rank_pt.y)].first;
  p.z = zs_[static_cast<std::size_t>(rank_pt.z)].first;
  return p;
}

std::string format_points(const std::vector<Point3>& pts) {
  std::ostringstream os;
  for (const Point3& p : pts)
    os << p.x << ' ' << p.y << ' ' << p.z << ' ' << p.id << '\n';
  return os.str();
}

std::vector<Point3> parse_points(std::istream& in) {
  std::vector<Point3> pts;
  Point3 p;
  while (in >> p.x >> p.y >> p.z >> p.id) pts.push_back(p);
  return pts;
}

std::vector<Point3> parse_points_string(const std::string& text) {
  std::istringstream is(text);
  return parse_points(is);
}

}  // namespace extrange
