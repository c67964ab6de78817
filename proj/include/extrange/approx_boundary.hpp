#pragma once

#include <optional>
#include <string>
#include <vector>

#include "extrange/batch_set.hpp"
#include "extrange/ext_array.hpp"
#include "extrange/geometry.hpp"
#include "extrange/store.hpp"

namespace extrange {

/// One inward corner of the boundary surface (directory entry).
struct BoundaryCorner {
  Coord x = 0;
  Coord y = 0;
  Coord z = 0;
  std::uint32_t level = 0;    // 0-based index into levels()
  std::uint32_t ind = 0;      // 1-based processing index: lowest level first, x ascending
  // Closure band: dominance lists of corners with ind in [band_lo, band_hi]
  // may hold dominators of this corner that its own list omits.
  std::uint32_t band_lo = 1;
  std::uint32_t band_hi = 0;
  std::uint32_t ridge_first = 0;  // ind range of this corner's own ridge
  std::uint32_t ridge_last = 0;
  std::size_t list_off = 0;  // extent in the shared dominance-list log
  std::size_t list_len = 0;
};

/// Geometry of one constructed level: the staircase curve at plane z,
/// in-corners in travel order (x descending, y ascending), the y at which
/// the curve exits toward the low-x wall, and the corners retired here.
struct LevelGeometry {
  Coord z = 0;
  std::vector<std::pair<Coord, Coord>> curve;
  Coord exit_y = 0;
  std::vector<std::uint32_t> retired;  // indices into corners()
};

/// Static t-approximate boundary over a small set with pairwise-distinct
/// per-axis coordinates. The surface is a staircase terrain built by a
/// descending-z ridge sweep; every surface point is dominated by between t
/// and 3t input points (for |S| >= 3t), and the retired staircase corners
/// ("inward corners") carry dominance lists that let a query report all
/// points dominating any corner-covered query point in O(t/B) transfers.
class ApproxBoundary {
 public:
  ApproxBoundary() = default;

  /// Geometry phase. points must have distinct coordinates on every axis.
  static ApproxBoundary build(BlockStore& store, const ExtArray& points,
                              std::int64_t t);

  /// Dominance-list phase: lowest ridge first, x ascending within a ridge.
  void build_dominance_lists(BlockStore& store);
  bool lists_built() const { return lists_built_; }

  /// Finds an inward corner dominated by q, or nullopt when q is below the
  /// boundary (dominated by the surface). O(1) transfers.
  std::optional<std::uint32_t> locate(BlockStore& store, const Record& q) const;

  /// All points of S dominating q, given a corner ind with corner <= q.
  std::vector<Record> report_dominators(BlockStore& store, std::uint32_t ind,
                                        const Record& q) const;

  /// locate + report; nullopt means "below-boundary" (escalate).
  std::optional<std::vector<Record>> locate_and_report(BlockStore& store,
                                                       const Record& q) const;

  std::int64_t t() const { return t_; }
  std::size_t size() const { return n_; }
  std::size_t corner_count() const { return corners_.size(); }
  const std::vector<BoundaryCorner>& corners() const { return corners_; }
  const BoundaryCorner& corner(std::uint32_t ind) const { return corners_[ind - 1]; }
  const std::vector<LevelGeometry>& levels() const { return levels_; }
  Coord floor_z() const { return floor_z_; }

  // Surface predicates on the in-memory geometry (tests and audits).
  bool dominates_some_corner(const Record& q) const;
  bool dominated_by_surface(const Record& q) const;
  bool on_surface(const Record& q) const;

  std::string export_csv() const;
  std::size_t blocks_used() const;
  void destroy(BlockStore& store);

 private:
  std::int64_t t_ = 0;
  std::size_t n_ = 0;
  Coord low_x_ = 0, low_y_ = 0, floor_z_ = 0;
  bool lists_built_ = false;

  std::vector<BoundaryCorner> corners_;  // by ind (corners_[i] has ind i+1)
  std::vector<LevelGeometry> levels_;    // construction order: z descending
  ExtArray points_;                      // the input set (by id order)
  ExtArray dom_log_;                     // concatenated dominance lists, ind order
  std::vector<ExtArray> deep_stairs_;    // per level: minimal corners at z <= level z

  struct CurvePt {
    Coord x, y;
    std::int64_t cnt;
  };

  std::vector<Record> gather_band(BlockStore& store, const BoundaryCorner& c) const;
  static bool curve_outside_or_on(const std::vector<std::pair<Coord, Coord>>& curve,
                                  Coord x, Coord y);
  bool curve_on(const LevelGeometry& lvl, Coord x, Coord y) const;
};

}  // namespace extrange
