#pragma once

#include <vector>

#include "extrange/ext_array.hpp"
#include "extrange/geometry.hpp"
#include "extrange/store.hpp"

namespace extrange {

/// Static store-resident point set of F = O(B^{1+1/c}) records, partitioned
/// into f = ceil(F/B) single-block chunks. Answers batches of up to f range
/// reporting queries per pass: every chunk is scanned once against the whole
/// batch, matches go to a (point, query) pair list, and the pair list is
/// sorted by query index to group the answers.
class BatchSet {
 public:
  struct Options {
    Options() {}
    Options(int c_in, double slack_in) : c(c_in), slack(slack_in) {}
    int c = 3;          // exponent parameter, c >= 3
    double slack = 4.0; // constant factor allowed on the F = B^{1+1/c} cap
  };

  BatchSet() = default;

  static BatchSet build(BlockStore& store, const std::vector<Record>& points,
                        Options opt = Options());

  std::size_t size() const { return chunks_.size(); }           // F
  std::size_t chunk_count() const { return chunks_.block_count(); }  // f
  int exponent() const { return c_; }

  /// Largest batch one pass accepts: min(f, pinned budget for the queries).
  std::size_t max_batch(const BlockStore& store) const;

  /// One Lemma-style pass. |queries| must be <= max_batch(); short batches
  /// are implicitly padded with empty boxes. Returns one point list per
  /// query, each list ordered by point id.
  std::vector<std::vector<Record>> query_batch(
      BlockStore& store, const std::vector<QueryBox>& queries) const;

  /// Convenience wrapper that splits an arbitrary query list into maximal
  /// batches.
  std::vector<std::vector<Record>> query_all(
      BlockStore& store, const std::vector<QueryBox>& queries) const;

  void destroy() { chunks_.destroy(); }

 private:
  ExtArray chunks_;
  int c_ = 3;
};

}  // namespace extrange
