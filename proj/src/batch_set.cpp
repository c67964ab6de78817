#include "extrange/batch_set.hpp"

#include <cmath>

#include "extrange/external_sort.hpp"

namespace extrange {

BatchSet BatchSet::build(BlockStore& store, const std::vector<Record>& points,
                         Options opt) {
  if (opt.c < 3) throw ParamError("batch set exponent c must be >= 3");
  const double b = static_cast<double>(store.block_capacity());
  const double cap = opt.slack * std::pow(b, 1.0 + 1.0 / opt.c);
  if (static_cast<double>(points.size()) > cap)
    throw CapacityError("batch set input exceeds B^{1+1/c} cap");

  BatchSet bs;
  bs.c_ = opt.c;
  bs.chunks_ = ExtArray(&store);
  {
    ExtWriter w(store, bs.chunks_);
    for (const Record& r : points) w.push(r);
  }
  return bs;
}

std::size_t BatchSet::max_batch(const BlockStore& store) const {
  // All queries plus one chunk plus the pair-list writer stay pinned during
  // a pass; two records encode one query.
  std::size_t budget_blocks = store.pinned_limit() > 2 ? store.pinned_limit() - 2 : 0;
  std::size_t by_memory = budget_blocks * store.block_capacity() / 2;
  std::size_t f = std::max<std::size_t>(1, chunk_count());
  return std::max<std::size_t>(1, std::min(f, by_memory));
}

std::vector<std::vector<Record>> BatchSet::query_batch(
    BlockStore& store, const std::vector<QueryBox>& queries) const {
  if (queries.size() > max_batch(store))
    throw BatchSizeError("query batch larger than f; split the batch");

  std::vector<std::vector<Record>> out(queries.size());
  if (queries.empty()) return out;

  // Pair list: one record per (point, query) match, tag = query index.
  ExtArray pairs(&store);
  {
    BlockStore::Pin query_pin = store.pin_records(2 * queries.size());
    ExtReader chunks(store, chunks_);
    ExtWriter w(store, pairs);
    std::vector<Record> chunk;
    while (chunks.next_block(chunk)) {
      for (const Record& p : chunk) {
        for (std::size_t j = 0; j < queries.size(); ++j) {
          if (queries[j].contains(p)) {
            Record pr = p;
            pr.tag = static_cast<std::int64_t>(j);
            w.push(pr);
          }
        }
      }
    }
  }

  // X stays polynomial in B in every intended use; flag runaway batches.
  {
    double b4 = std::pow(static_cast<double>(store.block_capacity()), 4.0);
    if (static_cast<double>(pairs.size()) > b4)
      throw CapacityError("batched answer size exceeds B^4");
  }

  ExtArray sorted = external_sort(store, pairs, ByTagThenId{});
  pairs.destroy();
  {
    ExtReader r(store, sorted);
    Record rec;
    while (r.next(rec)) {
      std::size_t j = static_cast<std::size_t>(rec.tag);
      rec.tag = 0;
      out[j].push_back(rec);
    }
  }
  sorted.destroy();
  return out;
}

std::vector<std::vector<Record>> BatchSet::query_all(
    BlockStore& store, const std::vector<QueryBox>& queries) const {
  std::vector<std::vector<Record>> out;
  out.reserve(queries.size());
  std::size_t limit = max_batch(store);
  for (std::size_t base = 0; base < queries.size(); base += limit) {
    std::size_t n = std::min(limit, queries.size() - base);
    std::vector<QueryBox> batch(queries.begin() + base, queries.begin() + base + n);
    auto part = query_batch(store, batch);
    for (auto& lst : part) out.push_back(std::move(lst));
  }
  if (queries.empty()) out.clear();
  return out;
}

}  // namespace extrange
