#pragma once

#include <algorithm>
#include <memory>
#include <vector>

#include "extrange/ext_array.hpp"
#include "extrange/store.hpp"

namespace extrange {

/// Multiway external merge sort. Run formation fills the pinned budget
/// (reader block + sort buffer + writer block = pinned_limit blocks);
/// merging fans in pinned_limit - 1 runs at a time. I/O cost is
/// O((n/B) * log_{M/B}(n/B)) transfers with M = pinned_limit * B records.
template <class Less>
ExtArray external_sort(BlockStore& store, const ExtArray& input, Less less) {
  const std::size_t cap = store.block_capacity();
  const std::size_t mem_blocks = store.pinned_limit();
  if (mem_blocks < 3) throw PinLimitError("external_sort needs pinned_limit >= 3");
  const std::size_t chunk_records = (mem_blocks - 2) * cap;

  // Run formation.
  std::vector<ExtArray> runs;
  {
    ExtReader reader(store, input);  // 1 pinned
    std::vector<Record> chunk;
    BlockStore::Pin chunk_pin(store, mem_blocks - 2);
    chunk.reserve(chunk_records);
    std::vector<Record> blk;
    bool more = true;
    while (more) {
      chunk.clear();
      while (chunk.size() + cap <= chunk_records && (more = reader.next_block(blk)))
        chunk.insert(chunk.end(), blk.begin(), blk.end());
      if (chunk.empty()) break;
      std::stable_sort(chunk.begin(), chunk.end(),
                       [&](const Record& a, const Record& b) { return less(a, b); });
      ExtArray run(&store);
      {
        ExtWriter w(store, run);  // 1 pinned
        for (const Record& r : chunk) w.push(r);
      }
      runs.push_back(run);
    }
  }

  if (runs.empty()) return ExtArray(&store);

  // Merge passes.
  const std::size_t fan_in = std::max<std::size_t>(2, mem_blocks - 1);
  while (runs.size() > 1) {
    std::vector<ExtArray> next;
    for (std::size_t base = 0; base < runs.size(); base += fan_in) {
      std::size_t m = std::min(fan_in, runs.size() - base);
      if (m == 1) {
        next.push_back(runs[base]);
        continue;
      }
      std::vector<std::unique_ptr<ExtReader>> readers;
      std::vector<Record> heads(m);
      std::vector<bool> alive(m, false);
      for (std::size_t i = 0; i < m; ++i) {
        readers.push_back(std::make_unique<ExtReader>(store, runs[base + i]));
        alive[i] = readers[i]->next(heads[i]);
      }
      ExtArray merged(&store);
      {
        ExtWriter w(store, merged);
        auto cmp_idx = [&](std::size_t a, std::size_t b) {
          if (less(heads[a], heads[b])) return true;
          if (less(heads[b], heads[a])) return false;
          return a < b;  // stability across runs
        };
        while (true) {
          std::size_t best = m;
          for (std::size_t i = 0; i < m; ++i)
            if (alive[i] && (best == m || cmp_idx(i, best))) best = i;
          if (best == m) break;
          w.push(heads[best]);
          alive[best] = readers[best]->next(heads[best]);
        }
      }
      for (std::size_t i = 0; i < m; ++i) runs[base + i].destroy();
      next.push_back(merged);
    }
    runs = std::move(next);
  }
  return runs[0];
}

template <class Less>
ExtArray external_sort_records(BlockStore& store, const std::vector<Record>& recs,
                               Less less) {
  ExtArray arr = write_all(store, recs);
  ExtArray sorted = external_sort(store, arr, less);
  arr.destroy();
  return sorted;
}

/// Comparators shared across modules: per-axis order is lexicographic on
/// (coordinate, id) so all orders are strict and total.
inline bool axis_less(const Record& a, const Record& b, int axis) {
  if (a.key[axis] != b.key[axis]) return a.key[axis] < b.key[axis];
  return a.id < b.id;
}

struct ByAxis {
  int axis;
  bool descending = false;
  bool operator()(const Record& a, const Record& b) const {
    return descending ? axis_less(b, a, axis) : axis_less(a, b, axis);
  }
};

struct ById {
  bool operator()(const Record& a, const Record& b) const { return a.id < b.id; }
};

struct ByTagThenId {
  bool operator()(const Record& a, const Record& b) const {
    if (a.tag != b.tag) return a.tag < b.tag;
    return a.id < b.id;
  }
};

}  // namespace extrange
