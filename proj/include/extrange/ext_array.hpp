#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "extrange/store.hpp"

namespace extrange {

/// A sequence of records laid out in store blocks. The address list is
/// directory metadata; the records themselves live in the store and are only
/// reachable through counted block transfers.
class ExtArray {
 public:
  ExtArray() = default;
  explicit ExtArray(BlockStore* store) : store_(store) {}

  std::size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }
  std::size_t block_count() const { return addrs_.size(); }
  const std::vector<BlockAddr>& addrs() const { return addrs_; }
  BlockStore* store() const { return store_; }

  void destroy() {
    if (store_)
      for (BlockAddr a : addrs_) store_->release(a);
    addrs_.clear();
    size_ = 0;
  }

 private:
  friend class ExtWriter;
  friend class ExtReader;

  BlockStore* store_ = nullptr;
  std::vector<BlockAddr> addrs_;
  std::size_t size_ = 0;
};

/// Buffered appender; holds one pinned block.
class ExtWriter {
 public:
  ExtWriter(BlockStore& store, ExtArray& out)
      : store_(store), out_(out), pin_(store, 1) {
    out_.store_ = &store;
    buf_.reserve(store.block_capacity());
  }
  ~ExtWriter() { flush(); }

  void push(const Record& r) {
    buf_.push_back(r);
    if (buf_.size() == store_.block_capacity()) flush();
  }

  void flush() {
    if (buf_.empty()) return;
    std::size_t n = buf_.size();
    BlockAddr a = store_.allocate();
    store_.write_block(a, std::move(buf_));
    buf_.clear();
    buf_.reserve(store_.block_capacity());
    out_.addrs_.push_back(a);
    out_.size_ += n;
  }

 private:
  BlockStore& store_;
  ExtArray& out_;
  BlockStore::Pin pin_;
  std::vector<Record> buf_;
};

/// Sequential scanner; holds one pinned block.
class ExtReader {
 public:
  ExtReader(BlockStore& store, const ExtArray& in)
      : store_(store), in_(in), pin_(store, 1) {}

  bool next(Record& out) {
    while (pos_ >= buf_.size()) {
      if (block_ >= in_.addrs_.size()) return false;
      buf_ = store_.read_block(in_.addrs_[block_++]);
      pos_ = 0;
    }
    out = buf_[pos_++];
    return true;
  }

  /// Loads the next block; returns false at end.
  bool next_block(std::vector<Record>& out) {
    if (block_ >= in_.addrs_.size()) return false;
    out = store_.read_block(in_.addrs_[block_++]);
    return true;
  }

 private:
  BlockStore& store_;
  const ExtArray& in_;
  BlockStore::Pin pin_;
  std::vector<Record> buf_;
  std::size_t pos_ = 0;
  std::size_t block_ = 0;
};

/// Materializes the whole array through one pinned streaming block into
/// caller-owned memory.
inline std::vector<Record> read_all(BlockStore& store, const ExtArray& arr) {
  std::vector<Record> out;
  out.reserve(arr.size());
  ExtReader reader(store, arr);
  Record r;
  while (reader.next(r)) out.push_back(r);
  return out;
}

inline ExtArray write_all(BlockStore& store, const std::vector<Record>& recs) {
  ExtArray arr(&store);
  ExtWriter writer(store, arr);
  for (const Record& r : recs) writer.push(r);
  writer.flush();
  return arr;
}

}  // namespace extrange
