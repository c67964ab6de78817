#pragma once

#include <array>
#include <cstdint>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace extrange {

using Coord = std::int64_t;
using PointId = std::uint64_t;
using BlockAddr = std::uint64_t;

inline constexpr BlockAddr kNullAddr = ~BlockAddr(0);

/// Fixed-width record: three key coordinates, an identifier, a payload word
/// that travels untouched through every structure, and a scratch word that
/// intermediate passes may overwrite.
struct Record {
  std::array<Coord, 3> key{0, 0, 0};
  PointId id = 0;
  std::int64_t aux = 0;
  std::int64_t tag = 0;

  friend bool operator==(const Record& a, const Record& b) {
    return a.key == b.key && a.id == b.id && a.aux == b.aux && a.tag == b.tag;
  }
};

inline constexpr std::size_t kRecordWords = 6;

struct StoreError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct AddressError : StoreError {
  using StoreError::StoreError;
};
struct CapacityError : StoreError {
  using StoreError::StoreError;
};
struct PinLimitError : StoreError {
  using StoreError::StoreError;
};
struct ParamError : StoreError {
  using StoreError::StoreError;
};
struct KeyError : StoreError {
  using StoreError::StoreError;
};
struct StateError : StoreError {
  using StoreError::StoreError;
};
struct BatchSizeError : StoreError {
  using StoreError::StoreError;
};

/// Counter snapshot over a labelled section; reads/writes equal the delta of
/// the store counters between construction and stop().
struct IoReport {
  std::uint64_t reads = 0;
  std::uint64_t writes = 0;
  std::string label;
  std::uint64_t total() const { return reads + writes; }
};

/// Simulated external memory. Blocks hold up to `block_capacity` records;
/// every transfer bumps a counter. There is no internal cache: two reads of
/// the same address cost two I/Os. Operations declare their in-memory
/// working set through Pin objects and the store fails any attempt to hold
/// more than `pinned_limit` blocks at once.
class BlockStore {
 public:
  struct Options {
    std::size_t block_capacity = 64;
    std::size_t pinned_limit = 0;  // 0 = max(8, ceil(B^(1/3)) + 4)
  };

  explicit BlockStore(Options opt);
  explicit BlockStore(std::size_t block_capacity)
      : BlockStore(Options{block_capacity, 0}) {}

  BlockStore(const BlockStore&) = delete;
  BlockStore& operator=(const BlockStore&) = delete;
  BlockStore(BlockStore&&) = default;
  BlockStore& operator=(BlockStore&&) = default;

  std::size_t block_capacity() const { return capacity_; }
  std::size_t pinned_limit() const { return pinned_limit_; }

  BlockAddr allocate();
  void release(BlockAddr addr);

  std::vector<Record> read_block(BlockAddr addr) const;
  void write_block(BlockAddr addr, std::vector<Record> recs);

  std::uint64_t reads() const { return reads_; }
  std::uint64_t writes() const { return writes_; }
  std::uint64_t io_total() const { return reads_ + writes_; }
  std::size_t blocks_allocated() const { return live_blocks_; }
  std::size_t pinned() const { return pinned_; }

  /// RAII claim on `blocks` slots of internal memory.
  class Pin {
   public:
    Pin() = default;
    Pin(const BlockStore& store, std::size_t blocks);
    Pin(Pin&& other) noexcept;
    Pin& operator=(Pin&& other) noexcept;
    Pin(const Pin&) = delete;
    Pin& operator=(const Pin&) = delete;
    ~Pin();

    std::size_t blocks() const { return blocks_; }

   private:
    const BlockStore* store_ = nullptr;
    std::size_t blocks_ = 0;
  };

  /// Pin sized for an in-memory array of `records` records.
  Pin pin_records(std::size_t records) const;

  void save(const std::string& path) const;
  static BlockStore load_file(const std::string& path);

 private:
  friend class Pin;

  std::size_t capacity_;
  std::size_t pinned_limit_;
  std::vector<std::vector<Record>> blocks_;
  std::vector<bool> allocated_;
  std::vector<BlockAddr> free_list_;
  std::size_t live_blocks_ = 0;
  mutable std::uint64_t reads_ = 0;
  std::uint64_t writes_ = 0;
  mutable std::size_t pinned_ = 0;

  void check_allocated(BlockAddr addr) const;
};

/// Measures the I/O done between construction and stop()/destruction.
class IoScope {
 public:
  IoScope(const BlockStore& store, std::string label)
      : store_(&store),
        label_(std::move(label)),
        reads0_(store.reads()),
        writes0_(store.writes()) {}

  IoReport report() const {
    IoReport r;
    r.reads = store_->reads() - reads0_;
    r.writes = store_->writes() - writes0_;
    r.label = label_;
    return r;
  }

 private:
  const BlockStore* store_;
  std::string label_;
  std::uint64_t reads0_;
  std::uint64_t writes0_;
};

}  // namespace extrange
