#include "extrange/store.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <memory>

namespace extrange {
namespace {

std::size_t default_pinned_limit(std::size_t block_capacity) {
  std::size_t cbrt_b = static_cast<std::size_t>(
      std::ceil(std::cbrt(static_cast<double>(block_capacity))));
  return std::max<std::size_t>(8, cbrt_b + 4);
}

constexpr std::uint64_t kFileMagic = 0x0000000031424D58ull;  // "XMB1"

void put_u64(std::FILE* f, std::uint64_t v) {
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
  if (std::fwrite(b, 1, 8, f) != 8) throw StoreError("short write");
}

std::uint64_t get_u64(std::FILE* f) {
  unsigned char b[8];
  if (std::fread(b, 1, 8, f) != 8) throw StoreError("short read");
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= std::uint64_t(b[i]) << (8 * i);
  return v;
}

}  // namespace

BlockStore::BlockStore(Options opt)
    : capacity_(opt.block_capacity),
      pinned_limit_(opt.pinned_limit ? opt.pinned_limit
                                     : default_pinned_limit(opt.block_capacity)) {
  if (capacity_ < 4) throw ParamError("block_capacity must be >= 4");
}

BlockAddr BlockStore::allocate() {
  BlockAddr addr;
  if (!free_list_.empty()) {
    addr = free_list_.back();
    free_list_.pop_back();
    allocated_[addr] = true;
  } else {
    addr = blocks_.size();
    blocks_.emplace_back();
    allocated_.push_back(true);
  }
  ++live_blocks_;
  return addr;
}

void BlockStore::release(BlockAddr addr) {
  check_allocated(addr);
  allocated_[addr] = false;
  blocks_[addr].clear();
  blocks_[addr].shrink_to_fit();
  free_list_.push_back(addr);
  --live_blocks_;
}

void BlockStore::check_allocated(BlockAddr addr) const {
  if (addr >= blocks_.size() || !allocated_[addr])
    throw AddressError("unallocated block address " + std::to_string(addr));
}

std::vector<Record> BlockStore::read_block(BlockAddr addr) const {
  check_allocated(addr);
  ++reads_;
  return blocks_[addr];
}

void BlockStore::write_block(BlockAddr addr, std::vector<Record> recs) {
  check_allocated(addr);
  if (recs.size() > capacity_)
    throw CapacityError("record array exceeds block capacity");
  ++writes_;
  blocks_[addr] = std::move(recs);
}

BlockStore::Pin::Pin(const BlockStore& store, std::size_t blocks)
    : store_(&store), blocks_(blocks) {
  if (store.pinned_ + blocks > store.pinned_limit_)
    throw PinLimitError("pinned working set would exceed pinned_limit (" +
                        std::to_string(store.pinned_ + blocks) + " > " +
                        std::to_string(store.pinned_limit_) + ")");
  store.pinned_ += blocks;
}

BlockStore::Pin::Pin(Pin&& other) noexcept
    : store_(other.store_), blocks_(other.blocks_) {
  other.store_ = nullptr;
  other.blocks_ = 0;
}

BlockStore::Pin& BlockStore::Pin::operator=(Pin&& other) noexcept {
  if (this != &other) {
    if (store_) store_->pinned_ -= blocks_;
    store_ = other.store_;
    blocks_ = other.blocks_;
    other.store_ = nullptr;
    other.blocks_ = 0;
  }
  return *this;
}

BlockStore::Pin::~Pin() {
  if (store_) store_->pinned_ -= blocks_;
}

BlockStore::Pin BlockStore::pin_records(std::size_t records) const {
  std::size_t blocks = (records + capacity_ - 1) / capacity_;
  return Pin(*this, std::max<std::size_t>(1, blocks));
}

void BlockStore::save(const std::string& path) const {
  std::unique_ptr<std::FILE, int (*)(std::FILE*)> f(
      std::fopen(path.c_str(), "wb"), &std::fclose);
  if (!f) throw StoreError("cannot open " + path);
  put_u64(f.get(), kFileMagic);
  put_u64(f.get(), capacity_);
  put_u64(f.get(), blocks_.size());
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    std::uint64_t count = allocated_[i] ? blocks_[i].size() : ~std::uint64_t(0);
    put_u64(f.get(), count);
    if (!allocated_[i]) continue;
    for (const Record& r : blocks_[i]) {
      put_u64(f.get(), static_cast<std::uint64_t>(r.key[0]));
      put_u64(f.get(), static_cast<std::uint64_t>(r.key[1]));
      put_u64(f.get(), static_cast<std::uint64_t>(r.key[2]));
      put_u64(f.get(), r.id);
      put_u64(f.get(), static_cast<std::uint64_t>(r.aux));
      put_u64(f.get(), static_cast<std::uint64_t>(r.tag));
    }
    for (std::size_t pad = blocks_[i].size(); pad < capacity_; ++pad)
      for (std::size_t w = 0; w < kRecordWords; ++w) put_u64(f.get(), 0);
  }
}

BlockStore BlockStore::load_file(const std::string& path) {
  std::unique_ptr<std::FILE, int (*)(std::FILE*)> f(
      std::fopen(path.c_str(), "rb"), &std::fclose);
  if (!f) throw StoreError("cannot open " + path);
  if (get_u64(f.get()) != kFileMagic) throw StoreError("bad magic in " + path);
  std::size_t capacity = get_u64(f.get());
  std::size_t nblocks = get_u64(f.get());
  BlockStore store(Options{capacity, 0});
  store.blocks_.resize(nblocks);
  store.allocated_.assign(nblocks, false);
  for (std::size_t i = 0; i < nblocks; ++i) {
    std::uint64_t count = get_u64(f.get());
    if (count == ~std::uint64_t(0)) {
      store.free_list_.push_back(i);
      continue;
    }
    if (count > capacity) throw StoreError("corrupt block count");
    store.allocated_[i] = true;
    ++store.live_blocks_;
    store.blocks_[i].resize(count);
    for (std::uint64_t j = 0; j < count; ++j) {
      Record& r = store.blocks_[i][j];
      r.key[0] = static_cast<Coord>(get_u64(f.get()));
      r.key[1] = static_cast<Coord>(get_u64(f.get()));
      r.key[2] = static_cast<Coord>(get_u64(f.get()));
      r.id = get_u64(f.get());
      r.aux = static_cast<std::int64_t>(get_u64(f.get()));
      r.tag = static_cast<std::int64_t>(get_u64(f.get()));
    }
    for (std::uint64_t pad = count; pad < capacity; ++pad)
      for (std::size_t w = 0; w < kRecordWords; ++w) get_u64(f.get());
  }
  return store;
}

}  // namespace extrange
