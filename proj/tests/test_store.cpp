#include <algorithm>
#include <cstdio>
#include <random>

#include "doctest.h"
#include "extrange/ext_array.hpp"
#include "extrange/external_sort.hpp"
#include "extrange/store.hpp"

using namespace extrange;

namespace {

Record rec(Coord x, Coord y = 0, Coord z = 0, PointId id = 0) {
  Record r;
  r.key = {x, y, z};
  r.id = id;
  return r;
}

std::vector<Record> random_records(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Record> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = rec(static_cast<Coord>(rng() % 100000),
                 static_cast<Coord>(rng() % 100000),
                 static_cast<Coord>(rng() % 100000), i);
  }
  return out;
}

}  // namespace

TEST_CASE("block round trip and counters") {
  BlockStore store(32);
  BlockAddr a = store.allocate();
  std::vector<Record> recs;
  for (int i = 0; i < 32; ++i) recs.push_back(rec(i, i, i, i));
  store.write_block(a, recs);
  CHECK(store.writes() == 1);

  auto got = store.read_block(a);
  CHECK(got == recs);
  CHECK(store.reads() == 1);

  // No caching inside the store: a second read costs a second transfer.
  (void)store.read_block(a);
  CHECK(store.reads() == 2);
}

TEST_CASE("store errors") {
  BlockStore store(8);
  CHECK_THROWS_AS((void)store.read_block(3), AddressError);
  BlockAddr a = store.allocate();
  std::vector<Record> too_big(9);
  CHECK_THROWS_AS(store.write_block(a, too_big), CapacityError);
  store.release(a);
  CHECK_THROWS_AS((void)store.read_block(a), AddressError);
  CHECK_THROWS_AS(BlockStore(3), ParamError);
}

TEST_CASE("write counter counts every write") {
  BlockStore store(8);
  BlockAddr a = store.allocate();
  for (int i = 0; i < 5; ++i) store.write_block(a, {rec(i)});
  CHECK(store.writes() == 5);
}

TEST_CASE("pin limit is enforced") {
  BlockStore store(BlockStore::Options{32, 4});
  CHECK(store.pinned_limit() == 4);
  {
    BlockStore::Pin p1(store, 3);
    CHECK(store.pinned() == 3);
    CHECK_THROWS_AS(BlockStore::Pin(store, 2), PinLimitError);
    BlockStore::Pin p2(store, 1);
    CHECK(store.pinned() == 4);
  }
  CHECK(store.pinned() == 0);
}

TEST_CASE("operations fail when the pinned budget is too small") {
  // Accounting soundness: bulk operations must declare their working set,
  // so a store with an absurdly small budget rejects them.
  BlockStore store(BlockStore::Options{16, 2});
  auto recs = random_records(64, 7);
  ExtArray arr;
  {
    BlockStore::Pin writer_pin(store, 1);
    ExtArray tmp(&store);
    {
      BlockStore::Pin dummy(store, 0);
      ExtWriter w(store, tmp);
      for (const Record& r : recs) w.push(r);
    }
    arr = tmp;
  }
  CHECK_THROWS_AS((void)external_sort(store, arr, ByAxis{0}), PinLimitError);
}

TEST_CASE("ext array round trip") {
  BlockStore store(16);
  auto recs = random_records(100, 1);
  ExtArray arr = write_all(store, recs);
  CHECK(arr.size() == 100);
  CHECK(arr.block_count() == 7);
  auto got = read_all(store, arr);
  CHECK(got == recs);
  arr.destroy();
  CHECK(store.blocks_allocated() == 0);
}

TEST_CASE("external sort already sorted input") {
  BlockStore store(32);
  std::vector<Record> recs;
  for (int i = 0; i < 320; ++i) recs.push_back(rec(i, 0, 0, i));
  ExtArray arr = write_all(store, recs);
  IoScope scope(store, "sort");
  ExtArray sorted = external_sort(store, arr, ByAxis{0});
  IoReport rep = scope.report();
  auto got = read_all(store, sorted);
  // Output identical, I/O within a couple of read+write passes.
  for (std::size_t i = 0; i + 1 < got.size(); ++i)
    CHECK(axis_less(got[i], got[i + 1], 0));
  CHECK(got.size() == recs.size());
  std::size_t nb = arr.block_count();
  CHECK(rep.total() <= 4 * nb + 8);
}

TEST_CASE("external sort reverse input matches in-memory sort") {
  BlockStore store(32);
  std::vector<Record> recs;
  for (int i = 0; i < 320; ++i) recs.push_back(rec(319 - i, 0, 0, 1000 + i));
  ExtArray arr = write_all(store, recs);
  ExtArray sorted = external_sort(store, arr, ByAxis{0});
  auto got = read_all(store, sorted);

  auto expect = recs;
  std::sort(expect.begin(), expect.end(),
            [](const Record& a, const Record& b) { return axis_less(a, b, 0); });
  CHECK(got == expect);
}

TEST_CASE("external sort is a sorted permutation on random input") {
  BlockStore store(64);
  // n = B^{4/3} with pinned_limit >= B^{1/3} keeps this a constant number of
  // passes; the bound below is the pinned regression constant.
  auto recs = random_records(256, 42);
  ExtArray arr = write_all(store, recs);
  IoScope scope(store, "sort");
  ExtArray sorted = external_sort(store, arr, ByAxis{2});
  IoReport rep = scope.report();
  auto got = read_all(store, sorted);

  auto expect = recs;
  std::stable_sort(expect.begin(), expect.end(),
                   [](const Record& a, const Record& b) { return axis_less(a, b, 2); });
  CHECK(got == expect);
  std::size_t nb = (256 + 63) / 64;
  CHECK(rep.total() <= 6 * nb);  // measured 4x: one run pass + one merge pass
}

TEST_CASE("file backed round trip") {
  std::string path = "store_roundtrip.xmb";
  {
    BlockStore store(8);
    BlockAddr a = store.allocate();
    BlockAddr b = store.allocate();
    store.write_block(a, {rec(1, 2, 3, 4), rec(5, 6, 7, 8)});
    store.write_block(b, {rec(-9, -10, -11, 12)});
    BlockAddr c = store.allocate();
    store.write_block(c, {rec(0)});
    store.release(c);
    store.save(path);
  }
  BlockStore loaded = BlockStore::load_file(path);
  CHECK(loaded.block_capacity() == 8);
  auto a0 = loaded.read_block(0);
  REQUIRE(a0.size() == 2);
  CHECK(a0[0] == rec(1, 2, 3, 4));
  CHECK(a0[1] == rec(5, 6, 7, 8));
  auto b0 = loaded.read_block(1);
  REQUIRE(b0.size() == 1);
  CHECK(b0[0] == rec(-9, -10, -11, 12));
  CHECK_THROWS_AS((void)loaded.read_block(2), AddressError);
  std::remove(path.c_str());
}
