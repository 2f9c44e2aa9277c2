#include "doctest.h"
#include "warpsat/rng.hpp"

#include <cmath>
#include <set>

using namespace warpsat;

TEST_CASE("same seed, same stream") {
  Rng a(42), b(42);
  for (int i = 0; i < 1000; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("below stays in range and covers small ranges") {
  Rng rng(7);
  std::set<uint64_t> seen;
  for (int i = 0; i < 10000; ++i) {
    const uint64_t v = rng.below(7);
    CHECK(v < 7);
    seen.insert(v);
  }
  CHECK(seen.size() == 7);
}

TEST_CASE("below(1) is always zero") {
  Rng rng(1);
  for (int i = 0; i < 100; ++i) CHECK(rng.below(1) == 0);
}

TEST_CASE("uniform01 in [0,1) with sensible mean") {
  Rng rng(3);
  double sum = 0.0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform01();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    sum += u;
  }
  CHECK(std::abs(sum / n - 0.5) < 0.01);
}

TEST_CASE("derive_seed decorrelates adjacent indices") {
  const uint64_t a = derive_seed(123, 0);
  const uint64_t b = derive_seed(123, 1);
  const uint64_t c = derive_seed(124, 0);
  CHECK(a != b);
  CHECK(a != c);
  // streams from adjacent derived seeds differ immediately
  Rng ra(a), rb(b);
  CHECK(ra.next_u64() != rb.next_u64());
}

TEST_CASE("coin is roughly fair") {
  Rng rng(99);
  int heads = 0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) heads += rng.coin();
  CHECK(std::abs(heads - n / 2) < 4 * std::sqrt(n / 4.0));
}
