#include <catch_amalgamated.hpp>

#include <set>
#include <vector>

#include "smotelab/parallel.hpp"
#include "smotelab/rng.hpp"

using namespace smotelab;

// Published Philox4x32-10 known-answer vectors.
TEST_CASE("philox matches the reference known-answer vectors", "[rng]") {
  using B = Philox4x32::Block;
  using K = Philox4x32::Key;
  CHECK(Philox4x32::generate(B{0, 0, 0, 0}, K{0, 0}) ==
        B{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
  CHECK(Philox4x32::generate(B{0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff},
                             K{0xffffffff, 0xffffffff}) ==
        B{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
  CHECK(Philox4x32::generate(B{0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344},
                             K{0xa4093822, 0x299f31d0}) ==
        B{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("streams are reproducible and independent of each other", "[rng]") {
  RngStream a(42), b(42), c(42, 1), d(43);
  std::vector<std::uint64_t> va, vb, vc, vd;
  for (int i = 0; i < 16; ++i) {
    va.push_back(a.next_u64());
    vb.push_back(b.next_u64());
    vc.push_back(c.next_u64());
    vd.push_back(d.next_u64());
  }
  CHECK(va == vb);
  CHECK(va != vc);
  CHECK(va != vd);
  CHECK(a.draws() == 16);
}

TEST_CASE("derive_key separates tags and orders", "[rng]") {
  std::set<std::uint64_t> keys;
  for (std::uint64_t seed : {0, 1}) {
    for (std::uint64_t t : {1, 2, 3}) {
      keys.insert(derive_key(seed, {t}));
      keys.insert(derive_key(seed, {t, 7}));
      keys.insert(derive_key(seed, {7, t}));
    }
  }
  CHECK(keys.size() == 18);
  CHECK(derive_key(5, {1, 2}) == derive_key(5, {1, 2}));
}

TEST_CASE("uniform variates stay in range and look uniform", "[rng]") {
  RngStream rng(7);
  constexpr int kDraws = 200000;
  double sum = 0.0;
  for (int i = 0; i < kDraws; ++i) {
    const double u = rng.uniform01();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    const double o = rng.open01();
    REQUIRE(o > 0.0);
    REQUIRE(o < 1.0);
    sum += u;
  }
  // 5 sigma of the mean of U(0,1)
  CHECK(std::abs(sum / kDraws - 0.5) < 5.0 * std::sqrt(1.0 / 12.0 / kDraws));
}

TEST_CASE("uniform_index is unbiased over a small range", "[rng]") {
  RngStream rng(11);
  constexpr std::uint64_t kBound = 7;
  constexpr int kDraws = 70000;
  std::vector<int> counts(kBound, 0);
  for (int i = 0; i < kDraws; ++i) {
    const auto j = rng.uniform_index(kBound);
    REQUIRE(j < kBound);
    ++counts[j];
  }
  double chi2 = 0.0;
  const double expected = static_cast<double>(kDraws) / kBound;
  for (int c : counts) chi2 += (c - expected) * (c - expected) / expected;
  // 6 degrees of freedom; the 0.999 quantile is 22.46
  CHECK(chi2 < 22.46);
  CHECK(rng.uniform_index(1) == 0);
}

TEST_CASE("parallel_for visits every index once and rethrows", "[rng][parallel]") {
  std::vector<int> hits(1000, 0);
  parallel_for(hits.size(), 4, [&](std::size_t i) { hits[i] += 1; });
  CHECK(std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; }));
  CHECK_THROWS_AS(parallel_for(10, 3,
                               [](std::size_t i) {
                                 if (i == 5) throw std::runtime_error("boom");
                               }),
                  std::runtime_error);
  CHECK(resolve_threads(0) >= 1);
  CHECK(resolve_threads(3) == 3);
}
