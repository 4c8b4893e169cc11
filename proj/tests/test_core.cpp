#include <gtest/gtest.h>

#include <string>

#include "elastic/core/bytes.hpp"
#include "elastic/core/clock.hpp"
#include "elastic/core/error.hpp"
#include "elastic/core/rng.hpp"
#include "elastic/exec/token_bucket.hpp"

using namespace elastic;

TEST(Error, CarriesCodeAndCause) {
  const Error e(Errc::TaskFailed, "boom", Errc::Throttled);
  EXPECT_EQ(e.code(), Errc::TaskFailed);
  ASSERT_TRUE(e.cause().has_value());
  EXPECT_EQ(*e.cause(), Errc::Throttled);
  EXPECT_NE(std::string(e.what()).find("TASK_FAILED"), std::string::npos);
  EXPECT_EQ(to_string(Errc::VertexOutOfRange), "VERTEX_OUT_OF_RANGE");
}

TEST(Bytes, RoundTripsStructuredValues) {
  const std::vector<std::uint64_t> v{1, 2, 1ULL << 60};
  EXPECT_EQ(decode<std::vector<std::uint64_t>>(encode(v)), v);
  EXPECT_EQ(decode<std::string>(encode(std::string("hello"))), "hello");
}

TEST(Bytes, RejectsTruncatedAndTrailingInput) {
  auto b = encode(std::vector<std::uint64_t>{1, 2, 3});
  auto truncated = b;
  truncated.pop_back();
  try {
    decode<std::vector<std::uint64_t>>(truncated);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::UndecodablePayload);
  }
  auto longer = b;
  longer.push_back(0);
  EXPECT_THROW(decode<std::vector<std::uint64_t>>(longer), Error);
}

TEST(Rng, SplitMixMatchesPublishedSequence) {
  // First outputs of the reference splitmix64 with seed 1234567.
  SplitMix64 r(1234567);
  EXPECT_EQ(r.next(), 6457827717110365317ULL);
  EXPECT_EQ(r.next(), 3203168211198807973ULL);
  EXPECT_EQ(r.next(), 9817491932198370423ULL);
}

TEST(Rng, UniformStaysInUnitInterval) {
  SplitMix64 r(7);
  for (int i = 0; i < 10000; ++i) {
    const double u = r.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
}

TEST(Rng, DerivedSeedsDifferByName) {
  EXPECT_NE(derive_seed(2, "permute"), derive_seed(2, "durations"));
  EXPECT_EQ(derive_seed(2, "permute"), derive_seed(2, "permute"));
  EXPECT_NE(derive_seed(2, "permute"), derive_seed(3, "permute"));
}

TEST(Clock, VirtualClockRefusesToGoBack) {
  VirtualClock c;
  c.advance_to(5.0);
  EXPECT_EQ(c.now_ms(), 5.0);
  EXPECT_THROW(c.advance_to(4.0), Error);
}

TEST(TokenBucket, AdmitsBurstThenPaces) {
  TokenBucket b(10.0);  // 10 per second, burst 10
  int admitted = 0;
  while (b.try_take(0.0)) ++admitted;
  EXPECT_EQ(admitted, 10);
  EXPECT_NEAR(b.wait_ms(0.0), 100.0, 1e-9);
  EXPECT_FALSE(b.try_take(99.0));
  EXPECT_TRUE(b.try_take(100.0));
}

// Waking at now + wait_ms() must always yield a token, even where the wait is
// below the resolution of the timestamp.
TEST(TokenBucket, WaitAlwaysEndsWithAToken) {
  TokenBucket b(10'000.0);
  double now = 0.0;
  SplitMix64 rng(5);
  for (int i = 0; i < 200'000; ++i) {
    now += rng.uniform() * 0.3;
    while (b.try_take(now)) {
    }
    const double wake = now + b.wait_ms(now);
    ASSERT_TRUE(b.try_take(wake)) << "at " << now;
    now = wake;
  }
  for (double t : {1e5, 1e7, 1e9}) {
    TokenBucket big(10'000.0);
    while (big.try_take(t)) {
    }
    const double wake = t + big.wait_ms(t);
    EXPECT_GT(wake, t);
    EXPECT_TRUE(big.try_take(wake));
  }
}
