#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <string>

#include "pooltwin/engine/v2.hpp"

using namespace pooltwin;
using namespace pooltwin::engine;

namespace {

// Independent oracle: recover amount_out from the fee-adjusted invariant
// (r_in + (1-fee)*dx) * (r_out - out) = r_in * r_out by bisection.
double v2_out_by_invariant_root(double r_in, double r_out, double fee,
                                double dx) {
  const double k = r_in * r_out;
  const double rin_eff = r_in + (1.0 - fee) * dx;
  double lo = 0.0, hi = r_out;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (rin_eff * (r_out - mid) > k)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

BigInt random_bigint(std::mt19937_64& rng, int digits) {
  std::uniform_int_distribution<int> digit(0, 9);
  std::string s(1, static_cast<char>('1' + digit(rng) % 9));
  for (int i = 1; i < digits; ++i)
    s.push_back(static_cast<char>('0' + digit(rng)));
  return BigInt(s);
}

}  // namespace

TEST_CASE("v2 invariant is the reserve product") {
  CHECK(v2_invariant(V2StateD{1000.0, 100000.0}) == 100000000.0);
  CHECK(v2_invariant(V2StateD{1.0, 1.0}) == 1.0);
  CHECK(v2_invariant(V2StateI{BigInt(1100), BigInt(90909)}) ==
        BigInt(99999900));
}

TEST_CASE("v2 fee-free real swap matches the closed form") {
  const V2StateD s{1000.0, 100000.0, 0.0};
  const auto r = v2_swap_real<double>(s, 100.0, 0);

  CHECK_THAT(r.amount_out,
             Catch::Matchers::WithinRel(1000000.0 / 110.0, 1e-12));
  CHECK_THAT(r.state.reserve0, Catch::Matchers::WithinRel(1100.0, 1e-15));
  CHECK_THAT(r.state.reserve1,
             Catch::Matchers::WithinRel(100000.0 - 1000000.0 / 110.0, 1e-12));
  CHECK(r.drift.rounding_slack == 0.0);
}

TEST_CASE("v2 rational swap is exact") {
  const V2StateR s{Rational(1000), Rational(100000), 0.0};
  const auto r = v2_swap_real<Rational>(s, Rational(100), 0);

  CHECK(r.amount_out == Rational(1000000, 110));
  CHECK(r.state.reserve0 * r.state.reserve1 == Rational(100000000));
  CHECK(r.drift.fee_accrual == Rational(0));
}

TEST_CASE("v2 infinitesimal trade executes at spot") {
  const V2StateD s{1000.0, 100000.0, 0.0};
  const auto r = v2_swap_real<double>(s, 1e-9, 0);
  CHECK_THAT(r.amount_out / 1e-9, Catch::Matchers::WithinRel(100.0, 1e-8));
}

TEST_CASE("v2 fee-bearing swap agrees with the invariant-root oracle") {
  const V2StateD s{1000.0, 100000.0, 0.003};
  const auto r = v2_swap_real<double>(s, 10.0, 0);

  const double oracle = v2_out_by_invariant_root(1000.0, 100000.0, 0.003, 10.0);
  CHECK_THAT(r.amount_out, Catch::Matchers::WithinRel(oracle, 1e-9));
  CHECK_THAT(r.amount_out, Catch::Matchers::WithinAbs(987.1580, 5e-4));
}

TEST_CASE("v2 swap input validation") {
  const V2StateD s{1000.0, 100000.0, 0.0};
  CHECK_THROWS_AS(v2_swap_real<double>(s, 0.0, 0), Error);
  CHECK_THROWS_AS(v2_swap_real<double>(s, -5.0, 0), Error);
  CHECK_THROWS_AS(v2_swap_real<double>(s, 10.0, 2), Error);

  try {
    v2_swap_real<double>(s, 0.0, 0);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::non_positive_amount);
  }
}

TEST_CASE("v2 discretized swap floors the output reserve") {
  const V2StateI s{BigInt(1000), BigInt(100000), 0.0};
  const auto r = v2_swap_discretized(s, BigInt(100), 0);

  CHECK(r.state.reserve0 == BigInt(1100));
  CHECK(r.state.reserve1 == BigInt(90909));
  CHECK(r.amount_out == BigInt(9091));
  CHECK(r.drift.rounding_slack == BigInt(100));
  CHECK(r.drift.reserve_bound_used == BigInt(1100));
  CHECK(r.drift.rounding_slack <= r.drift.reserve_bound_used);
}

TEST_CASE("v2 discretized zero input is a no-op") {
  const V2StateI s{BigInt(1000), BigInt(100000), 0.0};
  const auto r = v2_swap_discretized(s, BigInt(0), 0);
  CHECK(r.state == s);
  CHECK(r.amount_out == 0);
  CHECK(r.drift.rounding_slack == 0);
}

TEST_CASE("v2 discretized swaps respect the one-sided rounding bound") {
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<int> digits(3, 24);
  std::uniform_int_distribution<int> side(0, 1);

  for (int trial = 0; trial < 50; ++trial) {
    V2StateI s{random_bigint(rng, digits(rng)), random_bigint(rng, digits(rng)),
               0.0};
    for (int step = 0; step < 20; ++step) {
      const int token_in = side(rng);
      const BigInt& r_in = token_in == 0 ? s.reserve0 : s.reserve1;
      std::uniform_int_distribution<long long> mult(1, 10000);
      const BigInt dx = r_in * mult(rng) / 1000 + 1;  // up to ~10x reserve

      const BigInt k0 = s.reserve0 * s.reserve1;
      const auto r = v2_swap_discretized(s, dx, token_in);
      const BigInt k1 = r.state.reserve0 * r.state.reserve1;

      REQUIRE(k1 <= k0);
      REQUIRE(k0 - k1 <= (token_in == 0 ? r.state.reserve0 : r.state.reserve1));
      s = r.state;
    }
  }
}

TEST_CASE("v2 fee-free real swaps preserve the invariant") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> res(1.0, 1e9);
  std::uniform_real_distribution<double> frac(1e-6, 5.0);

  for (int i = 0; i < 2000; ++i) {
    const V2StateD s{res(rng), res(rng), 0.0};
    const double k0 = s.reserve0 * s.reserve1;
    const auto r = v2_swap_real<double>(s, s.reserve0 * frac(rng), i % 2);
    const double k1 = r.state.reserve0 * r.state.reserve1;
    REQUIRE(std::fabs(k1 - k0) <= 1e-12 * k0);
  }
}

TEST_CASE("v2 fee-bearing real swaps weakly increase the invariant") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> res(1.0, 1e9);
  std::uniform_real_distribution<double> frac(1e-6, 5.0);
  std::uniform_real_distribution<double> fee(1e-5, 0.05);

  for (int i = 0; i < 2000; ++i) {
    const V2StateD s{res(rng), res(rng), fee(rng)};
    const double k0 = s.reserve0 * s.reserve1;
    const auto r = v2_swap_real<double>(s, s.reserve0 * frac(rng), i % 2);
    const double k1 = r.state.reserve0 * r.state.reserve1;
    REQUIRE(k1 - k0 >= -1e-12 * k0);
    REQUIRE(r.drift.fee_accrual >= 0.0);
  }

  // exact on rationals
  const V2StateR s{Rational(1000), Rational(100000), 0.003};
  const auto r = v2_swap_real<Rational>(s, Rational(10), 0);
  CHECK(r.state.reserve0 * r.state.reserve1 >= Rational(100000000));
}

TEST_CASE("v2 observation map") {
  const V2StateD s{1000.0, 100000.0, 0.0};

  const auto o = v2_observe(s, 1, 1.0);
  CHECK(o.spot_price == 100.0);
  CHECK(o.tvl == 200000.0);
  CHECK(o.position_value == 200000.0);

  CHECK(v2_observe(V2StateD{1.0, 1.0}, 1, 0.0).position_value == 0.0);
  CHECK(v2_observe(s, 0, 1.0).tvl == 2000.0);

  const auto post = v2_swap_real<double>(s, 100.0, 0);
  CHECK_THAT(v2_observe(post.state).spot_price,
             Catch::Matchers::WithinAbs(82.6446, 1e-3));
}

TEST_CASE("v2 proportional join mints pro-rata lp") {
  const V2StateD s{1000.0, 100000.0, 0.0};
  const auto r = v2_join<double>(s, 10.0, 1000.0, 100.0);
  CHECK_THAT(r.lp_minted, Catch::Matchers::WithinRel(1.0, 1e-12));
  CHECK(r.state.reserve0 == 1010.0);
  CHECK(r.state.reserve1 == 101000.0);

  CHECK_THROWS_AS(v2_join<double>(s, 0.0, 0.0, 100.0), Error);
  CHECK_THROWS_AS(v2_join<double>(s, 10.0, 900.0, 100.0), Error);
  try {
    v2_join<double>(s, 10.0, 900.0, 100.0);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::non_proportional_deposit);
  }
}

TEST_CASE("v2 join then exit restores the pool exactly on rationals") {
  const V2StateR s{Rational(1000), Rational(100000), 0.003};
  const auto joined = v2_join<Rational>(s, Rational(10), Rational(1000),
                                        Rational(100));
  const Rational fraction =
      joined.lp_minted / (Rational(100) + joined.lp_minted);
  const auto exited = v2_exit<Rational>(joined.state, fraction);

  CHECK(exited.state.reserve0 == Rational(1000));
  CHECK(exited.state.reserve1 == Rational(100000));
  CHECK(exited.withdrawn[0] == Rational(10));
  CHECK(exited.withdrawn[1] == Rational(1000));
}

TEST_CASE("v2 exit withdraws proportionally") {
  const V2StateD s{1000.0, 100000.0, 0.0};
  const auto half = v2_exit<double>(s, 0.5);
  CHECK(half.withdrawn[0] == 500.0);
  CHECK(half.withdrawn[1] == 50000.0);

  // full exit empties the pool; subsequent operations reject it
  const auto all = v2_exit<double>(s, 1.0);
  CHECK(all.state.reserve0 == 0.0);
  CHECK_THROWS_AS(v2_swap_real<double>(all.state, 1.0, 0), Error);
  CHECK_THROWS_AS(v2_observe(all.state), Error);

  // dust fraction of a huge pool stays positive
  const V2StateD huge{1e24, 3e24, 0.0};
  const auto dust = v2_exit<double>(huge, 1e-18);
  CHECK(dust.withdrawn[0] > 0.0);
  CHECK(dust.state.reserve0 > 0.0);

  CHECK_THROWS_AS(v2_exit<double>(s, 0.0), Error);
  CHECK_THROWS_AS(v2_exit<double>(s, 1.5), Error);
}

TEST_CASE("v2 operations are deterministic") {
  const V2StateD s{1234.5, 67890.1, 0.003};
  const auto a = v2_swap_real<double>(s, 55.5, 0);
  const auto b = v2_swap_real<double>(s, 55.5, 0);
  CHECK(a.amount_out == b.amount_out);
  CHECK(a.state == b.state);

  const V2StateI si{BigInt("123456789123456789"), BigInt("987654321987654321"),
                    0.0};
  const auto da = v2_swap_discretized(si, BigInt(1000000), 1);
  const auto db = v2_swap_discretized(si, BigInt(1000000), 1);
  CHECK(da.state == db.state);
  CHECK(da.amount_out == db.amount_out);
}
