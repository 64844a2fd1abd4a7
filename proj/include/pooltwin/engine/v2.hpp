#pragma once

#include <array>
#include <utility>

#include "pooltwin/engine/types.hpp"

namespace pooltwin::engine {

// Constant-product pool state. T is double or Rational for real-valued
// arithmetic (whole-token units) and BigInt for discretized arithmetic
// (minimal token units, floor rounding on the output leg).
template <typename T>
struct V2StateT {
  T reserve0{};
  T reserve1{};
  double fee = 0.0;  // swap fee fraction in [0, 1)

  friend bool operator==(const V2StateT&, const V2StateT&) = default;
};

using V2StateD = V2StateT<double>;
using V2StateR = V2StateT<Rational>;
using V2StateI = V2StateT<BigInt>;

template <typename T>
void v2_require_live(const V2StateT<T>& s) {
  if (!(s.reserve0 > T(0)) || !(s.reserve1 > T(0)))
    raise(Errc::empty_pool, "v2 pool has a non-positive reserve");
}

inline void v2_require_token(int token_in) {
  if (token_in != 0 && token_in != 1)
    raise(Errc::unsupported_input, "v2 token index must be 0 or 1");
}

template <typename T>
T v2_invariant(const V2StateT<T>& s) {
  v2_require_live(s);
  return s.reserve0 * s.reserve1;
}

template <typename T>
struct V2SwapResultT {
  V2StateT<T> state;
  T amount_out{};
  InvariantDriftT<T> drift{};
};

// Real-valued transition: the full input lands in the reserve, the fee share
// of the input is excluded from pricing, so the invariant weakly increases.
template <typename T>
V2SwapResultT<T> v2_swap_real(const V2StateT<T>& s, const T& amount_in,
                              int token_in) {
  v2_require_live(s);
  v2_require_token(token_in);
  if (!(amount_in > T(0)))
    raise(Errc::non_positive_amount, "swap amount must be positive");

  const T& r_in = token_in == 0 ? s.reserve0 : s.reserve1;
  const T& r_out = token_in == 0 ? s.reserve1 : s.reserve0;
  const T effective = amount_in * (T(1) - from_double<T>(s.fee));
  const T amount_out = effective * r_out / (r_in + effective);
  if (!(amount_out < r_out))
    raise(Errc::drained_reserve, "swap would drain the output reserve");

  V2StateT<T> next = s;
  if (token_in == 0) {
    next.reserve0 = r_in + amount_in;
    next.reserve1 = r_out - amount_out;
  } else {
    next.reserve1 = r_in + amount_in;
    next.reserve0 = r_out - amount_out;
  }

  InvariantDriftT<T> drift{};
  const T k0 = s.reserve0 * s.reserve1;
  const T k1 = next.reserve0 * next.reserve1;
  drift.fee_accrual = k1 > k0 ? T(k1 - k0) : T(0);
  return {std::move(next), amount_out, std::move(drift)};
}

// Discretized fee-free transition: floor division on the output reserve.
// A zero amount is a no-op with zero slack.
inline V2SwapResultT<BigInt> v2_swap_discretized(const V2StateT<BigInt>& s,
                                                 const BigInt& amount_in,
                                                 int token_in) {
  v2_require_live(s);
  v2_require_token(token_in);
  if (s.fee != 0.0)
    raise(Errc::unsupported_arithmetic,
          "discretized swaps are fee-free; fee-bearing swaps require Real mode");
  if (amount_in < 0)
    raise(Errc::non_positive_amount, "swap amount must be non-negative");

  const BigInt& r_in = token_in == 0 ? s.reserve0 : s.reserve1;
  const BigInt& r_out = token_in == 0 ? s.reserve1 : s.reserve0;

  if (amount_in == 0) {
    InvariantDriftT<BigInt> drift{BigInt(0), BigInt(0), r_in};
    return {s, BigInt(0), std::move(drift)};
  }

  const BigInt k0 = s.reserve0 * s.reserve1;
  const BigInt r_in_next = r_in + amount_in;
  const BigInt r_out_next = k0 / r_in_next;  // floor: operands positive
  if (r_out_next == 0)
    raise(Errc::drained_reserve, "swap would floor the output reserve to zero");
  const BigInt amount_out = r_out - r_out_next;

  V2StateT<BigInt> next = s;
  if (token_in == 0) {
    next.reserve0 = r_in_next;
    next.reserve1 = r_out_next;
  } else {
    next.reserve1 = r_in_next;
    next.reserve0 = r_out_next;
  }

  InvariantDriftT<BigInt> drift{};
  drift.rounding_slack = k0 - r_in_next * r_out_next;
  drift.reserve_bound_used = r_in_next;
  return {std::move(next), amount_out, std::move(drift)};
}

template <typename T>
Observation v2_observe(const V2StateT<T>& s, int numeraire = 1,
                       double lp_fraction = 1.0) {
  v2_require_live(s);
  v2_require_token(numeraire);
  if (lp_fraction < 0.0 || lp_fraction > 1.0)
    raise(Errc::fraction_out_of_range, "lp_fraction must be in [0, 1]");

  Observation o;
  o.spot_price = div_to_double(s.reserve1, s.reserve0);
  o.tvl = 2.0 * to_double(numeraire == 1 ? s.reserve1 : s.reserve0);
  o.position_value = lp_fraction * o.tvl;
  return o;
}

template <typename T>
struct V2JoinResultT {
  V2StateT<T> state;
  T lp_minted{};
};

// Proportional join only; single-sided entry goes through the deposit-split
// primitive.
template <typename T>
V2JoinResultT<T> v2_join(const V2StateT<T>& s, const T& amount0,
                         const T& amount1, const T& lp_supply) {
  v2_require_live(s);
  if (amount0 < T(0) || amount1 < T(0))
    raise(Errc::non_positive_amount, "deposits must be non-negative");
  if (!(amount0 > T(0)) && !(amount1 > T(0)))
    raise(Errc::non_positive_amount, "at least one deposit must be positive");

  // d0/r0 == d1/r1 within 1e-12 relative, compared cross-multiplied.
  const T lhs = amount0 * s.reserve1;
  const T rhs = amount1 * s.reserve0;
  const T diff = lhs > rhs ? T(lhs - rhs) : T(rhs - lhs);
  const T scale = lhs > rhs ? lhs : rhs;
  if (diff > from_double<T>(1e-12) * scale)
    raise(Errc::non_proportional_deposit,
          "deposit ratio does not match pool ratio");

  V2JoinResultT<T> r;
  r.state = s;
  r.state.reserve0 = s.reserve0 + amount0;
  r.state.reserve1 = s.reserve1 + amount1;
  r.lp_minted = lp_supply * amount0 / s.reserve0;
  return r;
}

template <typename T>
struct V2ExitResultT {
  V2StateT<T> state;
  std::array<T, 2> withdrawn{};
};

template <typename T>
V2ExitResultT<T> v2_exit(const V2StateT<T>& s, const T& lp_fraction) {
  v2_require_live(s);
  if (!(lp_fraction > T(0)) || lp_fraction > T(1))
    raise(Errc::fraction_out_of_range, "exit fraction must be in (0, 1]");

  V2ExitResultT<T> r;
  r.withdrawn = {T(s.reserve0 * lp_fraction), T(s.reserve1 * lp_fraction)};
  r.state = s;
  r.state.reserve0 = s.reserve0 - r.withdrawn[0];
  r.state.reserve1 = s.reserve1 - r.withdrawn[1];
  return r;
}

}  // namespace pooltwin::engine
