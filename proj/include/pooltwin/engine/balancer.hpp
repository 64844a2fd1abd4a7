#pragma once

#include <cmath>

#include "pooltwin/engine/types.hpp"

namespace pooltwin::engine {

// Two-asset weighted pool: invariant r0^w0 * r1^w1 with w0 + w1 = 1.
struct BalancerState {
  double reserve0 = 0.0;
  double reserve1 = 0.0;
  double weight0 = 0.5;
  double weight1 = 0.5;
  double fee = 0.0;

  friend bool operator==(const BalancerState&, const BalancerState&) = default;
};

inline void balancer_validate(const BalancerState& s) {
  if (!(s.reserve0 > 0.0) || !(s.reserve1 > 0.0))
    raise(Errc::empty_pool, "balancer pool has a non-positive reserve");
  if (!(s.weight0 > 0.0) || !(s.weight1 > 0.0) ||
      std::fabs(s.weight0 + s.weight1 - 1.0) > 1e-15)
    raise(Errc::invalid_snapshot, "balancer weights must be positive and sum to 1");
}

inline double balancer_invariant(const BalancerState& s) {
  balancer_validate(s);
  return std::pow(s.reserve0, s.weight0) * std::pow(s.reserve1, s.weight1);
}

struct BalancerSwapResult {
  BalancerState state;
  double amount_out = 0.0;
  InvariantDrift drift{};
};

// out-given-in: the unique solution preserving the weighted invariant on the
// fee-adjusted input.
inline BalancerSwapResult balancer_swap(const BalancerState& s,
                                        double amount_in, int token_in) {
  balancer_validate(s);
  if (token_in != 0 && token_in != 1)
    raise(Errc::unsupported_input, "balancer token index must be 0 or 1");
  if (amount_in < 0.0)
    raise(Errc::non_positive_amount, "swap amount must be non-negative");
  if (amount_in == 0.0) return {s, 0.0, {}};

  const double r_in = token_in == 0 ? s.reserve0 : s.reserve1;
  const double r_out = token_in == 0 ? s.reserve1 : s.reserve0;
  const double w_in = token_in == 0 ? s.weight0 : s.weight1;
  const double w_out = token_in == 0 ? s.weight1 : s.weight0;

  const double effective = amount_in * (1.0 - s.fee);
  const double ratio = r_in / (r_in + effective);
  const double amount_out = r_out * (1.0 - std::pow(ratio, w_in / w_out));
  if (!(amount_out < r_out))
    raise(Errc::drained_reserve, "swap would drain the output reserve");

  BalancerSwapResult r;
  r.state = s;
  if (token_in == 0) {
    r.state.reserve0 = r_in + amount_in;
    r.state.reserve1 = r_out - amount_out;
  } else {
    r.state.reserve1 = r_in + amount_in;
    r.state.reserve0 = r_out - amount_out;
  }
  r.amount_out = amount_out;

  const double i0 = balancer_invariant(s);
  const double i1 = balancer_invariant(r.state);
  r.drift.fee_accrual = i1 > i0 ? i1 - i0 : 0.0;
  return r;
}

// Marginal price of token0 in token1 units: (r1/w1) / (r0/w0).
inline Observation balancer_observe(const BalancerState& s, int numeraire = 1,
                                    double lp_fraction = 1.0) {
  balancer_validate(s);
  if (lp_fraction < 0.0 || lp_fraction > 1.0)
    raise(Errc::fraction_out_of_range, "lp_fraction must be in [0, 1]");

  Observation o;
  o.spot_price = (s.reserve1 / s.weight1) / (s.reserve0 / s.weight0);
  o.tvl = numeraire == 1 ? s.reserve1 + s.reserve0 * o.spot_price
                         : s.reserve0 + s.reserve1 / o.spot_price;
  o.position_value = lp_fraction * o.tvl;
  return o;
}

}  // namespace pooltwin::engine
