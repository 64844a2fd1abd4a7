#pragma once

#include <cmath>
#include <utility>

#include "pooltwin/engine/v2.hpp"

namespace pooltwin::engine {

// Protocol-standard tick grid: price(tick) = 1.0001^tick in minimal-unit
// price space.
inline double tick_to_sqrt_price(int tick) {
  return std::pow(1.0001, tick / 2.0);
}

inline double tick_to_price(int tick) {
  return std::pow(1.0001, static_cast<double>(tick));
}

// Active-range concentrated-liquidity state. sqrt_scale reconciles the raw
// tick grid with decimal-adjusted whole-token prices: the range bounds are
// tick_to_sqrt_price(tick) * sqrt_scale. Synthetic pools use scale 1.
struct V3State {
  double sqrt_price = 0.0;
  double liquidity = 0.0;
  int tick_lower = 0;
  int tick_upper = 0;
  double fee = 0.0;
  double sqrt_scale = 1.0;

  double sqrt_lower() const { return tick_to_sqrt_price(tick_lower) * sqrt_scale; }
  double sqrt_upper() const { return tick_to_sqrt_price(tick_upper) * sqrt_scale; }

  friend bool operator==(const V3State&, const V3State&) = default;
};

inline void v3_validate(const V3State& s) {
  if (!(s.liquidity > 0.0))
    raise(Errc::invalid_snapshot, "v3 liquidity must be positive");
  if (!(s.sqrt_price > 0.0))
    raise(Errc::invalid_snapshot, "v3 sqrt_price must be positive");
  if (s.tick_lower >= s.tick_upper)
    raise(Errc::invalid_snapshot, "v3 tick range is empty");
  if (s.sqrt_price < s.sqrt_lower() || s.sqrt_price >= s.sqrt_upper())
    raise(Errc::invalid_snapshot,
          "v3 sqrt_price outside the [tick_lower, tick_upper) price interval");
}

// Virtual reserves implied by active liquidity: L = sqrt(r0_virt * r1_virt).
inline std::pair<double, double> v3_virtual_reserves(const V3State& s) {
  return {s.liquidity / s.sqrt_price, s.liquidity * s.sqrt_price};
}

struct V3SwapResult {
  V3State state;
  double amount_out = 0.0;
  InvariantDrift drift{};
};

// Swaps inside the active tick evolve the virtual reserves exactly as V2;
// sqrt_price is re-derived from the post-swap virtual reserves and liquidity
// is untouched. Crossing the active range is rejected atomically.
inline V3SwapResult v3_swap_active(const V3State& s, double amount_in,
                                   int token_in) {
  v3_validate(s);
  v2_require_token(token_in);
  if (amount_in < 0.0)
    raise(Errc::non_positive_amount, "swap amount must be non-negative");
  if (amount_in == 0.0) return {s, 0.0, {}};

  const auto [r0v, r1v] = v3_virtual_reserves(s);
  const V2StateD virt{r0v, r1v, s.fee};
  const auto swapped = v2_swap_real<double>(virt, amount_in, token_in);

  const double sqrt_after =
      std::sqrt(swapped.state.reserve1 / swapped.state.reserve0);
  if (sqrt_after < s.sqrt_lower() || sqrt_after >= s.sqrt_upper())
    raise(Errc::tick_range_exit,
          "swap would push the price out of the active tick range");

  V3SwapResult r;
  r.state = s;
  r.state.sqrt_price = sqrt_after;
  r.amount_out = swapped.amount_out;
  r.drift = swapped.drift;
  return r;
}

inline Observation v3_observe(const V3State& s, int numeraire = 1,
                              double lp_fraction = 1.0) {
  v3_validate(s);
  const auto [r0v, r1v] = v3_virtual_reserves(s);
  Observation o = v2_observe(V2StateD{r0v, r1v, s.fee}, numeraire, lp_fraction);
  o.spot_price = s.sqrt_price * s.sqrt_price;
  return o;
}

}  // namespace pooltwin::engine
