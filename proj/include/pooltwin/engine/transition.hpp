#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>
#include <variant>

#include "pooltwin/engine/balancer.hpp"
#include "pooltwin/engine/stableswap.hpp"
#include "pooltwin/engine/v2.hpp"
#include "pooltwin/engine/v3.hpp"

namespace pooltwin::engine {

// One realization of the transition map f: Real-mode V2 state is
// rational-backed so fee-free trajectories conserve the invariant exactly;
// Discretized V2 state is integer-backed in minimal units.
using EngineState =
    std::variant<V2StateR, V2StateI, V3State, BalancerState, StableswapState>;

using TransitionInput = std::variant<SwapInput, JoinInput, ExitInput>;

inline Protocol protocol_of(const EngineState& s) {
  switch (s.index()) {
    case 0:
    case 1: return Protocol::V2;
    case 2: return Protocol::V3;
    case 3: return Protocol::Balancer;
    default: return Protocol::Stableswap;
  }
}

inline ArithmeticMode mode_of(const EngineState& s) {
  return std::holds_alternative<V2StateI>(s) ? ArithmeticMode::Discretized
                                             : ArithmeticMode::Real;
}

struct TransitionResult {
  EngineState state;
  TransitionReceipt receipt;
};

namespace detail {

inline Rational rational_amount(const SwapInput& in) {
  return in.amount_in_raw ? Rational(*in.amount_in_raw)
                          : Rational(in.amount_in);
}

inline BigInt integer_amount(const SwapInput& in) {
  if (in.amount_in_raw) return *in.amount_in_raw;
  const double v = in.amount_in;
  if (!(v >= 0.0) || v != std::floor(v) || v > 9.007199254740992e15)
    raise(Errc::invalid_arguments,
          "discretized swap needs an exact integer amount");
  return BigInt(static_cast<long long>(v));
}

inline std::size_t stableswap_out_index(const SwapInput& in, std::size_t n) {
  if (in.token_out >= 0) return static_cast<std::size_t>(in.token_out);
  if (n == 2) return static_cast<std::size_t>(1 - in.token_in);
  raise(Errc::unsupported_input,
        "stableswap pools with more than 2 assets need an explicit token_out");
}

inline InvariantDrift drift_to_double(const InvariantDriftT<Rational>& d) {
  return {to_double(d.fee_accrual), to_double(d.rounding_slack),
          to_double(d.reserve_bound_used)};
}

inline InvariantDrift drift_to_double(const InvariantDriftT<BigInt>& d) {
  return {to_double(d.fee_accrual), to_double(d.rounding_slack),
          to_double(d.reserve_bound_used)};
}

}  // namespace detail

inline TransitionResult apply_transition(const EngineState& state,
                                         const TransitionInput& input) {
  TransitionResult out;

  if (const auto* swap = std::get_if<SwapInput>(&input)) {
    if (const auto* v2r = std::get_if<V2StateR>(&state)) {
      if (swap->arithmetic != ArithmeticMode::Real)
        raise(Errc::unsupported_arithmetic,
              "twin was built in Real mode; use a Discretized build");
      auto r = v2_swap_real<Rational>(*v2r, detail::rational_amount(*swap),
                                      swap->token_in);
      out.state = std::move(r.state);
      out.receipt.amount_out = to_double(r.amount_out);
      out.receipt.drift = detail::drift_to_double(r.drift);
      return out;
    }
    if (const auto* v2i = std::get_if<V2StateI>(&state)) {
      if (swap->arithmetic != ArithmeticMode::Discretized)
        raise(Errc::unsupported_arithmetic,
              "twin was built in Discretized mode; use a Real build");
      auto r = v2_swap_discretized(*v2i, detail::integer_amount(*swap),
                                   swap->token_in);
      out.receipt.amount_out = to_double(r.amount_out);
      out.receipt.drift = detail::drift_to_double(r.drift);
      out.receipt.raw_amount_out = std::move(r.amount_out);
      out.receipt.raw_rounding_slack = std::move(r.drift.rounding_slack);
      out.receipt.raw_reserve_bound = std::move(r.drift.reserve_bound_used);
      out.state = std::move(r.state);
      return out;
    }
    if (swap->arithmetic != ArithmeticMode::Real)
      raise(Errc::unsupported_arithmetic,
            "discretized arithmetic is available for V2 pools only");
    if (const auto* v3 = std::get_if<V3State>(&state)) {
      auto r = v3_swap_active(*v3, swap->amount_in, swap->token_in);
      out.state = std::move(r.state);
      out.receipt.amount_out = r.amount_out;
      out.receipt.drift = r.drift;
      return out;
    }
    if (const auto* bal = std::get_if<BalancerState>(&state)) {
      auto r = balancer_swap(*bal, swap->amount_in, swap->token_in);
      out.state = std::move(r.state);
      out.receipt.amount_out = r.amount_out;
      out.receipt.drift = r.drift;
      return out;
    }
    const auto& ss = std::get<StableswapState>(state);
    const auto token_out = detail::stableswap_out_index(*swap, ss.reserves.size());
    auto r = stableswap_swap<double>(ss, swap->amount_in,
                                     static_cast<std::size_t>(swap->token_in),
                                     token_out);
    out.state = std::move(r.state);
    out.receipt.amount_out = r.amount_out;
    out.receipt.drift = {r.drift.fee_accrual, 0.0, 0.0};
    return out;
  }

  if (const auto* join = std::get_if<JoinInput>(&input)) {
    if (const auto* v2r = std::get_if<V2StateR>(&state)) {
      auto r = v2_join<Rational>(*v2r, Rational(join->amount0),
                                 Rational(join->amount1),
                                 Rational(join->lp_supply));
      out.state = std::move(r.state);
      out.receipt.lp_minted = to_double(r.lp_minted);
      return out;
    }
    if (std::holds_alternative<V2StateI>(state))
      raise(Errc::unsupported_arithmetic,
            "joins are not defined for Discretized twins");
    raise(Errc::unsupported_input, "joins are supported for V2 pools only");
  }

  const auto& exit = std::get<ExitInput>(input);
  if (const auto* v2r = std::get_if<V2StateR>(&state)) {
    auto r = v2_exit<Rational>(*v2r, Rational(exit.lp_fraction));
    out.state = std::move(r.state);
    out.receipt.withdrawn = {to_double(r.withdrawn[0]),
                             to_double(r.withdrawn[1])};
    return out;
  }
  if (std::holds_alternative<V2StateI>(state))
    raise(Errc::unsupported_arithmetic,
          "exits are not defined for Discretized twins");
  raise(Errc::unsupported_input, "exits are supported for V2 pools only");
}

inline Observation observe_state(const EngineState& state, int numeraire = 1,
                                 double lp_fraction = 1.0) {
  return std::visit(
      [&](const auto& s) -> Observation {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, V2StateR> || std::is_same_v<S, V2StateI>)
          return v2_observe(s, numeraire, lp_fraction);
        else if constexpr (std::is_same_v<S, V3State>)
          return v3_observe(s, numeraire, lp_fraction);
        else if constexpr (std::is_same_v<S, BalancerState>)
          return balancer_observe(s, numeraire, lp_fraction);
        else
          return stableswap_observe(s, numeraire, lp_fraction);
      },
      state);
}

namespace detail {

inline std::string dbl_repr(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline std::string rational_repr(const Rational& v) {
  return numerator(v).str() + "/" + denominator(v).str();
}

}  // namespace detail

// Canonical exact textual key of a state; equal keys iff equal states.
inline std::string state_key(const EngineState& state) {
  using detail::dbl_repr;
  return std::visit(
      [](const auto& s) -> std::string {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, V2StateR>) {
          return "v2r|" + detail::rational_repr(s.reserve0) + "|" +
                 detail::rational_repr(s.reserve1) + "|" + dbl_repr(s.fee);
        } else if constexpr (std::is_same_v<S, V2StateI>) {
          return "v2i|" + s.reserve0.str() + "|" + s.reserve1.str() + "|" +
                 dbl_repr(s.fee);
        } else if constexpr (std::is_same_v<S, V3State>) {
          return "v3|" + dbl_repr(s.sqrt_price) + "|" + dbl_repr(s.liquidity) +
                 "|" + std::to_string(s.tick_lower) + "|" +
                 std::to_string(s.tick_upper) + "|" + dbl_repr(s.fee) + "|" +
                 dbl_repr(s.sqrt_scale);
        } else if constexpr (std::is_same_v<S, BalancerState>) {
          return "bal|" + dbl_repr(s.reserve0) + "|" + dbl_repr(s.reserve1) +
                 "|" + dbl_repr(s.weight0) + "|" + dbl_repr(s.weight1) + "|" +
                 dbl_repr(s.fee);
        } else {
          std::string key = "ss|" + dbl_repr(s.amplification);
          for (const auto& r : s.reserves) key += "|" + dbl_repr(r);
          key += "|" + dbl_repr(s.fee);
          return key;
        }
      },
      state);
}

inline std::uint64_t state_hash(const EngineState& state) {
  // FNV-1a 64
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : state_key(state)) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace pooltwin::engine
