#pragma once

#include <array>
#include <optional>
#include <string>

#include "pooltwin/errors.hpp"
#include "pooltwin/numeric.hpp"

namespace pooltwin {

// Real: exact rationals (or doubles with >= 1e-12 relative accuracy).
// Discretized: arbitrary-precision integers in minimal token units, floor
// rounding on the output leg.
enum class ArithmeticMode { Real, Discretized };

enum class Protocol { V2, V3, Balancer, Stableswap };

inline const char* protocol_name(Protocol p) {
  switch (p) {
    case Protocol::V2: return "v2";
    case Protocol::V3: return "v3";
    case Protocol::Balancer: return "balancer";
    case Protocol::Stableswap: return "stableswap";
  }
  return "unknown";
}

inline Protocol protocol_from_name(const std::string& name) {
  if (name == "v2") return Protocol::V2;
  if (name == "v3") return Protocol::V3;
  if (name == "balancer") return Protocol::Balancer;
  if (name == "stableswap") return Protocol::Stableswap;
  raise(Errc::unsupported_protocol, "unknown protocol '" + name + "'");
}

// Output of the observation map h: closed-form functions of state alone.
struct Observation {
  double spot_price = 0.0;      // token1 per token0
  double tvl = 0.0;             // in the chosen numeraire, both legs at spot
  double position_value = 0.0;  // lp_fraction * tvl
};

// Per-transition invariant drift: fee accrual (weakly increases the
// invariant) and rounding slack (one-sided decrease, bounded by the
// post-swap input-side reserve).
template <typename T>
struct InvariantDriftT {
  T fee_accrual{};
  T rounding_slack{};
  T reserve_bound_used{};
};

using InvariantDrift = InvariantDriftT<double>;

struct SwapInput {
  ArithmeticMode arithmetic = ArithmeticMode::Real;
  int token_in = 0;
  // Output token; -1 means "the other token" (2-asset pools).
  int token_out = -1;
  double amount_in = 0.0;
  // Exact amount in minimal units; required for Discretized swaps, optional
  // carrier of exactness for rational Real-mode swaps.
  std::optional<BigInt> amount_in_raw;

  static SwapInput real(double amount, int token_in = 0) {
    SwapInput in;
    in.arithmetic = ArithmeticMode::Real;
    in.token_in = token_in;
    in.amount_in = amount;
    return in;
  }

  static SwapInput exact(BigInt amount, int token_in = 0,
                         ArithmeticMode mode = ArithmeticMode::Discretized) {
    SwapInput in;
    in.arithmetic = mode;
    in.token_in = token_in;
    in.amount_in = to_double(amount);
    in.amount_in_raw = std::move(amount);
    return in;
  }
};

struct JoinInput {
  double amount0 = 0.0;
  double amount1 = 0.0;
  double lp_supply = 1.0;
};

struct ExitInput {
  double lp_fraction = 0.0;
};

struct TransitionReceipt {
  double amount_out = 0.0;
  std::array<double, 2> withdrawn{0.0, 0.0};
  double lp_minted = 0.0;
  InvariantDrift drift{};
  // Exact values, present for Discretized transitions only.
  std::optional<BigInt> raw_amount_out;
  std::optional<BigInt> raw_rounding_slack;
  std::optional<BigInt> raw_reserve_bound;
};

}  // namespace pooltwin
