#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "pooltwin/engine/types.hpp"

namespace pooltwin::engine {

// Amplified-invariant pool over n >= 2 assets:
//   A*n^n*sum(r) + D = A*n^n*D + D^(n+1) / (n^n * prod(r))
// D is implicit and recovered by Newton iteration.
template <typename T>
struct StableswapStateT {
  std::vector<T> reserves;
  double amplification = 1.0;
  double fee = 0.0;

  friend bool operator==(const StableswapStateT&, const StableswapStateT&) = default;
};

using StableswapState = StableswapStateT<double>;
using StableswapStateI = StableswapStateT<BigInt>;

// Convergence rule per numeric type: successive iterates within 1e-10
// relative for reals, within 1 minimal unit for integers. Cap 255.
template <typename T>
struct NewtonTraits;

template <>
struct NewtonTraits<double> {
  static constexpr std::size_t max_iterations = 255;
  static bool converged(double a, double b) {
    return std::fabs(a - b) <= 1e-10 * std::fabs(a);
  }
  static double amp(double a) { return a; }
};

template <>
struct NewtonTraits<BigInt> {
  static constexpr std::size_t max_iterations = 255;
  static bool converged(const BigInt& a, const BigInt& b) {
    return (a > b ? a - b : b - a) <= 1;
  }
  static BigInt amp(double a) { return BigInt(static_cast<long long>(a)); }
};

template <typename T>
void stableswap_validate(const StableswapStateT<T>& s) {
  if (s.reserves.size() < 2)
    raise(Errc::invalid_snapshot, "stableswap needs at least 2 assets");
  for (const auto& r : s.reserves)
    if (!(r > T(0)))
      raise(Errc::empty_pool, "stableswap pool has a non-positive reserve");
  if (!(s.amplification > 0.0))
    raise(Errc::invalid_snapshot, "amplification must be positive");
}

template <typename T>
T ann_coefficient(double amplification, std::size_t n) {
  T ann = NewtonTraits<T>::amp(amplification);
  for (std::size_t i = 0; i < n; ++i) ann *= T(static_cast<int>(n));
  return ann;
}

template <typename T>
T stableswap_D(const StableswapStateT<T>& s) {
  stableswap_validate(s);
  const std::size_t n = s.reserves.size();
  const T n_t = T(static_cast<int>(n));
  const T ann = ann_coefficient<T>(s.amplification, n);

  T sum{};
  for (const auto& r : s.reserves) sum += r;

  T d = sum;  // initial guess
  for (std::size_t it = 0; it < NewtonTraits<T>::max_iterations; ++it) {
    T d_prod = d;
    for (const auto& r : s.reserves) d_prod = d_prod * d / (r * n_t);

    const T d_prev = d;
    d = (ann * sum + d_prod * n_t) * d /
        ((ann - T(1)) * d + (n_t + T(1)) * d_prod);
    if (NewtonTraits<T>::converged(d, d_prev)) return d;
  }
  raise(Errc::newton_non_convergence, "D iteration did not converge");
}

// Solve the output-side reserve y for asset `out` given all other reserves,
// with D held fixed: y^2 + y*(b - D) = c.
template <typename T>
T stableswap_y(const std::vector<T>& reserves, double amplification,
               const T& d, std::size_t out) {
  const std::size_t n = reserves.size();
  const T n_t = T(static_cast<int>(n));
  const T ann = ann_coefficient<T>(amplification, n);

  T sum_excl{};
  T c = d;
  for (std::size_t i = 0; i < n; ++i) {
    if (i == out) continue;
    sum_excl += reserves[i];
    c = c * d / (reserves[i] * n_t);
  }
  c = c * d / (ann * n_t);
  const T b = sum_excl + d / ann;

  T y = d;
  for (std::size_t it = 0; it < NewtonTraits<T>::max_iterations; ++it) {
    const T y_prev = y;
    y = (y * y + c) / (T(2) * y + b - d);
    if (NewtonTraits<T>::converged(y, y_prev)) return y;
  }
  raise(Errc::newton_non_convergence, "y iteration did not converge");
}

template <typename T>
struct StableswapSwapResult {
  StableswapStateT<T> state;
  T amount_out{};
  InvariantDriftT<T> drift{};
};

// Invariant-preserving swap with the fee applied to the output leg, so the
// solve itself stays fee-free.
template <typename T>
StableswapSwapResult<T> stableswap_swap(const StableswapStateT<T>& s,
                                        const T& amount_in, std::size_t token_in,
                                        std::size_t token_out) {
  stableswap_validate(s);
  const std::size_t n = s.reserves.size();
  if (token_in >= n || token_out >= n || token_in == token_out)
    raise(Errc::unsupported_input, "invalid stableswap token indices");
  if (amount_in < T(0))
    raise(Errc::non_positive_amount, "swap amount must be non-negative");
  if (amount_in == T(0)) return {s, T(0), {}};

  const T d = stableswap_D(s);
  std::vector<T> next = s.reserves;
  next[token_in] += amount_in;

  const T y = stableswap_y(next, s.amplification, d, token_out);
  if (!(y > T(0)) || !(y < s.reserves[token_out]))
    raise(Errc::drained_reserve, "swap would drain the output reserve");

  const T gross_out = s.reserves[token_out] - y;
  const T fee_amount = gross_out * from_double<T>(s.fee);
  const T amount_out = gross_out - fee_amount;
  next[token_out] = y + fee_amount;  // pool keeps the output-leg fee

  StableswapSwapResult<T> r;
  r.state = s;
  r.state.reserves = std::move(next);
  r.amount_out = amount_out;

  const T d_after = stableswap_D(r.state);
  r.drift.fee_accrual = d_after > d ? T(d_after - d) : T(0);
  return r;
}

// BigInt fee path needs an exact fractional multiply; restrict to fee-free.
template <>
inline StableswapSwapResult<BigInt> stableswap_swap<BigInt>(
    const StableswapStateT<BigInt>& s, const BigInt& amount_in,
    std::size_t token_in, std::size_t token_out) {
  stableswap_validate(s);
  const std::size_t n = s.reserves.size();
  if (token_in >= n || token_out >= n || token_in == token_out)
    raise(Errc::unsupported_input, "invalid stableswap token indices");
  if (s.fee != 0.0)
    raise(Errc::unsupported_arithmetic,
          "discretized stableswap swaps are fee-free");
  if (amount_in < 0)
    raise(Errc::non_positive_amount, "swap amount must be non-negative");
  if (amount_in == 0) return {s, BigInt(0), {}};

  const BigInt d = stableswap_D(s);
  std::vector<BigInt> next = s.reserves;
  next[token_in] += amount_in;

  const BigInt y = stableswap_y(next, s.amplification, d, token_out);
  if (!(y > 0) || !(y < s.reserves[token_out]))
    raise(Errc::drained_reserve, "swap would drain the output reserve");

  StableswapSwapResult<BigInt> r;
  r.amount_out = s.reserves[token_out] - y;
  next[token_out] = y;
  r.state = s;
  r.state.reserves = std::move(next);
  return r;
}

// d_tilde = D^(n+1) / (n^n * prod(r)); marginal price of token `base` in
// units of token `quote` is (Ann + d_tilde/r_base) / (Ann + d_tilde/r_quote).
inline double stableswap_marginal_price(const StableswapState& s,
                                        std::size_t base, std::size_t quote) {
  stableswap_validate(s);
  const std::size_t n = s.reserves.size();
  if (base >= n || quote >= n)
    raise(Errc::unsupported_input, "invalid stableswap token indices");

  const double ann = ann_coefficient<double>(s.amplification, n);
  const double d = stableswap_D(s);
  double d_tilde = d;
  for (const auto& r : s.reserves) d_tilde = d_tilde * d / (r * double(n));
  return (ann + d_tilde / s.reserves[base]) /
         (ann + d_tilde / s.reserves[quote]);
}

inline Observation stableswap_observe(const StableswapState& s,
                                      int numeraire = 1,
                                      double lp_fraction = 1.0) {
  stableswap_validate(s);
  if (numeraire < 0 || static_cast<std::size_t>(numeraire) >= s.reserves.size())
    raise(Errc::unsupported_input, "numeraire index out of range");
  if (lp_fraction < 0.0 || lp_fraction > 1.0)
    raise(Errc::fraction_out_of_range, "lp_fraction must be in [0, 1]");

  Observation o;
  o.spot_price = stableswap_marginal_price(s, 0, 1);
  double tvl = 0.0;
  for (std::size_t i = 0; i < s.reserves.size(); ++i) {
    const std::size_t nu = static_cast<std::size_t>(numeraire);
    tvl += i == nu ? s.reserves[i]
                   : s.reserves[i] * stableswap_marginal_price(s, i, nu);
  }
  o.tvl = tvl;
  o.position_value = lp_fraction * tvl;
  return o;
}

}  // namespace pooltwin::engine
