#pragma once

#include <stdexcept>
#include <string>

namespace pooltwin {

enum class Errc {
  non_positive_amount,
  non_positive_entry,
  non_positive_deposit,
  non_positive_apr,
  drained_reserve,
  empty_pool,
  non_proportional_deposit,
  fraction_out_of_range,
  epsilon_out_of_range,
  tick_range_exit,
  newton_non_convergence,
  no_root,
  unsupported_protocol,
  unsupported_input,
  unsupported_arithmetic,
  invalid_snapshot,
  unknown_recipe,
  missing_row,
  malformed_row,
  rpc_transport,
  abi_decode,
  empty_tier_list,
  empty_portfolio,
  empty_grid,
  no_successful_scenarios,
  unknown_tool,
  invalid_arguments,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::non_positive_amount: return "NonPositiveAmount";
    case Errc::non_positive_entry: return "NonPositiveEntry";
    case Errc::non_positive_deposit: return "NonPositiveDeposit";
    case Errc::non_positive_apr: return "NonPositiveApr";
    case Errc::drained_reserve: return "DrainedReserve";
    case Errc::empty_pool: return "EmptyPool";
    case Errc::non_proportional_deposit: return "NonProportionalDeposit";
    case Errc::fraction_out_of_range: return "FractionOutOfRange";
    case Errc::epsilon_out_of_range: return "EpsilonOutOfRange";
    case Errc::tick_range_exit: return "TickRangeExit";
    case Errc::newton_non_convergence: return "NewtonNonConvergence";
    case Errc::no_root: return "NoRoot";
    case Errc::unsupported_protocol: return "UnsupportedProtocol";
    case Errc::unsupported_input: return "UnsupportedInput";
    case Errc::unsupported_arithmetic: return "UnsupportedArithmetic";
    case Errc::invalid_snapshot: return "InvalidSnapshot";
    case Errc::unknown_recipe: return "UnknownRecipe";
    case Errc::missing_row: return "MissingRow";
    case Errc::malformed_row: return "MalformedRow";
    case Errc::rpc_transport: return "RpcTransport";
    case Errc::abi_decode: return "AbiDecode";
    case Errc::empty_tier_list: return "EmptyTierList";
    case Errc::empty_portfolio: return "EmptyPortfolio";
    case Errc::empty_grid: return "EmptyGrid";
    case Errc::no_successful_scenarios: return "NoSuccessfulScenarios";
    case Errc::unknown_tool: return "UnknownTool";
    case Errc::invalid_arguments: return "InvalidArguments";
  }
  return "Error";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what),
        code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void raise(Errc code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace pooltwin
