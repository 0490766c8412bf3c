#pragma once

#include <functional>

#include "ralsfa/recovery.hpp"

namespace ralsfa::detail {

// Produces candidate frequency vectors for one iteration of the greedy loop.
using Locator = std::function<std::vector<std::vector<i64>>(
    const std::shared_ptr<const SignalOracle>& resid, u64 seed, i64 iteration)>;

RecoveryReport run_greedy(std::shared_ptr<const SignalOracle> s, const RecoveryParams& p,
                          u64 seed, const Locator& locate);

}  // namespace ralsfa::detail
