#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace haarq::cli {

// Exit codes: 0 success, 2 promise violation, 3 numerical non-convergence,
// 4 invalid input.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Per-subcommand seed stream derived from the global --seed.
std::uint64_t stream_seed(std::uint64_t global_seed, const std::string& subcommand);

}  // namespace haarq::cli
