#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "monospline/verify.hpp"

namespace monospline {

// Exit codes shared by every command.
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitBadInput = 2;
inline constexpr int kExitRange = 3;
inline constexpr int kExitInfeasible = 4;

struct CliHooks {
  // Forwarded to run_verify; lets tests plant a wrong M* formula.
  MstarFunction verify_mstar;
};

// Runs one command. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
            const CliHooks& hooks = {});

}  // namespace monospline
