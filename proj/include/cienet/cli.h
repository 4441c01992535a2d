// Copyright 2026 The CIENet Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef CIENET_CLI_H_
#define CIENET_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace cienet::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitIo = 2;
inline constexpr int kExitValidation = 3;

// Runs the command line `args` (args[0] is the program name). JSON goes to
// `out`, diagnostics to `err`. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace cienet::cli

#endif  // CIENET_CLI_H_
