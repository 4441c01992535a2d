// Copyright 2026 The CIENet Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include <iostream>
#include <string>
#include <vector>

#include "cienet/cli.h"

int main(int argc, char** argv) {
  return cienet::cli::run(std::vector<std::string>(argv, argv + argc),
                          std::cout, std::cerr);
}
