// Copyright 2026 The redsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Follows a W_N state through repeated weak measurements and prints the
// surviving branches after each round next to the Markov-chain view.
//
//   w_rounds [N] [kappa] [rounds]

#include <cstdlib>
#include <iostream>

#include "redsim/redsim.hpp"

int main(int argc, char** argv) {
  const int n = argc > 1 ? std::atoi(argv[1]) : 5;
  const double kappa = argc > 2 ? std::atof(argv[2]) : 0.3;
  const int rounds = argc > 3 ? std::atoi(argv[3]) : 4;
  try {
    const auto chain = redsim::build_transition_matrix(n, kappa);
    std::cout << redsim::transition_matrix_tsv(chain) << '\n';
    for (int r = 1; r <= rounds; ++r) {
      std::cout << "round " << r << "  average concurrence "
                << redsim::format_number(redsim::avg_entanglement({n, 1.0, 0.0}, kappa, r)) << '\n';
      for (const auto& t : redsim::run_rounds({n, 1.0, 0.0}, kappa, r))
        std::cout << "  m=" << t.branch.m << "  p=" << redsim::format_number(t.probability)
                  << "  C=" << redsim::format_number(redsim::branch_concurrence(t.branch)) << '\n';
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
