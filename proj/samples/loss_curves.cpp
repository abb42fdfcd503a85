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

// Writes the loss curves for N = 4, 6, 8 (W single and multi-round, GHZ,
// two-centered GHZ) as two-column files ready for pgfplots or gnuplot.
//
//   loss_curves [output-dir]

#include <filesystem>
#include <iostream>
#include <string>

#include "redsim/redsim.hpp"

int main(int argc, char** argv) {
  namespace fs = std::filesystem;
  const fs::path dir = argc > 1 ? argv[1] : "curves";
  fs::create_directories(dir);
  const auto grid = redsim::uniform_grid();
  struct Setting {
    int n;
    int rounds;
  };
  for (const Setting s : {Setting{4, 10}, Setting{6, 5}, Setting{8, 2}}) {
    const std::string tag = "n" + std::to_string(s.n);
    const auto w1 = redsim::build_curve(redsim::ResourceKind::w, s.n, 1, grid);
    const auto wr = redsim::build_curve(redsim::ResourceKind::w, s.n, s.rounds, grid);
    const auto ghz = redsim::build_curve(redsim::ResourceKind::ghz, s.n, 1, grid);
    const auto tc = redsim::build_curve(redsim::ResourceKind::two_centered, s.n, 1, grid);
    redsim::write_file_atomic(dir / (tag + "_w_r1.tsv"), redsim::curve_tsv(w1));
    redsim::write_file_atomic(dir / (tag + "_w_r" + std::to_string(s.rounds) + ".tsv"), redsim::curve_tsv(wr));
    redsim::write_file_atomic(dir / (tag + "_ghz.tsv"), redsim::curve_tsv(ghz));
    redsim::write_file_atomic(dir / (tag + "_twocentered.tsv"), redsim::curve_tsv(tc));

    const auto t1 = redsim::threshold(w1, ghz);
    const auto tr = redsim::threshold(wr, ghz);
    std::cout << "N=" << s.n << "  threshold r=1: " << (t1 ? redsim::format_number(t1->epsilon) : "none")
              << "  r=" << s.rounds << ": " << (tr ? redsim::format_number(tr->epsilon) : "none") << '\n';
  }
  std::cout << "curves written to " << dir.string() << '\n';
}
