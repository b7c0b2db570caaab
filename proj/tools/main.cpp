#include <iostream>
#include <string>
#include <vector>

#include "commands.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  if (args.empty()) {
    std::cerr << "usage: rspace <verb> [args] [--format json|dot|text] [--field Q|Fp:p]\n"
              << "verbs: parts affine-alg affine-top affine punctured gm open-fn-space\n"
              << "       flag-chain projective twist gamma epim grass plucker sr-ideal link\n"
              << "       homology cm-check free-dl sspec fiber-product cover-quotient\n"
              << "       check-morphism\n";
    return 2;
  }
  return rspace::cli::run_command(args, std::cout, std::cerr, std::cin);
}
