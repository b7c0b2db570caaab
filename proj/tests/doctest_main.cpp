#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <cstring>
#include <vector>

#include "testutil.hpp"

int main(int argc, char** argv) {
  std::vector<char*> passthrough;
  for (int i = 0; i < argc; ++i) {
    if (std::strncmp(argv[i], "--seed=", 7) == 0) {
      rspace::testutil::set_global_seed(std::strtoull(argv[i] + 7, nullptr, 10));
    } else if (std::strcmp(argv[i], "--seed") == 0 && i + 1 < argc) {
      rspace::testutil::set_global_seed(std::strtoull(argv[++i], nullptr, 10));
    } else {
      passthrough.push_back(argv[i]);
    }
  }
  doctest::Context context(static_cast<int>(passthrough.size()), passthrough.data());
  return context.run();
}
