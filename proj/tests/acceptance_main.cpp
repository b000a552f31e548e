// Acceptance suite: one line per criterion, nonzero exit on any failure.
// The same checks back `xihom verify --catalog`.

#include <cstdio>
#include <cstring>

#include "xihom/verify.hpp"

int main(int argc, char** argv) {
  int window = 12;
  for (int i = 1; i < argc; ++i)
    if (std::strncmp(argv[i], "--window=", 9) == 0)
      window = std::atoi(argv[i] + 9);
  bool all_pass = true;
  try {
    auto results = xihom::run_catalog_acceptance(window);
    for (const auto& r : results) {
      std::printf("%s criterion %d: %s%s%s\n", r.pass ? "PASS" : "FAIL", r.id,
                  r.name.c_str(), r.detail.empty() ? "" : " -- ",
                  r.detail.c_str());
      all_pass = all_pass && r.pass;
    }
  } catch (const std::exception& e) {
    std::printf("FAIL acceptance suite aborted: %s\n", e.what());
    return 1;
  }
  return all_pass ? 0 : 1;
}
