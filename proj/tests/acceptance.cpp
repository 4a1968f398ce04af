// Runs the default acceptance gate and prints one line per criterion.
// Arguments are criterion ids or keys; "--extended" adds the optional ones.

#include <iostream>
#include <string>

#include "qcluster/acceptance.hpp"

int main(int argc, char** argv) {
  qcluster::AcceptOptions opts;
  for (int a = 1; a < argc; ++a) {
    std::string arg = argv[a];
    if (arg == "--extended") opts.extended = true;
    else opts.only.push_back(arg);
  }
  auto results = qcluster::run_acceptance(opts);
  std::cout << qcluster::format_table(results);
  bool ok = true;
  for (const auto& r : results) ok = ok && r.pass;
  return ok ? 0 : 1;
}
