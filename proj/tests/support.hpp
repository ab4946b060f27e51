#pragma once

#include <cstdint>
#include <cstdio>
#include <sys/wait.h>
#include <random>
#include <string>
#include <vector>

#include "finrep/group.hpp"
#include "finrep/io.hpp"
#include "finrep/rng.hpp"
#include "finrep/verify.hpp"

namespace finrep::testing {

inline std::string fixture(const std::string& name) { return std::string(FINREP_FIXTURE_DIR) + "/" + name; }

struct CommandResult {
  int exit_code = -1;
  std::string out;
};

// Runs the CLI with a shell-quoted argument string; stderr is discarded.
inline CommandResult run_cli(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " \"" + std::string(FINREP_CLI_PATH) + "\" " + args + " 2>/dev/null";
  CommandResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

// Random symmetric partition of G \ {0} into `atoms` sets: each {x, -x}
// orbit goes to a uniformly chosen atom. Sets may come out empty.
inline ColoredPartition random_partition(const GroupSpec& g, std::size_t atoms, std::mt19937_64& rng) {
  std::vector<ElementSet> sets(atoms, ElementSet(g));
  for (std::uint32_t x = 1; x < g.order(); ++x) {
    const std::uint32_t nx = g.neg_unchecked(x);
    if (nx < x) continue;
    const auto a = static_cast<std::size_t>(uniform_below(rng, atoms));
    sets[a].insert(Element{x});
    sets[a].insert(Element{nx});
  }
  return ColoredPartition(g, std::move(sets));
}

// The elements of (Z/2)^k with coordinates permuted: bit i of the bitstring
// moves to position perm[i].
inline Element permute_coords(const GroupSpec& g, Element x, const std::vector<unsigned>& perm) {
  const auto c = g.decode(x);
  std::vector<std::uint32_t> out(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) out[perm[i]] = c[i];
  return g.encode(out);
}

}  // namespace finrep::testing
