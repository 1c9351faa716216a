// Randomized and exhaustive property checks shared by the unit tests and
// the acceptance run.
#pragma once

#include <string>
#include <vector>

namespace props {

struct Result {
  bool ok = true;
  int checked = 0;
  std::vector<std::string> failures;  // first few only
  void fail(const std::string& s) {
    ok = false;
    if (failures.size() < 8) failures.push_back(s);
  }
  std::string summary() const;
};

std::vector<std::string> fixture_names(const std::string& dir);

// Core entries of f_n(N) against alternating promenade sums, n = 1..max_n.
Result promenade_oracle(const std::string& dir, int max_n);
// (f_n(N) N) delta_v = (N f_n(N)) delta_v for v in the core and the first
// n tail steps.
Result commutation(const std::string& dir, int max_n);
// Symbolic identity and coefficients against the recurrence.
Result laurent(int max_n, int max_q);

// act(gh, v) = act(g, act(h, v)) and the action preserves adjacency.
Result moebius_composition(int triples, unsigned seed, int max_depth = 6);
// moebius_act(gamma, v) is on the ray and gamma^{-1} takes it back.
Result reduce_round_trip(int balls, unsigned seed, int max_depth = 6);

}  // namespace props
