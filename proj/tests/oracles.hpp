// Brute-force reference computations.  Nothing here calls the library's
// truncation, polynomial evaluation or quotient code.
#pragma once

#include "btq/cf_structures.hpp"
#include "btq/fine_graph.hpp"

#include <gmpxx.h>

#include <map>
#include <string>
#include <vector>

namespace oracle {

using btq::Rational;

// Core vertices keep their ids; tail vertex k of cusp c gets its own id.
struct Truncated {
  int num_core = 0;
  std::vector<std::vector<std::pair<int, Rational>>> out;  // (target, m_{v,target})
};

// Each cusp materialized to the given depth; the last tail vertex keeps only
// its inward step.
Truncated truncate_by_hand(const btq::WCFG& w, int depth);

// Sum over promenades v = x_0 -> ... -> x_k = target of the product of the
// weights, by exhaustive depth-first enumeration.
Rational promenade_weight(const Truncated& t, int from, int to, int length);

// f_0 = 2, f_1 = x, f_{n+1} = x f_n - q f_{n-1}, low to high.
std::vector<mpz_class> fn_coefficients(int n, int q);

// x^n f_n(x + q/x) - x^{2n} - q^n expanded with binomials; true when zero.
bool laurent_identity(const std::vector<mpz_class>& fn, int n, int q);

// Entry (to, from) of f_n(N) as an alternating sum of promenade weights.
Rational fn_entry_by_promenades(const Truncated& t, int n, int q, int from, int to);

// m([v] -> [w]) counted directly on a representative of each vertex orbit.
// Orbits come from repeated application of the generating vertex perms.
struct OrbitCount {
  std::vector<int> orbit_of;  // vertex -> orbit id, numbered by least member
  std::map<std::pair<int, int>, int> weights;
};
OrbitCount orbit_weights(const btq::Graph& g, const std::vector<btq::Perm>& gens);

}  // namespace oracle
