// Weighted combinatorially finite graphs: a finite core with attached cusps.
#pragma once

#include "btq/fine_graph.hpp"
#include "btq/linalg.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace btq {

// Tail v_1, v_2, ... attached at core vertex v_0.  For t >= 1,
// m(v_t -> v_{t-1}) = inward and m(v_t -> v_{t+1}) = outward; the first
// step m(v_0 -> v_1) is attach_weight.
struct CuspDescriptor {
  int attach = 0;
  Rational attach_weight = 1;
  Rational inward = 1;
  Rational outward = 1;
  std::string label_scheme;
  int label_offset = 0;  // tail vertex k is named label_scheme + (offset + step*k)
  int label_step = 1;
  bool operator==(const CuspDescriptor&) const = default;
};

struct WCFG {
  FineGraph core;  // actual vertices are 0..num_core()-1, virtual ones follow
  std::vector<CuspDescriptor> cusps;
  WeightMap weights;  // core actual pairs
  std::optional<int> q;

  int num_core() const;
  std::string name(int v) const;
  std::optional<int> find(const std::string& name) const;
  Rational weight(int v, int w) const;
  // Throws std::invalid_argument naming the offending pair.
  void validate() const;
  bool regular() const;
};

// Builds the reduced core from the weights: one virtual vertex per adjacent
// pair and one half edge per nonzero diagonal weight.
WCFG make_wcfg(const std::vector<std::string>& names, const WeightMap& weights,
               const std::vector<CuspDescriptor>& cusps, std::optional<int> q = std::nullopt);

// Reduction of a fine quotient together with its weights (no cusps).
WCFG reduction(const FineGraph& fg, const WeightMap& weights);

// A vertex of the infinite graph: cusp < 0 means core vertex pos, otherwise
// depth pos >= 1 on that cusp.
struct VRef {
  int cusp = -1;
  int pos = 0;
  auto operator<=>(const VRef&) const = default;
  static VRef core(int v) { return {-1, v}; }
};

using Charge = std::map<VRef, Rational>;

struct CFMatrix {
  QMatrix core_block;  // M[w][v] = m_{v,w}
  std::vector<CuspDescriptor> cusps;
  std::vector<std::string> names;
  std::optional<int> q;

  int num_core() const { return static_cast<int>(core_block.rows()); }
  // Weighted out-neighbours of x: (y, m_{x,y}).
  std::vector<std::pair<VRef, Rational>> column(const VRef& x) const;
  std::string name(const VRef& x) const;
};

CFMatrix to_matrix(const WCFG& w);
WCFG from_matrix(const CFMatrix& m);
CFMatrix normalize(const CFMatrix& m);
Charge apply_operator(const CFMatrix& m, const Charge& mu);
Charge delta(const VRef& v);

// Dense truncation: core vertices, then each cusp to the given depth.  The
// deepest tail columns lack their outward entry.
struct Truncation {
  QMatrix m;
  std::vector<VRef> order;
  std::map<VRef, int> index;
  std::set<int> boundary;
};
Truncation truncate(const CFMatrix& m, int depth);

struct DetectedCusps {
  std::vector<int> core;                 // surviving vertices, in input order
  std::vector<CuspDescriptor> cusps;     // attach is a position in core
  std::vector<std::vector<int>> tails;   // input vertices of each tail, from v_1
  std::vector<int> non_canonical;        // boundary vertices whose chain failed
};

// m is a finite truncation (column = source) whose boundary vertices are the
// cut ends of tails.  Chains start at boundary vertices and absorb vertices
// with exactly two neighbours and constant weights.
DetectedCusps detect_cusps(const QMatrix& m, const std::set<int>& boundary,
                           std::optional<std::pair<Rational, Rational>> pattern = std::nullopt);
// WCFG built from a detection result (names and q carried over).
WCFG wcfg_from_detection(const QMatrix& m, const DetectedCusps& d, const std::vector<std::string>& names,
                         std::optional<int> q);

// Moves core vertices that are really the start of a cusp into the tail until
// stable.
WCFG canonicalize(const WCFG& w);
// Isomorphism of canonical forms including all weights and cusp patterns.
bool equivalent(const WCFG& a, const WCFG& b);

}  // namespace btq
