// Congruence quotients of the Bruhat-Tits tree: finite matrix groups over
// R = F_q[t]/(f), the coset-layer model of Gamma(f)\t and quotients by
// overgroups acting through balls.
#pragma once

#include "btq/btree.hpp"
#include "btq/cf_structures.hpp"
#include "btq/fine_graph.hpp"

#include <array>
#include <functional>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

namespace btq {

// Elements are coded by their base-q digit vectors, 0..size()-1.
class QuotientRing {
public:
  QuotientRing(const Fq& f, const Poly& modulus);
  const Fq& field() const { return *f_; }
  const Poly& modulus() const { return mod_; }
  int size() const { return size_; }
  int reduce(const Poly& p) const;
  Poly lift(int x) const;  // the representative of degree < deg f
  int add(int a, int b) const { return add_[a * size_ + b]; }
  int sub(int a, int b) const { return add(a, neg_[b]); }
  int mul(int a, int b) const { return mul_[a * size_ + b]; }
  int neg(int a) const { return neg_[a]; }
  // -1 when a is not a unit
  int inv(int a) const { return inv_[a]; }

private:
  const Fq* f_;
  Poly mod_;
  int size_;
  std::vector<int> add_, mul_, neg_, inv_;
};

// (a b; c d) over R, coded as a + M b + M^2 c + M^3 d with M = |R|.
using Mat2R = std::array<int, 4>;

class FiniteMatrixGroup {
public:
  // Closure of the reductions of the generators; each element keeps the
  // lift found by breadth-first search (a product of generators).
  static FiniteMatrixGroup generate(std::shared_ptr<const QuotientRing> r, const std::vector<Mat2P>& gens);

  const QuotientRing& ring() const { return *r_; }
  std::shared_ptr<const QuotientRing> ring_ptr() const { return r_; }
  int order() const { return static_cast<int>(elems_.size()); }
  const Mat2R& element(int i) const { return elems_[i]; }
  const Mat2P& lift(int i) const { return lifts_[i]; }
  int identity() const { return identity_; }
  // Index of an element, -1 if absent.
  int index(const Mat2R& m) const;
  int index_of(const Mat2P& g) const { return index(reduce(g)); }
  bool contains(const Mat2R& m) const { return index(m) >= 0; }
  int mul(int i, int j) const;
  int inv(int i) const;
  Mat2R reduce(const Mat2P& g) const;
  Mat2R multiply(const Mat2R& x, const Mat2R& y) const;
  int code(const Mat2R& m) const;
  // Indices, into this group, of the elements of h; throws if h is not a subgroup.
  std::vector<int> embed(const FiniteMatrixGroup& h) const;

private:
  std::shared_ptr<const QuotientRing> r_;
  std::vector<Mat2R> elems_;
  std::vector<Mat2P> lifts_;
  std::unordered_map<int, int> index_;
  std::vector<int> inv_;
  int identity_ = 0;
};

// Left cosets gH of a subgroup given by element indices.
struct CosetSpace {
  std::vector<int> coset_of;           // group element -> coset id
  std::vector<std::vector<int>> members;  // coset id -> elements, sorted
};
CosetSpace left_cosets(const FiniteMatrixGroup& g, const std::vector<int>& h);

// Generators of the image of Gamma(1) = GL_2(F_q[t]) modulo f.
std::vector<Mat2P> gamma1_generators(const Fq& f, const Poly& modulus);
// Generators of Stab(B_0^{[-n]}) in Gamma(1).
std::vector<Mat2P> stabilizer_generators(const Fq& f, int n);
// Generators of the stabilizer of the edge B_0^{[-n]} -- B_0^{[-n-1]}.
std::vector<Mat2P> edge_stabilizer_generators(const Fq& f, int n);
FiniteMatrixGroup stabilizer_image(std::shared_ptr<const QuotientRing> r, int n);

// Gamma(f)\t truncated at the type-depth layer.  Vertices are listed layer by
// layer; vertex v of type n is the coset g S_n.
struct CongruenceQuotient {
  int q = 0;
  Poly f;
  int depth = 0;
  std::shared_ptr<const QuotientRing> ring;
  std::shared_ptr<const FiniteMatrixGroup> gbar;
  std::vector<std::vector<int>> stab;  // S_n as indices into gbar, n = 0..depth
  std::vector<CosetSpace> layers;
  std::vector<int> layer_offset;       // first global id of each layer
  std::vector<int> type;
  std::vector<int> local;              // index within its layer
  // Neighbour multiset of each vertex (q+1 entries, q for the last layer).
  std::vector<std::vector<int>> nbrs;
  Graph graph;                         // one edge per edge coset
  std::vector<int> edge_layer_counts;  // edge cosets between type n and n+1

  int num_vertices() const { return static_cast<int>(type.size()); }
  int layer_count(int n) const { return static_cast<int>(layers[n].members.size()); }
  int vertex(int n, int g) const { return layer_offset[n] + layers[n].coset_of[g]; }
  bool complete(int v) const { return type[v] < depth; }
  // The ball lift(g) B_0^{[-n]} for the k-th member g of the coset.
  BallVertex ball(int v, int k = 0) const;
  // Vertex containing the image of a ball, -1 beyond the truncation.
  int locate(const BallVertex& b) const;
  WeightMap weights() const;
  std::string name(int v) const;
};

// Rejects q outside 2..5 and |R| > 8; depth must exceed deg f.
CongruenceQuotient congruence_quotient(int q, const Poly& f, int depth);

// Checks (q+1)M_0 = qM_1 when deg f > 1 and M_{k-1} = qM_k for 1 < k < deg f,
// and that the counts are constant from type deg f - 1 on.  Failures are
// appended to why.
bool layer_identities_hold(const CongruenceQuotient& cq, std::vector<std::string>* why = nullptr);

// For q = 2 and quadratic f: type-0 vertices, joined through each type-1
// vertex between its two type-0 neighbours.
Graph o_graph(const CongruenceQuotient& cq);

// A finite piece of a quotient of the tree.  The graph has one edge per
// adjacent pair; the weights m(v,w) are partial on incomplete vertices.
struct TruncatedQuotient {
  int q = 0;
  Graph graph;
  std::vector<std::string> names;
  std::vector<int> type;   // -1 once classes mix types
  std::vector<std::vector<BallVertex>> reps;
  std::vector<bool> complete;
  WeightMap weights;
  std::function<int(const BallVertex&)> locate;

  int num_vertices() const { return graph.num_vertices; }
};

TruncatedQuotient truncated(const CongruenceQuotient& cq, int reps_per_vertex = 3);

struct StageResult {
  TruncatedQuotient quotient;
  std::vector<int> domain;    // invariant vertices of the input
  std::vector<int> class_of;  // input vertex -> class, -1 off the domain
  FineQuotient fine;          // over the subdivided domain
  int group_order = 0;
};

// Quotient by the group generated by gens acting on balls.  Throws
// std::invalid_argument("non-normalizing ...") if a generator is not
// well defined on vertices or does not preserve weights.
StageResult quotient_stage(const TruncatedQuotient& tq, const std::vector<Mat2RF>& gens);

// Cusps are detected from the incomplete vertices with pattern (q, 1) and
// the result is canonicalized.  Throws if some chain is not a cusp.
WCFG to_wcfg(const TruncatedQuotient& tq);

// Elements of Gamma(1) form a first stage; the remaining generators act on
// its result.
WCFG quotient_by_overgroup(const CongruenceQuotient& cq, const std::vector<Mat2RF>& generators);

// Lifts of a generating set of the upper triangular image mod f.
std::vector<Mat2RF> gamma0_generators(const CongruenceQuotient& cq);
// Atkin-Lehner elements: (0 -1; f 0), plus (t 1; t(t+1) t) when f = t(t+1).
std::vector<Mat2RF> atkin_lehner_generators(const Fq& fq, const Poly& f);

}  // namespace btq
