// Transfer of a neighbourhood matrix from one place to another through the
// polynomials f_n with f_n(x + q/x) = x^n + q^n x^-n.
#pragma once

#include "btq/cf_structures.hpp"
#include "btq/obstruction.hpp"

#include <set>
#include <string>
#include <tuple>
#include <vector>

namespace btq {

struct TransferPolynomial {
  int n = 1;
  int q = 2;
  std::vector<mpz_class> coeffs;  // low to high

  QMatrix apply(const QMatrix& m) const;
  std::string to_string() const;
};

TransferPolynomial build_fn(int n, int q);
// x^n f_n(x + q/x) == x^{2n} + q^n, checked by polynomial arithmetic.
bool laurent_identity_holds(const TransferPolynomial& p);

// Columns of p(M) at each region vertex, exact.  Tails are materialized past
// the reach of the region and the result is compared against a deeper run.
struct PolyColumns {
  std::vector<VRef> region;
  std::map<VRef, Charge> columns;
};
PolyColumns evaluate_poly(const TransferPolynomial& p, const CFMatrix& m, const std::vector<VRef>& region);

struct PredictedCusp {
  int p_cusp = 0;
  int depth = 1;  // attach at depth i of the P cusp
  CuspDescriptor cusp;
};
std::vector<PredictedCusp> predict_cusps_at_Q(const std::vector<CuspDescriptor>& cusps_p, int n, int q);

struct ResolveOptions {
  int entry_denominator = 1;     // corrected entries must lie in (1/d)Z
  bool require_graphic = false;  // support symmetry of the corrected block
  std::size_t max_solutions = 100000;
};

enum class ResolveStatus { NotRun, Unique, Multiple, Infeasible };

struct TransferReport {
  int n = 1;
  int q = 2;
  TransferPolynomial poly;
  WCFG p_graph;                 // canonical P data
  CFMatrix candidate;           // Q core block plus predicted Q cusps
  std::vector<VRef> q_origin;   // P vertex underlying each Q core vertex
  std::set<std::pair<int, int>> bad_pairs;  // (from, to) Q core ids
  std::vector<std::tuple<int, int, Rational>> negative_entries;  // (from, to, value)
  std::vector<std::string> notes;
  ResolveStatus status = ResolveStatus::NotRun;
  std::optional<CFMatrix> resolution;
  std::vector<QMatrix> feasible_corrections;  // over the obstruction shell
  ObstructionBasis basis;                     // mapped to Q core ids
};

TransferReport assemble_candidate(const WCFG& wp, int n);
TransferReport assemble_candidate(const WCFG& wp, const TransferPolynomial& p);
TransferReport resolve_ambiguity(const TransferReport& r, const ObstructionBasis& basis,
                                 const ResolveOptions& opt = {});

// Admissible values of one corrected column on the shell rows: candidate
// column plus some F(delta_x) with F in the span of the basis.  Columns are
// enumerated independently of each other.
std::vector<QVector> column_completions(const TransferReport& r, const ObstructionBasis& basis, int q_column,
                                        const ResolveOptions& opt = {});

}  // namespace btq
