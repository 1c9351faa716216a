// Replays the golden data under tests/fixtures through the library and
// compares exactly.
#pragma once

#include "btq/cf_structures.hpp"

#include <optional>
#include <string>
#include <vector>

namespace btq {

struct CheckLine {
  std::string what;
  bool ok = false;
  std::string detail;
};

struct CaseReport {
  std::string id;
  std::string source;  // citation of the golden data
  std::vector<CheckLine> checks;
  std::vector<std::string> notes;
  double seconds = 0;
  bool pass() const;
};

std::vector<std::string> verification_case_ids();
// Throws std::invalid_argument on an unknown id.
CaseReport run_verification_case(const std::string& id, const std::string& fixture_dir);
std::string default_fixture_dir();
std::string report_json(const std::vector<CaseReport>& reports);

// A vertex of the infinite graph by name: core names first, then cusp tail
// names up to the given depth.
std::optional<VRef> resolve_name(const CFMatrix& m, const std::string& name, int max_depth = 64);
// m_{x,y} between named vertices, 0 when they are not adjacent.
Rational named_weight(const CFMatrix& m, const std::string& x, const std::string& y);

}  // namespace btq
