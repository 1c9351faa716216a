#pragma once

#include "btq/io.hpp"

#include <string>

#ifndef BTQ_TEST_FIXTURES
#define BTQ_TEST_FIXTURES "tests/fixtures"
#endif

inline std::string fixture_path(const std::string& name) { return std::string(BTQ_TEST_FIXTURES) + "/" + name + ".json"; }
inline btq::WCFG fixture(const std::string& name) { return btq::load_wcfg(fixture_path(name)); }

inline int vid(const btq::WCFG& w, const std::string& name) {
  auto v = w.find(name);
  if (!v) throw std::invalid_argument("no vertex " + name);
  return *v;
}
