#pragma once

/**
 * @file report.hpp
 * @brief Pass/fail results of the exhaustive law checkers.
 */

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "algaut/core.hpp"

namespace algaut {

// The first point at which a law failed: the law's name, the named
// arguments that broke it, and the two sides of the equation.
struct Violation {
  std::string law;
  std::vector<std::pair<std::string, index_t>> at;
  index_t lhs = 0;
  index_t rhs = 0;

  std::string describe() const {
    std::string s = law + " fails at";
    for (auto const& [k, v] : at) s += " " + k + "=" + std::to_string(v);
    s += ": " + std::to_string(lhs) + " != " + std::to_string(rhs);
    return s;
  }

  bool operator==(Violation const&) const = default;
};

struct Report {
  std::optional<Violation> witness;

  static Report pass() { return {}; }
  static Report fail(Violation v) { return {std::move(v)}; }

  bool ok() const noexcept { return !witness.has_value(); }
  explicit operator bool() const noexcept { return ok(); }
};

}  // namespace algaut
