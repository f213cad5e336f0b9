#pragma once

// Standard invertible machines from the automaton-group literature.

#include <string>

#include "algaut/group.hpp"

namespace algaut::machines {

// Binary adding machine on least-significant-bit-first words.
// State "add" carries, "id" copies.
inline MealyMachine odometer_machine() {
  return MealyMachine(FiniteSet({"add", "id"}), FiniteSet({"0", "1"}),
                      Table(2, 2, 2, {1, 0, 1, 1}), Table(2, 2, 2, {1, 0, 0, 1}));
}

inline MealyElement odometer() { return MealyElement(odometer_machine(), 0); }

// The 5-state machine generating the first Grigorchuk group:
//   a = σ(e, e),  b = (a, c),  c = (a, d),  d = (e, b),  e = (e, e).
inline MealyMachine grigorchuk_machine() {
  return MealyMachine(FiniteSet({"a", "b", "c", "d", "e"}), FiniteSet({"0", "1"}),
                      Table(5, 2, 5, {4, 4,  //
                                      0, 2,  //
                                      0, 3,  //
                                      4, 1,  //
                                      4, 4}),
                      Table(5, 2, 2, {1, 0,  //
                                      0, 1,  //
                                      0, 1,  //
                                      0, 1,  //
                                      0, 1}));
}

inline MealyElement grigorchuk(char generator) {
  auto m = grigorchuk_machine();
  auto q = m.states.index_of(std::string(1, generator));
  if (!q) throw RangeError(std::string("grigorchuk: no generator ") + generator);
  return MealyElement(std::move(m), *q);
}

}  // namespace algaut::machines
