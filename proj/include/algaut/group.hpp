#pragma once

/**
 * @file group.hpp
 * @brief Letter-to-letter Mealy machines over one alphabet X and the
 *        automaton mappings F(X) → F(X) of their initialized states.
 *
 * Composition is left-acts-first: element_compose(e1, e2) applies e1, then
 * e2. Equality of mappings is decided exactly by partition refinement.
 */

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "algaut/core.hpp"
#include "algaut/second_type.hpp"

namespace algaut {

struct MealyMachine {
  FiniteSet states;
  FiniteSet alphabet;
  Table next;  // Q × X → Q
  Table out;   // Q × X → X

  MealyMachine(FiniteSet states_, FiniteSet alphabet_, Table next_, Table out_)
      : states(std::move(states_)),
        alphabet(std::move(alphabet_)),
        next(std::move(next_)),
        out(std::move(out_)) {
    next.expect_shape(states.size(), alphabet.size(), states.size(), "mealy next");
    out.expect_shape(states.size(), alphabet.size(), alphabet.size(), "mealy out");
  }

  // The first state whose output row is not a permutation of X.
  std::optional<index_t> first_non_invertible_state() const {
    for (index_t q = 0; q < states.size(); ++q) {
      std::vector<char> hit(alphabet.size(), 0);
      for (index_t x = 0; x < alphabet.size(); ++x) {
        if (hit[out(q, x)]) return q;
        hit[out(q, x)] = 1;
      }
    }
    return std::nullopt;
  }

  bool is_invertible() const { return !first_non_invertible_state(); }

  PureAutomatonSecond as_second_type() const {
    return PureAutomatonSecond(states, alphabet, alphabet, next, out);
  }

  bool operator==(MealyMachine const&) const = default;
};

struct MealyElement {
  MealyMachine machine;
  index_t initial;

  MealyElement(MealyMachine machine_, index_t initial_)
      : machine(std::move(machine_)), initial(initial_) {
    machine.states.check(initial, "MealyElement initial state");
  }

  std::size_t state_count() const noexcept { return machine.states.size(); }
  std::size_t alphabet_size() const noexcept { return machine.alphabet.size(); }

  bool operator==(MealyElement const&) const = default;
};

// The one-state machine fixing every word.
inline MealyElement identity_element(FiniteSet alphabet) {
  auto n = alphabet.size();
  auto out = Table::tabulate(1, n, n, [](auto, auto x) { return x; });
  return MealyElement(MealyMachine(FiniteSet(1), std::move(alphabet), Table::filled(1, n, 1),
                                   std::move(out)),
                      0);
}

inline Word element_apply(MealyElement const& e, Word const& u) {
  if (u.alphabet_size() != e.alphabet_size()) {
    throw RangeError("element_apply: word alphabet does not match the machine");
  }
  std::vector<index_t> ys;
  ys.reserve(u.size());
  index_t q = e.initial;
  for (auto x : u) {
    ys.push_back(e.machine.out(q, x));
    q = e.machine.next(q, x);
  }
  return Word(e.alphabet_size(), std::move(ys));
}

inline void expect_same_alphabet(MealyElement const& e1, MealyElement const& e2,
                                 char const* what) {
  if (e1.alphabet_size() != e2.alphabet_size()) {
    throw RangeError(std::string(what) + ": alphabets of sizes " +
                     std::to_string(e1.alphabet_size()) + " and " +
                     std::to_string(e2.alphabet_size()) + " differ");
  }
}

// e1 then e2, on the state pairs reachable from (initial₁, initial₂).
inline MealyElement element_compose(MealyElement const& e1, MealyElement const& e2) {
  expect_same_alphabet(e1, e2, "element_compose");
  auto const& m1 = e1.machine;
  auto const& m2 = e2.machine;
  auto const nx = e1.alphabet_size();
  auto const n2 = m2.states.size();

  std::map<std::size_t, index_t> id;  // q1 * n2 + q2 → new index
  std::vector<std::pair<index_t, index_t>> pairs;
  auto intern = [&](index_t q1, index_t q2) {
    auto [it, fresh] = id.try_emplace(std::size_t{q1} * n2 + q2,
                                      static_cast<index_t>(pairs.size()));
    if (fresh) pairs.emplace_back(q1, q2);
    return it->second;
  };
  intern(e1.initial, e2.initial);
  std::vector<index_t> next, out;
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    auto [q1, q2] = pairs[k];
    for (index_t x = 0; x < nx; ++x) {
      auto y = m1.out(q1, x);
      auto nq = intern(m1.next(q1, x), m2.next(q2, y));
      next.push_back(nq);
      out.push_back(m2.out(q2, y));
    }
  }
  auto const n = pairs.size();
  std::vector<std::string> labels;
  if (m1.states.has_labels() || m2.states.has_labels()) {
    for (auto [q1, q2] : pairs) labels.push_back("(" + m1.states.label(q1) + "," + m2.states.label(q2) + ")");
  }
  FiniteSet states = labels.empty() ? FiniteSet(n) : FiniteSet(std::move(labels));
  return MealyElement(MealyMachine(std::move(states), m1.alphabet,
                                   Table(n, nx, n, std::move(next)),
                                   Table(n, nx, nx, std::move(out))),
                      0);
}

// out'(q, y) = out(q, ·)⁻¹(y), next'(q, y) = next(q, out(q, ·)⁻¹(y)).
inline MealyElement element_invert(MealyElement const& e) {
  auto const& m = e.machine;
  if (auto bad = m.first_non_invertible_state()) {
    throw PreconditionError("element_invert: state " + m.states.label(*bad) +
                            " does not permute the alphabet");
  }
  auto const nq = m.states.size();
  auto const nx = m.alphabet.size();
  auto next = Table::filled(nq, nx, nq);
  auto out = Table::filled(nq, nx, nx);
  for (index_t q = 0; q < nq; ++q)
    for (index_t x = 0; x < nx; ++x) {
      auto y = m.out(q, x);
      out.set(q, y, x);
      next.set(q, y, m.next(q, x));
    }
  return MealyElement(MealyMachine(m.states, m.alphabet, std::move(next), std::move(out)),
                      e.initial);
}

// Coarsest partition of the machine's states such that equivalent states
// have equal output rows and equivalent successors. Returns the class of
// each state; classes are numbered by first occurrence.
inline std::vector<index_t> bisimulation_classes(MealyMachine const& m) {
  auto const nq = m.states.size();
  auto const nx = m.alphabet.size();
  std::vector<index_t> cls(nq, 0);
  std::size_t count = 0;
  {
    std::map<std::vector<index_t>, index_t> sig;
    for (index_t q = 0; q < nq; ++q) {
      auto row = m.out.row(q);
      auto [it, fresh] = sig.try_emplace(std::vector<index_t>(row.begin(), row.end()),
                                         static_cast<index_t>(sig.size()));
      cls[q] = it->second;
    }
    count = sig.size();
  }
  while (true) {
    std::map<std::vector<index_t>, index_t> sig;
    std::vector<index_t> refined(nq);
    for (index_t q = 0; q < nq; ++q) {
      std::vector<index_t> key{cls[q]};
      for (index_t x = 0; x < nx; ++x) key.push_back(cls[m.next(q, x)]);
      auto [it, fresh] = sig.try_emplace(std::move(key), static_cast<index_t>(sig.size()));
      refined[q] = it->second;
    }
    cls = std::move(refined);
    if (sig.size() == count) return cls;
    count = sig.size();
  }
}

// Disjoint union of two machines over one alphabet; the second machine's
// states are shifted by the first's state count.
inline MealyMachine disjoint_union(MealyMachine const& m1, MealyMachine const& m2) {
  auto const n1 = m1.states.size();
  auto const n = n1 + m2.states.size();
  auto const nx = m1.alphabet.size();
  auto next = Table::tabulate(n, nx, n, [&](auto q, auto x) {
    return q < n1 ? m1.next(q, x) : m2.next(q - n1, x) + n1;
  });
  auto out = Table::tabulate(n, nx, nx, [&](auto q, auto x) {
    return q < n1 ? m1.out(q, x) : m2.out(q - n1, x);
  });
  return MealyMachine(FiniteSet(n), m1.alphabet, std::move(next), std::move(out));
}

// True iff e1 and e2 transform every word identically.
inline bool element_equal(MealyElement const& e1, MealyElement const& e2) {
  expect_same_alphabet(e1, e2, "element_equal");
  auto cls = bisimulation_classes(disjoint_union(e1.machine, e2.machine));
  return cls[e1.initial] == cls[e1.state_count() + e2.initial];
}

// Restricts to states reachable from the initial one and merges equivalent
// states. Class representatives keep their first-reached order.
inline MealyElement minimize(MealyElement const& e) {
  auto const& m = e.machine;
  auto const nx = m.alphabet.size();
  auto cls = bisimulation_classes(m);

  std::vector<index_t> order{e.initial};
  std::vector<char> seen(m.states.size(), 0);
  seen[e.initial] = 1;
  for (std::size_t k = 0; k < order.size(); ++k)
    for (index_t x = 0; x < nx; ++x) {
      auto q = m.next(order[k], x);
      if (!seen[q]) {
        seen[q] = 1;
        order.push_back(q);
      }
    }

  std::map<index_t, index_t> new_index;  // class → new state
  std::vector<index_t> reps;
  for (auto q : order) {
    if (new_index.try_emplace(cls[q], static_cast<index_t>(reps.size())).second) reps.push_back(q);
  }
  auto const n = reps.size();
  auto next = Table::tabulate(n, nx, n, [&](auto s, auto x) {
    return new_index.at(cls[m.next(reps[s], x)]);
  });
  auto out = Table::tabulate(n, nx, nx, [&](auto s, auto x) { return m.out(reps[s], x); });
  std::vector<std::string> labels;
  if (m.states.has_labels()) {
    for (auto q : reps) labels.push_back(m.states.label(q));
  }
  FiniteSet states = labels.empty() ? FiniteSet(n) : FiniteSet(std::move(labels));
  return MealyElement(MealyMachine(std::move(states), m.alphabet, std::move(next), std::move(out)),
                      0);
}

struct OrderResult {
  std::optional<std::size_t> order;
  std::size_t reached_power = 0;
  std::string reason;  // why the search stopped without an order
};

inline constexpr std::size_t kMinimizeThreshold = 32;

// Smallest k ≤ max_power with e^k = 1, computing powers by composition and
// minimizing once a power has more than kMinimizeThreshold states.
inline OrderResult element_order_bounded(MealyElement const& e, std::size_t max_power,
                                         std::size_t max_states) {
  if (auto bad = e.machine.first_non_invertible_state()) {
    throw PreconditionError("element_order_bounded: state " + e.machine.states.label(*bad) +
                            " does not permute the alphabet");
  }
  auto const one = identity_element(e.machine.alphabet);
  auto power = e;
  for (std::size_t k = 1; k <= max_power; ++k) {
    if (element_equal(power, one)) return {k, k, {}};
    if (k == max_power) break;
    power = element_compose(power, e);
    if (power.state_count() > kMinimizeThreshold) power = minimize(power);
    if (power.state_count() > max_states) {
      return {std::nullopt, k + 1,
              "power " + std::to_string(k + 1) + " needs " +
                  std::to_string(power.state_count()) + " states, above the cap of " +
                  std::to_string(max_states)};
    }
  }
  return {std::nullopt, max_power,
          "no power up to " + std::to_string(max_power) + " is the identity"};
}

}  // namespace algaut
