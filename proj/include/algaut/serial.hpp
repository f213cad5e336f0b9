#pragma once

/**
 * @file serial.hpp
 * @brief Serial connections of semiautomata, the second-type automaton they
 *        induce, and automaton mappings ā: γ ↦ a∗γ.
 */

#include <deque>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "algaut/cascade.hpp"
#include "algaut/core.hpp"
#include "algaut/first_type.hpp"
#include "algaut/report.hpp"
#include "algaut/second_type.hpp"

namespace algaut {

// A semiautomaton (A, Γ) is a first-type automaton with one output.
inline SemigroupAutomatonFirst semiautomaton(FiniteSet states, SemigroupTable gamma,
                                             Table next) {
  auto out = Table::filled(states.size(), gamma.order(), 1);
  return SemigroupAutomatonFirst(std::move(states), std::move(gamma), FiniteSet(1),
                                 std::move(next), std::move(out));
}

// (A, Γ) followed by (B, Σ), wired by α: A × Γ → Σ.
struct SerialConnection {
  SemigroupAutomatonFirst first;
  SemigroupAutomatonFirst second;
  Table alpha;

  SerialConnection(SemigroupAutomatonFirst first_, SemigroupAutomatonFirst second_,
                   Table alpha_)
      : first(std::move(first_)), second(std::move(second_)), alpha(std::move(alpha_)) {
    if (first.outputs.size() != 1 || second.outputs.size() != 1) {
      throw RangeError("SerialConnection: components must be semiautomata (one output)");
    }
    alpha.expect_shape(first.states.size(), first.gamma.order(), second.gamma.order(),
                       "serial alpha");
  }

  bool operator==(SerialConnection const&) const = default;
};

// The serial invariant: (A, Γ) is an action and
// α(a, γ₁γ₂) = α(a, γ₁)·α(a∘γ₁, γ₂).
inline Report check_serial(SerialConnection const& s) {
  auto const& g = s.first.gamma;
  auto const& sig = s.second.gamma;
  for (index_t a = 0; a < s.first.states.size(); ++a)
    for (index_t g1 = 0; g1 < g.order(); ++g1)
      for (index_t g2 = 0; g2 < g.order(); ++g2) {
        auto g12 = g.product(g1, g2);
        auto mid = s.first.next(a, g1);
        auto at = std::vector<std::pair<std::string, index_t>>{
            {"a", a}, {"g1", g1}, {"g2", g2}};
        if (s.first.next(a, g12) != s.first.next(mid, g2)) {
          return Report::fail({"action", at, s.first.next(a, g12), s.first.next(mid, g2)});
        }
        auto rhs = sig.product(s.alpha(a, g1), s.alpha(mid, g2));
        if (s.alpha(a, g12) != rhs) return Report::fail({"serial-alpha", at, s.alpha(a, g12), rhs});
      }
  return Report::pass();
}

struct SerialState {
  index_t a;
  index_t b;

  bool operator==(SerialState const&) const = default;
};

// (a, b)∘γ = (a∘γ, b∘(a∗γ)) with a∗γ = α(a, γ).
inline SerialState serial_action(SerialConnection const& s, index_t a, index_t b, index_t g) {
  s.first.states.check(a, "serial_action a");
  s.second.states.check(b, "serial_action b");
  if (g >= s.first.gamma.order()) {
    throw RangeError(detail::range_message("serial_action gamma", g, s.first.gamma.order()));
  }
  return {s.first.next(a, g), s.second.next(b, s.alpha(a, g))};
}

// (A, Γ, Σ) with ∘ from the first semiautomaton and ∗ := α.
inline SemigroupAutomatonSecond derive_second_type(SerialConnection const& s) {
  return SemigroupAutomatonSecond(s.first.states, s.first.gamma, s.second.gamma,
                                  s.first.next, s.alpha);
}

// Views (A, Γ, Σ) as the serial connection of (A, Γ) with Σ acting on
// itself by right multiplication.
inline SerialConnection serial_from_second(SemigroupAutomatonSecond const& m) {
  auto const ns = m.sigma.order();
  auto right_mult = Table::tabulate(ns, ns, ns, [&](auto b, auto s) {
    return m.sigma.product(static_cast<index_t>(b), static_cast<index_t>(s));
  });
  return SerialConnection(semiautomaton(m.states, m.gamma, m.next),
                          semiautomaton(FiniteSet(ns), m.sigma, std::move(right_mult)),
                          m.out);
}

// The serial connection as a cascade triple (Γ, α, id) whose first
// component is (B, Σ) and second is (A, Γ).
inline CascadeTripleSemigroup serial_as_cascade(SerialConnection const& s) {
  auto const n = s.first.gamma.order();
  std::vector<index_t> id(n);
  for (index_t g = 0; g < n; ++g) id[g] = g;
  return CascadeTripleSemigroup(s.first.gamma, s.alpha, FunMap(n, std::move(id)));
}

////////////////////////////////////////////////////////////////////////
// Automaton mappings
////////////////////////////////////////////////////////////////////////

// ā for a fixed state a of a pure second-type automaton.
struct AutomatonMapping {
  PureAutomatonSecond base;
  index_t state;

  AutomatonMapping(PureAutomatonSecond base_, index_t state_)
      : base(std::move(base_)), state(state_) {
    base.states.check(state, "AutomatonMapping state");
  }
};

// ā(u) = a∗u. Length preserving and prefix compatible, but in general
// ā(u₁u₂) = ā(u₁)·(a∘u₁)‾(u₂) rather than ā(u₁)ā(u₂).
inline Word apply_mapping(AutomatonMapping const& f, Word const& u) {
  return free_extension_out(f.base, f.state, u);
}

// States reachable from `start` under the free action, in BFS order.
inline std::vector<index_t> reachable_states(Table const& next, index_t start) {
  std::vector<char> seen(next.rows(), 0);
  std::vector<index_t> order{start};
  seen[start] = 1;
  for (std::size_t k = 0; k < order.size(); ++k)
    for (std::size_t x = 0; x < next.cols(); ++x) {
      auto q = next(order[k], x);
      if (!seen[q]) {
        seen[q] = 1;
        order.push_back(q);
      }
    }
  return order;
}

// The first reachable state whose letter map X → Y is not a bijection.
inline std::optional<index_t> first_non_bijective_state(AutomatonMapping const& f) {
  auto const& m = f.base;
  auto const nx = m.inputs.size();
  for (auto q : reachable_states(m.next, f.state)) {
    if (nx != m.outputs.size()) return q;
    std::vector<char> hit(nx, 0);
    for (index_t x = 0; x < nx; ++x) {
      auto y = m.out(q, x);
      if (hit[y]) return q;
      hit[y] = 1;
    }
  }
  return std::nullopt;
}

// The unique u with ā(u) = w. Requires every reachable state to permute
// letters.
inline Word decode_mapping(AutomatonMapping const& f, Word const& w) {
  auto const& m = f.base;
  if (auto bad = first_non_bijective_state(f)) {
    throw PreconditionError("decode_mapping: letter map at reachable state " +
                            m.states.label(*bad) + " is not a bijection");
  }
  if (w.alphabet_size() != m.outputs.size()) {
    throw RangeError("decode_mapping: word alphabet does not match the outputs");
  }
  auto const nx = m.inputs.size();
  std::vector<index_t> inverse(nx * m.states.size(), 0);
  for (index_t q = 0; q < m.states.size(); ++q)
    for (index_t x = 0; x < nx; ++x) inverse[q * nx + m.out(q, x)] = x;
  std::vector<index_t> xs;
  xs.reserve(w.size());
  index_t a = f.state;
  for (auto y : w) {
    auto x = inverse[a * nx + y];
    xs.push_back(x);
    a = m.next(a, x);
  }
  return Word(nx, std::move(xs));
}

}  // namespace algaut
