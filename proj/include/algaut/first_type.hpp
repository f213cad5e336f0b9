#pragma once

/**
 * @file first_type.hpp
 * @brief Automata (A, X, B) and (A, Γ, B) whose output depends only on the
 *        last step: a∗(γ₁γ₂) = (a∘γ₁)∗γ₂.
 *
 * A pure automaton has a bare input alphabet X. Extending its input map
 * X → S_{A,B} to the free semigroup and taking the image gives a faithful
 * semigroup automaton; see semigroupify().
 */

#include <string>
#include <utility>
#include <vector>

#include "algaut/core.hpp"
#include "algaut/report.hpp"

namespace algaut {

struct PureAutomatonFirst {
  FiniteSet states;
  FiniteSet inputs;
  FiniteSet outputs;
  Table next;  // A × X → A
  Table out;   // A × X → B

  PureAutomatonFirst(FiniteSet states_, FiniteSet inputs_, FiniteSet outputs_,
                     Table next_, Table out_)
      : states(std::move(states_)),
        inputs(std::move(inputs_)),
        outputs(std::move(outputs_)),
        next(std::move(next_)),
        out(std::move(out_)) {
    next.expect_shape(states.size(), inputs.size(), states.size(), "next");
    out.expect_shape(states.size(), inputs.size(), outputs.size(), "out");
  }

  bool operator==(PureAutomatonFirst const&) const = default;
};

struct SemigroupAutomatonFirst {
  FiniteSet states;
  SemigroupTable gamma;
  FiniteSet outputs;
  Table next;  // A × Γ → A
  Table out;   // A × Γ → B

  SemigroupAutomatonFirst(FiniteSet states_, SemigroupTable gamma_,
                          FiniteSet outputs_, Table next_, Table out_)
      : states(std::move(states_)),
        gamma(std::move(gamma_)),
        outputs(std::move(outputs_)),
        next(std::move(next_)),
        out(std::move(out_)) {
    next.expect_shape(states.size(), gamma.order(), states.size(), "next");
    out.expect_shape(states.size(), gamma.order(), outputs.size(), "out");
  }

  bool operator==(SemigroupAutomatonFirst const&) const = default;
};

// Exhaustive check of a∘(γ₁γ₂) = (a∘γ₁)∘γ₂ and a∗(γ₁γ₂) = (a∘γ₁)∗γ₂.
// Each triple is tested against the action law first, then the output law.
inline Report check_first_axioms(SemigroupAutomatonFirst const& m) {
  auto const& g = m.gamma;
  for (index_t a = 0; a < m.states.size(); ++a)
    for (index_t g1 = 0; g1 < g.order(); ++g1)
      for (index_t g2 = 0; g2 < g.order(); ++g2) {
        auto g12 = g.product(g1, g2);
        auto mid = m.next(a, g1);
        auto at = std::vector<std::pair<std::string, index_t>>{
            {"a", a}, {"g1", g1}, {"g2", g2}};
        if (m.next(a, g12) != m.next(mid, g2)) {
          return Report::fail({"action", at, m.next(a, g12), m.next(mid, g2)});
        }
        if (m.out(a, g12) != m.out(mid, g2)) {
          return Report::fail({"output", at, m.out(a, g12), m.out(mid, g2)});
        }
      }
  return Report::pass();
}

// x ↦ (σₓ, φₓ) with σₓ(a) = next(a, x), φₓ(a) = out(a, x).
inline std::vector<PairElement> to_universal(PureAutomatonFirst const& m) {
  std::vector<PairElement> r;
  r.reserve(m.inputs.size());
  for (index_t x = 0; x < m.inputs.size(); ++x) {
    std::vector<index_t> sigma(m.states.size()), phi(m.states.size());
    for (index_t a = 0; a < m.states.size(); ++a) {
      sigma[a] = m.next(a, x);
      phi[a] = m.out(a, x);
    }
    r.emplace_back(Transformation(std::move(sigma)),
                   FunMap(m.outputs.size(), std::move(phi)));
  }
  return r;
}

// γ ↦ (σ_γ, φ_γ). This is a homomorphism Γ → S_{A,B} exactly when the
// automaton satisfies check_first_axioms.
inline std::vector<PairElement> to_pair_representation(SemigroupAutomatonFirst const& m) {
  std::vector<PairElement> r;
  r.reserve(m.gamma.order());
  for (index_t g = 0; g < m.gamma.order(); ++g) {
    std::vector<index_t> sigma(m.states.size()), phi(m.states.size());
    for (index_t a = 0; a < m.states.size(); ++a) {
      sigma[a] = m.next(a, g);
      phi[a] = m.out(a, g);
    }
    r.emplace_back(Transformation(std::move(sigma)),
                   FunMap(m.outputs.size(), std::move(phi)));
  }
  return r;
}

// Reads the automaton (A, Γ, B) off a list of distinct pair elements with a
// table for Γ over them.
inline SemigroupAutomatonFirst automaton_from_pairs(FiniteSet states, FiniteSet outputs,
                                                    SemigroupTable gamma,
                                                    std::vector<PairElement> const& elems) {
  auto n = states.size();
  auto next = Table::tabulate(n, elems.size(), n,
                              [&](auto a, auto g) { return elems[g].sigma(a); });
  auto out = Table::tabulate(n, elems.size(), outputs.size(),
                             [&](auto a, auto g) { return elems[g].phi(a); });
  return SemigroupAutomatonFirst(std::move(states), std::move(gamma), std::move(outputs),
                                 std::move(next), std::move(out));
}

// The faithful semigroup automaton of a pure one: Γ is the image of F(X) in
// S_{A,B}. Letter x maps to element gamma.generators()[x].
inline SemigroupAutomatonFirst semigroupify(PureAutomatonFirst const& m,
                                            std::size_t cap = kDefaultCap) {
  auto closure = generate_semigroup(to_universal(m), multiply_pair, cap);
  auto result = automaton_from_pairs(m.states, m.outputs, std::move(closure.table),
                                     closure.elements);
  if (!check_first_axioms(result)) {
    throw VerificationError("semigroupify: result violates the first-type axioms");
  }
  return result;
}

// The universal automaton (A, S_{A,B}, B) over all |A|^|A|·|B|^|A| pairs.
inline SemigroupAutomatonFirst universal_automaton(std::size_t state_count,
                                                   std::size_t output_count,
                                                   std::size_t cap = kDefaultCap) {
  std::size_t total = 1;
  for (std::size_t i = 0; i < state_count; ++i) {
    total *= state_count * output_count;
    if (total > cap) throw CapExceeded("universal_automaton: S_{A,B} exceeds cap");
  }
  std::vector<PairElement> all;
  all.reserve(total);
  std::vector<index_t> sigma(state_count, 0), phi(state_count, 0);
  for (std::size_t k = 0; k < total; ++k) {
    auto code = k;
    for (std::size_t a = 0; a < state_count; ++a) {
      sigma[a] = static_cast<index_t>(code % state_count);
      code /= state_count;
    }
    for (std::size_t a = 0; a < state_count; ++a) {
      phi[a] = static_cast<index_t>(code % output_count);
      code /= output_count;
    }
    all.emplace_back(Transformation(sigma), FunMap(output_count, phi));
  }
  auto closure = generate_semigroup(all, multiply_pair, cap);
  return automaton_from_pairs(FiniteSet(state_count), FiniteSet(output_count),
                              std::move(closure.table), closure.elements);
}

struct WordResult {
  index_t state;
  index_t output;  // output of the final step

  bool operator==(WordResult const&) const = default;
};

// Folds ∘ over the letters of w; the output is that of the last letter.
inline WordResult act_word(PureAutomatonFirst const& m, index_t a, Word const& w) {
  m.states.check(a, "act_word state");
  if (w.alphabet_size() != m.inputs.size()) {
    throw RangeError("act_word: word alphabet does not match the inputs");
  }
  index_t out = 0;
  for (auto x : w) {
    out = m.out(a, x);
    a = m.next(a, x);
  }
  return {a, out};
}

// Letters of w are elements of Γ.
inline WordResult act_word(SemigroupAutomatonFirst const& m, index_t a, Word const& w) {
  m.states.check(a, "act_word state");
  if (w.alphabet_size() != m.gamma.order()) {
    throw RangeError("act_word: word alphabet does not match the semigroup");
  }
  index_t out = 0;
  for (auto g : w) {
    out = m.out(a, g);
    a = m.next(a, g);
  }
  return {a, out};
}

}  // namespace algaut
