#pragma once

/**
 * @file cascade.hpp
 * @brief Cascade connections of two first-type automata, morphisms of
 *        cascade triples, and the wreath product Γ₁ wr^{A₂} Γ₂.
 *
 * A cascade of (A₁, ·, B₁) and (A₂, ·, B₂) lives on A₁ × A₂ and is driven by
 * a triple (X or Γ, α, β): the second component reads β(x) while feeding
 * α(a₂, x) to the first. α always takes the A₂ state first.
 *
 * Pairs (a₁, a₂) are encoded as a₁·|A₂| + a₂, and likewise for outputs.
 */

#include <string>
#include <utility>
#include <vector>

#include "algaut/core.hpp"
#include "algaut/first_type.hpp"
#include "algaut/report.hpp"

namespace algaut {

////////////////////////////////////////////////////////////////////////
// Pure cascades
////////////////////////////////////////////////////////////////////////

struct CascadeTriplePure {
  FiniteSet inputs;
  Table alpha;  // A₂ × X → X₁
  FunMap beta;  // X → X₂

  CascadeTriplePure(FiniteSet inputs_, Table alpha_, FunMap beta_)
      : inputs(std::move(inputs_)), alpha(std::move(alpha_)), beta(std::move(beta_)) {
    if (alpha.cols() != inputs.size() || beta.domain_size() != inputs.size()) {
      throw RangeError("CascadeTriplePure: alpha and beta must be defined on all " +
                       std::to_string(inputs.size()) + " inputs");
    }
  }

  void expect_components(PureAutomatonFirst const& m1, PureAutomatonFirst const& m2) const {
    alpha.expect_shape(m2.states.size(), inputs.size(), m1.inputs.size(), "cascade alpha");
    if (beta.codomain_size() != m2.inputs.size()) {
      throw RangeError("cascade beta: codomain has " + std::to_string(beta.codomain_size()) +
                       " letters, second component has " + std::to_string(m2.inputs.size()));
    }
  }

  bool operator==(CascadeTriplePure const&) const = default;
};

// (a₁,a₂)∘x = (a₁∘α(a₂,x), a₂∘β(x)),  (a₁,a₂)∗x = (a₁∗α(a₂,x), a₂∗β(x)).
inline PureAutomatonFirst cascade_pure(PureAutomatonFirst const& m1,
                                       PureAutomatonFirst const& m2,
                                       CascadeTriplePure const& t) {
  t.expect_components(m1, m2);
  auto const n2 = m2.states.size();
  auto const nb2 = m2.outputs.size();
  auto const n = m1.states.size() * n2;
  auto next = Table::tabulate(n, t.inputs.size(), n, [&](auto s, auto x) {
    auto a1 = s / n2, a2 = s % n2;
    auto x1 = t.alpha(a2, x);
    return m1.next(a1, x1) * n2 + m2.next(a2, t.beta(x));
  });
  auto out = Table::tabulate(n, t.inputs.size(), m1.outputs.size() * nb2, [&](auto s, auto x) {
    auto a1 = s / n2, a2 = s % n2;
    auto x1 = t.alpha(a2, x);
    return m1.out(a1, x1) * nb2 + m2.out(a2, t.beta(x));
  });
  return PureAutomatonFirst(product_set(m1.states, m2.states), t.inputs,
                            product_set(m1.outputs, m2.outputs), std::move(next),
                            std::move(out));
}

// Checks that mu: X → X' makes both triangles commute:
// α(a₂,x) = α'(a₂,μ(x)) and β(x) = β'(μ(x)).
inline Report check_triple_morphism(CascadeTriplePure const& t, CascadeTriplePure const& t2,
                                    FunMap const& mu) {
  if (mu.domain_size() != t.inputs.size() || mu.codomain_size() != t2.inputs.size()) {
    throw RangeError("check_triple_morphism: mu must map the inputs of t to those of t'");
  }
  if (t.alpha.rows() != t2.alpha.rows() || t.alpha.codomain() != t2.alpha.codomain() ||
      t.beta.codomain_size() != t2.beta.codomain_size()) {
    throw RangeError("check_triple_morphism: triples are over different components");
  }
  for (index_t x = 0; x < t.inputs.size(); ++x) {
    if (t.beta(x) != t2.beta(mu(x))) {
      return Report::fail({"beta", {{"x", x}}, t.beta(x), t2.beta(mu(x))});
    }
    for (index_t a2 = 0; a2 < t.alpha.rows(); ++a2) {
      if (t.alpha(a2, x) != t2.alpha(a2, mu(x))) {
        return Report::fail({"alpha", {{"a2", a2}, {"x", x}}, t.alpha(a2, x),
                             t2.alpha(a2, mu(x))});
      }
    }
  }
  return Report::pass();
}

////////////////////////////////////////////////////////////////////////
// Semigroup cascades
////////////////////////////////////////////////////////////////////////

struct CascadeTripleSemigroup {
  SemigroupTable gamma;
  Table alpha;  // A₂ × Γ → Γ₁
  FunMap beta;  // Γ → Γ₂

  CascadeTripleSemigroup(SemigroupTable gamma_, Table alpha_, FunMap beta_)
      : gamma(std::move(gamma_)), alpha(std::move(alpha_)), beta(std::move(beta_)) {
    if (alpha.cols() != gamma.order() || beta.domain_size() != gamma.order()) {
      throw RangeError("CascadeTripleSemigroup: alpha and beta must be defined on all " +
                       std::to_string(gamma.order()) + " elements");
    }
  }

  void expect_components(SemigroupAutomatonFirst const& m1,
                         SemigroupAutomatonFirst const& m2) const {
    alpha.expect_shape(m2.states.size(), gamma.order(), m1.gamma.order(), "cascade alpha");
    if (beta.codomain_size() != m2.gamma.order()) {
      throw RangeError("cascade beta: codomain has " + std::to_string(beta.codomain_size()) +
                       " elements, second component's semigroup has " +
                       std::to_string(m2.gamma.order()));
    }
  }

  bool operator==(CascadeTripleSemigroup const&) const = default;
};

// β must be a homomorphism and α must satisfy
// α(a₂, γγ') = α(a₂, γ)·α(a₂∘β(γ), γ').
inline Report check_cascade_triple(SemigroupAutomatonFirst const& m1,
                                   SemigroupAutomatonFirst const& m2,
                                   CascadeTripleSemigroup const& t) {
  t.expect_components(m1, m2);
  auto const& g = t.gamma;
  for (index_t g1 = 0; g1 < g.order(); ++g1)
    for (index_t g2 = 0; g2 < g.order(); ++g2) {
      auto lhs = t.beta(g.product(g1, g2));
      auto rhs = m2.gamma.product(t.beta(g1), t.beta(g2));
      if (lhs != rhs) return Report::fail({"beta-homomorphism", {{"g1", g1}, {"g2", g2}}, lhs, rhs});
    }
  for (index_t a2 = 0; a2 < m2.states.size(); ++a2)
    for (index_t g1 = 0; g1 < g.order(); ++g1) {
      auto shifted = m2.next(a2, t.beta(g1));
      for (index_t g2 = 0; g2 < g.order(); ++g2) {
        auto lhs = t.alpha(a2, g.product(g1, g2));
        auto rhs = m1.gamma.product(t.alpha(a2, g1), t.alpha(shifted, g2));
        if (lhs != rhs) {
          return Report::fail(
              {"crossed-homomorphism", {{"a2", a2}, {"g1", g1}, {"g2", g2}}, lhs, rhs});
        }
      }
    }
  return Report::pass();
}

// The cascade automaton (A₁ × A₂, Γ, B₁ × B₂). Satisfies the first-type
// axioms whenever check_cascade_triple passes and both components do.
inline SemigroupAutomatonFirst cascade_semigroup(SemigroupAutomatonFirst const& m1,
                                                 SemigroupAutomatonFirst const& m2,
                                                 CascadeTripleSemigroup const& t) {
  t.expect_components(m1, m2);
  auto const n2 = m2.states.size();
  auto const nb2 = m2.outputs.size();
  auto const n = m1.states.size() * n2;
  auto const ng = t.gamma.order();
  auto next = Table::tabulate(n, ng, n, [&](auto s, auto g) {
    auto a1 = s / n2, a2 = s % n2;
    return m1.next(a1, t.alpha(a2, g)) * n2 + m2.next(a2, t.beta(static_cast<index_t>(g)));
  });
  auto out = Table::tabulate(n, ng, m1.outputs.size() * nb2, [&](auto s, auto g) {
    auto a1 = s / n2, a2 = s % n2;
    return m1.out(a1, t.alpha(a2, g)) * nb2 + m2.out(a2, t.beta(static_cast<index_t>(g)));
  });
  return SemigroupAutomatonFirst(product_set(m1.states, m2.states), t.gamma,
                                 product_set(m1.outputs, m2.outputs), std::move(next),
                                 std::move(out));
}

// Morphism of semigroup triples: α(a₂,γ) = α'(a₂,μ(γ)), β(γ) = β'(μ(γ)).
inline Report check_triple_morphism(CascadeTripleSemigroup const& t,
                                    CascadeTripleSemigroup const& t2, FunMap const& mu) {
  if (mu.domain_size() != t.gamma.order() || mu.codomain_size() != t2.gamma.order()) {
    throw RangeError("check_triple_morphism: mu must map Γ to Γ'");
  }
  if (t.alpha.rows() != t2.alpha.rows() || t.alpha.codomain() != t2.alpha.codomain() ||
      t.beta.codomain_size() != t2.beta.codomain_size()) {
    throw RangeError("check_triple_morphism: triples are over different components");
  }
  for (index_t g = 0; g < t.gamma.order(); ++g) {
    if (t.beta(g) != t2.beta(mu(g))) {
      return Report::fail({"beta", {{"g", g}}, t.beta(g), t2.beta(mu(g))});
    }
    for (index_t a2 = 0; a2 < t.alpha.rows(); ++a2) {
      if (t.alpha(a2, g) != t2.alpha(a2, mu(g))) {
        return Report::fail({"alpha", {{"a2", a2}, {"g", g}}, t.alpha(a2, g),
                             t2.alpha(a2, mu(g))});
      }
    }
  }
  return Report::pass();
}

////////////////////////////////////////////////////////////////////////
// Wreath product
////////////////////////////////////////////////////////////////////////

// (γ̄₁, γ₂) with γ̄₁: A₂ → Γ₁.
struct WreathElement {
  std::vector<index_t> bar;
  index_t gamma2 = 0;

  bool operator==(WreathElement const&) const = default;
};

}  // namespace algaut

template <>
struct std::hash<algaut::WreathElement> {
  std::size_t operator()(algaut::WreathElement const& w) const noexcept {
    auto h = algaut::detail::hash_range(w.bar);
    algaut::detail::hash_combine(h, w.gamma2);
    return h;
  }
};

namespace algaut {

// Throws unless action: A₂ × Γ₂ → A₂ satisfies a∘(γγ') = (a∘γ)∘γ'.
inline void expect_right_action(Table const& action, SemigroupTable const& g2,
                                std::string const& what) {
  action.expect_shape(action.rows(), g2.order(), action.rows(), what);
  for (index_t a = 0; a < action.rows(); ++a)
    for (index_t x = 0; x < g2.order(); ++x)
      for (index_t y = 0; y < g2.order(); ++y)
        if (action(a, g2.product(x, y)) != action(action(a, x), y)) {
          throw PreconditionError(what + ": not a right action at a=" + std::to_string(a) +
                                  " g1=" + std::to_string(x) + " g2=" + std::to_string(y));
        }
}

// (γ̄₁, γ₂)(γ̄₁', γ₂') = (a ↦ γ̄₁(a)·γ̄₁'(a∘γ₂), γ₂γ₂').
inline WreathElement wreath_multiply(SemigroupTable const& g1, Table const& action,
                                     SemigroupTable const& g2, WreathElement const& x,
                                     WreathElement const& y) {
  WreathElement r;
  r.bar.resize(x.bar.size());
  for (index_t a = 0; a < x.bar.size(); ++a) {
    r.bar[a] = g1.product(x.bar[a], y.bar[action(a, x.gamma2)]);
  }
  r.gamma2 = g2.product(x.gamma2, y.gamma2);
  return r;
}

struct WreathProduct {
  SemigroupTable table;
  std::vector<WreathElement> elements;
  std::size_t gamma1_order = 1;
  std::size_t a2_size = 1;
  std::size_t gamma2_order = 1;

  // Elements are ordered by γ̄₁ read as a base-|Γ₁| numeral (a₂ = 0 most
  // significant), then by γ₂.
  index_t index_of(WreathElement const& w) const {
    if (w.bar.size() != a2_size || w.gamma2 >= gamma2_order) {
      throw RangeError("WreathProduct::index_of: element has the wrong shape");
    }
    std::size_t code = 0;
    for (auto v : w.bar) {
      if (v >= gamma1_order) throw RangeError("WreathProduct::index_of: bad bar entry");
      code = code * gamma1_order + v;
    }
    return static_cast<index_t>(code * gamma2_order + w.gamma2);
  }
};

// Checked |Γ₁|^{|A₂|}·|Γ₂|, or nullopt above `cap`.
inline std::optional<std::size_t> wreath_order(std::size_t g1, std::size_t a2, std::size_t g2,
                                               std::size_t cap) {
  std::size_t n = g2;
  if (n > cap) return std::nullopt;
  for (std::size_t i = 0; i < a2; ++i) {
    n *= g1;
    if (n > cap) return std::nullopt;
  }
  return n;
}

// The full wreath product Γ₁ wr^{A₂} Γ₂ over every map A₂ → Γ₁.
inline WreathProduct wreath_semigroup(SemigroupTable const& g1, std::size_t a2,
                                      Table const& action, SemigroupTable const& g2,
                                      std::size_t cap = kDefaultCap) {
  if (a2 == 0) throw RangeError("wreath_semigroup: empty state set");
  if (action.rows() != a2) throw RangeError("wreath_semigroup: action is not defined on A2");
  expect_right_action(action, g2, "wreath_semigroup action");
  auto order = wreath_order(g1.order(), a2, g2.order(), std::min(cap, kMaxTableOrder));
  if (!order) {
    throw CapExceeded("wreath_semigroup: |G1|^|A2|*|G2| = " + std::to_string(g1.order()) +
                      "^" + std::to_string(a2) + "*" + std::to_string(g2.order()) +
                      " exceeds cap " + std::to_string(std::min(cap, kMaxTableOrder)));
  }
  auto const n = *order;
  WreathProduct w;
  w.gamma1_order = g1.order();
  w.a2_size = a2;
  w.gamma2_order = g2.order();
  w.elements.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    WreathElement e;
    e.gamma2 = static_cast<index_t>(k % g2.order());
    auto code = k / g2.order();
    e.bar.assign(a2, 0);
    for (std::size_t a = a2; a-- > 0;) {
      e.bar[a] = static_cast<index_t>(code % g1.order());
      code /= g1.order();
    }
    w.elements.push_back(std::move(e));
  }
  std::vector<index_t> data(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      data[i * n + j] = w.index_of(wreath_multiply(g1, action, g2, w.elements[i], w.elements[j]));
  // Associativity follows from that of Γ₁, Γ₂ and the action law, all
  // checked above.
  w.table = SemigroupTable::trusted(Table(n, n, n, std::move(data)));
  return w;
}

// The subsemigroup of the wreath product generated by `gens`, for when the
// full function space is too large.
inline Closure<WreathElement> wreath_subsemigroup(SemigroupTable const& g1,
                                                  Table const& action,
                                                  SemigroupTable const& g2,
                                                  std::vector<WreathElement> const& gens,
                                                  std::size_t cap = kDefaultCap) {
  expect_right_action(action, g2, "wreath_subsemigroup action");
  for (auto const& e : gens) {
    if (e.bar.size() != action.rows() || e.gamma2 >= g2.order()) {
      throw RangeError("wreath_subsemigroup: generator has the wrong shape");
    }
    for (auto v : e.bar) {
      if (v >= g1.order()) throw RangeError("wreath_subsemigroup: generator entry out of range");
    }
  }
  return generate_semigroup(
      gens,
      [&](WreathElement const& x, WreathElement const& y) {
        return wreath_multiply(g1, action, g2, x, y);
      },
      cap);
}

struct WreathAutomaton {
  SemigroupAutomatonFirst automaton;
  CascadeTripleSemigroup triple;
  WreathProduct product;
};

// (A₁, Γ₁, B₁) wr (A₂, Γ₂, B₂) together with its defining triple:
// α(a₂, (γ̄₁, γ₂)) = γ̄₁(a₂) and β(γ̄₁, γ₂) = γ₂.
inline WreathAutomaton wreath_automaton(SemigroupAutomatonFirst const& m1,
                                        SemigroupAutomatonFirst const& m2,
                                        std::size_t cap = kDefaultCap) {
  auto product = wreath_semigroup(m1.gamma, m2.states.size(), m2.next, m2.gamma, cap);
  auto const n = product.elements.size();
  auto alpha = Table::tabulate(m2.states.size(), n, m1.gamma.order(),
                               [&](auto a2, auto w) { return product.elements[w].bar[a2]; });
  std::vector<index_t> beta(n);
  for (std::size_t k = 0; k < n; ++k) beta[k] = product.elements[k].gamma2;
  CascadeTripleSemigroup triple(product.table, std::move(alpha),
                                FunMap(m2.gamma.order(), std::move(beta)));
  auto automaton = cascade_semigroup(m1, m2, triple);
  return {std::move(automaton), std::move(triple), std::move(product)};
}

struct Embedding {
  std::vector<index_t> map;  // Γ → Γ₁ wr^{A₂} Γ₂
  bool injective = false;
  std::size_t image_order = 0;
};

// The canonical map γ ↦ (a₂ ↦ α(a₂,γ), β(γ)) into the wreath product.
// Verifies that it is a homomorphism, that it is a morphism of triples, and
// that no other map into the wreath product makes the triangles commute.
inline Embedding embed_into_wreath(SemigroupAutomatonFirst const& m1,
                                   SemigroupAutomatonFirst const& m2,
                                   CascadeTripleSemigroup const& t,
                                   WreathAutomaton const& w) {
  if (auto r = check_cascade_triple(m1, m2, t); !r) {
    throw PreconditionError("embed_into_wreath: invalid triple: " + r.witness->describe());
  }
  auto const& wp = w.product;
  if (wp.gamma1_order != m1.gamma.order() || wp.a2_size != m2.states.size() ||
      wp.gamma2_order != m2.gamma.order()) {
    throw RangeError("embed_into_wreath: wreath product is over different components");
  }
  auto const ng = t.gamma.order();
  auto const na2 = m2.states.size();

  Embedding e;
  e.map.resize(ng);
  for (index_t g = 0; g < ng; ++g) {
    WreathElement img;
    img.bar.resize(na2);
    for (index_t a2 = 0; a2 < na2; ++a2) img.bar[a2] = t.alpha(a2, g);
    img.gamma2 = t.beta(g);
    e.map[g] = wp.index_of(img);
  }

  for (index_t x = 0; x < ng; ++x)
    for (index_t y = 0; y < ng; ++y)
      if (e.map[t.gamma.product(x, y)] != wp.table.product(e.map[x], e.map[y])) {
        throw VerificationError("embed_into_wreath: canonical map is not a homomorphism at " +
                                std::to_string(x) + "," + std::to_string(y));
      }

  if (auto r = check_triple_morphism(t, w.triple, FunMap(wp.elements.size(), e.map)); !r) {
    throw VerificationError("embed_into_wreath: triangles do not commute: " +
                            r.witness->describe());
  }

  // Pointwise forcing: for each γ exactly one wreath element has the
  // prescribed α' and β' values, and it is the canonical image.
  for (index_t g = 0; g < ng; ++g) {
    std::size_t matches = 0;
    for (index_t k = 0; k < wp.elements.size(); ++k) {
      bool fits = w.triple.beta(k) == t.beta(g);
      for (index_t a2 = 0; fits && a2 < na2; ++a2) fits = w.triple.alpha(a2, k) == t.alpha(a2, g);
      if (fits) {
        ++matches;
        if (k != e.map[g]) {
          throw VerificationError("embed_into_wreath: a second map commutes at " +
                                  std::to_string(g));
        }
      }
    }
    if (matches != 1) {
      throw VerificationError("embed_into_wreath: no commuting image for " + std::to_string(g));
    }
  }

  auto image = e.map;
  std::sort(image.begin(), image.end());
  image.erase(std::unique(image.begin(), image.end()), image.end());
  e.image_order = image.size();
  e.injective = image.size() == ng;
  return e;
}

}  // namespace algaut
