#pragma once

/**
 * @file second_type.hpp
 * @brief Automata (A, X, Y) and (A, Γ, Σ) whose outputs accumulate in a
 *        semigroup: a∗(γ₁γ₂) = (a∗γ₁)·((a∘γ₁)∗γ₂).
 *
 * The pure object carries no laws of its own. Its free extension
 * (A, F(X), F(Y)) concatenates per-letter outputs, and a pair of
 * surjections μ: F(X) → Γ, ν: F(Y) → Σ pushes that down to (A, Γ, Σ)
 * whenever a ∗ u^μ := (a∗u)^ν is well defined. quotient_construct() decides
 * this exactly.
 */

#include <deque>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "algaut/core.hpp"
#include "algaut/report.hpp"

namespace algaut {

struct PureAutomatonSecond {
  FiniteSet states;
  FiniteSet inputs;
  FiniteSet outputs;
  Table next;  // A × X → A
  Table out;   // A × X → Y

  PureAutomatonSecond(FiniteSet states_, FiniteSet inputs_, FiniteSet outputs_,
                      Table next_, Table out_)
      : states(std::move(states_)),
        inputs(std::move(inputs_)),
        outputs(std::move(outputs_)),
        next(std::move(next_)),
        out(std::move(out_)) {
    next.expect_shape(states.size(), inputs.size(), states.size(), "next");
    out.expect_shape(states.size(), inputs.size(), outputs.size(), "out");
  }

  bool operator==(PureAutomatonSecond const&) const = default;
};

struct SemigroupAutomatonSecond {
  FiniteSet states;
  SemigroupTable gamma;
  SemigroupTable sigma;
  Table next;  // A × Γ → A
  Table out;   // A × Γ → Σ

  SemigroupAutomatonSecond(FiniteSet states_, SemigroupTable gamma_,
                           SemigroupTable sigma_, Table next_, Table out_)
      : states(std::move(states_)),
        gamma(std::move(gamma_)),
        sigma(std::move(sigma_)),
        next(std::move(next_)),
        out(std::move(out_)) {
    next.expect_shape(states.size(), gamma.order(), states.size(), "next");
    out.expect_shape(states.size(), gamma.order(), sigma.order(), "out");
  }

  bool operator==(SemigroupAutomatonSecond const&) const = default;
};

// A homomorphism F(X) → target fixed by the images of the letters. The
// images must generate the target.
class GeneratorHom {
 public:
  GeneratorHom(std::size_t alphabet_size, SemigroupTable target,
               std::vector<index_t> assignment)
      : alphabet_size_(alphabet_size),
        target_(std::move(target)),
        assignment_(std::move(assignment)) {
    if (alphabet_size_ == 0) throw RangeError("GeneratorHom: empty alphabet");
    if (assignment_.size() != alphabet_size_) {
      throw RangeError("GeneratorHom: assignment has " +
                       std::to_string(assignment_.size()) + " entries for " +
                       std::to_string(alphabet_size_) + " letters");
    }
    for (std::size_t i = 0; i < assignment_.size(); ++i) {
      if (assignment_[i] >= target_.order()) {
        throw RangeError(detail::range_message(
            "GeneratorHom assignment[" + std::to_string(i) + "]", assignment_[i],
            target_.order()));
      }
    }
    if (target_.generated_by(assignment_).size() != target_.order()) {
      throw PreconditionError("GeneratorHom: letter images do not generate the target");
    }
  }

  std::size_t alphabet_size() const noexcept { return alphabet_size_; }
  SemigroupTable const& target() const noexcept { return target_; }
  std::vector<index_t> const& assignment() const noexcept { return assignment_; }
  index_t operator()(index_t letter) const { return assignment_[letter]; }

  index_t eval(Word const& w) const {
    if (w.alphabet_size() != alphabet_size_) {
      throw RangeError("GeneratorHom::eval: alphabet mismatch");
    }
    index_t acc = assignment_[w[0]];
    for (std::size_t i = 1; i < w.size(); ++i) {
      acc = target_.product(acc, assignment_[w[i]]);
    }
    return acc;
  }

  bool operator==(GeneratorHom const&) const = default;

 private:
  std::size_t alphabet_size_;
  SemigroupTable target_;
  std::vector<index_t> assignment_;
};

// Exhaustive check of the action law and the cocycle law
// a∗(γ₁γ₂) = (a∗γ₁)·((a∘γ₁)∗γ₂).
inline Report check_second_axioms(SemigroupAutomatonSecond const& m) {
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
        auto rhs = m.sigma.product(m.out(a, g1), m.out(mid, g2));
        if (m.out(a, g12) != rhs) {
          return Report::fail({"cocycle", at, m.out(a, g12), rhs});
        }
      }
  return Report::pass();
}

// The output word a∗u in (A, F(X), F(Y)): letter k is the output of the
// k-th input letter from the state reached after the first k-1.
inline Word free_extension_out(PureAutomatonSecond const& m, index_t a, Word const& u) {
  m.states.check(a, "free_extension_out state");
  if (u.alphabet_size() != m.inputs.size()) {
    throw RangeError("free_extension_out: word alphabet does not match the inputs");
  }
  std::vector<index_t> ys;
  ys.reserve(u.size());
  for (auto x : u) {
    ys.push_back(m.out(a, x));
    a = m.next(a, x);
  }
  return Word(m.outputs.size(), std::move(ys));
}

// a∘u for a word u.
inline index_t free_extension_next(PureAutomatonSecond const& m, index_t a, Word const& u) {
  m.states.check(a, "free_extension_next state");
  for (auto x : u) a = m.next(a, x);
  return a;
}

// Two words with the same μ-image that disagree from `state`, either on the
// reached state or on the ν-image of the output.
struct Incompatibility {
  index_t state;
  Word u;
  Word v;
  std::string reason;  // "state" or "output"
};

struct QuotientResult {
  std::optional<SemigroupAutomatonSecond> automaton;
  std::optional<Incompatibility> witness;

  bool well_defined() const noexcept { return automaton.has_value(); }
};

// Decides whether (A, F(X), F(Y)) descends along μ, ν to (A, Γ, Σ).
//
// For each start state a the reachable set of triples
// (u^μ, a∘u, (a∗u)^ν) is finite and is explored breadth first from the
// single letters. The quotient exists iff within every such set the first
// coordinate determines the other two. The first conflicting pair found is
// returned as the witness.
inline QuotientResult quotient_construct(PureAutomatonSecond const& m,
                                         GeneratorHom const& mu, GeneratorHom const& nu) {
  if (mu.alphabet_size() != m.inputs.size()) {
    throw RangeError("quotient_construct: mu is defined on " +
                     std::to_string(mu.alphabet_size()) + " letters, inputs have " +
                     std::to_string(m.inputs.size()));
  }
  if (nu.alphabet_size() != m.outputs.size()) {
    throw RangeError("quotient_construct: nu is defined on " +
                     std::to_string(nu.alphabet_size()) + " letters, outputs have " +
                     std::to_string(m.outputs.size()));
  }
  auto const& gamma = mu.target();
  auto const& sigma = nu.target();
  std::size_t const na = m.states.size();
  std::size_t const ng = gamma.order();
  std::size_t const ns = sigma.order();
  std::size_t const nx = m.inputs.size();
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  auto encode = [&](std::size_t g, std::size_t a, std::size_t s) {
    return (g * na + a) * ns + s;
  };

  std::vector<index_t> next_tab(na * ng), out_tab(na * ng);

  for (index_t start = 0; start < na; ++start) {
    std::vector<std::size_t> parent(ng * na * ns, kNone);
    std::vector<index_t> letter(ng * na * ns, 0);
    std::vector<char> seen(ng * na * ns, 0);
    std::vector<std::size_t> rep(ng, kNone);
    std::deque<std::size_t> queue;

    auto word_to = [&](std::size_t id) {
      std::vector<index_t> ls;
      for (; id != kNone; id = parent[id]) ls.push_back(letter[id]);
      std::reverse(ls.begin(), ls.end());
      return Word(nx, std::move(ls));
    };

    // Returns a witness if `id` conflicts with the representative of its γ.
    auto visit = [&](std::size_t id, std::size_t from,
                     index_t x) -> std::optional<Incompatibility> {
      if (seen[id]) return std::nullopt;
      seen[id] = 1;
      parent[id] = from;
      letter[id] = x;
      auto g = id / (na * ns);
      if (rep[g] == kNone) {
        rep[g] = id;
        queue.push_back(id);
        return std::nullopt;
      }
      auto a_rep = (rep[g] / ns) % na;
      auto a_new = (id / ns) % na;
      return Incompatibility{start, word_to(rep[g]), word_to(id),
                             a_rep != a_new ? "state" : "output"};
    };

    for (index_t x = 0; x < nx; ++x) {
      auto id = encode(mu(x), m.next(start, x), nu(m.out(start, x)));
      if (auto w = visit(id, kNone, x)) return {std::nullopt, std::move(w)};
    }
    while (!queue.empty()) {
      auto id = queue.front();
      queue.pop_front();
      auto g = id / (na * ns);
      auto a = (id / ns) % na;
      auto s = id % ns;
      for (index_t x = 0; x < nx; ++x) {
        auto nid = encode(gamma.product(static_cast<index_t>(g), mu(x)),
                          m.next(a, x),
                          sigma.product(static_cast<index_t>(s), nu(m.out(a, x))));
        if (auto w = visit(nid, id, x)) return {std::nullopt, std::move(w)};
      }
    }
    for (std::size_t g = 0; g < ng; ++g) {
      if (rep[g] == kNone) {
        throw VerificationError("quotient_construct: element " + std::to_string(g) +
                                " of the input semigroup is unreachable");
      }
      next_tab[start * ng + g] = static_cast<index_t>((rep[g] / ns) % na);
      out_tab[start * ng + g] = static_cast<index_t>(rep[g] % ns);
    }
  }

  SemigroupAutomatonSecond result(m.states, gamma, sigma, Table(na, ng, na, std::move(next_tab)),
                                  Table(na, ng, ns, std::move(out_tab)));
  if (!check_second_axioms(result)) {
    throw VerificationError("quotient_construct: result violates the second-type axioms");
  }
  return {std::move(result), std::nullopt};
}

}  // namespace algaut
