#pragma once

/**
 * @file io.hpp
 * @brief JSON file schemas and DOT export.
 *
 * Every file is one JSON object with a "type" discriminator:
 *
 *   first-pure, first-semigroup, second-pure, second-semigroup,
 *   generator-hom, cascade-triple, serial, mealy, embedding
 *
 * A FiniteSet is {"size": n, "labels": [...]} (a bare integer is accepted
 * on input). Two-argument tables such as "next" are arrays of rows indexed
 * by state. A semigroup is {"order", "product", "generators", "names"}.
 * All indices are zero based. Writers emit keys in sorted order.
 */

#include <fstream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "algaut/cascade.hpp"
#include "algaut/core.hpp"
#include "algaut/first_type.hpp"
#include "algaut/group.hpp"
#include "algaut/second_type.hpp"
#include "algaut/serial.hpp"
#include "json.hpp"

namespace algaut::io {

using nlohmann::json;

namespace detail {

inline json const& field(json const& j, char const* key, std::string const& path) {
  if (!j.is_object()) throw SchemaError(path + ": expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw SchemaError(path + ": missing field \"" + key + "\"");
  return *it;
}

inline std::string join(std::string const& path, char const* key) {
  return path.empty() ? std::string(key) : path + "." + key;
}

inline std::size_t read_count(json const& j, std::string const& path) {
  if (!j.is_number_integer() || j.get<long long>() < 1) {
    throw SchemaError(path + ": expected a positive integer");
  }
  return j.get<std::size_t>();
}

inline index_t read_index(json const& j, std::string const& path, std::size_t bound) {
  if (!j.is_number_integer()) throw SchemaError(path + ": expected an integer");
  auto v = j.get<long long>();
  if (v < 0 || static_cast<std::size_t>(v) >= bound) {
    throw SchemaError(path + ": value " + std::to_string(v) + " out of range [0," +
                      std::to_string(bound) + ")");
  }
  return static_cast<index_t>(v);
}

inline std::vector<index_t> read_indices(json const& j, std::string const& path,
                                         std::size_t len, std::size_t bound) {
  if (!j.is_array()) throw SchemaError(path + ": expected an array");
  if (j.size() != len) {
    throw SchemaError(path + ": expected " + std::to_string(len) + " entries, got " +
                      std::to_string(j.size()));
  }
  std::vector<index_t> v(len);
  for (std::size_t i = 0; i < len; ++i) v[i] = read_index(j[i], path + "[" + std::to_string(i) + "]", bound);
  return v;
}

}  // namespace detail

////////////////////////////////////////////////////////////////////////
// Basic values
////////////////////////////////////////////////////////////////////////

inline json to_json(FiniteSet const& s) {
  json j = {{"size", s.size()}};
  if (s.has_labels()) j["labels"] = s.labels();
  return j;
}

inline FiniteSet read_finite_set(json const& j, std::string const& path) {
  if (j.is_number_integer()) return FiniteSet(detail::read_count(j, path));
  auto n = detail::read_count(detail::field(j, "size", path), detail::join(path, "size"));
  auto it = j.find("labels");
  if (it == j.end()) return FiniteSet(n);
  if (!it->is_array() || it->size() != n) {
    throw SchemaError(detail::join(path, "labels") + ": expected " + std::to_string(n) + " labels");
  }
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) {
    if (!(*it)[i].is_string()) {
      throw SchemaError(detail::join(path, "labels") + "[" + std::to_string(i) + "]: expected a string");
    }
    labels.push_back((*it)[i].get<std::string>());
  }
  try {
    return FiniteSet(std::move(labels));
  } catch (RangeError const& e) {
    throw SchemaError(detail::join(path, "labels") + ": " + e.what());
  }
}

inline json to_json(Table const& t) {
  json rows = json::array();
  for (std::size_t r = 0; r < t.rows(); ++r) {
    auto row = t.row(r);
    rows.push_back(std::vector<index_t>(row.begin(), row.end()));
  }
  return rows;
}

inline Table read_table(json const& j, std::string const& path, std::size_t rows,
                        std::size_t cols, std::size_t codomain) {
  if (!j.is_array()) throw SchemaError(path + ": expected an array of rows");
  if (j.size() != rows) {
    throw SchemaError(path + ": expected " + std::to_string(rows) + " rows, got " +
                      std::to_string(j.size()));
  }
  std::vector<index_t> data;
  data.reserve(rows * cols);
  for (std::size_t r = 0; r < rows; ++r) {
    auto row = detail::read_indices(j[r], path + "[" + std::to_string(r) + "]", cols, codomain);
    data.insert(data.end(), row.begin(), row.end());
  }
  return Table(rows, cols, codomain, std::move(data));
}

inline json to_json(Transformation const& t) { return t.image(); }
inline json to_json(FunMap const& f) { return f.image(); }

inline json to_json(SemigroupTable const& s) {
  return {{"order", s.order()},
          {"product", to_json(s.table())},
          {"generators", s.generators()},
          {"names", s.names()}};
}

inline SemigroupTable read_semigroup(json const& j, std::string const& path) {
  auto n = detail::read_count(detail::field(j, "order", path), detail::join(path, "order"));
  auto product = read_table(detail::field(j, "product", path), detail::join(path, "product"), n, n, n);
  std::vector<index_t> gens;
  if (auto it = j.find("generators"); it != j.end()) {
    if (!it->is_array()) throw SchemaError(detail::join(path, "generators") + ": expected an array");
    gens = detail::read_indices(*it, detail::join(path, "generators"), it->size(), n);
  }
  std::vector<std::vector<index_t>> names;
  if (auto it = j.find("names"); it != j.end() && !it->empty()) {
    if (!it->is_array() || it->size() != n) {
      throw SchemaError(detail::join(path, "names") + ": expected " + std::to_string(n) + " names");
    }
    for (std::size_t i = 0; i < n; ++i) {
      auto p = detail::join(path, "names") + "[" + std::to_string(i) + "]";
      auto const& w = (*it)[i];
      if (!w.is_array() || w.empty()) throw SchemaError(p + ": expected a non-empty word");
      names.push_back(detail::read_indices(w, p, w.size(), std::max<std::size_t>(gens.size(), 1)));
    }
  }
  try {
    return SemigroupTable::from_table(std::move(product), std::move(gens), std::move(names));
  } catch (PreconditionError const& e) {
    throw SchemaError(path + ": " + e.what());
  } catch (RangeError const& e) {
    throw SchemaError(path + ": " + e.what());
  }
}

////////////////////////////////////////////////////////////////////////
// Automata
////////////////////////////////////////////////////////////////////////

inline json to_json(PureAutomatonFirst const& m) {
  return {{"type", "first-pure"},       {"states", to_json(m.states)},
          {"inputs", to_json(m.inputs)}, {"outputs", to_json(m.outputs)},
          {"next", to_json(m.next)},     {"out", to_json(m.out)}};
}

inline json to_json(SemigroupAutomatonFirst const& m) {
  return {{"type", "first-semigroup"},     {"states", to_json(m.states)},
          {"semigroup", to_json(m.gamma)}, {"outputs", to_json(m.outputs)},
          {"next", to_json(m.next)},       {"out", to_json(m.out)}};
}

inline json to_json(PureAutomatonSecond const& m) {
  return {{"type", "second-pure"},       {"states", to_json(m.states)},
          {"inputs", to_json(m.inputs)}, {"outputs", to_json(m.outputs)},
          {"next", to_json(m.next)},     {"out", to_json(m.out)}};
}

inline json to_json(SemigroupAutomatonSecond const& m) {
  return {{"type", "second-semigroup"},    {"states", to_json(m.states)},
          {"semigroup", to_json(m.gamma)}, {"sigma", to_json(m.sigma)},
          {"next", to_json(m.next)},       {"out", to_json(m.out)}};
}

inline json to_json(GeneratorHom const& h) {
  return {{"type", "generator-hom"},
          {"alphabet_size", h.alphabet_size()},
          {"target", to_json(h.target())},
          {"assignment", h.assignment()}};
}

inline json to_json(MealyElement const& e) {
  return {{"type", "mealy"},
          {"states", to_json(e.machine.states)},
          {"alphabet", to_json(e.machine.alphabet)},
          {"next", to_json(e.machine.next)},
          {"out", to_json(e.machine.out)},
          {"initial", e.initial}};
}

inline json to_json(SerialConnection const& s) {
  return {{"type", "serial"},
          {"first", to_json(s.first)},
          {"second", to_json(s.second)},
          {"alpha", to_json(s.alpha)}};
}

inline json to_json(CascadeTriplePure const& t) {
  return {{"type", "cascade-triple"},
          {"inputs", to_json(t.inputs)},
          {"alpha", to_json(t.alpha)},
          {"beta", t.beta.image()}};
}

inline json to_json(CascadeTripleSemigroup const& t) {
  return {{"type", "cascade-triple"},
          {"gamma", to_json(t.gamma)},
          {"alpha", to_json(t.alpha)},
          {"beta", t.beta.image()}};
}

inline json to_json(Embedding const& e) {
  return {{"type", "embedding"},
          {"map", e.map},
          {"injective", e.injective},
          {"image_order", e.image_order}};
}

inline std::string expect_type(json const& j, std::string const& path) {
  auto const& t = detail::field(j, "type", path);
  if (!t.is_string()) throw SchemaError(detail::join(path, "type") + ": expected a string");
  return t.get<std::string>();
}

inline void expect_type(json const& j, std::string const& path, char const* want) {
  auto t = expect_type(j, path);
  if (t != want) {
    throw SchemaError(detail::join(path, "type") + ": expected \"" + want + "\", got \"" + t + "\"");
  }
}

inline PureAutomatonFirst read_first_pure(json const& j, std::string const& path = "") {
  expect_type(j, path, "first-pure");
  auto a = read_finite_set(detail::field(j, "states", path), detail::join(path, "states"));
  auto x = read_finite_set(detail::field(j, "inputs", path), detail::join(path, "inputs"));
  auto b = read_finite_set(detail::field(j, "outputs", path), detail::join(path, "outputs"));
  auto next = read_table(detail::field(j, "next", path), detail::join(path, "next"), a.size(), x.size(), a.size());
  auto out = read_table(detail::field(j, "out", path), detail::join(path, "out"), a.size(), x.size(), b.size());
  return PureAutomatonFirst(std::move(a), std::move(x), std::move(b), std::move(next), std::move(out));
}

inline SemigroupAutomatonFirst read_first_semigroup(json const& j, std::string const& path = "") {
  expect_type(j, path, "first-semigroup");
  auto a = read_finite_set(detail::field(j, "states", path), detail::join(path, "states"));
  auto g = read_semigroup(detail::field(j, "semigroup", path), detail::join(path, "semigroup"));
  auto b = read_finite_set(detail::field(j, "outputs", path), detail::join(path, "outputs"));
  auto next = read_table(detail::field(j, "next", path), detail::join(path, "next"), a.size(), g.order(), a.size());
  auto out = read_table(detail::field(j, "out", path), detail::join(path, "out"), a.size(), g.order(), b.size());
  return SemigroupAutomatonFirst(std::move(a), std::move(g), std::move(b), std::move(next), std::move(out));
}

inline PureAutomatonSecond read_second_pure(json const& j, std::string const& path = "") {
  expect_type(j, path, "second-pure");
  auto a = read_finite_set(detail::field(j, "states", path), detail::join(path, "states"));
  auto x = read_finite_set(detail::field(j, "inputs", path), detail::join(path, "inputs"));
  auto y = read_finite_set(detail::field(j, "outputs", path), detail::join(path, "outputs"));
  auto next = read_table(detail::field(j, "next", path), detail::join(path, "next"), a.size(), x.size(), a.size());
  auto out = read_table(detail::field(j, "out", path), detail::join(path, "out"), a.size(), x.size(), y.size());
  return PureAutomatonSecond(std::move(a), std::move(x), std::move(y), std::move(next), std::move(out));
}

inline SemigroupAutomatonSecond read_second_semigroup(json const& j, std::string const& path = "") {
  expect_type(j, path, "second-semigroup");
  auto a = read_finite_set(detail::field(j, "states", path), detail::join(path, "states"));
  auto g = read_semigroup(detail::field(j, "semigroup", path), detail::join(path, "semigroup"));
  auto s = read_semigroup(detail::field(j, "sigma", path), detail::join(path, "sigma"));
  auto next = read_table(detail::field(j, "next", path), detail::join(path, "next"), a.size(), g.order(), a.size());
  auto out = read_table(detail::field(j, "out", path), detail::join(path, "out"), a.size(), g.order(), s.order());
  return SemigroupAutomatonSecond(std::move(a), std::move(g), std::move(s), std::move(next), std::move(out));
}

inline GeneratorHom read_generator_hom(json const& j, std::string const& path = "") {
  if (j.contains("type")) expect_type(j, path, "generator-hom");
  auto n = detail::read_count(detail::field(j, "alphabet_size", path), detail::join(path, "alphabet_size"));
  auto target = read_semigroup(detail::field(j, "target", path), detail::join(path, "target"));
  auto assignment = detail::read_indices(detail::field(j, "assignment", path),
                                         detail::join(path, "assignment"), n, target.order());
  try {
    return GeneratorHom(n, std::move(target), std::move(assignment));
  } catch (PreconditionError const& e) {
    throw SchemaError(path.empty() ? e.what() : path + ": " + e.what());
  }
}

inline MealyElement read_mealy(json const& j, std::string const& path = "") {
  expect_type(j, path, "mealy");
  auto q = read_finite_set(detail::field(j, "states", path), detail::join(path, "states"));
  auto x = read_finite_set(detail::field(j, "alphabet", path), detail::join(path, "alphabet"));
  auto next = read_table(detail::field(j, "next", path), detail::join(path, "next"), q.size(), x.size(), q.size());
  auto out = read_table(detail::field(j, "out", path), detail::join(path, "out"), q.size(), x.size(), x.size());
  index_t initial = 0;
  if (auto it = j.find("initial"); it != j.end()) {
    initial = detail::read_index(*it, detail::join(path, "initial"), q.size());
  }
  return MealyElement(MealyMachine(std::move(q), std::move(x), std::move(next), std::move(out)), initial);
}

inline SerialConnection read_serial(json const& j, std::string const& path = "") {
  expect_type(j, path, "serial");
  auto first = read_first_semigroup(detail::field(j, "first", path), detail::join(path, "first"));
  auto second = read_first_semigroup(detail::field(j, "second", path), detail::join(path, "second"));
  if (first.outputs.size() != 1 || second.outputs.size() != 1) {
    throw SchemaError(path + (path.empty() ? "" : ": ") +
                      "serial components must have exactly one output");
  }
  auto alpha = read_table(detail::field(j, "alpha", path), detail::join(path, "alpha"),
                          first.states.size(), first.gamma.order(), second.gamma.order());
  return SerialConnection(std::move(first), std::move(second), std::move(alpha));
}

// A cascade triple is only meaningful against its two components.
inline bool is_semigroup_triple(json const& j) { return j.contains("gamma"); }

inline CascadeTriplePure read_cascade_pure(json const& j, PureAutomatonFirst const& m1,
                                           PureAutomatonFirst const& m2,
                                           std::string const& path = "") {
  expect_type(j, path, "cascade-triple");
  auto const& beta_j = detail::field(j, "beta", path);
  if (!beta_j.is_array() || beta_j.empty()) {
    throw SchemaError(detail::join(path, "beta") + ": expected a non-empty array");
  }
  FiniteSet x = j.contains("inputs")
                    ? read_finite_set(j.at("inputs"), detail::join(path, "inputs"))
                    : FiniteSet(beta_j.size());
  auto alpha = read_table(detail::field(j, "alpha", path), detail::join(path, "alpha"),
                          m2.states.size(), x.size(), m1.inputs.size());
  auto beta = detail::read_indices(beta_j, detail::join(path, "beta"), x.size(), m2.inputs.size());
  return CascadeTriplePure(std::move(x), std::move(alpha), FunMap(m2.inputs.size(), std::move(beta)));
}

inline CascadeTripleSemigroup read_cascade_semigroup(json const& j,
                                                     SemigroupAutomatonFirst const& m1,
                                                     SemigroupAutomatonFirst const& m2,
                                                     std::string const& path = "") {
  expect_type(j, path, "cascade-triple");
  auto gamma = read_semigroup(detail::field(j, "gamma", path), detail::join(path, "gamma"));
  auto alpha = read_table(detail::field(j, "alpha", path), detail::join(path, "alpha"),
                          m2.states.size(), gamma.order(), m1.gamma.order());
  auto beta = detail::read_indices(detail::field(j, "beta", path), detail::join(path, "beta"),
                                   gamma.order(), m2.gamma.order());
  return CascadeTripleSemigroup(std::move(gamma), std::move(alpha),
                                FunMap(m2.gamma.order(), std::move(beta)));
}

////////////////////////////////////////////////////////////////////////
// Files and words
////////////////////////////////////////////////////////////////////////

inline json load_json(std::string const& file) {
  std::ifstream in(file);
  if (!in) throw SchemaError(file + ": cannot open");
  try {
    return json::parse(in);
  } catch (json::parse_error const& e) {
    throw SchemaError(file + ": " + e.what());
  }
}

inline void save_json(std::string const& file, json const& j) {
  std::ofstream out(file);
  if (!out) throw Error(file + ": cannot write");
  out << j.dump(2) << '\n';
}

// Tokens are letter labels. A token that is not itself a label is split
// into characters when every character is one ("011" over {0,1}).
inline Word parse_word(std::vector<std::string> const& tokens, FiniteSet const& alphabet) {
  std::vector<index_t> letters;
  for (auto const& tok : tokens) {
    if (auto i = alphabet.index_of(tok)) {
      letters.push_back(*i);
      continue;
    }
    std::vector<index_t> split;
    for (char c : tok) {
      auto i = alphabet.index_of(std::string(1, c));
      if (!i) throw SchemaError("word: \"" + tok + "\" is not a letter of the alphabet");
      split.push_back(*i);
    }
    letters.insert(letters.end(), split.begin(), split.end());
  }
  if (letters.empty()) throw SchemaError("word: empty (the free semigroup has no empty word)");
  return Word(alphabet.size(), std::move(letters));
}

inline std::string format_word(Word const& w, FiniteSet const& alphabet) {
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += ' ';
    s += alphabet.label(w[i]);
  }
  return s;
}

////////////////////////////////////////////////////////////////////////
// DOT
////////////////////////////////////////////////////////////////////////

namespace detail {

inline std::string quote(std::string const& s) {
  std::string r = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') r += '\\';
    r += c;
  }
  return r + "\"";
}

inline std::string element_label(SemigroupTable const&, index_t e) {
  return "g" + std::to_string(e);
}

// Generators only, when the semigroup has them.
inline std::vector<index_t> drawn_elements(SemigroupTable const& g) {
  std::vector<index_t> v = g.generators();
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  if (v.empty()) {
    for (index_t e = 0; e < g.order(); ++e) v.push_back(e);
  }
  return v;
}

template <typename Label>
std::string dot_graph(FiniteSet const& states, std::size_t letters, Table const& next,
                      Label&& label) {
  std::ostringstream os;
  os << "digraph automaton {\n  rankdir=LR;\n  node [shape=circle];\n";
  for (index_t q = 0; q < states.size(); ++q) {
    os << "  q" << q << " [label=" << quote(states.label(q)) << "];\n";
  }
  for (index_t q = 0; q < states.size(); ++q)
    for (index_t x = 0; x < letters; ++x) {
      if (auto l = label(q, x); !l.empty()) {
        os << "  q" << q << " -> q" << next(q, x) << " [label=" << quote(l) << "];\n";
      }
    }
  os << "}\n";
  return os.str();
}

}  // namespace detail

inline std::string to_dot(PureAutomatonFirst const& m) {
  return detail::dot_graph(m.states, m.inputs.size(), m.next, [&](index_t q, index_t x) {
    return m.inputs.label(x) + " / " + m.outputs.label(m.out(q, x));
  });
}

inline std::string to_dot(PureAutomatonSecond const& m) {
  return detail::dot_graph(m.states, m.inputs.size(), m.next, [&](index_t q, index_t x) {
    return m.inputs.label(x) + " / " + m.outputs.label(m.out(q, x));
  });
}

inline std::string to_dot(SemigroupAutomatonFirst const& m) {
  auto drawn = detail::drawn_elements(m.gamma);
  return detail::dot_graph(m.states, m.gamma.order(), m.next, [&](index_t q, index_t g) {
    if (!std::binary_search(drawn.begin(), drawn.end(), g)) return std::string();
    return detail::element_label(m.gamma, g) + " / " + m.outputs.label(m.out(q, g));
  });
}

inline std::string to_dot(SemigroupAutomatonSecond const& m) {
  auto drawn = detail::drawn_elements(m.gamma);
  return detail::dot_graph(m.states, m.gamma.order(), m.next, [&](index_t q, index_t g) {
    if (!std::binary_search(drawn.begin(), drawn.end(), g)) return std::string();
    return detail::element_label(m.gamma, g) + " / s" + std::to_string(m.out(q, g));
  });
}

inline std::string to_dot(MealyElement const& e) {
  auto const& m = e.machine;
  auto dot = detail::dot_graph(m.states, m.alphabet.size(), m.next, [&](index_t q, index_t x) {
    return m.alphabet.label(x) + "|" + m.alphabet.label(m.out(q, x));
  });
  // Mark the initial state.
  auto const node = "  q" + std::to_string(e.initial) + " [";
  dot.insert(dot.find(node) + node.size(), "shape=doublecircle, ");
  return dot;
}

}  // namespace algaut::io
