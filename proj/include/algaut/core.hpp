#pragma once

/**
 * @file core.hpp
 * @brief Finite carriers, transformations, the pair semigroup S_{A,B},
 *        free-semigroup words and finite semigroup tables.
 *
 * Everything acts on the right: a state `a` acted on by `s` then `t` is
 * written a∘(st) = (a∘s)∘t, so a product `st` applies `s` first.
 */

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "algaut/error.hpp"

namespace algaut {

using index_t = std::uint32_t;

inline constexpr std::size_t kDefaultCap = 1'000'000;
// A SemigroupTable stores order² entries; this bounds the order so that the
// table stays below ~64 MiB.
inline constexpr std::size_t kMaxTableOrder = 4096;

namespace detail {

inline void hash_combine(std::size_t& seed, std::size_t v) {
  seed ^= v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
}

inline std::size_t hash_range(std::span<const index_t> xs) {
  std::size_t seed = xs.size();
  for (auto x : xs) hash_combine(seed, x);
  return seed;
}

inline std::string range_message(std::string const& what, std::size_t value,
                                 std::size_t bound) {
  return what + ": value " + std::to_string(value) + " out of range [0," +
         std::to_string(bound) + ")";
}

}  // namespace detail

////////////////////////////////////////////////////////////////////////
// FiniteSet
////////////////////////////////////////////////////////////////////////

// The set {0, ..., size-1}, optionally with display labels.
class FiniteSet {
 public:
  FiniteSet() : size_(1) {}

  explicit FiniteSet(std::size_t size) : size_(size) {
    if (size == 0) throw RangeError("FiniteSet: size must be at least 1");
  }

  explicit FiniteSet(std::vector<std::string> labels)
      : size_(labels.size()), labels_(std::move(labels)) {
    if (size_ == 0) throw RangeError("FiniteSet: size must be at least 1");
    auto sorted = labels_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw RangeError("FiniteSet: labels must be distinct");
    }
  }

  std::size_t size() const noexcept { return size_; }
  bool has_labels() const noexcept { return !labels_.empty(); }
  std::vector<std::string> const& labels() const noexcept { return labels_; }

  std::string label(index_t i) const {
    check(i, "FiniteSet::label");
    return labels_.empty() ? std::to_string(i) : labels_[i];
  }

  std::optional<index_t> index_of(std::string const& label) const {
    if (labels_.empty()) {
      try {
        std::size_t pos = 0;
        auto v = std::stoul(label, &pos);
        if (pos == label.size() && v < size_) return static_cast<index_t>(v);
      } catch (std::exception const&) {
      }
      return std::nullopt;
    }
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) return std::nullopt;
    return static_cast<index_t>(it - labels_.begin());
  }

  void check(std::size_t i, std::string const& what) const {
    if (i >= size_) throw RangeError(detail::range_message(what, i, size_));
  }

  bool operator==(FiniteSet const&) const = default;

 private:
  std::size_t size_;
  std::vector<std::string> labels_;
};

// The product set A × B, encoded as a * |B| + b.
inline FiniteSet product_set(FiniteSet const& a, FiniteSet const& b) {
  if (!a.has_labels() && !b.has_labels()) return FiniteSet(a.size() * b.size());
  std::vector<std::string> labels;
  labels.reserve(a.size() * b.size());
  for (index_t i = 0; i < a.size(); ++i) {
    for (index_t j = 0; j < b.size(); ++j) {
      labels.push_back("(" + a.label(i) + "," + b.label(j) + ")");
    }
  }
  return FiniteSet(std::move(labels));
}

////////////////////////////////////////////////////////////////////////
// Table: a total map rows × cols → {0, ..., codomain-1}
////////////////////////////////////////////////////////////////////////

class Table {
 public:
  Table() = default;

  Table(std::size_t rows, std::size_t cols, std::size_t codomain,
        std::vector<index_t> data)
      : rows_(rows), cols_(cols), codomain_(codomain), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_) {
      throw RangeError("Table: expected " + std::to_string(rows_ * cols_) +
                       " entries, got " + std::to_string(data_.size()));
    }
    for (std::size_t k = 0; k < data_.size(); ++k) {
      if (data_[k] >= codomain_) {
        throw RangeError(detail::range_message(
            "Table[" + std::to_string(k / cols_) + "][" +
                std::to_string(k % cols_) + "]",
            data_[k], codomain_));
      }
    }
  }

  static Table filled(std::size_t rows, std::size_t cols, std::size_t codomain,
                      index_t value = 0) {
    return Table(rows, cols, codomain,
                 std::vector<index_t>(rows * cols, value));
  }

  // Builds a table from a callable f(row, col).
  template <typename F>
  static Table tabulate(std::size_t rows, std::size_t cols,
                        std::size_t codomain, F&& f) {
    std::vector<index_t> data(rows * cols);
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t c = 0; c < cols; ++c) {
        data[r * cols + c] = static_cast<index_t>(f(r, c));
      }
    }
    return Table(rows, cols, codomain, std::move(data));
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t codomain() const noexcept { return codomain_; }
  std::vector<index_t> const& data() const noexcept { return data_; }

  index_t operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  index_t at(std::size_t r, std::size_t c) const {
    if (r >= rows_) throw RangeError(detail::range_message("Table row", r, rows_));
    if (c >= cols_) throw RangeError(detail::range_message("Table column", c, cols_));
    return data_[r * cols_ + c];
  }

  void set(std::size_t r, std::size_t c, index_t v) {
    if (r >= rows_ || c >= cols_) throw RangeError("Table::set: cell out of range");
    if (v >= codomain_) throw RangeError(detail::range_message("Table::set", v, codomain_));
    data_[r * cols_ + c] = v;
  }

  std::span<const index_t> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }

  // Throws unless the shape is exactly rows × cols → codomain.
  void expect_shape(std::size_t rows, std::size_t cols, std::size_t codomain,
                    std::string const& what) const {
    if (rows_ != rows || cols_ != cols || codomain_ != codomain) {
      throw RangeError(what + ": expected a " + std::to_string(rows) + "x" +
                       std::to_string(cols) + " table into " +
                       std::to_string(codomain) + ", got " +
                       std::to_string(rows_) + "x" + std::to_string(cols_) +
                       " into " + std::to_string(codomain_));
    }
  }

  bool operator==(Table const&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t codomain_ = 1;
  std::vector<index_t> data_;
};

////////////////////////////////////////////////////////////////////////
// FunMap, Transformation
////////////////////////////////////////////////////////////////////////

// A map {0..domain-1} → {0..codomain-1}.
class FunMap {
 public:
  FunMap() = default;

  FunMap(std::size_t codomain_size, std::vector<index_t> image)
      : codomain_size_(codomain_size), image_(std::move(image)) {
    if (image_.empty()) throw RangeError("FunMap: empty domain");
    if (codomain_size_ == 0) throw RangeError("FunMap: empty codomain");
    for (std::size_t i = 0; i < image_.size(); ++i) {
      if (image_[i] >= codomain_size_) {
        throw RangeError(detail::range_message(
            "FunMap image[" + std::to_string(i) + "]", image_[i], codomain_size_));
      }
    }
  }

  static FunMap constant(std::size_t domain, std::size_t codomain, index_t v) {
    return FunMap(codomain, std::vector<index_t>(domain, v));
  }

  std::size_t domain_size() const noexcept { return image_.size(); }
  std::size_t codomain_size() const noexcept { return codomain_size_; }
  std::vector<index_t> const& image() const noexcept { return image_; }
  index_t operator()(index_t i) const { return image_[i]; }

  bool operator==(FunMap const&) const = default;

 private:
  std::size_t codomain_size_ = 1;
  std::vector<index_t> image_{0};
};

// A total self-map of {0..n-1}; an element of S_A.
class Transformation {
 public:
  Transformation() = default;

  explicit Transformation(std::vector<index_t> image) : image_(std::move(image)) {
    if (image_.empty()) throw RangeError("Transformation: empty domain");
    for (std::size_t i = 0; i < image_.size(); ++i) {
      if (image_[i] >= image_.size()) {
        throw RangeError(detail::range_message(
            "Transformation image[" + std::to_string(i) + "]", image_[i],
            image_.size()));
      }
    }
  }

  static Transformation identity(std::size_t n) {
    std::vector<index_t> img(n);
    for (std::size_t i = 0; i < n; ++i) img[i] = static_cast<index_t>(i);
    return Transformation(std::move(img));
  }

  static Transformation constant(std::size_t n, index_t v) {
    return Transformation(std::vector<index_t>(n, v));
  }

  std::size_t domain_size() const noexcept { return image_.size(); }
  std::vector<index_t> const& image() const noexcept { return image_; }
  index_t operator()(index_t i) const { return image_[i]; }

  bool operator==(Transformation const&) const = default;
  auto operator<=>(Transformation const&) const = default;

 private:
  std::vector<index_t> image_{0};
};

// s then t: result(i) = t(s(i)).
inline Transformation compose_transformations(Transformation const& s,
                                              Transformation const& t) {
  if (s.domain_size() != t.domain_size()) {
    throw RangeError("compose_transformations: domain sizes " +
                     std::to_string(s.domain_size()) + " and " +
                     std::to_string(t.domain_size()) + " differ");
  }
  std::vector<index_t> img(s.domain_size());
  for (index_t i = 0; i < img.size(); ++i) img[i] = t(s(i));
  return Transformation(std::move(img));
}

inline Transformation operator*(Transformation const& s, Transformation const& t) {
  return compose_transformations(s, t);
}

////////////////////////////////////////////////////////////////////////
// PairElement: S_{A,B} = S_A × Fun(A,B)
////////////////////////////////////////////////////////////////////////

struct PairElement {
  Transformation sigma;
  FunMap phi;

  PairElement() = default;
  PairElement(Transformation s, FunMap p) : sigma(std::move(s)), phi(std::move(p)) {
    if (sigma.domain_size() != phi.domain_size()) {
      throw RangeError("PairElement: sigma acts on " +
                       std::to_string(sigma.domain_size()) +
                       " states but phi has domain " +
                       std::to_string(phi.domain_size()));
    }
  }

  bool operator==(PairElement const&) const = default;
};

// (σ₁, φ₁)(σ₂, φ₂) = (σ₁σ₂, a ↦ φ₂(σ₁(a))).
inline PairElement multiply_pair(PairElement const& p, PairElement const& q) {
  if (p.sigma.domain_size() != q.sigma.domain_size() ||
      p.phi.codomain_size() != q.phi.codomain_size()) {
    throw RangeError("multiply_pair: carrier sizes differ");
  }
  std::vector<index_t> phi(p.sigma.domain_size());
  for (index_t a = 0; a < phi.size(); ++a) phi[a] = q.phi(p.sigma(a));
  return PairElement(compose_transformations(p.sigma, q.sigma),
                     FunMap(q.phi.codomain_size(), std::move(phi)));
}

////////////////////////////////////////////////////////////////////////
// Word: an element of the free semigroup F(X)
////////////////////////////////////////////////////////////////////////

class Word {
 public:
  Word(std::size_t alphabet_size, std::vector<index_t> letters)
      : alphabet_size_(alphabet_size), letters_(std::move(letters)) {
    if (alphabet_size_ == 0) throw RangeError("Word: empty alphabet");
    if (letters_.empty()) throw RangeError("Word: the free semigroup has no empty word");
    for (std::size_t i = 0; i < letters_.size(); ++i) {
      if (letters_[i] >= alphabet_size_) {
        throw RangeError(detail::range_message(
            "Word letter " + std::to_string(i), letters_[i], alphabet_size_));
      }
    }
  }

  std::size_t alphabet_size() const noexcept { return alphabet_size_; }
  std::size_t size() const noexcept { return letters_.size(); }
  std::vector<index_t> const& letters() const noexcept { return letters_; }
  index_t operator[](std::size_t i) const { return letters_[i]; }
  auto begin() const noexcept { return letters_.begin(); }
  auto end() const noexcept { return letters_.end(); }

  // Letters [from, from+count).
  Word sub(std::size_t from, std::size_t count) const {
    if (from + count > letters_.size()) throw RangeError("Word::sub out of range");
    return Word(alphabet_size_,
                std::vector<index_t>(letters_.begin() + from,
                                     letters_.begin() + from + count));
  }

  bool operator==(Word const&) const = default;
  // Shortlex.
  bool operator<(Word const& other) const {
    if (letters_.size() != other.letters_.size())
      return letters_.size() < other.letters_.size();
    return letters_ < other.letters_;
  }

 private:
  std::size_t alphabet_size_;
  std::vector<index_t> letters_;
};

inline Word concat(Word const& u, Word const& v) {
  if (u.alphabet_size() != v.alphabet_size()) {
    throw RangeError("concat: alphabets differ");
  }
  std::vector<index_t> l = u.letters();
  l.insert(l.end(), v.begin(), v.end());
  return Word(u.alphabet_size(), std::move(l));
}

// Calls f(Word) for every word with min_len ≤ |w| ≤ max_len, in shortlex order.
template <typename F>
void for_each_word(std::size_t alphabet_size, std::size_t min_len,
                   std::size_t max_len, F&& f) {
  if (alphabet_size == 0) throw RangeError("for_each_word: empty alphabet");
  for (std::size_t len = std::max<std::size_t>(min_len, 1); len <= max_len; ++len) {
    std::vector<index_t> letters(len, 0);
    while (true) {
      f(Word(alphabet_size, letters));
      std::size_t k = len;
      while (k > 0 && letters[k - 1] + 1 == alphabet_size) letters[--k] = 0;
      if (k == 0) break;
      ++letters[k - 1];
    }
  }
}

////////////////////////////////////////////////////////////////////////
// SemigroupTable
////////////////////////////////////////////////////////////////////////

// A finite semigroup given by its full multiplication table.
class SemigroupTable {
 public:
  SemigroupTable() : product_(Table::filled(1, 1, 1)) {}

  // Validates ranges and associativity. When generators are given, also checks
  // that they generate, and uses Light's test (O(n²·|gens|)) for
  // associativity; otherwise the check is the full O(n³) sweep.
  static SemigroupTable from_table(Table product, std::vector<index_t> generators = {},
                                   std::vector<std::vector<index_t>> names = {}) {
    auto n = product.rows();
    if (n == 0) throw RangeError("SemigroupTable: order must be at least 1");
    if (n > kMaxTableOrder) {
      throw CapExceeded("SemigroupTable: order " + std::to_string(n) +
                        " exceeds the table limit " + std::to_string(kMaxTableOrder));
    }
    product.expect_shape(n, n, n, "SemigroupTable product");
    SemigroupTable s(std::move(product), std::move(generators), std::move(names));
    s.validate();
    return s;
  }

  // The cyclic group Z_n written multiplicatively, generated by 1.
  static SemigroupTable cyclic_group(std::size_t n) {
    auto t = Table::tabulate(n, n, n, [n](auto i, auto j) { return (i + j) % n; });
    return from_table(std::move(t), {n == 1 ? 0u : 1u});
  }

  std::size_t order() const noexcept { return product_.rows(); }
  index_t product(index_t x, index_t y) const { return product_(x, y); }
  Table const& table() const noexcept { return product_; }
  std::vector<index_t> const& generators() const noexcept { return generators_; }
  std::vector<std::vector<index_t>> const& names() const noexcept { return names_; }

  // Product of a non-empty sequence of elements, left to right.
  index_t product_of(std::span<const index_t> xs) const {
    if (xs.empty()) throw RangeError("product_of: empty sequence");
    index_t acc = xs[0];
    for (std::size_t i = 1; i < xs.size(); ++i) acc = product(acc, xs[i]);
    return acc;
  }

  // Image of a word over the generator alphabet.
  index_t evaluate(Word const& w) const {
    if (w.alphabet_size() != generators_.size()) {
      throw RangeError("SemigroupTable::evaluate: word alphabet has " +
                       std::to_string(w.alphabet_size()) + " letters but " +
                       std::to_string(generators_.size()) + " generators");
    }
    index_t acc = generators_[w[0]];
    for (std::size_t i = 1; i < w.size(); ++i) acc = product(acc, generators_[w[i]]);
    return acc;
  }

  bool is_associative() const {
    auto n = order();
    for (index_t x = 0; x < n; ++x)
      for (index_t y = 0; y < n; ++y) {
        auto xy = product(x, y);
        for (index_t z = 0; z < n; ++z)
          if (product(xy, z) != product(x, product(y, z))) return false;
      }
    return true;
  }

  // Sorted elements of the subsemigroup generated by `gens`.
  std::vector<index_t> generated_by(std::span<const index_t> gens) const {
    std::vector<char> seen(order(), 0);
    std::vector<index_t> out;
    for (auto g : gens) {
      if (g >= order()) throw RangeError(detail::range_message("generator", g, order()));
      if (!seen[g]) {
        seen[g] = 1;
        out.push_back(g);
      }
    }
    for (std::size_t k = 0; k < out.size(); ++k) {
      for (auto g : gens) {
        auto p = product(out[k], g);
        if (!seen[p]) {
          seen[p] = 1;
          out.push_back(p);
        }
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  bool operator==(SemigroupTable const&) const = default;

  // Skips validation; for constructions whose associativity follows from
  // already-checked inputs.
  static SemigroupTable trusted(Table product, std::vector<index_t> generators = {},
                                std::vector<std::vector<index_t>> names = {}) {
    return SemigroupTable(std::move(product), std::move(generators), std::move(names));
  }

 private:
  SemigroupTable(Table product, std::vector<index_t> generators,
                 std::vector<std::vector<index_t>> names)
      : product_(std::move(product)),
        generators_(std::move(generators)),
        names_(std::move(names)) {}

  void validate() const {
    auto n = order();
    for (auto g : generators_) {
      if (g >= n) throw RangeError(detail::range_message("SemigroupTable generator", g, n));
    }
    if (!names_.empty()) {
      if (names_.size() != n) throw RangeError("SemigroupTable: names count differs from order");
      for (std::size_t i = 0; i < n; ++i) {
        if (names_[i].empty()) throw RangeError("SemigroupTable: empty element name");
        for (auto l : names_[i]) {
          if (l >= generators_.size()) {
            throw RangeError("SemigroupTable: name of element " + std::to_string(i) +
                             " uses letter " + std::to_string(l) +
                             " but there are only " +
                             std::to_string(generators_.size()) + " generators");
          }
        }
      }
    }
    if (generators_.empty()) {
      if (!is_associative()) throw PreconditionError("SemigroupTable: product is not associative");
      return;
    }
    if (generated_by(generators_).size() != n) {
      throw PreconditionError("SemigroupTable: generators do not generate the table");
    }
    // Light's test: with G generating, associativity reduces to
    // (x·g)·y = x·(g·y) for g in G.
    for (auto g : generators_)
      for (index_t x = 0; x < n; ++x) {
        auto xg = product(x, g);
        for (index_t y = 0; y < n; ++y)
          if (product(xg, y) != product(x, product(g, y)))
            throw PreconditionError("SemigroupTable: product is not associative");
      }
    for (std::size_t i = 0; i < names_.size(); ++i) {
      if (evaluate(Word(generators_.size(), names_[i])) != i) {
        throw PreconditionError("SemigroupTable: name of element " + std::to_string(i) +
                                " evaluates elsewhere");
      }
    }
  }

  Table product_;
  std::vector<index_t> generators_;
  std::vector<std::vector<index_t>> names_;
};

////////////////////////////////////////////////////////////////////////
// Closure from generators
////////////////////////////////////////////////////////////////////////

template <typename T>
struct Closure {
  SemigroupTable table;
  std::vector<T> elements;  // elements[i] is table element i
};

// Breadth-first closure of `gens` under `mul`. Element i is named by the
// shortlex-least generator word evaluating to it; the table is filled by
// direct multiplication and then put through Light's associativity test.
template <typename T, typename Mul, typename Hash = std::hash<T>>
Closure<T> generate_semigroup(std::vector<T> const& gens, Mul&& mul,
                              std::size_t cap = kDefaultCap) {
  if (gens.empty()) throw RangeError("generate_semigroup: no generators");
  std::unordered_map<T, index_t, Hash> index;
  std::vector<T> elements;
  std::vector<std::vector<index_t>> names;
  std::vector<index_t> gen_index;

  auto add = [&](T&& x, std::vector<index_t> name) -> index_t {
    auto [it, fresh] = index.try_emplace(x, static_cast<index_t>(elements.size()));
    if (fresh) {
      if (elements.size() >= cap) {
        throw CapExceeded("generate_semigroup: closure exceeds cap of " +
                          std::to_string(cap) + " elements");
      }
      elements.push_back(std::move(x));
      names.push_back(std::move(name));
    }
    return it->second;
  };

  for (index_t g = 0; g < gens.size(); ++g) {
    gen_index.push_back(add(T(gens[g]), {g}));
  }
  for (std::size_t k = 0; k < elements.size(); ++k) {
    for (index_t g = 0; g < gens.size(); ++g) {
      auto name = names[k];
      name.push_back(g);
      add(mul(elements[k], gens[g]), std::move(name));
    }
  }

  auto n = elements.size();
  if (n > kMaxTableOrder) {
    throw CapExceeded("generate_semigroup: order " + std::to_string(n) +
                      " exceeds the table limit " + std::to_string(kMaxTableOrder));
  }
  std::vector<index_t> data(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      auto it = index.find(mul(elements[i], elements[j]));
      if (it == index.end()) {
        throw VerificationError("generate_semigroup: product leaves the closure; "
                                "the multiplication is not associative");
      }
      data[i * n + j] = it->second;
    }
  }
  try {
    auto table = SemigroupTable::from_table(Table(n, n, n, std::move(data)),
                                            std::move(gen_index), std::move(names));
    return {std::move(table), std::move(elements)};
  } catch (PreconditionError const& e) {
    throw VerificationError(std::string("generate_semigroup: ") + e.what());
  }
}

////////////////////////////////////////////////////////////////////////
// Kernel classes of F(X) → S
////////////////////////////////////////////////////////////////////////

// Partitions all words of length ≤ max_len by their image under `eval`.
// Classes are listed by first member in shortlex order; members are in
// shortlex order.
template <typename Eval>
std::vector<std::vector<Word>> kernel_classes(std::size_t alphabet_size,
                                              std::size_t max_len, Eval&& eval) {
  std::unordered_map<index_t, std::size_t> class_of;
  std::vector<std::vector<Word>> classes;
  for_each_word(alphabet_size, 1, max_len, [&](Word const& w) {
    auto img = static_cast<index_t>(eval(w));
    auto [it, fresh] = class_of.try_emplace(img, classes.size());
    if (fresh) classes.emplace_back();
    classes[it->second].push_back(w);
  });
  return classes;
}

inline std::vector<std::vector<Word>> kernel_classes(SemigroupTable const& s,
                                                     std::size_t max_len) {
  return kernel_classes(s.generators().size(), max_len,
                        [&s](Word const& w) { return s.evaluate(w); });
}

}  // namespace algaut

template <>
struct std::hash<algaut::Transformation> {
  std::size_t operator()(algaut::Transformation const& t) const noexcept {
    return algaut::detail::hash_range(t.image());
  }
};

template <>
struct std::hash<algaut::FunMap> {
  std::size_t operator()(algaut::FunMap const& f) const noexcept {
    auto h = algaut::detail::hash_range(f.image());
    algaut::detail::hash_combine(h, f.codomain_size());
    return h;
  }
};

template <>
struct std::hash<algaut::PairElement> {
  std::size_t operator()(algaut::PairElement const& p) const noexcept {
    auto h = std::hash<algaut::Transformation>{}(p.sigma);
    algaut::detail::hash_combine(h, std::hash<algaut::FunMap>{}(p.phi));
    return h;
  }
};
