// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Every check compares library output against an
// independent computation from oracles.hpp or inline brute force.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <sstream>
#include <string>

#include "algaut/cli.hpp"
#include "algaut/machines.hpp"
#include "oracles.hpp"

using namespace algaut;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

int failures = 0;

void criterion(char const* name, double limit_s, std::function<Outcome()> body) {
  auto t0 = Clock::now();
  Outcome o;
  try {
    o = body();
  } catch (std::exception const& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  if (limit_s > 0 && secs > limit_s) {
    o.ok = false;
    o.detail += "; over the " + std::to_string(static_cast<int>(limit_s)) + " s budget";
  }
  if (!o.ok) ++failures;
  std::printf("%s  %-28s %s (%.2f s)\n", o.ok ? "PASS" : "FAIL", name, o.detail.c_str(), secs);
  std::fflush(stdout);
}

std::string count(std::size_t n, char const* what) { return std::to_string(n) + " " + what; }

// All tables rows × cols → codomain, as flat vectors.
template <typename F>
void for_each_table(std::size_t rows, std::size_t cols, std::size_t codomain, F&& f) {
  std::size_t cells = rows * cols, total = 1;
  for (std::size_t i = 0; i < cells; ++i) total *= codomain;
  std::vector<index_t> t(cells);
  for (std::size_t code = 0; code < total; ++code) {
    auto c = code;
    for (auto& v : t) {
      v = static_cast<index_t>(c % codomain);
      c /= codomain;
    }
    f(Table(rows, cols, codomain, t));
  }
}

////////////////////////////////////////////////////////////////////////

Outcome first_type_axioms() {
  std::size_t exhaustive = 0, random = 0, bad = 0;
  auto check = [&](PureAutomatonFirst const& m) {
    auto s = semigroupify(m, 10000);
    if (!check_first_axioms(s)) ++bad;
    // Evaluation compatibility on words up to length 3 by direct runs.
    for (auto const& w : oracle::all_words(2, 3)) {
      auto g = s.gamma.evaluate(Word(2, w));
      for (index_t a = 0; a < 2; ++a) {
        auto r = oracle::run(m.next, m.out, a, w);
        if (r.state != s.next(a, g) || r.outputs.back() != s.out(a, g)) ++bad;
      }
    }
  };
  for_each_table(2, 2, 2, [&](Table const& next) {
    for_each_table(2, 2, 2, [&](Table const& out) {
      check(PureAutomatonFirst(FiniteSet(2), FiniteSet(2), FiniteSet(2), next, out));
      ++exhaustive;
    });
  });
  oracle::Rng rng(101);
  for (; random < 10000; ++random) check(oracle::random_first_pure(rng, 2, 2, 2));
  return {bad == 0 && exhaustive == 256, count(exhaustive, "exhaustive") + " + " + count(random, "random") +
                                              " instances, " + count(bad, "violations")};
}

Outcome pair_semigroup_associativity() {
  // All 27·8 elements of S_{A,B}, |A| = 3, |B| = 2.
  std::vector<PairElement> all;
  for (std::size_t s = 0; s < 27; ++s)
    for (std::size_t f = 0; f < 8; ++f) {
      all.emplace_back(Transformation({index_t(s % 3), index_t(s / 3 % 3), index_t(s / 9)}),
                       FunMap(2, {index_t(f & 1), index_t(f >> 1 & 1), index_t(f >> 2)}));
    }
  auto idx = [](PairElement const& p) {
    auto const& s = p.sigma.image();
    auto const& f = p.phi.image();
    return (s[0] + 3 * s[1] + 9 * s[2]) * 8 + (f[0] + 2 * f[1] + 4 * f[2]);
  };
  std::size_t const n = all.size();
  std::vector<std::size_t> table(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) table[i * n + j] = idx(multiply_pair(all[i], all[j]));
  std::size_t bad = 0, triples = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k, ++triples)
        bad += table[table[i * n + j] * n + k] != table[i * n + table[j * n + k]];
  return {bad == 0 && n == 216, count(triples, "triples") + ", " + count(bad, "violations")};
}

Outcome second_type_cocycle() {
  oracle::Rng rng(202);
  std::size_t machines = 0, bad = 0, splits = 0;
  for (; machines < 1000; ++machines) {
    auto na = 1 + oracle::pick(rng, 3), nx = 1 + oracle::pick(rng, 2), ny = 1 + oracle::pick(rng, 2);
    auto m = oracle::random_second_pure(rng, na, nx, ny);
    for (auto const& w : oracle::all_words(nx, 6))
      for (index_t a = 0; a < na; ++a) {
        Word u(nx, w);
        auto whole = free_extension_out(m, a, u);
        if (whole.letters() != oracle::run(m.next, m.out, a, w).outputs) ++bad;
        for (std::size_t k = 1; k < u.size(); ++k, ++splits) {
          auto u1 = u.sub(0, k), u2 = u.sub(k, u.size() - k);
          auto mid = oracle::run(m.next, m.out, a, u1.letters()).state;
          if (concat(free_extension_out(m, a, u1), free_extension_out(m, mid, u2)) != whole) ++bad;
        }
      }
  }
  return {bad == 0, count(machines, "machines") + ", " + count(splits, "splits") + ", " + count(bad, "violations")};
}

Outcome quotient_oracle() {
  oracle::Rng rng(303);
  std::size_t instances = 0, defined = 0, disagree = 0;
  for (; instances < 1000; ++instances) {
    auto inst = oracle::random_quotient_instance(rng);
    if (inst.mu.target().order() > 4 || inst.nu.target().order() > 4) return {false, "generator exceeded |Γ|,|Σ| ≤ 4"};
    auto q = quotient_construct(inst.machine, inst.mu, inst.nu);
    bool brute = oracle::quotient_compatible_to(inst.machine, inst.mu, inst.nu, 6);
    if (q.well_defined() != brute) ++disagree;
    defined += q.well_defined();
  }
  return {disagree == 0, count(instances, "instances") + " (" + std::to_string(defined) + " well defined), " +
                             count(disagree, "disagreements")};
}

Outcome wreath_products() {
  auto semis = oracle::small_semigroups(3);
  std::size_t products = 0, bad_order = 0, bad_assoc = 0, bad_axioms = 0;
  for (auto const& g1 : semis)
    for (auto const& g2 : semis)
      for (std::size_t a2 = 1; a2 <= 2; ++a2)
        for (auto const& act : oracle::all_actions(g2, a2)) {
          auto w = wreath_semigroup(g1, a2, act, g2);
          ++products;
          std::size_t expect = g2.order();
          for (std::size_t i = 0; i < a2; ++i) expect *= g1.order();
          bad_order += w.table.order() != expect;
          bad_assoc += !oracle::associative(w.table.order(),
                                            [&](index_t x, index_t y) { return w.table.product(x, y); });
          // Automaton over the same data: (A₁, Γ₁) with Γ₁ acting trivially.
          auto m1 = oracle::action_automaton(g1, Table::filled(1, g1.order(), 1));
          auto m2 = oracle::action_automaton(g2, act);
          auto wa = wreath_automaton(m1, m2);
          bad_axioms += !check_first_axioms(wa.automaton) || !check_cascade_triple(m1, m2, wa.triple);
        }
  // Non-trivial first components at |Γ₁|,|Γ₂| ≤ 2.
  auto comps = oracle::all_action_automata(2, 2);
  for (auto const& m1 : comps)
    for (auto const& m2 : comps) {
      auto wa = wreath_automaton(m1, m2);
      bad_axioms += !check_first_axioms(wa.automaton);
    }
  return {bad_order + bad_assoc + bad_axioms == 0,
          count(products, "products") + "; order/assoc/axiom failures " + std::to_string(bad_order) + "/" +
              std::to_string(bad_assoc) + "/" + std::to_string(bad_axioms)};
}

Outcome embedding() {
  oracle::Rng rng(404);
  std::size_t triples = 0, bad = 0, non_injective = 0;
  while (triples < 1000) {
    auto m1 = oracle::random_semigroup_first(rng, 2, 3);
    auto m2 = oracle::random_semigroup_first(rng, 2, 3);
    auto t = oracle::random_valid_triple(rng, m1, m2, 64);
    if (!t) continue;
    ++triples;
    if (!check_cascade_triple(m1, m2, *t)) {
      ++bad;
      continue;
    }
    auto w = wreath_automaton(m1, m2);
    auto e = embed_into_wreath(m1, m2, *t, w);
    non_injective += !e.injective;
    auto const& el = w.product.elements;
    for (index_t x = 0; x < t->gamma.order(); ++x) {
      // Diagram: α'(a₂, f(γ)) = α(a₂, γ) and β'(f(γ)) = β(γ).
      auto const& img = el[e.map[x]];
      if (img.gamma2 != t->beta(x)) ++bad;
      for (index_t a = 0; a < m2.states.size(); ++a) bad += img.bar[a] != t->alpha(a, x);
      // Uniqueness: exactly one wreath element satisfies the diagram.
      std::size_t fits = 0;
      for (auto const& cand : el) {
        bool ok = cand.gamma2 == t->beta(x);
        for (index_t a = 0; ok && a < m2.states.size(); ++a) ok = cand.bar[a] == t->alpha(a, x);
        fits += ok;
      }
      bad += fits != 1;
      // Homomorphism, products recomputed from the wreath formula.
      for (index_t y = 0; y < t->gamma.order(); ++y) {
        auto const& p = el[e.map[x]];
        auto const& q = el[e.map[y]];
        WreathElement r{std::vector<index_t>(p.bar.size()), m2.gamma.product(p.gamma2, q.gamma2)};
        for (index_t a = 0; a < p.bar.size(); ++a) r.bar[a] = m1.gamma.product(p.bar[a], q.bar[m2.next(a, p.gamma2)]);
        bad += el[e.map[t->gamma.product(x, y)]] != r;
      }
    }
  }
  return {bad == 0, count(triples, "triples") + " (" + std::to_string(non_injective) + " non-injective), " +
                        count(bad, "violations")};
}

Outcome serial_equivalence() {
  auto semis = oracle::small_semigroups(3);
  std::size_t instances = 0, valid = 0, mismatch = 0, action_bad = 0;
  for (auto const& g : semis)
    for (std::size_t na = 1; na <= 2; ++na)
      for (auto const& act : oracle::all_actions(g, na))
        for (auto const& sig : semis) {
          // B: every action of Σ on at most two points, cycled across α.
          std::vector<Table> bacts;
          for (std::size_t nb = 1; nb <= 2; ++nb)
            for (auto const& b : oracle::all_actions(sig, nb)) bacts.push_back(b);
          std::size_t turn = 0;
          for_each_table(na, g.order(), sig.order(), [&](Table const& alpha) {
            auto const& bact = bacts[turn++ % bacts.size()];
            SerialConnection s(semiautomaton(FiniteSet(na), g, act), semiautomaton(FiniteSet(bact.rows()), sig, bact),
                               alpha);
            ++instances;
            bool serial = check_serial(s).ok();
            bool second = check_second_axioms(derive_second_type(s)).ok();
            // Independent statement of the serial law.
            bool brute = true;
            for (index_t a = 0; brute && a < na; ++a)
              for (index_t x = 0; brute && x < g.order(); ++x)
                for (index_t y = 0; brute && y < g.order(); ++y)
                  brute = alpha(a, g.product(x, y)) == sig.product(alpha(a, x), alpha(act(a, x), y));
            mismatch += serial != second || serial != brute;
            if (!serial) return;
            ++valid;
            for (index_t a = 0; a < na; ++a)
              for (index_t b = 0; b < bact.rows(); ++b)
                for (index_t x = 0; x < g.order(); ++x)
                  for (index_t y = 0; y < g.order(); ++y) {
                    auto mid = serial_action(s, a, b, x);
                    action_bad += serial_action(s, a, b, g.product(x, y)) != serial_action(s, mid.a, mid.b, y);
                  }
          });
        }
  return {mismatch + action_bad == 0, count(instances, "instances") + " (" + std::to_string(valid) + " serial), " +
                                          count(mismatch, "mismatches") + ", " +
                                          count(action_bad, "action-law failures")};
}

Outcome bijective_extension() {
  std::size_t machines = 0, bad = 0;
  for (std::size_t nq = 1; nq <= 3; ++nq)
    for (std::size_t nx = 1; nx <= 2; ++nx) {
      std::size_t perms = nx == 1 ? 1 : 2, choices = 1;
      for (std::size_t q = 0; q < nq; ++q) choices *= perms;
      auto words = oracle::all_words(nx, 6);
      for_each_table(nq, nx, nq, [&](Table const& next) {
        for (std::size_t c = 0; c < choices; ++c) {
          auto out = Table::tabulate(nq, nx, nx, [&](auto q, auto x) {
            bool flip = (c >> q) & 1;
            return flip ? nx - 1 - x : x;
          });
          PureAutomatonSecond m{FiniteSet(nq), FiniteSet(nx), FiniteSet(nx), next, out};
          ++machines;
          for (index_t a = 0; a < nq; ++a) {
            AutomatonMapping f(m, a);
            for (auto const& w : words) {
              Word u(nx, w);
              auto img = apply_mapping(f, u);
              bad += img.letters() != oracle::run(next, out, a, w).outputs;
              bad += decode_mapping(f, img) != u;
              bad += apply_mapping(f, decode_mapping(f, u)) != u;
            }
          }
        }
      });
    }
  return {bad == 0, count(machines, "machines") + ", " + count(bad, "violations")};
}

Outcome group_fixtures() {
  using machines::grigorchuk;
  using machines::odometer;
  std::size_t bad = 0;
  std::string notes;
  // Odometer: e^k is +k on every level, and no power up to 64 is trivial.
  auto one = identity_element(FiniteSet({"0", "1"}));
  auto power = odometer();
  for (std::uint64_t k = 1; k <= 64; ++k) {
    if (element_equal(power, one)) ++bad;
    for (std::size_t n = 1; n <= 10; ++n) {
      for (std::uint64_t v = 0; v < (1u << n); v += (n > 6 ? 5 : 1)) {
        auto img = element_apply(power, Word(2, oracle::binary_word(v, n)));
        bad += oracle::binary_value(img.letters()) != (v + k) % (1u << n);
      }
    }
    power = minimize(element_compose(power, odometer()));
  }
  auto order = element_order_bounded(odometer(), 64, 4096);
  bad += order.order.has_value();
  // Grigorchuk relations.
  for (char g : {'a', 'b', 'c', 'd'}) {
    auto sq = element_compose(grigorchuk(g), grigorchuk(g));
    bad += !element_equal(sq, one) || !oracle::agree_to_depth(sq, one, 12);
  }
  auto bc = element_compose(grigorchuk('b'), grigorchuk('c'));
  bad += !element_equal(bc, grigorchuk('d')) || !oracle::agree_to_depth(bc, grigorchuk('d'), 12);
  return {bad == 0, "odometer k ≤ 64 on levels ≤ 10, a²=b²=c²=d²=1, bc=d to depth 12; " + count(bad, "violations")};
}

Outcome equality_oracle() {
  oracle::Rng rng(505);
  std::size_t pairs = 0, equal = 0, disagree = 0;
  for (; pairs < 1000; ++pairs) {
    auto e1 = oracle::random_invertible(rng, 1 + oracle::pick(rng, 4), 2);
    auto e2 = e1;
    switch (pairs % 4) {
      case 0:
        e2 = oracle::random_invertible(rng, 1 + oracle::pick(rng, 4), 2);
        break;
      case 1:
        e2 = minimize(e1);
        break;
      case 2: {
        // One edited transition: equal only if the edit is invisible.
        auto q = oracle::pick(rng, e2.state_count());
        e2.machine.next.set(q, oracle::pick(rng, 2), oracle::pick(rng, e2.state_count()));
        break;
      }
      default:
        e2 = element_compose(element_compose(e1, oracle::random_invertible(rng, 2, 2)), identity_element(FiniteSet(2)));
    }
    bool eq = element_equal(e1, e2);
    equal += eq;
    disagree += eq != oracle::agree_to_depth(e1, e2, 12);
  }
  return {disagree == 0, count(pairs, "pairs") + " (" + std::to_string(equal) + " equal), " +
                             count(disagree, "disagreements")};
}

Outcome cli_contract() {
  namespace fs = std::filesystem;
  auto fx = [](std::string const& n) { return std::string(ALGAUT_FIXTURES_DIR) + "/" + n; };
  auto tmpdir = fs::temp_directory_path() / "algaut-acceptance";
  fs::create_directories(tmpdir);
  auto tmp = [&](std::string const& n) { return (tmpdir / n).string(); };
  auto run = [](std::vector<std::string> args) {
    std::ostringstream out, err;
    return cli::run(std::move(args), out, err);
  };
  struct Case {
    std::vector<std::string> args;
    int code;
  };
  auto sw = fx("swap-semigroup.json");
  std::vector<Case> cases{
      {{"check", fx("trivial-first.json")}, 0},
      {{"check", fx("swap-first.json"), "--max-len", "5"}, 0},
      {{"check", sw}, 0},
      {{"check", fx("id-swap-first.json")}, 0},
      {{"check", fx("corrupted-first-semigroup.json")}, 1},
      {{"check", fx("bad-out-of-range.json")}, 2},
      {{"check", fx("twin-second.json"), "--max-len", "4"}, 0},
      {{"check", fx("flat-second.json")}, 0},
      {{"check", fx("flat-second-semigroup.json")}, 0},
      {{"check", fx("flat-serial.json")}, 0},
      {{"check", fx("mu-collapse.json")}, 0},
      {{"check", fx("mu-swap.json")}, 0},
      {{"check", fx("nu-injective.json")}, 0},
      {{"check", fx("nu-trivial.json")}, 0},
      {{"check", fx("cascade-triple-z2.json"), "--components", sw, sw}, 0},
      {{"check", fx("cascade-triple-broken.json"), "--components", sw, sw}, 1},
      {{"check", fx("cascade-triple-pure.json"), "--components", fx("id-swap-first.json"), fx("swap-first.json")}, 0},
      {{"check", fx("odometer.json")}, 0},
      {{"check", fx("identity.json")}, 0},
      {{"check", fx("non-invertible.json")}, 0},
      {{"construct", "quotient", fx("twin-second.json"), fx("mu-collapse.json"), fx("nu-injective.json")}, 1},
      {{"construct", "wreath", sw, sw, "--cap", "4"}, 2},
      {{"construct", "embed", sw, sw, fx("cascade-triple-broken.json")}, 1},
      {{"group", "apply", fx("odometer.json"), "0", "0"}, 0},
      {{"group", "equal", fx("identity.json"), fx("identity.json")}, 0},
      {{"group", "equal", fx("odometer.json"), fx("identity.json")}, 1},
      {{"group", "order", fx("grigorchuk-a.json")}, 0},
      {{"group", "invert", fx("non-invertible.json")}, 2},
      {{"nonsense"}, 2},
  };
  for (char g : {'a', 'b', 'c', 'd'}) cases.push_back({{"check", fx(std::string("grigorchuk-") + g + ".json")}, 0});
  std::size_t bad = 0;
  std::string first_bad;
  for (auto const& c : cases) {
    if (run(c.args) != c.code) {
      ++bad;
      if (first_bad.empty()) first_bad = c.args[0] + " " + (c.args.size() > 1 ? c.args[1] : "");
    }
  }
  // Constructions: written files re-check and parse back to the in-memory object.
  std::size_t trips = 0;
  auto trip = [&](std::vector<std::string> args, std::string const& out, auto&& same) {
    ++trips;
    args.push_back("-o");
    args.push_back(out);
    if (run(args) != 0 || run({"check", out}) != 0 || !same(io::load_json(out))) {
      ++bad;
      if (first_bad.empty()) first_bad = "construct " + args[1];
    }
  };
  auto swap_pure = io::read_first_pure(io::load_json(fx("swap-first.json")));
  auto sws = io::read_first_semigroup(io::load_json(sw));
  trip({"construct", "semigroupify", fx("swap-first.json")}, tmp("s.json"),
       [&](io::json const& j) { return io::read_first_semigroup(j) == semigroupify(swap_pure); });
  trip({"construct", "wreath", sw, sw}, tmp("w.json"),
       [&](io::json const& j) { return io::read_first_semigroup(j) == wreath_automaton(sws, sws).automaton; });
  trip({"construct", "cascade", fx("id-swap-first.json"), fx("swap-first.json"), fx("cascade-triple-pure.json")},
       tmp("c.json"), [&](io::json const& j) {
         auto m1 = io::read_first_pure(io::load_json(fx("id-swap-first.json")));
         auto t = io::read_cascade_pure(io::load_json(fx("cascade-triple-pure.json")), m1, swap_pure);
         return io::read_first_pure(j) == cascade_pure(m1, swap_pure, t);
       });
  auto flat2 = io::read_second_semigroup(io::load_json(fx("flat-second-semigroup.json")));
  trip({"construct", "quotient", fx("flat-second.json"), fx("mu-swap.json"), fx("nu-trivial.json")}, tmp("q.json"),
       [&](io::json const& j) { return io::read_second_semigroup(j) == flat2; });
  trip({"construct", "serial", fx("flat-second-semigroup.json")}, tmp("se.json"),
       [&](io::json const& j) { return io::read_serial(j) == serial_from_second(flat2); });
  trip({"construct", "derive-second", fx("flat-serial.json")}, tmp("d.json"),
       [&](io::json const& j) { return io::read_second_semigroup(j) == flat2; });
  trip({"group", "compose", fx("grigorchuk-b.json"), fx("grigorchuk-c.json")}, tmp("bc.json"),
       [&](io::json const& j) { return element_equal(io::read_mealy(j), machines::grigorchuk('d')); });
  trip({"group", "invert", fx("odometer.json")}, tmp("inv.json"),
       [&](io::json const& j) { return io::read_mealy(j) == element_invert(machines::odometer()); });
  fs::remove_all(tmpdir);
  return {bad == 0, count(cases.size(), "exit-code cases") + ", " + count(trips, "round trips") + ", " +
                        count(bad, "failures") + (first_bad.empty() ? "" : " (first: " + first_bad + ")")};
}

}  // namespace

int main() {
  criterion("first-type-axioms", 30, first_type_axioms);
  criterion("pair-semigroup-assoc", 0, pair_semigroup_associativity);
  criterion("second-type-cocycle", 0, second_type_cocycle);
  criterion("quotient-decision", 0, quotient_oracle);
  criterion("wreath-product", 0, wreath_products);
  criterion("terminal-embedding", 0, embedding);
  criterion("serial-second-equivalence", 0, serial_equivalence);
  criterion("bijective-extension", 0, bijective_extension);
  criterion("automaton-group-fixtures", 10, group_fixtures);
  criterion("element-equal-exactness", 0, equality_oracle);
  criterion("cli-contract", 0, cli_contract);
  std::printf("%d of 11 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
