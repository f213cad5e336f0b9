#pragma once

/**
 * @file cli.hpp
 * @brief The `algaut` command line, callable in-process via cli::run().
 *
 * Exit codes: 0 pass, 1 a law failed / quotient incompatible / machines
 * differ, 2 usage or input error (including cap exceeded).
 */

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "algaut/cascade.hpp"
#include "algaut/first_type.hpp"
#include "algaut/group.hpp"
#include "algaut/io.hpp"
#include "algaut/second_type.hpp"
#include "algaut/serial.hpp"

namespace algaut::cli {

using io::json;

enum class Status { pass, fail, error };

struct CommandResult {
  Status status = Status::pass;
  json witness;  // null unless status is fail
  std::vector<std::string> artifact_paths;
  json details;  // optional extra facts (orders, sizes)

  json to_json() const {
    json j = {{"status", status == Status::pass ? "pass" : status == Status::fail ? "fail" : "error"},
              {"witness", witness},
              {"artifacts", artifact_paths}};
    if (!details.is_null()) j["details"] = details;
    return j;
  }

  int exit_code() const { return status == Status::pass ? 0 : status == Status::fail ? 1 : 2; }
};

inline json witness_json(Violation const& v) {
  json at = json::object();
  for (auto const& [k, x] : v.at) at[k] = x;
  return {{"law", v.law}, {"at", at}, {"lhs", v.lhs}, {"rhs", v.rhs}};
}

inline json witness_json(Incompatibility const& w, FiniteSet const& inputs, FiniteSet const& states) {
  return {{"state", states.label(w.state)},
          {"u", io::format_word(w.u, inputs)},
          {"v", io::format_word(w.v, inputs)},
          {"reason", w.reason}};
}

inline CommandResult from_report(Report const& r) {
  CommandResult c;
  if (!r) {
    c.status = Status::fail;
    c.witness = witness_json(*r.witness);
  }
  return c;
}

struct Options {
  std::size_t cap = kDefaultCap;
  std::size_t max_len = 0;
  std::size_t depth = 0;
  std::size_t max_power = 64;
  std::size_t max_states = 4096;
  std::string dot;
  std::string output;
};

namespace detail {

inline void write_dot(Options const& o, std::string const& dot, CommandResult& r) {
  if (o.dot.empty()) return;
  std::ofstream f(o.dot);
  if (!f) throw Error(o.dot + ": cannot write");
  f << dot;
  r.artifact_paths.push_back(o.dot);
}

// Bounded check that act_word on the pure automaton matches the image
// element's action in its semigroup automaton.
inline Report check_evaluation(PureAutomatonFirst const& m, SemigroupAutomatonFirst const& s,
                               std::size_t max_len) {
  Report r;
  for_each_word(m.inputs.size(), 1, max_len, [&](Word const& w) {
    if (!r) return;
    auto g = s.gamma.evaluate(w);
    for (index_t a = 0; a < m.states.size(); ++a) {
      auto lhs = act_word(m, a, w);
      if (lhs.state != s.next(a, g)) r = Report::fail({"evaluation-state", {{"a", a}, {"g", g}}, lhs.state, s.next(a, g)});
      else if (lhs.output != s.out(a, g)) r = Report::fail({"evaluation-output", {{"a", a}, {"g", g}}, lhs.output, s.out(a, g)});
      if (!r) return;
    }
  });
  return r;
}

// Bounded check of a∗(u₁u₂) = (a∗u₁)((a∘u₁)∗u₂) for every split.
inline Report check_cocycle_words(PureAutomatonSecond const& m, std::size_t max_len) {
  Report r;
  for_each_word(m.inputs.size(), 2, max_len, [&](Word const& w) {
    if (!r) return;
    for (index_t a = 0; a < m.states.size() && r; ++a) {
      auto whole = free_extension_out(m, a, w);
      for (std::size_t k = 1; k < w.size(); ++k) {
        auto u1 = w.sub(0, k), u2 = w.sub(k, w.size() - k);
        auto split = concat(free_extension_out(m, a, u1),
                            free_extension_out(m, free_extension_next(m, a, u1), u2));
        if (split != whole) {
          r = Report::fail({"free-cocycle", {{"a", a}, {"split", static_cast<index_t>(k)}}, 0, 1});
          return;
        }
      }
    }
  });
  return r;
}

inline CommandResult finish_object(Options const& o, json const& object, std::string const& dot,
                                   std::ostream& out) {
  CommandResult r;
  write_dot(o, dot, r);
  if (o.output.empty()) {
    out << object.dump(2) << '\n';
    return r;
  }
  io::save_json(o.output, object);
  r.artifact_paths.insert(r.artifact_paths.begin(), o.output);
  out << r.to_json().dump() << '\n';
  return r;
}

}  // namespace detail

////////////////////////////////////////////////////////////////////////
// check
////////////////////////////////////////////////////////////////////////

inline CommandResult cmd_check(std::string const& file, std::vector<std::string> const& components,
                               Options const& o) {
  auto j = io::load_json(file);
  auto type = io::expect_type(j, "");
  CommandResult r;
  if (type == "first-pure") {
    auto m = io::read_first_pure(j);
    auto s = semigroupify(m, o.cap);
    r = from_report(check_first_axioms(s));
    if (r.status == Status::pass && o.max_len > 0) r = from_report(detail::check_evaluation(m, s, o.max_len));
    r.details = {{"semigroup_order", s.gamma.order()}};
    detail::write_dot(o, io::to_dot(m), r);
  } else if (type == "first-semigroup") {
    auto m = io::read_first_semigroup(j);
    r = from_report(check_first_axioms(m));
    detail::write_dot(o, io::to_dot(m), r);
  } else if (type == "second-pure") {
    auto m = io::read_second_pure(j);
    if (o.max_len > 0) r = from_report(detail::check_cocycle_words(m, o.max_len));
    detail::write_dot(o, io::to_dot(m), r);
  } else if (type == "second-semigroup") {
    auto m = io::read_second_semigroup(j);
    r = from_report(check_second_axioms(m));
    detail::write_dot(o, io::to_dot(m), r);
  } else if (type == "generator-hom") {
    io::read_generator_hom(j);
  } else if (type == "mealy") {
    auto e = io::read_mealy(j);
    r.details = {{"invertible", e.machine.is_invertible()}, {"states", e.state_count()}};
    detail::write_dot(o, io::to_dot(e), r);
  } else if (type == "serial") {
    r = from_report(check_serial(io::read_serial(j)));
  } else if (type == "cascade-triple") {
    if (components.size() != 2) {
      throw SchemaError(file + ": checking a cascade triple needs --components M1 M2");
    }
    auto j1 = io::load_json(components[0]);
    auto j2 = io::load_json(components[1]);
    if (io::is_semigroup_triple(j)) {
      auto m1 = io::read_first_semigroup(j1);
      auto m2 = io::read_first_semigroup(j2);
      auto t = io::read_cascade_semigroup(j, m1, m2);
      r = from_report(check_cascade_triple(m1, m2, t));
    } else {
      auto m1 = io::read_first_pure(j1);
      auto m2 = io::read_first_pure(j2);
      io::read_cascade_pure(j, m1, m2);
    }
  } else if (type == "embedding") {
    io::detail::field(j, "map", "");
  } else {
    throw SchemaError("type: unknown file type \"" + type + "\"");
  }
  return r;
}

////////////////////////////////////////////////////////////////////////
// construct
////////////////////////////////////////////////////////////////////////

inline CommandResult cmd_construct(std::string const& verb, std::vector<std::string> const& inputs,
                                   Options const& o, std::ostream& out) {
  auto need = [&](std::size_t n) {
    if (inputs.size() != n) {
      throw SchemaError("construct " + verb + ": expected " + std::to_string(n) + " input file(s), got " +
                        std::to_string(inputs.size()));
    }
  };
  auto recheck = [](Report const& r, char const* what) {
    if (!r) throw VerificationError(std::string(what) + ": constructed object fails its check: " + r.witness->describe());
  };

  if (verb == "semigroupify") {
    need(1);
    auto s = semigroupify(io::read_first_pure(io::load_json(inputs[0])), o.cap);
    recheck(check_first_axioms(s), "semigroupify");
    return detail::finish_object(o, io::to_json(s), io::to_dot(s), out);
  }
  if (verb == "cascade") {
    need(3);
    auto j1 = io::load_json(inputs[0]);
    auto j2 = io::load_json(inputs[1]);
    auto jt = io::load_json(inputs[2]);
    if (io::is_semigroup_triple(jt)) {
      auto m1 = io::read_first_semigroup(j1);
      auto m2 = io::read_first_semigroup(j2);
      auto t = io::read_cascade_semigroup(jt, m1, m2);
      if (auto r = check_cascade_triple(m1, m2, t); !r) {
        CommandResult c = from_report(r);
        out << c.to_json().dump() << '\n';
        return c;
      }
      auto m = cascade_semigroup(m1, m2, t);
      recheck(check_first_axioms(m), "cascade");
      return detail::finish_object(o, io::to_json(m), io::to_dot(m), out);
    }
    auto m1 = io::read_first_pure(j1);
    auto m2 = io::read_first_pure(j2);
    auto m = cascade_pure(m1, m2, io::read_cascade_pure(jt, m1, m2));
    return detail::finish_object(o, io::to_json(m), io::to_dot(m), out);
  }
  if (verb == "wreath") {
    need(2);
    auto m1 = io::read_first_semigroup(io::load_json(inputs[0]));
    auto m2 = io::read_first_semigroup(io::load_json(inputs[1]));
    auto w = wreath_automaton(m1, m2, o.cap);
    recheck(check_first_axioms(w.automaton), "wreath");
    recheck(check_cascade_triple(m1, m2, w.triple), "wreath triple");
    json object = io::to_json(w.automaton);
    if (o.output.empty()) object = {{"automaton", object}, {"triple", io::to_json(w.triple)}};
    auto r = detail::finish_object(o, object, io::to_dot(w.automaton), out);
    if (!o.output.empty()) {
      auto triple_path = o.output + ".triple.json";
      io::save_json(triple_path, io::to_json(w.triple));
      r.artifact_paths.push_back(triple_path);
    }
    return r;
  }
  if (verb == "serial") {
    need(1);
    auto s = serial_from_second(io::read_second_semigroup(io::load_json(inputs[0])));
    auto r = check_serial(s);
    if (!r) {
      CommandResult c = from_report(r);
      out << c.to_json().dump() << '\n';
      return c;
    }
    return detail::finish_object(o, io::to_json(s), "", out);
  }
  if (verb == "derive-second") {
    need(1);
    auto s = io::read_serial(io::load_json(inputs[0]));
    if (auto r = check_serial(s); !r) {
      CommandResult c = from_report(r);
      out << c.to_json().dump() << '\n';
      return c;
    }
    auto m = derive_second_type(s);
    recheck(check_second_axioms(m), "derive-second");
    return detail::finish_object(o, io::to_json(m), io::to_dot(m), out);
  }
  if (verb == "quotient") {
    need(3);
    auto m = io::read_second_pure(io::load_json(inputs[0]));
    auto mu = io::read_generator_hom(io::load_json(inputs[1]), "mu");
    auto nu = io::read_generator_hom(io::load_json(inputs[2]), "nu");
    auto q = quotient_construct(m, mu, nu);
    if (!q.well_defined()) {
      CommandResult c;
      c.status = Status::fail;
      c.witness = witness_json(*q.witness, m.inputs, m.states);
      out << c.to_json().dump() << '\n';
      return c;
    }
    recheck(check_second_axioms(*q.automaton), "quotient");
    return detail::finish_object(o, io::to_json(*q.automaton), io::to_dot(*q.automaton), out);
  }
  if (verb == "embed") {
    need(3);
    auto m1 = io::read_first_semigroup(io::load_json(inputs[0]));
    auto m2 = io::read_first_semigroup(io::load_json(inputs[1]));
    auto t = io::read_cascade_semigroup(io::load_json(inputs[2]), m1, m2);
    if (auto r = check_cascade_triple(m1, m2, t); !r) {
      CommandResult c = from_report(r);
      out << c.to_json().dump() << '\n';
      return c;
    }
    auto w = wreath_automaton(m1, m2, o.cap);
    auto e = embed_into_wreath(m1, m2, t, w);
    return detail::finish_object(o, io::to_json(e), "", out);
  }
  throw SchemaError("construct: unknown verb \"" + verb + "\"");
}

////////////////////////////////////////////////////////////////////////
// group
////////////////////////////////////////////////////////////////////////

inline CommandResult cmd_group(std::string const& verb, std::vector<std::string> const& inputs,
                               Options const& o, std::ostream& out, std::ostream& err) {
  if (inputs.empty()) throw SchemaError("group " + verb + ": missing machine file");
  auto e1 = io::read_mealy(io::load_json(inputs[0]));
  auto second = [&]() {
    if (inputs.size() != 2) throw SchemaError("group " + verb + ": expected two machine files");
    return io::read_mealy(io::load_json(inputs[1]));
  };
  CommandResult r;
  if (verb == "apply") {
    if (inputs.size() < 2) throw SchemaError("group apply: missing word");
    auto w = io::parse_word({inputs.begin() + 1, inputs.end()}, e1.machine.alphabet);
    out << io::format_word(element_apply(e1, w), e1.machine.alphabet) << '\n';
  } else if (verb == "compose") {
    auto c = element_compose(e1, second());
    return detail::finish_object(o, io::to_json(c), io::to_dot(c), out);
  } else if (verb == "invert") {
    auto i = element_invert(e1);
    return detail::finish_object(o, io::to_json(i), io::to_dot(i), out);
  } else if (verb == "minimize") {
    auto m = minimize(e1);
    return detail::finish_object(o, io::to_json(m), io::to_dot(m), out);
  } else if (verb == "equal") {
    auto e2 = second();
    bool eq = element_equal(e1, e2);
    if (o.depth > 0) {
      bool bounded = true;
      for_each_word(e1.alphabet_size(), 1, o.depth, [&](Word const& w) {
        if (bounded && element_apply(e1, w) != element_apply(e2, w)) bounded = false;
      });
      if (eq && !bounded) {
        throw VerificationError("group equal: refinement says equal but words differ");
      }
      err << "exhaustive agreement to depth " << o.depth << ": " << (bounded ? "true" : "false") << '\n';
    }
    out << (eq ? "true" : "false") << '\n';
    if (!eq) r.status = Status::fail;
  } else if (verb == "order") {
    auto res = element_order_bounded(e1, o.max_power, o.max_states);
    if (res.order) {
      out << *res.order << '\n';
    } else {
      out << "exceeds bound (reached power " << res.reached_power << "): " << res.reason << '\n';
    }
  } else {
    throw SchemaError("group: unknown verb \"" + verb + "\"");
  }
  detail::write_dot(o, io::to_dot(e1), r);
  return r;
}

////////////////////////////////////////////////////////////////////////
// Entry point
////////////////////////////////////////////////////////////////////////

inline int run(std::vector<std::string> args, std::ostream& out = std::cout,
               std::ostream& err = std::cerr) {
  CLI::App app{"Algebraic automata: first/second-type automata, cascades, wreath products, "
               "automaton groups"};
  app.name("algaut");
  app.require_subcommand(1);

  Options o;
  std::string check_file;
  std::vector<std::string> components;
  std::string construct_verb, group_verb;
  std::vector<std::string> construct_inputs, group_inputs;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--cap", o.cap, "closure / wreath size cap");
    sub->add_option("--dot", o.dot, "write a DOT graph here");
    sub->add_option("-o,--output", o.output, "write the result here");
  };

  auto* check = app.add_subcommand("check", "validate a file and run its law checks");
  check->add_option("file", check_file)->required();
  check->add_option("--components", components, "component automata of a cascade triple")->expected(2);
  check->add_option("--max-len", o.max_len, "also run bounded word checks up to this length");
  add_common(check);

  auto* construct = app.add_subcommand("construct", "build an object from input files");
  construct
      ->add_option("verb", construct_verb,
                   "semigroupify | cascade | wreath | serial | derive-second | quotient | embed")
      ->required();
  construct->add_option("inputs", construct_inputs);
  add_common(construct);

  auto* group = app.add_subcommand("group", "automaton-group operations on mealy files");
  group->add_option("verb", group_verb, "apply | compose | invert | equal | order | minimize")->required();
  group->add_option("inputs", group_inputs, "machine files, then the word for apply");
  group->add_option("--depth", o.depth, "equal: cross-check words up to this length");
  group->add_option("--max-power", o.max_power, "order: largest power tried");
  group->add_option("--max-states", o.max_states, "order: state cap for powers");
  group->add_option("--dot", o.dot, "write a DOT graph here");
  group->add_option("-o,--output", o.output, "write the result here");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (CLI::CallForHelp const&) {
    out << app.help();
    return 0;
  } catch (CLI::ParseError const& e) {
    err << "algaut: " << e.what() << '\n';
    return 2;
  }

  try {
    CommandResult r;
    if (*check) {
      r = cmd_check(check_file, components, o);
      out << r.to_json().dump() << '\n';
    } else if (*construct) {
      r = cmd_construct(construct_verb, construct_inputs, o, out);
    } else {
      r = cmd_group(group_verb, group_inputs, o, out, err);
    }
    return r.exit_code();
  } catch (CapExceeded const& e) {
    err << "algaut: cap exceeded: " << e.what() << '\n';
  } catch (Error const& e) {
    err << "algaut: " << e.what() << '\n';
  } catch (nlohmann::json::exception const& e) {
    err << "algaut: " << e.what() << '\n';
  }
  return 2;
}

}  // namespace algaut::cli
