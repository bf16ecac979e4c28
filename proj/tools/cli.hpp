#pragma once

// The `structura` command line. run() is the whole program minus argv and
// the real streams, so tests drive it directly.
//
// Exit codes: 0 ok, 1 negative answer, 2 bad input (syntax, unknown name,
// ill-formed literal, usage), 3 size guard, 4 not a structure of the type,
// 5 not bijective, 6 transportability counterexample, 7 anything else.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "structura.hpp"

namespace structura::cli {

using nlohmann::json;

inline int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::SizeExceeded: return 3;
    case ErrorCode::NotAStructureOfType: return 4;
    case ErrorCode::NotBijective: return 5;
    case ErrorCode::ApplyUndefined: return 7;
    case ErrorCode::SyntaxError:
    case ErrorCode::ArityError:
    case ErrorCode::UnboundSymbol:
    case ErrorCode::InvalidFormula:
    case ErrorCode::NotAFunction:
    case ErrorCode::ArityMismatch:
    case ErrorCode::DomainMismatch:
    case ErrorCode::CardinalityMismatch:
    case ErrorCode::NotASubset:
    case ErrorCode::CaptureDetected: return 2;
  }
  return 7;
}

/// Thrown for command-line misuse that is not a library error.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Library error raised while reading a named input; the name prefixes the diagnostic.
struct InputError : std::runtime_error {
  std::string source;
  ErrorCode code;
  std::optional<SourcePosition> position;
  InputError(std::string src, const Error& e, std::optional<SourcePosition> pos)
      : std::runtime_error(e.what()), source(std::move(src)), code(e.code()), position(pos) {}
};

namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

template <typename Fn>
auto reading(const std::string& source, Fn&& fn) {
  try {
    return fn();
  } catch (const ParseError& e) {
    throw InputError(source, e, e.position());
  } catch (const Error& e) {
    throw InputError(source, e, std::nullopt);
  }
}

inline Value literal(const std::string& what, const std::string& text) {
  return reading(what, [&] { return dsl::parse_value(text); });
}

inline std::vector<Value> literals(const std::string& what, const std::vector<std::string>& texts) {
  std::vector<Value> out;
  for (const auto& t : texts) out.push_back(literal(what, t));
  return out;
}

inline std::vector<std::string> rendered(std::span<const Value> vs) {
  std::vector<std::string> out;
  for (const auto& v : vs) out.push_back(to_string(v));
  return out;
}

inline std::vector<std::string> rendered(std::span<const FiniteMap> fs) {
  std::vector<std::string> out;
  for (const auto& f : fs) out.push_back(to_string(f));
  return out;
}

inline Species as_species(const PropertySpec& p) { return Species{p.name, p.typing, p.formula, p.symbol, std::nullopt}; }

/// A species or property: `builtin:NAME` (species first) or a file, with
/// `name` choosing among several declarations.
inline Species resolve(const std::string& ref, const std::string& name) {
  if (ref.rfind("builtin:", 0) == 0) {
    const std::string key = ref.substr(8);
    for (const auto& s : builtin_species()) {
      if (s.name == key) return s;
    }
    for (const auto& p : builtin_properties()) {
      if (p.name == key) return as_species(p);
    }
    throw InputError(ref, Error(ErrorCode::UnboundSymbol, "no built-in species or property named " + key), std::nullopt);
  }
  const std::string text = read_file(ref);
  const auto decls = reading(ref, [&] { return dsl::parse_file(text); });
  std::vector<Species> candidates = decls.species;
  for (const auto& p : decls.properties) candidates.push_back(as_species(p));
  if (!name.empty()) {
    for (const auto& c : candidates) {
      if (c.name == name) return c;
    }
    throw InputError(ref, Error(ErrorCode::UnboundSymbol, "no declaration named " + name), std::nullopt);
  }
  if (candidates.size() != 1) {
    throw UsageError(ref + " declares " + std::to_string(candidates.size()) +
                     " species/properties; choose one with --name");
  }
  return candidates.front();
}

inline json counterexample_json(const Counterexample& c) {
  return json{{"mains", rendered(c.mains)},
              {"maps", rendered(c.maps)},
              {"structure", to_string(c.structure)},
              {"transported", to_string(c.transported)},
              {"holds_before", c.holds_before},
              {"holds_after", c.holds_after}};
}

inline std::string sizes_text(const std::vector<std::size_t>& sizes) {
  std::string out = "(";
  for (std::size_t i = 0; i < sizes.size(); ++i) out += (i ? "," : "") + std::to_string(sizes[i]);
  return out + ")";
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite species of structures: realize, transport, check, enumerate, compare."};
  app.name("structura");
  app.require_subcommand(1);
  bool as_json = false;
  app.add_flag("--json", as_json, "Machine-readable output");

  const Limits limits = Limits::from_env();

  // realize
  auto* realize_cmd = app.add_subcommand("realize", "Print T(X1..Xn) for a type and carriers");
  std::string type_text;
  std::vector<std::string> sets;
  bool count_only = false;
  realize_cmd->add_option("type", type_text, "Type expression, e.g. \"P(pr1)@1\"")->required();
  realize_cmd->add_option("--set", sets, "Carrier literal, once per projection slot");
  realize_cmd->add_flag("--count", count_only, "Print the size only");

  // transport
  auto* transport_cmd = app.add_subcommand("transport", "Transport a structure along bijections");
  std::string ref;
  std::string name;
  std::string structure_text;
  std::vector<std::string> map_texts;
  auto* ref_opt = transport_cmd->add_option("ref", ref, "Species file or builtin:NAME");
  auto* type_opt = transport_cmd->add_option("--type", type_text, "Bare type instead of a species");
  ref_opt->excludes(type_opt);
  transport_cmd->add_option("--name", name, "Declaration to use from the file");
  transport_cmd->add_option("--structure", structure_text, "Structure literal")->required();
  transport_cmd->add_option("--map", map_texts, "Bijection as a set of pairs, once per main set")->required();
  transport_cmd->add_option("--set", sets, "Main carriers (default: the map domains)");

  // check
  auto* check_cmd = app.add_subcommand("check", "Is a structure a model?");
  check_cmd->add_option("ref", ref, "Species file or builtin:NAME")->required();
  check_cmd->add_option("--name", name, "Declaration to use from the file");
  check_cmd->add_option("--set", sets, "Main carrier literal, once per main set")->required();
  check_cmd->add_option("--structure", structure_text, "Structure literal")->required();

  // models
  bool count_models = false;
  bool classes = false;
  auto* models_cmd = app.add_subcommand("models", "Enumerate the labeled models on given carriers");
  models_cmd->add_option("ref", ref, "Species file or builtin:NAME")->required();
  models_cmd->add_option("--name", name, "Declaration to use from the file");
  models_cmd->add_option("--set", sets, "Main carrier literal, once per main set")->required();
  models_cmd->add_flag("--count", count_models, "Print the number of models only");
  models_cmd->add_flag("--classes", classes, "Group the models into isomorphism classes");

  // iso
  std::vector<std::string> other_sets;
  std::string other_text;
  bool expect_none = false;
  auto* iso_cmd = app.add_subcommand("iso", "Search for an isomorphism between two structures");
  iso_cmd->add_option("ref", ref, "Species file or builtin:NAME")->required();
  iso_cmd->add_option("--name", name, "Declaration to use from the file");
  iso_cmd->add_option("--set", sets, "Main carriers of the first structure")->required();
  iso_cmd->add_option("--other-set", other_sets, "Main carriers of the second structure (default: --set)");
  iso_cmd->add_option("--structure", structure_text, "First structure")->required();
  iso_cmd->add_option("--other", other_text, "Second structure")->required();
  iso_cmd->add_flag("--expect-none", expect_none, "Succeed only when there is no isomorphism");

  // transportable
  std::size_t max_size = 3;
  std::string method_text = "auto";
  auto* tr_cmd = app.add_subcommand("transportable", "Bounded-exhaustive transportability sweep");
  tr_cmd->add_option("ref", ref, "Species file or builtin:NAME")->required();
  tr_cmd->add_option("--name", name, "Declaration to use from the file");
  tr_cmd->add_option("--max-size", max_size, "Largest main carrier size")->capture_default_str();
  tr_cmd->add_option("--method", method_text, "auto, direct or model-closure")
      ->check(CLI::IsMember({"auto", "direct", "model-closure"}))
      ->capture_default_str();

  // fmt
  std::string file;
  auto* fmt_cmd = app.add_subcommand("fmt", "Print a species file in canonical form");
  fmt_cmd->add_option("file", file, "Species file")->required();

  for (auto* sub : app.get_subcommands({})) sub->add_flag("--json", as_json, "Machine-readable output");

  std::vector<const char*> argv = {"structura"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  auto report_error = [&](const std::string& source, const std::string& message, ErrorCode code,
                          std::optional<SourcePosition> pos, int exit) {
    err << "error: " << (source.empty() ? "" : source + ": ") << message << "\n";
    if (as_json) {
      json j{{"error", {{"code", std::string(to_string(code))}, {"message", message}, {"exit", exit}}}};
      if (!source.empty()) j["error"]["source"] = source;
      if (pos) {
        j["error"]["line"] = pos->line;
        j["error"]["column"] = pos->column;
      }
      out << j.dump(2) << "\n";
    }
    return exit;
  };

  try {
    if (realize_cmd->parsed()) {
      const EchelonType t = detail::reading("type", [&] { return dsl::parse_type(type_text); });
      const auto carriers = detail::literals("--set", sets);
      if (count_only) {
        const BigInt n = estimated_size(t, carriers);
        if (as_json) {
          out << json{{"type", dsl::pretty(t)}, {"carriers", sets}, {"count", n.str()}}.dump(2) << "\n";
        } else {
          out << n.str() << "\n";
        }
        return 0;
      }
      const FiniteSet r = realize(t, carriers, limits);
      if (as_json) {
        out << json{{"type", dsl::pretty(t)},
                    {"carriers", detail::rendered(carriers)},
                    {"count", std::to_string(r.size())},
                    {"result", to_string(r)}}
                   .dump(2)
            << "\n";
      } else {
        out << to_string(r) << "\n";
      }
      return 0;
    }

    if (transport_cmd->parsed()) {
      if (ref.empty() && type_text.empty()) throw UsageError("transport needs a species reference or --type");
      std::optional<Typification> typing;
      if (!ref.empty()) {
        typing = detail::resolve(ref, name).typing;
      } else {
        const EchelonType t = detail::reading("--type", [&] { return dsl::parse_type(type_text); });
        typing = Typification(t, t.arity());
      }
      const Value s = detail::literal("--structure", structure_text);
      std::vector<FiniteMap> maps;
      for (const auto& m : map_texts) {
        const Value pairs = detail::literal("--map", m);
        maps.push_back(FiniteMap::from_pairs(pairs));
      }
      std::vector<FiniteSet> mains = detail::literals("--set", sets);
      if (sets.empty()) {
        for (const auto& f : maps) mains.push_back(f.domain());
      }
      const Value moved = transport(s, *typing, mains, maps);
      if (as_json) {
        out << json{{"input", to_string(s)},
                    {"typification", dsl::pretty(typing->type())},
                    {"mains", detail::rendered(mains)},
                    {"bijections", detail::rendered(maps)},
                    {"output", to_string(moved)}}
                   .dump(2)
            << "\n";
      } else {
        out << to_string(moved) << "\n";
      }
      return 0;
    }

    if (check_cmd->parsed()) {
      const Species sigma = detail::resolve(ref, name);
      const auto mains = detail::literals("--set", sets);
      const Value s = detail::literal("--structure", structure_text);
      const auto carriers = sigma.typing.carriers(mains);
      if (!contains_structure(sigma.typing.type(), carriers, s)) {
        throw Error(ErrorCode::NotAStructureOfType,
                    to_string(s) + " is not a structure of type " + dsl::pretty(sigma.typing.type()));
      }
      const bool ok = evaluate(sigma.axiom, sigma.typing, mains, s, sigma.symbol, limits);
      if (as_json) {
        out << json{{"name", sigma.name}, {"mains", detail::rendered(mains)}, {"structure", to_string(s)}, {"model", ok}}
                   .dump(2)
            << "\n";
      } else {
        out << (ok ? "model" : "not a model") << "\n";
      }
      return ok ? 0 : 1;
    }

    if (models_cmd->parsed()) {
      const Species sigma = detail::resolve(ref, name);
      const auto mains = detail::literals("--set", sets);
      const auto models = enumerate_models(sigma, mains, limits);
      std::vector<std::vector<std::size_t>> parts;
      if (classes) parts = isomorphism_classes(sigma, models, limits);
      if (as_json) {
        json j{{"name", sigma.name}, {"mains", detail::rendered(mains)}, {"count", models.size()}};
        if (!count_models) {
          std::vector<std::string> listed;
          for (const auto& m : models) listed.push_back(to_string(m.structure));
          j["models"] = listed;
        }
        if (classes) {
          json cls = json::array();
          for (const auto& c : parts) {
            cls.push_back({{"representative", to_string(models[c.front()].structure)}, {"size", c.size()}});
          }
          j["classes"] = cls;
        }
        out << j.dump(2) << "\n";
      } else if (count_models) {
        out << models.size() << "\n";
        if (classes) out << parts.size() << (parts.size() == 1 ? " isomorphism class\n" : " isomorphism classes\n");
      } else if (classes) {
        for (const auto& c : parts) out << to_string(models[c.front()].structure) << "  x" << c.size() << "\n";
        out << models.size() << (models.size() == 1 ? " model, " : " models, ") << parts.size()
            << (parts.size() == 1 ? " isomorphism class\n" : " isomorphism classes\n");
      } else {
        for (const auto& m : models) out << to_string(m.structure) << "\n";
        out << models.size() << (models.size() == 1 ? " model\n" : " models\n");
      }
      return 0;
    }

    if (iso_cmd->parsed()) {
      const Species sigma = detail::resolve(ref, name);
      const auto mains = detail::literals("--set", sets);
      const auto other_mains = other_sets.empty() ? mains : detail::literals("--other-set", other_sets);
      const Model m1{mains, detail::literal("--structure", structure_text)};
      const Model m2{other_mains, detail::literal("--other", other_text)};
      if (!contains_structure(sigma.typing.type(), sigma.typing.carriers(m2.mains), m2.structure)) {
        throw Error(ErrorCode::NotAStructureOfType, "second structure is not of the species' type");
      }
      const auto witness = are_isomorphic(sigma, m1, m2, limits);
      if (as_json) {
        json j{{"name", sigma.name}, {"isomorphic", witness.has_value()}};
        if (witness) j["witness"] = detail::rendered(*witness);
        out << j.dump(2) << "\n";
      } else if (witness) {
        for (const auto& f : *witness) out << to_string(f) << "\n";
      } else {
        out << "none\n";
      }
      return witness.has_value() == !expect_none ? 0 : 1;
    }

    if (tr_cmd->parsed()) {
      const Species sigma = detail::resolve(ref, name);
      SweepOptions options;
      options.method = method_text == "direct"          ? SweepMethod::Direct
                       : method_text == "model-closure" ? SweepMethod::ModelClosure
                                                        : SweepMethod::Auto;
      const auto verdict = check_transportability(sigma, max_size, limits, options);
      if (as_json) {
        json sizes = json::array();
        for (const auto& r : verdict.sizes) {
          sizes.push_back({{"sizes", r.sizes},
                           {"method", to_string(r.method)},
                           {"structures", std::to_string(r.structures)},
                           {"maps", std::to_string(r.maps)}});
        }
        json j{{"name", sigma.name}, {"bound", verdict.bound}, {"verified", verdict.verified()}, {"sizes", sizes}};
        if (verdict.counterexample) j["counterexample"] = detail::counterexample_json(*verdict.counterexample);
        out << j.dump(2) << "\n";
      } else if (verdict.verified()) {
        out << sigma.name << ": verified up to " << verdict.bound << " (" << verdict.sizes.size()
            << " size tuples, no counterexample)\n";
      } else {
        const auto& c = *verdict.counterexample;
        out << sigma.name << ": counterexample at sizes " << detail::sizes_text(verdict.sizes.back().sizes) << "\n";
        for (std::size_t i = 0; i < c.maps.size(); ++i) out << "  f" << i + 1 << " = " << to_string(c.maps[i]) << "\n";
        out << "  s  = " << to_string(c.structure) << " (" << (c.holds_before ? "holds" : "fails") << ")\n";
        out << "  s' = " << to_string(c.transported) << " (" << (c.holds_after ? "holds" : "fails") << ")\n";
      }
      return verdict.verified() ? 0 : 6;
    }

    if (fmt_cmd->parsed()) {
      const std::string text = detail::read_file(file);
      const auto decls = detail::reading(file, [&] { return dsl::parse_file(text); });
      const std::string formatted = dsl::pretty(decls);
      if (as_json) {
        out << json{{"file", file}, {"text", formatted}}.dump(2) << "\n";
      } else {
        out << formatted;
      }
      return 0;
    }
  } catch (const InputError& e) {
    return report_error(e.source, e.what(), e.code, e.position, exit_code(e.code));
  } catch (const Error& e) {
    return report_error("", e.what(), e.code(), std::nullopt, exit_code(e.code()));
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    if (as_json) out << json{{"error", {{"code", "Usage"}, {"message", e.what()}, {"exit", 2}}}}.dump(2) << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 7;
  }
  return 2;
}

}  // namespace structura::cli
