#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "fuzz.hpp"
#include "structura/dsl.hpp"
#include "structura/species.hpp"

using namespace structura;
using namespace structura::build;
namespace fs = std::filesystem;

namespace {

const fs::path source_dir = STRUCTURA_SOURCE_DIR;

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<fs::path> files_in(const fs::path& dir) {
  std::vector<fs::path> out;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.path().extension() == ".species") out.push_back(e.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

ParseError parse_failure(const std::string& text) {
  try {
    dsl::parse_file(text);
  } catch (const ParseError& e) {
    return e;
  }
  ADD_FAILURE() << "parsed without error:\n" << text;
  return ParseError(ErrorCode::SyntaxError, {}, "none");
}

}  // namespace

TEST(ParseType, Examples) {
  const auto rel = dsl::parse_type("P(pr1 * pr1) @1");
  EXPECT_EQ(rel, EchelonType::pow(EchelonType::prod(EchelonType::proj(1, 1), EchelonType::proj(1, 1))));
  EXPECT_EQ(dsl::parse_type("P((pr1 * pr1) * pr1) @1"), types::op());
  EXPECT_EQ(dsl::parse_type("pr1 @1"), EchelonType::proj(1, 1));
  EXPECT_EQ(dsl::pretty(EchelonType::pow(EchelonType::proj(1, 1))), "P(pr1) @1");
}

TEST(ParseType, ArityAndAssociativity) {
  EXPECT_EQ(dsl::parse_type("pr1 @2"), EchelonType::proj(1, 2));
  EXPECT_NE(dsl::parse_type("pr1 @2"), dsl::parse_type("pr1"));
  EXPECT_EQ(dsl::parse_type("pr2 * pr1").arity(), 2u);
  // Left-associative product, P binds tighter.
  const auto t = dsl::parse_type("pr1 * pr1 * P(pr1) @1");
  const auto p = EchelonType::proj(1, 1);
  EXPECT_EQ(t, EchelonType::prod(EchelonType::prod(p, p), EchelonType::pow(p)));
  EXPECT_EQ(dsl::parse_type(" ( pr1 ) "), p);
}

TEST(ParseType, Errors) {
  try {
    dsl::parse_type("pr3 @2");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.code(), ErrorCode::ArityError);
    EXPECT_EQ(e.position().column, 1u);
  }
  try {
    dsl::parse_type("P(pr1 * ) @1");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.code(), ErrorCode::SyntaxError);
    EXPECT_EQ(e.position().line, 1u);
    EXPECT_EQ(e.position().column, 9u);
    EXPECT_FALSE(e.expected().empty());
  }
  for (const char* bad : {"", "P", "P(", "pr0", "pr1 @", "pr1 @0", "pr1 pr1", "Q(pr1)", "pr1 * * pr1"}) {
    EXPECT_THROW(dsl::parse_type(bad), ParseError) << bad;
  }
}

TEST(ParseValue, CanonicalGrammar) {
  EXPECT_EQ(dsl::parse_value("{1,0,1}"), int_range(0, 1));
  EXPECT_EQ(dsl::parse_value("{0..3}"), int_range(0, 3));
  EXPECT_EQ(dsl::parse_value("( a , -2 )"), pair(atom("a"), num(-2)));
  EXPECT_EQ(dsl::parse_value("{}"), Value::empty_set());
  fuzz::Fuzzer fz(7);
  for (int i = 0; i < 500; ++i) {
    const Value v = fz.value(4);
    EXPECT_EQ(dsl::parse_value(to_string(v)), v) << to_string(v);
  }
  EXPECT_THROW(dsl::parse_value("{0,"), ParseError);
  EXPECT_THROW(dsl::parse_value("(0)"), ParseError);
  EXPECT_THROW(dsl::parse_value("{0} {1}"), ParseError);
}

TEST(ParseSpecies, PartialOrderEvaluates) {
  const auto sigma = dsl::parse_species(slurp(source_dir / "species/partial_order.species"));
  EXPECT_EQ(sigma.name, "partial_order");
  EXPECT_EQ(sigma.axiom, builtin_species("partial_order").axiom);
  ASSERT_TRUE(sigma.certificate.has_value());
  EXPECT_EQ(*sigma.certificate, (Certificate{3, true}));
  // The chain 0 <= 1.
  const Value chain = Value::set({pair(num(0), num(0)), pair(num(0), num(1)), pair(num(1), num(1))});
  EXPECT_TRUE(check_model(sigma, std::vector{int_range(0, 1)}, chain));
  // Three conjuncts on the left spine.
  EXPECT_EQ(sigma.axiom.kind(), Formula::Kind::And);
  EXPECT_EQ(sigma.axiom.subs()[0].kind(), Formula::Kind::And);
  EXPECT_EQ(sigma.axiom.subs()[0].subs()[0].kind(), Formula::Kind::ForAll);
}

TEST(ParseSpecies, UndeclaredAuxIsUnbound) {
  const std::string text = "species a {\n  mains 1;\n  typing s in P(pr1) @1;\n  axiom forall k in K. k in s;\n}\n";
  try {
    dsl::parse_species(text);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnboundSymbol);
    EXPECT_EQ(e.position().line, 4u);
    EXPECT_EQ(e.position().column, 21u);
  }
  const std::string fixed = "species a {\n  mains 1;\n  aux K = {0};\n  typing s in P(pr1 * pr2) @2;\n  axiom forall k in K. "
                            "forall x in X1. (x, k) in s;\n}\n";
  EXPECT_NO_THROW(dsl::parse_species(fixed));
}

TEST(ParseFormula, Precedence) {
  const std::vector<std::string> sets = {"X1"};
  const Formula a = tt();
  const Formula b = ff();
  EXPECT_EQ(dsl::parse_formula("true | false & true", sets, "s"), lor(a, land(b, a)));
  EXPECT_EQ(dsl::parse_formula("true -> false -> true", sets, "s"), imp(a, imp(b, a)));
  EXPECT_EQ(dsl::parse_formula("true <-> false <-> true", sets, "s"), iff(iff(a, b), a));
  EXPECT_EQ(dsl::parse_formula("!true & false", sets, "s"), land(no(a), b));
  EXPECT_EQ(dsl::parse_formula("true -> false | true", sets, "s"), imp(a, lor(b, a)));
  EXPECT_EQ(dsl::parse_formula("forall x, y in X1. x = y", sets, "s"),
            Formula::forall("x", set("X1"), Formula::forall("y", set("X1"), eq(v("x"), v("y")))));
  EXPECT_EQ(dsl::parse_formula("exists x in X1. s(x, x) != x", sets, "s"),
            Formula::exists("x", set("X1"), neq(app(sym("s"), v("x"), v("x")), v("x"))));
  EXPECT_EQ(dsl::parse_formula("((0, 1)) in X1 * X1", sets, "s"), in(tup(c(num(0)), c(num(1))), times(set("X1"), set("X1"))));
}

TEST(ParseFormula, Diagnostics) {
  const std::vector<std::string> sets = {"X1"};
  try {
    dsl::parse_formula("forall x in X1. x in", sets, "s");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.code(), ErrorCode::SyntaxError);
    EXPECT_EQ(e.position().column, 21u);
    EXPECT_FALSE(e.expected().empty());
  }
  try {
    dsl::parse_formula("x in X1", sets, "s");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnboundSymbol);
    EXPECT_EQ(e.position().column, 1u);
  }
}

TEST(RoundTrip, BuiltinSpeciesAndProperties) {
  for (const auto& sigma : builtin_species()) {
    EXPECT_EQ(dsl::parse_species(dsl::pretty(sigma)), sigma) << sigma.name;
  }
  for (const auto& p : builtin_properties()) {
    EXPECT_EQ(dsl::parse_property(dsl::pretty(p)), p) << p.name;
  }
}

TEST(RoundTrip, FuzzedAsts) {
  fuzz::Fuzzer fz(20240611);
  for (int i = 0; i < 1000; ++i) {
    const int depth = 1 + i % 5;
    const Species sigma = fz.species(depth);
    const std::string text = dsl::pretty(sigma);
    std::optional<Species> parsed;
    try {
      parsed = dsl::parse_species(text);
    } catch (const Error& e) {
      FAIL() << e.what() << "\n" << text;
    }
    const Species& back = *parsed;
    EXPECT_EQ(back, sigma) << text;
    EXPECT_EQ(dsl::pretty(back), text);
    EXPECT_EQ(dsl::parse_type(dsl::pretty(sigma.typing.type())), sigma.typing.type());
    EXPECT_EQ(dsl::parse_formula(dsl::pretty(sigma.axiom), fz.set_names(), fz.symbol()), sigma.axiom) << dsl::pretty(sigma.axiom);
  }
}

TEST(RoundTrip, PrettyIsIdempotentOnFiles) {
  std::vector<fs::path> files = files_in(source_dir / "species");
  for (const auto& p : files_in(source_dir / "tests/corpus/valid")) files.push_back(p);
  ASSERT_FALSE(files.empty());
  for (const auto& path : files) {
    const auto decls = dsl::parse_file(slurp(path));
    const std::string once = dsl::pretty(decls);
    EXPECT_EQ(dsl::parse_file(once), decls) << path;
    EXPECT_EQ(dsl::pretty(dsl::parse_file(once)), once) << path;
  }
}

TEST(Golden, GroupSpecies) {
  EXPECT_EQ(dsl::pretty(builtin_species("group")), slurp(source_dir / "tests/golden/group.species"));
}

TEST(Corpus, MalformedFilesReportPositions) {
  const auto files = files_in(source_dir / "tests/corpus/malformed");
  ASSERT_GE(files.size(), 10u);
  for (const auto& path : files) {
    const std::string text = slurp(path);
    const ParseError e = parse_failure(text);
    EXPECT_GE(e.position().line, 1u) << path;
    EXPECT_GE(e.position().column, 1u) << path;
    if (e.code() == ErrorCode::SyntaxError) {
      EXPECT_FALSE(e.expected().empty()) << path;
    }
    EXPECT_TRUE(e.code() == ErrorCode::SyntaxError || e.code() == ErrorCode::ArityError ||
                e.code() == ErrorCode::UnboundSymbol)
        << path;
  }
}

TEST(Corpus, SpecificDiagnostics) {
  const auto at = [](const std::string& file) {
    const ParseError e = parse_failure(slurp(source_dir / "tests/corpus/malformed" / file));
    return std::tuple{e.code(), e.position().line, e.position().column};
  };
  EXPECT_EQ(at("missing_semicolon.species"), std::tuple(ErrorCode::SyntaxError, 3u, 3u));
  EXPECT_EQ(at("projection_out_of_range.species"), std::tuple(ErrorCode::ArityError, 4u, 23u));
  EXPECT_EQ(at("undeclared_aux.species"), std::tuple(ErrorCode::UnboundSymbol, 4u, 21u));
  EXPECT_EQ(at("unterminated_block.species"), std::tuple(ErrorCode::SyntaxError, 5u, 1u));
  EXPECT_EQ(at("stray_character.species"), std::tuple(ErrorCode::SyntaxError, 4u, 14u));
}

TEST(Lexer, CommentsAndWhitespace) {
  const std::string text = "# header\nspecies a { # trailing\n mains 1; typing s in P(pr1) @1;\n\taxiom true; }\n# end";
  const auto sigma = dsl::parse_species(text);
  EXPECT_EQ(sigma.axiom, tt());
  EXPECT_EQ(sigma.symbol, "s");
}
