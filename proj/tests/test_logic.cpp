#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "structura/evaluate.hpp"
#include "structura/extension.hpp"
#include "structura/properties.hpp"
#include "structura/species.hpp"

using namespace structura;
using namespace structura::build;

namespace {

using fixture::family;
using fixture::relation;
using fixture::table;

bool holds(const std::string& property, int n, const Value& s) {
  const auto& p = builtin_property(property);
  return evaluate(p.formula, p.typing, std::vector{int_range(0, n - 1)}, s, p.symbol);
}

}  // namespace

TEST(Evaluate, ReflexivityByEnumeration) {
  const Formula phi = all({"x"}, set("X1"), in(tup(v("x"), v("x")), sym("s")));
  const Typification rel(types::rel(), 1);
  const Value s = Value::set({pair(num(0), num(0)), pair(num(1), num(1))});
  EXPECT_TRUE(evaluate(phi, rel, std::vector{int_range(0, 1)}, s));
  EXPECT_FALSE(evaluate(phi, rel, std::vector{int_range(0, 2)}, s));
}

TEST(Evaluate, EmptyDomains) {
  const Typification rel(types::rel(), 1);
  const std::vector<FiniteSet> none = {Value::empty_set()};
  EXPECT_FALSE(evaluate(some({"x"}, set("X1"), ff()), rel, none, Value::empty_set()));
  EXPECT_TRUE(evaluate(all({"x"}, set("X1"), ff()), rel, none, Value::empty_set()));
}

TEST(Evaluate, AssociativityOfAdditionModTwo) {
  const oracle::Table add = {0, 1, 1, 0};
  EXPECT_TRUE(holds("associative", 2, table(add, 2)));
  EXPECT_TRUE(holds("has_inverses", 2, table(add, 2)));
}

TEST(Evaluate, ApplyUndefinedIsAnError) {
  const Typification op(types::op(), 1);
  const Formula phi = all({"x", "y"}, set("X1"), eq(app(sym("s"), v("x"), v("y")), v("x")));
  const Value partial = Value::set({pair(pair(num(0), num(0)), num(0))});
  try {
    evaluate(phi, op, std::vector{int_range(0, 1)}, partial);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ApplyUndefined);
  }
  // A Member-only guard in front keeps the formula total.
  EXPECT_FALSE(evaluate(land(fragments::operation(sym("s"), set("X1")), phi), op, std::vector{int_range(0, 1)}, partial));
}

TEST(Evaluate, UnknownSymbolsAreRejected) {
  const Typification rel(types::rel(), 1);
  EXPECT_THROW(evaluate(in(v("free"), set("X1")), rel, std::vector{int_range(0, 1)}, Value::empty_set()), Error);
  EXPECT_THROW(evaluate(in(c(num(0)), set("Y")), rel, std::vector{int_range(0, 1)}, Value::empty_set()), Error);
}

TEST(Evaluate, SetFormingTerms) {
  const Typification top(types::topology(), 1);
  const std::vector<FiniteSet> x = {int_range(0, 1)};
  // s is contained in P(X1), and (0, 1) is an element of X1 * X1.
  EXPECT_TRUE(evaluate(all({"U"}, sym("s"), in(v("U"), pw(set("X1")))), top, x, family(0b1001, 2)));
  EXPECT_TRUE(evaluate(in(c(pair(num(0), num(1))), times(set("X1"), set("X1"))), top, x, family(0, 2)));
  const Typification pair_t(EchelonType::prod(types::rel(), types::rel()), 1);
  const Value s = pair(Value::set({pair(num(0), num(0))}), Value::empty_set());
  EXPECT_TRUE(evaluate(eq(snd(sym("s")), c(Value::empty_set())), pair_t, x, s));
  EXPECT_FALSE(evaluate(eq(fst(sym("s")), snd(sym("s"))), pair_t, x, s));
}

TEST(BuiltinProperties, Catalogue) {
  std::vector<std::string> names;
  for (const auto& p : builtin_properties()) names.push_back(p.name);
  const std::vector<std::string> expected = {"reflexive",  "irreflexive",   "symmetric",        "asymmetric",
                                             "antisymmetric", "transitive", "binary_operation", "associative",
                                             "commutative", "has_neutral",  "has_inverses",     "distributive_pair",
                                             "topology",   "hausdorff",     "connected",        "compact"};
  EXPECT_EQ(names, expected);
  for (const auto& p : builtin_properties()) {
    const auto symbols = free_symbols(p.formula);
    for (const auto& b : symbols.base_sets) EXPECT_EQ(b, "X1") << p.name;
    if (p.name != "compact") {
      EXPECT_EQ(symbols.structures, std::set<std::string>{"s"}) << p.name;
    }
  }
  EXPECT_THROW(builtin_property("nope"), Error);
}

TEST(BuiltinProperties, Examples) {
  const Value both_ways = Value::set({pair(num(0), num(1)), pair(num(1), num(0)), pair(num(0), num(0)), pair(num(1), num(1))});
  EXPECT_FALSE(holds("antisymmetric", 2, both_ways));
  EXPECT_TRUE(holds("topology", 2, Value::set({Value::empty_set(), int_range(0, 1)})));
  for (std::uint64_t fam = 0; fam < 16; ++fam) {
    if (oracle::is_topology(fam, 2)) {
      EXPECT_TRUE(holds("compact", 2, family(fam, 2)));
    }
  }
}

TEST(BuiltinProperties, RelationPropertiesMatchOracle) {
  const std::vector<std::pair<std::string, bool (*)(std::uint32_t, int)>> props = {
      {"reflexive", oracle::reflexive},   {"irreflexive", oracle::irreflexive},     {"symmetric", oracle::symmetric},
      {"asymmetric", oracle::asymmetric}, {"antisymmetric", oracle::antisymmetric}, {"transitive", oracle::transitive}};
  for (int n = 0; n <= 3; ++n) {
    for (std::uint32_t r = 0; r < (1u << (n * n)); ++r) {
      const Value s = relation(r, n);
      for (const auto& [name, pred] : props) EXPECT_EQ(holds(name, n, s), pred(r, n)) << name << " " << to_string(s);
    }
  }
}

TEST(BuiltinProperties, OperationPropertiesMatchOracleOnTables) {
  for (int n = 1; n <= 3; ++n) {
    oracle::for_each_table(n, [&](const oracle::Table& t) {
      const Value s = table(t, n);
      ASSERT_TRUE(holds("binary_operation", n, s));
      EXPECT_EQ(holds("associative", n, s), oracle::associative(t, n));
      EXPECT_EQ(holds("commutative", n, s), oracle::commutative(t, n));
      EXPECT_EQ(holds("has_neutral", n, s), oracle::neutral(t, n) >= 0);
      EXPECT_EQ(holds("has_inverses", n, s), oracle::has_inverses(t, n));
    });
  }
}

TEST(BuiltinProperties, NonTablesAreNotOperations) {
  const Typification op(types::op(), 1);
  const std::vector<FiniteSet> x = {int_range(0, 1)};
  const FiniteSet all_rel = realize(op.type(), x);
  std::size_t tables = 0;
  for (const auto& s : all_rel.elements()) {
    const bool is_op = holds("binary_operation", 2, s);
    tables += is_op ? 1 : 0;
    // Each guarded property is false, never an error, on a non-table.
    for (const char* name : {"associative", "commutative", "has_neutral", "has_inverses"}) {
      if (!is_op) {
        EXPECT_FALSE(holds(name, 2, s));
      }
    }
  }
  EXPECT_EQ(tables, 16u);
}

TEST(BuiltinProperties, ConnectedAgreesWithReachability) {
  for (int n = 0; n <= 3; ++n) {
    for (std::uint64_t fam = 0; fam < (std::uint64_t{1} << (1 << n)); ++fam) {
      if (!oracle::is_topology(fam, n)) continue;
      EXPECT_EQ(holds("connected", n, family(fam, n)), oracle::connected_by_reachability(fam, n)) << to_string(family(fam, n));
    }
  }
}

TEST(BuiltinProperties, HausdorffIsDiscreteOnFiniteSpaces) {
  for (int n = 0; n <= 3; ++n) {
    for (std::uint64_t fam = 0; fam < (std::uint64_t{1} << (1 << n)); ++fam) {
      if (!oracle::is_topology(fam, n)) continue;
      EXPECT_EQ(holds("hausdorff", n, family(fam, n)), oracle::is_discrete(fam, n));
    }
  }
}

TEST(BuiltinProperties, TopologyMatchesOracle) {
  for (int n = 0; n <= 3; ++n) {
    for (std::uint64_t fam = 0; fam < (std::uint64_t{1} << (1 << n)); ++fam) {
      EXPECT_EQ(holds("topology", n, family(fam, n)), oracle::is_topology(fam, n));
    }
  }
}

// P(s) <=> P(f.s) for every relation property, every relation on two
// elements and both bijections onto atoms. The full sweep is in acceptance.
TEST(BuiltinProperties, PreservedUnderBijectionsSmall) {
  const Value a = int_range(0, 1);
  const Value b = atom_carrier(2);
  for (const auto& p : builtin_properties()) {
    if (estimated_size(p.typing.type(), std::vector{a}) > 4096) continue;
    const FiniteSet all = realize(p.typing.type(), std::vector{a});
    for (const auto& f : enumerate_bijections(a, b)) {
      for (const auto& s : all.elements()) {
        const Value moved = transport(s, p.typing, std::vector{a}, std::vector{f});
        EXPECT_EQ(evaluate(p.formula, p.typing, std::vector{a}, s), evaluate(p.formula, p.typing, std::vector{b}, moved))
            << p.name;
      }
    }
  }
}

TEST(Rename, Examples) {
  const Formula refl = fragments::reflexive(sym("s"), set("X1"));
  const Formula primed = rename_formula(refl, {{"s", "s'"}, {"X1", "X1'"}});
  EXPECT_EQ(primed, fragments::reflexive(sym("s'"), set("X1'")));
  EXPECT_EQ(rename_formula(refl, {}), refl);
  EXPECT_EQ(rename_formula(primed, {{"s'", "s"}, {"X1'", "X1"}}), refl);

  // Evaluating the renamed formula against the renamed binding changes nothing.
  const Value s = Value::set({pair(num(0), num(0))});
  for (int n = 0; n <= 2; ++n) {
    EXPECT_EQ(evaluate(primed, {{"X1'", int_range(0, n - 1)}}, "s'", s),
              evaluate(refl, {{"X1", int_range(0, n - 1)}}, "s", s));
  }
}

TEST(Rename, CaptureAndMerging) {
  const Formula phi = all({"x"}, set("X1"), in(v("x"), sym("s")));
  try {
    rename_formula(phi, {{"s", "x"}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::CaptureDetected);
  }
  try {
    rename_formula(phi, {{"s", "X1"}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::CaptureDetected);
  }
}
