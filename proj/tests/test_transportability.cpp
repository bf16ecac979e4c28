#include <gtest/gtest.h>

#include "structura/transportability.hpp"

using namespace structura;
using namespace structura::build;

namespace {

PropertySpec contains_atom() {
  return PropertySpec{"contains_atom", Typification(EchelonType::pow(EchelonType::proj(1, 1)), 1), in(c(atom("a0")), sym("s")),
                      "s"};
}

std::uint64_t factorial(std::size_t n) { return n <= 1 ? 1 : n * factorial(n - 1); }

std::vector<std::string> property_names() {
  std::vector<std::string> out;
  for (const auto& p : builtin_properties()) out.push_back(p.name);
  return out;
}

std::vector<std::string> species_names() {
  std::vector<std::string> out;
  for (const auto& s : builtin_species()) out.push_back(s.name);
  return out;
}

}  // namespace

class PropertyVerdict : public ::testing::TestWithParam<std::string> {};

TEST_P(PropertyVerdict, VerifiedUpToThree) {
  const auto verdict = check_transportability(builtin_property(GetParam()), 3);
  EXPECT_TRUE(verdict.verified());
  EXPECT_EQ(verdict.bound, 3u);
  ASSERT_EQ(verdict.sizes.size(), 4u);
  for (std::size_t n = 0; n < 4; ++n) {
    EXPECT_EQ(verdict.sizes[n].sizes, std::vector<std::size_t>{n});
    if (verdict.sizes[n].method == SweepMethod::Direct) {
      EXPECT_EQ(verdict.sizes[n].maps, factorial(n));
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Builtins, PropertyVerdict, ::testing::ValuesIn(property_names()),
                         [](const auto& info) { return info.param; });

class SpeciesVerdict : public ::testing::TestWithParam<std::string> {};

TEST_P(SpeciesVerdict, AxiomVerifiedUpToThree) {
  EXPECT_TRUE(check_transportability(builtin_species(GetParam()), 3).verified());
}

INSTANTIATE_TEST_SUITE_P(Builtins, SpeciesVerdict, ::testing::ValuesIn(species_names()),
                         [](const auto& info) { return info.param; });

TEST(Counterexample, FixedAtomFailsAtTwo) {
  const auto p = contains_atom();
  EXPECT_TRUE(check_transportability(p, 1).verified());
  for (auto method : {SweepMethod::Direct, SweepMethod::ModelClosure}) {
    const auto verdict = check_transportability(p, 2, {}, {method});
    ASSERT_FALSE(verdict.verified()) << to_string(method);
    const auto& cex = *verdict.counterexample;
    EXPECT_EQ(cex.mains.size(), 1u);
    EXPECT_EQ(cex.mains[0].size(), 2u);
    EXPECT_NE(cex.holds_before, cex.holds_after);
    EXPECT_TRUE(replay(p, cex));
    // Tampering with any part breaks the replay.
    ASSERT_NE(cex.transported, cex.structure);
    auto forged = cex;
    forged.transported = cex.structure;
    EXPECT_FALSE(replay(p, forged));
    forged = cex;
    forged.holds_after = forged.holds_before;
    EXPECT_FALSE(replay(p, forged));
  }
}

TEST(Counterexample, DirectWitnessIsTheLeastStructure) {
  const auto verdict = check_transportability(contains_atom(), 2, {}, {SweepMethod::Direct});
  ASSERT_FALSE(verdict.verified());
  const auto& cex = *verdict.counterexample;
  // {} fails nothing; the first failing structure in shortlex order is {a0}.
  EXPECT_EQ(to_string(cex.structure), "{a0}");
  EXPECT_EQ(to_string(cex.transported), "{a1}");
  EXPECT_TRUE(cex.holds_before);
  EXPECT_FALSE(cex.holds_after);
}

TEST(Counterexample, ReferenceToABaseElementByValue) {
  // "(a0, a0) in s" names a base element directly: not transportable.
  const PropertySpec p{"loop_at_a0", Typification(types::rel(), 1), in(c(pair(atom("a0"), atom("a0"))), sym("s")), "s"};
  const auto verdict = check_transportability(p, 3);
  ASSERT_FALSE(verdict.verified());
  EXPECT_TRUE(replay(p, *verdict.counterexample));
  // The same property read through the auxiliary set is fine.
  const Typification aux(EchelonType::pow(EchelonType::prod(EchelonType::proj(1, 2), EchelonType::proj(2, 2))), 1,
                         {{"K", Value::set({atom("a0")})}});
  const PropertySpec fixed{"fixed", aux, some({"k"}, set("K"), all({"x"}, set("X1"), in(tup(v("x"), v("k")), sym("s")))),
                           "s"};
  EXPECT_TRUE(check_transportability(fixed, 3).verified());
}

TEST(Methods, DirectAndClosureAgree) {
  for (const auto& p : builtin_properties()) {
    if (p.name == "distributive_pair") continue;
    for (std::size_t k = 0; k <= 2; ++k) {
      const auto direct = check_transportability(p, k, {}, {SweepMethod::Direct});
      const auto closure = check_transportability(p, k, {}, {SweepMethod::ModelClosure});
      EXPECT_EQ(direct.verified(), closure.verified()) << p.name << " " << k;
    }
  }
  const auto p = contains_atom();
  for (std::size_t k = 0; k <= 3; ++k) {
    EXPECT_EQ(check_transportability(p, k, {}, {SweepMethod::Direct}).verified(),
              check_transportability(p, k, {}, {SweepMethod::ModelClosure}).verified());
  }
}

TEST(Methods, AutoPicksByRealizationSize) {
  const auto verdict = check_transportability(builtin_property("associative"), 2);
  ASSERT_EQ(verdict.sizes.size(), 3u);
  EXPECT_EQ(verdict.sizes[1].method, SweepMethod::Direct);   // 2 subsets
  EXPECT_EQ(verdict.sizes[2].method, SweepMethod::Direct);   // 256 subsets
  const auto big = check_transportability(builtin_property("associative"), 3);
  EXPECT_EQ(big.sizes[3].method, SweepMethod::ModelClosure);  // 2^27 subsets
}

TEST(Sweep, TwoMainSets) {
  const Typification t(EchelonType::pow(EchelonType::prod(EchelonType::proj(1, 2), EchelonType::proj(2, 2))), 2);
  const PropertySpec total{"total", t, all({"x"}, set("X1"), some({"y"}, set("X2"), in(tup(v("x"), v("y")), sym("s")))), "s"};
  const auto verdict = check_transportability(total, 2);
  EXPECT_TRUE(verdict.verified());
  EXPECT_EQ(verdict.sizes.size(), 9u);
  const PropertySpec pinned{"pinned", t, in(c(pair(atom("a0"), atom("a1"))), sym("s")), "s"};
  const auto bad = check_transportability(pinned, 2);
  ASSERT_FALSE(bad.verified());
  EXPECT_EQ(bad.counterexample->maps.size(), 2u);
  EXPECT_TRUE(replay(pinned, *bad.counterexample));
}

TEST(Certificates, AreReproduced) {
  Species yes = builtin_species("graph");
  EXPECT_TRUE(certificate_holds(yes));
  yes.certificate = Certificate{3, true};
  EXPECT_TRUE(certificate_holds(yes));
  yes.certificate = Certificate{3, false};
  EXPECT_FALSE(certificate_holds(yes));

  const auto p = contains_atom();
  Species no{"contains_atom", p.typing, p.formula, "s", Certificate{2, false}};
  EXPECT_TRUE(certificate_holds(no));
  no.certificate = Certificate{2, true};
  EXPECT_FALSE(certificate_holds(no));
}

TEST(Limits, BoundBeyondBijectionLimit) {
  Limits limits;
  try {
    check_transportability(builtin_property("reflexive"), limits.max_bijection_base + 1, limits);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SizeExceeded);
  }
  limits.max_bijection_base = 2;
  EXPECT_THROW(check_transportability(builtin_property("reflexive"), 3, limits), Error);
  EXPECT_TRUE(check_transportability(builtin_property("reflexive"), 2, limits).verified());
}
