#include <gtest/gtest.h>

#include "gcert/error.hpp"
#include "gcert/laws.hpp"
#include "support/corpus.hpp"

namespace gcert {
namespace {

using testing::Rng;

GroupLaw law(const char* text) { return parse_law(text); }

Permutation random_permutation(Rng& rng, std::size_t degree) {
  auto all = symmetric_group(degree);
  return all[rng() % all.size()];
}

GroupLaw random_law(Rng& rng, std::size_t arity, std::size_t max_length) {
  return GroupLaw(testing::random_word(rng, arity, 1 + rng() % max_length));
}

TEST(ParseLaw, ArityAndFormat) {
  GroupLaw c = law("x1 x2 X1 X2");
  EXPECT_EQ(c.arity(), 2u);
  EXPECT_EQ(c.length(), 4u);
  EXPECT_EQ(c, commutator_law());
  EXPECT_EQ(format_law(c), "x1 x2 X1 X2");
  EXPECT_EQ(parse_law(format_law(c)), c);
  EXPECT_EQ(parse_law("x1 x2", 4).arity(), 4u);
  EXPECT_THROW(parse_law("x3", 2), Error);
  EXPECT_TRUE(law("x1 X1").is_degenerate());
  EXPECT_TRUE(law("x1^0").is_degenerate());
  EXPECT_EQ(law("x1^0").arity(), 1u);
}

TEST(ParseLaw, Brackets) {
  EXPECT_EQ(law("[x1,x2]"), commutator_law());
  EXPECT_EQ(law("[x1^2, x2^2]"), law("x1 x1 x2 x2 X1 X1 X2 X2"));
  EXPECT_EQ(law("[x1^2, x2^2]"), commutator_of_laws(power_law(2)));
  EXPECT_EQ(law("[[x1,x2],[x3,x4]]"), nested_commutator_law(2));
  EXPECT_EQ(law("[x1, x2]^2"), law("x1 x2 X1 X2 x1 x2 X1 X2"));
  EXPECT_EQ(law("[x1, x2]^-1"), law("x2 x1 X2 X1"));
  EXPECT_EQ(law("x3 [x1, x2] X3"), law("x3 x1 x2 X1 X2 X3"));
  for (const char* bad : {"[x1, x2", "[x1 x2]", "x1]", "[x1, x2]^", "[x1, x2, x3]"}) {
    EXPECT_THROW(law(bad), Error) << bad;
  }
}

TEST(EvalLaw, Examples) {
  FreeGroupRealization f2{2};
  std::vector<Word> ab{parse_word("a", 2), parse_word("b", 2)};
  EXPECT_EQ(eval_law(commutator_law(), std::span<const Word>(ab), f2), parse_word("abAB", 2));

  PermutationRealization s3(3);
  std::vector<Permutation> cycle{Permutation::from_cycles(3, {{0, 1, 2}})};
  EXPECT_EQ(eval_law(power_law(3), std::span<const Permutation>(cycle), s3), s3.identity());

  PermutationRealization s4(4);
  std::vector<Permutation> commuting{Permutation::from_cycles(4, {{0, 1}}),
                                     Permutation::from_cycles(4, {{2, 3}})};
  EXPECT_EQ(eval_law(commutator_law(), std::span<const Permutation>(commuting), s4), s4.identity());

  EXPECT_THROW(eval_law(commutator_law(), std::span<const Permutation>(cycle), s3), Error);
}

TEST(Permutation, ValidatesAndComposes) {
  EXPECT_THROW(Permutation({0, 0, 1}), Error);
  EXPECT_THROW(Permutation({0, 3, 1}), Error);
  EXPECT_THROW(PermutationRealization(9), Error);
  PermutationRealization s3(3);
  Permutation p = Permutation::from_cycles(3, {{0, 1}});
  Permutation q = Permutation::from_cycles(3, {{1, 2}});
  // Right factor first: (pq)(1) = p(q(1)) = p(2) = 2.
  EXPECT_EQ(s3.multiply(p, q)(1), 2);
  EXPECT_EQ(s3.multiply(p, s3.invert(p)), s3.identity());
  EXPECT_EQ(symmetric_group(4).size(), 24u);
}

TEST(ComposeLaws, Examples) {
  GroupLaw c = compose_laws(commutator_law(), power_law(2));
  EXPECT_EQ(c.arity(), 2u);
  EXPECT_EQ(c, law("x1 x1 x2 x2 X1 X1 X2 X2"));

  GroupLaw degenerate = compose_laws(power_law(5), law("x1 X1"));
  EXPECT_TRUE(degenerate.is_degenerate());

  EXPECT_EQ(compose_laws(power_law(2), power_law(3)), power_law(6));
  EXPECT_EQ(compose_laws(commutator_law(), commutator_law()).arity(), 4u);
}

TEST(ComposeLaws, LengthCap) {
  EXPECT_THROW(compose_laws(power_law(1000), power_law(1000), 999'999), Error);
  EXPECT_NO_THROW(compose_laws(power_law(1000), power_law(1000), 1'000'000));
}

TEST(FiniteIndexLaw, Examples) {
  EXPECT_EQ(finite_index_law(commutator_law(), 2), law("x1 x1 x2 x2 X1 X1 X2 X2"));
  EXPECT_EQ(finite_index_law(power_law(7), 1), power_law(7));
  GroupLaw six = finite_index_law(commutator_law(), 3);
  EXPECT_EQ(six, law("x1^6 x2^6 x1^-6 x2^-6"));
  EXPECT_LE(six.length(), 6u * commutator_law().length());
}

TEST(FiniteIndexLaw, OverflowPastCap) {
  try {
    finite_index_law(commutator_law(), 12);  // 12! = 479001600
    FAIL() << "expected Overflow";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Overflow);
  }
  EXPECT_THROW(finite_index_law(commutator_law(), 40), Error);
  EXPECT_NO_THROW(finite_index_law(commutator_law(), 8));  // 8! * 4 = 161280
}

TEST(CommutatorOfLaws, Examples) {
  GroupLaw meta = commutator_of_laws(commutator_law());
  EXPECT_EQ(meta.arity(), 4u);
  EXPECT_EQ(meta, law("x1 x2 X1 X2 x3 x4 X3 X4 x2 x1 X2 X1 x4 x3 X4 X3"));
  EXPECT_EQ(commutator_of_laws(power_law(2)), law("x1 x1 x2 x2 X1 X1 X2 X2"));
  EXPECT_TRUE(commutator_of_laws(law("x1 X1")).is_degenerate());
}

TEST(NestedCommutatorLaw, Examples) {
  EXPECT_EQ(nested_commutator_law(1), commutator_law());
  EXPECT_EQ(nested_commutator_law(1).length(), 4u);
  EXPECT_EQ(nested_commutator_law(2), commutator_of_laws(commutator_law()));
  EXPECT_EQ(nested_commutator_law(2).length(), 16u);
  EXPECT_EQ(nested_commutator_law(3).arity(), 8u);
  EXPECT_EQ(nested_commutator_law(3).length(), 64u);
  EXPECT_THROW(nested_commutator_law(11), Error);  // 4^11 > 10^6
}

TEST(CheckLawOnBall, Examples) {
  PermutationRealization s3(3);
  std::vector<Permutation> gens{Permutation::from_cycles(3, {{0, 1}}),
                                Permutation::from_cycles(3, {{0, 1, 2}})};
  const GroupLaw squares = law("x1 x1 x2 x2 X1 X1 X2 X2");
  auto ball = enumerate_elements(s3, std::span<const Permutation>(gens), 3);
  ASSERT_EQ(ball.size(), 6u);
  EXPECT_TRUE(std::holds_alternative<Holds>(
      check_law_on_ball(s3, std::span<const Permutation>(gens), squares, 3)));
  std::size_t tuples = 0;
  for (const auto& x : symmetric_group(3)) {
    for (const auto& y : symmetric_group(3)) {
      std::vector<Permutation> tuple{x, y};
      EXPECT_EQ(eval_law(squares, std::span<const Permutation>(tuple), s3), s3.identity());
      ++tuples;
    }
  }
  EXPECT_EQ(tuples, 36u);

  FreeGroupRealization f2{2};
  std::vector<Word> ab{parse_word("a", 2), parse_word("b", 2)};
  auto r = check_law_on_ball(f2, std::span<const Word>(ab), commutator_law(), 1);
  ASSERT_TRUE(std::holds_alternative<Counterexample<Word>>(r));
  EXPECT_EQ(std::get<Counterexample<Word>>(r).tuple, ab);

  EXPECT_TRUE(std::holds_alternative<Holds>(
      check_law_on_ball(f2, std::span<const Word>(ab), law("x1 X1"), 4)));
}

TEST(CheckLawOnBall, ElementCap) {
  FreeGroupRealization f2{2};
  std::vector<Word> ab{parse_word("a", 2), parse_word("b", 2)};
  EXPECT_THROW(check_law_on_ball(f2, std::span<const Word>(ab), commutator_law(), 6, 100), Error);
}

TEST(CheckLawOnBall, CyclicGroupIsAbelian) {
  PermutationRealization s6(6);
  std::vector<Permutation> gens{Permutation::from_cycles(6, {{0, 1, 2, 3, 4, 5}})};
  auto ball = enumerate_elements(s6, std::span<const Permutation>(gens), 3);
  ASSERT_EQ(ball.size(), 6u);
  EXPECT_TRUE(std::holds_alternative<Holds>(
      check_law_on_ball(s6, std::span<const Permutation>(gens), commutator_law(), 3)));
  for (const auto& x : ball) {
    for (const auto& y : ball) {
      std::vector<Permutation> tuple{x, y};
      EXPECT_EQ(eval_law(commutator_law(), std::span<const Permutation>(tuple), s6), s6.identity());
    }
  }
}

// The first counterexample reported must be the lexicographically least
// violating tuple, whether or not the commutator factoring applies.
TEST(CheckLawOnBall, CounterexampleIsFirstInOrder) {
  Rng rng(21);
  PermutationRealization s4(4);
  for (int i = 0; i < 200; ++i) {
    std::vector<Permutation> gens{random_permutation(rng, 4), random_permutation(rng, 4)};
    GroupLaw w = i % 2 ? commutator_of_laws(random_law(rng, 1, 3)) : random_law(rng, 2, 6);
    auto ball = enumerate_elements(s4, std::span<const Permutation>(gens), 2);
    auto result = check_law_on_ball(s4, std::span<const Permutation>(gens), w, 2);
    std::optional<std::vector<Permutation>> expected;
    std::vector<std::size_t> odometer(w.arity(), 0);
    while (!expected) {
      std::vector<Permutation> tuple;
      for (std::size_t k : odometer) tuple.push_back(ball[k]);
      if (eval_law(w, std::span<const Permutation>(tuple), s4) != s4.identity()) expected = tuple;
      std::size_t k = odometer.size();
      while (k > 0 && ++odometer[k - 1] == ball.size()) odometer[--k] = 0;
      if (k == 0) break;
    }
    if (expected) {
      ASSERT_TRUE(std::holds_alternative<Counterexample<Permutation>>(result)) << format_law(w);
      EXPECT_EQ(std::get<Counterexample<Permutation>>(result).tuple, *expected) << format_law(w);
    } else {
      EXPECT_TRUE(std::holds_alternative<Holds>(result)) << format_law(w);
    }
  }
}

TEST(CheckLawOnBall, MonotoneInRadius) {
  Rng rng(22);
  PermutationRealization s5(5);
  for (int i = 0; i < 150; ++i) {
    std::vector<Permutation> gens{random_permutation(rng, 5), random_permutation(rng, 5)};
    GroupLaw w = random_law(rng, 2, 6);
    for (std::size_t r = 0; r < 3; ++r) {
      auto outer = check_law_on_ball(s5, std::span<const Permutation>(gens), w, r + 1);
      auto inner = check_law_on_ball(s5, std::span<const Permutation>(gens), w, r);
      if (std::holds_alternative<Holds>(outer)) EXPECT_TRUE(std::holds_alternative<Holds>(inner));
    }
  }
}

// eval(compose(K, Q), z) = eval(K, (eval(Q, block_1), ..., eval(Q, block_n))).
TEST(ComposeLaws, SoundOnPermutations) {
  Rng rng(23);
  for (int i = 0; i < 1000; ++i) {
    const std::size_t degree = 2 + rng() % 4;
    PermutationRealization sym(degree);
    GroupLaw outer = random_law(rng, 1 + rng() % 3, 6);
    GroupLaw inner = random_law(rng, 1 + rng() % 3, 6);
    GroupLaw composite = compose_laws(outer, inner);
    ASSERT_EQ(composite.arity(), outer.arity() * inner.arity());
    EXPECT_LE(composite.length(), outer.length() * inner.length());
    std::vector<Permutation> z;
    for (std::size_t k = 0; k < composite.arity(); ++k) z.push_back(random_permutation(rng, degree));
    std::vector<Permutation> blocks;
    for (std::size_t b = 0; b < outer.arity(); ++b) {
      std::span<const Permutation> block(z.data() + b * inner.arity(), inner.arity());
      blocks.push_back(eval_law(inner, block, sym));
    }
    EXPECT_EQ(eval_law(composite, std::span<const Permutation>(z), sym),
              eval_law(outer, std::span<const Permutation>(blocks), sym))
        << format_law(outer) << " o " << format_law(inner);
  }
}

TEST(ComposeLaws, LengthBookkeeping) {
  Rng rng(24);
  for (int i = 0; i < 1000; ++i) {
    GroupLaw outer = random_law(rng, 1 + rng() % 4, 8);
    GroupLaw inner = random_law(rng, 1 + rng() % 4, 8);
    EXPECT_LE(compose_laws(outer, inner).length(), outer.length() * inner.length());
  }
}

// The composite law holds in any extension of a K-group by a Q-group: here
// S_3 with A_3 abelian and quotient of exponent 2.
TEST(ComposeLaws, VirtualLawOnSymmetricGroups) {
  PermutationRealization s3(3);
  std::vector<Permutation> gens{Permutation::from_cycles(3, {{0, 1}}),
                                Permutation::from_cycles(3, {{0, 1, 2}})};
  EXPECT_TRUE(std::holds_alternative<Holds>(check_law_on_ball(
      s3, std::span<const Permutation>(gens), finite_index_law(commutator_law(), 2), 3)));
  EXPECT_FALSE(std::holds_alternative<Holds>(
      check_law_on_ball(s3, std::span<const Permutation>(gens), commutator_law(), 3)));
  // S_4 is solvable of derived length 3.
  PermutationRealization s4(4);
  std::vector<Permutation> g4{Permutation::from_cycles(4, {{0, 1}}),
                              Permutation::from_cycles(4, {{0, 1, 2, 3}})};
  EXPECT_TRUE(std::holds_alternative<Holds>(check_law_on_ball(
      s4, std::span<const Permutation>(g4), nested_commutator_law(3), 6)));
  EXPECT_FALSE(std::holds_alternative<Holds>(check_law_on_ball(
      s4, std::span<const Permutation>(g4), nested_commutator_law(2), 6)));
}

}  // namespace
}  // namespace gcert
