#include <gtest/gtest.h>

#include "gcert/error.hpp"
#include "gcert/extension.hpp"
#include "support/corpus.hpp"

namespace gcert {
namespace {

using testing::Rng;

Word w2(const char* text) { return parse_word(text, 2); }

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::InvalidSpec;
}

FreeAutomorphism fibonacci() { return make_automorphism({w2("b"), w2("ab")}, {w2("bA"), w2("a")}); }

ExtElement random_element(Rng& rng, const ExtensionGroup& group) {
  Shift k(group.dimension());
  for (auto& x : k) x = static_cast<std::int64_t>(rng() % 5) - 2;
  return ExtElement{testing::random_word(rng, group.kernel_rank(), rng() % 7), k};
}

TEST(MakeAutomorphism, AcceptsExactInverses) {
  FreeAutomorphism phi = fibonacci();
  EXPECT_EQ(phi.apply(w2("a")), w2("b"));
  EXPECT_EQ(phi.apply_inverse(w2("b")), w2("a"));
  EXPECT_EQ(phi.apply_inverse(phi.apply(w2("abAAB"))), w2("abAAB"));
  EXPECT_NO_THROW(make_automorphism({w2("a"), w2("b")}, {w2("a"), w2("b")}));
}

TEST(MakeAutomorphism, RejectsWrongInverses) {
  EXPECT_EQ(code_of([] { make_automorphism({w2("b"), w2("ab")}, {w2("Ba"), w2("a")}); }),
            ErrorCode::NotInverse);
  EXPECT_EQ(code_of([] { make_automorphism({w2("b"), w2("ab")}, {w2("bA"), w2("b")}); }),
            ErrorCode::NotInverse);
  // a -> a^2 is not surjective, so no claimed inverse passes.
  for (const char* claim : {"a", "A", "aa", "ab", "1"}) {
    EXPECT_EQ(code_of([&] { make_automorphism({w2("aa"), w2("b")}, {w2(claim), w2("b")}); }),
              ErrorCode::NotInverse)
        << claim;
  }
  try {
    make_automorphism({w2("b"), w2("ab")}, {w2("Ba"), w2("a")});
  } catch (const Error& e) {
    const std::string message = e.what();
    EXPECT_NE(message.find("generator"), std::string::npos) << message;
  }
}

TEST(MakeAutomorphism, RandomNielsenProductsVerify) {
  Rng rng(31);
  for (int i = 0; i < 300; ++i) {
    const std::size_t rank = 1 + rng() % 3;
    FreeAutomorphism phi = testing::random_automorphism(rng, rank, rng() % 11);
    Word w = testing::random_word(rng, rank, 8);
    EXPECT_EQ(phi.apply_inverse(phi.apply(w)), w);
    EXPECT_EQ(phi.inverse().apply(phi.apply(w)), w);
    EXPECT_EQ(phi.compose(phi.inverse()), FreeAutomorphism::identity(rank));
  }
}

TEST(ExtensionGroup, RejectsNonCommutingPair) {
  FreeAutomorphism invert_all = make_automorphism({w2("A"), w2("B")}, {w2("A"), w2("B")});
  EXPECT_EQ(code_of([&] { ExtensionGroup(2, {fibonacci(), invert_all}); }), ErrorCode::NotCommuting);
  FreeAutomorphism phi = fibonacci();
  EXPECT_NO_THROW(ExtensionGroup(2, {phi, phi.compose(phi)}));
  EXPECT_THROW(ExtensionGroup(3, {phi}), Error);
}

TEST(ApplyPower, Examples) {
  ExtensionGroup e(2, {fibonacci()});
  EXPECT_EQ(e.apply_power({1}, w2("a")), w2("b"));
  EXPECT_EQ(e.apply_power({0}, w2("abAB")), w2("abAB"));
  EXPECT_EQ(e.apply_power({2}, w2("a")), w2("ab"));
  EXPECT_EQ(e.apply_power({-1}, w2("b")), w2("a"));
  EXPECT_EQ(e.apply_power({-3}, e.apply_power({3}, w2("aBab"))), w2("aBab"));
  EXPECT_EQ(code_of([&] { e.apply_power({65}, w2("a")); }), ErrorCode::ExponentCapExceeded);
  EXPECT_EQ(code_of([&] { e.apply_power({1, 0}, w2("a")); }), ErrorCode::ShiftDimensionMismatch);
}

TEST(ExtMultiply, Examples) {
  ExtensionGroup e(2, {fibonacci()});
  EXPECT_EQ(e.multiply({w2("a"), {0}}, {w2("b"), {0}}), (ExtElement{w2("ab"), {0}}));
  EXPECT_EQ(e.multiply({Word(2), {1}}, {w2("a"), {0}}), (ExtElement{w2("b"), {1}}));
  ExtElement x{w2("aB"), {3}};
  EXPECT_EQ(e.multiply(x, e.invert(x)), e.identity());
  EXPECT_EQ(e.multiply(e.invert(x), x), e.identity());
  EXPECT_EQ(e.identity(), (ExtElement{Word(2), {0}}));
}

TEST(Project, Examples) {
  EXPECT_EQ(project({w2("ab"), {0}}), (Shift{0}));
  EXPECT_EQ(project({Word(2), {2, -1}}), (Shift{2, -1}));
  ExtensionGroup e(2, {fibonacci()});
  EXPECT_EQ(project(e.commutator({w2("a"), {2}}, {w2("b"), {-1}})), (Shift{0}));
  EXPECT_TRUE(in_kernel({w2("abAB"), {0}}));
  EXPECT_FALSE(in_kernel({w2("a"), {1}}));
  EXPECT_TRUE(in_kernel(e.identity()));
}

TEST(ExtensionGroup, GroupAxiomsOnCorpus) {
  Rng rng(32);
  auto corpus = testing::standard_corpus(40, 99);
  for (int i = 0; i < 1000; ++i) {
    const auto& inst = corpus[static_cast<std::size_t>(i) % corpus.size()];
    const ExtensionGroup& e = inst.group;
    ExtElement x = random_element(rng, e);
    ExtElement y = random_element(rng, e);
    ExtElement z = random_element(rng, e);
    ASSERT_EQ(e.multiply(e.multiply(x, y), z), e.multiply(x, e.multiply(y, z))) << inst.label;
    Shift sum = project(x);
    for (std::size_t k = 0; k < sum.size(); ++k) sum[k] += project(y)[k];
    EXPECT_EQ(project(e.multiply(x, y)), sum);
    EXPECT_EQ(e.multiply(x, e.invert(x)), e.identity());
    EXPECT_TRUE(in_kernel(e.commutator(x, y)));
  }
}

// Conjugation by g restricted to the kernel has conjugation by g^-1 as its
// inverse and is a homomorphism.
TEST(ExtensionGroup, ConjugationActsByAutomorphisms) {
  Rng rng(33);
  auto corpus = testing::standard_corpus(40, 98);
  for (int i = 0; i < 400; ++i) {
    const auto& inst = corpus[static_cast<std::size_t>(i) % corpus.size()];
    const ExtensionGroup& e = inst.group;
    ExtElement g = random_element(rng, e);
    for (std::size_t gen = 0; gen < e.kernel_rank(); ++gen) {
      ExtElement x = e.kernel_element(Word::generator(e.kernel_rank(), gen));
      ExtElement y = e.conjugate(x, g);
      EXPECT_TRUE(in_kernel(y));
      EXPECT_EQ(e.conjugate(y, e.invert(g)), x);
    }
    ExtElement u = e.kernel_element(testing::random_word(rng, e.kernel_rank(), 5));
    ExtElement v = e.kernel_element(testing::random_word(rng, e.kernel_rank(), 5));
    EXPECT_EQ(e.conjugate(e.multiply(u, v), g), e.multiply(e.conjugate(u, g), e.conjugate(v, g)));
  }
}

TEST(ExtensionGroup, GeneratorCommutatorsLieInKernel) {
  for (const auto& inst : testing::standard_corpus(60, 97)) {
    for (const auto& s : inst.t.generators()) {
      for (const auto& t : inst.t.generators()) {
        EXPECT_TRUE(in_kernel(inst.group.commutator(s.element, t.element))) << inst.label;
      }
    }
  }
}

TEST(PowerCache, AgreesWithDirectPowers) {
  Rng rng(34);
  auto corpus = testing::standard_corpus(30, 96);
  for (const auto& inst : corpus) {
    PowerCache cache(inst.group);
    for (int i = 0; i < 20; ++i) {
      ExtElement x = random_element(rng, inst.group);
      ExtElement y = random_element(rng, inst.group);
      Word w = testing::random_word(rng, inst.group.kernel_rank(), 6);
      EXPECT_EQ(cache.apply(x.shift, w), inst.group.apply_power(x.shift, w));
      EXPECT_EQ(cache.multiply(x, y), inst.group.multiply(x, y));
      EXPECT_EQ(cache.invert(x), inst.group.invert(x));
    }
  }
}

TEST(GeneratingSet, Validation) {
  ExtElement a{w2("a"), {0}};
  EXPECT_EQ(code_of([] { GeneratingSet(std::vector<NamedElement>{}); }), ErrorCode::InvalidGeneratingSet);
  EXPECT_EQ(code_of([&] { GeneratingSet({{"x", a}, {"x", a}}); }), ErrorCode::InvalidGeneratingSet);
  EXPECT_EQ(code_of([&] { GeneratingSet({{"x y", a}}); }), ErrorCode::InvalidGeneratingSet);
  EXPECT_EQ(code_of([&] { GeneratingSet({{"", a}}); }), ErrorCode::InvalidGeneratingSet);
  GeneratingSet t({{"x", a}, {"t", {Word(2), {1}}}});
  EXPECT_EQ(t.name_order(), (std::vector<std::size_t>{1, 0}));
  EXPECT_EQ(t.find("t"), 1u);
  EXPECT_EQ(t.find("nope"), 2u);
}

TEST(Expressions, RoundTripAndEvaluate) {
  auto inst = testing::fibonacci_instance();
  Word expr = parse_expression("t x t^-1 x^-1", inst.t);
  EXPECT_EQ(expr.size(), 4u);
  EXPECT_EQ(format_expression(expr, inst.t), "t x t^-1 x^-1");
  EXPECT_EQ(evaluate_expression(inst.group, inst.t, expr), (ExtElement{w2("bA"), {0}}));
  EXPECT_EQ(format_expression(Word(2), inst.t), "1");
  EXPECT_EQ(parse_expression("1", inst.t), Word(2));
  EXPECT_THROW(parse_expression("t y", inst.t), Error);
}

}  // namespace
}  // namespace gcert
