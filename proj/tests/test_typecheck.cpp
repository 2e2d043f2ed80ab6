#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "recmu/congruence.hpp"
#include "recmu/error.hpp"
#include "recmu/parse.hpp"
#include "recmu/positivity.hpp"
#include "recmu/typecheck.hpp"
#include "support.hpp"

using namespace recmu;
using namespace recmu::testing;

namespace {

ErrorCode error_of(const Context& ctx, const Term& m, const CongruenceIndex& idx) {
  try {
    infer(ctx, m, idx);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "typed: " << to_string(m);
  return ErrorCode::kUsage;
}

Term program(const std::string& relative, const EquationSystem& sys) {
  return parse_program(read_text(corpus_dir() + "/" + relative), sys.atoms());
}

std::vector<Type> small_types_of(const EquationSystem& sys) {
  std::vector<Type> out = leaves_of(sys);
  std::vector<Type> base = out;
  for (const auto& a : base) {
    for (const auto& b : base) out.push_back(Type::arrow(a, b));
  }
  out.push_back(Type::bottom());
  return out;
}

}  // namespace

TEST(Typecheck, Identity) {
  CongruenceIndex idx(EquationSystem{});
  EXPECT_EQ(infer({}, parse_term("\\x:X. x"), idx), parse_type("X -> X"));
  EXPECT_EQ(infer({}, parse_term("\\f:X -> X. \\x:X. f (f x)"), idx),
            parse_type("(X -> X) -> X -> X"));
}

TEST(Typecheck, SelfApplicationUnderDelta) {
  auto sys = corpus_system("systems/delta.eqs");
  CongruenceIndex idx(sys);
  Term delta = parse_term("\\x:X. x x");
  Type t = Type::atom("T");
  EXPECT_TRUE(check({}, delta, Type::var("X"), idx));
  EXPECT_TRUE(check({}, Term::app(delta, delta), t, idx));
}

TEST(Typecheck, EveryTermTypableUnderOmega) {
  auto sys = corpus_system("systems/omega.eqs");
  CongruenceIndex idx(sys);
  Context ctx = Context{}.with_lambda("y", Type::var("X"));
  for (const char* src : {"\\x:X. x x", "(\\x:X. x x) (\\x:X. x x)", "\\x:X. \\z:X. z x (x z)",
                          "y y y", "\\x:X. y (x y) x"}) {
    EXPECT_TRUE(check(ctx, parse_term(src), Type::var("X"), idx)) << src;
  }
}

TEST(Typecheck, InfTermsHaveTypeNatToBool) {
  auto sys = corpus_system("numerals/nat_bool.eqs");
  CongruenceIndex idx(sys);
  Type want = parse_type("Nat -> Bool");
  for (int n = 1; n <= 3; ++n) {
    Term t = program("numerals/inf" + std::to_string(n) + ".term", sys);
    EXPECT_TRUE(check({}, t, want, idx)) << n;
  }
}

TEST(Typecheck, MuAndNamedTerms) {
  CongruenceIndex idx(EquationSystem{});
  Context ctx = Context{}.with_lambda("x", Type::var("X"));
  EXPECT_EQ(infer(ctx, parse_term("mu a:X. [a] x"), idx), Type::var("X"));
  // Peirce's law.
  Term peirce = parse_term("\\f:(X -> Y) -> X. mu a:X. [a] (f (\\x:X. mu b:Y. [a] x))");
  EXPECT_EQ(infer({}, peirce, idx), parse_type("((X -> Y) -> X) -> X"));
  // A free mu-variable a : ~X.
  Context with_a = ctx.with_mu("a", Type::var("X"));
  EXPECT_EQ(infer(with_a, parse_term("[a] x"), idx), Type::bottom());
}

TEST(Typecheck, ErrorCodes) {
  CongruenceIndex idx(EquationSystem{});
  Context ctx = Context{}.with_lambda("x", Type::var("X")).with_lambda("f", parse_type("X -> Y"));
  EXPECT_EQ(error_of(ctx, parse_term("z"), idx), ErrorCode::kUnboundVariable);
  EXPECT_EQ(error_of(ctx, parse_term("x x"), idx), ErrorCode::kNotAFunctionType);
  EXPECT_EQ(error_of(ctx, parse_term("f f"), idx), ErrorCode::kArgumentTypeMismatch);
  EXPECT_EQ(error_of(ctx, parse_term("mu a:X. x"), idx), ErrorCode::kMuBodyNotBottom);
  EXPECT_EQ(error_of(ctx, parse_term("mu a:X. [a] (f x)"), idx),
            ErrorCode::kNamedTermTypeMismatch);
  EXPECT_EQ(error_of(ctx, parse_term("[b] x"), idx), ErrorCode::kUnboundVariable);
}

TEST(Typecheck, ErrorMessagesNameTheTypes) {
  CongruenceIndex idx(corpus_system("systems/delta.eqs"));
  Context ctx = Context{}.with_lambda("f", parse_type("X -> T", {"T"})).with_lambda("g", Type::atom("T"));
  try {
    infer(ctx, parse_term("f g"), idx);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kArgumentTypeMismatch);
    std::string msg = e.what();
    EXPECT_NE(msg.find("X"), std::string::npos) << msg;
    EXPECT_NE(msg.find("T"), std::string::npos) << msg;
  }
}

TEST(Typecheck, VariableCycleIsNotAFunction) {
  CongruenceIndex idx(corpus_system("systems/var_cycle.eqs"));
  Context ctx = Context{}.with_lambda("x", Type::var("X"));
  EXPECT_EQ(error_of(ctx, parse_term("x x"), idx), ErrorCode::kNotAFunctionType);
}

TEST(Typecheck, CongruenceFoldedIntoApplication) {
  // f : X, X = X -> T applied to itself requires unfolding the head.
  auto sys = corpus_system("systems/delta.eqs");
  CongruenceIndex idx(sys);
  Context ctx = Context{}.with_lambda("f", Type::var("X"));
  EXPECT_EQ(infer(ctx, parse_term("f f"), idx), Type::atom("T"));
  // Argument accepted up to the congruence.
  Context ctx2 = ctx.with_lambda("g", parse_type("(X -> T) -> T", {"T"}));
  EXPECT_TRUE(check(ctx2, parse_term("f g"), Type::atom("T"), idx));
}

TEST(Context, FromBindingsSplitsByUse) {
  auto bindings = parse_context("x : X\na : ~X\n");
  Context ctx = Context::from_bindings(bindings, parse_term("mu b:X. [a] x"));
  ASSERT_NE(ctx.lambda("x"), nullptr);
  ASSERT_NE(ctx.mu("a"), nullptr);
  EXPECT_EQ(*ctx.mu("a"), Type::var("X"));
  EXPECT_EQ(ctx.lambda("a"), nullptr);
  // A mu-variable must be declared at a negated type.
  auto bad = parse_context("a : X\n");
  EXPECT_THROW(Context::from_bindings(bad, parse_term("mu b:X. [a] (mu c:X. [b] (\\y:X. y))")),
               Error);
}

TEST(Context, Persistent) {
  Context base = Context{}.with_lambda("x", Type::var("X"));
  Context ext = base.with_lambda("x", Type::var("Y"));
  EXPECT_EQ(*base.lambda("x"), Type::var("X"));
  EXPECT_EQ(*ext.lambda("x"), Type::var("Y"));
  EXPECT_EQ(ext.lambda_bindings().size(), 1u);
}

TEST(SubjectReduction, ProbeOnSamples) {
  auto sys = corpus_system("numerals/nat_bool.eqs");
  CongruenceIndex idx(sys);
  Term t = program("numerals/inf2_3.term", sys);
  auto chain = subject_reduction_probe({}, t, idx, 50);
  ASSERT_GT(chain.size(), 1u);
  EXPECT_EQ(chain.front().term, t);
  for (const auto& j : chain) EXPECT_TRUE(idx.decide(j.type, Type::var("Bool")));
}

TEST(SubjectReduction, MuRedexWithFoldedArrow) {
  // The mu binder carries a variable that only unfolds to an arrow.
  auto sys = corpus_system("systems/delta.eqs");
  CongruenceIndex idx(sys);
  Context ctx = Context{}.with_lambda("y", Type::var("X"));
  Term t = parse_term("(mu a:X. [a] y) y");
  auto chain = subject_reduction_probe(ctx, t, idx, 10);
  ASSERT_GE(chain.size(), 2u);
}

namespace {

struct RandomTyped {
  Term term;
  Context ctx;
  Type type;
};

RandomTyped random_typed(const CongruenceIndex& idx, std::mt19937& rng, bool with_mu,
                         const std::vector<Type>& types) {
  TermGenerator gen(idx, rng, types, with_mu);
  std::uniform_int_distribution<std::size_t> pick(0, types.size() - 1);
  Type t = types[pick(rng)];
  Term m = gen.generate(t, 0);
  return {m, gen.context(), t};
}

}  // namespace

TEST(SubjectReduction, GeneratedTermsAreTypable) {
  for (const char* path : {"systems/case1.eqs", "systems/delta.eqs", "numerals/nat_bool.eqs"}) {
    auto sys = corpus_system(path);
    CongruenceIndex idx(sys);
    std::mt19937 rng(47);
    auto types = small_types_of(sys);
    for (int i = 0; i < 100; ++i) {
      auto r = random_typed(idx, rng, true, types);
      EXPECT_TRUE(check(r.ctx, r.term, r.type, idx)) << path << ": " << to_string(r.term);
    }
  }
}

TEST(SubjectReduction, RandomTerms) {
  std::size_t reducible = 0;
  for (const char* path : {"systems/case1.eqs", "systems/case4.eqs", "systems/delta.eqs",
                           "systems/omega.eqs", "numerals/nat_bool.eqs"}) {
    auto sys = corpus_system(path);
    CongruenceIndex idx(sys);
    std::mt19937 rng(53);
    auto types = small_types_of(sys);
    for (int i = 0; i < 60; ++i) {
      auto r = random_typed(idx, rng, i % 2 == 0, types);
      std::vector<Judgment> chain;
      ASSERT_NO_THROW(chain = subject_reduction_probe(r.ctx, r.term, idx, 20))
          << path << ": " << to_string(r.term);
      if (chain.size() > 1) ++reducible;
    }
  }
  EXPECT_GT(reducible, 50u);
}

TEST(TypingProperties, UniqueUpToCongruenceUnderShuffledInterning) {
  auto sys = corpus_system("systems/case4.eqs");
  CongruenceIndex plain(sys);
  std::mt19937 rng(59);
  auto types = small_types_of(sys);
  // A second index that saw many extra types, interned in shuffled order.
  CongruenceIndex shuffled(sys);
  std::vector<Type> extra;
  for (int i = 0; i < 200; ++i) extra.push_back(random_type_upto(rng, leaves_of(sys), 9));
  std::shuffle(extra.begin(), extra.end(), rng);
  for (const auto& t : extra) shuffled.intern(t);
  for (int i = 0; i < 100; ++i) {
    auto r = random_typed(plain, rng, true, types);
    Type a = infer(r.ctx, r.term, plain);
    Type b = infer(r.ctx, r.term, shuffled);
    EXPECT_TRUE(plain.decide(a, b));
    EXPECT_TRUE(shuffled.decide(a, b));
    EXPECT_TRUE(plain.decide(a, r.type));
  }
}

TEST(TypingProperties, Weakening) {
  auto sys = corpus_system("systems/case1.eqs");
  CongruenceIndex idx(sys);
  std::mt19937 rng(61);
  auto types = small_types_of(sys);
  for (int i = 0; i < 100; ++i) {
    auto r = random_typed(idx, rng, true, types);
    Type a = infer(r.ctx, r.term, idx);
    Context wider = r.ctx.with_lambda("unused_w", Type::var("X1")).with_mu("unused_m", Type::var("Y"));
    EXPECT_TRUE(idx.decide(a, infer(wider, r.term, idx)));
  }
}

TEST(TypingProperties, SubstitutionKeepsType) {
  auto sys = corpus_system("numerals/nat_bool.eqs");
  CongruenceIndex idx(sys);
  std::mt19937 rng(67);
  auto types = small_types_of(sys);
  int done = 0;
  for (int i = 0; i < 200 && done < 100; ++i) {
    TermGenerator gen(idx, rng, types, true);
    Type t = types[i % types.size()];
    Term m = gen.generate(t, 0);
    if (gen.free_lambda.empty()) continue;
    ContextBinding x = gen.free_lambda.front();
    // N is generated by the same generator, so the free names stay consistent.
    Term n = gen.generate(x.type, 1);
    Context ctx = gen.context();
    Term mn = subst(m, x.name, n);
    EXPECT_TRUE(idx.decide(infer(ctx, mn, idx), t)) << to_string(m) << " [" << x.name
                                                    << " := " << to_string(n) << "]";
    ++done;
  }
  EXPECT_GE(done, 50);
}
