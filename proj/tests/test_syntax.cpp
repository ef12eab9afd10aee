#include <random>

#include "doctest.h"
#include "revline/parse.hpp"
#include "revline/syntax.hpp"

using namespace revline;

namespace {

Signature sig() { return Signature::corpus(); }

std::vector<DefinedPredicate> con_defs() {
  std::vector<DefinedPredicate> defs;
  defs.push_back(DefinedPredicate{
      "Con", {"l", "m"}, parse_formula("Undir(l,m) & Undir(l,rev(m))", sig())});
  return defs;
}

Formula parse(const std::string& text) { return parse_formula(text, sig()); }

const char* kCorpus[] = {
    "forall l. ~Undir(l,l)",
    "forall l. forall m. forall n. (Undir(l,m) -> Undir(l,n) | Undir(m,n))",
    "forall l. forall m. forall n. (Undir(l,m) & Undir(l,rev(m)) -> "
    "Undir(l,n) & Undir(l,rev(n)) | Undir(m,n) & Undir(m,rev(n)))",
    "forall l. forall m. (Undir(l,m) | Undir(l,rev(m)))",
    "forall l. forall m. (Undir(l,rev(m)) -> Undir(m,rev(l)))",
    "forall l. forall m. forall n. (Undir(l,m) & Undir(l,rev(m)) -> "
    "Undir(l,n) | Undir(m,n))",
    "forall l. forall m. forall n. (Undir(l,m) & Undir(l,rev(m)) -> "
    "Undir(l,n) | Undir(m,rev(n)))",
    "forall l. forall m. forall n. (Undir(l,m) & Undir(l,rev(m)) -> "
    "Undir(l,rev(n)) | Undir(m,n))",
    "forall l. forall m. forall n. (Undir(l,m) & Undir(l,rev(m)) -> "
    "Undir(l,rev(n)) | Undir(m,rev(n)))",
    "forall l. forall m. (Undir(l,m) -> Undir(m,l))",
};

}  // namespace

TEST_CASE("negation parses as implication into falsum") {
  Formula f = parse("forall l. ~Undir(l,l)");
  REQUIRE(f.kind() == Formula::Kind::Forall);
  const Formula& body = f.body();
  CHECK(body.is_negation());
  CHECK(body.left() ==
        Formula::atom("Undir", {Term::variable("l"), Term::variable("l")}));
  CHECK(body.right().kind() == Formula::Kind::Falsum);
}

TEST_CASE("arity mismatch is a parse error") {
  CHECK_THROWS_AS(parse("Undir(l)"), ParseError);
  CHECK_THROWS_AS(parse("Undir(l,m,n)"), ParseError);
}

TEST_CASE("unknown predicate and function are rejected") {
  CHECK_THROWS_AS(parse("Foo(l,m)"), ParseError);
  CHECK_THROWS_AS(parse("Undir(l, qux(m))"), ParseError);
}

TEST_CASE("variable shadowing is rejected") {
  CHECK_THROWS_AS(parse("forall l. forall l. Undir(l,l)"), ParseError);
  // sibling scopes may reuse the name
  CHECK_NOTHROW(parse("(forall l. ~Undir(l,l)) & (forall l. ~Undir(l,l))"));
}

TEST_CASE("reverse-line symmetry parses to the expected shape") {
  Formula f = parse("forall l. forall m. (Undir(l,rev(m)) -> Undir(m,rev(l)))");
  REQUIRE(f.kind() == Formula::Kind::Forall);
  REQUIRE(f.body().kind() == Formula::Kind::Forall);
  const Formula& imp = f.body().body();
  REQUIRE(imp.kind() == Formula::Kind::Implies);
  CHECK(imp.left() ==
        Formula::atom("Undir", {Term::variable("l"),
                                Term::application("rev", {Term::variable("m")})}));
}

TEST_CASE("printer output for the axioms") {
  CHECK(to_string(parse(kCorpus[3])) ==
        "forall l. forall m. (Undir(l,m) | Undir(l,rev(m)))");
  CHECK(to_string(Formula::falsum()) == "false");
  CHECK(to_string(parse(kCorpus[0])) == "forall l. ~Undir(l,l)");
}

TEST_CASE("parse of print is identity on the whole corpus") {
  for (const char* text : kCorpus) {
    Formula f = parse(text);
    CHECK(parse(to_string(f)) == f);
  }
}

TEST_CASE("biconditional desugars to both implications") {
  Formula f = parse("false <-> false");
  REQUIRE(f.kind() == Formula::Kind::And);
  CHECK(f.left().kind() == Formula::Kind::Implies);
  CHECK(f.right().kind() == Formula::Kind::Implies);
}

TEST_CASE("substitution examples") {
  Substitution s{{"n", Term::application("rev", {Term::variable("n")})}};
  Formula f = parse("Undir(m,rev(n))");
  CHECK(apply_subst(s, f) == parse("Undir(m,rev(rev(n)))"));

  CHECK(apply_subst(Substitution{}, f) == f);
}

TEST_CASE("substitution renames a binder that would capture") {
  // {l -> m} applied to forall m. Undir(l,m)
  Substitution s{{"l", Term::variable("m")}};
  Formula f = parse("forall m. Undir(l,m)");
  Formula out = apply_subst(s, f);
  REQUIRE(out.kind() == Formula::Kind::Forall);
  CHECK(out.var() == "m_1");
  CHECK(out.body() ==
        Formula::atom("Undir", {Term::variable("m"), Term::variable("m_1")}));
  // the substituted variable is free afterwards, the binder is not
  CHECK(free_vars(out) == std::set<std::string>{"m"});
}

TEST_CASE("free variable computation") {
  CHECK(free_vars(parse("Undir(l,rev(m))")) == std::set<std::string>{"l", "m"});
  CHECK(free_vars(parse(kCorpus[1])).empty());
  CHECK(free_vars(parse("forall l. Undir(l,m)")) == std::set<std::string>{"m"});
}

TEST_CASE("defined predicate expansion") {
  auto defs = con_defs();
  Formula con = parse_formula("Con(l,m)", sig(), defs);
  CHECK(expand_defs(con, defs) == parse("Undir(l,m) & Undir(l,rev(m))"));

  // the convergence form of the axiom expands to its full form
  Formula conv = parse_formula(
      "forall l. forall m. forall n. (Con(l,m) -> Con(l,n) | Con(m,n))", sig(),
      defs);
  CHECK(expand_defs(conv, defs) == parse(kCorpus[2]));

  // identity on Con-free input, idempotent in general
  Formula plain = parse(kCorpus[1]);
  CHECK(expand_defs(plain, defs) == plain);
  CHECK(expand_defs(expand_defs(conv, defs), defs) == expand_defs(conv, defs));
  CHECK(count_predicate(expand_defs(conv, defs), "Con") == 0);
}

TEST_CASE("recursive definitions are rejected") {
  std::vector<DefinedPredicate> defs;
  defs.push_back(DefinedPredicate{
      "Loop", {"l"}, Formula::atom("Loop", {Term::variable("l")})});
  CHECK_THROWS_AS(expand_defs(Formula::atom("Loop", {Term::variable("x")}), defs),
                  Error);
}

TEST_CASE("occurrence counts match the statement shapes") {
  CHECK(count_predicate(parse(kCorpus[4]), "Undir") == 2);  // SYM
  CHECK(count_predicate(parse(kCorpus[2]), "Undir") == 6);  // I.7
}

TEST_CASE("comments and whitespace are skipped") {
  Formula f = parse("forall l. # a line\n  ~Undir(l,l) # trailing\n");
  CHECK(f == parse(kCorpus[0]));
}

// property: substitution preserves arity well-formedness and the free-variable
// set comes out exactly as computed symbolically
TEST_CASE("substitution free-variable accounting on random formulas") {
  std::mt19937 rng(20240811);
  auto random_term = [&](auto&& self, int depth) -> Term {
    int pick = static_cast<int>(rng() % 4);
    if (depth <= 0 || pick < 2)
      return Term::variable(std::string(1, static_cast<char>('a' + rng() % 4)));
    return Term::application("rev", {self(self, depth - 1)});
  };
  for (int round = 0; round < 200; ++round) {
    Formula base = Formula::atom(
        "Undir", {random_term(random_term, 2), random_term(random_term, 2)});
    Formula quantified = Formula::forall("a", base);
    Substitution s;
    for (char v : {'a', 'b', 'c'})
      if (rng() % 2)
        s.insert_or_assign(std::string(1, v), random_term(random_term, 2));

    Formula out = apply_subst(s, quantified);
    // expected free vars: (free(base) \ {a} \ dom(s)) plus free vars of the
    // terms substituted for the affected variables
    std::set<std::string> expect;
    for (const std::string& v : free_vars(quantified)) {
      auto it = s.find(v);
      if (it == s.end()) {
        expect.insert(v);
      } else {
        auto tv = free_vars(it->second);
        expect.insert(tv.begin(), tv.end());
      }
    }
    CHECK(free_vars(out) == expect);
  }
}
