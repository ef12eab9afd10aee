#pragma once

// CNF clauses and the clausifier: negation normal form, formula-level
// distribution with tautology deletion, subformula naming past a size
// threshold, prenexing (existentials hoisted first among independent
// quantifiers, to keep Skolem arities low), Skolemization, and matrix
// distribution.  Skolem symbols are sk0, sk1, ... and naming predicates
// df0, df1, ..., both with per-problem counters.

#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "revline/model.hpp"
#include "revline/syntax.hpp"

namespace revline {

struct Literal {
  bool positive = true;
  std::string pred;
  std::vector<Term> args;

  bool operator==(const Literal& o) const {
    return positive == o.positive && pred == o.pred && args == o.args;
  }
  bool complements(const Literal& o) const {
    return positive != o.positive && pred == o.pred && args == o.args;
  }
};

std::string to_string(const Literal& l);
int symbol_count(const Literal& l);

struct InputProv {
  std::string name;  // axiom name, or "~goal" for negated-goal clauses
};
struct ResolveProv {
  int parent1 = -1, parent2 = -1;
  int lit1 = -1, lit2 = -1;
  Substitution mgu;
};
struct FactorProv {
  int parent = -1;
  int lit1 = -1, lit2 = -1;
  Substitution mgu;
};
using Provenance = std::variant<InputProv, ResolveProv, FactorProv>;

struct Clause {
  int id = -1;
  std::vector<Literal> literals;  // duplicate-free, creation order preserved
  Provenance prov;
  int weight = 0;

  bool empty() const { return literals.empty(); }
  bool is_input() const { return std::holds_alternative<InputProv>(prov); }
};

bool is_tautology(const std::vector<Literal>& lits);
std::vector<std::string> clause_vars(const Clause& c);  // first-occurrence order

// Canonical variable name sequence used when clauses are normalized:
// L, M, N, R, S, T, X, Y, Z, W, V0, V1, ...
std::string canonical_var(size_t i);

// Deduplicates literals (keeping first occurrences), renames variables in
// first-occurrence order to the canonical sequence, computes the weight.
Clause make_clause(int id, std::vector<Literal> lits, Provenance prov);

// Renames the variables of c so they avoid `taken`, walking the canonical
// sequence.  Both the prover and the independent proof checker rely on this
// exact scheme when standardizing a resolution partner apart.
Clause rename_apart(const Clause& c, const std::set<std::string>& taken);

std::string to_string(const Clause& c);

struct ClausifyResult {
  std::vector<Clause> clauses;
  Signature sig;          // input signature extended with introduced symbols
  ExtraSymbols introduced;  // Skolem functions/constants and naming predicates
};

// Clausifies axioms plus the negation of the goal (when present).  All
// formulas must be closed and free of defined predicates.
ClausifyResult clausify(const std::vector<std::pair<std::string, Formula>>& axioms,
                        const std::optional<Formula>& goal, const Signature& sig,
                        const std::set<std::string>& defined_names = {});

}  // namespace revline
