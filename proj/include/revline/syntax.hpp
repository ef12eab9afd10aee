#pragma once

// Terms, formulas, signatures and substitutions for the direction fragment
// of ordered affine geometry: one binary relation Undir, one construction
// rev, and whatever Skolem machinery the prover adds on top.

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace revline {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Signature

struct Signature {
  std::map<std::string, int> predicates;  // name -> arity
  std::map<std::string, int> functions;   // name -> arity
  std::set<std::string> constants;

  // The signature every corpus formula lives in: Undir/2 and rev/1 plus the
  // declared-but-unconstrained relations and constructions of the full system.
  static Signature corpus();

  bool knows(const std::string& name) const {
    return predicates.count(name) || functions.count(name) ||
           constants.count(name);
  }
  void add_constant(const std::string& name);
  void add_function(const std::string& name, int arity);
  void add_predicate(const std::string& name, int arity);

  // Names must be unique across kinds, arities non-negative, and the two
  // required symbols present.
  void validate() const;
};

// ---------------------------------------------------------------------------
// Terms

class Term {
 public:
  enum class Kind { Variable, Constant, Application };

  static Term variable(std::string name);
  static Term constant(std::string name);
  static Term application(std::string fn, std::vector<Term> args);

  Kind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  const std::vector<Term>& args() const { return args_; }

  bool operator==(const Term& o) const;
  bool operator!=(const Term& o) const { return !(*this == o); }

  // Total order used wherever determinism requires sorting terms.
  int compare(const Term& o) const;

 private:
  Term(Kind k, std::string n, std::vector<Term> a)
      : kind_(k), name_(std::move(n)), args_(std::move(a)) {}

  Kind kind_;
  std::string name_;
  std::vector<Term> args_;
};

std::string to_string(const Term& t);
int symbol_count(const Term& t);

// ---------------------------------------------------------------------------
// Formulas
//
// Negation is not a node: ~A is sugar for A -> false, and the printer
// re-sugars implications into false. <-> is parser sugar as well.

class Formula {
 public:
  enum class Kind { Atom, Falsum, And, Or, Implies, Forall, Exists };

  static Formula atom(std::string pred, std::vector<Term> args);
  static Formula falsum();
  static Formula conj(Formula l, Formula r);
  static Formula disj(Formula l, Formula r);
  static Formula implies(Formula l, Formula r);
  static Formula negation(Formula f);  // f -> false
  static Formula forall(std::string var, Formula body);
  static Formula exists(std::string var, Formula body);

  Kind kind() const { return kind_; }

  const std::string& pred() const { return name_; }       // Atom
  const std::vector<Term>& args() const { return terms_; }  // Atom
  const std::string& var() const { return name_; }         // quantifiers

  const Formula& left() const { return kids_[0]; }
  const Formula& right() const { return kids_[1]; }
  const Formula& body() const { return kids_[0]; }

  bool is_negation() const {
    return kind_ == Kind::Implies && kids_[1].kind_ == Kind::Falsum;
  }

  bool operator==(const Formula& o) const;
  bool operator!=(const Formula& o) const { return !(*this == o); }

 private:
  Formula(Kind k) : kind_(k) {}

  Kind kind_;
  std::string name_;
  std::vector<Term> terms_;
  std::vector<Formula> kids_;
};

std::string to_string(const Formula& f);

std::set<std::string> free_vars(const Term& t);
std::set<std::string> free_vars(const Formula& f);
bool is_closed(const Formula& f);

// Number of occurrences of a predicate symbol in a formula.
int count_predicate(const Formula& f, const std::string& pred);

// ---------------------------------------------------------------------------
// Substitutions

using Substitution = std::map<std::string, Term>;

Term apply_subst(const Substitution& s, const Term& t);
// Capture-avoiding: bound variables are renamed (x -> x_1, x_2, ...) when a
// substituted term would otherwise be captured.
Formula apply_subst(const Substitution& s, const Formula& f);

std::string to_string(const Substitution& s);

// First of x, x_1, x_2, ... not contained in avoid.
std::string fresh_name(const std::string& base, const std::set<std::string>& avoid);

// ---------------------------------------------------------------------------
// Defined predicates (Con and friends)

struct DefinedPredicate {
  std::string name;
  std::vector<std::string> params;
  Formula body;  // free variables of body must be a subset of params
};

// Replaces every occurrence of a defined predicate by its instantiated body.
// Definitions may reference other definitions but not cyclically.
Formula expand_defs(const Formula& f, const std::vector<DefinedPredicate>& defs);

}  // namespace revline
