#include "revline/syntax.hpp"

#include <algorithm>
#include <sstream>

namespace revline {

// ---------------------------------------------------------------------------
// Signature

Signature Signature::corpus() {
  Signature sig;
  sig.predicates = {{"Undir", 2}, {"DiPt", 2}, {"DiLn", 2},
                    {"LApt", 2},  {"LCon", 2}};
  sig.functions = {{"rev", 1}, {"ln", 2}, {"pt", 2}, {"par", 2}};
  return sig;
}

void Signature::add_constant(const std::string& name) {
  if (knows(name)) throw Error("signature: duplicate symbol '" + name + "'");
  constants.insert(name);
}

void Signature::add_function(const std::string& name, int arity) {
  if (knows(name)) throw Error("signature: duplicate symbol '" + name + "'");
  if (arity < 0) throw Error("signature: negative arity for '" + name + "'");
  functions[name] = arity;
}

void Signature::add_predicate(const std::string& name, int arity) {
  if (knows(name)) throw Error("signature: duplicate symbol '" + name + "'");
  if (arity < 0) throw Error("signature: negative arity for '" + name + "'");
  predicates[name] = arity;
}

void Signature::validate() const {
  for (const auto& [name, arity] : predicates) {
    if (arity < 0) throw Error("signature: negative arity for '" + name + "'");
    if (functions.count(name) || constants.count(name))
      throw Error("signature: '" + name + "' declared with two kinds");
  }
  for (const auto& [name, arity] : functions) {
    if (arity < 0) throw Error("signature: negative arity for '" + name + "'");
    if (constants.count(name))
      throw Error("signature: '" + name + "' declared with two kinds");
  }
  auto undir = predicates.find("Undir");
  if (undir == predicates.end() || undir->second != 2)
    throw Error("signature: Undir/2 is required");
  auto rev = functions.find("rev");
  if (rev == functions.end() || rev->second != 1)
    throw Error("signature: rev/1 is required");
}

// ---------------------------------------------------------------------------
// Terms

Term Term::variable(std::string name) {
  return Term(Kind::Variable, std::move(name), {});
}

Term Term::constant(std::string name) {
  return Term(Kind::Constant, std::move(name), {});
}

Term Term::application(std::string fn, std::vector<Term> args) {
  return Term(Kind::Application, std::move(fn), std::move(args));
}

bool Term::operator==(const Term& o) const {
  return kind_ == o.kind_ && name_ == o.name_ && args_ == o.args_;
}

int Term::compare(const Term& o) const {
  if (kind_ != o.kind_) return kind_ < o.kind_ ? -1 : 1;
  if (int c = name_.compare(o.name_)) return c < 0 ? -1 : 1;
  if (args_.size() != o.args_.size())
    return args_.size() < o.args_.size() ? -1 : 1;
  for (size_t i = 0; i < args_.size(); ++i)
    if (int c = args_[i].compare(o.args_[i])) return c;
  return 0;
}

std::string to_string(const Term& t) {
  if (t.kind() != Term::Kind::Application) return t.name();
  std::string out = t.name() + "(";
  for (size_t i = 0; i < t.args().size(); ++i) {
    if (i) out += ",";
    out += to_string(t.args()[i]);
  }
  return out + ")";
}

int symbol_count(const Term& t) {
  int n = 1;
  for (const Term& a : t.args()) n += symbol_count(a);
  return n;
}

// ---------------------------------------------------------------------------
// Formulas

Formula Formula::atom(std::string pred, std::vector<Term> args) {
  Formula f(Kind::Atom);
  f.name_ = std::move(pred);
  f.terms_ = std::move(args);
  return f;
}

Formula Formula::falsum() { return Formula(Kind::Falsum); }

Formula Formula::conj(Formula l, Formula r) {
  Formula f(Kind::And);
  f.kids_.push_back(std::move(l));
  f.kids_.push_back(std::move(r));
  return f;
}

Formula Formula::disj(Formula l, Formula r) {
  Formula f(Kind::Or);
  f.kids_.push_back(std::move(l));
  f.kids_.push_back(std::move(r));
  return f;
}

Formula Formula::implies(Formula l, Formula r) {
  Formula f(Kind::Implies);
  f.kids_.push_back(std::move(l));
  f.kids_.push_back(std::move(r));
  return f;
}

Formula Formula::negation(Formula f) {
  return implies(std::move(f), falsum());
}

Formula Formula::forall(std::string var, Formula body) {
  Formula f(Kind::Forall);
  f.name_ = std::move(var);
  f.kids_.push_back(std::move(body));
  return f;
}

Formula Formula::exists(std::string var, Formula body) {
  Formula f(Kind::Exists);
  f.name_ = std::move(var);
  f.kids_.push_back(std::move(body));
  return f;
}

bool Formula::operator==(const Formula& o) const {
  return kind_ == o.kind_ && name_ == o.name_ && terms_ == o.terms_ &&
         kids_ == o.kids_;
}

// Printing with minimal parentheses.  Precedence, loosest first:
// <-> (1), -> (2), | (3), & (4), ~ (5); atoms and quantifiers are primary,
// but a quantifier appearing as an operand is always parenthesized because
// its scope extends maximally to the right.
namespace {

constexpr int kPrecImp = 2;
constexpr int kPrecOr = 3;
constexpr int kPrecAnd = 4;
constexpr int kPrecNeg = 5;
constexpr int kPrecPrimary = 6;

void print_formula(const Formula& f, int parent_prec, bool rightmost,
                   std::string& out);

void print_operand(const Formula& f, int prec, bool rightmost,
                   std::string& out) {
  bool quantified = f.kind() == Formula::Kind::Forall ||
                    f.kind() == Formula::Kind::Exists;
  if (quantified) {
    out += "(";
    print_formula(f, 0, true, out);
    out += ")";
  } else {
    print_formula(f, prec, rightmost, out);
  }
}

void print_formula(const Formula& f, int parent_prec, bool rightmost,
                   std::string& out) {
  switch (f.kind()) {
    case Formula::Kind::Falsum:
      out += "false";
      return;
    case Formula::Kind::Atom: {
      out += f.pred();
      if (!f.args().empty()) {
        out += "(";
        for (size_t i = 0; i < f.args().size(); ++i) {
          if (i) out += ",";
          out += to_string(f.args()[i]);
        }
        out += ")";
      }
      return;
    }
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: {
      out += f.kind() == Formula::Kind::Forall ? "forall " : "exists ";
      out += f.var();
      out += ". ";
      const Formula& b = f.body();
      bool need_parens = b.kind() == Formula::Kind::And ||
                         b.kind() == Formula::Kind::Or ||
                         (b.kind() == Formula::Kind::Implies && !b.is_negation());
      if (need_parens) {
        out += "(";
        print_formula(b, 0, true, out);
        out += ")";
      } else {
        print_formula(b, 0, true, out);
      }
      return;
    }
    case Formula::Kind::Implies: {
      if (f.is_negation()) {
        out += "~";
        const Formula& a = f.left();
        if (a.kind() == Formula::Kind::Atom ||
            a.kind() == Formula::Kind::Falsum || a.is_negation()) {
          print_formula(a, kPrecNeg, false, out);
        } else {
          out += "(";
          print_formula(a, 0, true, out);
          out += ")";
        }
        return;
      }
      bool parens = parent_prec > kPrecImp || (parent_prec == kPrecImp && !rightmost);
      if (parens) out += "(";
      print_operand(f.left(), kPrecImp + 1, false, out);
      out += " -> ";
      print_operand(f.right(), kPrecImp, true, out);  // right-associative
      if (parens) out += ")";
      return;
    }
    case Formula::Kind::Or:
    case Formula::Kind::And: {
      int prec = f.kind() == Formula::Kind::Or ? kPrecOr : kPrecAnd;
      const char* op = f.kind() == Formula::Kind::Or ? " | " : " & ";
      bool parens = parent_prec > prec;
      if (parens) out += "(";
      // left-associative: the left child may print at the same level
      print_operand(f.left(), prec, false, out);
      out += op;
      print_operand(f.right(), prec + 1, parens ? true : rightmost, out);
      if (parens) out += ")";
      return;
    }
  }
}

}  // namespace

std::string to_string(const Formula& f) {
  std::string out;
  print_formula(f, 0, true, out);
  return out;
}

std::set<std::string> free_vars(const Term& t) {
  std::set<std::string> out;
  if (t.kind() == Term::Kind::Variable) {
    out.insert(t.name());
  } else {
    for (const Term& a : t.args()) {
      auto sub = free_vars(a);
      out.insert(sub.begin(), sub.end());
    }
  }
  return out;
}

static void collect_free(const Formula& f, std::set<std::string>& bound,
                         std::set<std::string>& out) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
      for (const Term& t : f.args())
        for (const std::string& v : free_vars(t))
          if (!bound.count(v)) out.insert(v);
      return;
    case Formula::Kind::Falsum:
      return;
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: {
      bool fresh = bound.insert(f.var()).second;
      collect_free(f.body(), bound, out);
      if (fresh) bound.erase(f.var());
      return;
    }
    default:
      collect_free(f.left(), bound, out);
      collect_free(f.right(), bound, out);
      return;
  }
}

std::set<std::string> free_vars(const Formula& f) {
  std::set<std::string> bound, out;
  collect_free(f, bound, out);
  return out;
}

bool is_closed(const Formula& f) { return free_vars(f).empty(); }

int count_predicate(const Formula& f, const std::string& pred) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
      return f.pred() == pred ? 1 : 0;
    case Formula::Kind::Falsum:
      return 0;
    case Formula::Kind::Forall:
    case Formula::Kind::Exists:
      return count_predicate(f.body(), pred);
    default:
      return count_predicate(f.left(), pred) +
             count_predicate(f.right(), pred);
  }
}

// ---------------------------------------------------------------------------
// Substitution

Term apply_subst(const Substitution& s, const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Variable: {
      auto it = s.find(t.name());
      return it == s.end() ? t : it->second;
    }
    case Term::Kind::Constant:
      return t;
    case Term::Kind::Application: {
      std::vector<Term> args;
      args.reserve(t.args().size());
      for (const Term& a : t.args()) args.push_back(apply_subst(s, a));
      return Term::application(t.name(), std::move(args));
    }
  }
  throw Error("unreachable");
}

std::string fresh_name(const std::string& base,
                       const std::set<std::string>& avoid) {
  if (!avoid.count(base)) return base;
  for (int i = 1;; ++i) {
    std::string cand = base + "_" + std::to_string(i);
    if (!avoid.count(cand)) return cand;
  }
}

Formula apply_subst(const Substitution& s, const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Atom: {
      std::vector<Term> args;
      args.reserve(f.args().size());
      for (const Term& t : f.args()) args.push_back(apply_subst(s, t));
      return Formula::atom(f.pred(), std::move(args));
    }
    case Formula::Kind::Falsum:
      return f;
    case Formula::Kind::And:
      return Formula::conj(apply_subst(s, f.left()), apply_subst(s, f.right()));
    case Formula::Kind::Or:
      return Formula::disj(apply_subst(s, f.left()), apply_subst(s, f.right()));
    case Formula::Kind::Implies:
      return Formula::implies(apply_subst(s, f.left()),
                              apply_subst(s, f.right()));
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: {
      Substitution inner = s;
      inner.erase(f.var());  // the binder shadows any outer binding
      std::set<std::string> body_free = free_vars(f.body());
      bool captured = false;
      std::set<std::string> avoid;
      for (const auto& [v, t] : inner) {
        if (!body_free.count(v)) continue;
        auto tv = free_vars(t);
        avoid.insert(tv.begin(), tv.end());
        if (tv.count(f.var())) captured = true;
      }
      std::string var = f.var();
      Formula body = f.body();
      if (captured) {
        avoid.insert(body_free.begin(), body_free.end());
        var = fresh_name(f.var(), avoid);
        Substitution rename{{f.var(), Term::variable(var)}};
        body = apply_subst(rename, body);
      }
      body = apply_subst(inner, body);
      return f.kind() == Formula::Kind::Forall
                 ? Formula::forall(var, std::move(body))
                 : Formula::exists(var, std::move(body));
    }
  }
  throw Error("unreachable");
}

std::string to_string(const Substitution& s) {
  std::string out = "{";
  bool first = true;
  for (const auto& [v, t] : s) {
    if (!first) out += ", ";
    first = false;
    out += v + ":=" + to_string(t);
  }
  return out + "}";
}

// ---------------------------------------------------------------------------
// Defined predicates

namespace {

Formula expand_rec(const Formula& f,
                   const std::map<std::string, const DefinedPredicate*>& table,
                   std::set<std::string>& expanding) {
  switch (f.kind()) {
    case Formula::Kind::Atom: {
      auto it = table.find(f.pred());
      if (it == table.end()) return f;
      const DefinedPredicate& def = *it->second;
      if (expanding.count(def.name))
        throw Error("recursive definition of '" + def.name + "'");
      if (f.args().size() != def.params.size())
        throw Error("defined predicate '" + def.name + "' applied to " +
                    std::to_string(f.args().size()) + " arguments, expected " +
                    std::to_string(def.params.size()));
      Substitution inst;
      for (size_t i = 0; i < def.params.size(); ++i)
        inst.insert_or_assign(def.params[i], f.args()[i]);
      expanding.insert(def.name);
      Formula out = expand_rec(apply_subst(inst, def.body), table, expanding);
      expanding.erase(def.name);
      return out;
    }
    case Formula::Kind::Falsum:
      return f;
    case Formula::Kind::And:
      return Formula::conj(expand_rec(f.left(), table, expanding),
                           expand_rec(f.right(), table, expanding));
    case Formula::Kind::Or:
      return Formula::disj(expand_rec(f.left(), table, expanding),
                           expand_rec(f.right(), table, expanding));
    case Formula::Kind::Implies:
      return Formula::implies(expand_rec(f.left(), table, expanding),
                              expand_rec(f.right(), table, expanding));
    case Formula::Kind::Forall:
      return Formula::forall(f.var(), expand_rec(f.body(), table, expanding));
    case Formula::Kind::Exists:
      return Formula::exists(f.var(), expand_rec(f.body(), table, expanding));
  }
  throw Error("unreachable");
}

}  // namespace

Formula expand_defs(const Formula& f,
                    const std::vector<DefinedPredicate>& defs) {
  std::map<std::string, const DefinedPredicate*> table;
  for (const DefinedPredicate& d : defs) {
    for (const std::string& p : free_vars(d.body))
      if (std::find(d.params.begin(), d.params.end(), p) == d.params.end())
        throw Error("definition of '" + d.name + "' mentions unbound '" + p +
                    "'");
    table[d.name] = &d;
  }
  std::set<std::string> expanding;
  return expand_rec(f, table, expanding);
}

}  // namespace revline
