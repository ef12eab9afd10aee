#include "revline/clause.hpp"

#include <algorithm>
#include <cassert>

namespace revline {

// ---------------------------------------------------------------------------
// Literals and clauses

std::string to_string(const Literal& l) {
  std::string out = l.positive ? "" : "~";
  out += l.pred;
  if (!l.args.empty()) {
    out += "(";
    for (size_t i = 0; i < l.args.size(); ++i) {
      if (i) out += ",";
      out += to_string(l.args[i]);
    }
    out += ")";
  }
  return out;
}

int symbol_count(const Literal& l) {
  int n = 1;
  for (const Term& t : l.args) n += symbol_count(t);
  return n;
}

bool is_tautology(const std::vector<Literal>& lits) {
  for (size_t i = 0; i < lits.size(); ++i)
    for (size_t j = i + 1; j < lits.size(); ++j)
      if (lits[i].complements(lits[j])) return true;
  return false;
}

std::string canonical_var(size_t i) {
  static const char* names[] = {"L", "M", "N", "R", "S", "T", "X", "Y", "Z", "W"};
  if (i < 10) return names[i];
  return "V" + std::to_string(i - 10);
}

namespace {

void collect_vars(const Term& t, std::vector<std::string>& out) {
  if (t.kind() == Term::Kind::Variable) {
    if (std::find(out.begin(), out.end(), t.name()) == out.end())
      out.push_back(t.name());
  } else {
    for (const Term& a : t.args()) collect_vars(a, out);
  }
}

std::vector<std::string> literal_vars(const std::vector<Literal>& lits) {
  std::vector<std::string> out;
  for (const Literal& l : lits)
    for (const Term& t : l.args) collect_vars(t, out);
  return out;
}

std::vector<Literal> apply_to_literals(const Substitution& s,
                                       const std::vector<Literal>& lits) {
  std::vector<Literal> out;
  out.reserve(lits.size());
  for (const Literal& l : lits) {
    Literal nl{l.positive, l.pred, {}};
    nl.args.reserve(l.args.size());
    for (const Term& t : l.args) nl.args.push_back(apply_subst(s, t));
    out.push_back(std::move(nl));
  }
  return out;
}

std::vector<Literal> dedupe_literals(std::vector<Literal> lits) {
  std::vector<Literal> out;
  for (Literal& l : lits)
    if (std::find(out.begin(), out.end(), l) == out.end())
      out.push_back(std::move(l));
  return out;
}

}  // namespace

std::vector<std::string> clause_vars(const Clause& c) {
  return literal_vars(c.literals);
}

Clause make_clause(int id, std::vector<Literal> lits, Provenance prov) {
  lits = dedupe_literals(std::move(lits));
  std::vector<std::string> vars = literal_vars(lits);
  Substitution rename;
  for (size_t i = 0; i < vars.size(); ++i)
    if (vars[i] != canonical_var(i))
      rename.insert_or_assign(vars[i], Term::variable(canonical_var(i)));
  if (!rename.empty()) lits = apply_to_literals(rename, lits);
  lits = dedupe_literals(std::move(lits));
  Clause c;
  c.id = id;
  c.literals = std::move(lits);
  c.prov = std::move(prov);
  c.weight = 0;
  for (const Literal& l : c.literals) c.weight += symbol_count(l);
  return c;
}

Clause rename_apart(const Clause& c, const std::set<std::string>& taken) {
  std::vector<std::string> vars = literal_vars(c.literals);
  Substitution rename;
  size_t next = 0;
  for (const std::string& v : vars) {
    std::string cand;
    do {
      cand = canonical_var(next++);
    } while (taken.count(cand));
    rename.insert_or_assign(v, Term::variable(cand));
  }
  Clause out = c;
  if (!rename.empty()) out.literals = apply_to_literals(rename, c.literals);
  return out;
}

std::string to_string(const Clause& c) {
  std::string out = std::to_string(c.id) + ". ";
  if (c.literals.empty()) {
    out += "false";
  } else {
    for (size_t i = 0; i < c.literals.size(); ++i) {
      if (i) out += " | ";
      out += to_string(c.literals[i]);
    }
  }
  if (const auto* in = std::get_if<InputProv>(&c.prov)) {
    out += " [input:" + in->name + "]";
  } else if (const auto* r = std::get_if<ResolveProv>(&c.prov)) {
    out += " [resolve(" + std::to_string(r->parent1) + "," +
           std::to_string(r->parent2) + ")] subst=" + to_string(r->mgu);
  } else if (const auto* f = std::get_if<FactorProv>(&c.prov)) {
    out += " [factor(" + std::to_string(f->parent) + ")] subst=" +
           to_string(f->mgu);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Clausifier

namespace {

// Distribution bounds.  A formula-clause whose naive CNF would exceed
// kEstThreshold clauses, or whose clauses would exceed kWidthThreshold
// literals, gets its widest disjuncts replaced by fresh predicates.  The
// pre-distribution guard only exists to keep degenerate inputs from blowing
// up before that pass can run.
constexpr long long kEstThreshold = 8;
constexpr int kWidthThreshold = 4;
constexpr long long kPreGuardThreshold = 20000;
constexpr long long kEstCap = 1'000'000'000;

struct NNF {
  enum class K { Lit, And, Or, Forall, Exists, Top, Bot };
  K k = K::Top;
  Literal lit;
  std::string var;
  std::vector<NNF> kids;

  bool operator==(const NNF& o) const {
    return k == o.k && lit == o.lit && var == o.var && kids == o.kids;
  }
};

NNF nnf_top() { return NNF{NNF::K::Top, {}, "", {}}; }
NNF nnf_bot() { return NNF{NNF::K::Bot, {}, "", {}}; }
NNF nnf_lit(Literal l) { return NNF{NNF::K::Lit, std::move(l), "", {}}; }

NNF nnf_and(NNF a, NNF b) {
  if (a.k == NNF::K::Bot || b.k == NNF::K::Bot) return nnf_bot();
  if (a.k == NNF::K::Top) return b;
  if (b.k == NNF::K::Top) return a;
  NNF n{NNF::K::And, {}, "", {}};
  n.kids.push_back(std::move(a));
  n.kids.push_back(std::move(b));
  return n;
}

NNF nnf_or(NNF a, NNF b) {
  if (a.k == NNF::K::Top || b.k == NNF::K::Top) return nnf_top();
  if (a.k == NNF::K::Bot) return b;
  if (b.k == NNF::K::Bot) return a;
  NNF n{NNF::K::Or, {}, "", {}};
  n.kids.push_back(std::move(a));
  n.kids.push_back(std::move(b));
  return n;
}

NNF nnf_quant(NNF::K k, const std::string& v, NNF body) {
  // domains are non-empty, so quantifiers over constants collapse
  if (body.k == NNF::K::Top) return nnf_top();
  if (body.k == NNF::K::Bot) return nnf_bot();
  NNF n{k, {}, v, {}};
  n.kids.push_back(std::move(body));
  return n;
}

NNF nnf_of(const Formula& f, bool positive) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
      return nnf_lit(Literal{positive, f.pred(), f.args()});
    case Formula::Kind::Falsum:
      return positive ? nnf_bot() : nnf_top();
    case Formula::Kind::And:
      return positive ? nnf_and(nnf_of(f.left(), true), nnf_of(f.right(), true))
                      : nnf_or(nnf_of(f.left(), false), nnf_of(f.right(), false));
    case Formula::Kind::Or:
      return positive ? nnf_or(nnf_of(f.left(), true), nnf_of(f.right(), true))
                      : nnf_and(nnf_of(f.left(), false), nnf_of(f.right(), false));
    case Formula::Kind::Implies:
      return positive ? nnf_or(nnf_of(f.left(), false), nnf_of(f.right(), true))
                      : nnf_and(nnf_of(f.left(), true), nnf_of(f.right(), false));
    case Formula::Kind::Forall:
      return nnf_quant(positive ? NNF::K::Forall : NNF::K::Exists, f.var(),
                       nnf_of(f.body(), positive));
    case Formula::Kind::Exists:
      return nnf_quant(positive ? NNF::K::Exists : NNF::K::Forall, f.var(),
                       nnf_of(f.body(), positive));
  }
  throw Error("unreachable");
}

NNF nnf_negate(const NNF& n) {
  switch (n.k) {
    case NNF::K::Top: return nnf_bot();
    case NNF::K::Bot: return nnf_top();
    case NNF::K::Lit: {
      Literal l = n.lit;
      l.positive = !l.positive;
      return nnf_lit(std::move(l));
    }
    case NNF::K::And:
      return nnf_or(nnf_negate(n.kids[0]), nnf_negate(n.kids[1]));
    case NNF::K::Or:
      return nnf_and(nnf_negate(n.kids[0]), nnf_negate(n.kids[1]));
    case NNF::K::Forall:
      return nnf_quant(NNF::K::Exists, n.var, nnf_negate(n.kids[0]));
    case NNF::K::Exists:
      return nnf_quant(NNF::K::Forall, n.var, nnf_negate(n.kids[0]));
  }
  throw Error("unreachable");
}

void nnf_free_vars(const NNF& n, std::set<std::string>& bound,
                   std::set<std::string>& out) {
  switch (n.k) {
    case NNF::K::Lit:
      for (const Term& t : n.lit.args)
        for (const std::string& v : free_vars(t))
          if (!bound.count(v)) out.insert(v);
      return;
    case NNF::K::Forall:
    case NNF::K::Exists: {
      bool fresh = bound.insert(n.var).second;
      nnf_free_vars(n.kids[0], bound, out);
      if (fresh) bound.erase(n.var);
      return;
    }
    case NNF::K::And:
    case NNF::K::Or:
      nnf_free_vars(n.kids[0], bound, out);
      nnf_free_vars(n.kids[1], bound, out);
      return;
    default:
      return;
  }
}

std::set<std::string> nnf_free_vars(const NNF& n) {
  std::set<std::string> bound, out;
  nnf_free_vars(n, bound, out);
  return out;
}

void nnf_substitute(NNF& n, const Substitution& s) {
  switch (n.k) {
    case NNF::K::Lit:
      for (Term& t : n.lit.args) t = apply_subst(s, t);
      return;
    case NNF::K::Forall:
    case NNF::K::Exists: {
      Substitution inner = s;
      inner.erase(n.var);  // binders here are already standardized apart
      if (!inner.empty()) nnf_substitute(n.kids[0], inner);
      return;
    }
    case NNF::K::And:
    case NNF::K::Or:
      nnf_substitute(n.kids[0], s);
      nnf_substitute(n.kids[1], s);
      return;
    default:
      return;
  }
}

// Estimated clause count of the naive distribution.
long long est(const NNF& n) {
  switch (n.k) {
    case NNF::K::Top: return 0;
    case NNF::K::Bot: return 1;
    case NNF::K::Lit: return 1;
    case NNF::K::And: {
      long long s = est(n.kids[0]) + est(n.kids[1]);
      return std::min(s, kEstCap);
    }
    case NNF::K::Or: {
      long long l = est(n.kids[0]), r = est(n.kids[1]);
      if (l == 0 || r == 0) return 0;
      if (l > kEstCap / r) return kEstCap;
      return l * r;
    }
    case NNF::K::Forall:
    case NNF::K::Exists:
      return est(n.kids[0]);
  }
  return 1;
}

// Longest clause the naive distribution of a node can produce.
int width(const NNF& n) {
  switch (n.k) {
    case NNF::K::Top: return 0;
    case NNF::K::Bot: return 0;
    case NNF::K::Lit: return 1;
    case NNF::K::And: return std::max(width(n.kids[0]), width(n.kids[1]));
    case NNF::K::Or: return width(n.kids[0]) + width(n.kids[1]);
    case NNF::K::Forall:
    case NNF::K::Exists:
      return width(n.kids[0]);
  }
  return 1;
}

struct ClausifyCtx {
  Signature sig;
  ExtraSymbols introduced;
  std::set<std::string> defined_names;
  int sk_counter = 0;
  int df_counter = 0;
  int binder_counter = 0;
  int next_id = 0;
  std::vector<Clause> out;
  // normalized literal vectors of clauses already emitted per source formula,
  // used to drop duplicates such as repeated products
  std::vector<std::vector<Literal>> seen;
  // subformulas already named, so repeated occurrences share one predicate
  std::vector<std::pair<NNF, std::string>> named;
};

void process_nnf(const std::string& name, NNF n, ClausifyCtx& ctx,
                 const NNF* ban_naming = nullptr);

// Replaces a subformula by a fresh (or cached) predicate over its free
// variables; emits the one-directional definition, which is sound because
// every occurrence sits in positive position after NNF.  The defined body is
// barred from being named again while its definition is clausified;
// otherwise the cache would collapse the definition into a tautology.
NNF name_subformula(const std::string& name, const NNF& victim,
                    ClausifyCtx& ctx) {
  std::set<std::string> fv = nnf_free_vars(victim);
  std::vector<Term> args;
  for (const std::string& v : fv) args.push_back(Term::variable(v));
  for (const auto& [node, pred] : ctx.named)
    if (node == victim) return nnf_lit(Literal{true, pred, args});

  std::string pred = "df" + std::to_string(ctx.df_counter++);
  ctx.sig.add_predicate(pred, static_cast<int>(args.size()));
  ctx.introduced.preds[pred] = static_cast<int>(args.size());
  ctx.named.emplace_back(victim, pred);

  NNF def = nnf_or(nnf_lit(Literal{false, pred, args}), victim);
  for (auto it = fv.rbegin(); it != fv.rend(); ++it)
    def = nnf_quant(NNF::K::Forall, *it, std::move(def));
  process_nnf(name, std::move(def), ctx, &victim);
  return nnf_lit(Literal{true, pred, std::move(args)});
}

// Safety pass for degenerate inputs whose formula-level distribution would
// already be enormous; names the offending subtrees wholesale.
void name_blowups(const std::string& name, NNF& n, ClausifyCtx& ctx) {
  if (est(n) <= kPreGuardThreshold) return;
  switch (n.k) {
    case NNF::K::And:
    case NNF::K::Or:
      name_blowups(name, n.kids[0], ctx);
      name_blowups(name, n.kids[1], ctx);
      break;
    case NNF::K::Forall:
    case NNF::K::Exists:
      name_blowups(name, n.kids[0], ctx);
      return;
    default:
      return;
  }
  if (n.k != NNF::K::Or) return;
  while (est(n) > kPreGuardThreshold) {
    long long le = est(n.kids[0]), re = est(n.kids[1]);
    if (le <= 1 && re <= 1) break;
    NNF& victim = le >= re ? n.kids[0] : n.kids[1];
    victim = name_subformula(name, victim, ctx);
  }
}

// Per-formula-clause naming: shrink the product and bound the clause width
// by naming the largest offenders, leftmost on ties.
void name_in_fclause(const std::string& name, std::vector<NNF>& units,
                     ClausifyCtx& ctx, const NNF* ban_naming) {
  auto total_est = [&] {
    long long t = 1;
    for (const NNF& u : units) {
      long long e = std::max<long long>(est(u), 1);
      if (t > kEstCap / e) return kEstCap;
      t *= e;
    }
    return t;
  };
  auto total_width = [&] {
    int t = 0;
    for (const NNF& u : units) t += width(u);
    return t;
  };
  auto name_largest = [&](auto&& metric) {
    size_t best = units.size();
    long long best_val = 1;
    for (size_t i = 0; i < units.size(); ++i) {
      if (ban_naming && units[i] == *ban_naming) continue;
      long long v = metric(units[i]);
      if (v > best_val) {
        best_val = v;
        best = i;
      }
    }
    if (best == units.size()) return false;
    units[best] = name_subformula(name, units[best], ctx);
    return true;
  };
  while (total_est() > kEstThreshold)
    if (!name_largest([](const NNF& u) { return est(u); })) break;
  while (units.size() >= 2 && total_width() > kWidthThreshold)
    if (!name_largest([](const NNF& u) { return static_cast<long long>(width(u)); }))
      break;
}

// Renames every binder to a fresh q<k> so prenexing never collides.
void standardize_binders(NNF& n, ClausifyCtx& ctx) {
  switch (n.k) {
    case NNF::K::Forall:
    case NNF::K::Exists: {
      std::string fresh = "q" + std::to_string(ctx.binder_counter++);
      Substitution rename{{n.var, Term::variable(fresh)}};
      nnf_substitute(n.kids[0], rename);
      n.var = fresh;
      standardize_binders(n.kids[0], ctx);
      return;
    }
    case NNF::K::And:
    case NNF::K::Or:
      standardize_binders(n.kids[0], ctx);
      standardize_binders(n.kids[1], ctx);
      return;
    default:
      return;
  }
}

struct Binder {
  bool universal;
  std::string var;
};

// Hoists quantifiers; among independent binders existentials go first so
// they skolemize to constants instead of functions.
std::pair<std::vector<Binder>, NNF> prenex(NNF n) {
  switch (n.k) {
    case NNF::K::Forall:
    case NNF::K::Exists: {
      bool universal = n.k == NNF::K::Forall;
      auto [prefix, matrix] = prenex(std::move(n.kids[0]));
      std::vector<Binder> out;
      out.push_back({universal, n.var});
      out.insert(out.end(), prefix.begin(), prefix.end());
      return {std::move(out), std::move(matrix)};
    }
    case NNF::K::And:
    case NNF::K::Or: {
      bool conj = n.k == NNF::K::And;
      auto [pl, ml] = prenex(std::move(n.kids[0]));
      auto [pr, mr] = prenex(std::move(n.kids[1]));
      std::vector<Binder> merged;
      size_t i = 0, j = 0;
      while (i < pl.size() || j < pr.size()) {
        if (i < pl.size() && !pl[i].universal) merged.push_back(pl[i++]);
        else if (j < pr.size() && !pr[j].universal) merged.push_back(pr[j++]);
        else if (i < pl.size()) merged.push_back(pl[i++]);
        else merged.push_back(pr[j++]);
      }
      NNF matrix = conj ? nnf_and(std::move(ml), std::move(mr))
                        : nnf_or(std::move(ml), std::move(mr));
      return {std::move(merged), std::move(matrix)};
    }
    default:
      return {{}, std::move(n)};
  }
}

std::vector<std::vector<Literal>> cnf_matrix(const NNF& n) {
  switch (n.k) {
    case NNF::K::Top:
      return {};
    case NNF::K::Bot:
      return {{}};
    case NNF::K::Lit:
      return {{n.lit}};
    case NNF::K::And: {
      auto l = cnf_matrix(n.kids[0]);
      auto r = cnf_matrix(n.kids[1]);
      l.insert(l.end(), std::make_move_iterator(r.begin()),
               std::make_move_iterator(r.end()));
      return l;
    }
    case NNF::K::Or: {
      auto l = cnf_matrix(n.kids[0]);
      auto r = cnf_matrix(n.kids[1]);
      std::vector<std::vector<Literal>> out;
      for (const auto& a : l)
        for (const auto& b : r) {
          std::vector<Literal> merged = a;
          for (const Literal& lit : b)
            if (std::find(merged.begin(), merged.end(), lit) == merged.end())
              merged.push_back(lit);
          if (!is_tautology(merged)) out.push_back(std::move(merged));
        }
      return out;
    }
    default:
      throw Error("clausify: quantifier left in matrix");
  }
}

// formula-level clause: a disjunction of literal or quantified units
using FClause = std::vector<NNF>;

std::vector<FClause> formula_distribute(const NNF& n) {
  switch (n.k) {
    case NNF::K::Top:
      return {};
    case NNF::K::Bot:
      return {{}};
    case NNF::K::Lit:
    case NNF::K::Forall:
    case NNF::K::Exists:
      return {{n}};
    case NNF::K::And: {
      auto l = formula_distribute(n.kids[0]);
      auto r = formula_distribute(n.kids[1]);
      l.insert(l.end(), std::make_move_iterator(r.begin()),
               std::make_move_iterator(r.end()));
      return l;
    }
    case NNF::K::Or: {
      auto l = formula_distribute(n.kids[0]);
      auto r = formula_distribute(n.kids[1]);
      std::vector<FClause> out;
      for (const auto& a : l)
        for (const auto& b : r) {
          FClause merged = a;
          for (const NNF& unit : b)
            if (std::find(merged.begin(), merged.end(), unit) == merged.end())
              merged.push_back(unit);
          bool taut = false;
          for (size_t x = 0; x < merged.size() && !taut; ++x) {
            NNF neg = nnf_negate(merged[x]);
            for (size_t y = 0; y < merged.size() && !taut; ++y)
              if (x != y && merged[y] == neg) taut = true;
          }
          if (!taut) out.push_back(std::move(merged));
        }
      return out;
    }
  }
  throw Error("unreachable");
}

void emit_clause(const std::string& name, std::vector<Literal> lits,
                 ClausifyCtx& ctx) {
  if (is_tautology(lits)) return;
  Clause c = make_clause(ctx.next_id, std::move(lits), InputProv{name});
  for (const auto& prev : ctx.seen)
    if (prev == c.literals) return;
  ctx.seen.push_back(c.literals);
  c.id = ctx.next_id++;
  ctx.out.push_back(std::move(c));
}

void process_nnf(const std::string& name, NNF n, ClausifyCtx& ctx,
                 const NNF* ban_naming) {
  if (!ban_naming) name_blowups(name, n, ctx);
  std::vector<FClause> fclauses = formula_distribute(n);
  // drop duplicate formula-clauses
  std::vector<FClause> uniq;
  for (auto& fc : fclauses) {
    bool dup = false;
    for (const auto& seen : uniq)
      if (seen == fc) { dup = true; break; }
    if (!dup) uniq.push_back(std::move(fc));
  }
  for (FClause& fc : uniq) {
    name_in_fclause(name, fc, ctx, ban_naming);
    NNF merged = nnf_bot();
    for (auto it = fc.rbegin(); it != fc.rend(); ++it)
      merged = nnf_or(std::move(*it), std::move(merged));
    standardize_binders(merged, ctx);
    auto [prefix, matrix] = prenex(std::move(merged));

    Substitution skolem;
    std::vector<Term> universals;
    for (const Binder& b : prefix) {
      if (b.universal) {
        universals.push_back(Term::variable(b.var));
        continue;
      }
      std::string sk = "sk" + std::to_string(ctx.sk_counter++);
      if (universals.empty()) {
        ctx.sig.add_constant(sk);
        ctx.introduced.consts.insert(sk);
        skolem.insert_or_assign(b.var, Term::constant(sk));
      } else {
        ctx.sig.add_function(sk, static_cast<int>(universals.size()));
        ctx.introduced.funcs[sk] = static_cast<int>(universals.size());
        skolem.insert_or_assign(b.var, Term::application(sk, universals));
      }
    }
    if (!skolem.empty()) nnf_substitute(matrix, skolem);

    for (std::vector<Literal>& lits : cnf_matrix(matrix))
      emit_clause(name, std::move(lits), ctx);
  }
}

}  // namespace

ClausifyResult clausify(const std::vector<std::pair<std::string, Formula>>& axioms,
                        const std::optional<Formula>& goal, const Signature& sig,
                        const std::set<std::string>& defined_names) {
  ClausifyCtx ctx;
  ctx.sig = sig;
  ctx.defined_names = defined_names;

  // sk*/df* are reserved for the clausifier
  for (const std::string& c : sig.constants)
    if (c.rfind("sk", 0) == 0 || c.rfind("df", 0) == 0)
      throw Error("constant '" + c + "' collides with reserved clausifier names");
  for (const auto& [f, _] : sig.functions)
    if (f.rfind("sk", 0) == 0 || f.rfind("df", 0) == 0)
      throw Error("function '" + f + "' collides with reserved clausifier names");
  for (const auto& [p, _] : sig.predicates)
    if (p.rfind("df", 0) == 0)
      throw Error("predicate '" + p + "' collides with reserved clausifier names");

  auto check_formula = [&](const std::string& name, const Formula& f) {
    if (!is_closed(f))
      throw Error("clausify: formula '" + name + "' is not closed");
    for (const std::string& d : defined_names)
      if (count_predicate(f, d) > 0)
        throw Error("clausify: formula '" + name +
                    "' contains unexpanded defined predicate '" + d + "'");
  };

  for (const auto& [name, f] : axioms) {
    check_formula(name, f);
    ctx.seen.clear();
    process_nnf(name, nnf_of(f, true), ctx);
  }
  if (goal) {
    check_formula("goal", *goal);
    ctx.seen.clear();
    // refutation setup: clausify the negation of the goal
    process_nnf("~goal", nnf_of(*goal, false), ctx);
  }

  ClausifyResult result;
  result.clauses = std::move(ctx.out);
  result.sig = std::move(ctx.sig);
  result.introduced = std::move(ctx.introduced);
  return result;
}

}  // namespace revline
