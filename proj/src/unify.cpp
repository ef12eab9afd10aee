#include "revline/unify.hpp"

namespace revline {

namespace {

bool occurs(const std::string& var, const Term& t, const Substitution& s) {
  switch (t.kind()) {
    case Term::Kind::Variable: {
      if (t.name() == var) return true;
      auto it = s.find(t.name());
      return it != s.end() && occurs(var, it->second, s);
    }
    case Term::Kind::Constant:
      return false;
    case Term::Kind::Application:
      for (const Term& a : t.args())
        if (occurs(var, a, s)) return true;
      return false;
  }
  return false;
}

// Follow variable bindings until a non-variable or an unbound variable.
const Term& walk(const Term& t, const Substitution& s) {
  const Term* cur = &t;
  while (cur->kind() == Term::Kind::Variable) {
    auto it = s.find(cur->name());
    if (it == s.end()) break;
    cur = &it->second;
  }
  return *cur;
}

bool unify_rec(const Term& a, const Term& b, Substitution& s,
               std::string& failure) {
  const Term& x = walk(a, s);
  const Term& y = walk(b, s);
  if (x.kind() == Term::Kind::Variable) {
    if (y.kind() == Term::Kind::Variable && x.name() == y.name()) return true;
    if (occurs(x.name(), y, s)) {
      failure = "occurs check: " + x.name() + " in " + to_string(y);
      return false;
    }
    s.insert_or_assign(x.name(), y);
    return true;
  }
  if (y.kind() == Term::Kind::Variable) return unify_rec(y, x, s, failure);
  if (x.kind() != y.kind() || x.name() != y.name() ||
      x.args().size() != y.args().size()) {
    failure = "clash: " + to_string(x) + " vs " + to_string(y);
    return false;
  }
  for (size_t i = 0; i < x.args().size(); ++i)
    if (!unify_rec(x.args()[i], y.args()[i], s, failure)) return false;
  return true;
}

// Resolve bindings through each other so that applying the result twice
// equals applying it once.
Substitution normalize(const Substitution& s) {
  Substitution out;
  for (const auto& [v, t] : s) {
    Term cur = t;
    while (true) {
      Term next = apply_subst(s, cur);
      if (next == cur) break;
      cur = next;
    }
    out.insert_or_assign(v, cur);
  }
  return out;
}

}  // namespace

UnifyResult unify(const Term& a, const Term& b) {
  Substitution s;
  std::string failure;
  if (!unify_rec(a, b, s, failure)) return {std::nullopt, failure};
  return {normalize(s), ""};
}

UnifyResult unify_atoms(const std::string& pred_a,
                        const std::vector<Term>& args_a,
                        const std::string& pred_b,
                        const std::vector<Term>& args_b) {
  if (pred_a != pred_b || args_a.size() != args_b.size())
    return {std::nullopt, "clash: " + pred_a + "/" + std::to_string(args_a.size()) +
                              " vs " + pred_b + "/" + std::to_string(args_b.size())};
  Substitution s;
  std::string failure;
  for (size_t i = 0; i < args_a.size(); ++i)
    if (!unify_rec(args_a[i], args_b[i], s, failure))
      return {std::nullopt, failure};
  return {normalize(s), ""};
}

}  // namespace revline
