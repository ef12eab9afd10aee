#include "revline/verify.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "revline/unify.hpp"

namespace revline {

namespace {

// Local re-implementation of the resolvent/factor construction.  It shares
// unify and apply_subst with the prover and nothing else; any disagreement
// between the two code paths fails the proof.

std::vector<Literal> substituted_without(const std::vector<Literal>& lits,
                                         int skip, const Substitution& s) {
  std::vector<Literal> out;
  for (int k = 0; k < static_cast<int>(lits.size()); ++k) {
    if (k == skip) continue;
    Literal l = lits[k];
    for (Term& t : l.args) t = apply_subst(s, t);
    out.push_back(std::move(l));
  }
  return out;
}

bool equal_literal_vectors(const std::vector<Literal>& a,
                           const std::vector<Literal>& b) {
  return a == b;
}

}  // namespace

VerifyResult verify_refutation(const RefutationProof& proof,
                               const std::vector<Clause>& expected_inputs) {
  VerifyResult r;
  std::map<int, const Clause*> nodes;
  int empty_count = 0;

  for (const Clause& c : proof.clauses) {
    if (nodes.count(c.id)) {
      r.failed_id = c.id;
      r.reason = "duplicate clause id";
      return r;
    }
    if (c.empty()) ++empty_count;

    if (const auto* in = std::get_if<InputProv>(&c.prov)) {
      bool found = false;
      for (const Clause& e : expected_inputs) {
        if (auto* ein = std::get_if<InputProv>(&e.prov);
            ein && ein->name == in->name &&
            equal_literal_vectors(e.literals, c.literals)) {
          found = true;
          break;
        }
      }
      if (!found) {
        r.failed_id = c.id;
        r.reason = "input clause does not match the clausified problem";
        return r;
      }
    } else if (const auto* rp = std::get_if<ResolveProv>(&c.prov)) {
      auto p1 = nodes.find(rp->parent1);
      auto p2 = nodes.find(rp->parent2);
      if (p1 == nodes.end() || p2 == nodes.end() || rp->parent1 >= c.id ||
          rp->parent2 >= c.id) {
        r.failed_id = c.id;
        r.reason = "resolve parents missing or out of order";
        return r;
      }
      const Clause& c1 = *p1->second;
      if (rp->lit1 < 0 || rp->lit1 >= static_cast<int>(c1.literals.size())) {
        r.failed_id = c.id;
        r.reason = "resolve literal index out of range";
        return r;
      }
      std::vector<std::string> vars1 = clause_vars(c1);
      std::set<std::string> taken(vars1.begin(), vars1.end());
      Clause c2 = rename_apart(*p2->second, taken);
      if (rp->lit2 < 0 || rp->lit2 >= static_cast<int>(c2.literals.size())) {
        r.failed_id = c.id;
        r.reason = "resolve literal index out of range";
        return r;
      }
      const Literal& l1 = c1.literals[rp->lit1];
      const Literal& l2 = c2.literals[rp->lit2];
      if (l1.positive == l2.positive) {
        r.failed_id = c.id;
        r.reason = "resolved literals have equal sign";
        return r;
      }
      UnifyResult u = unify_atoms(l1.pred, l1.args, l2.pred, l2.args);
      if (!u) {
        r.failed_id = c.id;
        r.reason = "resolved literals do not unify: " + u.failure;
        return r;
      }
      if (*u.mgu != rp->mgu) {
        r.failed_id = c.id;
        r.reason = "recorded unifier is not the mgu";
        return r;
      }
      std::vector<Literal> lits = substituted_without(c1.literals, rp->lit1, *u.mgu);
      std::vector<Literal> rest = substituted_without(c2.literals, rp->lit2, *u.mgu);
      lits.insert(lits.end(), rest.begin(), rest.end());
      Clause rebuilt = make_clause(c.id, std::move(lits), c.prov);
      if (!equal_literal_vectors(rebuilt.literals, c.literals)) {
        r.failed_id = c.id;
        r.reason = "resolvent does not match recorded clause";
        return r;
      }
    } else if (const auto* fp = std::get_if<FactorProv>(&c.prov)) {
      auto p = nodes.find(fp->parent);
      if (p == nodes.end() || fp->parent >= c.id) {
        r.failed_id = c.id;
        r.reason = "factor parent missing or out of order";
        return r;
      }
      const Clause& base = *p->second;
      int n = static_cast<int>(base.literals.size());
      if (fp->lit1 < 0 || fp->lit2 <= fp->lit1 || fp->lit2 >= n) {
        r.failed_id = c.id;
        r.reason = "factor literal indices out of range";
        return r;
      }
      const Literal& a = base.literals[fp->lit1];
      const Literal& b = base.literals[fp->lit2];
      if (a.positive != b.positive) {
        r.failed_id = c.id;
        r.reason = "factored literals differ in sign";
        return r;
      }
      UnifyResult u = unify_atoms(a.pred, a.args, b.pred, b.args);
      if (!u) {
        r.failed_id = c.id;
        r.reason = "factored literals do not unify: " + u.failure;
        return r;
      }
      if (*u.mgu != fp->mgu) {
        r.failed_id = c.id;
        r.reason = "recorded unifier is not the mgu";
        return r;
      }
      std::vector<Literal> lits = base.literals;
      for (Literal& l : lits)
        for (Term& t : l.args) t = apply_subst(*u.mgu, t);
      Clause rebuilt = make_clause(c.id, std::move(lits), c.prov);
      if (!equal_literal_vectors(rebuilt.literals, c.literals)) {
        r.failed_id = c.id;
        r.reason = "factor does not match recorded clause";
        return r;
      }
    }
    nodes[c.id] = &c;
  }

  if (empty_count != 1) {
    r.failed_id = proof.empty_id;
    r.reason = empty_count == 0 ? "no empty clause in proof"
                                : "more than one empty clause in proof";
    return r;
  }
  auto sink = nodes.find(proof.empty_id);
  if (sink == nodes.end() || !sink->second->empty()) {
    r.failed_id = proof.empty_id;
    r.reason = "sink is not the empty clause";
    return r;
  }

  // every node must be an ancestor of the sink
  std::set<int> reachable;
  std::vector<int> stack{proof.empty_id};
  while (!stack.empty()) {
    int id = stack.back();
    stack.pop_back();
    if (!reachable.insert(id).second) continue;
    const Clause& c = *nodes.at(id);
    if (const auto* rp = std::get_if<ResolveProv>(&c.prov)) {
      stack.push_back(rp->parent1);
      stack.push_back(rp->parent2);
    } else if (const auto* fp = std::get_if<FactorProv>(&c.prov)) {
      stack.push_back(fp->parent);
    }
  }
  for (const auto& [id, c] : nodes) {
    if (!reachable.count(id)) {
      r.failed_id = id;
      r.reason = "clause is not an ancestor of the empty clause";
      return r;
    }
  }

  r.ok = true;
  return r;
}

}  // namespace revline
