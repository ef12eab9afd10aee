#include "revline/prover.hpp"

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <queue>
#include <set>

#include "revline/unify.hpp"

namespace revline {

std::string to_string(ProveOutcome o) {
  switch (o) {
    case ProveOutcome::Refutation: return "refutation";
    case ProveOutcome::Saturated: return "saturated";
    case ProveOutcome::ResourceOut: return "resource-out";
  }
  return "?";
}

namespace {

// Exact unifiability test on literals from two clauses that may share
// variable names: occurrences are tagged with their side, so no renaming or
// term building happens.  Bindings hold pointers into the operand terms.
struct TaggedUnifier {
  using Key = std::pair<int, std::string_view>;
  using Val = std::pair<const Term*, int>;
  std::map<Key, Val> binds;

  std::pair<const Term*, int> walk(const Term* t, int side) {
    while (t->kind() == Term::Kind::Variable) {
      auto it = binds.find({side, t->name()});
      if (it == binds.end()) break;
      t = it->second.first;
      side = it->second.second;
    }
    return {t, side};
  }

  bool occurs(const Key& var, const Term* t, int side) {
    auto [rt, rs] = walk(t, side);
    if (rt->kind() == Term::Kind::Variable)
      return Key{rs, rt->name()} == var;
    for (const Term& a : rt->args())
      if (occurs(var, &a, rs)) return true;
    return false;
  }

  bool unify(const Term* a, int sa, const Term* b, int sb) {
    auto [x, sx] = walk(a, sa);
    auto [y, sy] = walk(b, sb);
    if (x->kind() == Term::Kind::Variable) {
      if (y->kind() == Term::Kind::Variable && sx == sy &&
          x->name() == y->name())
        return true;
      if (occurs({sx, x->name()}, y, sy)) return false;
      binds.emplace(Key{sx, x->name()}, Val{y, sy});
      return true;
    }
    if (y->kind() == Term::Kind::Variable) return unify(y, sy, x, sx);
    if (x->kind() != y->kind() || x->name() != y->name() ||
        x->args().size() != y->args().size())
      return false;
    for (size_t k = 0; k < x->args().size(); ++k)
      if (!unify(&x->args()[k], sx, &y->args()[k], sy)) return false;
    return true;
  }
};

bool unifiable_across(const Literal& a, const Literal& b) {
  if (a.pred != b.pred || a.args.size() != b.args.size()) return false;
  TaggedUnifier u;
  for (size_t k = 0; k < a.args.size(); ++k)
    if (!u.unify(&a.args[k], 0, &b.args[k], 1)) return false;
  return true;
}

}  // namespace

std::optional<Clause> resolve(const Clause& c1, const Clause& c2, int i, int j,
                              int new_id) {
  if (i < 0 || i >= static_cast<int>(c1.literals.size()) || j < 0 ||
      j >= static_cast<int>(c2.literals.size()))
    return std::nullopt;
  const Literal& l1 = c1.literals[i];
  if (l1.positive == c2.literals[j].positive) return std::nullopt;
  if (l1.pred != c2.literals[j].pred) return std::nullopt;
  if (!unifiable_across(l1, c2.literals[j])) return std::nullopt;

  std::vector<std::string> vars1 = clause_vars(c1);
  std::set<std::string> taken(vars1.begin(), vars1.end());
  Clause c2r = rename_apart(c2, taken);
  const Literal& l2 = c2r.literals[j];

  UnifyResult u = unify_atoms(l1.pred, l1.args, l2.pred, l2.args);
  if (!u) return std::nullopt;

  std::vector<Literal> lits;
  for (int k = 0; k < static_cast<int>(c1.literals.size()); ++k)
    if (k != i) lits.push_back(c1.literals[k]);
  for (int k = 0; k < static_cast<int>(c2r.literals.size()); ++k)
    if (k != j) lits.push_back(c2r.literals[k]);
  for (Literal& l : lits)
    for (Term& t : l.args) t = apply_subst(*u.mgu, t);

  return make_clause(new_id, std::move(lits),
                     ResolveProv{c1.id, c2.id, i, j, *u.mgu});
}

std::vector<Clause> factor(const Clause& c, int first_new_id) {
  std::vector<Clause> out;
  for (int i = 0; i < static_cast<int>(c.literals.size()); ++i) {
    for (int j = i + 1; j < static_cast<int>(c.literals.size()); ++j) {
      const Literal& a = c.literals[i];
      const Literal& b = c.literals[j];
      if (a.positive != b.positive || a.pred != b.pred) continue;
      UnifyResult u = unify_atoms(a.pred, a.args, b.pred, b.args);
      if (!u) continue;
      std::vector<Literal> lits = c.literals;
      for (Literal& l : lits)
        for (Term& t : l.args) t = apply_subst(*u.mgu, t);
      out.push_back(make_clause(first_new_id + static_cast<int>(out.size()),
                                std::move(lits), FactorProv{c.id, i, j, *u.mgu}));
    }
  }
  return out;
}

namespace {

// One-way matching with an undo trail; bindings hold pointers into the
// target clause, which outlives the search.
struct MatchState {
  std::map<std::string, const Term*> binds;
  std::vector<std::string> trail;

  void undo_to(size_t mark) {
    while (trail.size() > mark) {
      binds.erase(trail.back());
      trail.pop_back();
    }
  }
};

bool match_term(const Term& pattern, const Term& target, MatchState& s) {
  switch (pattern.kind()) {
    case Term::Kind::Variable: {
      auto it = s.binds.find(pattern.name());
      if (it != s.binds.end()) return *it->second == target;
      s.binds.emplace(pattern.name(), &target);
      s.trail.push_back(pattern.name());
      return true;
    }
    case Term::Kind::Constant:
      return target.kind() == Term::Kind::Constant &&
             target.name() == pattern.name();
    case Term::Kind::Application: {
      if (target.kind() != Term::Kind::Application ||
          target.name() != pattern.name() ||
          target.args().size() != pattern.args().size())
        return false;
      for (size_t k = 0; k < pattern.args().size(); ++k)
        if (!match_term(pattern.args()[k], target.args()[k], s)) return false;
      return true;
    }
  }
  return false;
}

bool match_literal(const Literal& pattern, const Literal& target,
                   MatchState& s) {
  if (pattern.positive != target.positive || pattern.pred != target.pred ||
      pattern.args.size() != target.args.size())
    return false;
  for (size_t k = 0; k < pattern.args.size(); ++k)
    if (!match_term(pattern.args[k], target.args[k], s)) return false;
  return true;
}

bool subsumes_rec(const std::vector<Literal>& pattern, size_t idx,
                  const std::vector<Literal>& target, MatchState& s) {
  if (idx == pattern.size()) return true;
  for (const Literal& t : target) {
    size_t mark = s.trail.size();
    if (match_literal(pattern[idx], t, s) &&
        subsumes_rec(pattern, idx + 1, target, s))
      return true;
    s.undo_to(mark);
  }
  return false;
}

}  // namespace

bool subsumes(const Clause& c1, const Clause& c2) {
  // One-way matching never binds variables of c2, so c2's variables act as
  // fresh constants and no standardizing rename is needed.
  MatchState s;
  return subsumes_rec(c1.literals, 0, c2.literals, s);
}

namespace {

// Kept clauses live in a dense array indexed by id, with the cheap
// subsumption filters cached: literal count, sign counts, and a bitmask over
// (predicate, sign) pairs.  subsumer.mask & ~candidate.mask != 0 rules a pair
// out without running the matcher.
struct Kept {
  Clause clause;
  int pos = 0, neg = 0;
  std::uint64_t mask = 0;
  enum class State { Passive, Active, Deleted } state = State::Passive;
};

std::uint64_t literal_bit(const Literal& l) {
  std::uint64_t h = std::hash<std::string>{}(l.pred) * 2 + (l.positive ? 1 : 0);
  return std::uint64_t{1} << (h % 64);
}

}  // namespace

SaturateResult saturate(const std::vector<Clause>& inputs,
                        const ProverConfig& cfg) {
  cfg.validate();
  auto start = std::chrono::steady_clock::now();
  SaturateResult result;

  std::vector<Kept> kept;                    // only admitted clauses
  std::vector<int> by_id;                    // id -> index into kept, or -1
  using WeightEntry = std::pair<int, int>;   // (weight, id), min-heap
  std::priority_queue<WeightEntry, std::vector<WeightEntry>, std::greater<>>
      by_weight;
  std::deque<int> by_age;                    // passive ids, ascending
  int next_id = 0;

  auto find = [&](int id) -> Kept* {
    if (id < 0 || id >= static_cast<int>(by_id.size()) || by_id[id] < 0)
      return nullptr;
    return &kept[by_id[id]];
  };

  auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start)
        .count();
  };

  // every clause ever admitted survives here for proof extraction
  std::map<int, Clause> archive;

  auto extract_proof = [&](int empty_id) {
    RefutationProof proof;
    proof.empty_id = empty_id;
    std::set<int> needed;
    std::vector<int> stack{empty_id};
    while (!stack.empty()) {
      int id = stack.back();
      stack.pop_back();
      if (!needed.insert(id).second) continue;
      const Clause& c = archive.at(id);
      if (const auto* r = std::get_if<ResolveProv>(&c.prov)) {
        stack.push_back(r->parent1);
        stack.push_back(r->parent2);
      } else if (const auto* f = std::get_if<FactorProv>(&c.prov)) {
        stack.push_back(f->parent);
      }
    }
    for (int id : needed) proof.clauses.push_back(archive.at(id));
    for (const Clause& c : proof.clauses)
      if (const auto* in = std::get_if<InputProv>(&c.prov))
        if (std::find(proof.used_inputs.begin(), proof.used_inputs.end(),
                      in->name) == proof.used_inputs.end())
          proof.used_inputs.push_back(in->name);
    return proof;
  };

  // Admits a clause unless trivial or forward-subsumed by a live clause;
  // returns the id of an empty clause once one appears.
  auto admit = [&](Clause c) -> std::optional<int> {
    if (is_tautology(c.literals)) return std::nullopt;
    Kept entry;
    entry.pos = 0;
    for (const Literal& l : c.literals) {
      entry.pos += l.positive;
      entry.mask |= literal_bit(l);
    }
    entry.neg = static_cast<int>(c.literals.size()) - entry.pos;
    if (cfg.enable_subsumption) {
      for (const Kept& k : kept) {
        if (k.state == Kept::State::Deleted) continue;
        if (k.clause.literals.size() > c.literals.size()) continue;
        if (k.pos > entry.pos || k.neg > entry.neg) continue;
        if (k.mask & ~entry.mask) continue;
        if (subsumes(k.clause, c)) return std::nullopt;
      }
    }
    int id = c.id;
    bool empty = c.empty();
    archive.emplace(id, c);
    entry.clause = std::move(c);
    if (static_cast<int>(by_id.size()) <= id) by_id.resize(id + 1, -1);
    by_id[id] = static_cast<int>(kept.size());
    kept.push_back(std::move(entry));
    by_weight.emplace(kept.back().clause.weight, id);
    by_age.push_back(id);
    ++result.stats.kept;
    if (empty) return id;
    return std::nullopt;
  };

  // Backward subsumption runs once per activated clause.
  auto backward_subsume = [&](const Kept& given) {
    if (!cfg.enable_subsumption) return;
    for (Kept& k : kept) {
      if (k.state == Kept::State::Deleted || k.clause.id == given.clause.id)
        continue;
      if (given.clause.literals.size() > k.clause.literals.size()) continue;
      if (given.pos > k.pos || given.neg > k.neg) continue;
      if (given.mask & ~k.mask) continue;
      if (subsumes(given.clause, k.clause)) {
        k.state = Kept::State::Deleted;
        by_id[k.clause.id] = -1;
      }
    }
  };

  for (const Clause& c : inputs) {
    Clause copy = c;
    copy.id = next_id++;
    if (auto empty = admit(std::move(copy))) {
      result.outcome = ProveOutcome::Refutation;
      result.proof = extract_proof(*empty);
      result.stats.seconds = elapsed();
      return result;
    }
  }

  long long pick_counter = 0;
  const int cycle = cfg.pick_age + cfg.pick_weight;

  while (true) {
    if (result.stats.generated > cfg.max_generated_clauses ||
        elapsed() > cfg.timeout_seconds) {
      result.outcome = ProveOutcome::ResourceOut;
      result.stats.seconds = elapsed();
      return result;
    }

    // select the given clause: every cycle the first pick_age picks take the
    // oldest passive clause, the rest the lightest (ties toward smaller id)
    bool by_age_pick = pick_counter % cycle < cfg.pick_age;
    ++pick_counter;
    Kept* given = nullptr;
    if (by_age_pick) {
      while (!by_age.empty()) {
        Kept* k = find(by_age.front());
        if (k && k->state == Kept::State::Passive) {
          given = k;
          break;
        }
        by_age.pop_front();
      }
    }
    if (!given) {
      while (!by_weight.empty()) {
        Kept* k = find(by_weight.top().second);
        if (k && k->state == Kept::State::Passive &&
            k->clause.weight == by_weight.top().first) {
          given = k;
          break;
        }
        by_weight.pop();
      }
    }
    if (!given) break;  // passive exhausted

    given->state = Kept::State::Active;
    backward_subsume(*given);
    if (given->state == Kept::State::Deleted) continue;
    int given_id = given->clause.id;
#ifdef REVLINE_TRACE
    fprintf(stderr, "given %s\n", to_string(given->clause).c_str());
#endif

    // generate: factors of given, resolvents of given against active
    std::vector<Clause> fresh;
    {
      const Clause given_clause = given->clause;  // kept may reallocate
      std::vector<Clause> fs = factor(given_clause, next_id);
      next_id += static_cast<int>(fs.size());
      result.stats.generated += static_cast<long long>(fs.size());
      for (Clause& f : fs) fresh.push_back(std::move(f));

      for (size_t idx = 0; idx < kept.size(); ++idx) {
        if (kept[idx].state != Kept::State::Active) continue;
        const Clause& other = kept[idx].clause;
        for (int i = 0; i < static_cast<int>(given_clause.literals.size()); ++i) {
          for (int j = 0; j < static_cast<int>(other.literals.size()); ++j) {
            if (given_clause.literals[i].positive == other.literals[j].positive)
              continue;
            if (given_clause.literals[i].pred != other.literals[j].pred)
              continue;
            // avoid generating self-resolvents twice
            if (other.id == given_id && j <= i) continue;
            if (auto r = resolve(given_clause, other, i, j, next_id)) {
              ++next_id;
              ++result.stats.generated;
              fresh.push_back(std::move(*r));
            }
          }
        }
      }
    }

    for (Clause& c : fresh) {
      if (auto empty = admit(std::move(c))) {
        result.outcome = ProveOutcome::Refutation;
        result.proof = extract_proof(*empty);
        result.stats.seconds = elapsed();
        return result;
      }
    }
  }

  result.outcome = ProveOutcome::Saturated;
  result.stats.seconds = elapsed();
  return result;
}

ProveResult prove(const std::vector<std::pair<std::string, Formula>>& axioms,
                  const Formula& goal, const Signature& sig,
                  const std::vector<DefinedPredicate>& defs,
                  const ProverConfig& cfg) {
  std::vector<std::pair<std::string, Formula>> expanded;
  expanded.reserve(axioms.size());
  for (const auto& [name, f] : axioms)
    expanded.emplace_back(name, expand_defs(f, defs));
  Formula goal_expanded = expand_defs(goal, defs);

  std::set<std::string> defined_names;
  for (const DefinedPredicate& d : defs) defined_names.insert(d.name);

  ProveResult out;
  out.clausal = clausify(expanded, goal_expanded, sig, defined_names);
  SaturateResult sat = saturate(out.clausal.clauses, cfg);
  out.outcome = sat.outcome;
  out.proof = std::move(sat.proof);
  out.stats = sat.stats;
  return out;
}

std::string to_string(const RefutationProof& p) {
  std::string out;
  for (const Clause& c : p.clauses) out += to_string(c) + "\n";
  return out;
}

}  // namespace revline
