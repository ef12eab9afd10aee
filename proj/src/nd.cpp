#include "revline/nd.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "revline/parse.hpp"

namespace revline {

std::string to_string(NDRuleKind k) {
  switch (k) {
    case NDRuleKind::Hypothesis: return "hyp";
    case NDRuleKind::AxiomInstance: return "axiom";
    case NDRuleKind::ImpElim: return "imp_elim";
    case NDRuleKind::ImpIntro: return "imp_intro";
    case NDRuleKind::AndIntro: return "and_intro";
    case NDRuleKind::AndElimLeft: return "and_elim_left";
    case NDRuleKind::AndElimRight: return "and_elim_right";
    case NDRuleKind::OrIntroLeft: return "or_intro_left";
    case NDRuleKind::OrIntroRight: return "or_intro_right";
    case NDRuleKind::OrElim: return "or_elim";
    case NDRuleKind::NegElim: return "neg_elim";
    case NDRuleKind::ExFalso: return "ex_falso";
    case NDRuleKind::ForallIntro: return "forall_intro";
    case NDRuleKind::ForallElim: return "forall_elim";
  }
  return "?";
}

std::string to_string(CheckFail f) {
  switch (f) {
    case CheckFail::None: return "ok";
    case CheckFail::BadStep: return "bad step";
    case CheckFail::BadPremise: return "bad premise";
    case CheckFail::FormulaMismatch: return "formula mismatch";
    case CheckFail::BadInstantiation: return "bad instantiation";
    case CheckFail::BadDischarge: return "bad discharge";
    case CheckFail::EigenvariableViolation: return "eigenvariable violation";
    case CheckFail::UndischargedHypothesis: return "undischarged hypothesis";
    case CheckFail::UnknownAxiom: return "unknown axiom or lemma";
    case CheckFail::GoalMismatch: return "goal mismatch";
  }
  return "?";
}

namespace {

CheckReport fail(int id, CheckFail reason, std::string detail = "") {
  CheckReport r;
  r.ok = false;
  r.step_id = id;
  r.reason = reason;
  r.detail = std::move(detail);
  return r;
}

CheckReport ok_report() {
  CheckReport r;
  r.ok = true;
  return r;
}

// Simultaneous instantiation of the universal prefix: peels binders as long
// as the binder is in the substitution's domain, then applies all bindings
// at once.  Every binding must correspond to a peeled binder.
std::optional<Formula> axiom_instance(const Formula& axiom,
                                      const Substitution& inst,
                                      std::string& err) {
  const Formula* cur = &axiom;
  std::vector<std::string> peeled;
  while (cur->kind() == Formula::Kind::Forall && inst.count(cur->var())) {
    peeled.push_back(cur->var());
    cur = &cur->body();
  }
  if (peeled.size() != inst.size()) {
    for (const auto& [v, t] : inst)
      if (std::find(peeled.begin(), peeled.end(), v) == peeled.end()) {
        err = "binding for '" + v + "' does not match a universal prefix variable";
        return std::nullopt;
      }
    err = "duplicate prefix variable";
    return std::nullopt;
  }
  return apply_subst(inst, *cur);
}

}  // namespace

CheckReport check_step(ScriptState& state, const NDStep& s,
                       const AxiomTable& table) {
  if (s.id <= state.last_id)
    return fail(s.id, CheckFail::BadStep, "step ids must increase");

  // collect premise entries; reject premises leaning on dead hypotheses
  std::vector<const ScriptState::Entry*> prem;
  for (int pid : s.premises) {
    auto it = state.steps.find(pid);
    if (it == state.steps.end() || pid >= s.id)
      return fail(s.id, CheckFail::BadPremise,
                  "premise " + std::to_string(pid) + " not checked earlier");
    for (int dep : it->second.deps)
      if (!state.steps.at(dep).alive)
        return fail(s.id, CheckFail::BadPremise,
                    "premise " + std::to_string(pid) +
                        " leans on discharged hypothesis " + std::to_string(dep));
    prem.push_back(&it->second);
  }

  auto arity = [&](size_t want_prem, size_t want_disc) -> bool {
    return s.premises.size() == want_prem && s.discharge.size() == want_disc;
  };

  ScriptState::Entry entry;
  entry.formula = s.formula;

  auto union_deps = [&](std::initializer_list<int> idx) {
    for (int k : idx)
      entry.deps.insert(prem[k]->deps.begin(), prem[k]->deps.end());
  };

  switch (s.rule) {
    case NDRuleKind::Hypothesis: {
      if (!arity(0, 0)) return fail(s.id, CheckFail::BadStep, "hyp takes nothing");
      entry.is_hypothesis = true;
      entry.deps = {s.id};
      break;
    }
    case NDRuleKind::AxiomInstance: {
      if (!arity(0, 0))
        return fail(s.id, CheckFail::BadStep, "axiom takes no premises");
      const Formula* ax = nullptr;
      if (auto it = table.axioms.find(s.ref); it != table.axioms.end())
        ax = &it->second;
      else if (auto lt = table.lemmas.find(s.ref); lt != table.lemmas.end())
        ax = &lt->second;
      if (!ax) return fail(s.id, CheckFail::UnknownAxiom, "'" + s.ref + "'");
      std::string err;
      auto inst = axiom_instance(*ax, s.inst, err);
      if (!inst) return fail(s.id, CheckFail::BadInstantiation, err);
      if (*inst != s.formula)
        return fail(s.id, CheckFail::FormulaMismatch,
                    "instance of " + s.ref + " is " + to_string(*inst));
      break;
    }
    case NDRuleKind::ImpElim: {
      if (!arity(2, 0)) return fail(s.id, CheckFail::BadStep, "imp_elim takes 2 premises");
      const Formula& maj = prem[0]->formula;
      if (maj.kind() != Formula::Kind::Implies)
        return fail(s.id, CheckFail::FormulaMismatch, "first premise is not an implication");
      if (maj.left() != prem[1]->formula)
        return fail(s.id, CheckFail::FormulaMismatch, "minor premise mismatch");
      if (maj.right() != s.formula)
        return fail(s.id, CheckFail::FormulaMismatch, "conclusion mismatch");
      union_deps({0, 1});
      break;
    }
    case NDRuleKind::ImpIntro: {
      if (!arity(1, 1)) return fail(s.id, CheckFail::BadStep, "imp_intro takes 1 premise, 1 discharge");
      auto h = state.steps.find(s.discharge[0]);
      if (h == state.steps.end() || !h->second.is_hypothesis || !h->second.alive)
        return fail(s.id, CheckFail::BadDischarge,
                    "discharge target is not a live hypothesis");
      if (s.formula.kind() != Formula::Kind::Implies ||
          s.formula.left() != h->second.formula ||
          s.formula.right() != prem[0]->formula)
        return fail(s.id, CheckFail::FormulaMismatch,
                    "conclusion must be hypothesis -> premise");
      union_deps({0});
      entry.deps.erase(s.discharge[0]);
      h->second.alive = false;
      break;
    }
    case NDRuleKind::AndIntro: {
      if (!arity(2, 0)) return fail(s.id, CheckFail::BadStep, "and_intro takes 2 premises");
      if (s.formula.kind() != Formula::Kind::And ||
          s.formula.left() != prem[0]->formula ||
          s.formula.right() != prem[1]->formula)
        return fail(s.id, CheckFail::FormulaMismatch, "conclusion mismatch");
      union_deps({0, 1});
      break;
    }
    case NDRuleKind::AndElimLeft:
    case NDRuleKind::AndElimRight: {
      if (!arity(1, 0)) return fail(s.id, CheckFail::BadStep, "and_elim takes 1 premise");
      const Formula& p = prem[0]->formula;
      if (p.kind() != Formula::Kind::And)
        return fail(s.id, CheckFail::FormulaMismatch, "premise is not a conjunction");
      const Formula& want =
          s.rule == NDRuleKind::AndElimLeft ? p.left() : p.right();
      if (want != s.formula)
        return fail(s.id, CheckFail::FormulaMismatch, "conclusion mismatch");
      union_deps({0});
      break;
    }
    case NDRuleKind::OrIntroLeft:
    case NDRuleKind::OrIntroRight: {
      if (!arity(1, 0)) return fail(s.id, CheckFail::BadStep, "or_intro takes 1 premise");
      if (s.formula.kind() != Formula::Kind::Or)
        return fail(s.id, CheckFail::FormulaMismatch, "conclusion is not a disjunction");
      const Formula& want = s.rule == NDRuleKind::OrIntroLeft
                                ? s.formula.left()
                                : s.formula.right();
      if (want != prem[0]->formula)
        return fail(s.id, CheckFail::FormulaMismatch, "conclusion mismatch");
      union_deps({0});
      break;
    }
    case NDRuleKind::OrElim: {
      if (!arity(3, 2)) return fail(s.id, CheckFail::BadStep, "or_elim takes 3 premises, 2 discharges");
      const Formula& d = prem[0]->formula;
      if (d.kind() != Formula::Kind::Or)
        return fail(s.id, CheckFail::FormulaMismatch, "first premise is not a disjunction");
      if (s.discharge[0] == s.discharge[1])
        return fail(s.id, CheckFail::BadDischarge, "case hypotheses must differ");
      auto h1 = state.steps.find(s.discharge[0]);
      auto h2 = state.steps.find(s.discharge[1]);
      if (h1 == state.steps.end() || !h1->second.is_hypothesis || !h1->second.alive ||
          h2 == state.steps.end() || !h2->second.is_hypothesis || !h2->second.alive)
        return fail(s.id, CheckFail::BadDischarge,
                    "discharge targets are not live hypotheses");
      if (h1->second.formula != d.left() || h2->second.formula != d.right())
        return fail(s.id, CheckFail::BadDischarge,
                    "case hypotheses do not match the disjuncts");
      if (prem[1]->formula != s.formula || prem[2]->formula != s.formula)
        return fail(s.id, CheckFail::FormulaMismatch,
                    "both cases must conclude the or_elim formula");
      // a case derivation may not lean on the other case's hypothesis
      if (prem[1]->deps.count(s.discharge[1]) ||
          prem[2]->deps.count(s.discharge[0]))
        return fail(s.id, CheckFail::BadPremise,
                    "case conclusion leans on the other case hypothesis");
      union_deps({0, 1, 2});
      entry.deps.erase(s.discharge[0]);
      entry.deps.erase(s.discharge[1]);
      h1->second.alive = false;
      h2->second.alive = false;
      break;
    }
    case NDRuleKind::NegElim: {
      if (!arity(2, 0)) return fail(s.id, CheckFail::BadStep, "neg_elim takes 2 premises");
      const Formula& neg = prem[1]->formula;
      if (!neg.is_negation() || neg.left() != prem[0]->formula)
        return fail(s.id, CheckFail::FormulaMismatch,
                    "second premise must negate the first");
      if (s.formula.kind() != Formula::Kind::Falsum)
        return fail(s.id, CheckFail::FormulaMismatch, "conclusion must be false");
      union_deps({0, 1});
      break;
    }
    case NDRuleKind::ExFalso: {
      if (!arity(1, 0)) return fail(s.id, CheckFail::BadStep, "ex_falso takes 1 premise");
      if (prem[0]->formula.kind() != Formula::Kind::Falsum)
        return fail(s.id, CheckFail::FormulaMismatch, "premise must be false");
      union_deps({0});
      break;
    }
    case NDRuleKind::ForallIntro: {
      if (!arity(1, 0)) return fail(s.id, CheckFail::BadStep, "forall_intro takes 1 premise");
      if (s.formula.kind() != Formula::Kind::Forall)
        return fail(s.id, CheckFail::FormulaMismatch, "conclusion is not universal");
      std::string eigen = s.formula.var();
      if (!s.inst.empty()) {
        if (s.inst.size() != 1 || !s.inst.count(s.formula.var()) ||
            s.inst.begin()->second.kind() != Term::Kind::Variable)
          return fail(s.id, CheckFail::BadInstantiation,
                      "forall_intro instantiation must map the bound variable to the eigenvariable");
        eigen = s.inst.begin()->second.name();
      }
      Substitution open{{s.formula.var(), Term::variable(eigen)}};
      if (apply_subst(open, s.formula.body()) != prem[0]->formula)
        return fail(s.id, CheckFail::FormulaMismatch,
                    "premise is not the matrix at the eigenvariable");
      if (free_vars(s.formula).count(eigen))
        return fail(s.id, CheckFail::EigenvariableViolation,
                    "eigenvariable free in the conclusion");
      for (const auto& [id, e] : state.steps)
        if (e.is_hypothesis && e.alive && free_vars(e.formula).count(eigen))
          return fail(s.id, CheckFail::EigenvariableViolation,
                      "eigenvariable '" + eigen + "' free in live hypothesis " +
                          std::to_string(id));
      union_deps({0});
      break;
    }
    case NDRuleKind::ForallElim: {
      if (!arity(1, 0)) return fail(s.id, CheckFail::BadStep, "forall_elim takes 1 premise");
      const Formula& p = prem[0]->formula;
      if (p.kind() != Formula::Kind::Forall)
        return fail(s.id, CheckFail::FormulaMismatch, "premise is not universal");
      if (s.inst.size() != 1 || !s.inst.count(p.var()))
        return fail(s.id, CheckFail::BadInstantiation,
                    "forall_elim instantiates exactly the outermost variable");
      if (apply_subst(s.inst, p.body()) != s.formula)
        return fail(s.id, CheckFail::FormulaMismatch, "conclusion mismatch");
      union_deps({0});
      break;
    }
  }

  state.steps[s.id] = std::move(entry);
  state.last_id = s.id;
  return ok_report();
}

CheckReport check_script(const NDScript& script, const AxiomTable& table) {
  ScriptState state;
  for (const NDStep& s : script.steps) {
    CheckReport r = check_step(state, s, table);
    if (!r.ok) return r;
  }
  if (script.steps.empty())
    return fail(-1, CheckFail::GoalMismatch, "empty script");
  const NDStep& last = script.steps.back();
  if (last.formula != script.goal)
    return fail(last.id, CheckFail::GoalMismatch,
                "final step does not prove the goal");
  if (!state.steps.at(last.id).deps.empty())
    return fail(last.id, CheckFail::UndischargedHypothesis,
                "goal still leans on open hypotheses");
  for (const auto& [id, e] : state.steps)
    if (e.is_hypothesis && e.alive)
      return fail(id, CheckFail::UndischargedHypothesis,
                  "hypothesis never discharged");
  return ok_report();
}

std::set<std::string> used_axioms(const NDScript& script,
                                  const std::map<std::string, NDScript>& all,
                                  bool transitive) {
  std::set<std::string> out;
  std::set<std::string> visited;
  std::vector<const NDScript*> stack{&script};
  visited.insert(script.name);
  while (!stack.empty()) {
    const NDScript* cur = stack.back();
    stack.pop_back();
    for (const NDStep& s : cur->steps) {
      if (s.rule != NDRuleKind::AxiomInstance) continue;
      auto it = all.find(s.ref);
      if (it != all.end()) {
        if (transitive && visited.insert(s.ref).second)
          stack.push_back(&it->second);
      } else {
        out.insert(s.ref);
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Script file format

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<int> parse_id_list(const std::string& s, const std::string& what) {
  std::vector<int> out;
  for (const std::string& item : split_commas(s)) {
    try {
      out.push_back(std::stoi(item));
    } catch (const std::exception&) {
      throw Error("script: bad " + what + " list entry '" + item + "'");
    }
  }
  return out;
}

NDRuleKind rule_from_name(const std::string& name) {
  static const std::map<std::string, NDRuleKind> table = {
      {"hyp", NDRuleKind::Hypothesis},
      {"imp_elim", NDRuleKind::ImpElim},
      {"imp_intro", NDRuleKind::ImpIntro},
      {"and_intro", NDRuleKind::AndIntro},
      {"and_elim_left", NDRuleKind::AndElimLeft},
      {"and_elim_right", NDRuleKind::AndElimRight},
      {"or_intro_left", NDRuleKind::OrIntroLeft},
      {"or_intro_right", NDRuleKind::OrIntroRight},
      {"or_elim", NDRuleKind::OrElim},
      {"neg_elim", NDRuleKind::NegElim},
      {"ex_falso", NDRuleKind::ExFalso},
      {"forall_intro", NDRuleKind::ForallIntro},
      {"forall_elim", NDRuleKind::ForallElim},
  };
  auto it = table.find(name);
  if (it == table.end()) throw Error("script: unknown rule '" + name + "'");
  return it->second;
}

Substitution parse_inst(const std::string& body, const Signature& sig) {
  Substitution out;
  for (const std::string& binding : split_commas(body)) {
    auto pos = binding.find(":=");
    if (pos == std::string::npos)
      throw Error("script: bad binding '" + binding + "'");
    std::string var = trim(binding.substr(0, pos));
    std::string term = trim(binding.substr(pos + 2));
    if (var.empty() || term.empty())
      throw Error("script: bad binding '" + binding + "'");
    out.insert_or_assign(var, parse_term(term, sig));
  }
  return out;
}

}  // namespace

NDScript parse_script(const std::string& text, const Signature& sig,
                      const std::vector<DefinedPredicate>& defs) {
  NDScript script;
  bool have_goal = false;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw = raw.substr(0, hash);
    std::string line = trim(raw);
    if (line.empty()) continue;

    auto starts = [&](const char* kw) {
      size_t n = std::string(kw).size();
      return line.rfind(kw, 0) == 0 &&
             (line.size() == n || line[n] == ' ' || line[n] == '\t');
    };

    try {
      if (starts("script")) {
        script.name = trim(line.substr(6));
      } else if (starts("problem")) {
        script.problem = trim(line.substr(7));
      } else if (starts("uses")) {
        script.uses = split_commas(line.substr(4));
      } else if (starts("goal")) {
        script.goal = parse_formula(trim(line.substr(4)), sig, defs);
        have_goal = true;
      } else {
        // <id>. <formula> ; <rule> premises=[..] inst={..} discharge=[..]
        auto dot = line.find('.');
        if (dot == std::string::npos)
          throw Error("script: expected '<id>.'");
        NDStep step;
        step.id = std::stoi(line.substr(0, dot));
        auto semi = line.find(';', dot);
        if (semi == std::string::npos)
          throw Error("script: expected ';' after the formula");
        step.formula =
            parse_formula(trim(line.substr(dot + 1, semi - dot - 1)), sig, defs);

        std::string rest = trim(line.substr(semi + 1));
        // rule name is the first token; axiom carries (name)
        size_t sp = rest.find_first_of(" \t");
        std::string rulename = sp == std::string::npos ? rest : rest.substr(0, sp);
        std::string tail = sp == std::string::npos ? "" : trim(rest.substr(sp));
        if (rulename.rfind("axiom(", 0) == 0 && rulename.back() == ')') {
          step.rule = NDRuleKind::AxiomInstance;
          step.ref = rulename.substr(6, rulename.size() - 7);
        } else {
          step.rule = rule_from_name(rulename);
        }

        // key=value attributes
        size_t pos = 0;
        while (pos < tail.size()) {
          while (pos < tail.size() && std::isspace(static_cast<unsigned char>(tail[pos]))) ++pos;
          if (pos >= tail.size()) break;
          auto eq = tail.find('=', pos);
          if (eq == std::string::npos)
            throw Error("script: bad attribute near '" + tail.substr(pos) + "'");
          std::string key = trim(tail.substr(pos, eq - pos));
          char open = tail[eq + 1];
          char close = open == '[' ? ']' : '}';
          if (open != '[' && open != '{')
            throw Error("script: attribute '" + key + "' must use [..] or {..}");
          auto end = tail.find(close, eq + 1);
          if (end == std::string::npos)
            throw Error("script: unterminated attribute '" + key + "'");
          std::string body = tail.substr(eq + 2, end - eq - 2);
          if (key == "premises") step.premises = parse_id_list(body, "premises");
          else if (key == "discharge") step.discharge = parse_id_list(body, "discharge");
          else if (key == "inst") step.inst = parse_inst(body, sig);
          else throw Error("script: unknown attribute '" + key + "'");
          pos = end + 1;
        }
        script.steps.push_back(std::move(step));
      }
    } catch (const Error& e) {
      throw Error(std::string(e.what()) + " (line " + std::to_string(lineno) + ")");
    }
  }
  if (script.name.empty()) throw Error("script: missing 'script <name>' header");
  if (script.problem.empty())
    throw Error("script '" + script.name + "': missing 'problem' header");
  if (!have_goal)
    throw Error("script '" + script.name + "': missing 'goal' header");
  return script;
}

std::string to_string(const NDScript& script) {
  std::ostringstream out;
  out << "script " << script.name << "\n";
  out << "problem " << script.problem << "\n";
  if (!script.uses.empty()) {
    out << "uses ";
    for (size_t i = 0; i < script.uses.size(); ++i) {
      if (i) out << ", ";
      out << script.uses[i];
    }
    out << "\n";
  }
  out << "goal " << to_string(script.goal) << "\n";
  for (const NDStep& s : script.steps) {
    out << s.id << ". " << to_string(s.formula) << " ; ";
    if (s.rule == NDRuleKind::AxiomInstance)
      out << "axiom(" << s.ref << ")";
    else
      out << to_string(s.rule);
    if (!s.premises.empty()) {
      out << " premises=[";
      for (size_t i = 0; i < s.premises.size(); ++i) {
        if (i) out << ",";
        out << s.premises[i];
      }
      out << "]";
    }
    if (!s.inst.empty()) {
      out << " inst={";
      bool first = true;
      for (const auto& [v, t] : s.inst) {
        if (!first) out << ", ";
        first = false;
        out << v << ":=" << to_string(t);
      }
      out << "}";
    }
    if (!s.discharge.empty()) {
      out << " discharge=[";
      for (size_t i = 0; i < s.discharge.size(); ++i) {
        if (i) out << ",";
        out << s.discharge[i];
      }
      out << "]";
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace revline
