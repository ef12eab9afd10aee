#pragma once

// Intuitionistic natural-deduction proof checker.  The rule set has no
// excluded middle and no double-negation elimination; ex falso is the only
// way out of absurdity.  Scripts are numbered step lists; hypothesis scoping
// is tracked through per-step dependency sets, so a conclusion that leans on
// a discharged hypothesis can never be reused.
//
// Script file format, one step per line:
//   script S1
//   problem G3
//   uses S4, S5
//   goal <formula>
//   <id>. <formula> ; <rule> premises=[...] inst={x:=term,...} discharge=[...]
//
// Rules: hyp, axiom(<name>), imp_elim, imp_intro, and_intro, and_elim_left,
// and_elim_right, or_intro_left, or_intro_right, or_elim, neg_elim, ex_falso,
// forall_intro, forall_elim.  axiom(<name>) also cites checked lemmas listed
// under `uses`.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "revline/syntax.hpp"

namespace revline {

enum class NDRuleKind {
  Hypothesis,
  AxiomInstance,
  ImpElim,
  ImpIntro,
  AndIntro,
  AndElimLeft,
  AndElimRight,
  OrIntroLeft,
  OrIntroRight,
  OrElim,
  NegElim,
  ExFalso,
  ForallIntro,
  ForallElim,
};

std::string to_string(NDRuleKind k);

struct NDStep {
  int id = 0;
  Formula formula = Formula::falsum();
  NDRuleKind rule = NDRuleKind::Hypothesis;
  std::string ref;              // axiom or lemma name for AxiomInstance
  std::vector<int> premises;
  Substitution inst;            // AxiomInstance / ForallElim / ForallIntro
  std::vector<int> discharge;   // ImpIntro (one), OrElim (two, left then right)
};

struct NDScript {
  std::string name;
  std::string problem;            // problem whose axioms may be cited
  std::vector<std::string> uses;  // lemma scripts usable via axiom(...)
  Formula goal = Formula::falsum();
  std::vector<NDStep> steps;
};

enum class CheckFail {
  None,
  BadStep,            // malformed ids/arity of the rule
  BadPremise,         // missing, later, or leaning on a dead hypothesis
  FormulaMismatch,    // conclusion is not what the rule derives
  BadInstantiation,
  BadDischarge,
  EigenvariableViolation,
  UndischargedHypothesis,
  UnknownAxiom,
  GoalMismatch,
};

std::string to_string(CheckFail f);

struct CheckReport {
  bool ok = false;
  int step_id = -1;
  CheckFail reason = CheckFail::None;
  std::string detail;

  explicit operator bool() const { return ok; }
};

// Axioms and already-checked lemma goals the script may instantiate.
struct AxiomTable {
  std::map<std::string, Formula> axioms;
  std::map<std::string, Formula> lemmas;
};

// Incremental checking state; check_step validates one step against it.
struct ScriptState {
  struct Entry {
    Formula formula = Formula::falsum();
    std::set<int> deps;   // live hypothesis ids this conclusion leans on
    bool is_hypothesis = false;
    bool alive = true;    // hypotheses only: not yet discharged
  };
  std::map<int, Entry> steps;
  int last_id = -1;
};

CheckReport check_step(ScriptState& state, const NDStep& step,
                       const AxiomTable& table);

CheckReport check_script(const NDScript& script, const AxiomTable& table);

// Axiom names cited via AxiomInstance; with transitive=true, lemma citations
// are resolved through `all`.
std::set<std::string> used_axioms(const NDScript& script,
                                  const std::map<std::string, NDScript>& all,
                                  bool transitive);

NDScript parse_script(const std::string& text, const Signature& sig,
                      const std::vector<DefinedPredicate>& defs = {});
std::string to_string(const NDScript& script);

}  // namespace revline
