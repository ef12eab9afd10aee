#pragma once

// The built-in problem corpus: named axioms, the Con definition, goals
// G0-G8, model tasks M1-M3 and proof scripts S1-S8, plus the machinery to
// run everything and aggregate a pass/fail report.
//
// Problem file format:
//   problem G3
//   kind prove                      (or model-search / check-script)
//   logic constructive              (informational)
//   axiom I.5: forall l. ~Undir(l,l)
//   goal <formula>                  (prove)
//   satisfy I.5, I.6                (model-search; names of axioms)
//   falsify SYM
//   sizes 1..3
//   script S1                       (check-script)
//   expect refutation|saturated|found|exhausted|ok

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "revline/model.hpp"
#include "revline/nd.hpp"
#include "revline/prover.hpp"
#include "revline/syntax.hpp"

#include "json.hpp"

namespace revline {

struct Problem {
  enum class Kind { Prove, ModelSearch, CheckScript };
  enum class Expected { Refutation, Saturated, Found, Exhausted, ScriptOk, None };

  std::string name;
  Kind kind = Kind::Prove;
  std::string logic;  // "classical" or "constructive", informational
  std::vector<std::pair<std::string, Formula>> axioms;
  std::optional<Formula> goal;                       // prove
  std::vector<std::string> satisfy, falsify;         // model-search
  int min_size = 1, max_size = 4;
  std::string script_ref;                            // check-script
  Expected expected = Expected::None;
};

std::string to_string(Problem::Kind k);
std::string to_string(Problem::Expected e);

struct Registry {
  Signature sig;
  std::vector<DefinedPredicate> defs;
  std::map<std::string, Formula> axioms;     // every named corpus formula
  std::map<std::string, Problem> problems;
  std::map<std::string, NDScript> scripts;

  const Problem& problem(const std::string& name) const;
  const NDScript& script(const std::string& name) const;
  Formula axiom(const std::string& name) const;

  // Scripts of a problem in dependency order; validation of the registry
  // invariants (unique names, acyclic script dependencies, known axioms).
  void validate() const;
  std::vector<std::string> scripts_in_dependency_order() const;
};

Registry load_corpus();

// Parse / render the external formats.
Problem parse_problem_text(const std::string& text, const Signature& sig,
                           const std::vector<DefinedPredicate>& defs,
                           const std::map<std::string, Formula>& fallback_axioms);
std::string to_string(const Problem& p);

// Reads *.p and *.nd files from dir, replacing or adding entries.
void overlay_from_dir(Registry& reg, const std::string& dir);
// Writes the registry out as problem and script files; returns file count.
int export_corpus(const Registry& reg, const std::string& dir);

// ---------------------------------------------------------------------------
// Running

struct CrossCheckResult {
  bool ran = false;
  bool countermodel_found = false;
  bool exhausted = false;
  long long scanned = 0;
  std::optional<Interpretation> model;
  // a refutation together with a countermodel is a hard inconsistency
  bool consistent = true;
};

// Countermodel search at sizes <= 3 for a prove problem, compared against
// the prover outcome.
CrossCheckResult cross_check(const Registry& reg, const Problem& p,
                             ProveOutcome outcome);

struct ProblemOutcome {
  std::string name;
  Problem::Kind kind = Problem::Kind::Prove;
  std::string expected, actual;
  bool pass = false;
  bool verified = false;        // verify_refutation on the emitted proof
  long long generated = 0, kept = 0, scanned = 0;
  int found_size = 0;
  CrossCheckResult cross;
  std::string error;
};

struct ScriptOutcome {
  std::string name;
  std::string problem;
  bool ok = false;
  CheckReport report;
  std::vector<std::string> used;             // direct axiom citations
  std::vector<std::string> used_transitive;  // through lemma dependencies
};

struct CorpusReport {
  std::vector<ProblemOutcome> problems;  // ordered by name
  std::vector<ScriptOutcome> scripts;    // ordered by name
  int undir_in_sym = 0, undir_in_i7 = 0;
  bool redundancy_ok = false;   // used_axioms(S4) == used_axioms(S5) == {I.6}
  bool equivalence_ok = false;  // G5 and G7 both refuted
  bool consistent = true;       // no refutation+countermodel pair
  bool pass = false;
  int pass_count = 0, total = 0;
};

CorpusReport run_all(const Registry& reg, const ProverConfig& cfg, int jobs = 1);

std::string report_text(const CorpusReport& r);
nlohmann::json report_json(const CorpusReport& r, const ProverConfig& cfg);

}  // namespace revline
