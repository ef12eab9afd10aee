#pragma once

// Given-clause binary resolution with factoring, forward/backward
// subsumption and tautology deletion.  Selection alternates between the
// oldest and the lightest passive clause according to pick_ratio; within a
// pick cycle of length age+weight the first `age` picks are by age.  Ties
// always break toward the smaller clause id, so a run is a pure function of
// the input clause list and the configuration.

#include <optional>
#include <string>
#include <vector>

#include "revline/clause.hpp"
#include "revline/syntax.hpp"

namespace revline {

struct ProverConfig {
  int max_generated_clauses = 50000;
  double timeout_seconds = 10.0;
  int pick_age = 1;    // pick_ratio age:weight
  int pick_weight = 4;
  bool enable_subsumption = true;

  void validate() const {
    if (max_generated_clauses <= 0 || timeout_seconds <= 0 || pick_age <= 0 ||
        pick_weight <= 0)
      throw Error("prover config: all limits must be positive");
  }
};

enum class ProveOutcome { Refutation, Saturated, ResourceOut };
std::string to_string(ProveOutcome o);

struct RefutationProof {
  std::vector<Clause> clauses;            // ancestors of the empty clause, by id
  std::vector<std::string> used_inputs;   // distinct input names, insertion order
  int empty_id = -1;
};

struct ProveStats {
  long long generated = 0;  // clauses produced by inference
  long long kept = 0;       // clauses admitted to the passive set
  double seconds = 0;
};

struct SaturateResult {
  ProveOutcome outcome = ProveOutcome::Saturated;
  std::optional<RefutationProof> proof;
  ProveStats stats;
};

// Binary resolvent of c1[i] against c2[j]; c2 is standardized apart with
// rename_apart before unification.  Opposite signs required.
std::optional<Clause> resolve(const Clause& c1, const Clause& c2, int i, int j,
                              int new_id);

// All binary factors of same-sign unifiable literal pairs.
std::vector<Clause> factor(const Clause& c, int first_new_id);

// True iff some substitution maps c1's literal set into a subset of c2's.
bool subsumes(const Clause& c1, const Clause& c2);

SaturateResult saturate(const std::vector<Clause>& inputs,
                        const ProverConfig& cfg);

struct ProveResult {
  ProveOutcome outcome = ProveOutcome::Saturated;
  std::optional<RefutationProof> proof;
  ProveStats stats;
  ClausifyResult clausal;  // the input clause set the run started from
};

// expand_defs -> clausify -> saturate.
ProveResult prove(const std::vector<std::pair<std::string, Formula>>& axioms,
                  const Formula& goal, const Signature& sig,
                  const std::vector<DefinedPredicate>& defs,
                  const ProverConfig& cfg);

std::string to_string(const RefutationProof& p);

}  // namespace revline
