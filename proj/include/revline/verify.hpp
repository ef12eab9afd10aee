#pragma once

// Independent checker for refutation proofs.  Every node is re-derived from
// its recorded parents using only unification, substitution application and
// the documented standardize-apart scheme; nothing of the saturation loop is
// reused.  Input nodes must match the problem's clausified axiom/goal set.

#include <string>
#include <vector>

#include "revline/prover.hpp"

namespace revline {

struct VerifyResult {
  bool ok = false;
  int failed_id = -1;     // first failing node, -1 when ok
  std::string reason;

  explicit operator bool() const { return ok; }
};

VerifyResult verify_refutation(const RefutationProof& proof,
                               const std::vector<Clause>& expected_inputs);

}  // namespace revline
