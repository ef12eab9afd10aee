#pragma once

// Shared source texts for the built-in corpus: the axiom family around the
// Undir relation and the rev construction, and the bundled proof scripts.

#include <vector>

#include "revline/nd.hpp"
#include "revline/syntax.hpp"

namespace revline::corpus_texts {

inline constexpr const char* kI5 = "forall l. ~Undir(l,l)";
inline constexpr const char* kI6 =
    "forall l. forall m. forall n. (Undir(l,m) -> Undir(l,n) | Undir(m,n))";
inline constexpr const char* kI7 =
    "forall l. forall m. forall n. (Undir(l,m) & Undir(l,rev(m)) -> "
    "Undir(l,n) & Undir(l,rev(n)) | Undir(m,n) & Undir(m,rev(n)))";
inline constexpr const char* kI8 =
    "forall l. forall m. (Undir(l,m) | Undir(l,rev(m)))";
inline constexpr const char* kSym =
    "forall l. forall m. (Undir(l,rev(m)) -> Undir(m,rev(l)))";
inline constexpr const char* kW1 =
    "forall l. forall m. forall n. (Undir(l,m) & Undir(l,rev(m)) -> "
    "Undir(l,n) | Undir(m,n))";
inline constexpr const char* kW2 =
    "forall l. forall m. forall n. (Undir(l,m) & Undir(l,rev(m)) -> "
    "Undir(l,n) | Undir(m,rev(n)))";
inline constexpr const char* kW3 =
    "forall l. forall m. forall n. (Undir(l,m) & Undir(l,rev(m)) -> "
    "Undir(l,rev(n)) | Undir(m,n))";
inline constexpr const char* kW4 =
    "forall l. forall m. forall n. (Undir(l,m) & Undir(l,rev(m)) -> "
    "Undir(l,rev(n)) | Undir(m,rev(n)))";

// convergence of two lines, ignoring direction
inline constexpr const char* kConBody = "Undir(l,m) & Undir(l,rev(m))";

// symmetry of Undir itself, derivable from I.5 and I.6 alone
inline constexpr const char* kG0Goal =
    "forall l. forall m. (Undir(l,m) -> Undir(m,l))";

}  // namespace revline::corpus_texts

namespace revline {

// S1-S8, parsed and generated against the corpus signature.  S6 (the
// sixteen-case derivation that the conjunction w1..w4 implies the full
// convergence axiom) is generated mechanically; the others are transcribed
// step lists.
std::vector<NDScript> bundled_scripts(const Signature& sig,
                                      const std::vector<DefinedPredicate>& defs);

}  // namespace revline
