#pragma once

#include <utility>

#include "domcalc/derivation.hpp"
#include "domcalc/domain_set.hpp"
#include "domcalc/expr.hpp"
#include "domcalc/facts.hpp"

namespace domcalc {

struct DomainResult {
  DomainSet set;
  DerivationPtr proof;  // concludes dom(e) = set
};

struct SimplifyResult {
  DomainSet set;
  DerivationPtr proof;  // concludes s = set
};

struct VerdictResult {
  Verdict verdict = Verdict::unknown;
  DomainSet set;
  DerivationPtr proof;  // concludes dom(e) is verdict
};

enum class Injectivity { yes, unknown };

struct InjectivityResult {
  Injectivity value = Injectivity::unknown;
  DerivationPtr proof;  // set when value == yes
};

/// Structural domain of `e` (D-ATOM, D-ID, D-COMP, D-BLOCK), simplified.
/// Power and compound Adjoint/Inverse nodes go through the normal form when
/// it exists and are left as dom(e) otherwise.
DomainResult domain_of(const Expr& e, const FactBase& facts);

/// Rewrites `s` to a fixpoint of the simplification rules.
SimplifyResult simplify_domain(const DomainSet& s, const FactBase& facts);

InjectivityResult injectivity_of(const Expr& e, const FactBase& facts);

/// Normalizes `e`, searches all regroupings of every chain (up to length 8;
/// longer chains only split at their ends) and returns the most specific
/// verdict. Throws NonNormalizable, or ContradictionDetected if two
/// regroupings disagree.
VerdictResult verdict_of(const Expr& e, const FactBase& facts);

/// Regrouping verdicts of a single Base-shaped chain, one per split point
/// at the top level (used by the grouping-consistency checks).
std::vector<Verdict> grouping_verdicts(const Chain& chain, const FactBase& facts);

inline constexpr std::size_t kMaxRegroupLength = 8;

}  // namespace domcalc
