#pragma once

#include <memory>
#include <string>
#include <vector>

#include "domcalc/domain_set.hpp"
#include "domcalc/expr.hpp"

namespace domcalc {

class FactBase;

/// Lattice Unknown < {Trivial, NonTrivial < Dense}.
enum class Verdict { unknown, trivial, nontrivial, dense };

std::string to_string(Verdict v);
/// True when both are definite and disagree (Trivial vs NonTrivial/Dense).
bool contradicts(Verdict a, Verdict b);
/// The more specific of two comparable verdicts.
Verdict more_specific(Verdict a, Verdict b);

enum class JudgmentKind { dom_eq, set_eq, injective, dense, nontrivial, verdict };

/// dom_eq: dom(expr) = lhs; set_eq: lhs = rhs; injective: expr;
/// dense / nontrivial: lhs; verdict: dom(expr) is `verdict`.
struct Judgment {
  JudgmentKind kind;
  Expr expr;
  DomainSet lhs;
  DomainSet rhs;
  Verdict verdict = Verdict::unknown;
};

namespace judge {
Judgment dom_eq(Expr e, DomainSet s);
Judgment set_eq(DomainSet a, DomainSet b);
Judgment injective(Expr e);
Judgment dense(DomainSet s);
Judgment nontrivial(DomainSet s);
Judgment verdict(Expr e, Verdict v);
}  // namespace judge

std::string to_string(const Judgment& j);
bool judgment_equal(const Judgment& a, const Judgment& b);

struct Derivation;
using DerivationPtr = std::shared_ptr<const Derivation>;

struct Derivation {
  std::string rule;
  Judgment conclusion;
  std::vector<DerivationPtr> premises;
  std::vector<std::string> axioms;
};

DerivationPtr derive(std::string rule, Judgment conclusion,
                     std::vector<DerivationPtr> premises = {},
                     std::vector<std::string> axioms = {});

/// Names of every rule the engine may emit.
const std::vector<std::string>& rule_names();

struct CheckResult {
  bool ok = true;
  std::string failing_rule;
  std::string failing_conclusion;
  std::string reason;
  explicit operator bool() const { return ok; }
};

/// Re-checks every node against its rule template and the cited axioms.
/// Independent of the inference search.
CheckResult verify_derivation(const DerivationPtr& d, const FactBase& facts);

enum class TraceFormat { json, markdown };

/// Throws UnverifiedDerivation unless `d` verifies against `facts`.
std::string export_trace(const DerivationPtr& d, const FactBase& facts, TraceFormat format);

/// Every axiom id cited anywhere in the tree, sorted.
std::vector<std::string> cited_axioms(const DerivationPtr& d);
std::size_t derivation_size(const DerivationPtr& d);

}  // namespace domcalc
