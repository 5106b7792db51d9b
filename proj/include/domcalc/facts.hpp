#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "domcalc/atoms.hpp"
#include "domcalc/domain_set.hpp"
#include "domcalc/monomial.hpp"

namespace domcalc {

enum class AxiomKind { dom_eq, meet_trivial, dense, range, inverse_link };

/// One citeable fact. `id` is its canonical text and what derivations cite.
struct Axiom {
  std::string id;
  AxiomKind kind;
  Chain key;                 // dom_eq: normalized left-hand side
  bool rhs_trivial = false;  // dom_eq: "= trivial", otherwise "= dom(rhs_atom)"
  std::string first;         // meet/dense/range/link: first atom
  std::string second;        // meet/range/link: second atom; dom_eq: rhs atom
  int line = 0;              // provenance in the facts text, 0 if built in code
};

/// Atom declarations plus domain/range axioms. Immutable once loaded.
class FactBase {
 public:
  const AtomTable& atoms() const { return atoms_; }
  const std::vector<Axiom>& axioms() const { return axioms_; }

  const Axiom* find(const std::string& id) const;
  const Axiom* dom_axiom(const Chain& key) const;
  bool meet_trivial(const std::string& a, const std::string& b) const;
  const Axiom* meet_axiom(const std::string& a, const std::string& b) const;
  const Axiom* dense_axiom(const std::string& atom) const;
  /// Range axiom or inverse link establishing ran(atom) = dom(other).
  const Axiom* range_axiom(const std::string& atom) const;

  /// Right-hand side of a dom_eq axiom as a set.
  DomainSet rhs_set(const Axiom& ax) const;

 private:
  friend FactBase load_facts(std::string_view text);
  void add(Axiom ax);

  AtomTable atoms_;
  std::vector<Axiom> axioms_;
};

/// Line-oriented facts format ('#' comments):
///   atom <id> { flag, ... }
///   link inverse <id> <id>
///   axiom dom(<expr>) = trivial | dom(<atom>)
///   axiom meet dom(<atom>) dom(<atom>) = trivial
///   axiom dense dom(<atom>)
///   axiom range <atom> = dom(<atom>)
/// Throws ParseError (position = line number) or ConflictingAxiom.
FactBase load_facts(std::string_view text);
FactBase load_facts_file(const std::string& path);

/// "A*B^-1*C'" style key used in axiom ids.
std::string compact_chain(const Chain& c);

}  // namespace domcalc
