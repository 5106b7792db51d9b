#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "domcalc/shape.hpp"

namespace domcalc {

enum class Flag : std::uint8_t {
  self_adjoint,
  positive,
  injective,
  bounded,
  everywhere_defined,
  densely_defined,
  closed,
  unbounded,
};

class FlagSet {
 public:
  FlagSet() = default;
  FlagSet(std::initializer_list<Flag> flags) {
    for (Flag f : flags) set(f);
  }
  bool has(Flag f) const { return bits_ & bit(f); }
  void set(Flag f) { bits_ |= bit(f); }
  void clear(Flag f) { bits_ &= ~bit(f); }
  std::uint16_t raw() const { return bits_; }
  friend bool operator==(FlagSet, FlagSet) = default;

 private:
  static std::uint16_t bit(Flag f) { return std::uint16_t(1u << unsigned(f)); }
  std::uint16_t bits_ = 0;
};

std::string to_string(Flag f);
std::optional<Flag> flag_from_string(const std::string& s);

struct AtomDecl {
  std::string id;
  FlagSet flags;
  std::optional<std::string> inverse_of;
  std::optional<std::string> adjoint_of;
  Shape shape = Shape::base();
};

/// Registry of declared atoms. Declarations are validated against the flag
/// implications and never mutated afterwards.
class AtomTable {
 public:
  /// Throws DuplicateId or InconsistentFlags.
  void declare(AtomDecl decl);

  const AtomDecl* find(const std::string& id) const;
  bool contains(const std::string& id) const { return find(id) != nullptr; }
  std::size_t size() const { return atoms_.size(); }
  const std::vector<AtomDecl>& all() const { return atoms_; }

  bool has_flag(const std::string& id, Flag f) const;
  /// Atom declared (in either direction) as the inverse of `id`.
  std::optional<std::string> inverse_partner(const std::string& id) const;
  std::optional<std::string> adjoint_partner(const std::string& id) const;

 private:
  std::vector<AtomDecl> atoms_;
  std::map<std::string, std::size_t> index_;
};

/// Throws InconsistentFlags when the implications between flags fail.
void check_flags(const AtomDecl& decl, const AtomTable* table);

}  // namespace domcalc
