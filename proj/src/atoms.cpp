#include "domcalc/atoms.hpp"

#include <array>

#include "domcalc/errors.hpp"

namespace domcalc {

namespace {
constexpr std::array<const char*, 8> kFlagNames = {
    "self_adjoint", "positive", "injective", "bounded",
    "everywhere_defined", "densely_defined", "closed", "unbounded"};
}

std::string to_string(Flag f) { return kFlagNames[std::size_t(f)]; }

std::optional<Flag> flag_from_string(const std::string& s) {
  for (std::size_t i = 0; i < kFlagNames.size(); ++i)
    if (s == kFlagNames[i]) return Flag(i);
  return std::nullopt;
}

void check_flags(const AtomDecl& decl, const AtomTable* table) {
  const FlagSet& f = decl.flags;
  auto fail = [&](const std::string& why) {
    throw InconsistentFlags("atom " + decl.id + ": " + why);
  };
  if (f.has(Flag::everywhere_defined) && !f.has(Flag::densely_defined))
    fail("everywhere_defined requires densely_defined");
  if (f.has(Flag::self_adjoint) &&
      !(f.has(Flag::closed) && f.has(Flag::densely_defined)))
    fail("self_adjoint requires closed and densely_defined");
  if (f.has(Flag::bounded) && f.has(Flag::unbounded))
    fail("bounded and unbounded are exclusive");
  if (decl.inverse_of) {
    if (!f.has(Flag::injective)) fail("inverse atoms must be injective");
    if (table) {
      const AtomDecl* other = table->find(*decl.inverse_of);
      if (other && !other->flags.has(Flag::injective))
        fail("inverse partner " + other->id + " must be injective");
      if (other && !(other->shape == decl.shape))
        fail("inverse partner has a different shape");
    }
  }
  if (decl.adjoint_of && table) {
    const AtomDecl* other = table->find(*decl.adjoint_of);
    if (other && !(other->shape == decl.shape))
      fail("adjoint partner has a different shape");
  }
}

void AtomTable::declare(AtomDecl decl) {
  if (decl.id.empty() || decl.id == "I") throw DuplicateId("reserved atom id");
  if (index_.count(decl.id)) throw DuplicateId("atom already declared: " + decl.id);
  check_flags(decl, this);
  index_[decl.id] = atoms_.size();
  atoms_.push_back(std::move(decl));
}

const AtomDecl* AtomTable::find(const std::string& id) const {
  auto it = index_.find(id);
  return it == index_.end() ? nullptr : &atoms_[it->second];
}

bool AtomTable::has_flag(const std::string& id, Flag f) const {
  const AtomDecl* d = find(id);
  return d && d->flags.has(f);
}

std::optional<std::string> AtomTable::inverse_partner(const std::string& id) const {
  if (const AtomDecl* d = find(id); d && d->inverse_of) return d->inverse_of;
  for (const auto& a : atoms_)
    if (a.inverse_of && *a.inverse_of == id) return a.id;
  return std::nullopt;
}

std::optional<std::string> AtomTable::adjoint_partner(const std::string& id) const {
  if (const AtomDecl* d = find(id); d && d->adjoint_of) return d->adjoint_of;
  for (const auto& a : atoms_)
    if (a.adjoint_of && *a.adjoint_of == id) return a.id;
  return std::nullopt;
}

}  // namespace domcalc
