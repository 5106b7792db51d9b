#include "domcalc/facts.hpp"

#include <fstream>
#include <map>
#include <regex>
#include <sstream>

#include "domcalc/errors.hpp"
#include "domcalc/normalize.hpp"
#include "domcalc/parser.hpp"

namespace domcalc {

std::string compact_chain(const Chain& c) {
  std::string out;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) out += '*';
    std::string f = pretty_print(factor_expr(c[i]));
    if (c[i].opaque) f = "(" + f + ")";
    out += f;
  }
  return out.empty() ? "I" : out;
}

const Axiom* FactBase::find(const std::string& id) const {
  for (const auto& a : axioms_)
    if (a.id == id) return &a;
  return nullptr;
}

const Axiom* FactBase::dom_axiom(const Chain& key) const {
  for (const auto& a : axioms_)
    if (a.kind == AxiomKind::dom_eq && a.key == key) return &a;
  return nullptr;
}

const Axiom* FactBase::meet_axiom(const std::string& x, const std::string& y) const {
  for (const auto& a : axioms_)
    if (a.kind == AxiomKind::meet_trivial &&
        ((a.first == x && a.second == y) || (a.first == y && a.second == x)))
      return &a;
  return nullptr;
}

bool FactBase::meet_trivial(const std::string& a, const std::string& b) const {
  return meet_axiom(a, b) != nullptr;
}

const Axiom* FactBase::dense_axiom(const std::string& atom) const {
  for (const auto& a : axioms_)
    if (a.kind == AxiomKind::dense && a.first == atom) return &a;
  return nullptr;
}

const Axiom* FactBase::range_axiom(const std::string& atom) const {
  for (const auto& a : axioms_)
    if (a.kind == AxiomKind::range && a.first == atom) return &a;
  for (const auto& a : axioms_)
    if (a.kind == AxiomKind::inverse_link && a.first == atom) return &a;
  return nullptr;
}

DomainSet FactBase::rhs_set(const Axiom& ax) const {
  if (ax.rhs_trivial) return sets::trivial();
  return sets::dom(ex::atom(ax.second));
}

void FactBase::add(Axiom ax) {
  for (const auto& other : axioms_) {
    if (other.id == ax.id) return;
    bool clash = false;
    if (ax.kind == AxiomKind::dom_eq && other.kind == AxiomKind::dom_eq && other.key == ax.key)
      clash = true;
    if (ax.kind == AxiomKind::range && other.kind == AxiomKind::range && other.first == ax.first)
      clash = true;
    if (clash)
      throw ConflictingAxiom("line " + std::to_string(ax.line) + ": '" + ax.id +
                             "' conflicts with '" + other.id + "'");
  }
  axioms_.push_back(std::move(ax));
}

namespace {

const std::regex kAtomLine(R"(^atom\s+([A-Za-z_][A-Za-z0-9_]*)\s*\{([^}]*)\}\s*$)");
const std::regex kLinkLine(R"(^link\s+inverse\s+([A-Za-z_]\w*)\s+([A-Za-z_]\w*)\s*$)");
const std::regex kDomLine(R"(^axiom\s+dom\((.*)\)\s*=\s*(trivial|dom\(\s*([A-Za-z_]\w*)\s*\))\s*$)");
const std::regex kMeetLine(
    R"(^axiom\s+meet\s+dom\(\s*([A-Za-z_]\w*)\s*\)\s+dom\(\s*([A-Za-z_]\w*)\s*\)\s*=\s*trivial\s*$)");
const std::regex kDenseLine(R"(^axiom\s+dense\s+dom\(\s*([A-Za-z_]\w*)\s*\)\s*$)");
const std::regex kRangeLine(
    R"(^axiom\s+range\s+([A-Za-z_]\w*)\s*=\s*dom\(\s*([A-Za-z_]\w*)\s*\)\s*$)");

std::string trim(std::string s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void bad_line(int line, const std::string& what) {
  throw ParseError("line " + std::to_string(line) + ": " + what, std::size_t(line));
}

}  // namespace

FactBase load_facts(std::string_view text) {
  struct Line {
    int number;
    std::string body;
  };
  std::vector<Line> lines;
  {
    std::istringstream in{std::string(text)};
    std::string raw;
    int n = 0;
    while (std::getline(in, raw)) {
      ++n;
      if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
      std::string body = trim(raw);
      if (!body.empty()) lines.push_back({n, body});
    }
  }

  FactBase fb;
  std::vector<AtomDecl> decls;
  std::map<std::string, int> decl_line;
  std::vector<Axiom> links;
  std::smatch m;

  for (const auto& [n, body] : lines) {
    if (std::regex_match(body, m, kAtomLine)) {
      AtomDecl d;
      d.id = m[1];
      if (d.id == "I") bad_line(n, "'I' is reserved");
      std::stringstream flags(m[2].str());
      std::string flag;
      while (std::getline(flags, flag, ',')) {
        flag = trim(flag);
        if (flag.empty()) continue;
        auto f = flag_from_string(flag);
        if (!f) bad_line(n, "unknown flag '" + flag + "'");
        d.flags.set(*f);
      }
      decl_line[d.id] = n;
      decls.push_back(std::move(d));
    } else if (std::regex_match(body, m, kLinkLine)) {
      Axiom ax;
      ax.kind = AxiomKind::inverse_link;
      ax.first = m[1];
      ax.second = m[2];
      ax.line = n;
      ax.id = "link inverse " + ax.first + " " + ax.second;
      links.push_back(std::move(ax));
    } else if (body.rfind("axiom", 0) != 0) {
      bad_line(n, "expected 'atom', 'link' or 'axiom'");
    }
  }

  for (const auto& link : links) {
    auto it = std::find_if(decls.begin(), decls.end(),
                           [&](const AtomDecl& d) { return d.id == link.first; });
    bool other = std::any_of(decls.begin(), decls.end(),
                             [&](const AtomDecl& d) { return d.id == link.second; });
    if (it == decls.end() || !other) bad_line(link.line, "link names an undeclared atom");
    it->inverse_of = link.second;
  }
  for (auto& d : decls) {
    int n = decl_line[d.id];
    try {
      fb.atoms_.declare(d);
    } catch (const DuplicateId& e) {
      throw DuplicateId("line " + std::to_string(n) + ": " + e.what());
    } catch (const InconsistentFlags& e) {
      throw InconsistentFlags("line " + std::to_string(n) + ": " + e.what());
    }
  }
  for (auto& link : links) fb.add(std::move(link));

  auto need_atom = [&](int n, const std::string& id) {
    if (!fb.atoms_.contains(id)) bad_line(n, "undeclared atom '" + id + "'");
  };

  for (const auto& [n, body] : lines) {
    if (body.rfind("axiom", 0) != 0) continue;
    Axiom ax;
    ax.line = n;
    if (std::regex_match(body, m, kMeetLine)) {
      ax.kind = AxiomKind::meet_trivial;
      ax.first = m[1];
      ax.second = m[2];
      need_atom(n, ax.first);
      need_atom(n, ax.second);
      ax.id = "meet dom(" + ax.first + ") dom(" + ax.second + ") = trivial";
    } else if (std::regex_match(body, m, kDenseLine)) {
      ax.kind = AxiomKind::dense;
      ax.first = m[1];
      need_atom(n, ax.first);
      ax.id = "dense dom(" + ax.first + ")";
    } else if (std::regex_match(body, m, kRangeLine)) {
      ax.kind = AxiomKind::range;
      ax.first = m[1];
      ax.second = m[2];
      need_atom(n, ax.first);
      need_atom(n, ax.second);
      ax.id = "range " + ax.first + " = dom(" + ax.second + ")";
    } else if (std::regex_match(body, m, kDomLine)) {
      ax.kind = AxiomKind::dom_eq;
      Expr lhs;
      try {
        lhs = parse_expr(m[1].str(), fb.atoms_);
      } catch (const Error& e) {
        bad_line(n, e.what());
      }
      MonomialMatrix nf;
      try {
        nf = normalize(lhs, fb.atoms_);
      } catch (const Error& e) {
        bad_line(n, e.what());
      }
      if (!nf.shape.is_base() || nf.col_of_row[0] != 0)
        bad_line(n, "axiom key must be a composition chain on the base space");
      ax.key = nf.chains[0];
      for (const Factor& f : ax.key) {
        if (f.opaque) bad_line(n, "axiom key has an unresolved adjoint");
        need_atom(n, f.atom);
      }
      ax.rhs_trivial = m[2] == "trivial";
      if (!ax.rhs_trivial) {
        ax.second = m[3];
        need_atom(n, ax.second);
      }
      ax.id = "dom(" + compact_chain(ax.key) + ") = " +
              (ax.rhs_trivial ? std::string("trivial") : "dom(" + ax.second + ")");
    } else {
      bad_line(n, "malformed axiom");
    }
    fb.add(std::move(ax));
  }
  return fb;
}

FactBase load_facts_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open facts file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return load_facts(buf.str());
}

}  // namespace domcalc
