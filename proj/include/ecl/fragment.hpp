#pragma once

#include <cstdint>
#include <limits>
#include <set>
#include <string>

#include "error.hpp"
#include "formula.hpp"

namespace ecl {

// C:     atoms, ~, &, [X]
// Cp:    boolean combinations of [X]Y=y
// KC:    C plus K
// KCp:   Cp plus K
// PAKC:  everything
// PAKCp: [X]Y=y atoms closed under ~, &, K and announcements
enum class Fragment { C, Cp, KC, KCp, PAKC, PAKCp };

inline const char* fragment_name(Fragment f) {
  switch (f) {
    case Fragment::C: return "LC";
    case Fragment::Cp: return "LCp";
    case Fragment::KC: return "LKC";
    case Fragment::KCp: return "LKCp";
    case Fragment::PAKC: return "LPAKC";
    case Fragment::PAKCp: return "LPAKCp";
  }
  return "?";
}

inline Fragment fragment_from_name(const std::string& s) {
  for (Fragment f : {Fragment::C, Fragment::Cp, Fragment::KC, Fragment::KCp, Fragment::PAKC, Fragment::PAKCp})
    if (s == fragment_name(f)) return f;
  throw ValidationError("unknown fragment '" + s + "'");
}

inline bool is_primed_atom(const Formula& f) {
  return f.op() == Op::Intervene && f.arg().op() == Op::Atom;
}

namespace detail {
struct FragFlags {
  bool has_k = false;
  bool has_ann = false;
  bool primed = true;  // every atom sits directly under a box, and no other boxes
};

inline FragFlags frag_flags(const Formula& f) {
  FragFlags r;
  switch (f.op()) {
    case Op::Atom: r.primed = false; return r;
    case Op::Not: return frag_flags(f.arg());
    case Op::Know: {
      r = frag_flags(f.arg());
      r.has_k = true;
      return r;
    }
    case Op::And:
    case Op::Announce: {
      auto a = frag_flags(f.op() == Op::And ? f.left() : f.announced());
      auto b = frag_flags(f.op() == Op::And ? f.right() : f.arg());
      r.has_k = a.has_k || b.has_k;
      r.has_ann = a.has_ann || b.has_ann || f.op() == Op::Announce;
      r.primed = a.primed && b.primed;
      return r;
    }
    case Op::Intervene: {
      if (f.arg().op() == Op::Atom) return r;
      r = frag_flags(f.arg());
      r.primed = false;
      return r;
    }
  }
  return r;
}
}  // namespace detail

inline bool in_fragment(const Formula& f, Fragment frag) {
  auto fl = detail::frag_flags(f);
  switch (frag) {
    case Fragment::C: return !fl.has_k && !fl.has_ann;
    case Fragment::Cp: return fl.primed && !fl.has_k && !fl.has_ann;
    case Fragment::KC: return !fl.has_ann;
    case Fragment::KCp: return fl.primed && !fl.has_ann;
    case Fragment::PAKC: return true;
    case Fragment::PAKCp: return fl.primed;
  }
  return false;
}

inline std::set<Fragment> fragments(const Formula& f) {
  std::set<Fragment> out;
  for (Fragment g : {Fragment::C, Fragment::Cp, Fragment::KC, Fragment::KCp, Fragment::PAKC, Fragment::PAKCp})
    if (in_fragment(f, g)) out.insert(g);
  return out;
}

// ── Complexity ──────────────────────────────────────────────────────

enum class Measure { C, KC, PAKC, PAKCp };

namespace detail {
inline std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a)
    throw BudgetExceeded("complexity overflow");
  return a * b;
}
}  // namespace detail

inline std::uint64_t complexity(const Formula& f, Measure m) {
  switch (f.op()) {
    case Op::Atom:
      if (m == Measure::PAKCp) throw FragmentError("bare atom outside the primed fragment");
      return 1;
    case Op::Not: return 1 + complexity(f.arg(), m);
    case Op::And: return 1 + std::max(complexity(f.left(), m), complexity(f.right(), m));
    case Op::Know:
      if (m == Measure::C) throw FragmentError("K outside LC");
      return 1 + complexity(f.arg(), m);
    case Op::Intervene:
      if (m == Measure::PAKCp) {
        if (f.arg().op() != Op::Atom) throw FragmentError("nested box outside the primed fragment");
        return 1;
      }
      return detail::checked_mul(2, complexity(f.arg(), m));
    case Op::Announce:
      if (m == Measure::C || m == Measure::KC) throw FragmentError("announcement outside " + std::string(m == Measure::C ? "LC" : "LKC"));
      return detail::checked_mul(7 + complexity(f.announced(), m), complexity(f.arg(), m));
  }
  return 0;
}

}  // namespace ecl
