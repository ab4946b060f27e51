#pragma once

// Integral symmetric relation algebras described by their diversity cycles.

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace finrep {

struct AtomId {
  std::uint8_t index = 0;

  static constexpr AtomId identity() { return AtomId{0}; }
  constexpr bool is_identity() const { return index == 0; }

  friend constexpr auto operator<=>(AtomId, AtomId) = default;
};

/// Three diversity atoms in ascending index order. Every atom is its own
/// converse, so the multiset is the whole identity of a cycle.
struct CycleTriple {
  std::array<AtomId, 3> atoms;

  static CycleTriple canonical(AtomId i, AtomId j, AtomId k);

  friend constexpr auto operator<=>(const CycleTriple&, const CycleTriple&) = default;
};

/// Which atoms a sumset S_j + S_k has to consist of in a group representation.
struct SumsetProfile {
  std::vector<AtomId> atoms;
  bool include_zero = false;

  friend bool operator==(const SumsetProfile&, const SumsetProfile&) = default;
};

class RaSpec {
 public:
  /// Diversity atoms get indices 1..n in the given order; index 0 is 1'.
  /// Throws Error on duplicate or reserved names and on cycles that mention
  /// the identity or an unknown atom.
  RaSpec(std::string name, std::vector<std::string> diversity_atoms, const std::vector<CycleTriple>& cycles);

  const std::string& name() const { return name_; }

  /// Including the identity.
  std::size_t atom_count() const { return names_.size(); }
  std::size_t diversity_count() const { return names_.size() - 1; }
  std::vector<AtomId> diversity_atoms() const;

  const std::string& atom_name(AtomId atom) const;
  std::optional<AtomId> find_atom(std::string_view name) const;
  /// Throws Error for unknown names.
  AtomId atom(std::string_view name) const;

  /// Identity-involving triples: 1'xy is a cycle iff x = y.
  bool is_cycle(AtomId i, AtomId j, AtomId k) const;

  std::vector<CycleTriple> allowed_cycles() const;
  std::vector<CycleTriple> forbidden_cycles() const;

  SumsetProfile required_sumset_profile(AtomId j, AtomId k) const;

  /// "acc" when every atom name is one character, "x.y.z" otherwise.
  std::string cycle_label(AtomId i, AtomId j, AtomId k) const;
  std::string cycle_label(const CycleTriple& t) const { return cycle_label(t.atoms[0], t.atoms[1], t.atoms[2]); }

  friend bool operator==(const RaSpec& a, const RaSpec& b) {
    return a.names_ == b.names_ && a.allowed_ == b.allowed_;
  }

 private:
  void check_atom(AtomId atom) const;
  std::size_t slot(AtomId i, AtomId j, AtomId k) const {
    const std::size_t n = names_.size();
    return (static_cast<std::size_t>(i.index) * n + j.index) * n + k.index;
  }

  std::string name_;
  std::vector<std::string> names_;
  // Indexed by slot(); closed under permutations.
  std::vector<bool> allowed_;
};

RaSpec builtin_52_65();
RaSpec builtin_59_65();

/// Looks up "52_65" or "59_65". Throws Error otherwise.
RaSpec builtin_algebra(std::string_view name);

/// Line-oriented fixture grammar:
///
///   # comment
///   name: 52_65          (optional)
///   atoms: a b c
///   cycles: aaa bbb acc
///   converse: a a        (optional, repeatable; only self-converse accepted)
///
/// A cycle token is three atom names written together when every name is a
/// single character, or joined with '.' otherwise ("x1.x2.x3").
RaSpec parse_spec(std::string_view text);

/// Inverse of parse_spec().
std::string format_spec(const RaSpec& spec);

}  // namespace finrep
