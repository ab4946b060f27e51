#include "finrep/algebra.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include "finrep/error.hpp"

namespace finrep {

namespace {

constexpr std::string_view kIdentityName = "1'";

std::vector<std::string_view> split_ws(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    std::size_t j = i;
    while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    if (j > i) out.push_back(text.substr(i, j - i));
    i = j;
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool all_single_char(const std::vector<std::string>& names) {
  return std::all_of(names.begin(), names.end(), [](const auto& n) { return n.size() == 1; });
}

}  // namespace

CycleTriple CycleTriple::canonical(AtomId i, AtomId j, AtomId k) {
  std::array<AtomId, 3> a{i, j, k};
  std::sort(a.begin(), a.end());
  return CycleTriple{a};
}

RaSpec::RaSpec(std::string name, std::vector<std::string> diversity_atoms, const std::vector<CycleTriple>& cycles)
    : name_(std::move(name)) {
  if (diversity_atoms.size() > 254) throw Error("too many atoms");
  names_.emplace_back(kIdentityName);
  std::set<std::string> seen;
  for (auto& atom : diversity_atoms) {
    if (atom.empty()) throw Error("empty atom name");
    if (atom == kIdentityName) throw Error("atom name 1' is reserved for the identity");
    if (atom.find_first_of(" \t#.:") != std::string::npos) throw Error("invalid atom name '" + atom + "'");
    if (!seen.insert(atom).second) throw Error("duplicate atom name '" + atom + "'");
    names_.push_back(std::move(atom));
  }
  const std::size_t n = names_.size();
  allowed_.assign(n * n * n, false);
  for (const auto& c : cycles) {
    for (auto a : c.atoms) {
      if (a.is_identity()) throw Error("identity atom in a diversity cycle");
      if (a.index >= n) throw Error("cycle mentions unknown atom index " + std::to_string(a.index));
    }
    auto p = c.atoms;
    std::sort(p.begin(), p.end());
    do {
      allowed_[slot(p[0], p[1], p[2])] = true;
    } while (std::next_permutation(p.begin(), p.end()));
  }
}

std::vector<AtomId> RaSpec::diversity_atoms() const {
  std::vector<AtomId> out;
  for (std::size_t i = 1; i < names_.size(); ++i) out.push_back(AtomId{static_cast<std::uint8_t>(i)});
  return out;
}

void RaSpec::check_atom(AtomId atom) const {
  if (atom.index >= names_.size()) {
    throw Error("unknown atom id " + std::to_string(atom.index) + " for algebra " + name_);
  }
}

const std::string& RaSpec::atom_name(AtomId atom) const {
  check_atom(atom);
  return names_[atom.index];
}

std::optional<AtomId> RaSpec::find_atom(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return AtomId{static_cast<std::uint8_t>(i)};
  }
  return std::nullopt;
}

AtomId RaSpec::atom(std::string_view name) const {
  if (auto a = find_atom(name)) return *a;
  throw Error("unknown atom '" + std::string(name) + "' in algebra " + name_);
}

bool RaSpec::is_cycle(AtomId i, AtomId j, AtomId k) const {
  check_atom(i);
  check_atom(j);
  check_atom(k);
  const int identities = int(i.is_identity()) + int(j.is_identity()) + int(k.is_identity());
  switch (identities) {
    case 0: return allowed_[slot(i, j, k)];
    case 1:
      if (i.is_identity()) return j == k;
      if (j.is_identity()) return i == k;
      return i == j;
    case 2: return false;
    default: return true;
  }
}

std::vector<CycleTriple> RaSpec::allowed_cycles() const {
  std::vector<CycleTriple> out;
  const auto n = static_cast<std::uint8_t>(names_.size());
  for (std::uint8_t i = 1; i < n; ++i)
    for (std::uint8_t j = i; j < n; ++j)
      for (std::uint8_t k = j; k < n; ++k)
        if (allowed_[slot({i}, {j}, {k})]) out.push_back(CycleTriple{{AtomId{i}, AtomId{j}, AtomId{k}}});
  return out;
}

std::vector<CycleTriple> RaSpec::forbidden_cycles() const {
  std::vector<CycleTriple> out;
  const auto n = static_cast<std::uint8_t>(names_.size());
  for (std::uint8_t i = 1; i < n; ++i)
    for (std::uint8_t j = i; j < n; ++j)
      for (std::uint8_t k = j; k < n; ++k)
        if (!allowed_[slot({i}, {j}, {k})]) out.push_back(CycleTriple{{AtomId{i}, AtomId{j}, AtomId{k}}});
  return out;
}

SumsetProfile RaSpec::required_sumset_profile(AtomId j, AtomId k) const {
  check_atom(j);
  check_atom(k);
  if (j.is_identity() || k.is_identity()) throw Error("sumset profile is defined for diversity atoms only");
  SumsetProfile profile;
  for (auto i : diversity_atoms()) {
    if (allowed_[slot(i, j, k)]) profile.atoms.push_back(i);
  }
  profile.include_zero = j == k;
  return profile;
}

std::string RaSpec::cycle_label(AtomId i, AtomId j, AtomId k) const {
  if (all_single_char(names_)) return atom_name(i) + atom_name(j) + atom_name(k);
  return atom_name(i) + "." + atom_name(j) + "." + atom_name(k);
}

namespace {

std::vector<CycleTriple> cycles_from_labels(const std::vector<std::string>& atoms,
                                            std::initializer_list<std::string_view> labels) {
  std::vector<CycleTriple> out;
  auto idx = [&](char c) {
    const auto it = std::find(atoms.begin(), atoms.end(), std::string(1, c));
    return AtomId{static_cast<std::uint8_t>(it - atoms.begin() + 1)};
  };
  for (auto l : labels) out.push_back(CycleTriple::canonical(idx(l[0]), idx(l[1]), idx(l[2])));
  return out;
}

}  // namespace

RaSpec builtin_52_65() {
  std::vector<std::string> atoms{"a", "b", "c"};
  auto cycles = cycles_from_labels(atoms, {"aaa", "bbb", "acc", "aab", "aac", "bcc", "abc"});
  return RaSpec("52_65", std::move(atoms), cycles);
}

RaSpec builtin_59_65() {
  std::vector<std::string> atoms{"a", "b", "c"};
  // Everything except bbb and cbb.
  auto cycles = cycles_from_labels(atoms, {"aaa", "acc", "aab", "aac", "bcc", "abc", "ccc", "abb"});
  return RaSpec("59_65", std::move(atoms), cycles);
}

RaSpec builtin_algebra(std::string_view name) {
  if (name == "52_65" || name == "52") return builtin_52_65();
  if (name == "59_65" || name == "59") return builtin_59_65();
  throw Error("unknown builtin algebra '" + std::string(name) + "' (expected 52_65 or 59_65)");
}

RaSpec parse_spec(std::string_view text) {
  std::string name;
  std::optional<std::vector<std::string>> atoms;
  std::vector<std::string> cycle_tokens;
  std::vector<std::pair<std::string, std::string>> converses;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto colon = line.find(':');
    if (colon == std::string_view::npos) {
      throw ParseError("line " + std::to_string(line_no) + ": expected 'key: values'");
    }
    const auto key = trim(line.substr(0, colon));
    const auto values = split_ws(line.substr(colon + 1));
    if (key == "name") {
      if (values.size() != 1) throw ParseError("line " + std::to_string(line_no) + ": name takes one token");
      name = std::string(values[0]);
    } else if (key == "atoms") {
      if (atoms) throw ParseError("line " + std::to_string(line_no) + ": atoms given twice");
      atoms.emplace();
      for (auto v : values) atoms->emplace_back(v);
    } else if (key == "cycles") {
      for (auto v : values) cycle_tokens.emplace_back(v);
    } else if (key == "converse") {
      if (values.size() != 2) throw ParseError("line " + std::to_string(line_no) + ": converse takes two atoms");
      converses.emplace_back(values[0], values[1]);
    } else {
      throw ParseError("line " + std::to_string(line_no) + ": unknown key '" + std::string(key) + "'");
    }
  }
  if (!atoms) throw ParseError("missing 'atoms:' line");

  for (const auto& [x, y] : converses) {
    if (x != y) {
      throw ParseError("non-symmetric atoms are not supported (converse of " + x + " given as " + y + ")");
    }
  }

  auto index_of = [&](std::string_view n) -> AtomId {
    if (n == kIdentityName) throw ParseError("identity atom in a diversity cycle");
    const auto it = std::find(atoms->begin(), atoms->end(), n);
    if (it == atoms->end()) throw ParseError("cycle names unknown atom '" + std::string(n) + "'");
    return AtomId{static_cast<std::uint8_t>(it - atoms->begin() + 1)};
  };

  std::vector<CycleTriple> cycles;
  const bool single = all_single_char(*atoms);
  for (const auto& tok : cycle_tokens) {
    std::vector<std::string_view> parts;
    if (tok.find('.') != std::string::npos) {
      std::string_view rest = tok;
      while (true) {
        const auto dot = rest.find('.');
        parts.push_back(rest.substr(0, dot));
        if (dot == std::string_view::npos) break;
        rest = rest.substr(dot + 1);
      }
    } else if (tok.starts_with(kIdentityName) || tok.find('\'') != std::string::npos) {
      throw ParseError("identity atom in a diversity cycle: '" + tok + "'");
    } else if (single && tok.size() == 3) {
      std::string_view t = tok;
      parts = {t.substr(0, 1), t.substr(1, 1), t.substr(2, 1)};
    }
    if (parts.size() != 3) throw ParseError("malformed cycle '" + tok + "'");
    cycles.push_back(CycleTriple::canonical(index_of(parts[0]), index_of(parts[1]), index_of(parts[2])));
  }

  try {
    return RaSpec(name.empty() ? "custom" : name, *atoms, cycles);
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(e.what());
  }
}

std::string format_spec(const RaSpec& spec) {
  std::ostringstream out;
  out << "name: " << spec.name() << "\n";
  out << "atoms:";
  for (auto a : spec.diversity_atoms()) out << ' ' << spec.atom_name(a);
  out << "\ncycles:";
  for (const auto& c : spec.allowed_cycles()) out << ' ' << spec.cycle_label(c);
  out << "\n";
  return out.str();
}

}  // namespace finrep
