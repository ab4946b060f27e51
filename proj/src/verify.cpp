#include "finrep/verify.hpp"

#include <algorithm>
#include <atomic>
#include <stdexcept>
#include <thread>

#include "finrep/error.hpp"

namespace finrep {

const char* to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::MissingWitness: return "MissingWitness";
    case ViolationKind::ForbiddenRealized: return "ForbiddenRealized";
    case ViolationKind::EmptyAtom: return "EmptyAtom";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------
// ColoredPartition

ColoredPartition::ColoredPartition(GroupSpec group, std::vector<ElementSet> sets)
    : group_(std::move(group)), sets_(std::move(sets)), atom_of_(group_.order(), 0) {
  using Kind = StructuralError::Kind;
  if (sets_.empty() || sets_.size() > 254) throw StructuralError(Kind::AtomCount, "partition needs 1..254 atoms");
  ElementSet covered(group_);
  for (std::size_t d = 0; d < sets_.size(); ++d) {
    const ElementSet& s = sets_[d];
    const std::string label = "atom #" + std::to_string(d + 1);
    if (!(s.group() == group_)) {
      throw StructuralError(Kind::GroupMismatch, label + " lives in " + s.group().describe() + ", expected " +
                                                     group_.describe());
    }
    if (s.contains(Element{0})) throw StructuralError(Kind::ZeroAssigned, label + " contains the group zero");
    const ElementSet common = s & covered;
    if (!common.empty()) {
      throw StructuralError(Kind::Overlap, label + " overlaps an earlier atom at " + group_.format(*common.first()));
    }
    covered |= s;
    s.for_each([&](Element e) { atom_of_[e.index] = static_cast<std::uint8_t>(d + 1); });
  }
  ElementSet missing = covered.complement();
  missing.erase(Element{0});
  if (!missing.empty()) {
    throw StructuralError(Kind::Gap, "element " + group_.format(*missing.first()) + " is not assigned to any atom");
  }
  for (std::size_t d = 0; d < sets_.size(); ++d) {
    if (!(sets_[d].negated() == sets_[d])) {
      const ElementSet bad = sets_[d] - sets_[d].negated();
      throw StructuralError(Kind::Asymmetric, "atom #" + std::to_string(d + 1) + " contains " +
                                                  group_.format(*bad.first()) + " but not its negative");
    }
  }
}

const ElementSet& ColoredPartition::set(AtomId atom) const {
  if (atom.is_identity() || atom.index > sets_.size()) {
    throw Error("no diversity atom with index " + std::to_string(atom.index) + " in partition");
  }
  return sets_[atom.index - 1];
}

AtomId ColoredPartition::atom_of(Element x) const {
  if (!group_.contains(x)) throw std::out_of_range("element out of range");
  return AtomId{atom_of_[x.index]};
}

// ---------------------------------------------------------------------------
// EdgeColoring

EdgeColoring::EdgeColoring(std::uint32_t points, std::size_t atom_count, std::vector<std::uint8_t> colors)
    : points_(points),
      atom_count_(atom_count),
      words_((static_cast<std::size_t>(points) + 63) / 64),
      colors_(std::move(colors)),
      adjacency_(atom_count * points * words_, 0),
      edge_counts_(atom_count, 0) {
  using Kind = StructuralError::Kind;
  if (atom_count < 1 || atom_count > 255) throw StructuralError(Kind::AtomCount, "coloring needs 1..255 atoms");
  if (colors_.size() != static_cast<std::size_t>(points) * points) {
    throw StructuralError(Kind::Coloring, "color matrix has the wrong size");
  }
  for (std::uint32_t x = 0; x < points_; ++x) {
    for (std::uint32_t y = 0; y < points_; ++y) {
      const std::uint8_t c = colors_[static_cast<std::size_t>(x) * points_ + y];
      if (x == y) {
        if (c != 0) throw StructuralError(Kind::Coloring, "diagonal pair not colored with the identity");
      } else if (c == 0) {
        throw StructuralError(Kind::Coloring, "off-diagonal pair (" + std::to_string(x) + ", " + std::to_string(y) +
                                                  ") colored with the identity");
      } else if (c >= atom_count_) {
        throw StructuralError(Kind::Coloring, "color index " + std::to_string(c) + " out of range");
      }
      std::uint64_t* row = adjacency_.data() + (static_cast<std::size_t>(c) * points_ + x) * words_;
      row[y >> 6] |= std::uint64_t{1} << (y & 63);
      if (x < y) ++edge_counts_[c];
    }
  }
}

EdgeColoring EdgeColoring::from_matrix(std::uint32_t points, std::size_t atom_count, std::vector<std::uint8_t> colors) {
  if (colors.size() != static_cast<std::size_t>(points) * points) {
    throw StructuralError(StructuralError::Kind::Coloring, "color matrix has the wrong size");
  }
  for (std::uint32_t x = 0; x < points; ++x) {
    for (std::uint32_t y = x + 1; y < points; ++y) {
      if (colors[static_cast<std::size_t>(x) * points + y] != colors[static_cast<std::size_t>(y) * points + x]) {
        throw StructuralError(StructuralError::Kind::Coloring,
                              "coloring is not symmetric at (" + std::to_string(x) + ", " + std::to_string(y) + ")");
      }
    }
  }
  return EdgeColoring(points, atom_count, std::move(colors));
}

// ---------------------------------------------------------------------------
// Reports

namespace {

class ViolationSink {
 public:
  ViolationSink(VerificationReport& report, const VerifyOptions& options) : report_(report), options_(options) {}

  void add(ViolationKind kind, std::array<AtomId, 3> cycle, std::vector<std::uint32_t> points) {
    ++report_.violation_count;
    switch (kind) {
      case ViolationKind::MissingWitness: ++report_.missing_count; break;
      case ViolationKind::ForbiddenRealized: ++report_.forbidden_count; break;
      case ViolationKind::EmptyAtom: ++report_.empty_atom_count; break;
    }
    if (report_.violations.size() < options_.max_violations) {
      report_.violations.push_back(Violation{kind, cycle, std::move(points)});
    }
    if (options_.early_exit) report_.stopped_early = true;
  }

  bool stop() const { return report_.stopped_early; }

 private:
  VerificationReport& report_;
  const VerifyOptions& options_;
};

}  // namespace

VerificationReport verify_sumsets(const RaSpec& spec, const ColoredPartition& part, const VerifyOptions& options) {
  if (part.diversity_count() != spec.diversity_count()) {
    throw StructuralError(StructuralError::Kind::AtomCount,
                          "partition has " + std::to_string(part.diversity_count()) + " atoms, algebra " + spec.name() +
                              " has " + std::to_string(spec.diversity_count()));
  }
  VerificationReport report;
  report.method = VerificationReport::Method::Sumset;
  ViolationSink sink(report, options);
  const auto atoms = spec.diversity_atoms();
  const Element zero{0};

  for (auto i : atoms) {
    if (part.set(i).empty()) sink.add(ViolationKind::EmptyAtom, {i, i, i}, {});
    if (sink.stop()) break;
  }

  for (std::size_t a = 0; a < atoms.size() && !sink.stop(); ++a) {
    for (std::size_t b = a; b < atoms.size() && !sink.stop(); ++b) {
      const AtomId j = atoms[a];
      const AtomId k = atoms[b];
      const ElementSet& sj = part.set(j);
      const ElementSet& sk = part.set(k);
      const ElementSet sum = sumset(sj, sk);

      PairRecord rec;
      rec.j = j;
      rec.k = k;
      rec.expected = spec.required_sumset_profile(j, k);
      rec.actual_size = sum.size();
      rec.zero_present = sum.contains(zero);
      const std::uint64_t before = report.violation_count;

      // S_j = -S_j and the sets are disjoint, so 0 is in S_j + S_k exactly
      // when j = k and S_j is nonempty.
      if (j == k && !sj.empty() && !rec.zero_present) {
        throw std::logic_error("symmetric nonempty set whose self-sumset misses 0");
      }
      if (j != k && rec.zero_present) throw std::logic_error("disjoint symmetric sets whose sumset contains 0");

      for (auto i : atoms) {
        const ElementSet& si = part.set(i);
        const bool needed = std::find(rec.expected.atoms.begin(), rec.expected.atoms.end(), i) !=
                            rec.expected.atoms.end();
        if (si.intersects(sum)) rec.realized.push_back(i);
        if (needed) {
          (si - sum).for_each([&](Element e) {
            if (!sink.stop()) sink.add(ViolationKind::MissingWitness, {i, j, k}, {e.index});
          });
        } else {
          (si & sum).for_each([&](Element e) {
            if (!sink.stop()) sink.add(ViolationKind::ForbiddenRealized, {i, j, k}, {e.index});
          });
        }
        if (sink.stop()) break;
      }
      if (!sink.stop()) {
        if (rec.expected.include_zero && !rec.zero_present) {
          sink.add(ViolationKind::MissingWitness, {AtomId::identity(), j, k}, {zero.index});
        } else if (!rec.expected.include_zero && rec.zero_present) {
          sink.add(ViolationKind::ForbiddenRealized, {AtomId::identity(), j, k}, {zero.index});
        }
      }
      rec.matches = report.violation_count == before;
      report.pairs.push_back(std::move(rec));
    }
  }
  report.accepted = report.violation_count == 0;
  return report;
}

namespace {

struct Need {
  AtomId j, k;
  bool allowed;
  std::size_t record;
};

struct BlockResult {
  std::vector<Violation> violations;
  std::uint64_t missing = 0;
  std::uint64_t forbidden = 0;
  std::vector<std::uint64_t> checked;
  std::vector<std::uint64_t> failures;
  bool stopped = false;
};

}  // namespace

VerificationReport verify_bruteforce(const RaSpec& spec, const EdgeColoring& coloring, const VerifyOptions& options) {
  if (coloring.atom_count() > spec.atom_count()) {
    throw StructuralError(StructuralError::Kind::AtomCount,
                          "coloring uses " + std::to_string(coloring.atom_count()) + " atoms, algebra " + spec.name() +
                              " has " + std::to_string(spec.atom_count()));
  }
  VerificationReport report;
  report.method = VerificationReport::Method::BruteForce;
  ViolationSink sink(report, options);

  const auto atoms = spec.diversity_atoms();
  const std::size_t n_atoms = spec.atom_count();
  const std::uint32_t n = coloring.size();
  const std::size_t words = coloring.words_per_row();

  for (auto i : atoms) {
    const bool used = i.index < coloring.atom_count() && coloring.edge_count(i) > 0;
    if (!used) sink.add(ViolationKind::EmptyAtom, {i, i, i}, {});
    if (sink.stop()) break;
  }

  // Cycle records and, per edge color, the (j, k) needs to check.
  auto record_index = [&](AtomId i, AtomId j, AtomId k) {
    return ((static_cast<std::size_t>(i.index) - 1) * atoms.size() + (j.index - 1)) * atoms.size() + (k.index - 1);
  };
  report.cycles.resize(atoms.size() * atoms.size() * atoms.size());
  std::vector<std::vector<Need>> needs(n_atoms);
  for (auto i : atoms) {
    for (auto j : atoms) {
      for (auto k : atoms) {
        const std::size_t r = record_index(i, j, k);
        report.cycles[r].cycle = {i, j, k};
        report.cycles[r].allowed = spec.is_cycle(i, j, k);
        needs[i.index].push_back(Need{j, k, report.cycles[r].allowed, r});
      }
    }
  }

  if (!sink.stop() && n > 1) {
    // Split the rows x so that every block covers a similar number of pairs
    // x < y. Merging in block order reproduces the serial scan order.
    const std::size_t block_count = std::min<std::size_t>(n, 64);
    std::vector<std::uint32_t> bounds{0};
    const double total = static_cast<double>(n) * (n - 1) / 2.0;
    double acc = 0;
    for (std::uint32_t x = 0; x < n && bounds.size() < block_count; ++x) {
      acc += static_cast<double>(n - 1 - x);
      if (acc >= total * static_cast<double>(bounds.size()) / static_cast<double>(block_count)) bounds.push_back(x + 1);
    }
    if (bounds.back() != n) bounds.push_back(n);

    std::vector<BlockResult> blocks(bounds.size() - 1);
    std::atomic<bool> stop_all{false};
    std::atomic<std::size_t> next{0};

    auto run_block = [&](std::size_t b) {
      BlockResult& out = blocks[b];
      out.checked.assign(report.cycles.size(), 0);
      out.failures.assign(report.cycles.size(), 0);
      for (std::uint32_t x = bounds[b]; x < bounds[b + 1]; ++x) {
        for (std::uint32_t y = x + 1; y < n; ++y) {
          const AtomId i = coloring.color(x, y);
          for (const Need& need : needs[i.index]) {
            const std::uint64_t* rx = coloring.neighbours(need.j, x);
            const std::uint64_t* ry = coloring.neighbours(need.k, y);
            std::size_t hit = words;
            std::uint64_t bits = 0;
            for (std::size_t w = 0; w < words; ++w) {
              bits = rx[w] & ry[w];
              if (bits != 0) {
                hit = w;
                break;
              }
            }
            ++out.checked[need.record];
            const bool witnessed = hit != words;
            if (witnessed == need.allowed) continue;
            ++out.failures[need.record];
            if (need.allowed) {
              ++out.missing;
              if (out.violations.size() < options.max_violations) {
                out.violations.push_back(Violation{ViolationKind::MissingWitness, {i, need.j, need.k}, {x, y}});
              }
            } else {
              ++out.forbidden;
              const auto z = static_cast<std::uint32_t>(hit * 64 + static_cast<std::size_t>(__builtin_ctzll(bits)));
              if (out.violations.size() < options.max_violations) {
                out.violations.push_back(Violation{ViolationKind::ForbiddenRealized, {i, need.j, need.k}, {x, y, z}});
              }
            }
            if (options.early_exit) {
              out.stopped = true;
              stop_all = true;
              return;
            }
          }
        }
        if (options.early_exit && stop_all.load(std::memory_order_relaxed)) return;
      }
    };

    const unsigned threads = std::max(1U, std::min<unsigned>(options.threads, static_cast<unsigned>(blocks.size())));
    if (threads == 1) {
      for (std::size_t b = 0; b < blocks.size() && !(options.early_exit && stop_all); ++b) run_block(b);
    } else {
      std::vector<std::jthread> pool;
      for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
          for (std::size_t b = next++; b < blocks.size(); b = next++) {
            if (options.early_exit && stop_all) break;
            run_block(b);
          }
        });
      }
    }

    for (const BlockResult& block : blocks) {
      for (const auto& v : block.violations) {
        if (report.violations.size() < options.max_violations) report.violations.push_back(v);
      }
      report.missing_count += block.missing;
      report.forbidden_count += block.forbidden;
      report.violation_count += block.missing + block.forbidden;
      for (std::size_t r = 0; r < block.checked.size(); ++r) {
        report.cycles[r].edges_checked += block.checked[r];
        report.cycles[r].failures += block.failures[r];
      }
      if (block.stopped) report.stopped_early = true;
    }
  }

  report.accepted = report.violation_count == 0;
  return report;
}

EdgeColoring cayley_coloring(const ColoredPartition& part) {
  const GroupSpec& g = part.group();
  std::vector<std::uint8_t> atom_of(g.order());
  for (std::uint32_t e = 0; e < g.order(); ++e) atom_of[e] = part.atom_of(Element{e}).index;
  return EdgeColoring::from_function(g.order(), part.diversity_count() + 1, [&](std::uint32_t x, std::uint32_t y) {
    return AtomId{atom_of[g.add_unchecked(y, g.neg_unchecked(x))]};
  });
}

EquivalenceResult equivalence_classes(const EdgeColoring& coloring, AtomId atom) {
  EquivalenceResult result;
  const std::uint32_t n = coloring.size();
  const std::size_t words = coloring.words_per_row();
  if (atom.index >= coloring.atom_count()) {
    for (std::uint32_t x = 0; x < n; ++x) result.classes.push_back({x});
    return result;
  }

  auto closed_row = [&](std::uint32_t x) {
    std::vector<std::uint64_t> row(coloring.neighbours(atom, x), coloring.neighbours(atom, x) + words);
    row[x >> 6] |= std::uint64_t{1} << (x & 63);
    return row;
  };
  auto first_bit = [&](const std::vector<std::uint64_t>& bits) -> std::optional<std::uint32_t> {
    for (std::size_t w = 0; w < bits.size(); ++w) {
      if (bits[w] != 0) return static_cast<std::uint32_t>(w * 64 + static_cast<std::size_t>(__builtin_ctzll(bits[w])));
    }
    return std::nullopt;
  };

  std::vector<bool> assigned(n, false);
  for (std::uint32_t x = 0; x < n; ++x) {
    if (assigned[x]) continue;
    const auto cls = closed_row(x);
    std::vector<std::uint32_t> members;
    for (std::size_t w = 0; w < words; ++w) {
      std::uint64_t bits = cls[w];
      while (bits != 0) {
        members.push_back(static_cast<std::uint32_t>(w * 64 + static_cast<std::size_t>(__builtin_ctzll(bits))));
        bits &= bits - 1;
      }
    }
    for (auto y : members) {
      if (y == x) continue;
      const auto row = closed_row(y);
      std::vector<std::uint64_t> extra(words), lacking(words);
      for (std::size_t w = 0; w < words; ++w) {
        extra[w] = row[w] & ~cls[w];
        lacking[w] = cls[w] & ~row[w];
      }
      if (auto w = first_bit(extra)) {
        // x ~ y ~ w, but w is not related to x.
        result.witness = std::array<std::uint32_t, 3>{x, y, *w};
        result.classes.clear();
        return result;
      }
      if (auto w = first_bit(lacking)) {
        // y ~ x ~ w, but w is not related to y.
        result.witness = std::array<std::uint32_t, 3>{y, x, *w};
        result.classes.clear();
        return result;
      }
    }
    for (auto y : members) assigned[y] = true;
    result.classes.push_back(std::move(members));
  }
  return result;
}

}  // namespace finrep
