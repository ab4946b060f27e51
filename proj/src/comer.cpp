#include "finrep/comer.hpp"

#include <stdexcept>

#include "finrep/error.hpp"

namespace finrep {

unsigned CosetScheme::coset_index(Element x) const {
  if (x.index == 0 || x.index >= p_) throw std::out_of_range("coset index requested for a non-unit");
  return coset_of_[x.index];
}

std::vector<CosetTriple> CosetScheme::cycle_structure() const {
  std::vector<CosetTriple> out;
  for (unsigned i = 0; i < m_; ++i)
    for (unsigned j = 0; j < m_; ++j)
      for (unsigned k = 0; k < m_; ++k)
        if (has_cycle(i, j, k)) out.push_back({i, j, k});
  return out;
}

std::vector<CosetTriple> CosetScheme::allowed_multisets() const {
  if (!symmetric_) throw Error("cycle multisets are only defined for symmetric schemes");
  std::vector<CosetTriple> out;
  for (unsigned i = 0; i < m_; ++i)
    for (unsigned j = i; j < m_; ++j)
      for (unsigned k = j; k < m_; ++k)
        if (has_cycle(i, j, k)) out.push_back({i, j, k});
  return out;
}

std::vector<CosetTriple> CosetScheme::forbidden_multisets() const {
  if (!symmetric_) throw Error("cycle multisets are only defined for symmetric schemes");
  std::vector<CosetTriple> out;
  for (unsigned i = 0; i < m_; ++i)
    for (unsigned j = i; j < m_; ++j)
      for (unsigned k = j; k < m_; ++k)
        if (!has_cycle(i, j, k)) out.push_back({i, j, k});
  return out;
}

CosetScheme build_scheme(std::uint64_t p, unsigned m, std::optional<std::uint64_t> g, bool require_symmetric) {
  if (!is_prime(p)) throw Error(std::to_string(p) + " is not prime");
  if (m == 0 || (p - 1) % m != 0) {
    throw Error("m = " + std::to_string(m) + " does not divide p - 1 = " + std::to_string(p - 1));
  }
  if (m > 64) throw Error("m too large for a cycle table");
  CosetScheme scheme;
  scheme.p_ = p;
  scheme.m_ = m;
  scheme.g_ = g ? *g : primitive_root(p);
  scheme.cosets_ = cyclotomic_cosets(p, m, scheme.g_);

  scheme.coset_of_.assign(p, 0);
  for (unsigned i = 0; i < m; ++i) scheme.cosets_[i].for_each([&](Element e) { scheme.coset_of_[e.index] = i; });

  scheme.symmetric_ = true;
  for (const auto& x : scheme.cosets_) {
    if (!(x.negated() == x)) scheme.symmetric_ = false;
  }
  if (require_symmetric && !scheme.symmetric_) {
    throw Error("cosets for p = " + std::to_string(p) + ", m = " + std::to_string(m) +
                " are not symmetric (m does not divide (p-1)/2)");
  }

  scheme.cycles_.assign(static_cast<std::size_t>(m) * m * m, false);
  for (unsigned j = 0; j < m; ++j) {
    for (unsigned k = 0; k < m; ++k) {
      const ElementSet sum = sumset(scheme.cosets_[j], scheme.cosets_[k]);
      for (unsigned i = 0; i < m; ++i) {
        const ElementSet inside = scheme.cosets_[i] & sum;
        if (!inside.empty() && inside.size() != scheme.cosets_[i].size()) {
          // Multiplying by X_0 permutes every coset and fixes X_j + X_k.
          throw std::logic_error("sumset X_" + std::to_string(j) + " + X_" + std::to_string(k) +
                                 " is not a union of cosets");
        }
        scheme.cycles_[(static_cast<std::size_t>(i) * m + j) * m + k] = !inside.empty();
      }
    }
  }
  return scheme;
}

ColoredPartition build_59_65_partition(const CosetScheme& scheme) {
  if (scheme.m() != 8) throw Error("the 59_65 partition needs m = 8, got " + std::to_string(scheme.m()));
  if (!scheme.symmetric()) throw Error("the 59_65 partition needs symmetric cosets");
  const auto& x = scheme.cosets();
  ElementSet a = x[1] | x[2] | x[3] | x[4] | x[5];
  ElementSet c = x[6] | x[7];
  return ColoredPartition(scheme.group(), {std::move(a), x[0], std::move(c)});
}

}  // namespace finrep
