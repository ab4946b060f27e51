#pragma once

// Finite abelian groups Z/n1 x ... x Z/nr with dense subset arithmetic.
//
// Elements are identified by their mixed-radix index. Coordinate 0 is the
// most significant digit, so for (Z/2)^k the index is the bitstring read as
// a binary number with the leftmost character first, and addition is XOR.

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace finrep {

struct Element {
  std::uint32_t index = 0;

  friend constexpr auto operator<=>(Element, Element) = default;
};

class GroupSpec {
 public:
  static constexpr std::uint64_t kDefaultOrderCap = std::uint64_t{1} << 20;

  /// Throws Error if a modulus is < 2 or the order exceeds `order_cap`.
  explicit GroupSpec(std::vector<std::uint32_t> moduli,
                     std::uint64_t order_cap = kDefaultOrderCap);

  static GroupSpec cyclic(std::uint32_t n);
  static GroupSpec elementary2(unsigned k);

  const std::vector<std::uint32_t>& moduli() const { return moduli_; }
  std::uint32_t order() const { return order_; }
  std::size_t rank() const { return moduli_.size(); }
  bool is_cyclic() const { return moduli_.size() == 1; }
  bool is_elementary2() const { return elementary2_; }

  bool contains(Element x) const { return x.index < order_; }

  Element add(Element x, Element y) const;
  Element neg(Element x) const;
  /// x - y
  Element sub(Element x, Element y) const;

  // Unchecked versions for inner loops; indices must be valid.
  std::uint32_t add_unchecked(std::uint32_t x, std::uint32_t y) const;
  std::uint32_t neg_unchecked(std::uint32_t x) const;

  std::vector<std::uint32_t> decode(Element x) const;
  Element encode(std::span<const std::uint32_t> coords) const;

  /// Text form used by fixtures and reports: a bitstring for (Z/2)^k, a
  /// decimal integer for Z/n, comma-separated coordinates otherwise.
  std::string format(Element x) const;
  Element parse_element(std::string_view text) const;

  /// "2^K", "z:N" or "N1xN2x...".
  std::string describe() const;

  friend bool operator==(const GroupSpec& a, const GroupSpec& b) { return a.moduli_ == b.moduli_; }

 private:
  std::vector<std::uint32_t> moduli_;
  std::uint32_t order_ = 1;
  bool elementary2_ = false;
};

/// Parses a group flag: "z:N", "2^K" or "N1xN2x...".
GroupSpec parse_group(std::string_view text);

/// Dense membership mask over the elements of a group.
class ElementSet {
 public:
  explicit ElementSet(GroupSpec group);
  ElementSet(GroupSpec group, std::span<const Element> elements);

  static ElementSet full(const GroupSpec& group);
  static ElementSet singleton(const GroupSpec& group, Element x);

  const GroupSpec& group() const { return group_; }

  bool contains(Element x) const;
  bool test(std::uint32_t index) const { return (words_[index >> 6] >> (index & 63)) & 1U; }
  void insert(Element x);
  void erase(Element x);

  std::size_t size() const { return count_; }
  bool empty() const { return count_ == 0; }

  std::vector<Element> elements() const;
  /// Smallest member, if any.
  std::optional<Element> first() const;

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits != 0) {
        const int b = __builtin_ctzll(bits);
        f(Element{static_cast<std::uint32_t>(w * 64 + static_cast<std::size_t>(b))});
        bits &= bits - 1;
      }
    }
  }

  ElementSet& operator|=(const ElementSet& other);
  ElementSet& operator&=(const ElementSet& other);
  ElementSet& operator-=(const ElementSet& other);
  friend ElementSet operator|(ElementSet a, const ElementSet& b) { return a |= b; }
  friend ElementSet operator&(ElementSet a, const ElementSet& b) { return a &= b; }
  friend ElementSet operator-(ElementSet a, const ElementSet& b) { return a -= b; }

  ElementSet complement() const;
  /// {-x : x in this}
  ElementSet negated() const;
  bool is_subset_of(const ElementSet& other) const;
  bool intersects(const ElementSet& other) const;

  std::span<const std::uint64_t> words() const { return words_; }
  std::span<std::uint64_t> mutable_words() { return words_; }
  /// Recomputes the cardinality after writes through mutable_words().
  void recount();

  friend bool operator==(const ElementSet& a, const ElementSet& b) {
    return a.group_ == b.group_ && a.words_ == b.words_;
  }

 private:
  void require_same_group(const ElementSet& other) const;
  void clear_padding();

  GroupSpec group_;
  std::vector<std::uint64_t> words_;
  std::size_t count_ = 0;
};

/// {s + t : s in S, t in T}. Throws StructuralError on group mismatch.
ElementSet sumset(const ElementSet& s, const ElementSet& t);

/// The definitional double loop, kept as a reference for sumset().
ElementSet sumset_reference(const ElementSet& s, const ElementSet& t);

struct Subgroup {
  std::vector<Element> generators;
  ElementSet elements;
};

/// Smallest subgroup containing `generators`.
Subgroup span(const GroupSpec& group, std::span<const Element> generators);

bool is_prime(std::uint64_t n);

/// Smallest primitive root modulo a prime p (1 for p = 2).
std::uint64_t primitive_root(std::uint64_t p);

/// True if g generates the multiplicative group mod the prime p.
bool is_primitive_root(std::uint64_t g, std::uint64_t p);

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t mod);

/// X_i = { g^(a*m + i) : 0 <= a < (p-1)/m } for i in [0, m), as subsets of Z/p.
std::vector<ElementSet> cyclotomic_cosets(std::uint64_t p, unsigned m, std::uint64_t g);

/// Elements of (Z/2)^k with Hamming weight in [lo, hi].
ElementSet weight_classes(unsigned k, unsigned lo, unsigned hi);

inline unsigned hamming_weight(Element x) { return static_cast<unsigned>(__builtin_popcount(x.index)); }

}  // namespace finrep
