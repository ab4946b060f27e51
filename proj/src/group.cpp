#include "finrep/group.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>

#include "finrep/error.hpp"

namespace finrep {

const char* to_string(StructuralError::Kind kind) {
  switch (kind) {
    case StructuralError::Kind::Overlap: return "overlap";
    case StructuralError::Kind::Gap: return "gap";
    case StructuralError::Kind::ZeroAssigned: return "zero_assigned";
    case StructuralError::Kind::Asymmetric: return "asymmetric";
    case StructuralError::Kind::GroupMismatch: return "group_mismatch";
    case StructuralError::Kind::AtomCount: return "atom_count";
    case StructuralError::Kind::Coloring: return "coloring";
  }
  return "unknown";
}

namespace {

std::uint64_t parse_uint(std::string_view text, const char* what) {
  std::uint64_t value = 0;
  const auto* begin = text.data();
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (text.empty() || ec != std::errc{} || ptr != end) {
    throw ParseError(std::string("invalid ") + what + ": '" + std::string(text) + "'");
  }
  return value;
}

std::size_t word_count(std::uint32_t order) { return (static_cast<std::size_t>(order) + 63) / 64; }

// Bits [pos, pos + count) of a bit vector, count <= 64.
std::uint64_t extract_bits(std::span<const std::uint64_t> src, std::size_t pos, std::size_t count) {
  const std::size_t w = pos / 64;
  const std::size_t o = pos % 64;
  std::uint64_t v = src[w] >> o;
  if (o != 0 && w + 1 < src.size()) v |= src[w + 1] << (64 - o);
  if (count < 64) v &= (std::uint64_t{1} << count) - 1;
  return v;
}

void or_bit_range(std::span<std::uint64_t> dst, std::size_t dst_pos, std::span<const std::uint64_t> src,
                  std::size_t src_pos, std::size_t len) {
  while (len > 0) {
    const std::size_t chunk = std::min<std::size_t>(64 - dst_pos % 64, len);
    dst[dst_pos / 64] |= extract_bits(src, src_pos, chunk) << (dst_pos % 64);
    dst_pos += chunk;
    src_pos += chunk;
    len -= chunk;
  }
}

// Permutes the bits of a word by b -> b ^ shift (shift < 64).
std::uint64_t xor_permute(std::uint64_t x, unsigned shift) {
  static constexpr std::uint64_t kMasks[6] = {
      0x5555555555555555ULL, 0x3333333333333333ULL, 0x0F0F0F0F0F0F0F0FULL,
      0x00FF00FF00FF00FFULL, 0x0000FFFF0000FFFFULL, 0x00000000FFFFFFFFULL,
  };
  for (unsigned i = 0; i < 6; ++i) {
    if ((shift >> i) & 1U) {
      const unsigned s = 1U << i;
      x = ((x & kMasks[i]) << s) | ((x >> s) & kMasks[i]);
    }
  }
  return x;
}

// dst |= src translated by s in (Z/2)^k.
void or_xor_translate(std::span<std::uint64_t> dst, std::span<const std::uint64_t> src, std::uint32_t s) {
  const std::size_t hi = s >> 6;
  const unsigned lo = s & 63U;
  for (std::size_t w = 0; w < src.size(); ++w) {
    if (src[w] != 0) dst[w ^ hi] |= xor_permute(src[w], lo);
  }
}

// dst |= src translated by s in Z/n.
void or_rotate(std::span<std::uint64_t> dst, std::span<const std::uint64_t> src, std::uint32_t s, std::uint32_t n) {
  // [0, n-s) -> [s, n), [n-s, n) -> [0, s)
  or_bit_range(dst, s, src, 0, n - s);
  if (s != 0) or_bit_range(dst, 0, src, n - s, s);
}

}  // namespace

// ---------------------------------------------------------------------------
// GroupSpec

GroupSpec::GroupSpec(std::vector<std::uint32_t> moduli, std::uint64_t order_cap) : moduli_(std::move(moduli)) {
  if (moduli_.empty()) throw Error("group needs at least one cyclic factor");
  std::uint64_t order = 1;
  for (auto n : moduli_) {
    if (n < 2) throw Error("cyclic factor modulus must be >= 2, got " + std::to_string(n));
    order *= n;
    if (order > order_cap) {
      throw Error("group order exceeds dense-representation cap of " + std::to_string(order_cap));
    }
  }
  order_ = static_cast<std::uint32_t>(order);
  elementary2_ = std::all_of(moduli_.begin(), moduli_.end(), [](auto n) { return n == 2; });
}

GroupSpec GroupSpec::cyclic(std::uint32_t n) { return GroupSpec({n}); }

GroupSpec GroupSpec::elementary2(unsigned k) {
  if (k == 0) throw Error("(Z/2)^k needs k >= 1");
  return GroupSpec(std::vector<std::uint32_t>(k, 2));
}

std::uint32_t GroupSpec::add_unchecked(std::uint32_t x, std::uint32_t y) const {
  if (elementary2_) return x ^ y;
  if (moduli_.size() == 1) {
    const std::uint32_t s = x + y;
    return s >= order_ ? s - order_ : s;
  }
  std::uint32_t result = 0;
  std::uint32_t scale = 1;
  for (auto it = moduli_.rbegin(); it != moduli_.rend(); ++it) {
    const std::uint32_t n = *it;
    std::uint32_t d = x % n + y % n;
    if (d >= n) d -= n;
    result += d * scale;
    scale *= n;
    x /= n;
    y /= n;
  }
  return result;
}

std::uint32_t GroupSpec::neg_unchecked(std::uint32_t x) const {
  if (elementary2_) return x;
  if (moduli_.size() == 1) return x == 0 ? 0 : order_ - x;
  std::uint32_t result = 0;
  std::uint32_t scale = 1;
  for (auto it = moduli_.rbegin(); it != moduli_.rend(); ++it) {
    const std::uint32_t n = *it;
    const std::uint32_t d = x % n;
    result += (d == 0 ? 0 : n - d) * scale;
    scale *= n;
    x /= n;
  }
  return result;
}

namespace {
void check_index(const GroupSpec& g, Element x) {
  if (!g.contains(x)) {
    throw std::out_of_range("element index " + std::to_string(x.index) + " out of range for group of order " +
                            std::to_string(g.order()));
  }
}
}  // namespace

Element GroupSpec::add(Element x, Element y) const {
  check_index(*this, x);
  check_index(*this, y);
  return Element{add_unchecked(x.index, y.index)};
}

Element GroupSpec::neg(Element x) const {
  check_index(*this, x);
  return Element{neg_unchecked(x.index)};
}

Element GroupSpec::sub(Element x, Element y) const {
  check_index(*this, x);
  check_index(*this, y);
  return Element{add_unchecked(x.index, neg_unchecked(y.index))};
}

std::vector<std::uint32_t> GroupSpec::decode(Element x) const {
  check_index(*this, x);
  std::vector<std::uint32_t> coords(moduli_.size());
  std::uint32_t rest = x.index;
  for (std::size_t i = moduli_.size(); i-- > 0;) {
    coords[i] = rest % moduli_[i];
    rest /= moduli_[i];
  }
  return coords;
}

Element GroupSpec::encode(std::span<const std::uint32_t> coords) const {
  if (coords.size() != moduli_.size()) {
    throw std::out_of_range("expected " + std::to_string(moduli_.size()) + " coordinates, got " +
                            std::to_string(coords.size()));
  }
  std::uint32_t index = 0;
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (coords[i] >= moduli_[i]) throw std::out_of_range("coordinate out of range");
    index = index * moduli_[i] + coords[i];
  }
  return Element{index};
}

std::string GroupSpec::format(Element x) const {
  const auto coords = decode(x);
  if (elementary2_) {
    std::string s;
    for (auto c : coords) s.push_back(c != 0 ? '1' : '0');
    return s;
  }
  if (moduli_.size() == 1) return std::to_string(x.index);
  std::string s;
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (i != 0) s.push_back(',');
    s += std::to_string(coords[i]);
  }
  return s;
}

Element GroupSpec::parse_element(std::string_view text) const {
  if (elementary2_) {
    if (text.size() != moduli_.size() ||
        !std::all_of(text.begin(), text.end(), [](char c) { return c == '0' || c == '1'; })) {
      throw ParseError("expected a bitstring of length " + std::to_string(moduli_.size()) + ", got '" +
                       std::string(text) + "'");
    }
    std::uint32_t index = 0;
    for (char c : text) index = (index << 1) | static_cast<std::uint32_t>(c - '0');
    return Element{index};
  }
  if (moduli_.size() == 1) {
    const auto v = parse_uint(text, "element");
    if (v >= order_) throw ParseError("element " + std::string(text) + " out of range for Z/" + std::to_string(order_));
    return Element{static_cast<std::uint32_t>(v)};
  }
  std::vector<std::uint32_t> coords;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    const auto piece = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    coords.push_back(static_cast<std::uint32_t>(parse_uint(piece, "coordinate")));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (coords.size() != moduli_.size()) throw ParseError("wrong number of coordinates in '" + std::string(text) + "'");
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (coords[i] >= moduli_[i]) throw ParseError("coordinate out of range in '" + std::string(text) + "'");
  }
  return encode(coords);
}

std::string GroupSpec::describe() const {
  if (elementary2_) return "2^" + std::to_string(moduli_.size());
  if (moduli_.size() == 1) return "z:" + std::to_string(order_);
  std::string s;
  for (std::size_t i = 0; i < moduli_.size(); ++i) {
    if (i != 0) s.push_back('x');
    s += std::to_string(moduli_[i]);
  }
  return s;
}

GroupSpec parse_group(std::string_view text) {
  if (text.starts_with("z:") || text.starts_with("Z:")) {
    const auto n = parse_uint(text.substr(2), "cyclic group order");
    if (n > GroupSpec::kDefaultOrderCap) throw ParseError("group order too large: " + std::string(text));
    return GroupSpec::cyclic(static_cast<std::uint32_t>(n));
  }
  if (text.starts_with("2^")) {
    const auto k = parse_uint(text.substr(2), "exponent");
    if (k == 0 || k > 20) throw ParseError("exponent out of range: " + std::string(text));
    return GroupSpec::elementary2(static_cast<unsigned>(k));
  }
  std::vector<std::uint32_t> moduli;
  std::size_t start = 0;
  while (true) {
    const auto x = text.find('x', start);
    const auto piece = text.substr(start, x == std::string_view::npos ? std::string_view::npos : x - start);
    const auto n = parse_uint(piece, "modulus");
    if (n > GroupSpec::kDefaultOrderCap) throw ParseError("modulus too large: " + std::string(piece));
    moduli.push_back(static_cast<std::uint32_t>(n));
    if (x == std::string_view::npos) break;
    start = x + 1;
  }
  return GroupSpec(std::move(moduli));
}

// ---------------------------------------------------------------------------
// ElementSet

ElementSet::ElementSet(GroupSpec group) : group_(std::move(group)), words_(word_count(group_.order()), 0) {}

ElementSet::ElementSet(GroupSpec group, std::span<const Element> elements) : ElementSet(std::move(group)) {
  for (auto e : elements) insert(e);
}

ElementSet ElementSet::full(const GroupSpec& group) {
  ElementSet s(group);
  std::fill(s.words_.begin(), s.words_.end(), ~std::uint64_t{0});
  s.clear_padding();
  s.count_ = group.order();
  return s;
}

ElementSet ElementSet::singleton(const GroupSpec& group, Element x) {
  ElementSet s(group);
  s.insert(x);
  return s;
}

bool ElementSet::contains(Element x) const {
  check_index(group_, x);
  return test(x.index);
}

void ElementSet::insert(Element x) {
  check_index(group_, x);
  auto& w = words_[x.index >> 6];
  const std::uint64_t bit = std::uint64_t{1} << (x.index & 63);
  if ((w & bit) == 0) {
    w |= bit;
    ++count_;
  }
}

void ElementSet::erase(Element x) {
  check_index(group_, x);
  auto& w = words_[x.index >> 6];
  const std::uint64_t bit = std::uint64_t{1} << (x.index & 63);
  if ((w & bit) != 0) {
    w &= ~bit;
    --count_;
  }
}

std::vector<Element> ElementSet::elements() const {
  std::vector<Element> out;
  out.reserve(count_);
  for_each([&](Element e) { out.push_back(e); });
  return out;
}

std::optional<Element> ElementSet::first() const {
  for (std::size_t w = 0; w < words_.size(); ++w) {
    if (words_[w] != 0) {
      return Element{static_cast<std::uint32_t>(w * 64 + static_cast<std::size_t>(__builtin_ctzll(words_[w])))};
    }
  }
  return std::nullopt;
}

void ElementSet::require_same_group(const ElementSet& other) const {
  if (!(group_ == other.group_)) {
    throw StructuralError(StructuralError::Kind::GroupMismatch,
                          "sets belong to different groups: " + group_.describe() + " vs " + other.group_.describe());
  }
}

void ElementSet::clear_padding() {
  const std::uint32_t tail = group_.order() % 64;
  if (tail != 0) words_.back() &= (std::uint64_t{1} << tail) - 1;
}

void ElementSet::recount() {
  clear_padding();
  count_ = 0;
  for (auto w : words_) count_ += static_cast<std::size_t>(__builtin_popcountll(w));
}

ElementSet& ElementSet::operator|=(const ElementSet& other) {
  require_same_group(other);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
  recount();
  return *this;
}

ElementSet& ElementSet::operator&=(const ElementSet& other) {
  require_same_group(other);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
  recount();
  return *this;
}

ElementSet& ElementSet::operator-=(const ElementSet& other) {
  require_same_group(other);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~other.words_[i];
  recount();
  return *this;
}

ElementSet ElementSet::complement() const {
  ElementSet out(group_);
  for (std::size_t i = 0; i < words_.size(); ++i) out.words_[i] = ~words_[i];
  out.recount();
  return out;
}

ElementSet ElementSet::negated() const {
  if (group_.is_elementary2()) return *this;
  ElementSet out(group_);
  for_each([&](Element e) { out.insert(Element{group_.neg_unchecked(e.index)}); });
  return out;
}

bool ElementSet::is_subset_of(const ElementSet& other) const {
  require_same_group(other);
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if ((words_[i] & ~other.words_[i]) != 0) return false;
  }
  return true;
}

bool ElementSet::intersects(const ElementSet& other) const {
  require_same_group(other);
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if ((words_[i] & other.words_[i]) != 0) return true;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Sumsets and subgroups

ElementSet sumset_reference(const ElementSet& s, const ElementSet& t) {
  if (!(s.group() == t.group())) {
    throw StructuralError(StructuralError::Kind::GroupMismatch, "sumset of sets from different groups");
  }
  const GroupSpec& g = s.group();
  ElementSet out(g);
  for (std::uint32_t x = 0; x < g.order(); ++x) {
    if (!s.test(x)) continue;
    for (std::uint32_t y = 0; y < g.order(); ++y) {
      if (t.test(y)) out.insert(Element{g.add_unchecked(x, y)});
    }
  }
  return out;
}

ElementSet sumset(const ElementSet& s, const ElementSet& t) {
  if (!(s.group() == t.group())) {
    throw StructuralError(StructuralError::Kind::GroupMismatch, "sumset of sets from different groups");
  }
  const GroupSpec& g = s.group();
  ElementSet out(g);
  if (s.empty() || t.empty()) return out;

  // Translate the larger set by each member of the smaller one.
  const ElementSet& small = s.size() <= t.size() ? s : t;
  const ElementSet& large = s.size() <= t.size() ? t : s;
  auto dst = out.mutable_words();
  const auto src = large.words();

  if (g.is_elementary2()) {
    small.for_each([&](Element x) { or_xor_translate(dst, src, x.index); });
  } else if (g.is_cyclic()) {
    small.for_each([&](Element x) { or_rotate(dst, src, x.index, g.order()); });
  } else {
    small.for_each([&](Element x) {
      large.for_each([&](Element y) {
        const std::uint32_t z = g.add_unchecked(x.index, y.index);
        dst[z >> 6] |= std::uint64_t{1} << (z & 63);
      });
    });
  }
  out.recount();
  return out;
}

Subgroup span(const GroupSpec& group, std::span<const Element> generators) {
  ElementSet h = ElementSet::singleton(group, Element{0});
  for (auto gen : generators) {
    if (h.contains(gen)) continue;
    ElementSet cyclic(group);
    std::uint32_t x = 0;
    do {
      cyclic.insert(Element{x});
      x = group.add_unchecked(x, gen.index);
    } while (x != 0);
    h = sumset(h, cyclic);
  }
  return Subgroup{std::vector<Element>(generators.begin(), generators.end()), std::move(h)};
}

// ---------------------------------------------------------------------------
// Number theory

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t mod) {
  using u128 = unsigned __int128;
  std::uint64_t result = 1 % mod;
  base %= mod;
  while (exp != 0) {
    if (exp & 1U) result = static_cast<std::uint64_t>(static_cast<u128>(result) * base % mod);
    base = static_cast<std::uint64_t>(static_cast<u128>(base) * base % mod);
    exp >>= 1;
  }
  return result;
}

namespace {
std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}
}  // namespace

bool is_primitive_root(std::uint64_t g, std::uint64_t p) {
  if (!is_prime(p)) throw Error(std::to_string(p) + " is not prime");
  if (p == 2) return g % 2 == 1;
  if (g % p == 0) return false;
  for (auto q : prime_factors(p - 1)) {
    if (pow_mod(g, (p - 1) / q, p) == 1) return false;
  }
  return true;
}

std::uint64_t primitive_root(std::uint64_t p) {
  if (!is_prime(p)) throw Error(std::to_string(p) + " is not prime");
  if (p == 2) return 1;
  const auto factors = prime_factors(p - 1);
  for (std::uint64_t g = 2;; ++g) {
    if (std::all_of(factors.begin(), factors.end(), [&](auto q) { return pow_mod(g, (p - 1) / q, p) != 1; })) {
      return g;
    }
  }
}

std::vector<ElementSet> cyclotomic_cosets(std::uint64_t p, unsigned m, std::uint64_t g) {
  if (!is_prime(p)) throw Error(std::to_string(p) + " is not prime");
  if (p > GroupSpec::kDefaultOrderCap) throw Error("prime too large for dense representation");
  if (m == 0 || (p - 1) % m != 0) {
    throw Error("m = " + std::to_string(m) + " does not divide p - 1 = " + std::to_string(p - 1));
  }
  if (!is_primitive_root(g, p)) {
    throw Error(std::to_string(g) + " is not a primitive root mod " + std::to_string(p));
  }
  const auto group = GroupSpec::cyclic(static_cast<std::uint32_t>(p));
  std::vector<ElementSet> cosets(m, ElementSet(group));
  std::uint64_t power = 1 % p;
  for (std::uint64_t e = 0; e < p - 1; ++e) {
    cosets[e % m].insert(Element{static_cast<std::uint32_t>(power)});
    power = power * (g % p) % p;
  }
  return cosets;
}

ElementSet weight_classes(unsigned k, unsigned lo, unsigned hi) {
  if (k == 0 || k > 20) throw Error("dimension k out of range: " + std::to_string(k));
  if (lo > hi || hi > k) {
    throw Error("weight bounds [" + std::to_string(lo) + ", " + std::to_string(hi) + "] invalid for k = " +
                std::to_string(k));
  }
  const auto group = GroupSpec::elementary2(k);
  ElementSet out(group);
  for (std::uint32_t x = 0; x < group.order(); ++x) {
    const auto w = static_cast<unsigned>(__builtin_popcount(x));
    if (w >= lo && w <= hi) out.insert(Element{x});
  }
  return out;
}

}  // namespace finrep
