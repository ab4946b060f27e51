#include "finrep/johnson.hpp"

#include <cmath>
#include <numeric>
#include <random>

#include "finrep/error.hpp"
#include "finrep/rng.hpp"

namespace finrep {

namespace {

constexpr unsigned kMaxN = 22;  // ground set of 3n-4 <= 62 elements fits a word

// Pascal's triangle up to 64; every entry fits in 64 bits.
const std::array<std::array<std::uint64_t, 65>, 65>& binomials() {
  static const auto table = [] {
    std::array<std::array<std::uint64_t, 65>, 65> t{};
    for (std::size_t i = 0; i <= 64; ++i) {
      t[i][0] = 1;
      for (std::size_t j = 1; j <= i; ++j) t[i][j] = t[i - 1][j - 1] + (j <= i - 1 ? t[i - 1][j] : 0);
    }
    return t;
  }();
  return table;
}

std::uint64_t choose64(unsigned n, unsigned k) { return k > n ? 0 : binomials()[n][k]; }

BigInt choose_big(const BigInt& n, const BigInt& k) {
  if (k < 0 || k > n) return 0;
  BigInt kk = k < n - k ? k : n - k;
  BigInt result = 1;
  for (BigInt i = 1; i <= kk; ++i) {
    result *= n - kk + i;
    result /= i;
  }
  return result;
}

void check_n(unsigned n) {
  if (n < 2 || n > kMaxN) throw Error("subset size n must be in [2, " + std::to_string(kMaxN) + "], got " + std::to_string(n));
}

}  // namespace

std::uint64_t johnson_size(unsigned n) {
  check_n(n);
  return choose64(3 * n - 4, n);
}

JohnsonUniverse::JohnsonUniverse(unsigned n, std::uint64_t max_points) : n_(n) {
  const std::uint64_t size = johnson_size(n);
  if (size > max_points) {
    throw Error("Johnson universe for n = " + std::to_string(n) + " has " + std::to_string(size) +
                " points, above the limit of " + std::to_string(max_points));
  }
  points_.reserve(size);
  // Gosper's hack enumerates equal-popcount words in increasing order, which
  // is colex order on subsets.
  const Subset limit = Subset{1} << ground_size();
  for (Subset s = (Subset{1} << n) - 1; s < limit;) {
    points_.push_back(s);
    const Subset c = s & (~s + 1);
    const Subset r = s + c;
    s = (((r ^ s) >> 2) / c) | r;
  }
}

std::uint64_t JohnsonUniverse::rank(Subset s) const {
  if (static_cast<unsigned>(__builtin_popcountll(s)) != n_ || (s >> ground_size()) != 0) {
    throw Error("not an " + std::to_string(n_) + "-subset of the ground set");
  }
  std::uint64_t r = 0;
  unsigned i = 1;
  while (s != 0) {
    const auto c = static_cast<unsigned>(__builtin_ctzll(s));
    r += choose64(c, i++);
    s &= s - 1;
  }
  return r;
}

Subset JohnsonUniverse::unrank(std::uint64_t r) const {
  if (r >= choose64(ground_size(), n_)) throw std::out_of_range("rank out of range");
  Subset s = 0;
  unsigned c = ground_size();
  for (unsigned i = n_; i >= 1; --i) {
    // Largest c with C(c, i) <= r.
    do {
      --c;
    } while (choose64(c, i) > r);
    s |= Subset{1} << c;
    r -= choose64(c, i);
  }
  return s;
}

EquitablePartition random_equitable_partition(const JohnsonUniverse& u, std::uint64_t seed) {
  const std::uint64_t size = u.size();
  if (size == 0 || size % 3 != 0) {
    throw Error("universe size " + std::to_string(size) + " is not divisible by 3");
  }
  std::vector<std::uint64_t> order(size);
  std::iota(order.begin(), order.end(), std::uint64_t{0});
  std::mt19937_64 rng(seed);
  shuffle(std::span<std::uint64_t>(order), rng);

  EquitablePartition part;
  part.class_of.resize(size);
  const std::uint64_t third = size / 3;
  for (std::uint64_t pos = 0; pos < size; ++pos) {
    const auto cls = static_cast<std::uint8_t>(pos / third);
    part.class_of[order[pos]] = cls;
    ++part.class_sizes[cls];
  }
  return part;
}

AtomId classify(const JohnsonUniverse& u, const EquitablePartition& part, std::uint64_t x, std::uint64_t y) {
  using namespace johnson_atoms;
  if (x >= u.size() || y >= u.size() || part.class_of.size() != u.size()) {
    throw std::out_of_range("point index out of range");
  }
  if (x == y) return kIdentity;
  if (part.class_of[x] == part.class_of[y]) return kB;
  return __builtin_popcountll(u.point(x) & u.point(y)) >= 2 ? kA : kC;
}

std::vector<Subset> acc_witness_family(const JohnsonUniverse& u, Subset x, Subset y) {
  return acc_witness_family(u.n(), x, y);
}

std::vector<Subset> acc_witness_family(unsigned n, Subset x, Subset y) {
  if (n < 2 || n > 22) throw Error("n out of range for a Johnson universe: " + std::to_string(n));
  const unsigned v = 3 * n - 4;
  const Subset ground = (Subset{1} << v) - 1;
  auto is_point = [&](Subset s) {
    return (s & ~ground) == 0 && static_cast<unsigned>(__builtin_popcountll(s)) == n;
  };
  if (!is_point(x) || !is_point(y)) throw Error("witness family needs two n-subsets of the ground set");
  if (__builtin_popcountll(x & y) != 2) throw Error("witness family needs |x ∩ y| = 2");

  const Subset outside = ground & ~(x | y);
  const Subset only_x = x & ~y;
  const Subset only_y = y & ~x;
  std::vector<Subset> family;
  for (Subset a = only_x; a != 0; a &= a - 1) {
    for (Subset b = only_y; b != 0; b &= b - 1) {
      family.push_back(outside | (a & (~a + 1)) | (b & (~b + 1)));
    }
  }
  return family;
}

BoundResult probability_bound(unsigned n) {
  if (n < 3) throw Error("probability bound needs n >= 3");
  BoundResult out;
  out.n = n;
  const double v = 3.0 * n - 4.0;
  const double nn = n;
  const double log_binom = std::lgamma(v + 1) - std::lgamma(nn + 1) - std::lgamma(v - nn + 1);
  const double e = (nn - 2) * (nn - 2);
  out.log_bound = 2 * log_binom + 3 * std::log(4.0) + e * std::log(2.0 / 3.0);
  out.below_one = out.log_bound < 0;
  out.binomial = choose_big(BigInt(3 * n - 4), BigInt(n));
  return out;
}

unsigned minimal_sufficient_n() {
  for (unsigned n = 3; n < 1000; ++n) {
    if (probability_bound(n).below_one) return n;
  }
  throw std::logic_error("probability bound never drops below one");
}

BigInt partition_count(const BigInt& universe_size) {
  if (universe_size <= 0 || universe_size % 3 != 0) {
    throw Error("partition count needs a positive universe size divisible by 3");
  }
  const BigInt third = universe_size / 3;
  const BigInt product = choose_big(universe_size, third) * choose_big(2 * third, third);
  return product / 2;
}

McReport mc_trial(unsigned n, std::uint64_t trials, std::uint64_t seed, const McOptions& options) {
  const std::uint64_t size = johnson_size(n);
  if (size % 3 != 0) {
    throw Error("C(" + std::to_string(3 * n - 4) + ", " + std::to_string(n) + ") = " + std::to_string(size) +
                " is not divisible by 3");
  }
  if (size > options.size_guard) {
    throw Error("universe of " + std::to_string(size) + " points exceeds the size guard of " +
                std::to_string(options.size_guard));
  }
  McReport report;
  report.n = n;
  report.points = size;
  report.trials = trials;
  report.seed = seed;
  if (trials == 0) return report;

  const JohnsonUniverse u(n);
  const RaSpec spec = builtin_52_65();
  VerifyOptions vopts;
  vopts.max_violations = 0;
  vopts.threads = options.threads;

  for (std::uint64_t t = 0; t < trials; ++t) {
    TrialRecord rec;
    rec.index = t;
    rec.seed = derive_seed(seed, t);
    const EquitablePartition part = random_equitable_partition(u, rec.seed);
    const auto coloring = EdgeColoring::from_function(static_cast<std::uint32_t>(size), spec.atom_count(),
                                                      [&](std::uint32_t x, std::uint32_t y) {
                                                        return classify(u, part, x, y);
                                                      });
    const VerificationReport vr = verify_bruteforce(spec, coloring, vopts);
    rec.accepted = vr.accepted;
    rec.missing = vr.missing_count;
    rec.forbidden = vr.forbidden_count;
    rec.empty_atoms = vr.empty_atom_count;
    for (const auto& c : vr.cycles) {
      if (c.failures != 0) rec.failures_by_cycle[spec.cycle_label(c.cycle[0], c.cycle[1], c.cycle[2])] = c.failures;
    }
    if (rec.accepted) ++report.accepted;
    report.records.push_back(std::move(rec));
  }
  return report;
}

}  // namespace finrep
