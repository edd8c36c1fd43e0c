#pragma once

// Exact computation fields.
//
// Every algorithm in quadgon is a template over a Field type that owns the
// arithmetic.  Two models exist:
//
//   PrimeField     F_p for a prime 2 < p < 2^31, elements are uint32 residues
//   RationalField  Q, elements are boost cpp_rational
//
// Elements are plain values; the field object performs all operations
// (F.add(x, y), F.mul(x, y), ...), in the style of fflas/NTL field objects.
// Field objects are immutable after construction and cheap to copy.

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <numeric>
#include <memory>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "quadgon/error.hpp"

namespace quadgon {

/// Random engine used throughout.  mt19937_64 output is fully specified by the
/// standard, and all reductions below are done by hand, so results are
/// reproducible across platforms.
using Rng = std::mt19937_64;

/// SplitMix64 finalizer.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed for the `index`-th trial / tuple derived from a master seed:
///   derive_seed(master, i) = splitmix64(master ^ splitmix64(i + 1)).
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  return splitmix64(master ^ splitmix64(index + 1));
}

/// Uniform integer in [0, bound) by rejection, independent of the standard
/// library's distribution implementations.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  if (bound == 0) throw Error("uniform_below: empty range");
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  for (;;) {
    const std::uint64_t r = rng();
    if (r < limit) return r % bound;
  }
}

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

class PrimeField {
 public:
  using Element = std::uint32_t;
  static constexpr std::uint32_t kDefaultPrime = 65537;
  static constexpr bool is_prime_field = true;

  explicit PrimeField(std::uint32_t p = kDefaultPrime) : p_(p) {
    if (p <= 2 || p >= (1U << 31) || !is_prime(p))
      throw Error("prime field: modulus must be an odd prime below 2^31, got " +
                  std::to_string(p));
    barrett_ = ~std::uint64_t{0} / p_;
    if (p_ < kInverseTableLimit) {
      auto table = std::make_shared<std::vector<Element>>(p_, 0);
      auto& inv = *table;
      inv[1] = 1;
      for (std::uint32_t i = 2; i < p_; ++i)
        inv[i] = static_cast<Element>(
            (p_ - static_cast<std::uint64_t>(p_ / i) * inv[p_ % i] % p_) % p_);
      inverses_ = std::move(table);
    }
  }

  std::uint32_t characteristic() const { return p_; }
  std::string name() const { return "F_" + std::to_string(p_); }
  /// Value written into the "p" field of serialized forms.
  std::uint64_t json_modulus() const { return p_; }

  Element zero() const { return 0; }
  Element one() const { return 1; }
  Element from_int(std::int64_t v) const {
    std::int64_t r = v % static_cast<std::int64_t>(p_);
    if (r < 0) r += p_;
    return static_cast<Element>(r);
  }

  Element add(Element x, Element y) const {
    const std::uint32_t s = x + y;
    return s >= p_ ? s - p_ : s;
  }
  Element sub(Element x, Element y) const { return x >= y ? x - y : x + p_ - y; }
  Element neg(Element x) const { return x == 0 ? 0 : p_ - x; }
  Element mul(Element x, Element y) const {
    return reduce(static_cast<std::uint64_t>(x) * y);
  }
  /// Reduction of any 64-bit value.
  Element reduce(std::uint64_t x) const {
    const std::uint64_t q = static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(x) * barrett_) >> 64);
    std::uint64_t r = x - q * p_;
    while (r >= p_) r -= p_;
    return static_cast<Element>(r);
  }
  Element inv(Element x) const {
    if (x == 0) throw Error("division by zero in " + name());
    if (inverses_) return (*inverses_)[x];
    std::int64_t a = x, b = p_, u = 1, v = 0;
    while (b != 0) {
      const std::int64_t t = a / b;
      a -= t * b;
      std::swap(a, b);
      u -= t * v;
      std::swap(u, v);
    }
    return from_int(u);
  }
  Element div(Element x, Element y) const { return mul(x, inv(y)); }
  Element pow(Element x, std::uint64_t e) const {
    Element r = 1;
    while (e != 0) {
      if (e & 1U) r = mul(r, x);
      x = mul(x, x);
      e >>= 1U;
    }
    return r;
  }

  bool is_zero(Element x) const { return x == 0; }
  bool equal(Element x, Element y) const { return x == y; }
  bool less(Element x, Element y) const { return x < y; }
  /// Injective key into [0, p), used for direct-address grouping.
  std::uint64_t key(Element x) const { return x; }
  bool has_small_keys() const { return p_ < kInverseTableLimit; }

  Element random(Rng& rng) const { return static_cast<Element>(uniform_below(rng, p_)); }
  Element random_nonzero(Rng& rng) const {
    return static_cast<Element>(1 + uniform_below(rng, p_ - 1));
  }

  std::string to_string(Element x) const { return std::to_string(x); }
  Element parse(std::string_view text) const {
    std::int64_t v = 0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (text.empty() || ec != std::errc() || ptr != end)
      throw Error("cannot parse field element '" + std::string(text) + "'");
    return from_int(v);
  }

  /// Elements are enumerable: index -> element for index < size().
  std::uint64_t size() const { return p_; }
  Element element_at(std::uint64_t index) const { return static_cast<Element>(index); }

 private:
  static constexpr std::uint32_t kInverseTableLimit = 1U << 22;

  std::uint32_t p_;
  std::uint64_t barrett_ = 0;
  std::shared_ptr<const std::vector<Element>> inverses_;
};

/// Exact rationals.  Random elements are integers in [-height, height].
class RationalField {
 public:
  using Element = boost::multiprecision::cpp_rational;
  static constexpr bool is_prime_field = false;

  explicit RationalField(std::int64_t height = 1000) : height_(height) {
    if (height < 1) throw Error("rational field: sampling height must be positive");
  }

  std::uint32_t characteristic() const { return 0; }
  std::string name() const { return "Q"; }
  std::uint64_t json_modulus() const { return 0; }
  std::int64_t height() const { return height_; }

  Element zero() const { return Element(0); }
  Element one() const { return Element(1); }
  Element from_int(std::int64_t v) const { return Element(v); }

  Element add(const Element& x, const Element& y) const { return x + y; }
  Element sub(const Element& x, const Element& y) const { return x - y; }
  Element neg(const Element& x) const { return -x; }
  Element mul(const Element& x, const Element& y) const { return x * y; }
  Element inv(const Element& x) const {
    if (x == 0) throw Error("division by zero in Q");
    return Element(1) / x;
  }
  Element div(const Element& x, const Element& y) const { return x / y; }
  Element pow(Element x, std::uint64_t e) const {
    Element r(1);
    while (e != 0) {
      if (e & 1U) r *= x;
      x *= x;
      e >>= 1U;
    }
    return r;
  }

  bool is_zero(const Element& x) const { return x == 0; }
  bool equal(const Element& x, const Element& y) const { return x == y; }
  bool less(const Element& x, const Element& y) const { return x < y; }
  std::uint64_t key(const Element&) const { return 0; }
  bool has_small_keys() const { return false; }

  Element random(Rng& rng) const {
    const auto span = static_cast<std::uint64_t>(2 * height_ + 1);
    return Element(static_cast<std::int64_t>(uniform_below(rng, span)) - height_);
  }
  Element random_nonzero(Rng& rng) const {
    for (;;) {
      Element x = random(rng);
      if (x != 0) return x;
    }
  }

  std::string to_string(const Element& x) const { return x.str(); }
  Element parse(std::string_view text) const {
    try {
      return Element(std::string(text));
    } catch (const std::exception&) {
      throw Error("cannot parse rational '" + std::string(text) + "'");
    }
  }

  /// Enumeration of the small-height rationals 0, 1, -1, 2, -2, 1/2, ...
  /// ordered by height max(|num|, den).  Only the first size() are used.
  std::uint64_t size() const { return enumeration().size(); }
  Element element_at(std::uint64_t index) const { return enumeration().at(index); }

 private:
  const std::vector<Element>& enumeration() const {
    static const std::vector<Element> values = [] {
      constexpr std::int64_t kMaxHeight = 24;
      std::vector<Element> out{Element(0)};
      for (std::int64_t h = 1; h <= kMaxHeight; ++h)
        for (std::int64_t den = 1; den <= h; ++den)
          for (std::int64_t num = 1; num <= h; ++num) {
            if (std::max(num, den) != h || std::gcd(num, den) != 1) continue;
            out.emplace_back(num, den);
            out.emplace_back(-num, den);
          }
      return out;
    }();
    return values;
  }

  std::int64_t height_;
};

}  // namespace quadgon
