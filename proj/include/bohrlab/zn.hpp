#pragma once

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace bohrlab {

using Residue = std::int64_t;

/// Largest group order a ZnSet may be built over.
inline constexpr std::int64_t kMaxSetModulus = std::int64_t{1} << 24;

bool is_prime(std::int64_t n);

/// The cyclic group Z_n. Immutable; primality is computed once.
class Modulus {
 public:
  explicit Modulus(std::int64_t n);

  std::int64_t n() const noexcept { return n_; }
  bool is_prime() const noexcept { return prime_; }

  /// Canonical residue in [0, n).
  Residue reduce(std::int64_t x) const noexcept {
    const std::int64_t r = x % n_;
    return r < 0 ? r + n_ : r;
  }
  Residue add(Residue a, Residue b) const noexcept { return reduce(a + b); }
  Residue mul(Residue a, Residue b) const noexcept;
  std::optional<Residue> inverse(Residue c) const;

  friend bool operator==(const Modulus& a, const Modulus& b) noexcept { return a.n_ == b.n_; }

 private:
  std::int64_t n_;
  bool prime_;
};

/// Dense subset of Z_n stored as a bitset of ceil(n/64) little-endian words.
class ZnSet {
 public:
  explicit ZnSet(Modulus m);
  ZnSet(Modulus m, std::span<const std::int64_t> elems);
  ZnSet(Modulus m, std::initializer_list<std::int64_t> elems);

  static ZnSet full(Modulus m);
  /// Bits at positions >= n must be clear.
  static ZnSet from_words(Modulus m, std::vector<std::uint64_t> words);

  const Modulus& modulus() const noexcept { return mod_; }
  std::int64_t n() const noexcept { return mod_.n(); }
  std::int64_t size() const noexcept { return count_; }
  bool empty() const noexcept { return count_ == 0; }
  bool contains(Residue x) const noexcept {
    const auto r = mod_.reduce(x);
    return (words_[static_cast<std::size_t>(r >> 6)] >> (r & 63)) & 1u;
  }
  const std::vector<std::uint64_t>& words() const noexcept { return words_; }
  std::vector<Residue> elements() const;

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits) {
        const int b = __builtin_ctzll(bits);
        f(static_cast<Residue>(w * 64 + static_cast<std::size_t>(b)));
        bits &= bits - 1;
      }
    }
  }

  ZnSet complement() const;
  ZnSet intersect(const ZnSet& other) const;
  ZnSet unite(const ZnSet& other) const;
  ZnSet negate() const;
  ZnSet translate(Residue t) const;
  bool is_subset_of(const ZnSet& other) const;

  friend bool operator==(const ZnSet& a, const ZnSet& b) noexcept {
    return a.mod_ == b.mod_ && a.words_ == b.words_;
  }

 private:
  ZnSet(Modulus m, std::vector<std::uint64_t> words, std::int64_t count);
  void require_same(const ZnSet& other) const;
  void recount();

  Modulus mod_;
  std::vector<std::uint64_t> words_;
  std::int64_t count_ = 0;
};

/// |1 - e^{2 pi i t x / n}| = 2|sin(pi t x / n)|.
double char_distance(Residue t, Residue x, const Modulus& m);

struct Dilation {
  ZnSet set;
  bool injective;  // false when gcd(c, n) != 1: the map x -> cx is not a bijection
};

/// c.A = {c a mod n}. Negative c is reduced first.
Dilation dilate(const ZnSet& a, std::int64_t c);

enum class PrimePolicy { smallest, largest };

struct Embedding {
  Modulus modulus;
  ZnSet set;
};

/// Places A ⊆ {1..m} into Z_N for a prime N in [3m, 6m]. With N >= 3m the
/// equation x+y+z=3w has the same solutions mod N as over the integers.
Embedding embed_interval(std::span<const std::int64_t> a, std::int64_t m,
                         PrimePolicy policy = PrimePolicy::smallest);

/// `n:<N>;elems:<e1>,<e2>,...` with elements ascending.
std::string to_text(const ZnSet& s);
ZnSet parse_text(std::string_view text);

/// Raw bitset: ceil(n/64) little-endian 64-bit words.
std::string to_binary(const ZnSet& s);
ZnSet from_binary(const Modulus& m, std::string_view bytes);

}  // namespace bohrlab
