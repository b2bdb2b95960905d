#include "bohrlab/zn.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <numbers>
#include <numeric>

#include "bohrlab/error.hpp"

namespace bohrlab {

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  if (n % 3 == 0) return n == 3;
  for (std::int64_t p = 5; p * p <= n; p += 6) {
    if (n % p == 0 || n % (p + 2) == 0) return false;
  }
  return true;
}

Modulus::Modulus(std::int64_t n) : n_(n), prime_(false) {
  if (n < 1) throw Error("InvalidModulus", "modulus must be >= 1, got " + std::to_string(n));
  prime_ = bohrlab::is_prime(n);
}

Residue Modulus::mul(Residue a, Residue b) const noexcept {
  const auto p = static_cast<__int128>(reduce(a)) * static_cast<__int128>(reduce(b));
  return static_cast<Residue>(p % n_);
}

std::optional<Residue> Modulus::inverse(Residue c) const {
  std::int64_t a = reduce(c), m = n_;
  std::int64_t x0 = 1, x1 = 0;
  while (m != 0) {
    const std::int64_t q = a / m;
    std::int64_t t = a - q * m;
    a = m;
    m = t;
    t = x0 - q * x1;
    x0 = x1;
    x1 = t;
  }
  if (a != 1) {
    if (n_ == 1) return Residue{0};
    return std::nullopt;
  }
  return reduce(x0);
}

namespace {

std::size_t word_count(std::int64_t n) { return static_cast<std::size_t>((n + 63) / 64); }

void check_capacity(const Modulus& m) {
  if (m.n() > kMaxSetModulus) {
    throw Error("CapacityExceeded", "ZnSet modulus " + std::to_string(m.n()) + " exceeds 2^24");
  }
}

}  // namespace

ZnSet::ZnSet(Modulus m) : mod_(m), words_(word_count(m.n()), 0) { check_capacity(mod_); }

ZnSet::ZnSet(Modulus m, std::span<const std::int64_t> elems) : ZnSet(m) {
  for (const auto e : elems) {
    const auto r = mod_.reduce(e);
    words_[static_cast<std::size_t>(r >> 6)] |= std::uint64_t{1} << (r & 63);
  }
  recount();
}

ZnSet::ZnSet(Modulus m, std::initializer_list<std::int64_t> elems)
    : ZnSet(m, std::span<const std::int64_t>(elems.begin(), elems.size())) {}

ZnSet::ZnSet(Modulus m, std::vector<std::uint64_t> words, std::int64_t count)
    : mod_(m), words_(std::move(words)), count_(count) {}

ZnSet ZnSet::full(Modulus m) { return ZnSet(m).complement(); }

ZnSet ZnSet::from_words(Modulus m, std::vector<std::uint64_t> words) {
  check_capacity(m);
  if (words.size() != word_count(m.n())) {
    throw Error("ParseError", "expected " + std::to_string(word_count(m.n())) + " words, got " +
                                  std::to_string(words.size()));
  }
  const int tail = static_cast<int>(m.n() % 64);
  if (tail != 0 && (words.back() >> tail) != 0) {
    throw Error("ParseError", "bits set beyond modulus");
  }
  ZnSet s(m, std::move(words), 0);
  s.recount();
  return s;
}

void ZnSet::recount() {
  count_ = 0;
  for (const auto w : words_) count_ += std::popcount(w);
}

void ZnSet::require_same(const ZnSet& other) const {
  if (!(mod_ == other.mod_)) {
    throw Error("ModulusMismatch", "Z_" + std::to_string(n()) + " vs Z_" + std::to_string(other.n()));
  }
}

std::vector<Residue> ZnSet::elements() const {
  std::vector<Residue> out;
  out.reserve(static_cast<std::size_t>(count_));
  for_each([&](Residue x) { out.push_back(x); });
  return out;
}

ZnSet ZnSet::complement() const {
  std::vector<std::uint64_t> w(words_.size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = ~words_[i];
  const int tail = static_cast<int>(n() % 64);
  if (tail != 0) w.back() &= (std::uint64_t{1} << tail) - 1;
  return ZnSet(mod_, std::move(w), n() - count_);
}

ZnSet ZnSet::intersect(const ZnSet& other) const {
  require_same(other);
  ZnSet out = *this;
  for (std::size_t i = 0; i < words_.size(); ++i) out.words_[i] &= other.words_[i];
  out.recount();
  return out;
}

ZnSet ZnSet::unite(const ZnSet& other) const {
  require_same(other);
  ZnSet out = *this;
  for (std::size_t i = 0; i < words_.size(); ++i) out.words_[i] |= other.words_[i];
  out.recount();
  return out;
}

ZnSet ZnSet::negate() const {
  const auto e = elements();
  std::vector<std::int64_t> neg(e.size());
  std::transform(e.begin(), e.end(), neg.begin(), [](Residue x) { return -x; });
  return ZnSet(mod_, neg);
}

ZnSet ZnSet::translate(Residue t) const {
  auto e = elements();
  for (auto& x : e) x += t;
  return ZnSet(mod_, e);
}

bool ZnSet::is_subset_of(const ZnSet& other) const {
  require_same(other);
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (words_[i] & ~other.words_[i]) return false;
  }
  return true;
}

double char_distance(Residue t, Residue x, const Modulus& m) {
  Residue r = m.mul(t, x);
  if (2 * r > m.n()) r = m.n() - r;
  return 2.0 * std::sin(std::numbers::pi * static_cast<double>(r) / static_cast<double>(m.n()));
}

Dilation dilate(const ZnSet& a, std::int64_t c) {
  const auto& m = a.modulus();
  const Residue cr = m.reduce(c);
  auto e = a.elements();
  for (auto& x : e) x = m.mul(cr, x);
  ZnSet out(m, e);
  return {std::move(out), std::gcd(cr, m.n()) == 1 || m.n() == 1};
}

Embedding embed_interval(std::span<const std::int64_t> a, std::int64_t m, PrimePolicy policy) {
  if (m < 1) throw Error("InvalidArgument", "interval bound must be >= 1");
  for (const auto x : a) {
    if (x < 1 || x > m) {
      throw Error("InvalidArgument", "element " + std::to_string(x) + " outside {1.." + std::to_string(m) + "}");
    }
  }
  std::int64_t prime = 0;
  if (policy == PrimePolicy::smallest) {
    for (std::int64_t p = 3 * m; p <= 6 * m; ++p) {
      if (is_prime(p)) { prime = p; break; }
    }
  } else {
    for (std::int64_t p = 6 * m; p >= 3 * m; --p) {
      if (is_prime(p)) { prime = p; break; }
    }
  }
  // Bertrand's postulate guarantees a prime in [3m, 6m].
  if (prime == 0) throw Error("InternalError", "no prime in [3m, 6m]");
  Modulus mod(prime);
  return {mod, ZnSet(mod, a)};
}

std::string to_text(const ZnSet& s) {
  std::string out = "n:" + std::to_string(s.n()) + ";elems:";
  bool first = true;
  s.for_each([&](Residue x) {
    if (!first) out += ',';
    out += std::to_string(x);
    first = false;
  });
  return out;
}

namespace {

std::string_view trim(std::string_view s) {
  const auto ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

std::int64_t parse_int(std::string_view s) {
  s = trim(s);
  std::int64_t v = 0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end || s.empty()) {
    throw Error("ParseError", "bad integer '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace

ZnSet parse_text(std::string_view text) {
  text = trim(text);
  if (!text.starts_with("n:")) throw Error("ParseError", "set text must start with 'n:'");
  const auto semi = text.find(';');
  if (semi == std::string_view::npos) throw Error("ParseError", "missing ';elems:'");
  const Modulus m(parse_int(text.substr(2, semi - 2)));
  auto rest = trim(text.substr(semi + 1));
  if (!rest.starts_with("elems:")) throw Error("ParseError", "missing 'elems:'");
  rest = trim(rest.substr(6));
  std::vector<std::int64_t> elems;
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    const auto tok = rest.substr(0, comma);
    const auto v = parse_int(tok);
    if (v < 0 || v >= m.n()) {
      throw Error("ParseError", "element " + std::to_string(v) + " is not a residue mod " + std::to_string(m.n()));
    }
    elems.push_back(v);
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
  }
  return ZnSet(m, elems);
}

std::string to_binary(const ZnSet& s) {
  std::string out;
  out.reserve(s.words().size() * 8);
  for (const auto w : s.words()) {
    for (int b = 0; b < 8; ++b) out.push_back(static_cast<char>((w >> (8 * b)) & 0xff));
  }
  return out;
}

ZnSet from_binary(const Modulus& m, std::string_view bytes) {
  if (bytes.size() % 8 != 0) throw Error("ParseError", "binary set length is not a multiple of 8");
  std::vector<std::uint64_t> words(bytes.size() / 8);
  for (std::size_t i = 0; i < words.size(); ++i) {
    std::uint64_t w = 0;
    for (int b = 0; b < 8; ++b) {
      w |= static_cast<std::uint64_t>(static_cast<unsigned char>(bytes[8 * i + b])) << (8 * b);
    }
    words[i] = w;
  }
  return ZnSet::from_words(m, std::move(words));
}

}  // namespace bohrlab
