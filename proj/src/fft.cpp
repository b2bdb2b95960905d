#include "bohrlab/fft.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <shared_mutex>

namespace bohrlab::fft {

namespace {

using cd = std::complex<double>;

class TwiddleRegistry {
 public:
  std::shared_ptr<const std::vector<cd>> get(std::size_t size) {
    {
      std::shared_lock lock(mutex_);
      if (auto it = tables_.find(size); it != tables_.end()) return it->second;
    }
    auto table = std::make_shared<std::vector<cd>>(size / 2);
    for (std::size_t k = 0; k < size / 2; ++k) {
      // Each root evaluated directly; a recurrence would accumulate error.
      const long double angle = -2.0L * std::numbers::pi_v<long double> * static_cast<long double>(k) /
                                static_cast<long double>(size);
      (*table)[k] = cd(static_cast<double>(std::cos(angle)), static_cast<double>(std::sin(angle)));
    }
    std::unique_lock lock(mutex_);
    auto [it, inserted] = tables_.emplace(size, std::move(table));
    return it->second;
  }

 private:
  std::shared_mutex mutex_;
  std::map<std::size_t, std::shared_ptr<const std::vector<cd>>> tables_;
};

TwiddleRegistry& registry() {
  static TwiddleRegistry r;
  return r;
}

void fold(const std::vector<double>& linear, std::vector<double>& out) {
  const std::size_t n = out.size();
  for (std::size_t i = 0; i < linear.size(); ++i) out[i % n] += linear[i];
}

}  // namespace

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

void transform(std::vector<cd>& a, bool inverse) {
  const std::size_t n = a.size();
  if (n <= 1) return;
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  const auto table = registry().get(n);
  const auto& w = *table;
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t half = len >> 1;
    const std::size_t stride = n / len;
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t k = 0; k < half; ++k) {
        cd root = w[k * stride];
        if (inverse) root = std::conj(root);
        const cd u = a[i + k];
        const cd v = a[i + k + half] * root;
        a[i + k] = u + v;
        a[i + k + half] = u - v;
      }
    }
  }
  if (inverse) {
    const double scale = 1.0 / static_cast<double>(n);
    for (auto& x : a) x *= scale;
  }
}

std::vector<double> linear_convolve(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) return {};
  const std::size_t out_len = a.size() + b.size() - 1;
  const std::size_t size = next_pow2(out_len);
  // Pack a into the real part and b into the imaginary part; the square of
  // the packed transform carries 2i * A * B in its imaginary component.
  std::vector<cd> p(size);
  for (std::size_t i = 0; i < a.size(); ++i) p[i].real(a[i]);
  for (std::size_t i = 0; i < b.size(); ++i) p[i].imag(b[i]);
  transform(p, false);
  for (auto& x : p) x *= x;
  transform(p, true);
  std::vector<double> out(out_len);
  for (std::size_t i = 0; i < out_len; ++i) out[i] = 0.5 * p[i].imag();
  return out;
}

std::vector<double> linear_cube(std::span<const double> a) {
  if (a.empty()) return {};
  const std::size_t out_len = 3 * a.size() - 2;
  const std::size_t size = next_pow2(out_len);
  std::vector<cd> p(size);
  for (std::size_t i = 0; i < a.size(); ++i) p[i].real(a[i]);
  transform(p, false);
  for (auto& x : p) x = x * x * x;
  transform(p, true);
  std::vector<double> out(out_len);
  for (std::size_t i = 0; i < out_len; ++i) out[i] = p[i].real();
  return out;
}

std::vector<double> cyclic_convolve(std::span<const double> a, std::span<const double> b) {
  std::vector<double> out(a.size(), 0.0);
  fold(linear_convolve(a, b), out);
  return out;
}

std::vector<double> cyclic_cube(std::span<const double> a) {
  std::vector<double> out(a.size(), 0.0);
  fold(linear_cube(a), out);
  return out;
}

}  // namespace bohrlab::fft
