#include "iqofdm/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <unordered_map>

#include "iqofdm/error.hpp"

namespace iqofdm {
namespace {

// In-place iterative radix-2 Cooley-Tukey. Twiddles and the bit-reversal
// permutation are computed once per size and cached per thread.
class Radix2Plan {
 public:
  explicit Radix2Plan(std::size_t n) : n_(n), twiddle_(n / 2), bitrev_(n) {
    std::size_t bits = 0;
    while ((std::size_t{1} << bits) < n) ++bits;
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t r = 0;
      for (std::size_t b = 0; b < bits; ++b) r |= ((i >> b) & 1U) << (bits - 1 - b);
      bitrev_[i] = r;
    }
    for (std::size_t k = 0; k < n / 2; ++k) {
      const double phi = -2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
      twiddle_[k] = {std::cos(phi), std::sin(phi)};
    }
  }

  // sign = -1 forward, +1 inverse. Unscaled.
  void run(std::span<cplx> x, int sign) const {
    for (std::size_t i = 0; i < n_; ++i) {
      if (bitrev_[i] > i) std::swap(x[i], x[bitrev_[i]]);
    }
    for (std::size_t len = 2; len <= n_; len <<= 1) {
      const std::size_t half = len / 2;
      const std::size_t stride = n_ / len;
      for (std::size_t start = 0; start < n_; start += len) {
        for (std::size_t j = 0; j < half; ++j) {
          cplx w = twiddle_[j * stride];
          if (sign > 0) w = std::conj(w);
          const cplx t = w * x[start + j + half];
          x[start + j + half] = x[start + j] - t;
          x[start + j] += t;
        }
      }
    }
  }

 private:
  std::size_t n_;
  std::vector<cplx> twiddle_;
  std::vector<std::size_t> bitrev_;
};

const Radix2Plan& plan_for(std::size_t n) {
  thread_local std::unordered_map<std::size_t, Radix2Plan> cache;
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, Radix2Plan(n)).first;
  return it->second;
}

void check_pow2(std::size_t n) {
  if (!is_power_of_two(n)) {
    throw InvalidSize("transform length " + std::to_string(n) + " is not a power of two");
  }
}

template <class Out, class In>
Out unitary_transform(const In& in, int sign) {
  check_pow2(in.size());
  Out out(in.values());
  plan_for(in.size()).run(out.span(), sign);
  const double scale = 1.0 / std::sqrt(static_cast<double>(in.size()));
  for (auto& v : out) v *= scale;
  return out;
}

}  // namespace

SpectrumVector dft(const TimeVector& x) {
  return unitary_transform<SpectrumVector>(x, -1);
}

TimeVector inverse_dft(const SpectrumVector& X) {
  return unitary_transform<TimeVector>(X, +1);
}

SpectrumVector mirror(const SpectrumVector& X) {
  const std::size_t n = X.size();
  SpectrumVector out(n);
  for (std::size_t k = 0; k < n; ++k) out[k] = std::conj(X[mirror_index(k, n)]);
  return out;
}

SpectrumVector hadamard(const SpectrumVector& a, const SpectrumVector& b) {
  if (a.size() != b.size()) throw InvalidSize("hadamard: length mismatch");
  SpectrumVector out(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) out[k] = a[k] * b[k];
  return out;
}

double norm2(std::span<const cplx> x) noexcept {
  double acc = 0.0;
  for (const auto& v : x) acc += std::norm(v);
  return std::sqrt(acc);
}

double max_abs_diff(std::span<const cplx> a, std::span<const cplx> b) {
  if (a.size() != b.size()) throw InvalidSize("max_abs_diff: length mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace iqofdm
