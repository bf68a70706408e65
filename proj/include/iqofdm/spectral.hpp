#pragma once

// Complex vector primitives, the unitary DFT and the mirror-conjugation operator.
//
// Indexing is 0-based. Bin 0 is DC and bin N/2 is Nyquist; bin k pairs with its
// mirror bin (N - k) mod N under IQ imbalance.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

namespace iqofdm {

using cplx = std::complex<double>;

// Owning complex vector tagged with the domain it lives in, so that a
// time-domain block cannot be handed to a routine expecting a spectrum.
template <class Tag>
class BasicVector {
 public:
  BasicVector() = default;
  explicit BasicVector(std::size_t n, cplx fill = {}) : v_(n, fill) {}
  BasicVector(std::initializer_list<cplx> init) : v_(init) {}
  explicit BasicVector(std::vector<cplx> v) : v_(std::move(v)) {}
  explicit BasicVector(std::span<const cplx> v) : v_(v.begin(), v.end()) {}

  [[nodiscard]] std::size_t size() const noexcept { return v_.size(); }
  [[nodiscard]] bool empty() const noexcept { return v_.empty(); }

  cplx& operator[](std::size_t i) noexcept { return v_[i]; }
  const cplx& operator[](std::size_t i) const noexcept { return v_[i]; }

  auto begin() noexcept { return v_.begin(); }
  auto end() noexcept { return v_.end(); }
  auto begin() const noexcept { return v_.begin(); }
  auto end() const noexcept { return v_.end(); }

  cplx* data() noexcept { return v_.data(); }
  const cplx* data() const noexcept { return v_.data(); }

  std::span<cplx> span() noexcept { return v_; }
  std::span<const cplx> span() const noexcept { return v_; }
  operator std::span<const cplx>() const noexcept { return v_; }

  const std::vector<cplx>& values() const noexcept { return v_; }
  std::vector<cplx>& values() noexcept { return v_; }

  friend bool operator==(const BasicVector&, const BasicVector&) = default;

 private:
  std::vector<cplx> v_;
};

using SpectrumVector = BasicVector<struct SpectrumTag>;
using TimeVector = BasicVector<struct TimeTag>;

[[nodiscard]] constexpr bool is_power_of_two(std::size_t n) noexcept {
  return n != 0 && (n & (n - 1)) == 0;
}

// Unitary DFT, X(k) = 1/sqrt(N) sum_n x(n) exp(-j 2 pi n k / N).
// Throws InvalidSize unless x.size() is a power of two.
[[nodiscard]] SpectrumVector dft(const TimeVector& x);

// Adjoint (and inverse) of dft.
[[nodiscard]] TimeVector inverse_dft(const SpectrumVector& X);

// Mirror conjugation X#: X#(0) = X*(0), X#(k) = X*(N - k).
// This is the unique index map with mirror(dft(x)) == dft(conj(x)).
[[nodiscard]] SpectrumVector mirror(const SpectrumVector& X);

// Index of the bin paired with k under mirror().
[[nodiscard]] constexpr std::size_t mirror_index(std::size_t k, std::size_t n) noexcept {
  return k == 0 ? 0 : n - k;
}

template <class Tag>
[[nodiscard]] BasicVector<Tag> conjugate(const BasicVector<Tag>& x) {
  BasicVector<Tag> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = std::conj(x[i]);
  return out;
}

// Elementwise product; throws InvalidSize on length mismatch.
[[nodiscard]] SpectrumVector hadamard(const SpectrumVector& a, const SpectrumVector& b);

[[nodiscard]] double norm2(std::span<const cplx> x) noexcept;
[[nodiscard]] double max_abs_diff(std::span<const cplx> a, std::span<const cplx> b);

}  // namespace iqofdm
