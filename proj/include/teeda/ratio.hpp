#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace teeda {

/// Exact non-negative rational, always stored in lowest terms.
class Ratio {
 public:
  constexpr Ratio() = default;
  constexpr Ratio(std::uint64_t num, std::uint64_t den) : num_(num), den_(den) {
    if (den_ == 0) throw std::domain_error("Ratio with zero denominator");
    const auto g = std::gcd(num_, den_);
    num_ /= g;
    den_ /= g;
  }

  constexpr std::uint64_t num() const noexcept { return num_; }
  constexpr std::uint64_t den() const noexcept { return den_; }
  constexpr double value() const noexcept {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }
  constexpr bool is_one() const noexcept { return num_ == den_; }
  constexpr bool is_zero() const noexcept { return num_ == 0; }

  friend constexpr bool operator==(const Ratio& a, const Ratio& b) noexcept {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend constexpr std::strong_ordering operator<=>(const Ratio& a,
                                                    const Ratio& b) noexcept {
    // Values stay well below 2^32 at corpus scale, so the products fit.
    return a.num_ * b.den_ <=> b.num_ * a.den_;
  }

  /// Fixed-point rendering with round-half-up, computed on the exact value.
  std::string fixed(int decimals) const {
    std::uint64_t scale = 1;
    for (int i = 0; i < decimals; ++i) scale *= 10;
    const std::uint64_t scaled = (num_ * scale * 2 + den_) / (den_ * 2);
    std::string whole = std::to_string(scaled / scale);
    if (decimals == 0) return whole;
    std::string frac = std::to_string(scaled % scale);
    frac.insert(0, static_cast<std::size_t>(decimals) - frac.size(), '0');
    return whole + "." + frac;
  }

  std::string str() const {
    return den_ == 1 ? std::to_string(num_)
                     : std::to_string(num_) + "/" + std::to_string(den_);
  }

 private:
  std::uint64_t num_ = 0;
  std::uint64_t den_ = 1;
};

}  // namespace teeda
