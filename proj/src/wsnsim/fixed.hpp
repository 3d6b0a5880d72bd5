#ifndef WSNSIM_FIXED_HPP
#define WSNSIM_FIXED_HPP

#include <cmath>
#include <compare>
#include <cstdint>

namespace wsnsim {

// All rates (pkt/s) are carried in binary fixed point with 8 fractional
// bits: one unit is 1/256 pkt/s. Sums are exact, so the per-parent rate
// aggregation identity can be asserted with == instead of a tolerance.
class RateFx {
 public:
  static constexpr int kFracBits = 8;
  static constexpr std::int64_t kOne = 1 << kFracBits;

  constexpr RateFx() = default;

  static constexpr RateFx from_units(std::int64_t units) {
    RateFx r;
    r.units_ = units;
    return r;
  }

  static RateFx from_double(double v) {
    return from_units(static_cast<std::int64_t>(std::llround(v * kOne)));
  }

  constexpr std::int64_t units() const { return units_; }
  double to_double() const { return static_cast<double>(units_) / kOne; }

  constexpr bool is_zero() const { return units_ == 0; }

  friend constexpr RateFx operator+(RateFx a, RateFx b) {
    return from_units(a.units_ + b.units_);
  }
  friend constexpr RateFx operator-(RateFx a, RateFx b) {
    return from_units(a.units_ - b.units_);
  }
  RateFx& operator+=(RateFx o) {
    units_ += o.units_;
    return *this;
  }
  friend constexpr auto operator<=>(RateFx, RateFx) = default;

 private:
  std::int64_t units_ = 0;
};

// Multiplicative factors (reduction factor, origination share, ...) use 16
// fractional bits so that factor quantization error stays below the rate
// quantum for rates in the working range.
class FactorQ16 {
 public:
  static constexpr int kFracBits = 16;
  static constexpr std::int64_t kOne = 1 << kFracBits;

  constexpr FactorQ16() = default;

  static FactorQ16 from_double(double v) {
    FactorQ16 f;
    f.raw_ = static_cast<std::int64_t>(std::llround(v * kOne));
    return f;
  }

  constexpr std::int64_t raw() const { return raw_; }
  double to_double() const { return static_cast<double>(raw_) / kOne; }

 private:
  std::int64_t raw_ = 0;
};

// Round-to-nearest product, half away from zero (operands are nonnegative
// everywhere in this codebase).
inline RateFx mul_round(RateFx rate, FactorQ16 factor) {
  const std::int64_t p = rate.units() * factor.raw();
  return RateFx::from_units((p + (FactorQ16::kOne >> 1)) >> FactorQ16::kFracBits);
}

// Ceiling product; used for reduction floors so that the fixed-point floor
// never undershoots the exact real-valued bound.
inline RateFx mul_ceil(RateFx rate, FactorQ16 factor) {
  const std::int64_t p = rate.units() * factor.raw();
  return RateFx::from_units((p + FactorQ16::kOne - 1) >> FactorQ16::kFracBits);
}

// ratio = num / den in rate fixed point (Q.8), round to nearest.
inline RateFx ratio_fx(RateFx num, RateFx den) {
  const std::int64_t n = num.units() << RateFx::kFracBits;
  return RateFx::from_units((n + den.units() / 2) / den.units());
}

}  // namespace wsnsim

#endif  // WSNSIM_FIXED_HPP
