#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace logred {

/// Discrete valuation value: a finite integer or the infinity sentinel
/// attached to zero.
class Valuation {
 public:
  static Valuation infinity() { return Valuation(true, 0); }
  static Valuation finite(std::int64_t v) { return Valuation(false, v); }

  bool is_infinite() const { return infinite_; }
  bool is_finite() const { return !infinite_; }
  /// Only meaningful when finite.
  std::int64_t value() const { return value_; }

  friend Valuation operator+(Valuation a, Valuation b) {
    if (a.infinite_ || b.infinite_) return infinity();
    return finite(a.value_ + b.value_);
  }

  friend bool operator==(Valuation a, Valuation b) {
    return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
  }

  friend std::strong_ordering operator<=>(Valuation a, Valuation b) {
    if (a.infinite_ || b.infinite_) {
      return static_cast<int>(a.infinite_) <=> static_cast<int>(b.infinite_);
    }
    return a.value_ <=> b.value_;
  }

  friend bool operator==(Valuation a, std::int64_t b) {
    return a.is_finite() && a.value_ == b;
  }
  friend std::strong_ordering operator<=>(Valuation a, std::int64_t b) {
    return a <=> finite(b);
  }

  std::string str() const {
    return infinite_ ? std::string("inf") : std::to_string(value_);
  }

 private:
  Valuation(bool inf, std::int64_t v) : infinite_(inf), value_(v) {}

  bool infinite_;
  std::int64_t value_;
};

}  // namespace logred
