#ifndef CUSHEAF_EXTNAT_HPP
#define CUSHEAF_EXTNAT_HPP

#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace cusheaf {

/// An element of the extended naturals N ∪ {∞}.
class ExtNat {
 public:
  constexpr ExtNat() = default;
  constexpr ExtNat(std::uint64_t n) : value_(n) {}  // NOLINT(implicit)

  static constexpr ExtNat inf() {
    ExtNat x;
    x.inf_ = true;
    return x;
  }

  constexpr bool is_inf() const { return inf_; }
  constexpr bool is_finite() const { return !inf_; }
  /// Finite value; 0 for ∞ (callers check is_inf first).
  constexpr std::uint64_t value() const { return inf_ ? 0 : value_; }

  friend constexpr bool operator==(const ExtNat& a, const ExtNat& b) {
    return a.inf_ == b.inf_ && (a.inf_ || a.value_ == b.value_);
  }
  friend constexpr std::strong_ordering operator<=>(const ExtNat& a, const ExtNat& b) {
    if (a.inf_ || b.inf_) return a.inf_ <=> b.inf_;
    return a.value_ <=> b.value_;
  }

  friend constexpr ExtNat operator+(const ExtNat& a, const ExtNat& b) {
    if (a.inf_ || b.inf_) return inf();
    return ExtNat(a.value_ + b.value_);
  }
  ExtNat& operator+=(const ExtNat& b) { return *this = *this + b; }

  /// Product with 0·∞ = 0, the convention of the module action.
  friend constexpr ExtNat operator*(const ExtNat& a, const ExtNat& b) {
    if ((a.is_finite() && a.value_ == 0) || (b.is_finite() && b.value_ == 0)) return ExtNat(0);
    if (a.inf_ || b.inf_) return inf();
    return ExtNat(a.value_ * b.value_);
  }

  std::string str() const { return inf_ ? "inf" : std::to_string(value_); }

 private:
  std::uint64_t value_ = 0;
  bool inf_ = false;
};

inline std::ostream& operator<<(std::ostream& os, const ExtNat& x) { return os << x.str(); }

inline constexpr ExtNat kInf = ExtNat::inf();

struct ExtNatComparison {
  bool leq;
  bool waybelow;
};

inline ExtNat extnat_add(ExtNat a, ExtNat b) { return a + b; }

/// a ≪ b in N̄ holds exactly when a is finite and a ≤ b.
inline ExtNatComparison extnat_compare(ExtNat a, ExtNat b) {
  return {a <= b, a.is_finite() && a <= b};
}

inline ExtNat min(ExtNat a, ExtNat b) { return a <= b ? a : b; }
inline ExtNat max(ExtNat a, ExtNat b) { return a <= b ? b : a; }

/// Fiber value at an exceptional point: a vector in N̄^k.
using Tuple = std::vector<ExtNat>;

bool tuple_leq(const Tuple& a, const Tuple& b);
bool tuple_waybelow(const Tuple& a, const Tuple& b);
Tuple tuple_add(const Tuple& a, const Tuple& b);
std::string tuple_str(const Tuple& t);

}  // namespace cusheaf

#endif
