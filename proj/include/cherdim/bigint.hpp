#ifndef CHERDIM_BIGINT_HPP
#define CHERDIM_BIGINT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "cherdim/rat.hpp"

namespace cherdim {

// Arbitrary-precision signed integer, base 2^32 magnitude.  Only the
// operations needed by fraction-free elimination are provided.
class BigInt {
 public:
  BigInt() : neg_(false) {}
  BigInt(int64_t v);

  bool is_zero() const { return limbs_.empty(); }
  bool is_one() const { return !neg_ && limbs_.size() == 1 && limbs_[0] == 1; }
  int sign() const { return limbs_.empty() ? 0 : (neg_ ? -1 : 1); }
  void negate() { if (!limbs_.empty()) neg_ = !neg_; }

  friend BigInt operator+(const BigInt& a, const BigInt& b);
  friend BigInt operator-(const BigInt& a, const BigInt& b);
  friend BigInt operator*(const BigInt& a, const BigInt& b);
  BigInt operator-() const { BigInt r = *this; r.negate(); return r; }

  // Quotient and remainder truncated toward zero.
  static void divrem(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r);
  // Division known to be exact; throws internal_error otherwise.
  friend BigInt div_exact(const BigInt& a, const BigInt& b);
  friend BigInt gcd(BigInt a, BigInt b);

  friend bool operator==(const BigInt& a, const BigInt& b) {
    return a.neg_ == b.neg_ && a.limbs_ == b.limbs_;
  }
  friend bool operator!=(const BigInt& a, const BigInt& b) { return !(a == b); }
  // |a| < |b|
  static int cmp_abs(const BigInt& a, const BigInt& b);
  friend bool operator<(const BigInt& a, const BigInt& b);

  bool fits_int64() const;
  int64_t to_int64() const;  // throws if out of range
  std::string str() const;
  size_t limb_count() const { return limbs_.size(); }

 private:
  void trim() {
    while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
    if (limbs_.empty()) neg_ = false;
  }
  static std::vector<uint32_t> add_mag(const std::vector<uint32_t>& a,
                                       const std::vector<uint32_t>& b);
  // requires |a| >= |b|
  static std::vector<uint32_t> sub_mag(const std::vector<uint32_t>& a,
                                       const std::vector<uint32_t>& b);
  static std::vector<uint32_t> mul_mag(const std::vector<uint32_t>& a,
                                       const std::vector<uint32_t>& b);

  bool neg_;
  std::vector<uint32_t> limbs_;  // little-endian, no trailing zeros
};

// Rational with BigInt numerator/denominator, denominator > 0, reduced.
class BigRat {
 public:
  BigRat() : num_(0), den_(1) {}
  BigRat(int64_t v) : num_(v), den_(1) {}
  BigRat(const Rat& r) : num_(r.num()), den_(r.den()) {}
  BigRat(BigInt n, BigInt d);

  const BigInt& num() const { return num_; }
  const BigInt& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  int sign() const { return num_.sign(); }

  friend BigRat operator+(const BigRat& a, const BigRat& b);
  friend BigRat operator-(const BigRat& a, const BigRat& b);
  friend BigRat operator*(const BigRat& a, const BigRat& b);
  friend BigRat operator/(const BigRat& a, const BigRat& b);
  BigRat operator-() const { BigRat r = *this; r.num_.negate(); return r; }
  BigRat& operator+=(const BigRat& o) { return *this = *this + o; }
  BigRat& operator-=(const BigRat& o) { return *this = *this - o; }
  BigRat& operator*=(const BigRat& o) { return *this = *this * o; }

  friend bool operator==(const BigRat& a, const BigRat& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const BigRat& a, const BigRat& b) { return !(a == b); }
  friend bool operator<(const BigRat& a, const BigRat& b) {
    return a.num_ * b.den_ < b.num_ * a.den_;
  }

  std::string str() const;

 private:
  BigInt num_, den_;
};

}  // namespace cherdim

#endif
