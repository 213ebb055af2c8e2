#include "cherdim/bigint.hpp"

#include <algorithm>

namespace cherdim {

BigInt::BigInt(int64_t v) : neg_(v < 0) {
  uint64_t m = neg_ ? (uint64_t)(-(v + 1)) + 1 : (uint64_t)v;
  if (m) limbs_.push_back((uint32_t)(m & 0xffffffffu));
  if (m >> 32) limbs_.push_back((uint32_t)(m >> 32));
}

std::vector<uint32_t> BigInt::add_mag(const std::vector<uint32_t>& a,
                                      const std::vector<uint32_t>& b) {
  const auto& lo = a.size() >= b.size() ? b : a;
  const auto& hi = a.size() >= b.size() ? a : b;
  std::vector<uint32_t> r(hi.size() + 1, 0);
  uint64_t carry = 0;
  for (size_t i = 0; i < hi.size(); ++i) {
    uint64_t s = carry + hi[i] + (i < lo.size() ? lo[i] : 0u);
    r[i] = (uint32_t)s;
    carry = s >> 32;
  }
  r[hi.size()] = (uint32_t)carry;
  while (!r.empty() && r.back() == 0) r.pop_back();
  return r;
}

std::vector<uint32_t> BigInt::sub_mag(const std::vector<uint32_t>& a,
                                      const std::vector<uint32_t>& b) {
  std::vector<uint32_t> r(a.size(), 0);
  int64_t borrow = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    int64_t s = (int64_t)a[i] - borrow - (i < b.size() ? (int64_t)b[i] : 0);
    if (s < 0) { s += ((int64_t)1 << 32); borrow = 1; } else borrow = 0;
    r[i] = (uint32_t)s;
  }
  while (!r.empty() && r.back() == 0) r.pop_back();
  return r;
}

std::vector<uint32_t> BigInt::mul_mag(const std::vector<uint32_t>& a,
                                      const std::vector<uint32_t>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<uint32_t> r(a.size() + b.size(), 0);
  for (size_t i = 0; i < a.size(); ++i) {
    uint64_t carry = 0;
    uint64_t ai = a[i];
    for (size_t j = 0; j < b.size(); ++j) {
      uint64_t cur = r[i + j] + ai * b[j] + carry;
      r[i + j] = (uint32_t)cur;
      carry = cur >> 32;
    }
    size_t k = i + b.size();
    while (carry) {
      uint64_t cur = r[k] + carry;
      r[k] = (uint32_t)cur;
      carry = cur >> 32;
      ++k;
    }
  }
  while (!r.empty() && r.back() == 0) r.pop_back();
  return r;
}

int BigInt::cmp_abs(const BigInt& a, const BigInt& b) {
  if (a.limbs_.size() != b.limbs_.size())
    return a.limbs_.size() < b.limbs_.size() ? -1 : 1;
  for (size_t i = a.limbs_.size(); i-- > 0;)
    if (a.limbs_[i] != b.limbs_[i]) return a.limbs_[i] < b.limbs_[i] ? -1 : 1;
  return 0;
}

bool operator<(const BigInt& a, const BigInt& b) {
  if (a.neg_ != b.neg_) return a.neg_;
  int c = BigInt::cmp_abs(a, b);
  return a.neg_ ? c > 0 : c < 0;
}

BigInt operator+(const BigInt& a, const BigInt& b) {
  BigInt r;
  if (a.neg_ == b.neg_) {
    r.limbs_ = BigInt::add_mag(a.limbs_, b.limbs_);
    r.neg_ = a.neg_;
  } else {
    int c = BigInt::cmp_abs(a, b);
    if (c == 0) return BigInt();
    if (c > 0) { r.limbs_ = BigInt::sub_mag(a.limbs_, b.limbs_); r.neg_ = a.neg_; }
    else       { r.limbs_ = BigInt::sub_mag(b.limbs_, a.limbs_); r.neg_ = b.neg_; }
  }
  r.trim();
  return r;
}

BigInt operator-(const BigInt& a, const BigInt& b) {
  BigInt nb = b;
  nb.negate();
  return a + nb;
}

BigInt operator*(const BigInt& a, const BigInt& b) {
  BigInt r;
  r.limbs_ = BigInt::mul_mag(a.limbs_, b.limbs_);
  r.neg_ = !r.limbs_.empty() && (a.neg_ != b.neg_);
  return r;
}

// Knuth algorithm D on 32-bit limbs.
void BigInt::divrem(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r) {
  if (b.is_zero()) throw internal_error("BigInt division by zero");
  int c = cmp_abs(a, b);
  if (c < 0) { q = BigInt(); r = a; return; }
  if (b.limbs_.size() == 1) {
    uint64_t d = b.limbs_[0];
    std::vector<uint32_t> ql(a.limbs_.size(), 0);
    uint64_t rem = 0;
    for (size_t i = a.limbs_.size(); i-- > 0;) {
      uint64_t cur = (rem << 32) | a.limbs_[i];
      ql[i] = (uint32_t)(cur / d);
      rem = cur % d;
    }
    q.limbs_ = std::move(ql);
    q.neg_ = a.neg_ != b.neg_;
    q.trim();
    r = BigInt((int64_t)rem);
    if (a.neg_ && !r.is_zero()) r.neg_ = true;
    return;
  }

  // Normalize so the divisor's top limb has its high bit set.
  int shift = 0;
  uint32_t top = b.limbs_.back();
  while (!(top & 0x80000000u)) { top <<= 1; ++shift; }
  auto shl = [&](const std::vector<uint32_t>& v) {
    std::vector<uint32_t> out(v.size() + 1, 0);
    uint32_t carry = 0;
    for (size_t i = 0; i < v.size(); ++i) {
      out[i] = (v[i] << shift) | carry;
      carry = shift ? (uint32_t)((uint64_t)v[i] >> (32 - shift)) : 0;
    }
    out[v.size()] = carry;
    return out;
  };
  std::vector<uint32_t> u = shl(a.limbs_);
  std::vector<uint32_t> v = shl(b.limbs_);
  while (!v.empty() && v.back() == 0) v.pop_back();
  size_t n = v.size(), m = u.size() - n;
  std::vector<uint32_t> ql(m, 0);
  const uint64_t B = 1ull << 32;
  for (size_t j = m; j-- > 0;) {
    uint64_t num = ((uint64_t)u[j + n] << 32) | u[j + n - 1];
    uint64_t qhat = num / v[n - 1];
    uint64_t rhat = num % v[n - 1];
    while (qhat >= B ||
           (n >= 2 && qhat * v[n - 2] > ((rhat << 32) | u[j + n - 2]))) {
      --qhat;
      rhat += v[n - 1];
      if (rhat >= B) break;
    }
    // Multiply-subtract qhat * v from u[j .. j+n].
    int64_t borrow = 0;
    uint64_t carry = 0;
    for (size_t i = 0; i < n; ++i) {
      uint64_t p = qhat * v[i] + carry;
      carry = p >> 32;
      int64_t t = (int64_t)u[i + j] - (int64_t)(uint32_t)p - borrow;
      borrow = t < 0 ? 1 : 0;
      u[i + j] = (uint32_t)(t < 0 ? t + (int64_t)B : t);
    }
    int64_t t = (int64_t)u[j + n] - (int64_t)carry - borrow;
    if (t < 0) {
      // qhat was one too large; add back.
      --qhat;
      uint64_t c2 = 0;
      for (size_t i = 0; i < n; ++i) {
        uint64_t s = (uint64_t)u[i + j] + v[i] + c2;
        u[i + j] = (uint32_t)s;
        c2 = s >> 32;
      }
      t += (int64_t)c2;
    }
    u[j + n] = (uint32_t)t;
    ql[j] = (uint32_t)qhat;
  }
  q.limbs_ = std::move(ql);
  q.neg_ = a.neg_ != b.neg_;
  q.trim();
  // Denormalize remainder.
  std::vector<uint32_t> rl(u.begin(), u.begin() + n);
  if (shift) {
    uint32_t carry = 0;
    for (size_t i = rl.size(); i-- > 0;) {
      uint32_t cur = rl[i];
      rl[i] = (cur >> shift) | carry;
      carry = (uint32_t)((uint64_t)cur << (32 - shift));
    }
  }
  r.limbs_ = std::move(rl);
  r.neg_ = a.neg_;
  r.trim();
}

BigInt div_exact(const BigInt& a, const BigInt& b) {
  BigInt q, r;
  BigInt::divrem(a, b, q, r);
  if (!r.is_zero()) throw internal_error("div_exact: inexact division");
  return q;
}

BigInt gcd(BigInt a, BigInt b) {
  a.neg_ = false;
  b.neg_ = false;
  while (!b.is_zero()) {
    BigInt q, r;
    BigInt::divrem(a, b, q, r);
    a = b;
    r.neg_ = false;
    b = r;
  }
  return a;
}

bool BigInt::fits_int64() const {
  if (limbs_.size() < 2) return true;
  if (limbs_.size() > 2) return false;
  uint64_t m = ((uint64_t)limbs_[1] << 32) | limbs_[0];
  return neg_ ? m <= (uint64_t)INT64_MAX + 1 : m <= (uint64_t)INT64_MAX;
}

int64_t BigInt::to_int64() const {
  if (!fits_int64()) throw internal_error("BigInt::to_int64 overflow");
  uint64_t m = 0;
  if (!limbs_.empty()) m = limbs_[0];
  if (limbs_.size() == 2) m |= (uint64_t)limbs_[1] << 32;
  return neg_ ? -(int64_t)m : (int64_t)m;
}

std::string BigInt::str() const {
  if (is_zero()) return "0";
  BigInt v = *this;
  v.neg_ = false;
  std::string digits;
  BigInt ten(10);
  while (!v.is_zero()) {
    BigInt q, r;
    divrem(v, ten, q, r);
    digits += (char)('0' + (r.is_zero() ? 0 : r.limbs_[0]));
    v = q;
  }
  if (neg_) digits += '-';
  std::reverse(digits.begin(), digits.end());
  return digits;
}

BigRat::BigRat(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) {
  if (den_.is_zero()) throw internal_error("BigRat with zero denominator");
  if (den_.sign() < 0) { num_.negate(); den_.negate(); }
  if (num_.is_zero()) { den_ = BigInt(1); return; }
  BigInt g = gcd(num_, den_);
  if (!g.is_one()) { num_ = div_exact(num_, g); den_ = div_exact(den_, g); }
}

BigRat operator+(const BigRat& a, const BigRat& b) {
  return BigRat(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}
BigRat operator-(const BigRat& a, const BigRat& b) {
  return BigRat(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}
BigRat operator*(const BigRat& a, const BigRat& b) {
  return BigRat(a.num_ * b.num_, a.den_ * b.den_);
}
BigRat operator/(const BigRat& a, const BigRat& b) {
  if (b.is_zero()) throw internal_error("BigRat division by zero");
  return BigRat(a.num_ * b.den_, a.den_ * b.num_);
}

std::string BigRat::str() const {
  if (den_.is_one()) return num_.str();
  return num_.str() + "/" + den_.str();
}

}  // namespace cherdim
