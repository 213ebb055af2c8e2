#ifndef CHERDIM_RAT_HPP
#define CHERDIM_RAT_HPP

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>
#include <functional>

namespace cherdim {

// Thrown when an internal consistency check fails (CLI exit code 4).
struct internal_error : std::logic_error {
  using std::logic_error::logic_error;
};

// Thrown on invalid user input (CLI exit code 2).
struct invalid_input : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown when a computation exceeds the configured budget (CLI exit code 3).
struct infeasible_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {
inline int64_t checked_cast(__int128 v, const char* ctx) {
  if (v > INT64_MAX || v < INT64_MIN)
    throw internal_error(std::string("int64 overflow in ") + ctx);
  return static_cast<int64_t>(v);
}
}  // namespace detail

// Exact rational on 64-bit words, overflow-checked through 128-bit
// intermediates.  Used for all apartment geometry, where values stay tiny;
// the linear-algebra kernel uses arbitrary precision instead.
class Rat {
 public:
  Rat() : num_(0), den_(1) {}
  Rat(int64_t n) : num_(n), den_(1) {}
  Rat(int64_t n, int64_t d) : num_(n), den_(d) { normalize(); }

  int64_t num() const { return num_; }
  int64_t den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return den_ == 1; }
  int sign() const { return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0); }

  friend Rat operator+(const Rat& a, const Rat& b) {
    __int128 n = (__int128)a.num_ * b.den_ + (__int128)b.num_ * a.den_;
    __int128 d = (__int128)a.den_ * b.den_;
    return make(n, d);
  }
  friend Rat operator-(const Rat& a, const Rat& b) {
    __int128 n = (__int128)a.num_ * b.den_ - (__int128)b.num_ * a.den_;
    __int128 d = (__int128)a.den_ * b.den_;
    return make(n, d);
  }
  friend Rat operator*(const Rat& a, const Rat& b) {
    return make((__int128)a.num_ * b.num_, (__int128)a.den_ * b.den_);
  }
  friend Rat operator/(const Rat& a, const Rat& b) {
    if (b.num_ == 0) throw internal_error("Rat division by zero");
    return make((__int128)a.num_ * b.den_, (__int128)a.den_ * b.num_);
  }
  Rat operator-() const { return Rat(-num_, den_); }
  Rat& operator+=(const Rat& o) { return *this = *this + o; }
  Rat& operator-=(const Rat& o) { return *this = *this - o; }
  Rat& operator*=(const Rat& o) { return *this = *this * o; }
  Rat& operator/=(const Rat& o) { return *this = *this / o; }

  friend bool operator==(const Rat& a, const Rat& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
  friend bool operator<(const Rat& a, const Rat& b) {
    return (__int128)a.num_ * b.den_ < (__int128)b.num_ * a.den_;
  }
  friend bool operator>(const Rat& a, const Rat& b) { return b < a; }
  friend bool operator<=(const Rat& a, const Rat& b) { return !(b < a); }
  friend bool operator>=(const Rat& a, const Rat& b) { return !(a < b); }

  // floor(num/den)
  int64_t floor() const {
    int64_t q = num_ / den_;
    if (num_ % den_ != 0 && num_ < 0) --q;
    return q;
  }

  int64_t as_integer(const char* ctx = "Rat::as_integer") const {
    if (den_ != 1) throw internal_error(std::string(ctx) + ": value is not integral");
    return num_;
  }

  std::string str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  size_t hash() const {
    uint64_t h = 1469598103934665603ull;
    auto mix = [&h](uint64_t v) {
      h ^= v;
      h *= 1099511628211ull;
    };
    mix((uint64_t)num_);
    mix((uint64_t)den_);
    return (size_t)h;
  }

 private:
  static Rat make(__int128 n, __int128 d) {
    if (d == 0) throw internal_error("Rat with zero denominator");
    if (d < 0) { n = -n; d = -d; }
    __int128 a = n < 0 ? -n : n, b = d;
    while (b) { __int128 t = a % b; a = b; b = t; }
    if (a > 1) { n /= a; d /= a; }
    Rat r;
    r.num_ = detail::checked_cast(n, "Rat");
    r.den_ = detail::checked_cast(d, "Rat");
    return r;
  }
  void normalize() { *this = make(num_, den_); }

  int64_t num_, den_;
};

using RatVec = std::vector<Rat>;

inline Rat dot_iv(const std::vector<int>& a, const RatVec& b) {
  Rat s;
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0) s += Rat(a[i]) * b[i];
  return s;
}

inline size_t hash_ratvec(const RatVec& v) {
  uint64_t h = 14695981039346656037ull;
  for (const Rat& r : v) {
    h ^= r.hash();
    h *= 1099511628211ull;
  }
  return (size_t)h;
}

inline int64_t gcd64(int64_t a, int64_t b) { return std::gcd(a, b); }
inline int64_t lcm64(int64_t a, int64_t b) {
  return detail::checked_cast((__int128)(a / std::gcd(a, b)) * b, "lcm64");
}

}  // namespace cherdim

#endif
