#pragma once

#include <cassert>
#include <cstdint>
#include <iosfwd>
#include <ostream>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "grpd/errors.hpp"

namespace grpd {

inline bool is_prime_u32(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// The `count` smallest primes strictly greater than `n`.
inline std::vector<std::uint32_t> primes_above(std::uint32_t n, int count) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t p = n + 1; static_cast<int>(out.size()) < count; ++p)
    if (is_prime_u32(p)) out.push_back(p);
  return out;
}

/// Prime field scalar with the modulus carried at runtime.
///
/// A default-constructed value, or one built from a bare integer, has modulus
/// 0 and acts as an integer literal: binary operations adopt the modulus of
/// the other operand. Eigen only ever materializes literals 0 and 1, so this
/// keeps Matrix<Fp> usable without a compile-time modulus.
class Fp {
 public:
  Fp() = default;
  Fp(int v) : raw_(v) {}        // NOLINT: implicit literal
  Fp(long v) : raw_(v) {}       // NOLINT
  Fp(long long v) : raw_(v) {}  // NOLINT

  Fp(long long v, std::uint32_t p) : raw_(0), p_(p) {
    if (!is_prime_u32(p)) throw NotPrimeError("modulus " + std::to_string(p) + " is not prime");
    raw_ = norm(v, p);
  }

  std::uint32_t modulus() const { return p_; }
  /// Canonical value in [0, p). Only meaningful once a modulus is attached.
  std::uint32_t value() const {
    assert(p_ != 0);
    return static_cast<std::uint32_t>(norm(raw_, p_));
  }
  long long raw() const { return raw_; }

  bool is_zero() const { return p_ ? value() == 0 : raw_ == 0; }

  Fp& operator+=(const Fp& o) { return apply(o, Op::Add); }
  Fp& operator-=(const Fp& o) { return apply(o, Op::Sub); }
  Fp& operator*=(const Fp& o) { return apply(o, Op::Mul); }
  Fp& operator/=(const Fp& o) { return apply(o, Op::Div); }

  friend Fp operator+(Fp a, const Fp& b) { return a += b; }
  friend Fp operator-(Fp a, const Fp& b) { return a -= b; }
  friend Fp operator*(Fp a, const Fp& b) { return a *= b; }
  friend Fp operator/(Fp a, const Fp& b) { return a /= b; }
  friend Fp operator-(const Fp& a) {
    Fp r;
    r.p_ = a.p_;
    r.raw_ = a.p_ ? norm(-static_cast<long long>(a.value()), a.p_) : -a.raw_;
    return r;
  }

  friend bool operator==(const Fp& a, const Fp& b) {
    std::uint32_t p = a.p_ ? a.p_ : b.p_;
    if (p == 0) return a.raw_ == b.raw_;
    return norm(a.raw_, p) == norm(b.raw_, p);
  }
  friend bool operator!=(const Fp& a, const Fp& b) { return !(a == b); }
  // Order comparisons exist only so generic pivoting code compiles; they
  // compare canonical representatives.
  friend bool operator<(const Fp& a, const Fp& b) {
    std::uint32_t p = a.p_ ? a.p_ : b.p_;
    if (p == 0) return a.raw_ < b.raw_;
    return norm(a.raw_, p) < norm(b.raw_, p);
  }

  Fp inverse() const {
    assert(p_ != 0);
    std::uint32_t v = value();
    if (v == 0) throw Error("division by zero in F_" + std::to_string(p_));
    return Fp(pow_mod(v, p_ - 2, p_), p_);
  }

  friend std::ostream& operator<<(std::ostream& os, const Fp& a) {
    if (a.p_ == 0) return os << a.raw_;
    return os << a.value() << " (mod " << a.p_ << ")";
  }

 private:
  enum class Op { Add, Sub, Mul, Div };

  static long long norm(long long v, std::uint32_t p) {
    long long r = v % static_cast<long long>(p);
    if (r < 0) r += p;
    return r;
  }

  static std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1;
    b %= p;
    while (e) {
      if (e & 1) r = r * b % p;
      b = b * b % p;
      e >>= 1;
    }
    return r;
  }

  Fp& apply(const Fp& o, Op op) {
    std::uint32_t p = p_ ? p_ : o.p_;
    assert(p_ == 0 || o.p_ == 0 || p_ == o.p_);
    if (p == 0) {
      // Literal-on-literal arithmetic (Eigen internals only; stays tiny).
      switch (op) {
        case Op::Add: raw_ += o.raw_; break;
        case Op::Sub: raw_ -= o.raw_; break;
        case Op::Mul: raw_ *= o.raw_; break;
        case Op::Div:
          assert(o.raw_ != 0 && raw_ % o.raw_ == 0);
          raw_ /= o.raw_;
          break;
      }
      return *this;
    }
    long long a = norm(raw_, p);
    long long b = norm(o.raw_, p);
    switch (op) {
      case Op::Add: raw_ = norm(a + b, p); break;
      case Op::Sub: raw_ = norm(a - b, p); break;
      case Op::Mul: raw_ = norm(a * b, p); break;
      case Op::Div: {
        Fp inv = Fp(b, p).inverse();
        raw_ = norm(a * static_cast<long long>(inv.value()), p);
        break;
      }
    }
    p_ = p;
    return *this;
  }

  long long raw_ = 0;
  std::uint32_t p_ = 0;
};

}  // namespace grpd

namespace Eigen {

template <>
struct NumTraits<grpd::Fp> {
  using Real = grpd::Fp;
  using NonInteger = grpd::Fp;
  using Literal = grpd::Fp;
  using Nested = grpd::Fp;

  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 0,
    RequireInitialization = 1,
    ReadCost = 2,
    AddCost = 4,
    MulCost = 6,
  };

  static inline Real epsilon() { return grpd::Fp(0); }
  static inline Real dummy_precision() { return grpd::Fp(0); }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen
