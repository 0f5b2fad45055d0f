#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <iosfwd>
#include <sstream>
#include <string>
#include <utility>

#include <Eigen/Core>

namespace grpd {

using Integer = boost::multiprecision::cpp_int;

/// Arbitrary-precision rational scalar.
///
/// Thin value wrapper around boost::multiprecision::cpp_rational with a closed
/// operator set, so that Eigen expression templates resolve against this type
/// only (boost's own expression-template constructors are too greedy to live
/// inside Eigen matrices directly). Always in lowest terms with positive
/// denominator; that is the backend's canonical form and every operation
/// preserves it.
class Rational {
 public:
  using Backend = boost::multiprecision::cpp_rational;

  Rational() = default;
  Rational(int n) : v_(n) {}                 // NOLINT: implicit by design
  Rational(long n) : v_(n) {}                // NOLINT
  Rational(long long n) : v_(n) {}           // NOLINT
  Rational(const Integer& n) : v_(n) {}      // NOLINT
  Rational(const Integer& n, const Integer& d) : v_(n, d) {}
  explicit Rational(Backend v) : v_(std::move(v)) {}

  Integer num() const { return boost::multiprecision::numerator(v_); }
  Integer den() const { return boost::multiprecision::denominator(v_); }

  bool is_zero() const { return v_.is_zero(); }
  bool is_one() const { return v_ == 1; }
  bool is_integer() const { return den() == 1; }
  int sign() const { return v_.sign(); }

  /// Total bit size of numerator and denominator; the pivoting heuristic in
  /// the elimination routines minimizes this.
  std::size_t bit_size() const {
    Integer n = boost::multiprecision::abs(num());
    Integer d = den();
    std::size_t bits = 0;
    if (!n.is_zero()) bits += boost::multiprecision::msb(n) + 1;
    if (d != 1) bits += boost::multiprecision::msb(d) + 1;
    return bits;
  }

  std::string str() const {
    std::ostringstream os;
    os << v_;
    return os.str();
  }

  const Backend& backend() const { return v_; }

  Rational& operator+=(const Rational& o) {
    v_ += o.v_;
    return *this;
  }
  Rational& operator-=(const Rational& o) {
    v_ -= o.v_;
    return *this;
  }
  Rational& operator*=(const Rational& o) {
    v_ *= o.v_;
    return *this;
  }
  Rational& operator/=(const Rational& o) {
    v_ /= o.v_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(-a.v_); }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.v_ == b.v_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) {
    return a.v_ != b.v_;
  }
  friend bool operator<(const Rational& a, const Rational& b) {
    return a.v_ < b.v_;
  }
  friend bool operator<=(const Rational& a, const Rational& b) {
    return a.v_ <= b.v_;
  }
  friend bool operator>(const Rational& a, const Rational& b) {
    return a.v_ > b.v_;
  }
  friend bool operator>=(const Rational& a, const Rational& b) {
    return a.v_ >= b.v_;
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.v_;
  }

 private:
  Backend v_;
};

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

}  // namespace grpd

namespace Eigen {

template <>
struct NumTraits<grpd::Rational> {
  using Real = grpd::Rational;
  using NonInteger = grpd::Rational;
  using Literal = grpd::Rational;
  using Nested = grpd::Rational;

  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 8,
    AddCost = 40,
    MulCost = 40,
  };

  static inline Real epsilon() { return grpd::Rational(0); }
  static inline Real dummy_precision() { return grpd::Rational(0); }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen
