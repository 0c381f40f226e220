#pragma once

/**
 * Exact field elements.
 *
 * A Scalar is either a residue modulo a prime p < 2^31, an arbitrary-precision
 * rational, or a "loose" integer constant. Loose values are what Eigen produces
 * when it writes literal 0s and 1s (Matrix::Zero, Identity, product
 * accumulators); they take on the field of the first bound value they meet.
 * Code that builds matrices for a specific field goes through Field so entries
 * are bound from the start.
 */

#include <gmpxx.h>

#include <Eigen/Core>
#include <cstdint>
#include <memory>
#include <random>
#include <string>

namespace homlevel {

class Scalar {
 public:
  Scalar() = default;
  Scalar(int v) : v_(v) {}  // NOLINT: Eigen needs the implicit conversion
  Scalar(long v) : v_(v) {}  // NOLINT
  Scalar(long long v) : v_(v) {}  // NOLINT

  static Scalar modular(std::uint32_t p, std::int64_t v);
  static Scalar rational(const mpq_class& q);

  bool is_zero() const;
  bool is_one() const;
  bool is_loose() const { return kind_ == Kind::Loose; }
  bool is_modular() const { return kind_ == Kind::Modular; }
  bool is_rational() const { return kind_ == Kind::Rational; }
  /// Characteristic of a bound value (0 for rationals and loose constants).
  std::uint32_t characteristic() const { return kind_ == Kind::Modular ? p_ : 0; }
  /// Residue in [0, p) of a modular value, or the integer of a loose value.
  std::int64_t residue() const { return v_; }
  mpq_class to_mpq() const;

  Scalar inverse() const;
  std::string str() const;

  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator/(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a);
  friend bool operator==(const Scalar& a, const Scalar& b);
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  Scalar& operator/=(const Scalar& o) { return *this = *this / o; }

 private:
  enum class Kind : std::uint8_t { Loose, Modular, Rational };
  friend class Field;

  Kind kind_ = Kind::Loose;
  std::uint32_t p_ = 0;
  std::int64_t v_ = 0;
  std::shared_ptr<const mpq_class> q_;
};

/// The ground field k: F_p or Q.
class Field {
 public:
  Field() = default;  // Q
  static Field prime(std::uint32_t p);
  static Field rationals() { return Field(); }

  std::uint32_t characteristic() const { return p_; }
  bool is_rational() const { return p_ == 0; }
  std::string name() const;

  Scalar zero() const { return from_int(0); }
  Scalar one() const { return from_int(1); }
  Scalar from_int(long long v) const;
  Scalar fraction(long long num, long long den) const;
  Scalar from_mpq(const mpq_class& q) const;
  /// Binds a loose value to this field; bound values must already belong to it.
  Scalar bind(const Scalar& s) const;
  /// Uniform over F_p; small integers in [-9, 9] over Q.
  Scalar random(std::mt19937_64& rng) const;

  bool operator==(const Field& o) const { return p_ == o.p_; }
  bool operator!=(const Field& o) const { return p_ != o.p_; }

 private:
  std::uint32_t p_ = 0;
};

bool is_prime(std::uint64_t n);

}  // namespace homlevel

namespace Eigen {
template <>
struct NumTraits<homlevel::Scalar> : GenericNumTraits<homlevel::Scalar> {
  using Real = homlevel::Scalar;
  using NonInteger = homlevel::Scalar;
  using Literal = homlevel::Scalar;
  using Nested = homlevel::Scalar;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 4,
    MulCost = 4
  };
  static Real epsilon() { return Real(0); }
  static Real dummy_precision() { return Real(0); }
  static int digits10() { return 0; }
};
}  // namespace Eigen
