#include "homlevel/scalar.hpp"

#include "homlevel/common.hpp"

namespace homlevel {

namespace {

std::int64_t mod_inverse(std::int64_t a, std::int64_t p) {
  std::int64_t t = 0, new_t = 1, r = p, new_r = a;
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    std::int64_t tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (r != 1) throw Error("element is not invertible modulo " + std::to_string(p));
  return t < 0 ? t + p : t;
}

std::int64_t reduce(std::int64_t v, std::uint32_t p) {
  std::int64_t r = v % static_cast<std::int64_t>(p);
  return r < 0 ? r + p : r;
}

std::int64_t reduce_mpq(const mpq_class& q, std::uint32_t p) {
  mpz_class num = q.get_num() % p;
  mpz_class den = q.get_den() % p;
  if (num < 0) num += p;
  if (den == 0) throw Error("rational denominator vanishes modulo " + std::to_string(p));
  std::int64_t n = num.get_si();
  std::int64_t d = den.get_si();
  return (n * mod_inverse(d, p)) % p;
}

enum class Common { Loose, Modular, Rational };

Common common_kind(const Scalar& a, const Scalar& b, std::uint32_t& p) {
  if (a.is_modular() || b.is_modular()) {
    std::uint32_t pa = a.characteristic(), pb = b.characteristic();
    if (pa != 0 && pb != 0 && pa != pb) throw Error("mixing scalars of different characteristic");
    p = pa != 0 ? pa : pb;
    if (a.is_rational() || b.is_rational()) {
      throw Error("mixing modular and rational scalars");
    }
    return Common::Modular;
  }
  if (a.is_rational() || b.is_rational()) return Common::Rational;
  return Common::Loose;
}

std::int64_t as_residue(const Scalar& s, std::uint32_t p) {
  return s.is_modular() ? s.residue() : reduce(s.residue(), p);
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

Scalar Scalar::modular(std::uint32_t p, std::int64_t v) {
  Scalar s;
  s.kind_ = Kind::Modular;
  s.p_ = p;
  s.v_ = reduce(v, p);
  return s;
}

Scalar Scalar::rational(const mpq_class& q) {
  Scalar s;
  s.kind_ = Kind::Rational;
  mpq_class c = q;
  c.canonicalize();
  s.q_ = std::make_shared<const mpq_class>(std::move(c));
  return s;
}

mpq_class Scalar::to_mpq() const {
  switch (kind_) {
    case Kind::Rational:
      return *q_;
    case Kind::Modular:
    case Kind::Loose:
      break;
  }
  return mpq_class(static_cast<long>(v_));
}

bool Scalar::is_zero() const {
  if (kind_ == Kind::Rational) return sgn(*q_) == 0;
  return v_ == 0;
}

bool Scalar::is_one() const {
  if (kind_ == Kind::Rational) return *q_ == 1;
  return v_ == 1;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw Error("division by zero");
  switch (kind_) {
    case Kind::Modular:
      return modular(p_, mod_inverse(v_, p_));
    case Kind::Rational:
      return rational(1 / *q_);
    case Kind::Loose:
      break;
  }
  return rational(mpq_class(1, 1) / mpq_class(static_cast<long>(v_)));
}

std::string Scalar::str() const {
  if (kind_ == Kind::Rational) return q_->get_str();
  return std::to_string(v_);
}

Scalar operator+(const Scalar& a, const Scalar& b) {
  std::uint32_t p = 0;
  switch (common_kind(a, b, p)) {
    case Common::Modular:
      return Scalar::modular(p, as_residue(a, p) + as_residue(b, p));
    case Common::Rational:
      return Scalar::rational(a.to_mpq() + b.to_mpq());
    case Common::Loose:
      break;
  }
  std::int64_t r;
  if (__builtin_add_overflow(a.v_, b.v_, &r)) return Scalar::rational(a.to_mpq() + b.to_mpq());
  return Scalar(static_cast<long long>(r));
}

Scalar operator-(const Scalar& a) {
  switch (a.kind_) {
    case Scalar::Kind::Modular:
      return Scalar::modular(a.p_, a.p_ - a.v_);
    case Scalar::Kind::Rational:
      return Scalar::rational(-*a.q_);
    case Scalar::Kind::Loose:
      break;
  }
  return Scalar(static_cast<long long>(-a.v_));
}

Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }

Scalar operator*(const Scalar& a, const Scalar& b) {
  std::uint32_t p = 0;
  switch (common_kind(a, b, p)) {
    case Common::Modular:
      return Scalar::modular(p, (as_residue(a, p) * as_residue(b, p)) % p);
    case Common::Rational:
      return Scalar::rational(a.to_mpq() * b.to_mpq());
    case Common::Loose:
      break;
  }
  std::int64_t r;
  if (__builtin_mul_overflow(a.v_, b.v_, &r)) return Scalar::rational(a.to_mpq() * b.to_mpq());
  return Scalar(static_cast<long long>(r));
}

Scalar operator/(const Scalar& a, const Scalar& b) {
  std::uint32_t p = 0;
  if (common_kind(a, b, p) == Common::Modular) {
    std::int64_t bb = as_residue(b, p);
    if (bb == 0) throw Error("division by zero");
    return Scalar::modular(p, (as_residue(a, p) * mod_inverse(bb, p)) % p);
  }
  if (b.is_zero()) throw Error("division by zero");
  return Scalar::rational(a.to_mpq() / b.to_mpq());
}

bool operator==(const Scalar& a, const Scalar& b) {
  std::uint32_t p = 0;
  switch (common_kind(a, b, p)) {
    case Common::Modular:
      return as_residue(a, p) == as_residue(b, p);
    case Common::Rational:
      return a.to_mpq() == b.to_mpq();
    case Common::Loose:
      break;
  }
  return a.v_ == b.v_;
}

Field Field::prime(std::uint32_t p) {
  if (!is_prime(p) || p >= (1u << 31)) {
    throw Error("field characteristic must be a prime below 2^31, got " + std::to_string(p));
  }
  Field f;
  f.p_ = p;
  return f;
}

std::string Field::name() const { return p_ == 0 ? "Q" : "F" + std::to_string(p_); }

Scalar Field::from_int(long long v) const {
  if (p_ != 0) return Scalar::modular(p_, reduce(v, p_));
  return Scalar::rational(mpq_class(static_cast<long>(v)));
}

Scalar Field::fraction(long long num, long long den) const {
  return from_int(num) / from_int(den);
}

Scalar Field::from_mpq(const mpq_class& q) const {
  if (p_ != 0) return Scalar::modular(p_, reduce_mpq(q, p_));
  return Scalar::rational(q);
}

Scalar Field::bind(const Scalar& s) const {
  if (s.is_loose()) return from_int(s.residue());
  if (p_ != 0 && s.characteristic() != p_) {
    if (s.is_rational()) return from_mpq(*s.q_);
    throw Error("scalar does not belong to " + name());
  }
  if (p_ == 0 && s.is_modular()) throw Error("scalar does not belong to Q");
  return s;
}

Scalar Field::random(std::mt19937_64& rng) const {
  if (p_ != 0) {
    std::uniform_int_distribution<std::int64_t> d(0, static_cast<std::int64_t>(p_) - 1);
    return Scalar::modular(p_, d(rng));
  }
  std::uniform_int_distribution<int> d(-9, 9);
  return from_int(d(rng));
}

}  // namespace homlevel
