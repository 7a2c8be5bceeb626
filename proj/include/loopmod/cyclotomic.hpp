// Exact arithmetic in cyclotomic fields Q(zeta_N).
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace loopmod {

using Integer = mpz_class;
using Rational = mpq_class;

class OrderMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A required root does not exist in any cyclotomic extension we can reach.
class FieldNotSplit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

long gcd_long(long a, long b);
long lcm_long(long a, long b);
long mod_floor(long a, long m);
int euler_phi(int n);

// Dense polynomial over Q, coefficients from degree 0 upward, trailing zeros trimmed.
class RationalPolynomial {
 public:
  RationalPolynomial() = default;
  explicit RationalPolynomial(std::vector<Rational> coeffs);
  static RationalPolynomial monomial(const Rational& c, std::size_t degree);

  // Degree of the zero polynomial is -1.
  long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<Rational>& coeffs() const { return coeffs_; }
  Rational coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Rational(0); }

  RationalPolynomial operator+(const RationalPolynomial& o) const;
  RationalPolynomial operator-(const RationalPolynomial& o) const;
  RationalPolynomial operator*(const RationalPolynomial& o) const;
  // Euclidean division; throws std::domain_error on a zero divisor.
  std::pair<RationalPolynomial, RationalPolynomial> divmod(const RationalPolynomial& d) const;
  bool operator==(const RationalPolynomial& o) const { return coeffs_ == o.coeffs_; }

  std::string to_string() const;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

// Phi_N by exact division of x^N - 1 by the cyclotomic factors of proper divisors.
const RationalPolynomial& cyclotomic_polynomial(int n);

// An element of Q/Z, read as the root of unity exp(2 pi i num/den).
class Phase {
 public:
  Phase() = default;
  Phase(long num, long den);

  long num() const { return num_; }
  long den() const { return den_; }
  // Multiplicative order of the root of unity.
  long order() const { return den_; }
  bool is_one() const { return num_ == 0; }

  Phase operator+(const Phase& o) const;  // product of roots of unity
  Phase operator-(const Phase& o) const;
  Phase operator-() const;
  Phase scaled(long k) const;  // k-th power
  auto operator<=>(const Phase&) const = default;

 private:
  long num_ = 0;
  long den_ = 1;
};

// Element of Q(zeta_N) in canonical form: power-basis coordinates modulo Phi_N,
// stored as integer numerators over one positive common denominator.
class Cyc {
 public:
  Cyc() = default;
  Cyc(long v);  // NOLINT(google-explicit-constructor)
  Cyc(const Rational& q);  // NOLINT(google-explicit-constructor)

  // zeta_N^power.
  static Cyc zeta(int n, long power);
  // A primitive k-th root of unity in Q(zeta_N); k must divide N.
  static Cyc root_of_unity(int k, int n);
  static Cyc from_phase(const Phase& p);
  // Coordinates in the power basis of Q(zeta_N); missing entries are zero.
  static Cyc from_coeffs(int n, const std::vector<Rational>& coeffs);
  static Cyc parse(std::string_view text, int n);

  int order() const { return order_; }
  bool is_zero() const { return num_.empty(); }
  bool is_one() const { return num_.size() == 1 && num_[0] == 1 && den_ == 1; }
  bool is_rational() const { return num_.size() <= 1; }
  Rational rational_value() const;  // requires is_rational()
  Rational coeff(std::size_t i) const;
  std::size_t term_count() const;

  // Same value viewed in Q(zeta_M); N must divide M.
  Cyc lifted(int m) const;
  // The value as an element of Q(zeta_M) for M | N, if it lies in that subfield.
  std::optional<Cyc> lowered(int m) const;
  // Smallest order M | N with the value in Q(zeta_M).
  int conductor_order() const;

  Cyc inverse() const;
  Cyc operator-() const;
  Cyc& operator+=(const Cyc& o);
  Cyc& operator-=(const Cyc& o);
  Cyc& operator*=(const Cyc& o);
  friend Cyc operator+(Cyc a, const Cyc& b) { return a += b; }
  friend Cyc operator-(Cyc a, const Cyc& b) { return a -= b; }
  friend Cyc operator*(const Cyc& a, const Cyc& b);
  friend Cyc operator/(const Cyc& a, const Cyc& b) { return a * b.inverse(); }
  friend bool operator==(const Cyc& a, const Cyc& b);

  std::optional<Phase> as_root_of_unity() const;
  // Writes the value as q * zeta with q > 0 rational and zeta a root of unity.
  std::optional<std::pair<Rational, Phase>> as_rational_times_root() const;
  // Some k-th root of the value; the result may live in a larger cyclotomic field.
  // Throws FieldNotSplit unless the value is a root of unity times a rational with a rational k-th root.
  Cyc kth_root(long k) const;

  std::string to_string() const;

 private:
  Cyc(int order, std::vector<Integer> num, Integer den);
  void normalize();
  void add_scaled(const Cyc& o, int sign);

  int order_ = 1;
  std::vector<Integer> num_;
  Integer den_ = 1;
};

std::ostream& operator<<(std::ostream& os, const Cyc& c);

// Exact rational k-th root, if any.
std::optional<Rational> rational_root(const Rational& q, long k);

}  // namespace loopmod
