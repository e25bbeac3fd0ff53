#pragma once

// Exact arithmetic in Z[i] and Q(i) on top of GMP integers.

#include <complex>
#include <cstddef>
#include <string>

#include <gmpxx.h>

namespace bdyn {

struct GaussianInteger {
  mpz_class re;
  mpz_class im;

  GaussianInteger() = default;
  GaussianInteger(long r) : re(r), im(0) {}
  GaussianInteger(mpz_class r, mpz_class i) : re(std::move(r)), im(std::move(i)) {}

  static GaussianInteger unit_i() { return {0, 1}; }

  bool is_zero() const { return re == 0 && im == 0; }
  bool is_unit() const { return norm() == 1; }
  mpz_class norm() const { return re * re + im * im; }
  GaussianInteger conj() const { return {re, -im}; }
  std::size_t bits() const;

  GaussianInteger& operator+=(const GaussianInteger& o);
  GaussianInteger& operator-=(const GaussianInteger& o);
  GaussianInteger& operator*=(const GaussianInteger& o);
};

GaussianInteger operator+(GaussianInteger a, const GaussianInteger& b);
GaussianInteger operator-(GaussianInteger a, const GaussianInteger& b);
GaussianInteger operator-(const GaussianInteger& a);
GaussianInteger operator*(const GaussianInteger& a, const GaussianInteger& b);
bool operator==(const GaussianInteger& a, const GaussianInteger& b);

/// Nearest-integer quotient; a = q b + r with Norm(r) <= Norm(b)/2.
GaussianInteger div_round(const GaussianInteger& a, const GaussianInteger& b);
GaussianInteger remainder(const GaussianInteger& a, const GaussianInteger& b);
/// Exact quotient; b must divide a.
GaussianInteger div_exact(const GaussianInteger& a, const GaussianInteger& b);
/// Euclidean gcd, returned as its canonical associate.
GaussianInteger gcd(GaussianInteger a, GaussianInteger b);
/// Associate with argument in [0, pi/2): re > 0, im >= 0 (zero stays zero).
GaussianInteger canonical_associate(const GaussianInteger& a);
/// The unit u with u * a canonical.
GaussianInteger normalizing_unit(const GaussianInteger& a);

std::string to_string(const GaussianInteger& a);

/// num / den in lowest terms with a canonical denominator.  The point at
/// infinity of P^1 is num = 1, den = 0.
class GaussianRational {
 public:
  GaussianRational() : num_(0), den_(1) {}
  GaussianRational(long v) : num_(v), den_(1) {}
  GaussianRational(const mpq_class& re, const mpq_class& im);
  /// Reduces by the Euclidean gcd.  (0, 0) is rejected.
  GaussianRational(GaussianInteger num, GaussianInteger den);

  /// Skips the gcd when the caller knows num and den are coprime.
  static GaussianRational from_coprime(GaussianInteger num, GaussianInteger den);
  static GaussianRational infinity() { return from_coprime(1, 0); }
  /// Exact value of a double pair (every double is a dyadic rational).
  static GaussianRational from_double(double re, double im);
  /// "a/b+c/d*i", "i/2", "3/5", "1/2*i", "-i", "inf".
  static GaussianRational parse(const std::string& text);

  const GaussianInteger& num() const { return num_; }
  const GaussianInteger& den() const { return den_; }
  bool is_infinite() const { return den_.is_zero(); }
  bool is_zero() const { return num_.is_zero(); }

  mpq_class real() const;
  mpq_class imag() const;
  /// |x|^2 as an exact rational (finite points only).
  mpq_class abs2() const;
  GaussianRational conj() const;
  std::complex<double> to_complex() const;
  /// Max bit length over the four integer components.
  std::size_t bits() const;
  std::size_t hash() const;

  std::string to_string() const;

 private:
  void canonicalize();
  GaussianInteger num_;
  GaussianInteger den_;
};

GaussianRational operator+(const GaussianRational& a, const GaussianRational& b);
GaussianRational operator-(const GaussianRational& a, const GaussianRational& b);
GaussianRational operator-(const GaussianRational& a);
GaussianRational operator*(const GaussianRational& a, const GaussianRational& b);
GaussianRational operator/(const GaussianRational& a, const GaussianRational& b);
bool operator==(const GaussianRational& a, const GaussianRational& b);

/// Weil height on Q(i): 1/2 log max(Norm(num), Norm(den)).
double naive_height(const GaussianRational& x);

}  // namespace bdyn
