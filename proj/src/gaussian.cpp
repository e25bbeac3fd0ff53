#include "bdyn/gaussian.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <functional>
#include <string_view>

#include "bdyn/errors.hpp"

namespace bdyn {

namespace {

std::size_t bit_length(const mpz_class& z) { return z == 0 ? 0 : mpz_sizeinbase(z.get_mpz_t(), 2); }

// floor((2x + n) / 2n), the integer nearest to x / n for n > 0
mpz_class round_div(const mpz_class& x, const mpz_class& n) {
  mpz_class q;
  mpz_class twice = 2 * x + n;
  mpz_class denom = 2 * n;
  mpz_fdiv_q(q.get_mpz_t(), twice.get_mpz_t(), denom.get_mpz_t());
  return q;
}

double log_of(const mpz_class& z) {
  long exp = 0;
  const double mant = mpz_get_d_2exp(&exp, z.get_mpz_t());
  return std::log(mant) + static_cast<double>(exp) * std::log(2.0);
}

std::size_t hash_mpz(const mpz_class& z, std::size_t seed) {
  const std::size_t limbs = mpz_size(z.get_mpz_t());
  const std::string_view bytes(reinterpret_cast<const char*>(mpz_limbs_read(z.get_mpz_t())), limbs * sizeof(mp_limb_t));
  const std::size_t h = std::hash<std::string_view>{}(bytes) ^ static_cast<std::size_t>(mpz_sgn(z.get_mpz_t()) + 1);
  return seed ^ (h + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

std::string format_rational(const mpq_class& q) {
  return q.get_den() == 1 ? q.get_num().get_str() : q.get_num().get_str() + "/" + q.get_den().get_str();
}

mpq_class parse_magnitude(const std::string& body, const std::string& text) {
  // body is "", "N", "/M" or "N/M" after removing i and *
  std::string s = body;
  if (s.empty()) return 1;
  if (s.front() == '/') s.insert(s.begin(), '1');
  const auto slash = s.find('/');
  const auto digits = [](std::string_view v) {
    return !v.empty() && std::all_of(v.begin(), v.end(), [](unsigned char c) { return std::isdigit(c); });
  };
  const std::string_view whole(s);
  if (slash == std::string::npos ? !digits(whole) : !(digits(whole.substr(0, slash)) && digits(whole.substr(slash + 1))))
    throw InputError("malformed exact point '" + text + "'");
  if (slash == std::string::npos) return mpq_class(mpz_class(s));
  const mpz_class den(s.substr(slash + 1));
  if (den == 0) throw InputError("zero denominator in exact point '" + text + "'");
  mpq_class q(mpz_class(s.substr(0, slash)), den);
  q.canonicalize();
  return q;
}

}  // namespace

std::size_t GaussianInteger::bits() const { return std::max(bit_length(re), bit_length(im)); }

GaussianInteger& GaussianInteger::operator+=(const GaussianInteger& o) {
  re += o.re;
  im += o.im;
  return *this;
}

GaussianInteger& GaussianInteger::operator-=(const GaussianInteger& o) {
  re -= o.re;
  im -= o.im;
  return *this;
}

GaussianInteger& GaussianInteger::operator*=(const GaussianInteger& o) {
  *this = *this * o;
  return *this;
}

GaussianInteger operator+(GaussianInteger a, const GaussianInteger& b) { return a += b; }
GaussianInteger operator-(GaussianInteger a, const GaussianInteger& b) { return a -= b; }
GaussianInteger operator-(const GaussianInteger& a) { return {-a.re, -a.im}; }

GaussianInteger operator*(const GaussianInteger& a, const GaussianInteger& b) {
  if (b.im == 0) return {a.re * b.re, a.im * b.re};
  if (a.im == 0) return {a.re * b.re, a.re * b.im};
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

bool operator==(const GaussianInteger& a, const GaussianInteger& b) { return a.re == b.re && a.im == b.im; }

GaussianInteger div_round(const GaussianInteger& a, const GaussianInteger& b) {
  if (b.is_zero()) throw DomainError("Gaussian division by zero");
  const GaussianInteger p = a * b.conj();
  const mpz_class n = b.norm();
  return {round_div(p.re, n), round_div(p.im, n)};
}

GaussianInteger remainder(const GaussianInteger& a, const GaussianInteger& b) { return a - div_round(a, b) * b; }

GaussianInteger div_exact(const GaussianInteger& a, const GaussianInteger& b) {
  if (b.is_zero()) throw DomainError("Gaussian division by zero");
  if (b.im == 0 && (b.re == 1 || b.re == -1)) return b.re == 1 ? a : -a;
  GaussianInteger p = a * b.conj();
  const mpz_class n = b.norm();
  mpz_divexact(p.re.get_mpz_t(), p.re.get_mpz_t(), n.get_mpz_t());
  mpz_divexact(p.im.get_mpz_t(), p.im.get_mpz_t(), n.get_mpz_t());
  return p;
}

GaussianInteger gcd(GaussianInteger a, GaussianInteger b) {
  while (!b.is_zero()) {
    GaussianInteger r = remainder(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return canonical_associate(a);
}

GaussianInteger normalizing_unit(const GaussianInteger& a) {
  if (a.re > 0 && a.im >= 0) return {1, 0};
  if (a.re <= 0 && a.im > 0) return {0, -1};
  if (a.re < 0 && a.im <= 0) return {-1, 0};
  if (a.re >= 0 && a.im < 0) return {0, 1};
  return {1, 0};  // zero
}

GaussianInteger canonical_associate(const GaussianInteger& a) { return normalizing_unit(a) * a; }

std::string to_string(const GaussianInteger& a) {
  if (a.im == 0) return a.re.get_str();
  std::string out = a.re == 0 ? "" : a.re.get_str();
  if (a.im > 0 && !out.empty()) out += "+";
  return out + a.im.get_str() + "*i";
}

GaussianRational::GaussianRational(const mpq_class& re, const mpq_class& im) {
  mpz_class l;
  mpz_lcm(l.get_mpz_t(), re.get_den_mpz_t(), im.get_den_mpz_t());
  num_ = GaussianInteger(re.get_num() * (l / re.get_den()), im.get_num() * (l / im.get_den()));
  den_ = GaussianInteger(l, 0);
  canonicalize();
}

GaussianRational::GaussianRational(GaussianInteger num, GaussianInteger den) : num_(std::move(num)), den_(std::move(den)) {
  canonicalize();
}

GaussianRational GaussianRational::from_coprime(GaussianInteger num, GaussianInteger den) {
  GaussianRational x;
  x.num_ = std::move(num);
  x.den_ = std::move(den);
  if (x.den_.is_zero()) {
    x.num_ = GaussianInteger(1);
  } else if (x.num_.is_zero()) {
    x.den_ = GaussianInteger(1);
  } else {
    const GaussianInteger u = normalizing_unit(x.den_);
    x.num_ = x.num_ * u;
    x.den_ = x.den_ * u;
  }
  return x;
}

void GaussianRational::canonicalize() {
  if (num_.is_zero() && den_.is_zero()) throw DomainError("0/0 is not a point of P^1");
  if (den_.is_zero()) {
    num_ = GaussianInteger(1);
    return;
  }
  if (num_.is_zero()) {
    den_ = GaussianInteger(1);
    return;
  }
  const GaussianInteger g = gcd(num_, den_);
  if (!g.is_unit()) {
    num_ = div_exact(num_, g);
    den_ = div_exact(den_, g);
  }
  const GaussianInteger u = normalizing_unit(den_);
  num_ = num_ * u;
  den_ = den_ * u;
}

GaussianRational GaussianRational::from_double(double re, double im) {
  if (!std::isfinite(re) || !std::isfinite(im)) throw InputError("non-finite coordinate");
  return GaussianRational(mpq_class(re), mpq_class(im));
}

GaussianRational GaussianRational::parse(const std::string& text) {
  std::string s;
  for (const char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s == "inf" || s == "infinity") return infinity();
  if (s.empty()) throw InputError("empty exact point");
  mpq_class re = 0, im = 0;
  std::size_t pos = 0;
  bool seen_re = false, seen_im = false;
  while (pos < s.size()) {
    int sign = 1;
    if (s[pos] == '+' || s[pos] == '-') {
      sign = s[pos] == '-' ? -1 : 1;
      ++pos;
    }
    std::size_t end = pos;
    while (end < s.size() && s[end] != '+' && s[end] != '-') ++end;
    std::string term = s.substr(pos, end - pos);
    if (term.empty()) throw InputError("malformed exact point '" + text + "'");
    const bool imaginary = term.find('i') != std::string::npos;
    if (imaginary && std::count(term.begin(), term.end(), 'i') != 1) throw InputError("malformed exact point '" + text + "'");
    std::string body;
    for (const char c : term)
      if (c != 'i' && c != '*') body += c;
    if (!imaginary && term.find('*') != std::string::npos) throw InputError("malformed exact point '" + text + "'");
    const mpq_class v = sign * parse_magnitude(body, text);
    if (imaginary ? seen_im : seen_re) throw InputError("repeated component in exact point '" + text + "'");
    (imaginary ? seen_im : seen_re) = true;
    (imaginary ? im : re) = v;
    pos = end;
  }
  return GaussianRational(re, im);
}

mpq_class GaussianRational::real() const {
  if (is_infinite()) throw DomainError("real part of infinity");
  const GaussianInteger p = num_ * den_.conj();
  mpq_class q(p.re, den_.norm());
  q.canonicalize();
  return q;
}

mpq_class GaussianRational::imag() const {
  if (is_infinite()) throw DomainError("imaginary part of infinity");
  const GaussianInteger p = num_ * den_.conj();
  mpq_class q(p.im, den_.norm());
  q.canonicalize();
  return q;
}

mpq_class GaussianRational::abs2() const {
  if (is_infinite()) throw DomainError("modulus of infinity");
  mpq_class q(num_.norm(), den_.norm());
  q.canonicalize();
  return q;
}

GaussianRational GaussianRational::conj() const {
  if (is_infinite()) return *this;
  return from_coprime(num_.conj(), den_.conj());
}

std::complex<double> GaussianRational::to_complex() const {
  if (is_infinite()) return {INFINITY, 0.0};
  return {real().get_d(), imag().get_d()};
}

std::size_t GaussianRational::bits() const { return std::max(num_.bits(), den_.bits()); }

std::size_t GaussianRational::hash() const {
  std::size_t h = 0;
  for (const mpz_class* z : {&num_.re, &num_.im, &den_.re, &den_.im}) h = hash_mpz(*z, h);
  return h;
}

std::string GaussianRational::to_string() const {
  if (is_infinite()) return "inf";
  const mpq_class re = real(), im = imag();
  if (im == 0) return format_rational(re);
  std::string out = re == 0 ? "" : format_rational(re);
  if (im > 0 && !out.empty()) out += "+";
  return out + format_rational(im) + "*i";
}

namespace {

void require_finite(const GaussianRational& a, const GaussianRational& b) {
  if (a.is_infinite() || b.is_infinite()) throw DomainError("arithmetic with the point at infinity");
}

}  // namespace

GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
  require_finite(a, b);
  return {a.num() * b.den() + b.num() * a.den(), a.den() * b.den()};
}

GaussianRational operator-(const GaussianRational& a) {
  if (a.is_infinite()) return a;
  return GaussianRational::from_coprime(-a.num(), a.den());
}

GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) { return a + (-b); }

GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
  require_finite(a, b);
  return {a.num() * b.num(), a.den() * b.den()};
}

GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
  require_finite(a, b);
  if (b.is_zero()) throw DomainError("division by zero in Q(i)");
  return {a.num() * b.den(), a.den() * b.num()};
}

bool operator==(const GaussianRational& a, const GaussianRational& b) { return a.num() == b.num() && a.den() == b.den(); }

double naive_height(const GaussianRational& x) {
  const mpz_class m = std::max(x.num().norm(), x.den().norm());
  return m <= 1 ? 0.0 : 0.5 * log_of(m);
}

}  // namespace bdyn
