#include "bdyn/exact_map.hpp"

#include <utility>

#include "bdyn/errors.hpp"

namespace bdyn {

namespace {

HomogeneousForm form_mul(const HomogeneousForm& a, const HomogeneousForm& b) {
  HomogeneousForm out(a.size() + b.size() - 1, GaussianInteger(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

HomogeneousForm form_scale(HomogeneousForm a, const GaussianInteger& c) {
  for (auto& x : a) x = x * c;
  return a;
}

void remove_content(HomogeneousForm& f, HomogeneousForm& g) {
  GaussianInteger c(0);
  for (const auto* form : {&f, &g})
    for (const auto& x : *form) {
      c = gcd(c, x);
      if (c.is_unit()) return;
    }
  for (auto* form : {&f, &g})
    for (auto& x : *form) x = div_exact(x, c);
}

// sum c_k X^k Y^(d-k) at (x, y)
GaussianInteger form_eval(const HomogeneousForm& f, const GaussianInteger& x, const GaussianInteger& y) {
  const std::size_t d = f.size() - 1;
  std::vector<GaussianInteger> ypow(d + 1);
  ypow[0] = GaussianInteger(1);
  for (std::size_t k = 1; k <= d; ++k) ypow[k] = ypow[k - 1] * y;
  GaussianInteger acc = f[d];
  for (std::size_t k = d; k-- > 0;) acc = acc * x + f[k] * ypow[d - k];
  return acc;
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

}  // namespace

ExactBlaschke::ExactBlaschke(GaussianRational rho, std::vector<GaussianRational> zeros)
    : rho_(std::move(rho)), zeros_(std::move(zeros)) {
  if (zeros_.empty()) throw DomainError("an exact Blaschke product needs at least one zero");
  if (rho_.is_infinite() || rho_.abs2() != 1) throw DomainError("rho must satisfy |rho|^2 = 1 exactly, got " + rho_.to_string());
  for (const auto& a : zeros_)
    if (a.is_infinite() || a.abs2() >= 1) throw DomainError("zero " + a.to_string() + " is not inside the unit disk");
}

FBP ExactBlaschke::to_fbp() const {
  std::vector<Complex> z;
  for (const auto& a : zeros_) z.push_back(a.to_complex());
  return make_fbp(rho_.to_complex(), z);
}

ExactBlaschke exact_power_map(int n) {
  if (n < 1) throw DomainError("power map needs n >= 1");
  return ExactBlaschke(GaussianRational(1), std::vector<GaussianRational>(static_cast<std::size_t>(n), GaussianRational(0)));
}

ExactMap::ExactMap(HomogeneousForm f, HomogeneousForm g) : f_(std::move(f)), g_(std::move(g)) {
  if (f_.size() != g_.size() || f_.size() < 2) throw DomainError("exact map needs two forms of the same degree >= 1");
  remove_content(f_, g_);
  res_ = bdyn::resultant(f_, g_);
  if (res_.is_zero()) throw DomainError("forms of an exact map share a factor");
}

ExactMap::ExactMap(const ExactBlaschke& b) {
  HomogeneousForm f{b.rho().num()}, g{b.rho().den()};
  for (const auto& a : b.zeros()) {
    const GaussianInteger& alpha = a.num();
    const GaussianInteger& beta = a.den();
    // beta~ (beta X - alpha Y)  over  beta (beta~ Y - alpha~ X)
    f = form_scale(form_mul(f, {-alpha, beta}), beta.conj());
    g = form_scale(form_mul(g, {beta.conj(), -alpha.conj()}), beta);
  }
  *this = ExactMap(std::move(f), std::move(g));
}

GaussianRational ExactMap::operator()(const GaussianRational& x) const {
  GaussianInteger a = form_eval(f_, x.num(), x.den());
  GaussianInteger b = form_eval(g_, x.num(), x.den());
  // gcd(a, b) divides the resultant because num and den are coprime
  if (!res_.is_unit()) {
    const GaussianInteger g1 = gcd(res_, remainder(a, res_));
    const GaussianInteger g2 = gcd(g1, remainder(b, g1));
    if (!g2.is_unit()) {
      a = div_exact(a, g2);
      b = div_exact(b, g2);
    }
  }
  return GaussianRational::from_coprime(std::move(a), std::move(b));
}

ExactMap compose(const ExactMap& a, const ExactMap& b) {
  const std::size_t d = static_cast<std::size_t>(a.degree());
  std::vector<HomogeneousForm> fp(d + 1), gp(d + 1);
  fp[0] = gp[0] = HomogeneousForm{GaussianInteger(1)};
  for (std::size_t k = 1; k <= d; ++k) {
    fp[k] = form_mul(fp[k - 1], b.f());
    gp[k] = form_mul(gp[k - 1], b.g());
  }
  const std::size_t out_size = d * static_cast<std::size_t>(b.degree()) + 1;
  HomogeneousForm f(out_size, GaussianInteger(0)), g(out_size, GaussianInteger(0));
  for (std::size_t k = 0; k <= d; ++k) {
    const HomogeneousForm term = form_mul(fp[k], gp[d - k]);
    for (std::size_t j = 0; j < out_size; ++j) {
      if (!a.f()[k].is_zero()) f[j] += a.f()[k] * term[j];
      if (!a.g()[k].is_zero()) g[j] += a.g()[k] * term[j];
    }
  }
  return ExactMap(std::move(f), std::move(g));
}

GaussianInteger resultant(const HomogeneousForm& f, const HomogeneousForm& g) {
  const std::size_t m = f.size() - 1, n = g.size() - 1;
  const std::size_t size = m + n;
  std::vector<std::vector<GaussianInteger>> s(size, std::vector<GaussianInteger>(size, GaussianInteger(0)));
  // rows hold coefficients in descending powers of X
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t k = 0; k <= m; ++k) s[r][r + k] = f[m - k];
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t k = 0; k <= n; ++k) s[n + r][r + k] = g[n - k];

  GaussianInteger prev(1);
  bool negate = false;
  for (std::size_t k = 0; k + 1 < size; ++k) {
    if (s[k][k].is_zero()) {
      std::size_t pivot = k + 1;
      while (pivot < size && s[pivot][k].is_zero()) ++pivot;
      if (pivot == size) return GaussianInteger(0);
      std::swap(s[k], s[pivot]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < size; ++i) {
      for (std::size_t j = k + 1; j < size; ++j) s[i][j] = div_exact(s[i][j] * s[k][k] - s[i][k] * s[k][j], prev);
      s[i][k] = GaussianInteger(0);
    }
    prev = s[k][k];
  }
  return negate ? -s[size - 1][size - 1] : s[size - 1][size - 1];
}

ModularField::ModularField(std::uint64_t p) : p_(p), i_(0) {
  if (p % 4 != 1 || !is_prime_u64(p)) throw DomainError("modular field needs a prime p = 1 mod 4");
  for (std::uint64_t c = 2;; ++c) {
    const std::uint64_t x = powmod(c, (p - 1) / 4, p);
    if (mulmod(x, x, p) == p - 1) {
      i_ = x;
      break;
    }
  }
}

std::uint64_t ModularField::reduce(const mpz_class& z) const { return mpz_fdiv_ui(z.get_mpz_t(), p_); }

std::uint64_t ModularField::reduce(const GaussianInteger& z) const { return add(reduce(z.re), mul(i_, reduce(z.im))); }

std::uint64_t ModularField::mul(std::uint64_t a, std::uint64_t b) const { return mulmod(a, b, p_); }

std::uint64_t ModularField::add(std::uint64_t a, std::uint64_t b) const {
  const std::uint64_t s = a + b;
  return s >= p_ ? s - p_ : s;
}

std::uint64_t ModularField::pow(std::uint64_t a, std::uint64_t e) const { return powmod(a, e, p_); }

std::uint64_t ModularField::inverse(std::uint64_t a) const {
  if (a % p_ == 0) throw DomainError("inverse of zero mod p");
  return powmod(a, p_ - 2, p_);
}

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (const std::uint64_t q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL})
    if (n % q == 0) return n == q;
  std::uint64_t d = n - 1;
  int s = 0;
  while (d % 2 == 0) {
    d /= 2;
    ++s;
  }
  for (const std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s && composite; ++r) {
      x = mulmod(x, x, n);
      composite = x != n - 1;
    }
    if (composite) return false;
  }
  return true;
}

std::vector<std::uint64_t> fingerprint_primes(int count) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t n = (1ULL << 61) - 3; static_cast<int>(out.size()) < count; n -= 4)
    if (is_prime_u64(n)) out.push_back(n);
  return out;
}

std::uint64_t reduce_point(const ModularField& field, const GaussianRational& x) {
  const std::uint64_t n = field.reduce(x.num()), d = field.reduce(x.den());
  if (d == 0) return field.prime();
  return field.mul(n, field.inverse(d));
}

ModularMap::ModularMap(const ExactMap& map, const ModularField& field) : field_(&field) {
  for (const auto& c : map.f()) f_.push_back(field.reduce(c));
  for (const auto& c : map.g()) g_.push_back(field.reduce(c));
  good_ = field.reduce(map.resultant()) != 0;
}

std::uint64_t ModularMap::operator()(std::uint64_t x) const {
  const std::uint64_t p = field_->prime();
  if (x == p) {
    if (g_.back() == 0) return p;
    return field_->mul(f_.back(), field_->inverse(g_.back()));
  }
  std::uint64_t a = 0, b = 0;
  for (std::size_t k = f_.size(); k-- > 0;) {
    a = field_->add(field_->mul(a, x), f_[k]);
    b = field_->add(field_->mul(b, x), g_[k]);
  }
  if (b == 0) return p;
  return field_->mul(a, field_->inverse(b));
}

}  // namespace bdyn
