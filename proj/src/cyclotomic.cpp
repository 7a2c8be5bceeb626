#include "loopmod/cyclotomic.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <ostream>
#include <sstream>
#include <unordered_map>

namespace loopmod {

long gcd_long(long a, long b) { return std::gcd(a, b); }

long lcm_long(long a, long b) {
  if (a == 0 || b == 0) return 0;
  return std::lcm(a, b);
}

long mod_floor(long a, long m) {
  long r = a % m;
  return r < 0 ? r + m : r;
}

int euler_phi(int n) {
  int result = n;
  int m = n;
  for (int p = 2; p * p <= m; ++p) {
    if (m % p == 0) {
      while (m % p == 0) m /= p;
      result -= result / p;
    }
  }
  if (m > 1) result -= result / m;
  return result;
}

// ---------------------------------------------------------------------------
// RationalPolynomial

RationalPolynomial::RationalPolynomial(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
  trim();
}

RationalPolynomial RationalPolynomial::monomial(const Rational& c, std::size_t degree) {
  std::vector<Rational> v(degree + 1);
  v[degree] = c;
  return RationalPolynomial(std::move(v));
}

void RationalPolynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

RationalPolynomial RationalPolynomial::operator+(const RationalPolynomial& o) const {
  std::vector<Rational> v(std::max(coeffs_.size(), o.coeffs_.size()));
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = coeff(i) + o.coeff(i);
  return RationalPolynomial(std::move(v));
}

RationalPolynomial RationalPolynomial::operator-(const RationalPolynomial& o) const {
  std::vector<Rational> v(std::max(coeffs_.size(), o.coeffs_.size()));
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = coeff(i) - o.coeff(i);
  return RationalPolynomial(std::move(v));
}

RationalPolynomial RationalPolynomial::operator*(const RationalPolynomial& o) const {
  if (is_zero() || o.is_zero()) return {};
  std::vector<Rational> v(coeffs_.size() + o.coeffs_.size() - 1);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j) v[i + j] += coeffs_[i] * o.coeffs_[j];
  }
  return RationalPolynomial(std::move(v));
}

std::pair<RationalPolynomial, RationalPolynomial> RationalPolynomial::divmod(
    const RationalPolynomial& d) const {
  if (d.is_zero()) throw std::domain_error("polynomial division by zero");
  std::vector<Rational> rem = coeffs_;
  long dd = d.degree();
  if (degree() < dd) return {RationalPolynomial(), *this};
  std::vector<Rational> quot(static_cast<std::size_t>(degree() - dd + 1));
  const Rational& lead = d.coeffs_.back();
  for (long k = degree(); k >= dd; --k) {
    Rational c = rem[static_cast<std::size_t>(k)] / lead;
    if (c == 0) continue;
    quot[static_cast<std::size_t>(k - dd)] = c;
    for (long i = 0; i <= dd; ++i) rem[static_cast<std::size_t>(k - dd + i)] -= c * d.coeffs_[static_cast<std::size_t>(i)];
  }
  return {RationalPolynomial(std::move(quot)), RationalPolynomial(std::move(rem))};
}

std::string RationalPolynomial::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = coeffs_.size(); i-- > 0;) {
    const Rational& c = coeffs_[i];
    if (c == 0) continue;
    Rational a = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (i == 0) {
      os << a.get_str();
    } else {
      if (a != 1) os << a.get_str() << "*";
      os << "x";
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

const RationalPolynomial& cyclotomic_polynomial(int n) {
  if (n < 1) throw std::invalid_argument("cyclotomic_polynomial: order must be positive");
  static std::mutex mu;
  static std::map<int, std::unique_ptr<RationalPolynomial>> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return *it->second;
  }
  RationalPolynomial p = RationalPolynomial::monomial(1, static_cast<std::size_t>(n)) -
                         RationalPolynomial::monomial(1, 0);
  for (int d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    auto [q, r] = p.divmod(cyclotomic_polynomial(d));
    if (!r.is_zero()) throw std::logic_error("cyclotomic division left a remainder");
    p = q;
  }
  std::lock_guard<std::mutex> lock(mu);
  auto [it, inserted] = cache.emplace(n, std::make_unique<RationalPolynomial>(std::move(p)));
  return *it->second;
}

// ---------------------------------------------------------------------------
// Phase

Phase::Phase(long num, long den) {
  if (den <= 0) throw std::invalid_argument("Phase: denominator must be positive");
  num = mod_floor(num, den);
  long g = std::gcd(num, den);
  if (g == 0) g = den;
  num_ = num / g;
  den_ = den / g;
}

Phase Phase::operator+(const Phase& o) const {
  long l = std::lcm(den_, o.den_);
  return Phase(num_ * (l / den_) + o.num_ * (l / o.den_), l);
}

Phase Phase::operator-(const Phase& o) const { return *this + (-o); }

Phase Phase::operator-() const { return Phase(-num_, den_); }

Phase Phase::scaled(long k) const { return Phase(mod_floor(num_ * mod_floor(k, den_), den_), den_); }

// ---------------------------------------------------------------------------
// Reduction tables: row k holds x^k mod Phi_n for 0 <= k < n.

namespace {

struct CycloTable {
  int n = 1;
  int phi = 1;
  std::vector<std::vector<long>> pow;
};

std::shared_ptr<const CycloTable> build_table(int n) {
  auto t = std::make_shared<CycloTable>();
  t->n = n;
  const RationalPolynomial& phi_poly = cyclotomic_polynomial(n);
  t->phi = static_cast<int>(phi_poly.degree());
  std::vector<long> phi_int(static_cast<std::size_t>(t->phi) + 1);
  for (std::size_t i = 0; i < phi_int.size(); ++i) phi_int[i] = phi_poly.coeff(i).get_num().get_si();
  auto phi = static_cast<std::size_t>(t->phi);
  t->pow.assign(static_cast<std::size_t>(n), std::vector<long>(phi, 0));
  t->pow[0][0] = 1;
  for (int k = 1; k < n; ++k) {
    const auto& prev = t->pow[static_cast<std::size_t>(k - 1)];
    auto& cur = t->pow[static_cast<std::size_t>(k)];
    long top = prev[phi - 1];
    for (std::size_t i = phi - 1; i > 0; --i) cur[i] = prev[i - 1];
    cur[0] = 0;
    if (top != 0) {
      for (std::size_t i = 0; i < phi; ++i) cur[i] -= top * phi_int[i];
    }
  }
  if (n == 1) t->pow[0] = {1};
  return t;
}

// Tables are memoized process-wide; a thread-local map avoids the lock on hot paths.
const CycloTable& table(int n) {
  thread_local std::unordered_map<int, std::shared_ptr<const CycloTable>> local;
  auto it = local.find(n);
  if (it != local.end()) return *it->second;
  static std::mutex mu;
  static std::map<int, std::shared_ptr<const CycloTable>> global;
  std::shared_ptr<const CycloTable> t;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto g = global.find(n);
    if (g != global.end()) t = g->second;
  }
  if (!t) {
    t = build_table(n);
    std::lock_guard<std::mutex> lock(mu);
    t = global.emplace(n, t).first->second;
  }
  local.emplace(n, t);
  return *t;
}

void addmul_long(Integer& acc, const Integer& x, long c) {
  if (c > 0) {
    mpz_addmul_ui(acc.get_mpz_t(), x.get_mpz_t(), static_cast<unsigned long>(c));
  } else if (c < 0) {
    mpz_submul_ui(acc.get_mpz_t(), x.get_mpz_t(), static_cast<unsigned long>(-c));
  }
}

// Unique-or-any solution of a rational system A x = b (rows of A given); nullopt when inconsistent.
std::optional<std::vector<Rational>> solve_rational(std::vector<std::vector<Rational>> a, std::vector<Rational> b) {
  std::size_t rows = a.size();
  std::size_t cols = rows ? a[0].size() : 0;
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    std::swap(b[p], b[r]);
    Rational inv = 1 / a[r][c];
    for (std::size_t j = c; j < cols; ++j) a[r][j] *= inv;
    b[r] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      Rational f = a[i][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
      b[i] -= f * b[r];
    }
    pivots.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < rows; ++i) {
    if (b[i] != 0) return std::nullopt;
  }
  std::vector<Rational> x(cols);
  for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = b[i];
  return x;
}

int common_order(const Cyc& a, const Cyc& b) {
  if (a.order() == b.order()) return a.order();
  if (a.is_rational()) return b.order();
  if (b.is_rational()) return a.order();
  return static_cast<int>(std::lcm(a.order(), b.order()));
}

}  // namespace

// ---------------------------------------------------------------------------
// Cyc

Cyc::Cyc(long v) {
  if (v != 0) num_.emplace_back(v);
}

Cyc::Cyc(const Rational& q) {
  if (q != 0) {
    num_.push_back(q.get_num());
    den_ = q.get_den();
  }
}

Cyc::Cyc(int order, std::vector<Integer> num, Integer den) : order_(order), num_(std::move(num)), den_(std::move(den)) {
  normalize();
}

void Cyc::normalize() {
  while (!num_.empty() && num_.back() == 0) num_.pop_back();
  if (num_.empty()) {
    den_ = 1;
    return;
  }
  if (den_ < 0) {
    den_ = -den_;
    for (auto& x : num_) x = -x;
  }
  if (den_ == 1) return;
  Integer g = den_;
  for (const auto& x : num_) {
    if (x == 0) continue;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g == 1) return;
  }
  for (auto& x : num_) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
  mpz_divexact(den_.get_mpz_t(), den_.get_mpz_t(), g.get_mpz_t());
}

Cyc Cyc::zeta(int n, long power) {
  if (n < 1) throw OrderMismatch("zeta: order must be positive");
  const CycloTable& t = table(n);
  const auto& row = t.pow[static_cast<std::size_t>(mod_floor(power, n))];
  std::vector<Integer> num(row.begin(), row.end());
  return Cyc(n, std::move(num), Integer(1));
}

Cyc Cyc::root_of_unity(int k, int n) {
  if (k < 1 || n < 1 || n % k != 0) {
    throw OrderMismatch("root_of_unity: " + std::to_string(k) + " does not divide " + std::to_string(n));
  }
  return zeta(n, n / k);
}

Cyc Cyc::from_phase(const Phase& p) { return zeta(static_cast<int>(p.den()), p.num()); }

Cyc Cyc::from_coeffs(int n, const std::vector<Rational>& coeffs) {
  const CycloTable& t = table(n);
  Integer den = 1;
  for (const auto& q : coeffs) den = lcm(den, Integer(q.get_den()));
  std::vector<Integer> num(static_cast<std::size_t>(t.phi));
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] == 0) continue;
    Integer scaled = coeffs[i].get_num() * (den / coeffs[i].get_den());
    const auto& row = t.pow[i % static_cast<std::size_t>(n)];
    for (std::size_t j = 0; j < row.size(); ++j) addmul_long(num[j], scaled, row[j]);
  }
  return Cyc(n, std::move(num), den);
}

Rational Cyc::rational_value() const {
  if (!is_rational()) throw std::logic_error("Cyc::rational_value on an irrational value");
  if (num_.empty()) return Rational(0);
  Rational q(num_[0], den_);
  q.canonicalize();
  return q;
}

Rational Cyc::coeff(std::size_t i) const {
  if (i >= num_.size()) return Rational(0);
  Rational q(num_[i], den_);
  q.canonicalize();
  return q;
}

std::size_t Cyc::term_count() const {
  return static_cast<std::size_t>(std::count_if(num_.begin(), num_.end(), [](const Integer& x) { return x != 0; }));
}

Cyc Cyc::lifted(int m) const {
  if (m == order_) return *this;
  if (m < 1) throw OrderMismatch("cannot lift to a non-positive order");
  if (is_rational()) {
    Cyc r = *this;
    r.order_ = m;
    return r;
  }
  if (m % order_ != 0) {
    throw OrderMismatch("cannot lift from order " + std::to_string(order_) + " to " + std::to_string(m));
  }
  const CycloTable& t = table(m);
  long step = m / order_;
  std::vector<Integer> out(static_cast<std::size_t>(t.phi));
  for (std::size_t i = 0; i < num_.size(); ++i) {
    if (num_[i] == 0) continue;
    const auto& row = t.pow[static_cast<std::size_t>((static_cast<long>(i) * step) % m)];
    for (std::size_t j = 0; j < row.size(); ++j) addmul_long(out[j], num_[i], row[j]);
  }
  return Cyc(m, std::move(out), den_);
}

std::optional<Cyc> Cyc::lowered(int m) const {
  if (m < 1) throw OrderMismatch("cannot restrict to a non-positive order");
  if (is_rational()) {
    Cyc r = *this;
    r.order_ = m;
    return r;
  }
  if (order_ % m != 0) {
    throw OrderMismatch("cannot restrict from order " + std::to_string(order_) + " to " + std::to_string(m));
  }
  const CycloTable& big = table(order_);
  const CycloTable& small = table(m);
  long step = order_ / m;
  auto rows = static_cast<std::size_t>(big.phi);
  auto cols = static_cast<std::size_t>(small.phi);
  std::vector<std::vector<Rational>> a(rows, std::vector<Rational>(cols));
  for (std::size_t j = 0; j < cols; ++j) {
    const auto& row = big.pow[static_cast<std::size_t>((static_cast<long>(j) * step) % order_)];
    for (std::size_t i = 0; i < rows; ++i) a[i][j] = row[i];
  }
  std::vector<Rational> b(rows);
  for (std::size_t i = 0; i < rows; ++i) b[i] = coeff(i);
  auto x = solve_rational(std::move(a), std::move(b));
  if (!x) return std::nullopt;
  Cyc candidate = from_coeffs(m, *x);
  if (!(candidate.lifted(order_) == *this)) return std::nullopt;
  return candidate;
}

int Cyc::conductor_order() const {
  if (is_rational()) return 1;
  for (int m = 1; m <= order_; ++m) {
    if (order_ % m == 0 && lowered(m)) return m;
  }
  return order_;
}

Cyc Cyc::inverse() const {
  if (is_zero()) throw std::domain_error("Cyc: division by zero");
  if (term_count() == 1) {
    std::size_t k = 0;
    while (num_[k] == 0) ++k;
    Rational c(num_[k], den_);
    c.canonicalize();
    Cyc z = zeta(order_, -static_cast<long>(k));
    return z * Cyc(Rational(1 / c));
  }
  // Solve (this * y) = 1 through the multiplication matrix on the power basis.
  const CycloTable& t = table(order_);
  auto phi = static_cast<std::size_t>(t.phi);
  std::vector<std::vector<Rational>> a(phi, std::vector<Rational>(phi));
  for (std::size_t j = 0; j < phi; ++j) {
    Cyc col = *this * zeta(order_, static_cast<long>(j));
    for (std::size_t i = 0; i < phi; ++i) a[i][j] = col.coeff(i);
  }
  std::vector<Rational> b(phi);
  b[0] = 1;
  auto x = solve_rational(std::move(a), std::move(b));
  if (!x) throw std::logic_error("Cyc: nonzero element without inverse");
  return from_coeffs(order_, *x);
}

Cyc Cyc::operator-() const {
  Cyc r = *this;
  for (auto& x : r.num_) x = -x;
  return r;
}

void Cyc::add_scaled(const Cyc& o, int sign) {
  if (o.is_zero()) return;
  if (is_zero()) {
    int ord = common_order(*this, o);
    *this = sign > 0 ? o : -o;
    order_ = ord;
    return;
  }
  int l = common_order(*this, o);
  if (l != order_) *this = lifted(l);
  const Cyc* rhs = &o;
  Cyc tmp;
  if (o.order_ != l && !o.is_rational()) {
    tmp = o.lifted(l);
    rhs = &tmp;
  }
  if (num_.size() < rhs->num_.size()) num_.resize(rhs->num_.size());
  if (den_ == rhs->den_) {
    for (std::size_t i = 0; i < rhs->num_.size(); ++i) {
      if (sign > 0) {
        num_[i] += rhs->num_[i];
      } else {
        num_[i] -= rhs->num_[i];
      }
    }
  } else {
    for (auto& x : num_) x *= rhs->den_;
    for (std::size_t i = 0; i < rhs->num_.size(); ++i) {
      if (rhs->num_[i] == 0) continue;
      if (sign > 0) {
        mpz_addmul(num_[i].get_mpz_t(), rhs->num_[i].get_mpz_t(), den_.get_mpz_t());
      } else {
        mpz_submul(num_[i].get_mpz_t(), rhs->num_[i].get_mpz_t(), den_.get_mpz_t());
      }
    }
    den_ *= rhs->den_;
  }
  order_ = l;
  normalize();
}

Cyc& Cyc::operator+=(const Cyc& o) {
  add_scaled(o, 1);
  return *this;
}

Cyc& Cyc::operator-=(const Cyc& o) {
  add_scaled(o, -1);
  return *this;
}

Cyc& Cyc::operator*=(const Cyc& o) {
  *this = *this * o;
  return *this;
}

Cyc operator*(const Cyc& a, const Cyc& b) {
  if (a.is_zero() || b.is_zero()) return Cyc();
  int l = common_order(a, b);
  if (a.is_rational() || b.is_rational()) {
    const Cyc& q = a.is_rational() ? a : b;
    const Cyc& v = a.is_rational() ? b : a;
    std::vector<Integer> num(v.num_.size());
    for (std::size_t i = 0; i < num.size(); ++i) num[i] = v.num_[i] * q.num_[0];
    return Cyc(l, std::move(num), Integer(v.den_ * q.den_));
  }
  Cyc la;
  Cyc lb;
  const Cyc* xp = &a;
  const Cyc* yp = &b;
  if (a.order_ != l) {
    la = a.lifted(l);
    xp = &la;
  }
  if (b.order_ != l) {
    lb = b.lifted(l);
    yp = &lb;
  }
  const Cyc& y = *yp;
  const CycloTable& t = table(l);
  auto phi = static_cast<std::size_t>(t.phi);
  std::vector<Integer> prod(xp->num_.size() + y.num_.size() - 1);
  for (std::size_t i = 0; i < xp->num_.size(); ++i) {
    if (xp->num_[i] == 0) continue;
    for (std::size_t j = 0; j < y.num_.size(); ++j) {
      if (y.num_[j] == 0) continue;
      mpz_addmul(prod[i + j].get_mpz_t(), xp->num_[i].get_mpz_t(), y.num_[j].get_mpz_t());
    }
  }
  if (prod.size() > phi) {
    for (std::size_t k = phi; k < prod.size(); ++k) {
      if (prod[k] == 0) continue;
      const auto& row = t.pow[k % static_cast<std::size_t>(l)];
      for (std::size_t i = 0; i < phi; ++i) addmul_long(prod[i], prod[k], row[i]);
    }
    prod.resize(phi);
  }
  return Cyc(l, std::move(prod), Integer(xp->den_ * y.den_));
}

bool operator==(const Cyc& a, const Cyc& b) {
  if (a.is_rational() && b.is_rational()) return a.num_ == b.num_ && a.den_ == b.den_;
  if (a.is_rational() != b.is_rational()) return false;
  if (a.order_ == b.order_) return a.num_ == b.num_ && a.den_ == b.den_;
  int l = static_cast<int>(std::lcm(a.order_, b.order_));
  Cyc x = a.lifted(l);
  Cyc y = b.lifted(l);
  return x.num_ == y.num_ && x.den_ == y.den_;
}

std::optional<std::pair<Rational, Phase>> Cyc::as_rational_times_root() const {
  if (is_zero()) return std::nullopt;
  if (is_rational()) {
    Rational q = rational_value();
    if (q > 0) return std::make_pair(q, Phase());
    return std::make_pair(Rational(-q), Phase(1, 2));
  }
  long l = std::lcm(static_cast<long>(order_), 2L);
  for (long j = 0; j < l; ++j) {
    Cyc y = *this * zeta(static_cast<int>(l), -j);
    if (y.is_rational()) {
      Rational q = y.rational_value();
      if (q > 0) return std::make_pair(q, Phase(j, l));
    }
  }
  return std::nullopt;
}

std::optional<Phase> Cyc::as_root_of_unity() const {
  auto r = as_rational_times_root();
  if (!r || r->first != 1) return std::nullopt;
  return r->second;
}

std::optional<Rational> rational_root(const Rational& q, long k) {
  if (k < 1) throw std::invalid_argument("rational_root: k must be positive");
  if (q == 0) return Rational(0);
  bool neg = q < 0;
  if (neg && k % 2 == 0) return std::nullopt;
  Integer num = abs(q.get_num());
  Integer den = q.get_den();
  Integer rn;
  Integer rd;
  if (mpz_root(rn.get_mpz_t(), num.get_mpz_t(), static_cast<unsigned long>(k)) == 0) return std::nullopt;
  if (mpz_root(rd.get_mpz_t(), den.get_mpz_t(), static_cast<unsigned long>(k)) == 0) return std::nullopt;
  Rational r(rn, rd);
  r.canonicalize();
  return neg ? Rational(-r) : r;
}

Cyc Cyc::kth_root(long k) const {
  if (k < 1) throw std::invalid_argument("kth_root: k must be positive");
  if (is_zero()) return Cyc();
  auto form = as_rational_times_root();
  if (!form) {
    throw FieldNotSplit("no cyclotomic " + std::to_string(k) + "-th root of " + to_string() +
                        ": not a rational times a root of unity");
  }
  auto r = rational_root(form->first, k);
  if (!r) {
    throw FieldNotSplit("no cyclotomic " + std::to_string(k) + "-th root of " + to_string() +
                        ": rational part " + form->first.get_str() + " has no rational root");
  }
  Phase root(form->second.num(), form->second.den() * k);
  Cyc z = from_phase(root);
  int l = static_cast<int>(std::lcm(static_cast<long>(order_), root.den()));
  return (z * Cyc(*r)).lifted(l);
}

namespace {

struct LiteralParser {
  std::string_view s;
  std::size_t pos = 0;

  void skip() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool at_end() {
    skip();
    return pos >= s.size();
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("scalar literal '" + std::string(s) + "': " + what + " at offset " + std::to_string(pos));
  }
  Integer integer() {
    skip();
    std::size_t start = pos;
    if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
    std::size_t digits = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == digits) fail("expected digits");
    std::string txt(s.substr(start, pos - start));
    if (txt[0] == '+') txt.erase(0, 1);
    return Integer(txt);
  }
  long exponent() {
    skip();
    if (pos >= s.size() || s[pos] != '^') return 1;
    ++pos;
    Integer e = integer();
    if (e < 0) fail("negative exponent");
    return e.get_si();
  }
  // One term; returns (coefficient, power).
  std::pair<Rational, long> term() {
    skip();
    int sign = 1;
    if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) {
      if (s[pos] == '-') sign = -1;
      ++pos;
      skip();
    }
    if (pos < s.size() && s[pos] == 'z') {
      ++pos;
      return {Rational(sign), exponent()};
    }
    Integer num = integer();
    Integer den = 1;
    skip();
    if (pos < s.size() && s[pos] == '/') {
      ++pos;
      den = integer();
      if (den <= 0) fail("denominator must be positive");
    }
    Rational c(num * sign, den);
    c.canonicalize();
    skip();
    if (pos < s.size() && s[pos] == '*') {
      ++pos;
      skip();
      if (pos >= s.size() || s[pos] != 'z') fail("expected 'z' after '*'");
      ++pos;
      return {c, exponent()};
    }
    return {c, 0};
  }
};

}  // namespace

Cyc Cyc::parse(std::string_view text, int n) {
  if (n < 1) throw ParseError("scalar literal: cyclotomic order must be positive");
  LiteralParser p{text};
  if (p.at_end()) p.fail("empty literal");
  Cyc acc;
  acc.order_ = n;
  auto [c0, k0] = p.term();
  acc += Cyc(c0) * zeta(n, k0);
  while (!p.at_end()) {
    char op = p.s[p.pos];
    if (op != '+' && op != '-') p.fail("expected '+' or '-'");
    ++p.pos;
    auto [c, k] = p.term();
    Cyc t = Cyc(c) * zeta(n, k);
    if (op == '+') {
      acc += t;
    } else {
      acc -= t;
    }
  }
  if (acc.order_ != n) acc = acc.lifted(n);
  return acc;
}

std::string Cyc::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < num_.size(); ++i) {
    Rational c = coeff(i);
    if (c == 0) continue;
    Rational a = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (i == 0) {
      os << a.get_str();
      continue;
    }
    if (a != 1) os << a.get_str() << "*";
    os << "z";
    if (i > 1) os << "^" << i;
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Cyc& c) { return os << c.to_string(); }

}  // namespace loopmod
