#include "rsrepair/gfield.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "rsrepair/rng.hpp"

namespace rsrepair {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

namespace {

std::uint64_t checked_pow(std::uint64_t base, int exp, std::uint64_t limit) {
  std::uint64_t r = 1;
  for (int i = 0; i < exp; ++i) {
    if (r > limit / base) throw std::overflow_error("field size exceeds the element encoding");
    r *= base;
  }
  return r;
}

}  // namespace

// ---------------------------------------------------------------------------
// BaseField

BaseField::BaseField(std::uint32_t p, CoeffPoly g) : p_(p), g_(std::move(g)) {
  if (!is_prime(p)) throw std::invalid_argument("characteristic must be prime");
  if (g_.size() < 2 || g_.back() != 1) throw std::invalid_argument("g must be monic of degree >= 1");
  for (auto c : g_) {
    if (c >= p) throw std::invalid_argument("g coefficient out of range");
  }
  e_ = static_cast<int>(g_.size()) - 1;
  if (e_ == 1) {
    // F_p itself; any monic linear modulus gives the same arithmetic on [0, p).
    q_ = p;
    return;
  }
  q_ = static_cast<std::uint32_t>(checked_pow(p, e_, kLogTableLimit));
  if (!poly::is_irreducible(BaseField(p, {0, 1}), g_)) {
    throw std::invalid_argument("g is not irreducible over F_p");
  }
  const auto factors = prime_factors(q_ - 1);
  std::uint32_t gen = 0;
  for (std::uint32_t c = 2; c < q_ && gen == 0; ++c) {
    bool full = true;
    for (auto f : factors) {
      std::uint32_t acc = 1, b = c;
      for (std::uint64_t n = (q_ - 1) / f; n; n >>= 1) {
        if (n & 1) acc = mul_poly(acc, b);
        b = mul_poly(b, b);
      }
      if (acc == 1) {
        full = false;
        break;
      }
    }
    if (full) gen = c;
  }
  if (gen == 0) throw std::logic_error("no generator of F_q found");
  exp_.resize(q_ - 1);
  log_.assign(q_, 0);
  std::uint32_t v = 1;
  for (std::uint32_t i = 0; i + 1 < q_; ++i) {
    exp_[i] = v;
    log_[v] = i;
    v = mul_poly(v, gen);
  }
}

std::uint32_t BaseField::add(std::uint32_t a, std::uint32_t b) const {
  if (p_ == 2) return a ^ b;
  if (e_ == 1) return static_cast<std::uint32_t>((std::uint64_t{a} + b) % p_);
  std::uint32_t r = 0, place = 1;
  while (a || b) {
    r += ((a % p_ + b % p_) % p_) * place;
    a /= p_;
    b /= p_;
    place *= p_;
  }
  return r;
}

std::uint32_t BaseField::neg(std::uint32_t a) const {
  if (p_ == 2) return a;
  if (e_ == 1) return a == 0 ? 0 : p_ - a;
  std::uint32_t r = 0, place = 1;
  while (a) {
    r += ((p_ - a % p_) % p_) * place;
    a /= p_;
    place *= p_;
  }
  return r;
}

std::uint32_t BaseField::sub(std::uint32_t a, std::uint32_t b) const { return add(a, neg(b)); }

std::uint32_t BaseField::mul_poly(std::uint32_t a, std::uint32_t b) const {
  std::vector<std::uint64_t> prod(2 * e_ - 1, 0);
  auto ra = residues(a), rb = residues(b);
  for (int i = 0; i < e_; ++i) {
    if (!ra[i]) continue;
    for (int j = 0; j < e_; ++j) prod[i + j] = (prod[i + j] + std::uint64_t{ra[i]} * rb[j]) % p_;
  }
  for (int k = 2 * e_ - 2; k >= e_; --k) {
    const std::uint64_t c = prod[k];
    if (!c) continue;
    for (int j = 0; j < e_; ++j) prod[k - e_ + j] = (prod[k - e_ + j] + (p_ - c) * g_[j]) % p_;
    prod[k] = 0;
  }
  std::uint32_t r = 0, place = 1;
  for (int i = 0; i < e_; ++i, place *= p_) r += static_cast<std::uint32_t>(prod[i]) * place;
  return r;
}

std::uint32_t BaseField::mul(std::uint32_t a, std::uint32_t b) const {
  if (a == 0 || b == 0) return 0;
  if (e_ == 1) return static_cast<std::uint32_t>(std::uint64_t{a} * b % p_);
  if (p_ == 2 && (a == 1 || b == 1)) return a == 1 ? b : a;
  const std::uint32_t s = log_[a] + log_[b];
  return exp_[s >= q_ - 1 ? s - (q_ - 1) : s];
}

std::uint32_t BaseField::pow(std::uint32_t a, std::uint64_t n) const {
  std::uint32_t r = 1;
  for (; n; n >>= 1) {
    if (n & 1) r = mul(r, a);
    a = mul(a, a);
  }
  return r;
}

std::uint32_t BaseField::inv(std::uint32_t a) const {
  if (a == 0) throw std::domain_error("inverse of zero");
  if (e_ == 1) return pow(a, p_ - 2);
  return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
}

std::vector<std::uint32_t> BaseField::residues(std::uint32_t a) const {
  std::vector<std::uint32_t> r(e_);
  for (int i = 0; i < e_; ++i) {
    r[i] = a % p_;
    a /= p_;
  }
  return r;
}

std::uint32_t BaseField::from_residues(std::span<const std::uint32_t> r) const {
  if (static_cast<int>(r.size()) != e_) throw std::invalid_argument("wrong number of residues");
  std::uint32_t v = 0, place = 1;
  for (int i = 0; i < e_; ++i, place *= p_) {
    if (r[i] >= p_) throw std::invalid_argument("residue out of range");
    v += r[i] * place;
  }
  return v;
}

// ---------------------------------------------------------------------------
// Polynomials over a base field

namespace poly {

CoeffPoly trim(CoeffPoly a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

CoeffPoly mod(const BaseField& f, CoeffPoly a, const CoeffPoly& modulus) {
  a = trim(std::move(a));
  const auto n = modulus.size();
  if (n == 0) throw std::domain_error("polynomial division by zero");
  const std::uint32_t lead_inv = f.inv(modulus.back());
  while (a.size() >= n) {
    const std::uint32_t c = f.mul(a.back(), lead_inv);
    const std::size_t shift = a.size() - n;
    for (std::size_t j = 0; j < n; ++j) a[shift + j] = f.sub(a[shift + j], f.mul(c, modulus[j]));
    a = trim(std::move(a));
  }
  return a;
}

CoeffPoly mulmod(const BaseField& f, const CoeffPoly& a, const CoeffPoly& b, const CoeffPoly& modulus) {
  if (a.empty() || b.empty()) return {};
  CoeffPoly prod(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; j < b.size(); ++j) prod[i + j] = f.add(prod[i + j], f.mul(a[i], b[j]));
  }
  return mod(f, std::move(prod), modulus);
}

CoeffPoly powmod(const BaseField& f, CoeffPoly a, std::uint64_t n, const CoeffPoly& modulus) {
  CoeffPoly r = mod(f, {1}, modulus);
  a = mod(f, std::move(a), modulus);
  for (; n; n >>= 1) {
    if (n & 1) r = mulmod(f, r, a, modulus);
    if (n > 1) a = mulmod(f, a, a, modulus);
  }
  return r;
}

CoeffPoly gcd(const BaseField& f, CoeffPoly a, CoeffPoly b) {
  a = trim(std::move(a));
  b = trim(std::move(b));
  while (!b.empty()) {
    CoeffPoly r = mod(f, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    const std::uint32_t li = f.inv(a.back());
    for (auto& c : a) c = f.mul(c, li);
  }
  return a;
}

bool is_irreducible(const BaseField& f, const CoeffPoly& monic) {
  const int n = static_cast<int>(monic.size()) - 1;
  if (n < 1 || monic.back() != 1) throw std::invalid_argument("expected a monic polynomial of degree >= 1");
  if (n == 1) return true;
  if (monic[0] == 0) return false;
  const CoeffPoly x = {0, 1};
  std::vector<CoeffPoly> frob(n + 1);  // x^{q^k} mod monic
  frob[0] = x;
  for (int k = 1; k <= n; ++k) frob[k] = powmod(f, frob[k - 1], f.q(), monic);
  if (trim(frob[n]) != x) return false;
  for (auto l : prime_factors(static_cast<std::uint64_t>(n))) {
    CoeffPoly d = frob[n / l];
    d.resize(std::max<std::size_t>(d.size(), 2), 0);
    d[1] = f.sub(d[1], 1);
    if (gcd(f, d, monic).size() != 1) return false;
  }
  return true;
}

CoeffPoly smallest_irreducible(const BaseField& f, int degree) {
  if (degree < 1) throw std::invalid_argument("degree must be positive");
  const std::uint64_t count = checked_pow(f.q(), degree, kMaxFieldSize);
  for (std::uint64_t c = 0; c < count; ++c) {
    CoeffPoly cand(degree + 1);
    std::uint64_t v = c;
    for (int i = 0; i < degree; ++i) {
      cand[i] = static_cast<std::uint32_t>(v % f.q());
      v /= f.q();
    }
    cand[degree] = 1;
    if (degree > 1 && cand[0] == 0) continue;
    if (is_irreducible(f, cand)) return cand;
  }
  throw std::logic_error("no irreducible polynomial found");
}

}  // namespace poly

// ---------------------------------------------------------------------------
// FieldCtx

FieldPtr FieldCtx::make(std::uint32_t p, int e, int m) {
  if (!is_prime(p)) throw std::invalid_argument("p must be prime");
  if (e < 1) throw std::invalid_argument("e must be >= 1");
  if (m < 2) throw std::invalid_argument("m must be >= 2");
  const std::uint64_t q = checked_pow(p, e, e == 1 ? (1ULL << 31) : kLogTableLimit);
  checked_pow(q, m, kMaxFieldSize);
  CoeffPoly g = {0, 1};
  if (e > 1) g = poly::smallest_irreducible(BaseField(p, {0, 1}), e);
  BaseField base(p, g);
  CoeffPoly h = poly::smallest_irreducible(base, m);
  return std::make_shared<const FieldCtx>(std::move(base), std::move(h));
}

FieldPtr FieldCtx::make(std::uint32_t p, CoeffPoly g, CoeffPoly h) {
  BaseField base(p, std::move(g));
  if (h.size() < 3 || h.back() != 1) throw std::invalid_argument("h must be monic of degree >= 2");
  for (auto c : h) {
    if (c >= base.q()) throw std::invalid_argument("h coefficient out of range");
  }
  if (!poly::is_irreducible(base, h)) throw std::invalid_argument("h is not irreducible over F_q");
  return std::make_shared<const FieldCtx>(std::move(base), std::move(h));
}

FieldCtx::FieldCtx(BaseField base, CoeffPoly h) : base_(std::move(base)), h_(std::move(h)) {
  m_ = static_cast<int>(h_.size()) - 1;
  init();
}

void FieldCtx::init() {
  qpow_.resize(m_ + 1);
  qpow_[0] = 1;
  for (int j = 1; j <= m_; ++j) qpow_[j] = checked_pow(q(), j, kMaxFieldSize);
  size_ = qpow_[m_];

  const auto factors = prime_factors(size_ - 1);
  for (std::uint64_t c = 2; c < size_; ++c) {
    bool full = true;
    for (auto f : factors) {
      if (pow(Elt{c}, (size_ - 1) / f) == one()) {
        full = false;
        break;
      }
    }
    if (full) {
      alpha_ = Elt{c};
      break;
    }
  }
  if (alpha_.is_zero()) throw std::logic_error("no primitive element found");

  if (size_ <= kLogTableLimit) {
    std::vector<std::uint32_t> ex(size_ - 1), lg(size_, 0);
    Elt v = one();
    for (std::uint64_t i = 0; i + 1 < size_; ++i) {
      ex[i] = static_cast<std::uint32_t>(v.code);
      lg[v.code] = static_cast<std::uint32_t>(i);
      v = mul_reference(v, alpha_);
    }
    exp_ = std::move(ex);
    log_ = std::move(lg);
  }

  frob_images_.resize(m_);
  for (int j = 0; j < m_; ++j) frob_images_[j] = pow(Elt{qpow_[j]}, q());
  basis_trace_.resize(m_);
  for (int j = 0; j < m_; ++j) {
    Elt acc = zero(), y = Elt{qpow_[j]};
    for (int i = 0; i < m_; ++i) {
      acc = add(acc, y);
      y = frobenius(y, 1);
    }
    if (!is_scalar(acc)) throw std::logic_error("trace did not land in F_q");
    basis_trace_[j] = static_cast<std::uint32_t>(acc.code);
  }
}

double FieldCtx::log2_q() const { return std::log2(static_cast<double>(q())); }

std::string FieldCtx::describe() const {
  std::ostringstream os;
  os << "GF(" << p() << "^" << e() * m_ << ") as degree-" << m_ << " extension of GF(" << q() << ")";
  return os.str();
}

Elt FieldCtx::add(Elt a, Elt b) const {
  if (p() == 2) return Elt{a.code ^ b.code};
  const std::uint64_t pp = p();
  std::uint64_t x = a.code, y = b.code, r = 0, place = 1;
  while (x || y) {
    r += ((x % pp + y % pp) % pp) * place;
    x /= pp;
    y /= pp;
    place *= pp;
  }
  return Elt{r};
}

Elt FieldCtx::neg(Elt a) const {
  if (p() == 2) return a;
  const std::uint64_t pp = p();
  std::uint64_t x = a.code, r = 0, place = 1;
  while (x) {
    r += ((pp - x % pp) % pp) * place;
    x /= pp;
    place *= pp;
  }
  return Elt{r};
}

Elt FieldCtx::sub(Elt a, Elt b) const { return add(a, neg(b)); }

Elt FieldCtx::mul_reference(Elt a, Elt b) const {
  if (a.is_zero() || b.is_zero()) return zero();
  const auto ca = coords(a), cb = coords(b);
  std::vector<std::uint32_t> prod(2 * m_ - 1, 0);
  for (int i = 0; i < m_; ++i) {
    if (!ca[i]) continue;
    for (int j = 0; j < m_; ++j) prod[i + j] = base_.add(prod[i + j], base_.mul(ca[i], cb[j]));
  }
  for (int k = 2 * m_ - 2; k >= m_; --k) {
    const std::uint32_t c = prod[k];
    if (!c) continue;
    for (int j = 0; j < m_; ++j) prod[k - m_ + j] = base_.sub(prod[k - m_ + j], base_.mul(c, h_[j]));
    prod[k] = 0;
  }
  return from_coords(std::span<const std::uint32_t>(prod.data(), m_));
}

Elt FieldCtx::mul(Elt a, Elt b) const {
  if (a.is_zero() || b.is_zero()) return zero();
  if (is_scalar(a) && is_scalar(b)) return Elt{base_.mul(static_cast<std::uint32_t>(a.code), static_cast<std::uint32_t>(b.code))};
  if (!exp_.empty()) {
    const std::uint64_t s = std::uint64_t{log_[a.code]} + log_[b.code];
    return Elt{exp_[s >= size_ - 1 ? s - (size_ - 1) : s]};
  }
  if (is_scalar(a)) return scale(static_cast<std::uint32_t>(a.code), b);
  if (is_scalar(b)) return scale(static_cast<std::uint32_t>(b.code), a);
  return mul_reference(a, b);
}

Elt FieldCtx::scale(std::uint32_t c, Elt a) const {
  if (c == 0 || a.is_zero()) return zero();
  if (c == 1) return a;
  std::uint64_t r = 0, x = a.code;
  for (int j = 0; j < m_ && x; ++j) {
    r += std::uint64_t{base_.mul(c, static_cast<std::uint32_t>(x % q()))} * qpow_[j];
    x /= q();
  }
  return Elt{r};
}

Elt FieldCtx::pow(Elt a, std::uint64_t n) const {
  if (!exp_.empty()) {
    if (n == 0) return one();
    if (a.is_zero()) return zero();
    const auto e = static_cast<unsigned __int128>(log_[a.code]) * (n % (size_ - 1));
    return Elt{exp_[static_cast<std::uint64_t>(e % (size_ - 1))]};
  }
  Elt r = one();
  for (; n; n >>= 1) {
    if (n & 1) r = mul(r, a);
    a = mul(a, a);
  }
  return r;
}

Elt FieldCtx::inv(Elt a) const {
  if (a.is_zero()) throw std::domain_error("inverse of zero");
  if (!exp_.empty()) return Elt{exp_[(size_ - 1 - log_[a.code]) % (size_ - 1)]};
  return pow(a, size_ - 2);
}

Elt FieldCtx::frobenius(Elt a, int i) const {
  if (i < 0) throw std::invalid_argument("negative Frobenius power");
  i %= m_;
  if (i == 0 || a.is_zero()) return a;
  if (!exp_.empty()) {
    const auto e = static_cast<unsigned __int128>(log_[a.code]) * (qpow_[i] % (size_ - 1));
    return Elt{exp_[static_cast<std::uint64_t>(e % (size_ - 1))]};
  }
  for (int t = 0; t < i; ++t) {
    Elt r = zero();
    for (int j = 0; j < m_; ++j) {
      const std::uint32_t c = coord(a, j);
      if (c) r = add(r, scale(c, frob_images_[j]));
    }
    a = r;
  }
  return a;
}

std::uint32_t FieldCtx::trace_scalar(Elt a) const {
  std::uint32_t t = 0;
  for (int j = 0; j < m_; ++j) {
    const std::uint32_t c = coord(a, j);
    if (c && basis_trace_[j]) t = base_.add(t, base_.mul(c, basis_trace_[j]));
  }
  return t;
}

Elt FieldCtx::trace(Elt a) const { return Elt{trace_scalar(a)}; }

Elt FieldCtx::relative_trace(Elt a, int step, int terms) const {
  Elt acc = zero();
  for (int i = 0; i < terms; ++i) acc = add(acc, frobenius(a, (step * i) % m_));
  return acc;
}

std::uint32_t FieldCtx::coord(Elt a, int j) const { return static_cast<std::uint32_t>((a.code / qpow_[j]) % q()); }

std::vector<std::uint32_t> FieldCtx::coords(Elt a) const {
  std::vector<std::uint32_t> c(m_);
  std::uint64_t x = a.code;
  for (int j = 0; j < m_; ++j) {
    c[j] = static_cast<std::uint32_t>(x % q());
    x /= q();
  }
  return c;
}

Elt FieldCtx::from_coords(std::span<const std::uint32_t> c) const {
  if (static_cast<int>(c.size()) != m_) throw std::invalid_argument("wrong number of coordinates");
  std::uint64_t r = 0;
  for (int j = 0; j < m_; ++j) {
    if (c[j] >= q()) throw std::invalid_argument("coordinate out of range");
    r += c[j] * qpow_[j];
  }
  return Elt{r};
}

std::vector<std::vector<std::uint32_t>> FieldCtx::residues(Elt a) const {
  std::vector<std::vector<std::uint32_t>> r;
  r.reserve(m_);
  for (auto c : coords(a)) r.push_back(base_.residues(c));
  return r;
}

Elt FieldCtx::from_residues(const std::vector<std::vector<std::uint32_t>>& r) const {
  if (static_cast<int>(r.size()) != m_) throw std::invalid_argument("wrong number of coefficients");
  std::vector<std::uint32_t> c(m_);
  for (int j = 0; j < m_; ++j) c[j] = base_.from_residues(r[j]);
  return from_coords(c);
}

Elt FieldCtx::random(Rng& rng) const { return Elt{rng.uniform(size_)}; }

Elt FieldCtx::random_nonzero(Rng& rng) const { return Elt{1 + rng.uniform(size_ - 1)}; }

}  // namespace rsrepair
