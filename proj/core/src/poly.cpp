#include "preproj/poly.hpp"

#include <algorithm>
#include <numeric>

#include "preproj/error.hpp"

namespace preproj {

Poly::Poly(Field field) : field_(std::move(field)) {}

Poly::Poly(Field field, std::vector<Scalar> coeffs) : field_(std::move(field)), coeffs_(std::move(coeffs)) { trim(); }

Poly Poly::constant(const Field& field, const Scalar& c) { return Poly(field, {c}); }

Poly Poly::x(const Field& field) { return Poly(field, {field.zero(), field.one()}); }

Poly Poly::monomial(const Field& field, const Scalar& c, std::size_t degree) {
  std::vector<Scalar> cs(degree + 1, field.zero());
  cs[degree] = c;
  return Poly(field, std::move(cs));
}

void Poly::trim() {
  while (!coeffs_.empty() && field_.is_zero(coeffs_.back())) coeffs_.pop_back();
}

bool Poly::is_one() const { return coeffs_.size() == 1 && field_.is_one(coeffs_[0]); }

Scalar Poly::coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : field_.zero(); }

Scalar Poly::lead() const { return coeffs_.empty() ? field_.zero() : coeffs_.back(); }

Poly Poly::monic() const {
  if (is_zero()) return *this;
  const Scalar li = field_.inv(lead());
  std::vector<Scalar> cs;
  cs.reserve(coeffs_.size());
  for (const auto& c : coeffs_) cs.push_back(field_.mul(c, li));
  return Poly(field_, std::move(cs));
}

Poly Poly::derivative() const {
  std::vector<Scalar> cs;
  for (std::size_t i = 1; i < coeffs_.size(); ++i) {
    cs.push_back(field_.mul(field_.from_int(static_cast<std::int64_t>(i)), coeffs_[i]));
  }
  return Poly(field_, std::move(cs));
}

Scalar Poly::eval(const Scalar& at) const {
  Scalar acc = field_.zero();
  for (std::size_t i = coeffs_.size(); i-- > 0;) acc = field_.add(field_.mul(acc, at), coeffs_[i]);
  return acc;
}

Poly operator+(const Poly& a, const Poly& b) {
  const Field& f = a.field_;
  std::vector<Scalar> cs(std::max(a.coeffs_.size(), b.coeffs_.size()), f.zero());
  for (std::size_t i = 0; i < cs.size(); ++i) cs[i] = f.add(a.coeff(i), b.coeff(i));
  return Poly(f, std::move(cs));
}

Poly operator-(const Poly& a, const Poly& b) {
  const Field& f = a.field_;
  std::vector<Scalar> cs(std::max(a.coeffs_.size(), b.coeffs_.size()), f.zero());
  for (std::size_t i = 0; i < cs.size(); ++i) cs[i] = f.sub(a.coeff(i), b.coeff(i));
  return Poly(f, std::move(cs));
}

Poly operator*(const Poly& a, const Poly& b) {
  const Field& f = a.field_;
  if (a.is_zero() || b.is_zero()) return Poly(f);
  std::vector<Scalar> cs(a.coeffs_.size() + b.coeffs_.size() - 1, f.zero());
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (f.is_zero(a.coeffs_[i])) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
      cs[i + j] = f.add(cs[i + j], f.mul(a.coeffs_[i], b.coeffs_[j]));
    }
  }
  return Poly(f, std::move(cs));
}

bool operator==(const Poly& a, const Poly& b) { return a.field_ == b.field_ && a.coeffs_ == b.coeffs_; }

DivMod divmod(const Poly& a, const Poly& b) {
  const Field& f = a.field();
  require(!b.is_zero(), ErrorCode::AssertionFailed, "polynomial division by zero");
  if (a.degree() < b.degree()) return {Poly(f), a};
  std::vector<Scalar> rem = a.coeffs();
  const std::size_t db = static_cast<std::size_t>(b.degree());
  std::vector<Scalar> quo(rem.size() - db, f.zero());
  const Scalar li = f.inv(b.lead());
  for (std::size_t i = rem.size(); i-- > db;) {
    if (f.is_zero(rem[i])) continue;
    const Scalar c = f.mul(rem[i], li);
    quo[i - db] = c;
    for (std::size_t j = 0; j <= db; ++j) rem[i - db + j] = f.sub(rem[i - db + j], f.mul(c, b.coeffs()[j]));
  }
  rem.resize(db);
  return {Poly(f, std::move(quo)), Poly(f, std::move(rem))};
}

Poly gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

Poly powmod(const Poly& base, std::uint64_t exponent, const Poly& modulus) {
  const Field& f = base.field();
  Poly result = Poly::constant(f, f.one()) % modulus;
  Poly b = base % modulus;
  while (exponent) {
    if (exponent & 1) result = (result * b) % modulus;
    exponent >>= 1;
    if (exponent) b = (b * b) % modulus;
  }
  return result;
}

Poly map_coefficients(const Poly& f, const Embedding& embed) {
  std::vector<Scalar> cs;
  cs.reserve(f.coeffs().size());
  for (const auto& c : f.coeffs()) cs.push_back(embed(c));
  return Poly(embed.target(), std::move(cs));
}

namespace {

bool poly_less(const Poly& a, const Poly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  const Field& f = a.field();
  for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
    if (f.less(a.coeffs()[i], b.coeffs()[i])) return true;
    if (f.less(b.coeffs()[i], a.coeffs()[i])) return false;
  }
  return false;
}

// p-th root of a polynomial whose derivative vanishes (all exponents are
// multiples of p). Coefficient roots use a^(1/p) = a^(p^(k-1)).
Poly pth_root(const Poly& f) {
  const Field& F = f.field();
  const std::uint64_t p = F.characteristic();
  std::uint64_t e = 1;
  for (unsigned i = 1; i < F.degree(); ++i) e *= p;
  std::vector<Scalar> cs;
  for (std::size_t i = 0; i < f.coeffs().size(); i += p) cs.push_back(F.pow(f.coeffs()[i], e));
  return Poly(F, std::move(cs));
}

// Square-free factorisation: pairs (square-free part, multiplicity).
std::vector<Factor> square_free(const Poly& f) {
  const Field& F = f.field();
  const std::uint64_t p = F.characteristic();
  std::vector<Factor> out;
  Poly d = f.derivative();
  if (d.is_zero()) {
    for (auto& fac : square_free(pth_root(f))) out.push_back({fac.poly, fac.multiplicity * static_cast<int>(p)});
    return out;
  }
  Poly c = gcd(f, d);
  Poly w = f.monic() / c;
  int i = 1;
  while (!w.is_one()) {
    Poly y = gcd(w, c);
    Poly fac = w / y;
    if (!fac.is_one()) out.push_back({fac.monic(), i});
    w = y;
    c = c / y;
    ++i;
  }
  if (!c.is_one()) {
    for (auto& fac : square_free(pth_root(c.monic()))) out.push_back({fac.poly, fac.multiplicity * static_cast<int>(p)});
  }
  return out;
}

// Distinct-degree factorisation of a monic square-free polynomial.
std::vector<std::pair<Poly, unsigned>> distinct_degree(const Poly& f) {
  const Field& F = f.field();
  const std::uint64_t q = F.order();
  std::vector<std::pair<Poly, unsigned>> out;
  Poly rest = f;
  Poly h = Poly::x(F) % rest;
  const Poly x = Poly::x(F);
  for (unsigned i = 1; rest.degree() >= 2 * static_cast<int>(i); ++i) {
    h = powmod(h, q, rest);
    Poly g = gcd(rest, h - x);
    if (!g.is_one()) {
      out.emplace_back(g, i);
      rest = rest / g;
      h = h % rest;
    }
  }
  if (rest.degree() > 0) out.emplace_back(rest.monic(), static_cast<unsigned>(rest.degree()));
  return out;
}

// Equal-degree splitting (Cantor-Zassenhaus) of a monic square-free product
// of irreducibles of degree d.
std::vector<Poly> equal_degree(const Poly& f, unsigned d, Rng& rng) {
  const Field& F = f.field();
  const std::uint64_t q = F.order();
  const std::uint64_t p = F.characteristic();
  const std::size_t count = static_cast<std::size_t>(f.degree()) / d;
  std::vector<Poly> parts{f};
  if (count == 1) return parts;
  const Poly one = Poly::constant(F, F.one());
  while (parts.size() < count) {
    std::vector<Scalar> cs;
    for (int i = 0; i < f.degree(); ++i) cs.push_back(F.random(rng));
    Poly h(F, std::move(cs));
    if (h.degree() < 1) continue;
    Poly g(F);
    if (p == 2) {
      // Absolute trace to GF(2): sum of h^(2^i), i < degree(F) * d.
      const unsigned steps = F.degree() * d;
      Poly t = h % f, acc = t;
      for (unsigned i = 1; i < steps; ++i) {
        t = (t * t) % f;
        acc = acc + t;
      }
      g = acc;
    } else {
      // h^((q^d - 1)/2) = (h^(1 + q + ... + q^(d-1)))^((q-1)/2)
      Poly t = h % f, norm = t;
      for (unsigned i = 1; i < d; ++i) {
        t = powmod(t, q, f);
        norm = (norm * t) % f;
      }
      g = powmod(norm, (q - 1) / 2, f) - one;
    }
    std::vector<Poly> next;
    for (auto& u : parts) {
      if (u.degree() == static_cast<int>(d)) {
        next.push_back(u);
        continue;
      }
      Poly s = gcd(u, g % u);
      if (!s.is_one() && s.degree() < u.degree()) {
        next.push_back(s);
        next.push_back((u / s).monic());
      } else {
        next.push_back(u);
      }
    }
    parts = std::move(next);
  }
  return parts;
}

mpz_class integer_content_lcm(const std::vector<Scalar>& cs) {
  mpz_class l = 1;
  for (const auto& c : cs) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.rational().get_den_mpz_t());
  return l;
}

// Positive divisors of |n| (n != 0), by trial division with a Pollard-rho
// fallback for large cofactors.
void factor_integer(mpz_class n, std::vector<mpz_class>& primes);

mpz_class pollard_rho(const mpz_class& n) {
  if (mpz_even_p(n.get_mpz_t())) return 2;
  for (unsigned long c = 1;; ++c) {
    mpz_class x = 2, y = 2, d = 1;
    auto step = [&](mpz_class& v) {
      v = (v * v + c) % n;
    };
    while (d == 1) {
      step(x);
      step(y);
      step(y);
      mpz_class diff = x - y;
      diff = abs(diff);
      mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
    }
    if (d != n) return d;
  }
}

void factor_integer(mpz_class n, std::vector<mpz_class>& primes) {
  n = abs(n);
  if (n <= 1) return;
  for (unsigned long d = 2; d < 100000; ++d) {
    if (mpz_divisible_ui_p(n.get_mpz_t(), d)) {
      primes.push_back(d);
      while (mpz_divisible_ui_p(n.get_mpz_t(), d)) mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), d);
    }
    if (n == 1) return;
    if (mpz_class(d) * d > n) break;
  }
  if (n == 1) return;
  if (mpz_probab_prime_p(n.get_mpz_t(), 30)) {
    primes.push_back(n);
    return;
  }
  mpz_class d = pollard_rho(n);
  factor_integer(d, primes);
  factor_integer(n / d, primes);
}

std::vector<mpz_class> divisors(const mpz_class& n) {
  std::vector<mpz_class> primes;
  factor_integer(n, primes);
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
  std::vector<mpz_class> divs{1};
  mpz_class m = abs(n);
  for (const auto& pr : primes) {
    int e = 0;
    while (mpz_divisible_p(m.get_mpz_t(), pr.get_mpz_t())) {
      m /= pr;
      ++e;
    }
    const std::size_t base = divs.size();
    mpz_class pk = 1;
    for (int i = 1; i <= e; ++i) {
      pk *= pr;
      for (std::size_t j = 0; j < base; ++j) divs.push_back(divs[j] * pk);
    }
  }
  return divs;
}

std::vector<std::pair<Scalar, int>> rational_roots(const Poly& f) {
  const Field& F = f.field();
  std::vector<std::pair<Scalar, int>> out;
  Poly g = f;
  // Zero roots.
  int zero_mult = 0;
  while (g.degree() > 0 && F.is_zero(g.coeff(0))) {
    g = g / Poly::x(F);
    ++zero_mult;
  }
  if (zero_mult) out.emplace_back(F.zero(), zero_mult);
  if (g.degree() <= 0) return out;
  const mpz_class l = integer_content_lcm(g.coeffs());
  const mpz_class a0 = mpq_class(g.coeff(0).rational() * l).get_num();
  const mpz_class an = mpq_class(g.lead().rational() * l).get_num();
  const auto num_divs = divisors(a0);
  const auto den_divs = divisors(an);
  std::vector<mpq_class> candidates;
  for (const auto& a : num_divs) {
    for (const auto& b : den_divs) {
      mpq_class r(a, b);
      r.canonicalize();
      candidates.push_back(r);
      candidates.push_back(-r);
    }
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  for (const auto& r : candidates) {
    const Scalar s(r);
    int mult = 0;
    const Poly lin(F, {F.neg(s), F.one()});
    while (g.degree() > 0 && F.is_zero(g.eval(s))) {
      g = g / lin;
      ++mult;
    }
    if (mult) out.emplace_back(s, mult);
  }
  std::sort(out.begin(), out.end(), [&](const auto& x, const auto& y) { return F.less(x.first, y.first); });
  return out;
}

}  // namespace

std::vector<Factor> factor(const Poly& f) {
  const Field& F = f.field();
  require(F.is_finite(), ErrorCode::RootsUnavailable, "factorisation is implemented over finite fields only");
  std::vector<Factor> out;
  if (f.degree() <= 0) return out;
  Rng rng(0x5eedf00dULL + static_cast<std::uint64_t>(f.degree()));
  for (const auto& sf : square_free(f.monic())) {
    for (const auto& [part, d] : distinct_degree(sf.poly)) {
      for (auto& irr : equal_degree(part, d, rng)) out.push_back({irr.monic(), sf.multiplicity});
    }
  }
  std::sort(out.begin(), out.end(), [](const Factor& a, const Factor& b) { return poly_less(a.poly, b.poly); });
  // Merge repeated irreducibles coming from different square-free layers.
  std::vector<Factor> merged;
  for (auto& fac : out) {
    if (!merged.empty() && merged.back().poly == fac.poly) {
      merged.back().multiplicity += fac.multiplicity;
    } else {
      merged.push_back(fac);
    }
  }
  return merged;
}

bool is_irreducible(const Poly& f) {
  const Field& F = f.field();
  const int n = f.degree();
  if (n <= 0) return false;
  if (n == 1) return true;
  // Rabin: x^(q^n) = x mod f, and gcd(x^(q^(n/r)) - x, f) = 1 for primes r | n.
  const std::uint64_t q = F.order();
  const Poly g = f.monic();
  const Poly x = Poly::x(F);
  std::vector<Poly> frob{x % g};  // frob[i] = x^(q^i) mod g
  for (int i = 1; i <= n; ++i) frob.push_back(powmod(frob.back(), q, g));
  if (!((frob[static_cast<std::size_t>(n)] - x) % g).is_zero()) return false;
  int m = n;
  for (int r = 2; r <= m; ++r) {
    if (m % r) continue;
    while (m % r == 0) m /= r;
    if (!gcd(g, frob[static_cast<std::size_t>(n / r)] - x).is_one()) return false;
  }
  return true;
}

unsigned splitting_degree(const Poly& f) {
  unsigned l = 1;
  for (const auto& fac : factor(f)) l = std::lcm(l, static_cast<unsigned>(fac.poly.degree()));
  return l;
}

std::vector<std::pair<Scalar, int>> roots(const Poly& f) {
  const Field& F = f.field();
  if (f.degree() <= 0) return {};
  if (!F.is_finite()) return rational_roots(f);
  std::vector<std::pair<Scalar, int>> out;
  // Only linear factors matter: isolate the split part first.
  const Poly g = f.monic();
  Rng rng(0x900dULL + static_cast<std::uint64_t>(g.degree()));
  for (const auto& sf : square_free(g)) {
    const Poly x = Poly::x(F);
    Poly split = gcd(sf.poly, powmod(x, F.order(), sf.poly) - x);
    if (split.degree() <= 0) continue;
    for (auto& lin : equal_degree(split, 1, rng)) {
      out.emplace_back(F.neg(lin.monic().coeff(0)), sf.multiplicity);
    }
  }
  std::sort(out.begin(), out.end(), [&](const auto& a, const auto& b) { return F.less(a.first, b.first); });
  std::vector<std::pair<Scalar, int>> merged;
  for (auto& r : out) {
    if (!merged.empty() && merged.back().first == r.first) {
      merged.back().second += r.second;
    } else {
      merged.push_back(r);
    }
  }
  return merged;
}

}  // namespace preproj
