#include "preproj/field.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <mutex>
#include <sstream>

#include "preproj/error.hpp"
#include "preproj/poly.hpp"

namespace preproj {

namespace {

constexpr std::uint64_t kTableLimit = 1u << 18;
constexpr unsigned kMaxDegree = 64;

__extension__ typedef unsigned __int128 u128;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % p);
}

std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

std::vector<std::uint64_t> prime_divisors(std::uint64_t n) {
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

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % d == 0) return n == d;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = powmod_u64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

// Arithmetic core, shared between all handles with the same presentation.
struct Field::Core {
  FieldKind kind = FieldKind::Rationals;
  std::uint64_t p = 0;
  unsigned k = 1;
  std::uint64_t q = 0;
  std::vector<std::uint64_t> modulus;
  std::vector<std::uint64_t> pow_p;  // p^0 .. p^k
  // Log tables for small extension fields.
  std::vector<std::uint32_t> exp;  // length 2(q-1)
  std::vector<std::uint32_t> log;  // length q, log[0] unused

  using Digits = std::array<std::uint64_t, kMaxDegree>;

  void decode(std::uint64_t a, Digits& d) const {
    if (p == 2) {
      for (unsigned i = 0; i < k; ++i) d[i] = (a >> i) & 1;
      return;
    }
    for (unsigned i = 0; i < k; ++i) {
      d[i] = a % p;
      a /= p;
    }
  }

  std::uint64_t encode(const Digits& d) const {
    std::uint64_t a = 0;
    for (unsigned i = k; i-- > 0;) a = a * p + d[i];
    return a;
  }

  std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
    if (k == 1) {
      std::uint64_t s = a + b;
      return s >= p ? s - p : s;
    }
    if (p == 2) return a ^ b;
    std::uint64_t r = 0;
    for (unsigned i = 0; i < k; ++i) {
      std::uint64_t s = a % p + b % p;
      if (s >= p) s -= p;
      r += s * pow_p[i];
      a /= p;
      b /= p;
    }
    return r;
  }

  std::uint64_t neg(std::uint64_t a) const {
    if (k == 1) return a == 0 ? 0 : p - a;
    if (p == 2) return a;
    std::uint64_t r = 0;
    for (unsigned i = 0; i < k; ++i) {
      std::uint64_t d = a % p;
      r += (d == 0 ? 0 : p - d) * pow_p[i];
      a /= p;
    }
    return r;
  }

  std::uint64_t mul_slow(std::uint64_t a, std::uint64_t b) const {
    Digits da{}, db{};
    decode(a, da);
    decode(b, db);
    std::array<std::uint64_t, 2 * kMaxDegree> prod{};
    for (unsigned i = 0; i < k; ++i) {
      if (da[i] == 0) continue;
      for (unsigned j = 0; j < k; ++j) {
        prod[i + j] = (prod[i + j] + mulmod(da[i], db[j], p)) % p;
      }
    }
    for (unsigned i = 2 * k - 1; i-- > k;) {
      const std::uint64_t c = prod[i];
      if (c == 0) continue;
      prod[i] = 0;
      for (unsigned j = 0; j < k; ++j) {
        // subtract c * m_j x^(i-k+j)
        const std::uint64_t t = mulmod(c, modulus[j], p);
        prod[i - k + j] = (prod[i - k + j] + p - t) % p;
      }
    }
    Digits out{};
    for (unsigned i = 0; i < k; ++i) out[i] = prod[i];
    return encode(out);
  }

  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
    if (k == 1) return mulmod(a, b, p);
    if (a == 0 || b == 0) return 0;
    if (!exp.empty()) return exp[log[a] + log[b]];
    return mul_slow(a, b);
  }

  std::uint64_t pow(std::uint64_t a, std::uint64_t e) const {
    if (k == 1) return powmod_u64(a, e, p);
    std::uint64_t r = 1;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }

  std::uint64_t inv(std::uint64_t a) const {
    if (a == 0) throw Error(ErrorCode::AssertionFailed, "division by zero in " + std::to_string(q) + "-element field");
    if (k == 1) return powmod_u64(a, p - 2, p);
    if (!exp.empty()) return exp[(q - 1) - log[a]];
    return pow(a, q - 2);
  }

  void build_tables() {
    if (k == 1 || q > kTableLimit) return;
    const auto divisors = prime_divisors(q - 1);
    std::uint64_t g = 0;
    for (std::uint64_t c = 2; c < q; ++c) {
      bool primitive = true;
      for (auto r : divisors) {
        std::uint64_t e = (q - 1) / r, acc = 1, base = c;
        while (e) {
          if (e & 1) acc = mul_slow(acc, base);
          base = mul_slow(base, base);
          e >>= 1;
        }
        if (acc == 1) {
          primitive = false;
          break;
        }
      }
      if (primitive) {
        g = c;
        break;
      }
    }
    exp.assign(2 * (q - 1), 0);
    log.assign(q, 0);
    std::uint64_t cur = 1;
    for (std::uint64_t i = 0; i < q - 1; ++i) {
      exp[i] = static_cast<std::uint32_t>(cur);
      exp[i + q - 1] = static_cast<std::uint32_t>(cur);
      log[cur] = static_cast<std::uint32_t>(i);
      cur = mul_slow(cur, g);
    }
  }
};

struct Field::Lineage {
  Field parent;
  Scalar generator_image;
};

namespace {

std::mutex& cache_mutex() {
  static std::mutex m;
  return m;
}

std::map<std::pair<std::uint64_t, std::vector<std::uint64_t>>, std::weak_ptr<const Field::Core>>& core_cache() {
  static std::map<std::pair<std::uint64_t, std::vector<std::uint64_t>>, std::weak_ptr<const Field::Core>> cache;
  return cache;
}

std::map<std::pair<std::uint64_t, unsigned>, std::vector<std::uint64_t>>& modulus_cache() {
  static std::map<std::pair<std::uint64_t, unsigned>, std::vector<std::uint64_t>> cache;
  return cache;
}

std::shared_ptr<const Field::Core> rational_core() {
  static const auto core = [] {
    auto c = std::make_shared<Field::Core>();
    c->kind = FieldKind::Rationals;
    return std::shared_ptr<const Field::Core>(c);
  }();
  return core;
}

std::shared_ptr<const Field::Core> finite_core(std::uint64_t p, std::vector<std::uint64_t> modulus) {
  const unsigned k = modulus.empty() ? 1 : static_cast<unsigned>(modulus.size() - 1);
  auto key = std::make_pair(p, modulus);
  {
    std::lock_guard lock(cache_mutex());
    auto it = core_cache().find(key);
    if (it != core_cache().end()) {
      if (auto live = it->second.lock()) return live;
    }
  }
  auto core = std::make_shared<Field::Core>();
  core->kind = FieldKind::Finite;
  core->p = p;
  core->k = k;
  core->modulus = std::move(modulus);
  core->pow_p.assign(k + 1, 1);
  for (unsigned i = 1; i <= k; ++i) {
    require(core->pow_p[i - 1] <= (std::uint64_t{1} << 62) / p, ErrorCode::FieldTooLarge,
            "GF(" + std::to_string(p) + "^" + std::to_string(k) + ") does not fit in 62 bits");
    core->pow_p[i] = core->pow_p[i - 1] * p;
  }
  core->q = core->pow_p[k];
  core->build_tables();
  std::shared_ptr<const Field::Core> result = core;
  std::lock_guard lock(cache_mutex());
  core_cache()[key] = result;
  return result;
}

}  // namespace

Field::Field() : core_(rational_core()) {}

Field::Field(std::shared_ptr<const Core> core, std::shared_ptr<const Lineage> lineage)
    : core_(std::move(core)), lineage_(std::move(lineage)) {}

Field Field::rationals() { return Field(); }

Field Field::prime(std::uint64_t p) {
  require(is_prime(p), ErrorCode::Parse, "characteristic " + std::to_string(p) + " is not prime");
  require(p < (std::uint64_t{1} << 62), ErrorCode::FieldTooLarge, "characteristic too large");
  return Field(finite_core(p, {}), nullptr);
}

Field Field::finite(std::uint64_t p, std::vector<std::uint64_t> modulus) {
  require(is_prime(p), ErrorCode::Parse, "characteristic " + std::to_string(p) + " is not prime");
  require(modulus.size() >= 2, ErrorCode::Parse, "modulus must have degree at least 1");
  require(modulus.back() == 1, ErrorCode::Parse, "modulus must be monic");
  for (auto c : modulus) require(c < p, ErrorCode::Parse, "modulus coefficient out of range");
  if (modulus.size() == 2) return prime(p);
  const Field base = prime(p);
  std::vector<Scalar> cs;
  for (auto c : modulus) cs.push_back(base.element(c));
  require(is_irreducible(Poly(base, cs)), ErrorCode::Parse, "modulus is not irreducible over GF(p)");
  return Field(finite_core(p, std::move(modulus)), nullptr);
}

Field Field::galois(std::uint64_t p, unsigned degree) {
  require(degree >= 1 && degree <= kMaxDegree, ErrorCode::FieldTooLarge, "extension degree out of range");
  if (degree == 1) return prime(p);
  const Field base = prime(p);
  std::optional<std::vector<std::uint64_t>> cached;
  {
    std::lock_guard lock(cache_mutex());
    auto it = modulus_cache().find({p, degree});
    if (it != modulus_cache().end()) cached = it->second;
  }
  if (cached) return Field(finite_core(p, std::move(*cached)), nullptr);
  // Overflow check before the search: p^degree must be representable.
  std::uint64_t bound = 1;
  for (unsigned i = 0; i < degree; ++i) {
    require(bound <= (std::uint64_t{1} << 62) / p, ErrorCode::FieldTooLarge,
            "GF(" + std::to_string(p) + "^" + std::to_string(degree) + ") does not fit in 62 bits");
    bound *= p;
  }
  std::vector<std::uint64_t> found;
  for (std::uint64_t code = 1; code < bound; ++code) {
    if (code % p == 0) continue;  // constant term zero means x divides it
    std::vector<Scalar> cs(degree + 1);
    std::vector<std::uint64_t> raw(degree + 1);
    std::uint64_t c = code;
    for (unsigned i = 0; i < degree; ++i) {
      raw[i] = c % p;
      cs[i] = base.element(raw[i]);
      c /= p;
    }
    raw[degree] = 1;
    cs[degree] = base.one();
    if (is_irreducible(Poly(base, cs))) {
      found = std::move(raw);
      break;
    }
  }
  {
    std::lock_guard lock(cache_mutex());
    modulus_cache()[{p, degree}] = found;
  }
  return Field(finite_core(p, std::move(found)), nullptr);
}

Field Field::extend(unsigned factor) const {
  require(is_finite(), ErrorCode::RootsUnavailable, "the rationals have no finite extensions here");
  require(factor >= 1, ErrorCode::IncompatibleFields, "extension factor must be positive");
  if (factor == 1) return *this;
  Field big = galois(core_->p, core_->k * factor);
  Scalar image = big.one();
  if (core_->k > 1) {
    std::vector<Scalar> cs;
    for (auto c : core_->modulus) cs.push_back(big.element(c));
    auto rs = roots(Poly(big, cs));
    require(!rs.empty(), ErrorCode::AssertionFailed, "modulus has no root in its extension");
    image = rs.front().first;
  }
  return Field(big.core_, std::make_shared<Lineage>(Lineage{*this, image}));
}

FieldKind Field::kind() const { return core_->kind; }
std::uint64_t Field::characteristic() const { return core_->p; }
unsigned Field::degree() const { return core_->k; }

std::uint64_t Field::order() const {
  require(is_finite(), ErrorCode::FieldMismatch, "the rationals have no finite order");
  return core_->q;
}

const std::vector<std::uint64_t>& Field::modulus() const { return core_->modulus; }

std::optional<Field> Field::parent() const {
  if (!lineage_) return std::nullopt;
  return lineage_->parent;
}

const Scalar& Field::parent_generator_image() const {
  require(lineage_ != nullptr, ErrorCode::IncompatibleFields, "field has no parent");
  return lineage_->generator_image;
}

Scalar Field::zero() const { return is_finite() ? Scalar(std::uint64_t{0}) : Scalar(mpq_class(0)); }
Scalar Field::one() const { return is_finite() ? Scalar(std::uint64_t{1}) : Scalar(mpq_class(1)); }

Scalar Field::from_int(std::int64_t n) const {
  if (!is_finite()) return Scalar(mpq_class(static_cast<long>(n)));
  const auto p = static_cast<std::int64_t>(core_->p);
  std::int64_t r = n % p;
  if (r < 0) r += p;
  return Scalar(static_cast<std::uint64_t>(r));
}

Scalar Field::from_rational(const mpq_class& q) const {
  if (!is_finite()) return Scalar(q);
  // Reduce num/den mod p when the denominator is invertible.
  mpz_class p(static_cast<unsigned long>(core_->p));
  mpz_class num = q.get_num() % p;
  if (num < 0) num += p;
  mpz_class den = q.get_den() % p;
  require(den != 0, ErrorCode::FieldMismatch, "denominator vanishes in characteristic p");
  return mul(Scalar(static_cast<std::uint64_t>(num.get_ui())), inv(Scalar(static_cast<std::uint64_t>(den.get_ui()))));
}

Scalar Field::from_coeffs(std::span<const std::uint64_t> coeffs) const {
  require(is_finite(), ErrorCode::FieldMismatch, "coefficient vectors describe finite-field elements");
  require(coeffs.size() == core_->k, ErrorCode::Parse,
          "expected " + std::to_string(core_->k) + " coefficients, got " + std::to_string(coeffs.size()));
  std::uint64_t code = 0;
  for (std::size_t i = coeffs.size(); i-- > 0;) {
    require(coeffs[i] < core_->p, ErrorCode::Parse, "coefficient out of range");
    code = code * core_->p + coeffs[i];
  }
  return Scalar(code);
}

std::vector<std::uint64_t> Field::coeffs(const Scalar& a) const {
  require(is_finite(), ErrorCode::FieldMismatch, "coefficient vectors describe finite-field elements");
  std::vector<std::uint64_t> out(core_->k);
  std::uint64_t c = a.code();
  for (unsigned i = 0; i < core_->k; ++i) {
    out[i] = c % core_->p;
    c /= core_->p;
  }
  return out;
}

Scalar Field::element(std::uint64_t code) const {
  require(is_finite() && code < core_->q, ErrorCode::Parse, "element code out of range");
  return Scalar(code);
}

Scalar Field::generator() const {
  require(is_finite() && core_->k > 1, ErrorCode::FieldMismatch, "only proper extensions have a generator");
  return Scalar(core_->p);
}

Scalar Field::add(const Scalar& a, const Scalar& b) const {
  if (is_finite()) return Scalar(core_->add(a.code(), b.code()));
  return Scalar(mpq_class(a.rational() + b.rational()));
}

Scalar Field::sub(const Scalar& a, const Scalar& b) const {
  if (is_finite()) return Scalar(core_->add(a.code(), core_->neg(b.code())));
  return Scalar(mpq_class(a.rational() - b.rational()));
}

Scalar Field::neg(const Scalar& a) const {
  if (is_finite()) return Scalar(core_->neg(a.code()));
  return Scalar(mpq_class(-a.rational()));
}

Scalar Field::mul(const Scalar& a, const Scalar& b) const {
  if (is_finite()) return Scalar(core_->mul(a.code(), b.code()));
  return Scalar(mpq_class(a.rational() * b.rational()));
}

Scalar Field::inv(const Scalar& a) const {
  if (is_finite()) return Scalar(core_->inv(a.code()));
  require(a.rational() != 0, ErrorCode::AssertionFailed, "division by zero in Q");
  return Scalar(mpq_class(1 / a.rational()));
}

Scalar Field::pow(const Scalar& a, std::uint64_t e) const {
  if (is_finite()) return Scalar(core_->pow(a.code(), e));
  mpq_class r(1), base = a.rational();
  while (e) {
    if (e & 1) r *= base;
    base *= base;
    e >>= 1;
  }
  return Scalar(r);
}

bool Field::is_zero(const Scalar& a) const { return is_finite() ? a.code() == 0 : a.rational() == 0; }

Scalar Field::random(Rng& rng) const {
  if (is_finite()) return Scalar(rng.below(core_->q));
  return Scalar(mpq_class(static_cast<long>(rng.between(-9, 9))));
}

Scalar Field::random_nonzero(Rng& rng) const {
  for (;;) {
    Scalar s = random(rng);
    if (!is_zero(s)) return s;
  }
}

bool Field::less(const Scalar& a, const Scalar& b) const {
  if (!is_finite()) {
    const auto& x = a.rational();
    const auto& y = b.rational();
    if (x.get_num() != y.get_num()) return x.get_num() < y.get_num();
    return x.get_den() < y.get_den();
  }
  std::uint64_t x = a.code(), y = b.code();
  for (unsigned i = 0; i < core_->k; ++i) {
    const auto dx = x % core_->p, dy = y % core_->p;
    if (dx != dy) return dx < dy;
    x /= core_->p;
    y /= core_->p;
  }
  return false;
}

bool Field::contains(const Scalar& a) const {
  return is_finite() ? (!a.is_rational() && a.code() < core_->q) : a.is_rational();
}

std::string Field::format(const Scalar& a) const {
  if (!is_finite()) return a.rational().get_str();
  if (core_->k == 1) return std::to_string(a.code());
  std::ostringstream os;
  os << '[';
  auto cs = coeffs(a);
  for (std::size_t i = 0; i < cs.size(); ++i) os << (i ? "," : "") << cs[i];
  os << ']';
  return os.str();
}

std::string Field::name() const {
  if (!is_finite()) return "q";
  if (core_->k == 1) return "gf:" + std::to_string(core_->p);
  return "gf:" + std::to_string(core_->p) + "^" + std::to_string(core_->k);
}

bool operator==(const Field& a, const Field& b) {
  if (a.core_ == b.core_) return true;
  return a.core_->kind == b.core_->kind && a.core_->p == b.core_->p && a.core_->modulus == b.core_->modulus;
}

Embedding::Embedding(const Field& source, const Field& target) : source_(source), target_(target) {
  if (source == target) {
    identity_ = true;
    return;
  }
  require(source.is_finite() && target.is_finite() && source.characteristic() == target.characteristic() &&
              target.degree() % source.degree() == 0,
          ErrorCode::IncompatibleFields, source.name() + " does not embed in " + target.name());
  if (source.degree() == 1) return;  // prime field: codes carry over unchanged

  // Image of the source generator in the target.
  std::optional<Scalar> image;
  if (auto parent = target.parent()) {
    if (*parent == source) {
      image = target.parent_generator_image();
    } else if (parent->degree() % source.degree() == 0) {
      try {
        Embedding inner(source, *parent);
        Embedding outer(*parent, target);
        image = outer(inner(source.generator()));
      } catch (const Error&) {
        image.reset();
      }
    }
  }
  if (!image) {
    std::vector<Scalar> cs;
    for (auto c : source.modulus()) cs.push_back(target.element(c));
    auto rs = roots(Poly(target, cs));
    require(!rs.empty(), ErrorCode::IncompatibleFields, "source modulus has no root in target");
    image = rs.front().first;
  }
  powers_.reserve(source.degree());
  Scalar cur = target.one();
  for (unsigned i = 0; i < source.degree(); ++i) {
    powers_.push_back(cur);
    cur = target.mul(cur, *image);
  }
}

Scalar Embedding::operator()(const Scalar& a) const {
  if (identity_) return a;
  if (powers_.empty()) return a;  // prime subfield
  const auto cs = source_.coeffs(a);
  Scalar acc = target_.zero();
  for (std::size_t i = 0; i < cs.size(); ++i) {
    if (cs[i] == 0) continue;
    acc = target_.add(acc, target_.mul(target_.element(cs[i]), powers_[i]));
  }
  return acc;
}

}  // namespace preproj
