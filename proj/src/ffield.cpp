#include "killform/ffield.hpp"

#include <algorithm>

#include "killform/error.hpp"

namespace killform {

namespace {

constexpr std::uint32_t kTableLimit = 1u << 20;
constexpr std::uint32_t kAddTableLimit = 256;

using Poly = std::vector<std::uint32_t>;  // lowest degree first

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// Remainder of a modulo a monic b over GF(p).
Poly poly_mod(Poly a, const Poly& b, std::uint32_t p) {
  trim(a);
  const std::size_t db = b.size() - 1;
  while (a.size() > db) {
    const std::uint64_t lead = a.back();
    const std::size_t shift = a.size() - 1 - db;
    for (std::size_t i = 0; i <= db; ++i) {
      const std::uint64_t sub = (lead * b[i]) % p;
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - sub) % p);
    }
    trim(a);
  }
  return a;
}

Poly digits(std::uint64_t code, std::uint32_t p, unsigned len) {
  Poly d(len, 0);
  for (unsigned i = 0; i < len; ++i) {
    d[i] = static_cast<std::uint32_t>(code % p);
    code /= p;
  }
  return d;
}

bool irreducible(const Poly& f, std::uint32_t p) {
  const unsigned deg = static_cast<unsigned>(f.size() - 1);
  for (unsigned d = 1; d <= deg / 2; ++d) {
    std::uint64_t count = 1;
    for (unsigned i = 0; i < d; ++i) count *= p;
    for (std::uint64_t c = 0; c < count; ++c) {
      Poly g = digits(c, p, d);
      g.push_back(1);
      if (poly_mod(f, g, p).empty()) return false;
    }
  }
  return true;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
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

std::pair<std::uint32_t, unsigned> prime_power(std::uint64_t q) {
  if (q < 2) throw UsageError("not a prime power: " + std::to_string(q));
  auto f = prime_factors(q);
  if (f.size() != 1) throw UsageError("not a prime power: " + std::to_string(q));
  unsigned k = 0;
  std::uint64_t r = q;
  while (r > 1) {
    r /= f[0];
    ++k;
  }
  return {static_cast<std::uint32_t>(f[0]), k};
}

FieldCtx::FieldCtx(std::uint32_t p, unsigned k) : p_(p), k_(k) {
  if (!is_prime(p)) throw UsageError("field characteristic is not prime: " + std::to_string(p));
  if (k < 1 || k > 12) throw UsageError("field degree out of range [1,12]: " + std::to_string(k));
  std::uint64_t q = 1;
  for (unsigned i = 0; i < k; ++i) {
    q *= p;
    if (q > (1ull << 31)) throw UsageError("field size exceeds 2^31");
  }
  q_ = static_cast<std::uint32_t>(q);

  for (std::uint64_t c = 0; c < q; ++c) {
    Poly f = digits(c, p, k);
    f.push_back(1);
    if (irreducible(f, p)) {
      modulus_ = f;
      break;
    }
  }

  auto slow_pow = [&](FieldCode a, std::uint64_t e) {
    FieldCode r = 1;
    while (e) {
      if (e & 1) r = slow_mul(r, a);
      a = slow_mul(a, a);
      e >>= 1;
    }
    return r;
  };
  const auto factors = prime_factors(q_ - 1);
  for (FieldCode g = 1; g < q_; ++g) {
    bool primitive = true;
    for (auto r : factors) {
      if (slow_pow(g, (q_ - 1) / r) == 1) {
        primitive = false;
        break;
      }
    }
    if (primitive) {
      generator_ = g;
      break;
    }
  }

  if (q_ <= kTableLimit) {
    exp_.resize(q_ - 1);
    log_.assign(q_, 0);
    FieldCode x = 1;
    for (std::uint32_t i = 0; i + 1 < q_; ++i) {
      exp_[i] = x;
      log_[x] = i;
      x = slow_mul(x, generator_);
    }
  }
  if (p_ != 2 && q_ <= kAddTableLimit) {
    add_table_.resize(std::size_t(q_) * q_);
    for (FieldCode a = 0; a < q_; ++a) {
      auto da = coeffs(a);
      for (FieldCode b = 0; b < q_; ++b) {
        auto db = coeffs(b);
        for (unsigned i = 0; i < k_; ++i) db[i] = (da[i] + db[i]) % p_;
        add_table_[std::size_t(a) * q_ + b] = static_cast<std::uint16_t>(encode(db));
      }
    }
  }
}

std::shared_ptr<const FieldCtx> FieldCtx::make(std::uint32_t p, unsigned k) {
  return std::shared_ptr<const FieldCtx>(new FieldCtx(p, k));
}

FieldPtr field_make(std::uint32_t p, unsigned k) { return FieldCtx::make(p, k); }

void FieldCtx::check(FieldCode a) const {
  if (a >= q_) throw DomainError("field code out of range: " + std::to_string(a));
}

FieldCode FieldCtx::from_int(std::int64_t v) const {
  std::int64_t r = v % static_cast<std::int64_t>(p_);
  if (r < 0) r += p_;
  return static_cast<FieldCode>(r);
}

std::vector<std::uint32_t> FieldCtx::coeffs(FieldCode a) const { return digits(a, p_, k_); }

FieldCode FieldCtx::encode(std::span<const std::uint32_t> c) const {
  if (c.size() != k_) throw DomainError("coefficient vector has wrong length");
  std::uint64_t code = 0;
  for (std::size_t i = c.size(); i-- > 0;) {
    if (c[i] >= p_) throw DomainError("coefficient not reduced mod p");
    code = code * p_ + c[i];
  }
  return static_cast<FieldCode>(code);
}

FieldCode FieldCtx::add(FieldCode a, FieldCode b) const {
  if (p_ == 2) return a ^ b;
  if (!add_table_.empty()) return add_table_[std::size_t(a) * q_ + b];
  std::uint64_t code = 0, scale = 1;
  while (a || b) {
    code += scale * (((a % p_) + (b % p_)) % p_);
    a /= p_;
    b /= p_;
    scale *= p_;
  }
  return static_cast<FieldCode>(code);
}

FieldCode FieldCtx::neg(FieldCode a) const {
  if (p_ == 2) return a;
  std::uint64_t code = 0, scale = 1;
  while (a) {
    code += scale * ((p_ - a % p_) % p_);
    a /= p_;
    scale *= p_;
  }
  return static_cast<FieldCode>(code);
}

FieldCode FieldCtx::sub(FieldCode a, FieldCode b) const { return add(a, neg(b)); }

FieldCode FieldCtx::slow_mul(FieldCode a, FieldCode b) const {
  Poly pa = coeffs(a), pb = coeffs(b);
  Poly prod(2 * k_, 0);
  for (unsigned i = 0; i < k_; ++i) {
    if (!pa[i]) continue;
    for (unsigned j = 0; j < k_; ++j)
      prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + std::uint64_t(pa[i]) * pb[j]) % p_);
  }
  Poly r = poly_mod(prod, modulus_, p_);
  r.resize(k_, 0);
  return encode(r);
}

FieldCode FieldCtx::mul(FieldCode a, FieldCode b) const {
  if (a == 0 || b == 0) return 0;
  if (!exp_.empty()) {
    std::uint32_t s = log_[a] + log_[b];
    if (s >= q_ - 1) s -= q_ - 1;
    return exp_[s];
  }
  return slow_mul(a, b);
}

FieldCode FieldCtx::pow(FieldCode a, std::uint64_t e) const {
  if (e == 0) return 1;
  if (a == 0) return 0;
  if (!exp_.empty()) {
    const std::uint64_t m = q_ - 1;
    return exp_[(std::uint64_t(log_[a]) * (e % m)) % m];
  }
  FieldCode r = 1;
  while (e) {
    if (e & 1) r = slow_mul(r, a);
    a = slow_mul(a, a);
    e >>= 1;
  }
  return r;
}

FieldCode FieldCtx::inv(FieldCode a) const {
  if (a == 0) throw DomainError("division by zero in GF(" + std::to_string(q_) + ")");
  if (!exp_.empty()) return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
  return pow(a, q_ - 2);
}

FieldCode FieldCtx::div(FieldCode a, FieldCode b) const { return mul(a, inv(b)); }

FieldCode FieldCtx::frobenius(FieldCode a, unsigned e) const {
  e %= k_;
  std::uint64_t pe = 1;
  for (unsigned i = 0; i < e; ++i) pe *= p_;
  return pow(a, pe);
}

FieldCode FieldCtx::trace_to_subfield(FieldCode a) const {
  if (k_ % 2 != 0) throw DomainError("trace to subfield needs an even extension degree");
  return add(a, frobenius(a, k_ / 2));
}

std::uint64_t FieldCtx::multiplicative_order(FieldCode a) const {
  if (a == 0) throw DomainError("zero has no multiplicative order");
  std::uint64_t ord = q_ - 1;
  for (auto r : prime_factors(q_ - 1)) {
    while (ord % r == 0 && pow(a, ord / r) == 1) ord /= r;
  }
  return ord;
}

std::string FieldCtx::to_string(FieldCode a) const {
  if (k_ == 1) return std::to_string(a);
  if (a == 0) return "0";
  auto c = coeffs(a);
  std::string s;
  for (unsigned i = k_; i-- > 0;) {
    if (!c[i]) continue;
    if (!s.empty()) s += "+";
    if (i == 0) {
      s += std::to_string(c[i]);
      continue;
    }
    if (c[i] != 1) s += std::to_string(c[i]);
    s += "x";
    if (i > 1) s += "^" + std::to_string(i);
  }
  return s;
}

FieldElement::FieldElement(FieldPtr ctx, FieldCode code) : ctx_(std::move(ctx)), code_(code) {
  if (!ctx_) throw DomainError("field element without context");
  if (code_ >= ctx_->q()) throw DomainError("field code out of range");
}

FieldElement FieldElement::from_coeffs(FieldPtr ctx, std::span<const std::uint32_t> coeffs) {
  FieldCode c = ctx->encode(coeffs);
  return FieldElement(std::move(ctx), c);
}

void FieldElement::same_ctx(const FieldElement& o) const {
  if (ctx_ != o.ctx_ && (ctx_->p() != o.ctx_->p() || ctx_->k() != o.ctx_->k()))
    throw DomainError("field context mismatch");
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
  same_ctx(o);
  return {ctx_, ctx_->add(code_, o.code_)};
}
FieldElement FieldElement::operator-(const FieldElement& o) const {
  same_ctx(o);
  return {ctx_, ctx_->sub(code_, o.code_)};
}
FieldElement FieldElement::operator*(const FieldElement& o) const {
  same_ctx(o);
  return {ctx_, ctx_->mul(code_, o.code_)};
}
FieldElement FieldElement::operator/(const FieldElement& o) const {
  same_ctx(o);
  return {ctx_, ctx_->div(code_, o.code_)};
}
FieldElement FieldElement::operator-() const { return {ctx_, ctx_->neg(code_)}; }
FieldElement FieldElement::pow(std::uint64_t e) const { return {ctx_, ctx_->pow(code_, e)}; }
FieldElement FieldElement::frobenius(unsigned e) const { return {ctx_, ctx_->frobenius(code_, e)}; }
FieldElement FieldElement::trace_to_subfield() const {
  return {ctx_, ctx_->trace_to_subfield(code_)};
}
bool FieldElement::operator==(const FieldElement& o) const {
  same_ctx(o);
  return code_ == o.code_;
}

FieldElement field_arith(const FieldElement& a, const FieldElement& b, FieldOp op) {
  switch (op) {
    case FieldOp::add: return a + b;
    case FieldOp::sub: return a - b;
    case FieldOp::mul: return a * b;
    case FieldOp::div: return a / b;
    case FieldOp::pow: return a.pow(b.code());
  }
  throw DomainError("unknown field operation");
}

}  // namespace killform
