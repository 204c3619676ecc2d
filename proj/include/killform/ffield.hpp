#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace killform {

/// Integer code of a field element: sum of coeffs[i] * p^i, a bijection onto [0, q).
using FieldCode = std::uint32_t;

/// GF(p^k) as polynomials over GF(p) modulo a fixed monic irreducible.
///
/// The modulus is the smallest monic irreducible of degree k when candidates
/// are ordered by the integer code of their non-leading coefficients, so the
/// same (p, k) always produces the same field and the same element codes.
/// Contexts are immutable and shared between elements and matrix groups.
class FieldCtx {
 public:
  static std::shared_ptr<const FieldCtx> make(std::uint32_t p, unsigned k);

  std::uint32_t p() const { return p_; }
  unsigned k() const { return k_; }
  std::uint32_t q() const { return q_; }
  /// Coefficients of the modulus, lowest degree first, length k + 1.
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }
  /// Cached primitive element (multiplicative order q - 1).
  FieldCode generator() const { return generator_; }

  FieldCode zero() const { return 0; }
  FieldCode one() const { return 1; }
  FieldCode from_int(std::int64_t v) const;

  FieldCode add(FieldCode a, FieldCode b) const;
  FieldCode sub(FieldCode a, FieldCode b) const;
  FieldCode neg(FieldCode a) const;
  FieldCode mul(FieldCode a, FieldCode b) const;
  FieldCode inv(FieldCode a) const;
  FieldCode div(FieldCode a, FieldCode b) const;
  FieldCode pow(FieldCode a, std::uint64_t e) const;
  /// a^(p^e).
  FieldCode frobenius(FieldCode a, unsigned e) const;
  /// a + a^(p^(k/2)); requires even k.
  FieldCode trace_to_subfield(FieldCode a) const;
  std::uint64_t multiplicative_order(FieldCode a) const;

  std::vector<std::uint32_t> coeffs(FieldCode a) const;
  FieldCode encode(std::span<const std::uint32_t> coeffs) const;
  std::string to_string(FieldCode a) const;

 private:
  FieldCtx(std::uint32_t p, unsigned k);
  FieldCode slow_mul(FieldCode a, FieldCode b) const;
  void check(FieldCode a) const;

  std::uint32_t p_;
  unsigned k_;
  std::uint32_t q_;
  std::vector<std::uint32_t> modulus_;
  FieldCode generator_ = 1;
  // log/exp tables for q <= kTableLimit; log_[0] unused.
  std::vector<std::uint32_t> log_;
  std::vector<FieldCode> exp_;
  std::vector<std::uint16_t> add_table_;
};

using FieldPtr = std::shared_ptr<const FieldCtx>;

FieldPtr field_make(std::uint32_t p, unsigned k);

/// Value-semantics element bound to its context.
class FieldElement {
 public:
  FieldElement(FieldPtr ctx, FieldCode code);
  static FieldElement from_coeffs(FieldPtr ctx, std::span<const std::uint32_t> coeffs);

  const FieldPtr& ctx() const { return ctx_; }
  FieldCode code() const { return code_; }
  std::vector<std::uint32_t> coeffs() const { return ctx_->coeffs(code_); }
  bool is_zero() const { return code_ == 0; }

  FieldElement operator+(const FieldElement& o) const;
  FieldElement operator-(const FieldElement& o) const;
  FieldElement operator*(const FieldElement& o) const;
  FieldElement operator/(const FieldElement& o) const;
  FieldElement operator-() const;
  FieldElement pow(std::uint64_t e) const;
  FieldElement frobenius(unsigned e) const;
  FieldElement trace_to_subfield() const;

  bool operator==(const FieldElement& o) const;
  bool operator<(const FieldElement& o) const { return code_ < o.code_; }
  std::string to_string() const { return ctx_->to_string(code_); }

 private:
  void same_ctx(const FieldElement& o) const;

  FieldPtr ctx_;
  FieldCode code_;
};

enum class FieldOp { add, sub, mul, div, pow };

/// Dispatch form used by the CLI and tests; for pow, b's code is the exponent.
FieldElement field_arith(const FieldElement& a, const FieldElement& b, FieldOp op);

bool is_prime(std::uint64_t n);
/// Returns (p, k) with q = p^k, or throws UsageError if q is not a prime power.
std::pair<std::uint32_t, unsigned> prime_power(std::uint64_t q);
std::vector<std::uint64_t> prime_factors(std::uint64_t n);

}  // namespace killform
