#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "killform/killing.hpp"

namespace killform {

constexpr std::size_t kDefaultBareissCap = 600;

/// Dense square matrix of arbitrary-precision integers.
class ExactMatrix {
 public:
  ExactMatrix() = default;
  explicit ExactMatrix(std::size_t n) : n_(n), a_(n * n) {}
  static ExactMatrix identity(std::size_t n);
  static ExactMatrix from_rows(const std::vector<std::vector<long long>>& rows);
  static ExactMatrix from_killing(const KillingMatrix& k);
  /// Principal submatrix on rows/cols [begin, end).
  static ExactMatrix block(const KillingMatrix& k, std::size_t begin, std::size_t end);

  std::size_t n() const { return n_; }
  mpz_class& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  const mpz_class& operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
  bool operator==(const ExactMatrix& o) const { return n_ == o.n_ && a_ == o.a_; }

 private:
  std::size_t n_ = 0;
  std::vector<mpz_class> a_;
};

enum class DetMethod { bareiss, modular_crt, certificate, blockwise };
std::string to_string(DetMethod m);

struct DetResult {
  std::optional<mpz_class> det;  // exact value when known
  bool nonzero = false;
  std::optional<std::uint64_t> certificate_prime;  // det mod p != 0
  std::optional<std::size_t> rank;
  DetMethod method = DetMethod::bareiss;
  std::uint64_t primes_used = 0;
};

/// Fraction-free elimination with full pivoting (largest absolute value,
/// ties to the smallest row, then column).
DetResult bareiss_det_rank(const ExactMatrix& m, std::size_t cap = kDefaultBareissCap);

/// Hadamard bound: product of the ceiling Euclidean row norms.
mpz_class hadamard_bound(const ExactMatrix& m);

/// Determinant modulo 62-bit primes with CRT until the modulus exceeds twice
/// the Hadamard bound. With certificate_only, the first nonzero residue ends
/// the run; a zero determinant is always reconstructed exactly.
DetResult modular_det(const ExactMatrix& m, bool certificate_only = false);

/// det of m modulo prime p (p < 2^63).
std::uint64_t det_mod(const ExactMatrix& m, std::uint64_t p);

struct MillerResult {
  bool invertible = false;
  mpq_class trace;  // Tr(H E^-1)
  mpq_class det_ratio;  // det(E+H) / det(E) = 1 + trace
};

/// E diagonal (scalar included) and invertible, H of rank at most one.
MillerResult miller_invertible(const ExactMatrix& e, const ExactMatrix& h);

/// det(K) from its diagonal blocks. Blocks conjugate under the group are
/// matched by an explicit permutation similarity and share one determinant.
/// Blocks above the Bareiss cap go to modular_det; with certificate_ok a
/// single nonzero residue settles them.
DetResult blockwise_det(const KillingMatrix& k, const ClassSupportFn& fn,
                        std::size_t cap = kDefaultBareissCap, bool certificate_ok = false);

/// det of the Killing matrix of D_2n on reflections plus m rotation classes.
mpq_class dihedral_det_closed_form(std::uint64_t n, std::uint64_t m);
/// The expression as printed at the end of the argument, kept for comparison.
mpq_class dihedral_det_printed_form(std::uint64_t n, std::uint64_t m);

/// Reads a Killing-matrix CSV (optional `#` header, comma-separated rows).
ExactMatrix read_killing_csv(const std::string& path);

bool is_probable_prime(std::uint64_t n);

}  // namespace killform
