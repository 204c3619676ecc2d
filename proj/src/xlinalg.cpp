#include "killform/xlinalg.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>

#include "killform/error.hpp"

namespace killform {

ExactMatrix ExactMatrix::identity(std::size_t n) {
  ExactMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

ExactMatrix ExactMatrix::from_rows(const std::vector<std::vector<long long>>& rows) {
  ExactMatrix m(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.size()) throw DomainError("matrix is not square");
    for (std::size_t j = 0; j < rows.size(); ++j) m(i, j) = static_cast<long>(rows[i][j]);
  }
  return m;
}

ExactMatrix ExactMatrix::from_killing(const KillingMatrix& k) { return block(k, 0, k.n); }

ExactMatrix ExactMatrix::block(const KillingMatrix& k, std::size_t begin, std::size_t end) {
  ExactMatrix m(end - begin);
  for (std::size_t i = begin; i < end; ++i)
    for (std::size_t j = begin; j < end; ++j) m(i - begin, j - begin) = k.at(i, j);
  return m;
}

std::string to_string(DetMethod m) {
  switch (m) {
    case DetMethod::bareiss: return "bareiss";
    case DetMethod::modular_crt: return "modular-crt";
    case DetMethod::certificate: return "certificate";
    case DetMethod::blockwise: return "blockwise";
  }
  return "unknown";
}

DetResult bareiss_det_rank(const ExactMatrix& m, std::size_t cap) {
  const std::size_t n = m.n();
  if (n > cap)
    throw CapExceeded("matrix dimension " + std::to_string(n) + " exceeds Bareiss cap " + std::to_string(cap));
  ExactMatrix a = m;
  mpz_class prev = 1, t;
  int sign = 1;
  std::size_t rank = 0;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pr = k, pc = k;
    for (std::size_t i = k; i < n; ++i)
      for (std::size_t j = k; j < n; ++j)
        if (mpz_cmpabs(a(i, j).get_mpz_t(), a(pr, pc).get_mpz_t()) > 0) {
          pr = i;
          pc = j;
        }
    if (a(pr, pc) == 0) break;
    if (pr != k) {
      for (std::size_t j = 0; j < n; ++j) swap(a(pr, j), a(k, j));
      sign = -sign;
    }
    if (pc != k) {
      for (std::size_t i = 0; i < n; ++i) swap(a(i, pc), a(i, k));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        t = a(i, j) * a(k, k);
        t -= a(i, k) * a(k, j);
        mpz_divexact(a(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      a(i, k) = 0;
    }
    prev = a(k, k);
    ++rank;
  }
  DetResult r;
  r.method = DetMethod::bareiss;
  r.rank = rank;
  if (n == 0)
    r.det = 1;
  else
    r.det = rank == n ? mpz_class(sign * a(n - 1, n - 1)) : mpz_class(0);
  r.nonzero = *r.det != 0;
  return r;
}

mpz_class hadamard_bound(const ExactMatrix& m) {
  mpz_class bound = 1, s, root;
  for (std::size_t i = 0; i < m.n(); ++i) {
    s = 0;
    for (std::size_t j = 0; j < m.n(); ++j) s += m(i, j) * m(i, j);
    mpz_sqrt(root.get_mpz_t(), s.get_mpz_t());
    if (root * root < s) ++root;
    bound *= root;
  }
  return bound;
}

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 p) { return static_cast<u64>(static_cast<u128>(a) * b % p); }

u64 powmod(u64 a, u64 e, u64 p) {
  u64 r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

// Descending primes below 2^62.
u64 nth_prime(std::size_t i) {
  static std::mutex mu;
  static std::vector<u64> cache;
  std::lock_guard<std::mutex> lock(mu);
  while (cache.size() <= i) {
    u64 c = cache.empty() ? (1ull << 62) - 1 : cache.back() - 2;
    while (!is_probable_prime(c)) c -= 2;
    cache.push_back(c);
  }
  return cache[i];
}

}  // namespace

bool is_probable_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    u64 x = powmod(a, d, n);
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

namespace {

// Montgomery arithmetic modulo an odd p < 2^63.
struct Montgomery {
  u64 p, pinv, r2;
  explicit Montgomery(u64 mod) : p(mod) {
    pinv = 1;
    for (int i = 0; i < 6; ++i) pinv *= 2 - p * pinv;  // p * pinv == 1 mod 2^64
    r2 = static_cast<u64>((static_cast<u128>(1) << 64) % p);
    r2 = mulmod(r2, r2, p);
  }
  u64 reduce(u128 t) const {
    const u64 m = static_cast<u64>(t) * (0 - pinv);
    const u128 s = t + static_cast<u128>(m) * p;
    u64 r = static_cast<u64>(s >> 64);
    return r >= p ? r - p : r;
  }
  u64 mul(u64 a, u64 b) const { return reduce(static_cast<u128>(a) * b); }
  u64 to(u64 a) const { return mul(a, r2); }
  u64 from(u64 a) const { return reduce(a); }
  u64 pow(u64 a, u64 e) const {
    u64 r = to(1);
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
};

}  // namespace

std::uint64_t det_mod(const ExactMatrix& m, std::uint64_t p) {
  const std::size_t n = m.n();
  if (p % 2 == 0 || p >= (1ull << 63)) throw DomainError("det_mod needs an odd modulus below 2^63");
  const Montgomery mg(p);
  std::vector<u64> a(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i * n + j] = mg.to(mpz_fdiv_ui(m(i, j).get_mpz_t(), p));
  u64 det = mg.to(1);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    while (piv < n && a[piv * n + k] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a[piv * n + j], a[k * n + j]);
      det = det == 0 ? 0 : p - det;
    }
    const u64 pv = a[k * n + k];
    det = mg.mul(det, pv);
    const u64 inv = mg.pow(pv, p - 2);
    const u64* row = &a[k * n];
    for (std::size_t i = k + 1; i < n; ++i) {
      u64* dst = &a[i * n];
      if (dst[k] == 0) continue;
      const u64 f = mg.mul(dst[k], inv);
      for (std::size_t j = k; j < n; ++j) {
        const u64 s = mg.mul(f, row[j]);
        dst[j] = dst[j] >= s ? dst[j] - s : dst[j] + p - s;
      }
    }
  }
  return mg.from(det);
}

DetResult modular_det(const ExactMatrix& m, bool certificate_only) {
  DetResult r;
  r.method = DetMethod::modular_crt;
  const mpz_class bound = hadamard_bound(m);
  const mpz_class target = 2 * bound;
  mpz_class modulus = 1, value = 0;
  std::size_t i = 0;
  do {
    const u64 p = nth_prime(i++);
    const u64 res = det_mod(m, p);
    ++r.primes_used;
    if (certificate_only && res != 0) {
      r.nonzero = true;
      r.certificate_prime = p;
      r.method = DetMethod::certificate;
      return r;
    }
    certificate_only = false;
    // value += modulus * ((res - value) / modulus mod p)
    const u64 vm = mpz_fdiv_ui(value.get_mpz_t(), p);
    const u64 mm = mpz_fdiv_ui(modulus.get_mpz_t(), p);
    const u64 diff = res >= vm ? res - vm : res + p - vm;
    const u64 t = mulmod(diff, powmod(mm, p - 2, p), p);
    value += modulus * mpz_class(static_cast<unsigned long>(t));
    modulus *= mpz_class(static_cast<unsigned long>(p));
  } while (modulus <= target);
  if (2 * value > modulus) value -= modulus;
  if (abs(value) > bound) throw Error("reconstructed determinant exceeds the Hadamard bound");
  r.det = value;
  r.nonzero = value != 0;
  return r;
}

MillerResult miller_invertible(const ExactMatrix& e, const ExactMatrix& h) {
  const std::size_t n = e.n();
  if (h.n() != n) throw DomainError("E and H differ in size");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && e(i, j) != 0) throw DomainError("E must be diagonal");
      if (i == j && e(i, j) == 0) throw DomainError("E is not invertible");
    }
  // Rank at most one: every row is a multiple of the first nonzero row.
  std::size_t r0 = n, c0 = n;
  for (std::size_t i = 0; i < n && r0 == n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (h(i, j) != 0) {
        r0 = i;
        c0 = j;
        break;
      }
  if (r0 < n) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (h(i, j) * h(r0, c0) != h(r0, j) * h(i, c0)) throw DomainError("H has rank greater than one");
  }
  MillerResult out;
  out.trace = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mpq_class t(h(i, i), e(i, i));
    t.canonicalize();
    out.trace += t;
  }
  out.det_ratio = out.trace + 1;
  out.invertible = out.trace != -1;
  return out;
}

DetResult blockwise_det(const KillingMatrix& k, const ClassSupportFn& fn, std::size_t cap,
                        bool certificate_ok) {
  auto direct = [&](const ExactMatrix& m) {
    if (m.n() <= cap) return bareiss_det_rank(m, cap);
    return modular_det(m, certificate_ok);
  };
  const std::size_t blocks = k.block_count();
  if (blocks <= 1) return direct(ExactMatrix::from_killing(k));

  const Group& g = *fn.group;
  std::vector<std::uint32_t> pos_of(g.order(), ~0u), comp_of(k.n);
  for (std::size_t b = 0; b < blocks; ++b)
    for (std::size_t i = k.block_offsets[b]; i < k.block_offsets[b + 1]; ++i) comp_of[i] = static_cast<std::uint32_t>(b);
  for (std::size_t i = 0; i < k.n; ++i) pos_of[k.ordering[i]] = static_cast<std::uint32_t>(i);

  // Conjugators carrying block 0 onto the others, found by BFS over blocks.
  constexpr Index unset = ~0u;
  std::vector<Index> conj_by(blocks, unset);
  conj_by[0] = 0;
  std::vector<std::size_t> queue{0};
  const Index v0 = k.ordering[0];
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    const Index h = conj_by[queue[qi]];
    for (Index s : g.generators()) {
      const Index h2 = g.mul(s, h);
      const auto p = pos_of[g.conj(v0, h2)];
      if (p == ~0u) throw Error("conjugation leaves the G-stable set");
      const auto c = comp_of[p];
      if (conj_by[c] == unset) {
        conj_by[c] = h2;
        queue.push_back(c);
      }
    }
  }

  const std::size_t b0 = k.block_offsets[0], size0 = k.block_offsets[1] - b0;
  const DetResult base = direct(ExactMatrix::block(k, b0, b0 + size0));
  std::optional<mpz_class> det = mpz_class(1);
  std::optional<std::size_t> rank = 0;
  bool nonzero = true;
  auto absorb = [&](const DetResult& d) {
    nonzero = nonzero && d.nonzero;
    if (det && d.det) *det *= *d.det; else det.reset();
    if (rank && d.rank) *rank += *d.rank; else rank.reset();
  };
  for (std::size_t b = 0; b < blocks; ++b) {
    const std::size_t off = k.block_offsets[b], size = k.block_offsets[b + 1] - off;
    if (conj_by[b] == unset) {
      absorb(direct(ExactMatrix::block(k, off, off + size)));
      continue;
    }
    if (b > 0) {
      if (size != size0) throw Error("conjugate blocks differ in size");
      std::vector<std::uint32_t> pi(size0);
      for (std::size_t i = 0; i < size0; ++i) {
        const auto p = pos_of[g.conj(k.ordering[b0 + i], conj_by[b])];
        if (p < off || p >= off + size) throw Error("conjugation does not map block 0 onto a block");
        pi[i] = p;
      }
      for (std::size_t i = 0; i < size0; ++i)
        for (std::size_t j = 0; j < size0; ++j)
          if (k.at(pi[i], pi[j]) != k.at(b0 + i, b0 + j)) throw Error("blocks are not permutation-similar");
    }
    absorb(base);
  }
  DetResult r;
  r.method = DetMethod::blockwise;
  r.det = det;
  r.nonzero = det ? *det != 0 : nonzero;
  r.rank = rank;
  if (!det && base.certificate_prime) r.certificate_prime = base.certificate_prime;
  return r;
}

namespace {

void check_dihedral(std::uint64_t n, std::uint64_t m) {
  if (n < 3 || n % 2 == 0) throw UsageError("dihedral determinant needs odd n >= 3");
  if (m > (n - 1) / 2) throw UsageError("rotation class count out of range");
}

mpq_class qpow(mpq_class b, long e) {
  if (e < 0) {
    if (b == 0) throw DomainError("zero to a negative power");
    b = 1 / b;
    e = -e;
  }
  mpq_class r = 1;
  while (e-- > 0) r *= b;
  return r;
}

}  // namespace

mpq_class dihedral_det_closed_form(std::uint64_t n, std::uint64_t m) {
  check_dihedral(n, m);
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), n, n + 2 * m - 1);
  const mpz_class mm = m;
  mpz_class v = p * ((2 * mm + 1) * mpz_class(n) + 2 * mm * (4 * mm * mm + 2 * mm - 1));
  if (m % 2) v = -v;
  return mpq_class(v);
}

mpq_class dihedral_det_printed_form(std::uint64_t n, std::uint64_t m) {
  check_dihedral(n, m);
  const long mi = static_cast<long>(m);
  const mpq_class nn(static_cast<long>(n));
  mpq_class a(static_cast<long>((2 * m + 1) * n), 2 * mi * (2 * mi + 1) - 1);
  a.canonicalize();
  mpq_class nn_pow = qpow(nn, static_cast<long>(n));
  mpq_class v = nn_pow * (2 * mi + 1) * (nn_pow / qpow(a, static_cast<long>(n))) *
                qpow(a - 1, 2 * mi - 1) * (a + 2 * mi - 1);
  if (m % 2) v = -v;
  v.canonicalize();
  return v;
}

ExactMatrix read_killing_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open matrix file: " + path);
  std::vector<std::vector<mpz_class>> rows;
  std::string line;
  while (std::getline(in, line)) {
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::vector<mpz_class> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      cell.erase(std::remove_if(cell.begin(), cell.end(), ::isspace), cell.end());
      mpz_class v;
      if (cell.empty() || v.set_str(cell, 10) != 0) throw UsageError(path + ": bad matrix entry '" + cell + "'");
      row.push_back(v);
    }
    rows.push_back(std::move(row));
  }
  ExactMatrix m(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.size()) throw UsageError(path + ": matrix is not square");
    for (std::size_t j = 0; j < rows.size(); ++j) m(i, j) = rows[i][j];
  }
  return m;
}

}  // namespace killform
