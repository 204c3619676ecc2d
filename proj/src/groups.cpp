#include "killform/groups.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include "killform/error.hpp"

namespace killform {

// ---------------------------------------------------------------------------
// Realizations

PermRealization::PermRealization(std::size_t degree) : degree_(degree) {
  if (degree == 0 || degree > 255) throw UsageError("permutation degree must be in [1,255]");
}

void PermRealization::identity(Word* out) const {
  for (std::size_t i = 0; i < degree_; ++i) out[i] = static_cast<Word>(i);
}

void PermRealization::multiply(const Word* a, const Word* b, Word* out) const {
  for (std::size_t i = 0; i < degree_; ++i) out[i] = a[b[i]];
}

std::string PermRealization::label(const Word* w) const {
  std::string s;
  std::vector<bool> seen(degree_, false);
  for (std::size_t i = 0; i < degree_; ++i) {
    if (seen[i] || w[i] == i) continue;
    s += "(";
    std::size_t j = i;
    bool first = true;
    while (!seen[j]) {
      seen[j] = true;
      if (!first) s += ",";
      s += std::to_string(j + 1);
      first = false;
      j = w[j];
    }
    s += ")";
  }
  return s.empty() ? "()" : s;
}

MatrixRealization::MatrixRealization(FieldPtr field, std::size_t dim)
    : field_(std::move(field)), dim_(dim) {
  if (!field_) throw DomainError("matrix realization needs a field");
  if (dim_ == 0 || dim_ > 8) throw UsageError("matrix dimension out of range");
}

void MatrixRealization::identity(Word* out) const {
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) out[i * dim_ + j] = i == j ? 1 : 0;
}

void MatrixRealization::multiply(const Word* a, const Word* b, Word* out) const {
  const FieldCtx& f = *field_;
  const std::size_t d = dim_;
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      FieldCode acc = 0;
      for (std::size_t k = 0; k < d; ++k) {
        const Word x = a[i * d + k];
        const Word y = b[k * d + j];
        if (x && y) acc = f.add(acc, f.mul(x, y));
      }
      out[i * d + j] = acc;
    }
  }
}

std::string MatrixRealization::label(const Word* w) const {
  std::string s = "[";
  for (std::size_t i = 0; i < dim_; ++i) {
    if (i) s += ";";
    for (std::size_t j = 0; j < dim_; ++j) {
      if (j) s += ",";
      s += std::to_string(w[i * dim_ + j]);
    }
  }
  return s + "]";
}

CosetRealization::CosetRealization(FieldPtr field, std::size_t dim, std::vector<FieldCode> scalars)
    : MatrixRealization(std::move(field), dim), scalars_(std::move(scalars)) {
  std::sort(scalars_.begin(), scalars_.end());
  scalars_.erase(std::unique(scalars_.begin(), scalars_.end()), scalars_.end());
  if (scalars_.empty() || scalars_.front() == 0) throw DomainError("bad scalar subgroup");
}

void CosetRealization::multiply(const Word* a, const Word* b, Word* out) const {
  MatrixRealization::multiply(a, b, out);
  canonicalize(out);
}

void CosetRealization::canonicalize(Word* w) const {
  const std::size_t n = width();
  const FieldCtx& f = *field();
  Word best[64];
  Word cand[64];
  std::copy(w, w + n, best);
  for (FieldCode s : scalars_) {
    if (s == 1) continue;
    for (std::size_t i = 0; i < n; ++i) cand[i] = f.mul(w[i], s);
    if (std::lexicographical_compare(cand, cand + n, best, best + n)) std::copy(cand, cand + n, best);
  }
  std::copy(best, best + n, w);
}

// ---------------------------------------------------------------------------
// Group

namespace {

std::uint64_t mix(std::uint64_t h) {
  h ^= h >> 33;
  h *= 0xff51afd7ed558ccdULL;
  h ^= h >> 33;
  h *= 0xc4ceb9fe1a85ec53ULL;
  h ^= h >> 33;
  return h;
}

}  // namespace

Group::Group(std::string spec, std::string family, std::uint64_t param,
             std::shared_ptr<const Realization> real, const std::vector<GroupElement>& gens,
             std::uint64_t max_order)
    : spec_(std::move(spec)), family_(std::move(family)), param_(param), real_(std::move(real)) {
  width_ = real_->width();
  std::vector<Word> id(width_);
  real_->identity(id.data());
  real_->canonicalize(id.data());

  std::vector<GroupElement> g2;
  for (const auto& g : gens) {
    if (g.words.size() != width_) throw UsageError("generator has wrong width");
    GroupElement c = g;
    real_->canonicalize(c.words.data());
    if (c.words != id) g2.push_back(std::move(c));
  }
  std::sort(g2.begin(), g2.end());
  g2.erase(std::unique(g2.begin(), g2.end()), g2.end());

  elems_ = id;
  order_ = 1;
  rehash(1024);

  std::vector<Index> parent{0};
  std::vector<std::uint32_t> via{0};
  std::vector<Word> buf(width_);
  for (std::size_t i = 0; i < order_; ++i) {
    for (std::size_t gi = 0; gi < g2.size(); ++gi) {
      real_->multiply(word(static_cast<Index>(i)).data(), g2[gi].words.data(), buf.data());
      real_->canonicalize(buf.data());
      if (lookup(buf.data())) continue;
      if (order_ + 1 > max_order)
        throw CapExceeded(spec_ + ": group order exceeds cap " + std::to_string(max_order));
      elems_.insert(elems_.end(), buf.begin(), buf.end());
      ++order_;
      if (order_ * 2 > slots_.size()) rehash(slots_.size() * 2);
      insert(static_cast<Index>(order_ - 1));
      parent.push_back(static_cast<Index>(i));
      via.push_back(static_cast<std::uint32_t>(gi));
    }
  }

  for (const auto& g : g2) gens_.push_back(*lookup(g.words.data()));

  // Generator inverses by powering, then inv(x g) = g^-1 inv(x) along the BFS tree.
  std::vector<Index> ginv(gens_.size());
  for (std::size_t gi = 0; gi < gens_.size(); ++gi) {
    Index x = gens_[gi], prev = 0;
    while (x != 0) {
      prev = x;
      x = mul(x, gens_[gi]);
    }
    ginv[gi] = prev;
  }
  inv_.assign(order_, 0);
  for (std::size_t i = 1; i < order_; ++i) inv_[i] = mul(ginv[via[i]], inv_[parent[i]]);

  central_.assign(order_, 0);
  for (std::size_t i = 0; i < order_; ++i) {
    bool c = true;
    for (Index g : gens_)
      if (!commute(static_cast<Index>(i), g)) {
        c = false;
        break;
      }
    if (c) {
      central_[i] = 1;
      center_.push_back(static_cast<Index>(i));
    }
  }
}

FieldPtr Group::field() const {
  if (auto m = dynamic_cast<const MatrixRealization*>(real_.get())) return m->field();
  return nullptr;
}

std::size_t Group::matrix_dim() const {
  if (auto m = dynamic_cast<const MatrixRealization*>(real_.get())) return m->dim();
  return 0;
}

std::uint64_t Group::hash(const Word* w) const {
  std::uint64_t h = 0x9E3779B97F4A7C15ULL;
  for (std::size_t i = 0; i < width_; ++i) h = mix(h ^ (w[i] + 0x632BE59BD9B4E019ULL * (i + 1)));
  return h;
}

void Group::rehash(std::size_t slots) {
  slots_.assign(slots, 0);
  for (std::size_t i = 0; i < order_; ++i) insert(static_cast<Index>(i));
}

void Group::insert(Index i) {
  const std::size_t mask = slots_.size() - 1;
  std::size_t s = hash(word(i).data()) & mask;
  while (slots_[s] != 0) {
    if (slots_[s] == i + 1) return;
    s = (s + 1) & mask;
  }
  slots_[s] = i + 1;
}

std::optional<Index> Group::lookup(const Word* w) const {
  const std::size_t mask = slots_.size() - 1;
  std::size_t s = hash(w) & mask;
  while (slots_[s] != 0) {
    const Index i = slots_[s] - 1;
    if (std::equal(w, w + width_, elems_.data() + std::size_t(i) * width_)) return i;
    s = (s + 1) & mask;
  }
  return std::nullopt;
}

GroupElement Group::element(Index i) const {
  auto w = word(i);
  return GroupElement{std::vector<Word>(w.begin(), w.end())};
}

std::optional<Index> Group::find(std::span<const Word> w) const {
  if (w.size() != width_) return std::nullopt;
  std::vector<Word> c(w.begin(), w.end());
  real_->canonicalize(c.data());
  return lookup(c.data());
}

Index Group::index_of(const GroupElement& g) const {
  auto i = find(g.words);
  if (!i) throw DomainError("element is not in group " + spec_);
  return *i;
}

Index Group::mul(Index a, Index b) const {
  Word buf[256];
  real_->multiply(word(a).data(), word(b).data(), buf);
  auto r = lookup(buf);
  if (!r) throw Error("group " + spec_ + " is not closed under multiplication");
  return *r;
}

Index Group::conj(Index g, Index h) const { return mul(mul(h, g), inv_[h]); }

bool Group::commute(Index a, Index b) const {
  Word x[256], y[256];
  real_->multiply(word(a).data(), word(b).data(), x);
  real_->multiply(word(b).data(), word(a).data(), y);
  return std::equal(x, x + width_, y);
}

Index Group::power(Index a, std::uint64_t e) const {
  Index r = 0;
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

std::uint64_t Group::element_order(Index a) const {
  std::uint64_t n = 1;
  Index x = a;
  while (x != 0) {
    x = mul(x, a);
    ++n;
  }
  return n;
}

int Group::compare(Index a, Index b) const {
  auto x = word(a), y = word(b);
  for (std::size_t i = 0; i < width_; ++i)
    if (x[i] != y[i]) return x[i] < y[i] ? -1 : 1;
  return 0;
}

void Group::set_standard_sylow(std::uint32_t p, std::vector<Index> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  sylow_[p] = std::move(members);
}

// ---------------------------------------------------------------------------
// Families

namespace {

using Mat = std::vector<Word>;

std::uint64_t ipow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

std::uint64_t gcd_u(std::uint64_t a, std::uint64_t b) { return std::gcd(a, b); }

Mat mat_diag(const std::vector<FieldCode>& d) {
  Mat m(d.size() * d.size(), 0);
  for (std::size_t i = 0; i < d.size(); ++i) m[i * d.size() + i] = d[i];
  return m;
}

Mat anti_identity(std::size_t d) {
  Mat m(d * d, 0);
  for (std::size_t i = 0; i < d; ++i) m[i * d + (d - 1 - i)] = 1;
  return m;
}

Mat mat_mul(const MatrixRealization& r, const Mat& a, const Mat& b) {
  Mat out(a.size());
  r.multiply(a.data(), b.data(), out.data());
  return out;
}

std::uint64_t sqrt_q(const FieldCtx& f) {
  if (f.k() % 2) throw DomainError("field is not a quadratic extension");
  return ipow(f.p(), f.k() / 2);
}

// Unitriangular S1 element of SU3 for a1, a2 in GF(q^2).
Mat su3_upper(const FieldCtx& f, FieldCode a1, FieldCode a2) {
  const unsigned half = f.k() / 2;
  return {1, a1, a2, 0, 1, f.neg(f.frobenius(a1, half)), 0, 0, 1};
}

bool su3_upper_ok(const FieldCtx& f, FieldCode a1, FieldCode a2) {
  const unsigned half = f.k() / 2;
  const FieldCode n = f.mul(a1, f.frobenius(a1, half));
  return f.add(f.add(a2, f.frobenius(a2, half)), n) == 0;
}

/// Elements of the GF(p)-span of chosen, by enumeration.
std::set<FieldCode> gfp_span(const FieldCtx& f, const std::vector<FieldCode>& chosen) {
  std::set<FieldCode> span{0};
  for (FieldCode c : chosen) {
    std::set<FieldCode> next;
    for (FieldCode s : span) {
      FieldCode t = s;
      for (std::uint32_t i = 0; i < f.p(); ++i) {
        next.insert(t);
        t = f.add(t, c);
      }
    }
    span = std::move(next);
  }
  return span;
}

std::vector<FieldCode> gfp_basis(const FieldCtx& f, const std::vector<FieldCode>& candidates) {
  std::vector<FieldCode> basis;
  std::set<FieldCode> span{0};
  for (FieldCode c : candidates) {
    if (span.count(c)) continue;
    basis.push_back(c);
    span = gfp_span(f, basis);
  }
  return basis;
}

std::vector<Mat> sl2_gens(const FieldCtx& f, bool gl) {
  std::vector<Mat> g;
  const FieldCode xi = f.generator();
  FieldCode t = 1;
  for (unsigned i = 0; i < f.k(); ++i) {
    g.push_back({1, t, 0, 1});
    g.push_back({1, 0, t, 1});
    t = f.mul(t, xi);
  }
  g.push_back(mat_diag({xi, f.inv(xi)}));
  if (gl) g.push_back(mat_diag({xi, 1}));
  return g;
}

std::vector<Mat> sl2_sylow(const FieldCtx& f) {
  std::vector<Mat> s;
  for (FieldCode a = 0; a < f.q(); ++a) s.push_back({1, a, 0, 1});
  return s;
}

std::vector<Mat> su3_sylow(const FieldCtx& f) {
  std::vector<Mat> s;
  for (FieldCode a1 = 0; a1 < f.q(); ++a1)
    for (FieldCode a2 = 0; a2 < f.q(); ++a2)
      if (su3_upper_ok(f, a1, a2)) s.push_back(su3_upper(f, a1, a2));
  return s;
}

std::vector<Mat> su3_gens(const FieldPtr& fp, bool gu) {
  const FieldCtx& f = *fp;
  const std::uint64_t q = sqrt_q(f);
  MatrixRealization r(fp, 3);
  const Mat J = anti_identity(3);
  std::vector<Mat> g;
  const FieldCode xi = f.generator();
  FieldCode t = 1;
  for (unsigned i = 0; i < f.k(); ++i) {
    for (FieldCode a2 = 0; a2 < f.q(); ++a2) {
      if (su3_upper_ok(f, t, a2)) {
        g.push_back(su3_upper(f, t, a2));
        break;
      }
    }
    t = f.mul(t, xi);
  }
  std::vector<FieldCode> kernel;
  for (FieldCode a2 = 1; a2 < f.q(); ++a2)
    if (su3_upper_ok(f, 0, a2)) kernel.push_back(a2);
  for (FieldCode a2 : gfp_basis(f, kernel)) g.push_back(su3_upper(f, 0, a2));
  const std::size_t upper = g.size();
  for (std::size_t i = 0; i < upper; ++i) g.push_back(mat_mul(r, mat_mul(r, J, g[i]), J));
  g.push_back(mat_diag({xi, f.pow(xi, q - 1), f.inv(f.pow(xi, q))}));
  if (gu) g.push_back(mat_diag({1, f.pow(xi, q - 1), 1}));
  return g;
}

// Suzuki group Sz(q), q = 2^(2m+1), in its 4-dimensional representation.
struct Suzuki {
  const FieldCtx& f;
  unsigned m;
  FieldCode theta(FieldCode x) const { return f.frobenius(x, m + 1); }
  Mat S(FieldCode a, FieldCode b) const {
    const FieldCode ta = theta(a);
    const FieldCode c30 = f.add(f.add(f.mul(f.mul(a, a), ta), f.mul(a, b)), theta(b));
    const FieldCode c31 = f.add(f.mul(a, ta), b);
    return {1, 0, 0, 0, a, 1, 0, 0, b, ta, 1, 0, c30, c31, a, 1};
  }
};

std::vector<Mat> sz_gens(const FieldCtx& f) {
  const unsigned m = (f.k() - 1) / 2;
  Suzuki sz{f, m};
  std::vector<Mat> g;
  const FieldCode xi = f.generator();
  FieldCode t = 1;
  for (unsigned i = 0; i < f.k(); ++i) {
    g.push_back(sz.S(t, 0));
    g.push_back(sz.S(0, t));
    t = f.mul(t, xi);
  }
  const std::uint64_t e = 1ull << m;
  g.push_back(mat_diag({f.pow(xi, 1 + e), f.pow(xi, e), f.inv(f.pow(xi, e)), f.inv(f.pow(xi, 1 + e))}));
  g.push_back(anti_identity(4));
  return g;
}

std::vector<Mat> sz_sylow(const FieldCtx& f) {
  Suzuki sz{f, (f.k() - 1) / 2};
  std::vector<Mat> s;
  for (FieldCode a = 0; a < f.q(); ++a)
    for (FieldCode b = 0; b < f.q(); ++b) s.push_back(sz.S(a, b));
  return s;
}

std::vector<GroupElement> as_elements(const std::vector<Mat>& ms) {
  std::vector<GroupElement> out;
  for (const auto& m : ms) out.push_back(GroupElement{m});
  return out;
}

std::vector<Index> indices_of(const Group& g, const std::vector<Mat>& ms) {
  std::vector<Index> out;
  for (const auto& m : ms) out.push_back(g.index_of(GroupElement{m}));
  return out;
}

std::uint64_t parse_uint(const std::string& text, const std::string& spec) {
  if (text.empty() || text.size() > 18 ||
      !std::all_of(text.begin(), text.end(), [](unsigned char c) { return std::isdigit(c); }))
    throw UsageError("bad group parameter in '" + spec + "'");
  return std::stoull(text);
}

std::uint64_t p_part(std::uint64_t n, std::uint64_t p) {
  std::uint64_t r = 1;
  while (n % p == 0) {
    n /= p;
    r *= p;
  }
  return r;
}

void add_cyclic_sylows(Group& g, Index gen, std::uint64_t n) {
  std::vector<Index> powers;
  Index x = 0;
  for (std::uint64_t i = 0; i < n; ++i) {
    powers.push_back(x);
    x = g.mul(x, gen);
  }
  for (auto p : prime_factors(n)) {
    const std::uint64_t pp = p_part(n, p);
    std::vector<Index> s;
    for (std::uint64_t i = 0; i < n; i += n / pp) s.push_back(powers[i]);
    g.set_standard_sylow(static_cast<std::uint32_t>(p), s);
  }
}

std::vector<FieldCode> scalar_center(const FieldCtx& f, std::size_t dim, std::uint64_t det_exp_mod,
                                     std::uint64_t norm_exp) {
  // lambda with lambda^dim == 1 (when det_exp_mod != 0) and lambda^norm_exp == 1 (when != 0).
  std::vector<FieldCode> s;
  for (FieldCode l = 1; l < f.q(); ++l) {
    if (det_exp_mod && f.pow(l, dim) != 1) continue;
    if (norm_exp && f.pow(l, norm_exp) != 1) continue;
    s.push_back(l);
  }
  return s;
}

GroupPtr build_matrix_family(const std::string& spec, const std::string& fam, std::uint64_t q,
                             std::uint64_t max_order) {
  FieldPtr f = family_field(fam, q);
  const FieldCtx& F = *f;
  std::shared_ptr<const Realization> real;
  std::vector<Mat> gens, sylow;
  std::size_t dim = 0;
  std::uint32_t p = F.p();
  if (fam == "sl2" || fam == "gl2" || fam == "psl2" || fam == "pgl2") {
    dim = 2;
    gens = sl2_gens(F, fam == "gl2" || fam == "pgl2");
    sylow = sl2_sylow(F);
    if (fam == "psl2") real = std::make_shared<CosetRealization>(f, 2, scalar_center(F, 2, 1, 0));
    if (fam == "pgl2") real = std::make_shared<CosetRealization>(f, 2, scalar_center(F, 2, 0, 0));
  } else if (fam == "su3" || fam == "gu3" || fam == "psu3") {
    dim = 3;
    gens = su3_gens(f, fam == "gu3");
    sylow = su3_sylow(F);
    if (fam == "psu3") real = std::make_shared<CosetRealization>(f, 3, scalar_center(F, 3, 1, q + 1));
  } else if (fam == "sz") {
    dim = 4;
    gens = sz_gens(F);
    sylow = sz_sylow(F);
  }
  if (!real) real = std::make_shared<MatrixRealization>(f, dim);
  auto g = std::make_shared<Group>(spec, fam, q, real, as_elements(gens), max_order);
  g->set_standard_sylow(p, indices_of(*g, sylow));
  return g;
}

GroupPtr perm_group(const std::string& spec, const std::string& family, std::uint64_t param, std::size_t degree,
                    const std::vector<std::vector<Word>>& images, std::uint64_t max_order);

GroupPtr build_perm_family(const std::string& spec, const std::string& fam, std::uint64_t n,
                           std::uint64_t max_order) {
  std::vector<std::vector<Word>> gens;
  auto cycle = [&](std::vector<Word> pts) {
    std::vector<Word> img(n);
    std::iota(img.begin(), img.end(), 0u);
    for (std::size_t i = 0; i < pts.size(); ++i) img[pts[i]] = pts[(i + 1) % pts.size()];
    return img;
  };
  std::size_t degree = n;
  if (fam == "cyclic") {
    degree = std::max<std::uint64_t>(n, 1);
    std::vector<Word> pts(n);
    std::iota(pts.begin(), pts.end(), 0u);
    gens.push_back(cycle(pts));
  } else if (fam == "dihedral") {
    std::vector<Word> t(n), s(n);
    for (std::uint64_t i = 0; i < n; ++i) {
      t[i] = static_cast<Word>((i + 1) % n);
      s[i] = static_cast<Word>((n - i) % n);
    }
    gens = {t, s};
  } else if (fam == "sym") {
    if (n >= 2) gens.push_back(cycle({0, 1}));
    if (n >= 3) {
      std::vector<Word> pts(n);
      std::iota(pts.begin(), pts.end(), 0u);
      gens.push_back(cycle(pts));
    }
  } else if (fam == "alt") {
    for (Word i = 2; i < n; ++i) gens.push_back(cycle({0, 1, i}));
  }
  auto g = perm_group(spec, fam, n, degree, gens, max_order);
  auto& gm = const_cast<Group&>(*g);
  if (fam == "cyclic" && n > 1) add_cyclic_sylows(gm, g->index_of(GroupElement{gens[0]}), n);
  if (fam == "dihedral") {
    Index t = g->index_of(GroupElement{gens[0]});
    Index s = g->index_of(GroupElement{gens[1]});
    add_cyclic_sylows(gm, t, n);
    if (n % 2 == 1) gm.set_standard_sylow(2, {0, s});
  }
  return g;
}

}  // namespace

FieldPtr family_field(const std::string& family, std::uint64_t q) {
  auto [p, k] = prime_power(q);
  if (family == "su3" || family == "gu3" || family == "psu3") {
    if (2 * k > 12) throw UsageError("q too large for unitary groups");
    return field_make(p, 2 * k);
  }
  if (family == "sz" && (p != 2 || k % 2 == 0))
    throw UsageError("sz needs q = 2^(2m+1), got " + std::to_string(q));
  return field_make(p, k);
}

std::optional<std::uint64_t> family_order(const std::string& fam, std::uint64_t n) {
  auto sat = [](long double v) -> std::uint64_t {
    return v > 1.8e19L ? ~0ull : static_cast<std::uint64_t>(v);
  };
  const long double q = static_cast<long double>(n);
  if (fam == "cyclic") return n;
  if (fam == "dihedral") return 2 * n;
  if (fam == "sym" || fam == "alt") {
    long double f = 1;
    for (std::uint64_t i = 2; i <= n; ++i) f *= i;
    if (fam == "alt" && n >= 2) f /= 2;
    return sat(f);
  }
  if (fam == "sl2" || fam == "pgl2") return sat(q * (q * q - 1));
  if (fam == "gl2") return sat(q * (q * q - 1) * (q - 1));
  if (fam == "psl2") return sat(q * (q * q - 1) / gcd_u(2, n - 1));
  const long double su = q * q * q * (q * q * q + 1) * (q * q - 1);
  if (fam == "su3") return sat(su);
  if (fam == "gu3") return sat(su * (q + 1));
  if (fam == "psu3") return sat(su / gcd_u(3, n + 1));
  if (fam == "sz") return sat(q * q * (q * q + 1) * (q - 1));
  return std::nullopt;
}

namespace {

GroupPtr perm_group(const std::string& spec, const std::string& family, std::uint64_t param, std::size_t degree,
                    const std::vector<std::vector<Word>>& images, std::uint64_t max_order) {
  auto real = std::make_shared<PermRealization>(degree);
  std::vector<GroupElement> gens;
  for (const auto& img : images) {
    if (img.size() != degree) throw UsageError("permutation has wrong degree");
    std::vector<bool> hit(degree, false);
    for (Word w : img) {
      if (w >= degree || hit[w]) throw UsageError("not a permutation of [1.." + std::to_string(degree) + "]");
      hit[w] = true;
    }
    gens.push_back(GroupElement{img});
  }
  return std::make_shared<Group>(spec, family, param, real, gens, max_order);
}

}  // namespace

GroupPtr make_perm_group(const std::string& spec, std::size_t degree,
                         const std::vector<std::vector<Word>>& images, std::uint64_t max_order) {
  return perm_group(spec, "perm", 0, degree, images, max_order);
}

GroupPtr ingest_perm_generators(const std::string& path, std::uint64_t max_order) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open generator file: " + path);
  std::string line;
  std::size_t degree = 0;
  std::vector<std::vector<Word>> gens;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    if (degree == 0) {
      if (std::isdigit(static_cast<unsigned char>(line[first]))) {
        // No header: the first generator fixes the degree.
        std::istringstream count(line);
        std::string tok;
        while (count >> tok) ++degree;
        if (degree > 255) throw UsageError(path + ":" + std::to_string(lineno) + ": degree above 255");
      } else {
        std::string kw;
        long long n = 0;
        if (!(ls >> kw >> n) || kw != "degree" || n < 1 || n > 255)
          throw UsageError(path + ":" + std::to_string(lineno) + ": expected 'degree n'");
        degree = static_cast<std::size_t>(n);
        continue;
      }
    }
    std::vector<Word> img;
    std::string tok;
    while (ls >> tok) {
      if (!std::all_of(tok.begin(), tok.end(), [](unsigned char c) { return std::isdigit(c); }) ||
          tok.size() > 4)
        throw UsageError(path + ":" + std::to_string(lineno) + ": bad integer '" + tok + "'");
      const long v = std::stol(tok);
      if (v < 1 || static_cast<std::size_t>(v) > degree)
        throw UsageError(path + ":" + std::to_string(lineno) + ": point out of range");
      img.push_back(static_cast<Word>(v - 1));
    }
    if (img.size() != degree)
      throw UsageError(path + ":" + std::to_string(lineno) + ": expected " + std::to_string(degree) +
                       " images, got " + std::to_string(img.size()));
    gens.push_back(std::move(img));
  }
  if (degree == 0) throw UsageError(path + ": missing 'degree n' line");
  return make_perm_group("perm:" + path, degree, gens, max_order);
}

GroupPtr make_group(const std::string& spec, std::uint64_t max_order) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) throw UsageError("group spec must be family:param, got '" + spec + "'");
  const std::string fam = spec.substr(0, colon);
  const std::string arg = spec.substr(colon + 1);
  if (fam == "perm") return ingest_perm_generators(arg, max_order);

  static const std::set<std::string> perm_fams{"cyclic", "dihedral", "sym", "alt"};
  static const std::set<std::string> mat_fams{"sl2", "gl2", "psl2", "pgl2", "su3", "gu3", "psu3", "sz"};
  if (!perm_fams.count(fam) && !mat_fams.count(fam)) throw UsageError("unknown group family '" + fam + "'");
  const std::uint64_t n = parse_uint(arg, spec);
  if (fam == "cyclic" && (n < 1 || n > 255)) throw UsageError("cyclic:n needs 1 <= n <= 255");
  if (fam == "dihedral" && (n < 3 || n > 255)) throw UsageError("dihedral:n needs 3 <= n <= 255");
  if ((fam == "sym" || fam == "alt") && (n < 1 || n > 255)) throw UsageError(fam + ":n needs 1 <= n <= 255");
  if (mat_fams.count(fam)) {
    if (n < 2 || n > (1u << 31)) throw UsageError("q out of range in '" + spec + "'");
    family_field(fam, n);  // validates q
  }
  const auto expected = family_order(fam, n);
  if (expected && *expected > max_order)
    throw CapExceeded(spec + ": projected order " + std::to_string(*expected) + " exceeds cap " +
                      std::to_string(max_order));
  GroupPtr g = perm_fams.count(fam) ? build_perm_family(spec, fam, n, max_order)
                                    : build_matrix_family(spec, fam, n, max_order);
  if (expected && g->order() != *expected)
    throw Error(spec + ": enumerated " + std::to_string(g->order()) + " elements, expected " +
                std::to_string(*expected));
  return g;
}

GroupPtr quotient_by_center(const Group& g, std::uint64_t max_order) {
  auto base = dynamic_cast<const MatrixRealization*>(&g.realization());
  if (!base) throw DomainError("quotient_by_center needs a matrix group");
  const std::size_t d = base->dim();
  std::vector<FieldCode> scalars;
  for (Index z : g.center()) {
    auto w = g.word(z);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        if ((i == j && w[i * d + j] != w[0]) || (i != j && w[i * d + j] != 0))
          throw DomainError("center of " + g.spec() + " is not scalar");
    scalars.push_back(w[0]);
  }
  if (auto c = dynamic_cast<const CosetRealization*>(base)) {
    // Compose with the scalars already factored out.
    std::set<FieldCode> all;
    for (FieldCode a : c->scalars())
      for (FieldCode b : scalars) all.insert(base->field()->mul(a, b));
    scalars.assign(all.begin(), all.end());
  }
  auto real = std::make_shared<CosetRealization>(base->field(), d, scalars);
  std::vector<GroupElement> gens;
  for (Index i : g.generators()) gens.push_back(g.element(i));
  static const std::map<std::string, std::string> names{
      {"sl2", "psl2"}, {"gl2", "pgl2"}, {"su3", "psu3"}, {"gu3", "pgu3"}};
  auto it = names.find(g.family());
  std::string fam = it != names.end() ? it->second : g.family() + "/Z";
  std::string spec = it != names.end() ? fam + ":" + std::to_string(g.param()) : g.spec() + "/Z";
  auto out = std::make_shared<Group>(spec, fam, g.param(), real, gens, max_order);
  if (out->order() * g.center().size() != g.order())
    throw Error("quotient order mismatch for " + g.spec());
  for (const auto& [p, members] : g.standard_sylow()) {
    std::vector<Index> img;
    for (Index i : members) img.push_back(out->index_of(g.element(i)));
    out->set_standard_sylow(p, img);
  }
  return out;
}

std::vector<Index> subgroup_closure(const Group& g, const std::vector<Index>& gens) {
  std::vector<std::uint8_t> in(g.order(), 0);
  std::vector<Index> members{0};
  in[0] = 1;
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (Index s : gens) {
      Index y = g.mul(members[i], s);
      if (!in[y]) {
        in[y] = 1;
        members.push_back(y);
      }
    }
  }
  std::sort(members.begin(), members.end());
  return members;
}

bool generates_group(const Group& g, const std::vector<Index>& elems) {
  // Add an element only when it escapes the current subgroup; the order at
  // least doubles each time, so few closures are needed.
  std::vector<Index> gens;
  std::vector<std::uint8_t> in(g.order(), 0);
  in[0] = 1;
  std::size_t size = 1;
  for (Index e : elems) {
    if (in[e]) continue;
    gens.push_back(e);
    auto h = subgroup_closure(g, gens);
    size = h.size();
    for (Index x : h) in[x] = 1;
    if (size == g.order()) return true;
  }
  return size == g.order();
}

std::variant<GroupElement, std::uint64_t> elem_op(const Group& g, const GroupElement& a,
                                                  const GroupElement& b, ElemOp op) {
  const Index x = g.index_of(a);
  switch (op) {
    case ElemOp::inv: return g.element(g.inv(x));
    case ElemOp::order: return g.element_order(x);
    case ElemOp::mul: return g.element(g.mul(x, g.index_of(b)));
    case ElemOp::conj: return g.element(g.conj(x, g.index_of(b)));
  }
  throw DomainError("unknown element operation");
}

SylowStructure sylow_structure(const Group& g, std::uint32_t p) {
  auto it = g.standard_sylow().find(p);
  if (it == g.standard_sylow().end())
    throw DomainError("no standard Sylow " + std::to_string(p) + "-subgroup for " + g.spec());
  const std::uint64_t expected = p_part(g.order(), p);
  if (it->second.size() != expected)
    throw Error("standard Sylow subgroup has order " + std::to_string(it->second.size()) +
                ", expected " + std::to_string(expected));
  SylowStructure out;
  out.p = p;
  std::map<std::vector<Index>, std::size_t> seen;
  out.subgroups.push_back(it->second);
  seen[it->second] = 0;
  for (std::size_t i = 0; i < out.subgroups.size(); ++i) {
    for (Index h : g.generators()) {
      std::vector<Index> c;
      c.reserve(out.subgroups[i].size());
      for (Index x : out.subgroups[i]) c.push_back(g.conj(x, h));
      std::sort(c.begin(), c.end());
      if (seen.emplace(c, out.subgroups.size()).second) out.subgroups.push_back(std::move(c));
    }
  }
  const std::uint64_t n = out.subgroups.size();
  out.normalizer_orders.assign(n, g.order() / n);
  out.sylow_of.assign(g.order(), -1);
  out.ti = true;
  std::vector<std::uint32_t> hits(g.order(), 0);
  for (std::size_t s = 0; s < n; ++s) {
    for (Index x : out.subgroups[s]) {
      if (out.sylow_of[x] < 0) out.sylow_of[x] = static_cast<std::int32_t>(s);
      if (x != 0 && ++hits[x] > 1) out.ti = false;
    }
  }
  return out;
}

std::vector<FieldCode> conjugate_transpose(const FieldCtx& f, std::span<const Word> m, std::size_t d) {
  const unsigned half = f.k() / 2;
  std::vector<FieldCode> out(d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) out[j * d + i] = f.frobenius(m[i * d + j], half);
  return out;
}

bool is_unitary(const FieldPtr& fp, std::span<const Word> m, std::size_t d) {
  const FieldCtx& f = *fp;
  if (f.k() % 2) return false;
  MatrixRealization r(fp, d);
  const Mat M(m.begin(), m.end());
  const Mat J = anti_identity(d);
  const Mat prod = mat_mul(r, mat_mul(r, conjugate_transpose(f, m, d), J), M);
  return prod == J;
}

}  // namespace killform
