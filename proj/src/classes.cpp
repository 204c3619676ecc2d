#include "killform/classes.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "killform/error.hpp"

namespace killform {

ClassTable conjugacy_classes(const Group& g) {
  constexpr std::uint32_t none = ~0u;
  const std::size_t n = g.order();
  std::vector<std::uint32_t> raw(n, none);
  std::vector<std::vector<Index>> orbits;
  std::vector<Index> ginv;
  for (Index s : g.generators()) ginv.push_back(g.inv(s));

  for (Index seed = 0; seed < n; ++seed) {
    if (raw[seed] != none) continue;
    const auto id = static_cast<std::uint32_t>(orbits.size());
    std::vector<Index> orbit{seed};
    raw[seed] = id;
    for (std::size_t i = 0; i < orbit.size(); ++i) {
      for (std::size_t k = 0; k < ginv.size(); ++k) {
        const Index y = g.mul(g.mul(g.generators()[k], orbit[i]), ginv[k]);
        if (raw[y] == none) {
          raw[y] = id;
          orbit.push_back(y);
        }
      }
    }
    orbits.push_back(std::move(orbit));
  }

  std::vector<ConjClass> cls(orbits.size());
  for (std::size_t c = 0; c < orbits.size(); ++c) {
    auto& k = cls[c];
    k.members = std::move(orbits[c]);
    std::sort(k.members.begin(), k.members.end());
    k.rep = k.members.front();
    for (Index x : k.members)
      if (g.compare(x, k.rep) < 0) k.rep = x;
    k.size = k.members.size();
    k.centralizer_order = n / k.size;
    k.elt_order = g.element_order(k.rep);
  }
  std::vector<std::uint32_t> perm(cls.size());
  std::iota(perm.begin(), perm.end(), 0u);
  std::sort(perm.begin(), perm.end(), [&](std::uint32_t a, std::uint32_t b) {
    const auto& x = cls[a];
    const auto& y = cls[b];
    if (x.elt_order != y.elt_order) return x.elt_order < y.elt_order;
    if (x.size != y.size) return x.size < y.size;
    return g.compare(x.rep, y.rep) < 0;
  });
  std::vector<std::uint32_t> new_id(cls.size());
  ClassTable t;
  for (std::uint32_t i = 0; i < perm.size(); ++i) {
    new_id[perm[i]] = i;
    t.classes.push_back(std::move(cls[perm[i]]));
    t.classes.back().id = i;
  }
  t.class_of.resize(n);
  for (std::size_t i = 0; i < n; ++i) t.class_of[i] = new_id[raw[i]];
  for (auto& k : t.classes) k.inverse_class = t.class_of[g.inv(k.rep)];
  return t;
}

std::vector<Index> centralizer(const Group& g, Index x) {
  std::vector<Index> out;
  for (Index i = 0; i < g.order(); ++i)
    if (g.commute(i, x)) out.push_back(i);
  return out;
}

bool is_real(const ClassTable& t, std::uint32_t class_id) { return t[class_id].real(); }

GStableSet build_stable_set(const Group& g, const ClassTable& t, std::vector<std::uint32_t> ids,
                            StableSetRequire require) {
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  if (ids.empty()) throw DomainError("empty G-stable set");
  GStableSet s;
  s.in_set.assign(g.order(), 0);
  for (auto id : ids) {
    if (id >= t.size()) throw UsageError("class id out of range: " + std::to_string(id));
    const auto& c = t[id];
    if (c.rep == 0) throw DomainError("G-stable set may not contain the identity class");
    if (require.noncentral && c.central())
      throw DomainError("class " + std::to_string(id) + " is central");
    if (require.real && !c.real()) throw DomainError("class " + std::to_string(id) + " is not real");
    for (Index x : c.members) s.in_set[x] = 1;
    s.members.insert(s.members.end(), c.members.begin(), c.members.end());
  }
  std::sort(s.members.begin(), s.members.end());
  s.class_ids = std::move(ids);
  if (require.generates && !generates_group(g, s.members))
    throw DomainError("classes do not generate " + g.spec() + " (first class " +
                      std::to_string(s.class_ids.front()) + ")");
  return s;
}

std::vector<std::uint32_t> select_classes(const ClassTable& t, const std::string& selector) {
  std::vector<std::uint32_t> out;
  std::stringstream ss(selector);
  std::string tok;
  auto number = [&](const std::string& s) -> std::uint64_t {
    if (s.empty() || s.size() > 12 || !std::all_of(s.begin(), s.end(), ::isdigit))
      throw UsageError("bad number in class selector '" + selector + "'");
    return std::stoull(s);
  };
  bool any = false;
  while (std::getline(ss, tok, ',')) {
    any = true;
    if (tok.rfind("ord=", 0) == 0) {
      const auto k = number(tok.substr(4));
      for (const auto& c : t.classes)
        if (c.elt_order == k && !c.central()) out.push_back(c.id);
    } else if (tok.rfind("idx=", 0) == 0) {
      const auto i = number(tok.substr(4));
      if (i >= t.size()) throw UsageError("class index out of range in '" + selector + "'");
      out.push_back(static_cast<std::uint32_t>(i));
    } else if (tok == "real") {
      for (const auto& c : t.classes)
        if (c.real() && !c.central()) out.push_back(c.id);
    } else if (tok == "all-noncentral") {
      for (const auto& c : t.classes)
        if (!c.central()) out.push_back(c.id);
    } else {
      throw UsageError("unknown class selector '" + tok + "'");
    }
  }
  if (!any) throw UsageError("empty class selector");
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  if (out.empty()) throw UsageError("class selector '" + selector + "' matches no class");
  return out;
}

std::string to_string(SU3Family f) { return "C" + std::to_string(static_cast<int>(f) + 1); }

namespace {

// Rank of the rows over the field, by Gaussian elimination.
std::size_t row_rank(const FieldCtx& f, std::vector<std::vector<FieldCode>> rows) {
  std::size_t rank = 0;
  const std::size_t cols = rows.empty() ? 0 : rows[0].size();
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t piv = rank;
    while (piv < rows.size() && rows[piv][c] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[rank]);
    const FieldCode inv = f.inv(rows[rank][c]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][c] == 0) continue;
      const FieldCode factor = f.mul(rows[r][c], inv);
      for (std::size_t j = 0; j < cols; ++j)
        rows[r][j] = f.sub(rows[r][j], f.mul(factor, rows[rank][j]));
    }
    ++rank;
  }
  return rank;
}

}  // namespace

SU3Classification su3_family_classify(const Group& g, Index x, const ClassTable* t) {
  if (g.family() != "su3") throw DomainError("su3_family_classify needs an su3:q group");
  const FieldCtx& f = *g.field();
  const std::uint64_t q = g.param();
  auto w = g.word(x);
  auto M = [&](int i, int j) { return w[i * 3 + j]; };
  auto mul = [&](FieldCode a, FieldCode b) { return f.mul(a, b); };
  auto add = [&](FieldCode a, FieldCode b) { return f.add(a, b); };
  auto sub = [&](FieldCode a, FieldCode b) { return f.sub(a, b); };

  // chi(l) = l^3 - c2 l^2 + c1 l - c0
  const FieldCode c2 = add(add(M(0, 0), M(1, 1)), M(2, 2));
  const FieldCode c1 = add(add(sub(mul(M(0, 0), M(1, 1)), mul(M(0, 1), M(1, 0))),
                               sub(mul(M(0, 0), M(2, 2)), mul(M(0, 2), M(2, 0)))),
                           sub(mul(M(1, 1), M(2, 2)), mul(M(1, 2), M(2, 1))));
  const FieldCode c0 =
      add(sub(mul(M(0, 0), sub(mul(M(1, 1), M(2, 2)), mul(M(1, 2), M(2, 1)))),
              mul(M(0, 1), sub(mul(M(1, 0), M(2, 2)), mul(M(1, 2), M(2, 0))))),
          mul(M(0, 2), sub(mul(M(1, 0), M(2, 1)), mul(M(1, 1), M(2, 0)))));
  std::vector<FieldCode> poly{f.neg(c0), c1, f.neg(c2), 1};  // low first

  SU3Classification out;
  // Peel off roots with multiplicity by synthetic division.
  for (FieldCode r = 0; r < f.q() && poly.size() > 1;) {
    FieldCode acc = 0;
    std::vector<FieldCode> quot(poly.size() - 1);
    for (std::size_t i = poly.size(); i-- > 0;) {
      acc = add(mul(acc, r), poly[i]);
      if (i > 0) quot[i - 1] = acc;
    }
    if (acc == 0) {
      out.eigenvalues.push_back(r);
      poly = std::move(quot);
    } else {
      ++r;
    }
  }

  std::vector<FieldCode> I(9, 0), A(w.begin(), w.end()), A2(9, 0);
  for (int i = 0; i < 3; ++i) I[i * 4] = 1;
  g.realization().multiply(A.data(), A.data(), A2.data());
  out.minpoly_degree = static_cast<unsigned>(row_rank(f, {I, A, A2}));
  out.elt_order = g.element_order(x);
  if (t) {
    out.centralizer_order = (*t)[t->class_of[x]].centralizer_order;
  } else {
    out.centralizer_order = centralizer(g, x).size();
  }

  const auto& e = out.eigenvalues;
  const std::uint64_t d = std::gcd<std::uint64_t>(3, q + 1);
  if (e.size() == 3) {
    if (e[0] == e[1] && e[1] == e[2]) {
      out.family = out.minpoly_degree == 1 ? SU3Family::C1
                   : out.minpoly_degree == 2 ? SU3Family::C2
                                             : SU3Family::C3;
    } else if (e[0] == e[1] || e[1] == e[2]) {
      out.family = out.minpoly_degree == 2 ? SU3Family::C4 : SU3Family::C5;
    } else {
      const bool norm_one = std::all_of(e.begin(), e.end(), [&](FieldCode l) { return f.pow(l, q + 1) == 1; });
      out.family = norm_one ? SU3Family::C6 : SU3Family::C7;
    }
  } else if (e.empty()) {
    out.family = SU3Family::C8;
  } else {
    throw Error("element " + g.label(x) + " matches no SU3 class family");
  }
  switch (out.family) {
    case SU3Family::C1: out.expected_centralizer_order = g.order(); break;
    case SU3Family::C2: out.expected_centralizer_order = q * q * q * (q + 1); break;
    case SU3Family::C3: out.expected_centralizer_order = d * q * q; break;
    case SU3Family::C4: out.expected_centralizer_order = q * (q + 1) * (q + 1) * (q - 1); break;
    case SU3Family::C5: out.expected_centralizer_order = q * (q + 1); break;
    case SU3Family::C6: out.expected_centralizer_order = (q + 1) * (q + 1); break;
    case SU3Family::C7: out.expected_centralizer_order = q * q - 1; break;
    case SU3Family::C8: out.expected_centralizer_order = q * q - q + 1; break;
  }
  return out;
}

}  // namespace killform
