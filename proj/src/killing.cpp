#include "killform/killing.hpp"

#include <algorithm>
#include <map>

#include "killform/error.hpp"
#include "killform/parallel.hpp"
#include "killform/union_find.hpp"

namespace killform {

ClassSupportFn support_function(const Group& g, const ClassTable& t, GStableSet c) {
  for (auto id : c.class_ids)
    if (t[id].central()) throw DomainError("G-stable set contains central class " + std::to_string(id));
  ClassSupportFn fn;
  fn.group = &g;
  fn.table = &t;
  fn.set = std::move(c);
  fn.f.assign(t.size(), 0);
  const auto& members = fn.set.members;
  parallel_for(t.size(), [&](std::size_t d, unsigned) {
    const Index r = t[static_cast<std::uint32_t>(d)].rep;
    std::uint64_t count = 0;
    for (Index x : members)
      if (g.commute(r, x)) ++count;
    fn.f[d] = count;
  });
  return fn;
}

std::uint64_t killing_value(const ClassSupportFn& fn, Index a, Index b) {
  if (!fn.set.contains(a) || !fn.set.contains(b))
    throw DomainError("killing_value arguments must lie in the G-stable set");
  return fn.at_product(a, b);
}

namespace {

void finish_components(const Group& g, const std::vector<Index>& members, UnionFind& uf,
                       ComponentReport& rep) {
  const std::size_t n = members.size();
  // Smallest encoding in each component fixes the component numbering.
  std::map<std::uint32_t, std::uint32_t> min_member;  // root -> position
  for (std::uint32_t i = 0; i < n; ++i) {
    const auto r = uf.find(i);
    auto it = min_member.find(r);
    if (it == min_member.end())
      min_member.emplace(r, i);
    else if (g.compare(members[i], members[it->second]) < 0)
      it->second = i;
  }
  std::vector<std::pair<std::uint32_t, std::uint32_t>> roots;  // (min position, root)
  for (auto [r, pos] : min_member) roots.emplace_back(pos, r);
  std::sort(roots.begin(), roots.end(), [&](const auto& a, const auto& b) {
    return g.compare(members[a.first], members[b.first]) < 0;
  });
  std::map<std::uint32_t, std::uint32_t> comp_of_root;
  for (std::uint32_t c = 0; c < roots.size(); ++c) comp_of_root[roots[c].second] = c;
  rep.component_count = roots.size();
  rep.component_sizes.assign(roots.size(), 0);
  rep.vertex_to_component.resize(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    const auto c = comp_of_root[uf.find(i)];
    rep.vertex_to_component[i] = c;
    ++rep.component_sizes[c];
  }
}

}  // namespace

ComponentReport killing_graph_components(const ClassSupportFn& fn, bool compare_commuting,
                                         std::size_t cap) {
  const Group& g = *fn.group;
  const auto& members = fn.set.members;
  const std::size_t n = members.size();
  if (n > cap)
    throw CapExceeded("G-stable set has " + std::to_string(n) + " elements, graph cap is " +
                      std::to_string(cap));
  UnionFind uf(n);
  ComponentReport rep;
  bool equal = true;
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::uint32_t j = i + 1; j < n; ++j) {
      if (!compare_commuting) {
        if (uf.same(i, j)) continue;
        if (fn.at_product(members[i], members[j]) > 0) uf.unite(i, j);
        continue;
      }
      const Index ab = g.mul(members[i], members[j]);
      const bool k_edge = fn.f[fn.table->class_of[ab]] > 0;
      const bool c_edge = ab == g.mul(members[j], members[i]);
      if (c_edge && !k_edge) throw Error("commuting edge missing from Killing graph");
      rep.killing_edges += k_edge;
      rep.commuting_edges += c_edge;
      if (k_edge != c_edge) equal = false;
      if (k_edge) uf.unite(i, j);
    }
  }
  if (compare_commuting) rep.equals_commuting_graph = equal;
  finish_components(g, members, uf, rep);
  return rep;
}

ComponentReport commuting_graph_components(const Group& g, const GStableSet& c, std::size_t cap) {
  const auto& members = c.members;
  const std::size_t n = members.size();
  if (n > cap)
    throw CapExceeded("G-stable set has " + std::to_string(n) + " elements, graph cap is " +
                      std::to_string(cap));
  UnionFind uf(n);
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = i + 1; j < n; ++j)
      if (!uf.same(i, j) && g.commute(members[i], members[j])) uf.unite(i, j);
  ComponentReport rep;
  finish_components(g, members, uf, rep);
  return rep;
}

std::vector<Index> component_ordering(const ClassSupportFn& fn, const ComponentReport& comp) {
  const Group& g = *fn.group;
  const auto& members = fn.set.members;
  std::vector<std::uint32_t> pos(members.size());
  for (std::uint32_t i = 0; i < pos.size(); ++i) pos[i] = i;
  std::sort(pos.begin(), pos.end(), [&](std::uint32_t a, std::uint32_t b) {
    if (comp.vertex_to_component[a] != comp.vertex_to_component[b])
      return comp.vertex_to_component[a] < comp.vertex_to_component[b];
    return g.compare(members[a], members[b]) < 0;
  });
  std::vector<Index> out;
  out.reserve(pos.size());
  for (auto p : pos) out.push_back(members[p]);
  return out;
}

KillingMatrix killing_matrix(const ClassSupportFn& fn, const ComponentReport& comp, std::size_t cap) {
  const std::size_t n = fn.set.size();
  if (n > cap)
    throw CapExceeded("G-stable set has " + std::to_string(n) + " elements, matrix cap is " +
                      std::to_string(cap));
  KillingMatrix k;
  k.n = n;
  k.ordering = component_ordering(fn, comp);
  std::size_t off = 0;
  for (auto s : comp.component_sizes) {
    k.block_offsets.push_back(off);
    off += s;
  }
  k.block_offsets.push_back(n);
  k.entries.assign(n * n, 0);
  parallel_for(n, [&](std::size_t i, unsigned) {
    for (std::size_t j = 0; j < n; ++j)
      k.entries[i * n + j] = static_cast<std::uint32_t>(fn.at_product(k.ordering[i], k.ordering[j]));
  });
  return k;
}

KillingMatrix killing_matrix(const ClassSupportFn& fn, std::size_t cap) {
  if (fn.set.size() > cap)
    throw CapExceeded("G-stable set has " + std::to_string(fn.set.size()) +
                      " elements, matrix cap is " + std::to_string(cap));
  return killing_matrix(fn, killing_graph_components(fn), cap);
}

PartnerCheck cross_sylow_partner_check(const ClassSupportFn& fn, const SylowStructure& syl) {
  const Group& g = *fn.group;
  if (g.family() != "sl2" && g.family() != "psl2")
    throw DomainError("cross-Sylow partner check needs an sl2 or psl2 group");
  const std::uint32_t p = syl.p;
  if (p == 2) throw DomainError("cross-Sylow partner check needs odd q");
  std::vector<std::vector<Index>> bucket(syl.subgroups.size());
  for (Index x : fn.set.members)
    if (syl.sylow_of[x] >= 0) bucket[syl.sylow_of[x]].push_back(x);

  PartnerCheck out;
  out.sylow_count = bucket.size();
  out.per_sylow = bucket.empty() ? 0 : bucket[0].size();
  bool perm_ok = true;
  for (std::size_t i = 0; i < bucket.size(); ++i) {
    for (std::size_t j = 0; j < bucket.size(); ++j) {
      if (i == j) continue;
      std::vector<std::uint32_t> col_hits(bucket[j].size(), 0);
      for (Index x : bucket[i]) {
        std::uint64_t partners = 0, nonzero = 0;
        for (std::size_t c = 0; c < bucket[j].size(); ++c) {
          const Index y = bucket[j][c];
          const Index z = g.mul(x, y);
          if (!g.is_central(z) && g.is_central(g.power(z, p))) ++partners;
          const auto v = fn.f[fn.table->class_of[z]];
          if (v == 0) continue;
          ++nonzero;
          ++col_hits[c];
          if (out.scale == 0) out.scale = v;
          if (v != out.scale) perm_ok = false;
        }
        ++out.pairs_checked;
        if (partners == 1) ++out.unique_pairs;
        if (nonzero != 1) perm_ok = false;
      }
      for (auto h : col_hits)
        if (h != 1) perm_ok = false;
    }
  }
  out.all_unique = out.pairs_checked > 0 && out.unique_pairs == out.pairs_checked;
  out.blocks_scaled_permutations = perm_ok && out.pairs_checked > 0;
  return out;
}

}  // namespace killform
