#include "killform/harness.hpp"

#include <algorithm>
#include <bit>
#include <set>

#include "killform/error.hpp"

namespace killform {

void Verdict::add(std::string claim, std::string expected, std::string observed) {
  evidence.push_back({std::move(claim), std::move(expected), std::move(observed)});
}

void Verdict::add(std::string claim, bool expected, bool observed) {
  add(std::move(claim), std::string(expected ? "true" : "false"), std::string(observed ? "true" : "false"));
}

void Verdict::add(std::string claim, std::uint64_t expected, std::uint64_t observed) {
  add(std::move(claim), std::to_string(expected), std::to_string(observed));
}

void Verdict::finish() {
  pass = !skipped && !evidence.empty() &&
         std::all_of(evidence.begin(), evidence.end(), [](const Evidence& e) { return e.ok(); });
}

Verdict skipped_verdict(const std::string& theorem, const std::string& reason) {
  Verdict v;
  v.theorem = theorem;
  v.skipped = true;
  v.note(reason);
  v.finish();
  return v;
}

const Group& Context::group(const std::string& spec) {
  auto it = groups_.find(spec);
  if (it == groups_.end()) it = groups_.emplace(spec, make_group(spec, cfg_.max_order)).first;
  return *it->second;
}

const ClassTable& Context::classes(const std::string& spec) {
  auto it = tables_.find(spec);
  if (it == tables_.end())
    it = tables_.emplace(spec, std::make_unique<ClassTable>(conjugacy_classes(group(spec)))).first;
  return *it->second;
}

namespace {

std::string str(const mpz_class& v) { return v.get_str(); }

bool is_power_of(std::uint64_t n, std::uint64_t p) {
  if (n < 2) return false;
  while (n % p == 0) n /= p;
  return n == 1;
}

std::string class_name(const ConjClass& c) {
  return "class " + std::to_string(c.id) + " (order " + std::to_string(c.elt_order) + ", size " +
         std::to_string(c.size) + ")";
}

std::vector<std::uint32_t> classes_of_order(const ClassTable& t, std::uint64_t ord) {
  std::vector<std::uint32_t> out;
  for (const auto& c : t.classes)
    if (c.elt_order == ord && !c.central()) out.push_back(c.id);
  return out;
}

ClassSupportFn single_class_fn(const Group& g, const ClassTable& t, std::uint32_t id) {
  return support_function(g, t, build_stable_set(g, t, {id}, {false, false, true}));
}

std::uint64_t field_prime(std::uint64_t q) { return prime_power(q).first; }

}  // namespace

Verdict verify_rank_one_involutions(Context& ctx, const std::string& family, std::uint64_t q) {
  Verdict v;
  v.theorem = "rank1-involutions";
  v.params = {{"family", family}, {"q", std::to_string(q)}};
  prime_power(q);
  if (family == "psl2") {
    if (q < 4) throw UsageError("psl2 needs q >= 4");
  } else if (family == "psu3" || family == "su3") {
    if (q == 2) throw UsageError("unitary family needs q != 2");
  } else if (family == "sz") {
    if (q < 8) throw UsageError("sz needs q >= 8");
  } else {
    throw UsageError("rank1-involutions family must be psl2, psu3, su3 or sz");
  }
  const std::string spec = family + ":" + std::to_string(q);
  const Group& g = ctx.group(spec);
  const ClassTable& t = ctx.classes(spec);
  const auto& cfg = ctx.config();
  const auto inv = classes_of_order(t, 2);
  v.add("noncentral involution classes", std::uint64_t{1}, inv.size());
  if (inv.size() != 1) {
    v.finish();
    return v;
  }
  const ConjClass& c = t[inv[0]];
  const auto fn = single_class_fn(g, t, c.id);
  const bool even = q % 2 == 0;
  if (!even) {
    // PSL2(5) is isomorphic to PSL2(4) and has a strongly embedded subgroup.
    const bool exceptional = family == "psl2" && q == 5;
    const auto rep = killing_graph_components(fn, exceptional, cfg.graph_cap);
    v.add("reducible", exceptional, rep.component_count > 1);
    v.add("component count", std::uint64_t{exceptional ? 5u : 1u}, rep.component_count);
    if (exceptional) {
      v.add("Killing graph equals commuting graph", true, rep.equals_commuting_graph.value_or(false));
      v.note("psl2:5 is isomorphic to psl2:4, so its involutions behave as in even characteristic");
    }
    v.finish();
    return v;
  }

  const auto rep = killing_graph_components(fn, true, cfg.graph_cap);
  const auto syl = sylow_structure(g, 2);
  const std::uint64_t expected_components =
      family == "psl2" ? q + 1 : family == "sz" ? q * q + 1 : q * q * q + 1;
  v.add("reducible", true, rep.component_count > 1);
  v.add("Killing graph equals commuting graph", true, rep.equals_commuting_graph.value_or(false));
  v.add("component count equals number of Sylow 2-subgroups", syl.subgroups.size(), rep.component_count);
  v.add("component count", expected_components, rep.component_count);
  if (family == "psu3" || family == "su3") {
    v.add("class size (q^3+1)(q-1)", (q * q * q + 1) * (q - 1), c.size);
    if (c.size != q * q * q * (q - 1))
      v.note("class size " + std::to_string(c.size) + " differs from q^3(q-1) = " +
             std::to_string(q * q * q * (q - 1)) + "; the centralizer order q^3(q+1) forces (q^3+1)(q-1)");
  }

  const auto k = killing_matrix(fn, rep, cfg.matrix_cap);
  const std::uint64_t m = q - 1;
  bool sizes_ok = true, diag_ok = true, off_ok = true;
  for (std::size_t b = 0; b < k.block_count(); ++b) {
    const std::size_t lo = k.block_offsets[b], hi = k.block_offsets[b + 1];
    if (hi - lo != m) sizes_ok = false;
    for (std::size_t i = lo; i < hi; ++i)
      for (std::size_t j = lo; j < hi; ++j) {
        if (i == j && k.at(i, j) != c.size) diag_ok = false;
        if (i != j && k.at(i, j) != q - 1) off_ok = false;
      }
  }
  v.add("every block has size q-1", true, sizes_ok);
  v.add("block diagonal entries equal |C|", true, diag_ok);
  v.add("block off-diagonal entries equal q-1", true, off_ok);

  // Block = a I + b Theta with a = |C| - (q-1), b = q-1.
  const mpz_class a = static_cast<unsigned long>(c.size - (q - 1));
  const mpz_class bb = static_cast<unsigned long>(q - 1);
  mpz_class expected_block;
  mpz_pow_ui(expected_block.get_mpz_t(), a.get_mpz_t(), m - 1);
  expected_block *= a + bb * static_cast<unsigned long>(m);
  const auto b0 = bareiss_det_rank(ExactMatrix::block(k, 0, k.block_offsets[1]), cfg.bareiss_cap);
  v.add("block determinant a^(m-1)(a+mb)", str(expected_block), str(*b0.det));

  ExactMatrix e(m), h(m);
  for (std::size_t i = 0; i < m; ++i) {
    e(i, i) = a;
    for (std::size_t j = 0; j < m; ++j) h(i, j) = bb;
  }
  const auto mr = miller_invertible(e, h);
  mpq_class tr(bb * static_cast<unsigned long>(m), a);
  tr.canonicalize();
  v.add("Miller trace Tr(H E^-1)", tr.get_str(), mr.trace.get_str());
  v.add("Miller criterion says invertible", true, mr.invertible);

  const auto bd = blockwise_det(k, fn, cfg.bareiss_cap);
  mpz_class total;
  mpz_pow_ui(total.get_mpz_t(), expected_block.get_mpz_t(), rep.component_count);
  v.add("det(K) equals block determinant to the component count", true, bd.det && *bd.det == total);
  v.add("non-degenerate", true, bd.nonzero);
  v.finish();
  return v;
}

Verdict verify_unipotent_irreducible(Context& ctx, const std::string& spec, std::uint32_t p) {
  Verdict v;
  v.theorem = "unipotent-irreducible";
  v.params = {{"group", spec}, {"p", std::to_string(p)}};
  if (!is_prime(p)) throw UsageError("p must be prime");
  const Group& g = ctx.group(spec);
  static const std::set<std::string> rank_one{"psl2", "sl2", "psu3", "su3", "sz"};
  const bool lie = rank_one.count(g.family()) > 0;
  if (!lie && g.family() != "perm")
    throw UsageError("unipotent-irreducible supports psl2, sl2, psu3, su3, sz and perm groups");
  if (!lie && p == 2) throw UsageError("for permutation groups only odd p is covered");
  if (lie && field_prime(g.param()) != p) throw UsageError("p must be the characteristic of the field");
  if (g.order() % p != 0) throw UsageError("p does not divide the group order");
  const ClassTable& t = ctx.classes(spec);
  std::size_t checked = 0;
  for (const auto& c : t.classes) {
    if (c.central() || !is_power_of(c.elt_order, p)) continue;
    ++checked;
    const bool expect_connected = !(lie && p == 2 && c.elt_order == 2);
    const auto fn = single_class_fn(g, t, c.id);
    const auto rep = killing_graph_components(fn, false, ctx.config().graph_cap);
    v.add(class_name(c) + " connected", expect_connected, rep.component_count == 1);
    if (lie && c.elt_order > p) v.note(class_name(c) + " has element order " + std::to_string(c.elt_order) + " > p");
  }
  v.add("classes of nontrivial p-elements checked", true, checked > 0);
  v.finish();
  return v;
}

Verdict verify_psl2_unipotent(Context& ctx, std::uint64_t q) {
  Verdict v;
  v.theorem = "psl2-unipotent";
  v.params = {{"q", std::to_string(q)}};
  const std::uint64_t p = field_prime(q);
  if (q % 2 == 0 || q < 5) throw UsageError("psl2-unipotent needs odd q >= 5");
  const std::string spec = "psl2:" + std::to_string(q);
  const Group& g = ctx.group(spec);
  const ClassTable& t = ctx.classes(spec);
  const auto syl = sylow_structure(g, static_cast<std::uint32_t>(p));
  const auto uni = classes_of_order(t, p);
  v.add("unipotent classes", std::uint64_t{2}, uni.size());
  for (auto id : uni) {
    const auto& c = t[id];
    const std::string name = class_name(c);
    v.add(name + " size (q^2-1)/2", (q * q - 1) / 2, c.size);
    v.add(name + " real iff q = 1 mod 4", q % 4 == 1, c.real());
    const auto fn = single_class_fn(g, t, id);
    const auto rep = killing_graph_components(fn, false, ctx.config().graph_cap);
    v.add(name + " connected", true, rep.component_count == 1);
    const auto pc = cross_sylow_partner_check(fn, syl);
    v.add(name + " Sylow subgroups", q + 1, pc.sylow_count);
    v.add(name + " |C ∩ S|", (q - 1) / 2, pc.per_sylow);
    v.add(name + " (x, S2) pairs with a unique partner", pc.pairs_checked, pc.unique_pairs);
    v.add(name + " off-diagonal blocks are scaled permutation matrices", true, pc.blocks_scaled_permutations);
    v.add(name + " permutation block scale", (q - 1) / 2, pc.scale);
  }
  v.finish();
  return v;
}

Verdict verify_psu3_c2_odd(Context& ctx, std::uint64_t q) {
  Verdict v;
  v.theorem = "psu3-c2-odd";
  v.params = {{"q", std::to_string(q)}};
  if (q % 2 == 0 || q < 3) throw UsageError("psu3-c2-odd needs odd q >= 3");
  const std::uint32_t p = static_cast<std::uint32_t>(field_prime(q));
  const std::string spec = "su3:" + std::to_string(q);
  const Group& g = ctx.group(spec);
  const ClassTable& t = ctx.classes(spec);
  const FieldCtx& f = *g.field();
  const auto syl = sylow_structure(g, p);
  const auto& s1 = syl.subgroups[0];

  Index x = 0;
  for (Index y : s1) {
    if (y == 0) continue;
    const bool central = std::all_of(s1.begin(), s1.end(), [&](Index z) { return g.commute(y, z); });
    if (central && (x == 0 || g.compare(y, x) < 0)) x = y;
  }
  if (x == 0) throw Error("Sylow subgroup has trivial center");
  const auto& c = t[t.class_of[x]];
  const auto cx = su3_family_classify(g, x, &t);
  v.add("x lies in family", std::string("C2"), to_string(cx.family));
  v.add("centralizer order of x is q^3(q+1)", q * q * q * (q + 1), c.centralizer_order);
  const auto fn = single_class_fn(g, t, c.id);
  const auto rep = killing_graph_components(fn, false, ctx.config().graph_cap);
  v.add("class of x connected", true, rep.component_count == 1);

  std::vector<FieldCode> signature{1, f.neg(1), f.neg(1)};
  std::sort(signature.begin(), signature.end());
  std::vector<std::vector<Index>> bucket(syl.subgroups.size());
  for (Index y : c.members)
    if (syl.sylow_of[y] >= 0) bucket[syl.sylow_of[y]].push_back(y);
  std::uint64_t mismatch = 0, empty = 0, c4 = 0, nonzero = 0;
  for (std::size_t s = 1; s < bucket.size(); ++s) {
    std::uint64_t here = 0;
    for (Index y : bucket[s]) {
      const Index z = g.mul(x, y);
      const bool nz = fn.f[t.class_of[z]] > 0;
      const auto cz = su3_family_classify(g, z, &t);
      const bool sig = cz.eigenvalues == signature && cz.centralizer_order == q * (q + 1) &&
                       cz.family == SU3Family::C5;
      if (nz != sig) ++mismatch;
      if (cz.family == SU3Family::C4) ++c4;
      if (nz) ++here;
    }
    nonzero += here;
    if (here == 0) ++empty;
  }
  v.add("cross-Sylow products where nonzero K and the C5 signature disagree", std::uint64_t{0}, mismatch);
  v.add("other Sylow subgroups with no nonzero product", std::uint64_t{0}, empty);
  v.add("cross-Sylow products in family C4", std::uint64_t{0}, c4);
  v.note(std::to_string(nonzero) + " nonzero cross-Sylow products over " + std::to_string(bucket.size() - 1) +
         " Sylow subgroups");
  v.finish();
  return v;
}

Verdict verify_sym_alt(Context& ctx, std::uint64_t n) {
  Verdict v;
  v.theorem = "sym-alt";
  v.params = {{"n", std::to_string(n)}};
  if (n < 3 || n > 10) throw UsageError("sym-alt needs 3 <= n <= 10");
  const auto& cfg = ctx.config();
  for (const std::string fam : {"sym", "alt"}) {
    const std::string spec = fam + ":" + std::to_string(n);
    const Group& g = ctx.group(spec);
    const ClassTable& t = ctx.classes(spec);
    for (const auto& c : t.classes) {
      if (c.central() || c.elt_order != 2) continue;
      std::uint64_t s = 0;
      auto w = g.word(c.rep);
      for (std::size_t i = 0; i < w.size(); ++i) s += w[i] == i;
      const bool expect = fam == "sym" ? (s == 1 || (n == 4 && s == 2)) : (n % 4 == 1 && s == 1);
      const std::string name = spec + " involutions with " + std::to_string(s) + " fixed points";
      const auto fn = single_class_fn(g, t, c.id);
      const bool compare = expect && c.size <= cfg.matrix_cap;
      const auto rep = killing_graph_components(fn, compare, cfg.graph_cap);
      v.add(name + " reducible", expect, rep.component_count > 1);
      if (!expect) continue;
      const auto k = killing_matrix(fn, rep, cfg.matrix_cap);
      const auto bd = blockwise_det(k, fn, cfg.bareiss_cap);
      v.add(name + " non-degenerate", true, bd.nonzero);
      if (s != 1) continue;
      bool scalar = true;
      for (std::size_t i = 0; i < k.n && scalar; ++i)
        for (std::size_t j = 0; j < k.n; ++j)
          if (k.at(i, j) != (i == j ? c.size : 0)) {
            scalar = false;
            break;
          }
      v.add(name + " Killing matrix is |C| times the identity", true, scalar);
      mpz_class power;
      mpz_ui_pow_ui(power.get_mpz_t(), c.size, c.size);
      v.add(name + " det(K) = |C|^|C|", true, bd.det && *bd.det == power);
      if (rep.equals_commuting_graph)
        v.note(name + ": Killing graph " + (*rep.equals_commuting_graph ? "equals" : "is strictly larger than") +
               " the commuting graph");
      if (!scalar)
        v.note(name + ": " + std::to_string(rep.component_count) + " components of size " +
               std::to_string(rep.component_sizes[0]) + ", off-diagonal entries nonzero");
    }
    for (std::uint64_t p : prime_factors(n)) {
      if (p == 2 || (n != p && n != 2 * p)) continue;
      for (auto id : classes_of_order(t, p)) {
        const auto& c = t[id];
        const auto fn = single_class_fn(g, t, id);
        const auto rep = killing_graph_components(fn, false, cfg.graph_cap);
        v.add(spec + " " + class_name(c) + " connected", true, rep.component_count == 1);
      }
    }
  }
  v.finish();
  return v;
}

Verdict verify_dihedral_strong(Context& ctx, std::uint64_t n) {
  Verdict v;
  v.theorem = "dihedral-strong";
  v.params = {{"n", std::to_string(n)}};
  if (n < 3 || n > 25 || n % 2 == 0) throw UsageError("dihedral-strong needs odd 3 <= n <= 25");
  const std::string spec = "dihedral:" + std::to_string(n);
  const Group& g = ctx.group(spec);
  const ClassTable& t = ctx.classes(spec);
  const auto refl = classes_of_order(t, 2);
  std::vector<std::uint32_t> rot;
  for (const auto& c : t.classes)
    if (!c.central() && c.elt_order > 2) rot.push_back(c.id);
  v.add("reflection classes", std::uint64_t{1}, refl.size());
  v.add("rotation classes", (n - 1) / 2, rot.size());
  if (refl.size() != 1) {
    v.finish();
    return v;
  }
  const std::uint64_t subsets = 1ull << rot.size();
  std::uint64_t built = 0, nonzero = 0, match = 0, printed = 0;
  for (std::uint64_t mask = 0; mask < subsets; ++mask) {
    std::vector<std::uint32_t> ids{refl[0]};
    for (std::size_t i = 0; i < rot.size(); ++i)
      if (mask >> i & 1) ids.push_back(rot[i]);
    auto set = build_stable_set(g, t, ids, {true, true, true});
    ++built;
    const auto fn = support_function(g, t, std::move(set));
    const auto k = killing_matrix(fn, ctx.config().matrix_cap);
    const auto d = bareiss_det_rank(ExactMatrix::from_killing(k), ctx.config().bareiss_cap);
    const auto m = static_cast<std::uint64_t>(std::popcount(mask));
    if (d.nonzero) ++nonzero;
    if (mpq_class(*d.det) == dihedral_det_closed_form(n, m)) ++match;
    if (mpq_class(*d.det) == dihedral_det_printed_form(n, m)) ++printed;
  }
  v.add("generating real G-stable subsets", subsets, built);
  v.add("subsets with det(K) != 0", subsets, nonzero);
  v.add("subsets with det(K) equal to the closed form", subsets, match);
  v.note("uncorrected printed determinant expression agrees on " + std::to_string(printed) + " of " +
         std::to_string(subsets) + " subsets");
  v.finish();
  return v;
}

Verdict verify_suzuki_counts(Context& ctx, std::uint64_t q) {
  Verdict v;
  v.theorem = "suzuki-counts";
  v.params = {{"q", std::to_string(q)}};
  const std::string spec = "sz:" + std::to_string(q);
  if (q < 8) throw UsageError("suzuki-counts needs q >= 8");
  const Group& g = ctx.group(spec);
  const ClassTable& t = ctx.classes(spec);
  const auto budget = ctx.config().triple_budget;
  const auto xs = classes_of_order(t, 2);
  const auto ys = classes_of_order(t, 4);
  v.add("involution classes", std::uint64_t{1}, xs.size());
  v.add("order-4 classes", std::uint64_t{2}, ys.size());
  if (xs.size() != 1 || ys.size() != 2) {
    v.finish();
    return v;
  }
  const auto& X = t[xs[0]];
  const auto& Y = t[ys[0]];
  const auto& Yi = t[ys[1]];
  v.add("Y is not real", false, Y.real());
  v.add("inverse class of Y", std::uint64_t{Yi.id}, std::uint64_t{Y.inverse_class});
  const auto hist = product_class_histogram(g, t, Y.id, Y.id, budget);
  auto count = [&](std::uint32_t id) { return mpz_class(static_cast<unsigned long>(hist[id])); };
  v.add("Phi(Y,Y,X)", str(suzuki_phi_yyx(q)), str(count(X.id)));
  v.add("Phi(Y,Y,Y)", str(suzuki_phi_yyy(q)), str(count(Y.id)));
  v.add("Phi(Y,Y,Y^-1)", str(suzuki_phi_yyy(q)), str(count(Yi.id)));
  bool divisible = true;
  for (const auto& c : t.classes)
    if (hist[c.id] % c.size != 0) divisible = false;
  v.add("every Phi(Y,Y,D) divisible by |D|", true, divisible);
  const auto fn = single_class_fn(g, t, Y.id);
  const auto nz = nonzero_pair_count(fn, budget);
  const auto syl = sylow_structure(g, 2);
  const auto same = same_sylow_pair_count(Y, syl);
  v.add("pairs in Y^2 with nonzero K", str(suzuki_nonzero_pairs(q)), str(nz));
  v.add("pairs in Y^2 in a common Sylow 2-subgroup", str(suzuki_same_sylow_pairs(q)), str(same));
  v.add("nonzero pairs across Sylow subgroups", str(suzuki_cross_sylow_pairs(q)), str(nz - same));
  v.finish();
  return v;
}

Verdict verify_quotient_lifting(Context& ctx, std::uint64_t q) {
  Verdict v;
  v.theorem = "quotient-lifting";
  v.params = {{"q", std::to_string(q)}};
  if (q % 2 == 0) throw UsageError("quotient-lifting needs odd q");
  const std::string up = "sl2:" + std::to_string(q), down = "psl2:" + std::to_string(q);
  const Group& gu = ctx.group(up);
  const Group& gd = ctx.group(down);
  const ClassTable& tu = ctx.classes(up);
  const ClassTable& td = ctx.classes(down);
  v.add("|SL2(q)| / |PSL2(q)|", std::uint64_t{2}, gu.order() / gd.order());
  std::map<std::uint32_t, bool> down_connected;
  std::uint64_t checked = 0, connected_up = 0, violations = 0;
  for (const auto& c : tu.classes) {
    if (c.central()) continue;
    ++checked;
    const auto fu = single_class_fn(gu, tu, c.id);
    const bool cu = killing_graph_components(fu, false, ctx.config().graph_cap).component_count == 1;
    if (!cu) continue;
    ++connected_up;
    const auto img = gd.find(gu.word(c.rep));
    if (!img) throw Error("quotient image not found");
    const auto d = td.class_of[*img];
    if (!down_connected.count(d)) {
      const auto fd = single_class_fn(gd, td, d);
      down_connected[d] = killing_graph_components(fd, false, ctx.config().graph_cap).component_count == 1;
    }
    if (!down_connected[d]) ++violations;
  }
  v.add("noncentral classes checked", true, checked > 0);
  v.add("classes connected upstairs but not downstairs", std::uint64_t{0}, violations);
  v.note(std::to_string(connected_up) + " of " + std::to_string(checked) + " noncentral classes connected in " + up);
  v.finish();
  return v;
}

Verdict conjecture_scan(Context& ctx, const std::string& spec) {
  Verdict v;
  v.theorem = "conjecture-scan";
  v.params = {{"group", spec}};
  const Group& g = ctx.group(spec);
  const ClassTable& t = ctx.classes(spec);
  const auto& cfg = ctx.config();
  for (const auto& c : t.classes) {
    if (c.central() || !c.real()) continue;
    const auto fn = single_class_fn(g, t, c.id);
    const auto rep = killing_graph_components(fn, false, cfg.graph_cap);
    const auto k = killing_matrix(fn, rep, cfg.matrix_cap);
    const auto d = blockwise_det(k, fn, cfg.bareiss_cap, true);
    v.add(class_name(c) + " non-degenerate", true, d.nonzero);
    v.note(class_name(c) + ": " + (rep.component_count > 1 ? "reducible, " : "irreducible, ") +
           std::to_string(rep.component_count) + " component(s)");
  }
  v.finish();
  return v;
}

}  // namespace killform
