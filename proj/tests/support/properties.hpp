#pragma once

// Property checks shared by the unit tests and the acceptance binary. Each
// returns the number of cases run and the first counterexample, if any.

#include <algorithm>
#include <sstream>
#include <string>

#include "gen.hpp"
#include "killform/counting.hpp"
#include "killform/harness.hpp"

namespace kftest {

struct PropResult {
  bool ok = true;
  std::uint64_t cases = 0;
  std::string failure;

  void fail(const std::string& what) {
    if (ok) failure = what;
    ok = false;
  }
};

inline std::string where(const SetCase& c) {
  std::ostringstream os;
  os << c.spec << " classes";
  for (auto id : c.fn.set.class_ids) os << " " << id;
  return os.str();
}

inline PropResult prop_killing_symmetric(std::uint64_t seed, int sets = 40, int pairs = 300) {
  Rng rng(seed);
  PropResult r;
  for (int s = 0; s < sets; ++s) {
    const auto c = random_set_case(rng);
    const auto& m = c.fn.set.members;
    for (int i = 0; i < pairs; ++i) {
      const Index a = rng.pick(m), b = rng.pick(m);
      ++r.cases;
      if (c.fn.at_product(a, b) != c.fn.at_product(b, a)) r.fail(where(c) + ": K(a,b) != K(b,a)");
    }
  }
  return r;
}

inline PropResult prop_killing_invariant(std::uint64_t seed, int triples = 10000) {
  Rng rng(seed);
  PropResult r;
  const int per_set = 250;
  for (int done = 0; done < triples; done += per_set) {
    const auto c = random_set_case(rng);
    const Group& g = *c.data->g;
    const auto& m = c.fn.set.members;
    for (int i = 0; i < per_set; ++i) {
      const Index a = rng.pick(m), b = rng.pick(m);
      const Index h = static_cast<Index>(rng.below(g.order()));
      ++r.cases;
      if (c.fn.at_product(g.conj(a, h), g.conj(b, h)) != c.fn.at_product(a, b))
        r.fail(where(c) + ": K(a^g, b^g) != K(a, b)");
    }
  }
  return r;
}

inline PropResult prop_constant_row_sums(std::uint64_t seed, int sets = 30) {
  Rng rng(seed);
  PropResult r;
  for (int s = 0; s < sets; ++s) {
    auto c = random_set_case(rng);
    if (!c.single_class || c.fn.set.size() > 1500) continue;
    const auto k = killing_matrix(c.fn);
    std::uint64_t first = 0;
    for (std::size_t i = 0; i < k.n; ++i) {
      std::uint64_t sum = 0;
      for (std::size_t j = 0; j < k.n; ++j) sum += k.at(i, j);
      if (i == 0) first = sum;
      if (sum != first) r.fail(where(c) + ": row sums differ");
    }
    ++r.cases;
  }
  return r;
}

/// Commuting edges are Killing edges, and the components all have one size.
inline PropResult prop_commuting_in_killing(std::uint64_t seed, int sets = 25) {
  Rng rng(seed);
  PropResult r;
  for (int s = 0; s < sets; ++s) {
    auto c = random_set_case(rng);
    if (c.fn.set.size() > 1500) continue;
    ComponentReport rep;
    try {
      rep = killing_graph_components(c.fn, true);
    } catch (const Error& e) {
      r.fail(where(c) + ": " + e.what());
      continue;
    }
    ++r.cases;
    if (rep.commuting_edges > rep.killing_edges) r.fail(where(c) + ": more commuting than Killing edges");
    if (c.single_class) {
      for (auto sz : rep.component_sizes)
        if (sz != rep.component_sizes[0]) r.fail(where(c) + ": unequal component sizes");
      if (c.fn.set.size() % rep.component_count != 0) r.fail(where(c) + ": component count does not divide |C|");
    }
  }
  return r;
}

inline PropResult prop_quotient_lifting() {
  PropResult r;
  Context ctx;
  for (std::uint64_t q : {5, 7, 9}) {
    const auto v = verify_quotient_lifting(ctx, q);
    ++r.cases;
    if (!v.pass) r.fail("quotient lifting fails for q = " + std::to_string(q));
  }
  return r;
}

inline PropResult prop_bareiss_vs_modular(std::uint64_t seed, int count = 200) {
  Rng rng(seed);
  PropResult r;
  for (int i = 0; i < count; ++i) {
    const std::size_t n = 1 + rng.below(40);
    const auto m = random_matrix_maybe_singular(rng, n, 1000);
    const auto b = bareiss_det_rank(m);
    const auto md = modular_det(m);
    ++r.cases;
    if (!b.det || !md.det || *b.det != *md.det)
      r.fail("Bareiss and modular determinants differ at n = " + std::to_string(n));
    if (b.nonzero != md.nonzero) r.fail("non-degeneracy verdicts differ at n = " + std::to_string(n));
  }
  return r;
}

inline PropResult prop_miller_vs_direct(std::uint64_t seed, int count = 100) {
  Rng rng(seed);
  PropResult r;
  for (int i = 0; i < count; ++i) {
    const std::size_t n = 1 + rng.below(20);
    ExactMatrix e(n), h(n), sum(n);
    std::vector<long> u(n), w(n);
    for (std::size_t k = 0; k < n; ++k) {
      long d = 0;
      while (d == 0) d = rng.range(-9, 9);
      e(k, k) = d;
      u[k] = rng.range(-5, 5);
      w[k] = rng.range(-5, 5);
    }
    // Occasionally tune H so that E + H is singular.
    if (rng.below(4) == 0) {
      const std::size_t k = rng.below(n);
      std::fill(u.begin(), u.end(), 0);
      u[k] = 1;
      w[k] = -e(k, k).get_si();
    }
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        h(a, b) = u[a] * w[b];
        sum(a, b) = e(a, b) + h(a, b);
      }
    const auto mr = miller_invertible(e, h);
    const auto de = bareiss_det_rank(e);
    const auto ds = bareiss_det_rank(sum);
    ++r.cases;
    mpq_class ratio(*ds.det, *de.det);
    ratio.canonicalize();
    if (mr.invertible != ds.nonzero) r.fail("Miller verdict disagrees with det at n = " + std::to_string(n));
    if (mr.det_ratio != ratio) r.fail("det(E+H)/det(E) != 1 + trace at n = " + std::to_string(n));
  }
  return r;
}

inline PropResult prop_triple_divisible(std::uint64_t seed, int count = 60) {
  Rng rng(seed);
  PropResult r;
  for (int i = 0; i < count; ++i) {
    const auto& spec = rng.pick(small_groups());
    const auto& d = group_data(spec);
    const auto n = static_cast<std::uint32_t>(d.t->size());
    const auto c1 = rng.below(n), c2 = rng.below(n), c3 = rng.below(n);
    const auto tc = triple_count(*d.g, *d.t, c1, c2, c3);
    ++r.cases;
    const mpz_class size3 = static_cast<unsigned long>((*d.t)[c3].size);
    if (!mpz_divisible_p(tc.count.get_mpz_t(), size3.get_mpz_t()))
      r.fail(spec + ": triple count not divisible by |C3|");
  }
  return r;
}

}  // namespace kftest
