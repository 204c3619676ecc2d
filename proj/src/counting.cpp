#include "killform/counting.hpp"

#include "killform/error.hpp"
#include "killform/parallel.hpp"

namespace killform {

std::vector<std::uint64_t> product_class_histogram(const Group& g, const ClassTable& t, std::uint32_t c1,
                                                   std::uint32_t c2, std::uint64_t budget) {
  if (c1 >= t.size() || c2 >= t.size()) throw UsageError("class id out of range");
  const auto& a = t[c1].members;
  const auto& b = t[c2].members;
  const std::uint64_t pairs = std::uint64_t(a.size()) * b.size();
  if (pairs > budget)
    throw CapExceeded("triple count needs " + std::to_string(pairs) + " products, budget is " +
                      std::to_string(budget));
  const unsigned workers = thread_count();
  std::vector<std::vector<std::uint64_t>> local(workers, std::vector<std::uint64_t>(t.size(), 0));
  parallel_for(a.size(), [&](std::size_t i, unsigned w) {
    auto& h = local[w];
    for (Index y : b) ++h[t.class_of[g.mul(a[i], y)]];
  });
  std::vector<std::uint64_t> hist(t.size(), 0);
  for (const auto& h : local)
    for (std::size_t d = 0; d < h.size(); ++d) hist[d] += h[d];
  return hist;
}

TripleCount triple_count(const Group& g, const ClassTable& t, std::uint32_t c1, std::uint32_t c2,
                         std::uint32_t c3, std::uint64_t budget) {
  if (c3 >= t.size()) throw UsageError("class id out of range");
  const auto hist = product_class_histogram(g, t, c1, c2, budget);
  TripleCount r{c1, c2, c3, mpz_class(static_cast<unsigned long>(hist[c3]))};
  return r;
}

mpz_class nonzero_pair_count(const ClassSupportFn& fn, std::uint64_t budget) {
  if (fn.set.class_ids.size() != 1) throw DomainError("nonzero_pair_count needs a single class");
  const auto c = fn.set.class_ids[0];
  const auto hist = product_class_histogram(*fn.group, *fn.table, c, c, budget);
  mpz_class total = 0;
  for (std::size_t d = 0; d < hist.size(); ++d)
    if (fn.f[d] > 0) total += static_cast<unsigned long>(hist[d]);
  return total;
}

mpz_class same_sylow_pair_count(const ConjClass& c, const SylowStructure& syl) {
  if (!syl.ti) throw DomainError("same-Sylow pair count needs TI Sylow subgroups");
  if (syl.subgroups.empty()) throw DomainError("no Sylow subgroups");
  // Count the class inside the standard subgroup.
  std::uint64_t inside = 0;
  const auto& s = syl.subgroups[0];
  for (Index x : c.members)
    if (std::binary_search(s.begin(), s.end(), x)) ++inside;
  mpz_class r = static_cast<unsigned long>(inside);
  return r * r * static_cast<unsigned long>(syl.subgroups.size());
}

namespace {

mpz_class suzuki_base(std::uint64_t q) {
  const mpz_class Q = static_cast<unsigned long>(q);
  return Q * Q * (Q * Q + 1) * (Q - 1);
}

}  // namespace

mpz_class suzuki_phi_yyx(std::uint64_t q) {
  return suzuki_base(q) * (2 * mpz_class(static_cast<unsigned long>(q)) + 1) / 4;
}

mpz_class suzuki_phi_yyy(std::uint64_t q) {
  const mpz_class Q = static_cast<unsigned long>(q);
  return suzuki_base(q) * (Q * Q - Q - 2) / 8;
}

mpz_class suzuki_nonzero_pairs(std::uint64_t q) {
  const mpz_class Q = static_cast<unsigned long>(q);
  return suzuki_base(q) * (Q * Q + Q - 1) / 4;
}

mpz_class suzuki_same_sylow_pairs(std::uint64_t q) {
  const mpz_class Q = static_cast<unsigned long>(q);
  const mpz_class per = Q * (Q - 1) / 2;
  return per * per * (Q * Q + 1);
}

mpz_class suzuki_cross_sylow_pairs(std::uint64_t q) {
  const mpz_class Q = static_cast<unsigned long>(q);
  return Q * Q * Q * Q * (Q * Q + 1) * (Q - 1) / 4;
}

}  // namespace killform
