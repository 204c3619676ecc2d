#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <vector>

#include "killform/classes.hpp"
#include "killform/killing.hpp"

namespace killform {

constexpr std::uint64_t kDefaultTripleBudget = 100000000;

struct TripleCount {
  std::uint32_t c1 = 0, c2 = 0, c3 = 0;
  mpz_class count;
};

/// For every class D, the number of (x, y) in C1 x C2 with xy in D.
std::vector<std::uint64_t> product_class_histogram(const Group& g, const ClassTable& t, std::uint32_t c1,
                                                   std::uint32_t c2,
                                                   std::uint64_t budget = kDefaultTripleBudget);

/// Number of solutions of xy = z with x in C1, y in C2, z in C3.
TripleCount triple_count(const Group& g, const ClassTable& t, std::uint32_t c1, std::uint32_t c2,
                         std::uint32_t c3, std::uint64_t budget = kDefaultTripleBudget);

/// Ordered pairs (x, y) in C x C with K_C(x, y) != 0, for C a single class.
mpz_class nonzero_pair_count(const ClassSupportFn& fn, std::uint64_t budget = kDefaultTripleBudget);

/// |C ∩ S|^2 times the number of Sylow subgroups; needs the TI property.
mpz_class same_sylow_pair_count(const ConjClass& c, const SylowStructure& syl);

// Closed forms for Sz(q): X involutions, Y an order-4 class.
mpz_class suzuki_phi_yyx(std::uint64_t q);
mpz_class suzuki_phi_yyy(std::uint64_t q);
mpz_class suzuki_nonzero_pairs(std::uint64_t q);
mpz_class suzuki_same_sylow_pairs(std::uint64_t q);
mpz_class suzuki_cross_sylow_pairs(std::uint64_t q);

}  // namespace killform
