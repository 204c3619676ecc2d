#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "killform/classes.hpp"
#include "killform/groups.hpp"

namespace killform {

constexpr std::size_t kDefaultMatrixCap = 4000;
constexpr std::size_t kDefaultGraphCap = 100000;

/// f(D) = |C_G(d) ∩ C| for a representative d of each class D; every value
/// of the Killing form on C is f(class(ab)).
struct ClassSupportFn {
  const Group* group = nullptr;
  const ClassTable* table = nullptr;
  GStableSet set;
  std::vector<std::uint64_t> f;  // class id -> value

  std::uint64_t at_product(Index a, Index b) const { return f[table->class_of[group->mul(a, b)]]; }
};

ClassSupportFn support_function(const Group& g, const ClassTable& t, GStableSet c);

/// K_C(a, b); throws DomainError unless a, b lie in C.
std::uint64_t killing_value(const ClassSupportFn& fn, Index a, Index b);

struct ComponentReport {
  std::size_t component_count = 0;
  std::vector<std::size_t> component_sizes;
  /// Position in fn.set.members -> component id. Components are numbered by
  /// their smallest member encoding.
  std::vector<std::uint32_t> vertex_to_component;
  std::optional<bool> equals_commuting_graph;
  std::uint64_t killing_edges = 0;  // counted only with the full pair loop
  std::uint64_t commuting_edges = 0;
};

/// Connectivity of the Killing graph (edge iff f(class(ab)) > 0). With
/// compare_commuting every pair is visited and the edge set is compared with
/// the commuting graph; otherwise pairs already joined are skipped.
ComponentReport killing_graph_components(const ClassSupportFn& fn, bool compare_commuting = false,
                                         std::size_t cap = kDefaultGraphCap);

ComponentReport commuting_graph_components(const Group& g, const GStableSet& c,
                                           std::size_t cap = kDefaultGraphCap);

struct KillingMatrix {
  std::vector<Index> ordering;  // element indices, component-grouped then by encoding
  std::vector<std::size_t> block_offsets;  // start of each component, plus n at the end
  std::size_t n = 0;
  std::vector<std::uint32_t> entries;  // row-major n x n
  std::uint32_t at(std::size_t i, std::size_t j) const { return entries[i * n + j]; }
  std::size_t block_count() const { return block_offsets.empty() ? 0 : block_offsets.size() - 1; }
};

KillingMatrix killing_matrix(const ClassSupportFn& fn, const ComponentReport& comp,
                             std::size_t cap = kDefaultMatrixCap);
KillingMatrix killing_matrix(const ClassSupportFn& fn, std::size_t cap = kDefaultMatrixCap);

/// Vertices of C sorted by component then encoding, as used by killing_matrix.
std::vector<Index> component_ordering(const ClassSupportFn& fn, const ComponentReport& comp);

struct PartnerCheck {
  std::uint64_t pairs_checked = 0;  // (x, S2) pairs
  std::uint64_t unique_pairs = 0;  // pairs with exactly one partner
  bool all_unique = false;
  /// Every block C∩S_i x C∩S_j (i != j) is scale times a permutation matrix.
  bool blocks_scaled_permutations = false;
  std::uint64_t scale = 0;
  std::uint64_t sylow_count = 0;
  std::uint64_t per_sylow = 0;  // |C ∩ S|
};

/// For x in C∩S_i and S_j != S_i, counts y in C∩S_j with xy noncentral and
/// (xy)^p central. Needs a linear family in odd characteristic.
PartnerCheck cross_sylow_partner_check(const ClassSupportFn& fn, const SylowStructure& syl);

}  // namespace killform
