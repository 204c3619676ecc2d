#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "killform/classes.hpp"
#include "killform/counting.hpp"
#include "killform/groups.hpp"
#include "killform/killing.hpp"
#include "killform/xlinalg.hpp"

namespace killform {

struct Evidence {
  std::string claim;
  std::string expected;
  std::string observed;
  bool ok() const { return expected == observed; }
};

struct Verdict {
  std::string theorem;
  std::vector<std::pair<std::string, std::string>> params;  // in insertion order
  bool pass = false;
  bool skipped = false;
  std::vector<Evidence> evidence;
  std::vector<std::string> notes;

  void add(std::string claim, std::string expected, std::string observed);
  void add(std::string claim, bool expected, bool observed);
  void add(std::string claim, std::uint64_t expected, std::uint64_t observed);
  void note(std::string text) { notes.push_back(std::move(text)); }
  /// pass = every evidence row matches (and there is at least one).
  void finish();
};

struct HarnessConfig {
  std::uint64_t max_order = kDefaultMaxOrder;
  std::size_t matrix_cap = kDefaultMatrixCap;
  std::size_t graph_cap = kDefaultGraphCap;
  std::size_t bareiss_cap = kDefaultBareissCap;
  std::uint64_t triple_budget = kDefaultTripleBudget;
};

/// Caches groups and class tables across verdicts. Not thread-safe.
class Context {
 public:
  explicit Context(HarnessConfig cfg = {}) : cfg_(cfg) {}
  const HarnessConfig& config() const { return cfg_; }
  const Group& group(const std::string& spec);
  const ClassTable& classes(const std::string& spec);

 private:
  HarnessConfig cfg_;
  std::map<std::string, GroupPtr> groups_;
  std::map<std::string, std::unique_ptr<ClassTable>> tables_;
};

/// family in {psl2, psu3, su3, sz}: reducible iff q even, with the even-q
/// block structure checked exactly.
Verdict verify_rank_one_involutions(Context& ctx, const std::string& family, std::uint64_t q);

/// Every class of nontrivial p-elements is connected, except involutions in
/// even characteristic rank-one families.
Verdict verify_unipotent_irreducible(Context& ctx, const std::string& spec, std::uint32_t p);

/// Unipotent classes of psl2:q, q odd: connectivity, reality, cross-Sylow partners.
Verdict verify_psl2_unipotent(Context& ctx, std::uint64_t q);

/// Products of a central element of one Sylow p-subgroup of su3:q with the
/// same class in the other Sylow subgroups.
Verdict verify_psu3_c2_odd(Context& ctx, std::uint64_t q);

/// Involution classes and p-element classes of sym:n and alt:n.
Verdict verify_sym_alt(Context& ctx, std::uint64_t n);

/// Every generating real G-stable subset of dihedral:n.
Verdict verify_dihedral_strong(Context& ctx, std::uint64_t n);

/// Brute-force triple counts in sz:q against the closed forms.
Verdict verify_suzuki_counts(Context& ctx, std::uint64_t q);

/// Connected upstairs in sl2:q implies connected downstairs in psl2:q.
Verdict verify_quotient_lifting(Context& ctx, std::uint64_t q);

/// Non-degeneracy of K on every real noncentral class.
Verdict conjecture_scan(Context& ctx, const std::string& spec);

Verdict skipped_verdict(const std::string& theorem, const std::string& reason);

}  // namespace killform
