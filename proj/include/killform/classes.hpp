#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "killform/groups.hpp"

namespace killform {

struct ConjClass {
  std::uint32_t id = 0;
  Index rep = 0;  // minimal encoding among members
  std::vector<Index> members;  // sorted
  std::uint64_t elt_order = 1;
  std::uint64_t size = 0;
  std::uint64_t centralizer_order = 0;
  std::uint32_t inverse_class = 0;
  bool central() const { return size == 1; }
  bool real() const { return inverse_class == id; }
};

/// Classes sorted by (element order, size, rep encoding); class 0 is {1}.
struct ClassTable {
  std::vector<ConjClass> classes;
  std::vector<std::uint32_t> class_of;  // element index -> class id
  const ConjClass& operator[](std::uint32_t id) const { return classes.at(id); }
  std::size_t size() const { return classes.size(); }
};

ClassTable conjugacy_classes(const Group& g);

/// All g with g x = x g, sorted.
std::vector<Index> centralizer(const Group& g, Index x);

bool is_real(const ClassTable& t, std::uint32_t class_id);

struct StableSetRequire {
  bool generates = false;
  bool real = false;
  bool noncentral = false;
};

struct GStableSet {
  std::vector<std::uint32_t> class_ids;  // sorted
  std::vector<Index> members;  // sorted
  std::vector<std::uint8_t> in_set;  // element index -> membership
  bool contains(Index x) const { return x < in_set.size() && in_set[x]; }
  std::size_t size() const { return members.size(); }
};

/// Union of the given classes; throws DomainError naming the class that
/// breaks a requirement.
GStableSet build_stable_set(const Group& g, const ClassTable& t, std::vector<std::uint32_t> ids,
                            StableSetRequire require = {});

/// Parses `ord=K`, `idx=I`, `real`, `all-noncentral`, comma separated (union).
/// `ord=K`, `real` and `all-noncentral` only pick noncentral classes.
std::vector<std::uint32_t> select_classes(const ClassTable& t, const std::string& selector);

enum class SU3Family { C1, C2, C3, C4, C5, C6, C7, C8 };
std::string to_string(SU3Family f);

struct SU3Classification {
  SU3Family family = SU3Family::C1;
  std::vector<FieldCode> eigenvalues;  // roots in GF(q^2) with multiplicity, sorted
  unsigned minpoly_degree = 1;
  std::uint64_t elt_order = 1;
  std::uint64_t centralizer_order = 0;
  std::uint64_t expected_centralizer_order = 0;  // table value for the family
};

/// Family of x in su3:q read off its characteristic and minimal polynomials.
/// The class table is used for the centralizer order when given.
SU3Classification su3_family_classify(const Group& g, Index x, const ClassTable* t = nullptr);

}  // namespace killform
