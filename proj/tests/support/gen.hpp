#pragma once

// Hand-rolled generators for the property suites.

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "killform/classes.hpp"
#include "killform/groups.hpp"
#include "killform/killing.hpp"
#include "killform/xlinalg.hpp"

namespace kftest {

using namespace killform;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  std::uint64_t below(std::uint64_t n) { return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(eng_); }
  long range(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(eng_); }
  bool coin() { return below(2) == 1; }
  template <class T>
  const T& pick(const std::vector<T>& v) { return v[below(v.size())]; }

 private:
  std::mt19937_64 eng_;
};

struct GroupData {
  GroupPtr g;
  std::shared_ptr<ClassTable> t;
};

/// Groups small enough for pair loops, built once per process.
inline const GroupData& group_data(const std::string& spec) {
  static std::map<std::string, GroupData> cache;
  auto it = cache.find(spec);
  if (it == cache.end()) {
    GroupData d;
    d.g = make_group(spec);
    d.t = std::make_shared<ClassTable>(conjugacy_classes(*d.g));
    it = cache.emplace(spec, std::move(d)).first;
  }
  return it->second;
}

inline const std::vector<std::string>& small_groups() {
  static const std::vector<std::string> specs{"dihedral:7", "dihedral:9", "sym:4",  "sym:5",  "alt:5",
                                              "alt:6",      "psl2:7",     "psl2:8", "sl2:5",  "psl2:9",
                                              "pgl2:5",     "gl2:3",      "su3:3",  "psu3:3", "sym:6"};
  return specs;
}

struct SetCase {
  std::string spec;
  const GroupData* data = nullptr;
  ClassSupportFn fn;
  bool single_class = false;
};

/// One or two random noncentral classes of a random small group.
inline SetCase random_set_case(Rng& rng) {
  SetCase c;
  c.spec = rng.pick(small_groups());
  c.data = &group_data(c.spec);
  const ClassTable& t = *c.data->t;
  std::vector<std::uint32_t> nc;
  for (const auto& cl : t.classes)
    if (!cl.central()) nc.push_back(cl.id);
  std::vector<std::uint32_t> ids{rng.pick(nc)};
  if (rng.below(3) == 0) {
    const auto other = rng.pick(nc);
    if (other != ids[0]) ids.push_back(other);
  }
  c.single_class = ids.size() == 1;
  c.fn = support_function(*c.data->g, t, build_stable_set(*c.data->g, t, ids, {false, false, true}));
  return c;
}

inline ExactMatrix random_matrix(Rng& rng, std::size_t n, long bound) {
  ExactMatrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = rng.range(-bound, bound);
  return m;
}

/// Random matrix that is singular about a third of the time (a row repeated
/// or replaced by a combination of two others).
inline ExactMatrix random_matrix_maybe_singular(Rng& rng, std::size_t n, long bound) {
  ExactMatrix m = random_matrix(rng, n, bound);
  if (n >= 3 && rng.below(3) == 0) {
    const std::size_t a = rng.below(n), b = (a + 1) % n, c = (a + 2) % n;
    const long s = rng.range(-3, 3);
    for (std::size_t j = 0; j < n; ++j) m(c, j) = m(a, j) + s * m(b, j);
  }
  return m;
}

}  // namespace kftest
