#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "killform/ffield.hpp"

namespace killform {

using Word = std::uint32_t;
using Index = std::uint32_t;

constexpr std::uint64_t kDefaultMaxOrder = 5000000;

/// A group element in its canonical encoding. Permutations are 0-based image
/// lists, matrices are row-major field codes, coset elements are the minimal
/// encoding over their scalar multiples.
struct GroupElement {
  std::vector<Word> words;
  auto operator<=>(const GroupElement&) const = default;
};

/// How elements of one group are stored and multiplied.
class Realization {
 public:
  virtual ~Realization() = default;
  virtual std::size_t width() const = 0;
  virtual void identity(Word* out) const = 0;
  /// out = a * b; out never aliases a or b.
  virtual void multiply(const Word* a, const Word* b, Word* out) const = 0;
  /// Brings a raw encoding into canonical form in place.
  virtual void canonicalize(Word*) const {}
  virtual std::string label(const Word* w) const = 0;
};

class PermRealization final : public Realization {
 public:
  explicit PermRealization(std::size_t degree);
  std::size_t width() const override { return degree_; }
  void identity(Word* out) const override;
  /// (a*b)(i) = a(b(i)).
  void multiply(const Word* a, const Word* b, Word* out) const override;
  std::string label(const Word* w) const override;

 private:
  std::size_t degree_;
};

class MatrixRealization : public Realization {
 public:
  MatrixRealization(FieldPtr field, std::size_t dim);
  std::size_t width() const override { return dim_ * dim_; }
  void identity(Word* out) const override;
  void multiply(const Word* a, const Word* b, Word* out) const override;
  std::string label(const Word* w) const override;

  const FieldPtr& field() const { return field_; }
  std::size_t dim() const { return dim_; }

 private:
  FieldPtr field_;
  std::size_t dim_;
};

/// Matrices modulo a group of scalar matrices.
class CosetRealization final : public MatrixRealization {
 public:
  CosetRealization(FieldPtr field, std::size_t dim, std::vector<FieldCode> scalars);
  void multiply(const Word* a, const Word* b, Word* out) const override;
  void canonicalize(Word* w) const override;
  const std::vector<FieldCode>& scalars() const { return scalars_; }

 private:
  std::vector<FieldCode> scalars_;
};

/// A fully enumerated finite group. Elements are addressed by dense indices
/// in BFS order from the identity (index 0).
class Group {
 public:
  Group(std::string spec, std::string family, std::uint64_t param,
        std::shared_ptr<const Realization> real, const std::vector<GroupElement>& gens,
        std::uint64_t max_order = kDefaultMaxOrder);

  const std::string& spec() const { return spec_; }
  const std::string& family() const { return family_; }
  std::uint64_t param() const { return param_; }
  const Realization& realization() const { return *real_; }
  std::shared_ptr<const Realization> realization_ptr() const { return real_; }
  /// Field of a matrix or coset group, null for permutation groups.
  FieldPtr field() const;
  std::size_t matrix_dim() const;

  std::size_t order() const { return order_; }
  std::size_t width() const { return width_; }
  std::span<const Word> word(Index i) const { return {elems_.data() + std::size_t(i) * width_, width_}; }
  GroupElement element(Index i) const;
  /// Canonicalizes a copy of w and looks it up.
  std::optional<Index> find(std::span<const Word> w) const;
  /// Throws DomainError when g is not an element of this group.
  Index index_of(const GroupElement& g) const;

  Index mul(Index a, Index b) const;
  Index inv(Index a) const { return inv_[a]; }
  /// h * g * h^-1.
  Index conj(Index g, Index h) const;
  bool commute(Index a, Index b) const;
  Index power(Index a, std::uint64_t e) const;
  std::uint64_t element_order(Index a) const;

  const std::vector<Index>& generators() const { return gens_; }
  const std::vector<Index>& center() const { return center_; }
  bool is_central(Index a) const { return central_[a] != 0; }

  /// Lexicographic comparison of encodings.
  int compare(Index a, Index b) const;
  std::string label(Index a) const { return real_->label(word(a).data()); }

  /// Standard Sylow subgroups known from the construction, keyed by prime.
  const std::map<std::uint32_t, std::vector<Index>>& standard_sylow() const { return sylow_; }
  void set_standard_sylow(std::uint32_t p, std::vector<Index> members);

 private:
  std::uint64_t hash(const Word* w) const;
  std::optional<Index> lookup(const Word* w) const;
  void insert(Index i);
  void rehash(std::size_t slots);

  std::string spec_;
  std::string family_;
  std::uint64_t param_;
  std::shared_ptr<const Realization> real_;
  std::size_t width_;
  std::size_t order_ = 0;
  std::vector<Word> elems_;
  std::vector<Index> slots_;  // index + 1, 0 = empty
  std::vector<Index> inv_;
  std::vector<Index> gens_;
  std::vector<Index> center_;
  std::vector<std::uint8_t> central_;
  std::map<std::uint32_t, std::vector<Index>> sylow_;
};

using GroupPtr = std::shared_ptr<const Group>;

/// Closed-form order of a family member, nullopt when not known (perm files).
std::optional<std::uint64_t> family_order(const std::string& family, std::uint64_t param);

/// Builds a group from a `family:param` spec.
GroupPtr make_group(const std::string& spec, std::uint64_t max_order = kDefaultMaxOrder);

GroupPtr make_perm_group(const std::string& spec, std::size_t degree,
                         const std::vector<std::vector<Word>>& images,
                         std::uint64_t max_order = kDefaultMaxOrder);

/// Reads an optional `degree n` line followed by one image line (1-based) per
/// generator. Without the header the first image line fixes the degree.
GroupPtr ingest_perm_generators(const std::string& path,
                                std::uint64_t max_order = kDefaultMaxOrder);

/// G / Z(G) for a matrix group whose center consists of scalar matrices.
GroupPtr quotient_by_center(const Group& g, std::uint64_t max_order = kDefaultMaxOrder);

/// Sorted member indices of the subgroup generated by gens.
std::vector<Index> subgroup_closure(const Group& g, const std::vector<Index>& gens);
/// True when the given elements generate all of g.
bool generates_group(const Group& g, const std::vector<Index>& elems);

enum class ElemOp { mul, inv, conj, order };

/// Element-level operations on encodings; conj(g, h) = h g h^-1.
std::variant<GroupElement, std::uint64_t> elem_op(const Group& g, const GroupElement& a,
                                                  const GroupElement& b, ElemOp op);

struct SylowStructure {
  std::uint32_t p = 0;
  std::vector<std::vector<Index>> subgroups;  // sorted members, standard one first
  std::vector<std::uint64_t> normalizer_orders;
  bool ti = false;
  /// element index -> first subgroup containing it, -1 if none.
  std::vector<std::int32_t> sylow_of;
};

SylowStructure sylow_structure(const Group& g, std::uint32_t p);

/// Field used by a family of matrix groups for parameter q.
FieldPtr family_field(const std::string& family, std::uint64_t q);

/// q-Frobenius conjugate transpose of a dim x dim matrix over GF(q^2).
std::vector<FieldCode> conjugate_transpose(const FieldCtx& f, std::span<const Word> m,
                                           std::size_t dim);
/// True when M* J M = J for the anti-diagonal J.
bool is_unitary(const FieldPtr& f, std::span<const Word> m, std::size_t dim);

}  // namespace killform
