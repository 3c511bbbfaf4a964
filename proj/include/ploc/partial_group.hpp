#pragma once

#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ploc/group.hpp"
#include "ploc/report.hpp"

namespace ploc {

using Word = std::vector<int>;

struct DomainError : std::runtime_error {
  Word word;
  explicit DomainError(Word w);
};

/// Decides which words lie in the domain D of a partial product. The
/// domain is always a predicate, never a stored word list, so element
/// counts stay the only scale knob. Oracles must accept the empty word
/// and every length-1 word of their view.
class DomainOracle {
 public:
  virtual ~DomainOracle() = default;
  virtual bool accepts(std::span<const int> w) const = 0;
  /// Serialization tag ("full", "free1", "delta", "table", "mapped").
  virtual std::string tag() const = 0;
};

/// A partial group on elements 0..n-1: an involutive inversion, a
/// distinguished identity, a pair product table (-1 where undefined) and
/// a domain oracle. Longer products are left folds of the pair table,
/// which is the single source of product values. Views are treated as
/// immutable once validated.
struct PartialGroupView {
  int n = 0;
  int identity = 0;
  std::vector<int> inv;
  std::vector<int> pair;  // n*n row-major, -1 undefined
  std::shared_ptr<const DomainOracle> oracle;
  std::vector<std::string> labels;

  int pair_at(int a, int b) const { return pair[static_cast<size_t>(a) * n + b]; }
  bool in_domain(std::span<const int> w) const { return oracle->accepts(w); }

  /// Left fold along the pair table; false when a step is undefined.
  bool fold(std::span<const int> w, int* out) const;

  /// Product of a domain word. Throws DomainError (carrying the word) if
  /// the oracle rejects it, and runtime_error if the fold breaks on an
  /// accepted word, which a valid view never does.
  int product(std::span<const int> w) const;

  bool conj_defined(int x, int g) const;
  int conjugate(int x, int g) const;

  /// D(g) = { x : (g^-1, x, g) in D }.
  std::vector<int> d_of(int g) const;

  std::string label(int g) const;

  /// Structural checks: shape, involutive inversion, all short words
  /// accepted, oracle agreeing with the pair table. Throws on defect.
  void validate() const;
};

struct PartialSubgroup {
  const PartialGroupView* parent = nullptr;
  std::vector<int> members;  // sorted
};

struct PartialGroupHom {
  const PartialGroupView* dom = nullptr;
  const PartialGroupView* cod = nullptr;
  std::vector<int> map;
};

class FullOracle : public DomainOracle {
 public:
  bool accepts(std::span<const int>) const override { return true; }
  std::string tag() const override { return "full"; }
};

/// Domain of the free partial group on one generator a with inverse b:
/// strip identities, then demand strict alternation of a and b.
class Free1Oracle : public DomainOracle {
 public:
  bool accepts(std::span<const int> w) const override;
  std::string tag() const override { return "free1"; }
};

/// Explicit word list up to a length cap; all shorter-than-2 words are
/// accepted implicitly.
class TableOracle : public DomainOracle {
 public:
  TableOracle(int n, int maxlen, std::vector<Word> words);
  bool accepts(std::span<const int> w) const override;
  std::string tag() const override { return "table"; }
  int maxlen() const { return maxlen_; }
  const std::vector<Word>& words() const { return words_; }

 private:
  int n_ = 0;
  int maxlen_ = 0;
  std::vector<Word> words_;  // sorted
};

/// Pulls the verdict back along an element map into a base view. Used by
/// restrictions (sub-partial groups) and by quotients, where the map
/// sends a class to its canonical representative.
class MappedOracle : public DomainOracle {
 public:
  MappedOracle(PartialGroupView base, std::vector<int> to_base);
  bool accepts(std::span<const int> w) const override;
  std::string tag() const override { return "mapped"; }

 private:
  PartialGroupView base_;
  std::vector<int> to_base_;
};

/// Sweeps every word up to max_len and checks the partial group axioms
/// and the product calculus that follows from them: segment closure,
/// identity behaviour, substitution, inverse words, fold consistency,
/// D-multiplicativity and D-associativity, identity insertion, expansion
/// by u^-1 u, cancellation, inversion of products, uncancellation, and
/// the commuting criteria. Workers split the sweep by first letter;
/// reports merge deterministically.
Report verify_partial_group(const PartialGroupView& V, int max_len, int workers = 1);

/// Smallest subset containing X that is closed under defined pair
/// products and inversion. Fold consistency makes this the same set as
/// closing under all defined word products.
PartialSubgroup generated_partial_subgroup(const PartialGroupView& V,
                                           const std::vector<int>& X);

bool is_partial_subgroup_set(const PartialGroupView& V, const std::vector<int>& members);

/// Bounded test that every word over `members` up to max_len is in D.
bool all_words_in_domain(const PartialGroupView& V, const std::vector<int>& members,
                         int max_len, Word* counterexample = nullptr);

Report verify_homomorphism(const PartialGroupHom& h, int max_len);
PartialSubgroup hom_kernel(const PartialGroupHom& h);

PartialGroupView free_one_generator();
PartialGroupView full_group_view(const FiniteGroup& G);
PartialGroupView direct_product(const PartialGroupView& A, const PartialGroupView& B);

/// Cayley table of a subset that is a genuine group inside the view
/// (all pair products defined and inside the set). Element i of the
/// result is members[i]. Throws when the set is not such a group.
FiniteGroup view_section_group(const PartialGroupView& V, const std::vector<int>& members);

}  // namespace ploc
