#pragma once

#include <optional>

#include "ploc/partial_group.hpp"

namespace ploc {

/// Interned family of subgroups of S. Members are sorted element-index
/// lists, kept sorted lexicographically, so families compare and
/// serialize deterministically.
struct SubgroupFamily {
  std::vector<std::vector<int>> members;

  bool contains(const std::vector<int>& m) const;
  void insert(std::vector<int> m);
  size_t size() const { return members.size(); }
};

/// Word domain cut out by a family Delta of subgroups of S: a word is in
/// D exactly when the subgroup S_w of S that conjugates through the whole
/// word (staying inside S at every stage) lies in Delta. The one-step
/// charts are explicit tables, so the oracle is self-contained.
class ChainOracle : public DomainOracle {
 public:
  /// step[g][i]: position in S of S[i]^g, or -1 when the step leaves S
  /// or is undefined.
  ChainOracle(int n, std::vector<int> S, SubgroupFamily delta,
              std::vector<std::vector<int>> step);
  bool accepts(std::span<const int> w) const override;
  std::string tag() const override { return "delta"; }

  const std::vector<std::vector<int>>& step() const { return step_; }

 private:
  std::vector<int> S_;
  SubgroupFamily delta_;
  std::vector<std::vector<int>> step_;
};

/// A locality (L, Delta, S): an objective partial group on the view,
/// with p-subgroup S maximal in L. sg/cg hold S_g and the conjugation
/// injection c_g for every element, computed once at construction by
/// direct oracle scan. s_lattice is every subgroup of S.
struct Locality {
  PartialGroupView pg;
  int p = 2;
  std::vector<int> S;
  SubgroupFamily delta;
  std::vector<std::vector<int>> sg;
  std::vector<std::vector<int>> cg;
  FiniteGroup s_group;
  std::vector<int> s_pos;
  std::vector<std::vector<int>> s_lattice;

  int n() const { return pg.n; }

  /// S_w per the conjugation chain through sg/cg; sorted.
  std::vector<int> s_w(std::span<const int> w) const;

  bool in_sg(int x, int g) const;
  int conj_in_s(int x, int g) const;  // requires x in S_g
  std::vector<int> conj_subgroup(const std::vector<int>& X, int g) const;
  bool subgroup_of_s(const std::vector<int>& X) const;

  /// N_L(X) for X a subgroup of S: every g with X <= S_g and X^g = X.
  std::vector<int> normalizer_in_l(const std::vector<int>& X) const;
  /// N_N(X, Y) relative to a ground set: g in ground with X <= S_g, X^g <= Y.
  std::vector<int> transporter_in_l(const std::vector<int>& X, const std::vector<int>& Y,
                                    const std::vector<int>& ground) const;
};

/// Assembles and validates a Locality from a finished view. Checks that
/// S carries a group structure inside the view, that every Delta member
/// is a subgroup of S containing S itself in the family, and scans sg/cg.
Locality make_locality(PartialGroupView pg, int p, std::vector<int> S,
                       SubgroupFamily delta);

/// Closure of the seed family inside the subgroup lattice of S: adds S,
/// then every subgroup of S over any G-conjugate of a member. This is the
/// smallest family containing the seeds for which the construction below
/// can satisfy its object axioms.
SubgroupFamily delta_closure(const FiniteGroup& G, const Subgroup& S,
                             const std::vector<std::vector<int>>& seeds);

SubgroupFamily all_nonidentity_delta(const FiniteGroup& G, const Subgroup& S);

/// The partial group of Example-type construction: L = { g in G :
/// S of S^g in Delta }, with w in D exactly when S_w lies in Delta, and
/// products inherited from G. Delta must be closed in the sense of
/// delta_closure; S need not be Sylow for the construction, but the
/// locality axioms are only satisfied when it is.
Locality locality_from_group(const FiniteGroup& G, const Subgroup& S, int p,
                             const SubgroupFamily& delta_g_indices);

/// Restriction to a subset that is a partial subgroup of L, with the
/// induced domain, a chosen Sylow subset and object family.
Locality sub_locality(const Locality& loc, const std::vector<int>& members, int p,
                      const std::vector<int>& Ssub,
                      const std::vector<std::vector<int>>& delta_members);

/// Objectivity sweep: the domain matches the chain criterion in both
/// directions up to max_len (O1), the family is closed over conjugation
/// and overgroups (O2), S_g is an object and c_g an isomorphism onto
/// S_{g^-1}, normalizers of objects are subgroups permuted by
/// conjugation, composite conjugation agrees along chains, subgroup
/// transport is multiplicative, commuting elements conjugate trivially,
/// and N_L(S) absorbs domain words on both sides.
Report verify_objectivity(const Locality& loc, int max_len, int workers = 1);

/// Locality sweep: S in Delta, maximality of S among p-subgroups read
/// off N_L(S), Sylow-position of N_S(P^g) for a suitable conjugate of
/// every object, and containment of enumerated (up to 2-generator)
/// subgroups in object normalizers, with p-subgroups conjugating into S.
Report verify_locality(const Locality& loc);

/// N_L(R) with objects N_P(R); requires the induced family inside Delta
/// and N_S(R) maximal, which always holds when R is normal in S.
Locality normalizer_sublocality(const Locality& loc, const std::vector<int>& R);

/// Largest subgroup of S invariant under every conjugation map, as the
/// fixpoint of trimming S against all sg/cg charts.
std::vector<int> op_subgroup(const Locality& loc);

/// An element u with H^u <= S, found along the normalizer route: place H
/// in N_L(U) for an object U, move U to Sylow position, then conjugate
/// inside that normalizer group. Throws when H is not a p-subgroup of L
/// reachable this way.
int conjugate_into_s(const Locality& loc, const std::vector<int>& H);

/// Elements centralizing every member of T (conjugation defined and
/// trivial).
std::vector<int> centralizer_in_l(const Locality& loc, const std::vector<int>& T);

/// Fixpoint core of cap_{h in H} S_h under trimming by H-conjugation.
/// Always a subgroup of S containing the identity.
std::vector<int> subgroup_core(const Locality& loc, const std::vector<int>& H);

/// Subgroup-of-L test: H closed under inversion and defined binary
/// products, with subgroup_core(H) an object. Sound because the core is
/// a constant chain for every word over H; complete because a genuine
/// subgroup normalizes an object inside its core.
bool is_subgroup_in_l(const Locality& loc, const std::vector<int>& H);

/// All conjugation maps between subgroups of S, closed under
/// restriction, composition and inversion. Maps are interned as sorted
/// graphs, so two sets compare by equality.
struct FusionMapSet {
  std::vector<std::vector<std::pair<int, int>>> maps;  // sorted
  bool operator==(const FusionMapSet&) const = default;
};
FusionMapSet fusion_maps(const Locality& loc);

/// First pair rejected by the domain, if any: a certificate that D is a
/// proper part of W(L).
std::optional<Word> find_rejected_pair(const PartialGroupView& V);

bool subset_sorted(const std::vector<int>& a, const std::vector<int>& b);
std::vector<int> intersect_sorted(const std::vector<int>& a, const std::vector<int>& b);

}  // namespace ploc
