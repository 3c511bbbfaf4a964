#pragma once

#include <memory>
#include <optional>
#include <utility>

#include "ploc/locality.hpp"

namespace ploc {

/// Partial normal subgroup: a partial subgroup stable under every
/// defined conjugation from L, carried with its p-part T = S cap N.
struct PartialNormal {
  const Locality* loc = nullptr;
  std::vector<int> members;  // sorted
  std::vector<char> mask;    // size |L|
  std::vector<int> T;        // sorted

  bool contains(int x) const { return mask[static_cast<size_t>(x)] != 0; }
  int size() const { return static_cast<int>(members.size()); }
};

bool is_partial_normal(const Locality& loc, const std::vector<int>& members);

/// Validates the predicate and computes T. Throws on violation.
PartialNormal make_partial_normal(const Locality& loc, std::vector<int> members);

/// Smallest partial normal subgroup containing the seed: alternates
/// product-inversion closure with conjugation closure to a fixpoint.
PartialNormal partial_normal_closure(const Locality& loc, const std::vector<int>& seed);

/// All partial normal subgroups: closures of singletons, then joins,
/// deduplicated and sorted by member list.
std::vector<PartialNormal> all_partial_normal_subgroups(const Locality& loc);

/// The climb relation on pairs (f,P) with P an object inside S_f:
/// (f,P) climbs to (g,Q) when x in N_N(P,Q), y in N_N(P^f,Q^g) close the
/// square xg = fy; equivalently (x,g,y^-1,f^-1) lies in D via P with
/// product 1. The witness y is recovered as the product f^-1 x g, which
/// is complete for objective domains.
bool up_rel(const PartialNormal& N, int f, const std::vector<int>& P, int g,
            const std::vector<int>& Q);

/// f with (f,S_f) maximal under the climb relation: no related (g,Q)
/// with |Q| > |S_f|.
bool is_up_maximal(const PartialNormal& N, int f);
std::vector<int> up_maximal_set(const PartialNormal& N);  // sorted

/// Decomposition f = Pi(x,g) with x in N and g climb-maximal. Returns
/// (identity, f) when f is itself climb-maximal, otherwise the smallest
/// climb-maximal g admitting a decomposition. Throws when none exists or
/// when S_f != S_{(x,g)}, neither of which a locality permits.
std::pair<int, int> frattini_decompose(const PartialNormal& N, int f);

/// The coset Nf = { Pi(x,f) : x in N, (x,f) in D }, sorted.
std::vector<int> coset_of(const PartialNormal& N, int f);

/// Partition of L into maximal cosets. rep[b] is the smallest
/// climb-maximal member of block b; block 0 contains the identity.
struct CosetPartition {
  std::vector<std::vector<int>> blocks;  // each sorted
  std::vector<int> rep;
  std::vector<int> block_of;
};

/// Builds the partition from the cosets of climb-maximal elements and
/// asserts that they cover L pairwise disjointly. Throws on violation.
CosetPartition maximal_cosets(const PartialNormal& N);

/// Element map between localities claimed to push the domain and the
/// object family onto the codomain's.
struct Projection {
  const Locality* dom = nullptr;
  const Locality* cod = nullptr;
  std::vector<int> map;
};

/// Projection laws up to max_len: homomorphism sweep, domain words
/// mapped onto the codomain's domain (preimage search through fibers),
/// objects mapped onto objects, kernel closed.
Report verify_projection(const Projection& pr, int max_len);

std::vector<int> projection_kernel(const Projection& pr);  // sorted

/// Quotient locality L/N on the maximal cosets. The product of blocks
/// is the block of the product of representatives; the oracle lifts a
/// block word to its representative word.
struct Quotient {
  const Locality* loc = nullptr;
  std::shared_ptr<Locality> bar;
  CosetPartition cosets;

  int block_of(int g) const { return cosets.block_of[static_cast<size_t>(g)]; }
  int rep(int b) const { return cosets.rep[static_cast<size_t>(b)]; }
  Projection rho() const { return Projection{loc, bar.get(), cosets.block_of}; }
};

Quotient quotient_locality(const Locality& loc, const PartialNormal& N);

/// Factorization of a projection through a quotient by N <= Ker(beta):
/// gamma maps the block of f to f beta, and is an isomorphism exactly
/// when N is the whole kernel.
struct FirstIso {
  Quotient quot;
  Projection gamma;
  bool isomorphism = false;
};

FirstIso first_isomorphism(const Locality& dom, const Locality& cod,
                           const std::vector<int>& beta_map, const PartialNormal& N);

/// First-isomorphism sweep: gamma factors beta pointwise through rho,
/// gamma satisfies the projection laws, and gamma is injective exactly
/// when N is the whole kernel. Check ids under 4.6.
Report verify_first_isomorphism(const FirstIso& fi, const std::vector<int>& beta_map,
                                int max_len = 3);

/// Theta construction: per-object p'-cores of the normalizer groups,
/// their union, and the quotient by it, gated on every quotient
/// normalizer having characteristic p.
struct ThetaResult {
  bool hypothesis_met = false;
  std::string offender;                      // object failing the gate
  std::vector<std::vector<int>> theta_of;    // aligned with loc.delta.members
  std::vector<int> theta;                    // sorted union
  std::optional<PartialNormal> normal;
  std::optional<Quotient> quot;
};

ThetaResult theta_quotient(const Locality& loc);

/// Structure sweep relative to N: conjugation into T, commuting moves
/// across N_L(T), conjugated word domains, the Frattini calculus, the
/// climb relation's order properties, splitting, coset algebra, and the
/// normalizer sublocality of T. Check ids 3.1.a through 4.11.
Report verify_normal_theory(const Locality& loc, const PartialNormal& N, int max_len = 3);

/// Quotient sweep: projection laws for rho, kernel identity, canonical
/// word stability, fiber/coset agreement, S_g transport, normalizer
/// surjections, and the bar locality's own axioms. Check ids under 3.16,
/// 4.3 and 4.5.
Report verify_quotient(const Quotient& q, const PartialNormal& N, int max_len = 3);

/// Correspondence sweep between partial subgroups over N and partial
/// subgroups of the quotient, with normality transfer, intersection
/// images and Sylow position downstairs. Check ids 3.15, 4.7, 4.9, 4.10.
Report verify_correspondence(const Quotient& q, const PartialNormal& N);

/// Theta sweep: the gate itself, normality and S-disjointness of Theta,
/// the quotient locality, fusion equality over the identified S, and the
/// per-object quotient isomorphisms. Check ids under 4.12.
Report verify_theta(const Locality& loc, int max_len = 3);

}  // namespace ploc
