#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ploc/perm.hpp"
#include "ploc/report.hpp"

namespace ploc {

/// Finite group on elements 0..n-1 with an explicit multiplication table.
/// Element 0 is always the identity when built by generate_group or
/// quotient_group. Member lists of subgroups are sorted ascending; that
/// ordering convention is relied on throughout for determinism.
struct FiniteGroup {
  int n = 0;
  std::vector<int> table;  // n*n row-major
  int identity = 0;
  std::vector<int> inv;
  std::vector<std::string> labels;

  int mul(int a, int b) const { return table[a * n + b]; }
  int conj(int x, int g) const { return mul(mul(inv[g], x), g); }
  int order_of(int g) const;
  bool is_p_element(int g, int p) const;
  std::string label(int g) const;

  /// Full associativity, identity and inverse check. Throws on defect.
  void validate() const;
};

struct Subgroup {
  const FiniteGroup* parent = nullptr;
  std::vector<int> members;  // sorted

  int order() const { return static_cast<int>(members.size()); }
  bool contains(int g) const;
  bool operator==(const Subgroup& o) const { return members == o.members; }
};

struct GroupHom {
  const FiniteGroup* dom = nullptr;
  const FiniteGroup* cod = nullptr;
  std::vector<int> map;

  void validate() const;  // multiplicative, identity to identity
  std::vector<int> kernel() const;
};

/// Breadth-first closure of the given permutations. Element 0 is the
/// identity; the element order is the BFS discovery order with generators
/// applied in the given order. Throws if the closure exceeds `cap`.
FiniteGroup generate_group(const std::vector<Perm>& gens, int cap = 10000);

Subgroup subgroup_closure(const FiniteGroup& G, const std::vector<int>& seed);
bool is_subgroup_set(const FiniteGroup& G, const std::vector<int>& members);
bool is_normal_set(const FiniteGroup& G, const std::vector<int>& members);
Subgroup normal_closure(const FiniteGroup& G, const std::vector<int>& seed);

std::vector<int> left_coset(const FiniteGroup& G, const std::vector<int>& H, int g);
std::vector<int> set_product(const FiniteGroup& G, const std::vector<int>& A,
                             const std::vector<int>& B);
std::vector<int> conjugate_set(const FiniteGroup& G, const std::vector<int>& X, int g);

/// Deterministic Sylow p-subgroup: grow a p-subgroup by repeatedly
/// adjoining the smallest-index p-element of its normalizer that lies
/// outside it. Every intermediate group is a p-group, so the loop stops
/// exactly at full p-part order.
Subgroup sylow_subgroup(const FiniteGroup& G, int p);

std::vector<int> transporter(const FiniteGroup& G, const std::vector<int>& P,
                             const std::vector<int>& Q);
Subgroup normalizer(const FiniteGroup& G, const std::vector<int>& P);
Subgroup centralizer(const FiniteGroup& G, const std::vector<int>& P);
Subgroup center(const FiniteGroup& G);

/// All subgroups, as the join-closure of the cyclic subgroups.
/// Intended for desk-scale groups; throws when |G| > 200.
std::vector<Subgroup> all_subgroups(const FiniteGroup& G);

/// All normal subgroups: join-closure of the normal closures of the
/// cyclic subgroups. Complete, since every normal subgroup is the join
/// of the closures of its own elements.
std::vector<Subgroup> all_normal_subgroups(const FiniteGroup& G);

/// O_p: join of the normal closures of cyclic subgroups that close up to
/// p-groups. O_{p'}: same with p'-order closures.
Subgroup p_core(const FiniteGroup& G, int p);
Subgroup p_prime_core(const FiniteGroup& G, int p);

/// C_G(O_p(G)) <= O_p(G).
bool is_characteristic_p(const FiniteGroup& G, int p);

/// Quotient by a normal subgroup. Cosets are numbered by ascending
/// smallest member, so the trivial coset is element 0. `coset_of` is the
/// canonical surjection as an element map.
struct GroupQuotient {
  FiniteGroup group;
  std::vector<int> coset_of;
};
GroupQuotient quotient_group(const FiniteGroup& G, const std::vector<int>& N);

/// Dichotomy for a family Gamma of S-conjugates of P covering X = union
/// of Gamma with P^x in Gamma for x in X: either Gamma = {P} or
/// N_S(P) meets X outside P. Preconditions are themselves checked and a
/// violation throws.
bool lemma42_check(const FiniteGroup& S, const std::vector<int>& P,
                   const std::vector<std::vector<int>>& Gamma);

}  // namespace ploc
