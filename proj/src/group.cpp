#include "ploc/group.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace ploc {

int FiniteGroup::order_of(int g) const {
  int x = g, k = 1;
  while (x != identity) {
    x = mul(x, g);
    ++k;
  }
  return k;
}

bool FiniteGroup::is_p_element(int g, int p) const {
  int k = order_of(g);
  while (k % p == 0) k /= p;
  return k == 1;
}

std::string FiniteGroup::label(int g) const {
  if (g >= 0 && g < static_cast<int>(labels.size()) && !labels[g].empty())
    return labels[g];
  return "e" + std::to_string(g);
}

void FiniteGroup::validate() const {
  if (n <= 0 || static_cast<int>(table.size()) != n * n ||
      static_cast<int>(inv.size()) != n)
    throw std::runtime_error("group: malformed tables");
  for (int a = 0; a < n; ++a) {
    if (mul(identity, a) != a || mul(a, identity) != a)
      throw std::runtime_error("group: identity defect at " + std::to_string(a));
    if (mul(a, inv[a]) != identity || mul(inv[a], a) != identity)
      throw std::runtime_error("group: inverse defect at " + std::to_string(a));
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (mul(mul(a, b), c) != mul(a, mul(b, c)))
          throw std::runtime_error("group: associativity defect");
}

bool Subgroup::contains(int g) const {
  return std::binary_search(members.begin(), members.end(), g);
}

void GroupHom::validate() const {
  if (!dom || !cod || static_cast<int>(map.size()) != dom->n)
    throw std::runtime_error("hom: malformed");
  if (map[dom->identity] != cod->identity)
    throw std::runtime_error("hom: identity not preserved");
  for (int a = 0; a < dom->n; ++a)
    for (int b = 0; b < dom->n; ++b)
      if (map[dom->mul(a, b)] != cod->mul(map[a], map[b]))
        throw std::runtime_error("hom: not multiplicative");
}

std::vector<int> GroupHom::kernel() const {
  std::vector<int> k;
  for (int g = 0; g < dom->n; ++g)
    if (map[g] == cod->identity) k.push_back(g);
  return k;
}

FiniteGroup generate_group(const std::vector<Perm>& gens, int cap) {
  if (gens.empty()) throw std::runtime_error("generate_group: no generators");
  int deg = gens[0].degree();
  for (const auto& g : gens)
    if (g.degree() != deg) throw std::runtime_error("generate_group: degree mismatch");

  std::vector<Perm> elems;
  std::map<std::vector<int>, int> index;
  elems.push_back(Perm::identity(deg));
  index[elems[0].img] = 0;
  for (size_t head = 0; head < elems.size(); ++head) {
    for (const auto& g : gens) {
      Perm next = elems[head] * g;
      if (index.emplace(next.img, static_cast<int>(elems.size())).second) {
        elems.push_back(next);
        if (static_cast<int>(elems.size()) > cap)
          throw std::runtime_error("generate_group: closure exceeds cap");
      }
    }
  }

  FiniteGroup G;
  G.n = static_cast<int>(elems.size());
  G.identity = 0;
  G.table.resize(static_cast<size_t>(G.n) * G.n);
  G.inv.resize(G.n);
  G.labels.resize(G.n);
  for (int a = 0; a < G.n; ++a) {
    G.labels[a] = cycle_string(elems[a]);
    for (int b = 0; b < G.n; ++b) G.table[a * G.n + b] = index.at((elems[a] * elems[b]).img);
  }
  for (int a = 0; a < G.n; ++a) G.inv[a] = index.at(elems[a].inverse().img);
  return G;
}

Subgroup subgroup_closure(const FiniteGroup& G, const std::vector<int>& seed) {
  std::set<int> got{G.identity};
  std::vector<int> work{G.identity};
  for (int s : seed)
    if (got.insert(s).second) work.push_back(s);
  for (size_t i = 0; i < work.size(); ++i) {
    int a = work[i];
    if (got.insert(G.inv[a]).second) work.push_back(G.inv[a]);
    for (size_t j = 0; j <= i; ++j) {
      for (int x : {G.mul(a, work[j]), G.mul(work[j], a)})
        if (got.insert(x).second) work.push_back(x);
    }
  }
  Subgroup H;
  H.parent = &G;
  H.members.assign(got.begin(), got.end());
  return H;
}

bool is_subgroup_set(const FiniteGroup& G, const std::vector<int>& members) {
  if (members.empty()) return false;
  std::set<int> s(members.begin(), members.end());
  if (!s.count(G.identity)) return false;
  for (int a : s) {
    if (!s.count(G.inv[a])) return false;
    for (int b : s)
      if (!s.count(G.mul(a, b))) return false;
  }
  return true;
}

bool is_normal_set(const FiniteGroup& G, const std::vector<int>& members) {
  if (!is_subgroup_set(G, members)) return false;
  std::set<int> s(members.begin(), members.end());
  for (int x : members)
    for (int g = 0; g < G.n; ++g)
      if (!s.count(G.conj(x, g))) return false;
  return true;
}

Subgroup normal_closure(const FiniteGroup& G, const std::vector<int>& seed) {
  std::set<int> got{G.identity};
  std::vector<int> work;
  for (int s : seed)
    if (got.insert(s).second) work.push_back(s);
  for (size_t i = 0; i < work.size(); ++i) {
    int a = work[i];
    if (got.insert(G.inv[a]).second) work.push_back(G.inv[a]);
    for (int g = 0; g < G.n; ++g) {
      int c = G.conj(a, g);
      if (got.insert(c).second) work.push_back(c);
    }
    for (int b : std::vector<int>(got.begin(), got.end())) {
      for (int x : {G.mul(a, b), G.mul(b, a)})
        if (got.insert(x).second) work.push_back(x);
    }
  }
  Subgroup H;
  H.parent = &G;
  H.members.assign(got.begin(), got.end());
  return H;
}

std::vector<int> left_coset(const FiniteGroup& G, const std::vector<int>& H, int g) {
  std::vector<int> c;
  c.reserve(H.size());
  for (int h : H) c.push_back(G.mul(h, g));
  std::sort(c.begin(), c.end());
  return c;
}

std::vector<int> set_product(const FiniteGroup& G, const std::vector<int>& A,
                             const std::vector<int>& B) {
  std::set<int> s;
  for (int a : A)
    for (int b : B) s.insert(G.mul(a, b));
  return {s.begin(), s.end()};
}

std::vector<int> conjugate_set(const FiniteGroup& G, const std::vector<int>& X, int g) {
  std::vector<int> r;
  r.reserve(X.size());
  for (int x : X) r.push_back(G.conj(x, g));
  std::sort(r.begin(), r.end());
  return r;
}

Subgroup sylow_subgroup(const FiniteGroup& G, int p) {
  if (p < 2) throw std::runtime_error("sylow: bad prime");
  int target = 1, m = G.n;
  while (m % p == 0) {
    m /= p;
    target *= p;
  }
  Subgroup P;
  P.parent = &G;
  P.members = {G.identity};
  while (P.order() < target) {
    Subgroup N = normalizer(G, P.members);
    int pick = -1;
    for (int g : N.members) {
      if (!P.contains(g) && G.is_p_element(g, p)) {
        pick = g;
        break;
      }
    }
    if (pick < 0) throw std::runtime_error("sylow: extension step failed");
    std::vector<int> seed = P.members;
    seed.push_back(pick);
    P = subgroup_closure(G, seed);
  }
  return P;
}

std::vector<int> transporter(const FiniteGroup& G, const std::vector<int>& P,
                             const std::vector<int>& Q) {
  std::set<int> q(Q.begin(), Q.end());
  std::vector<int> r;
  for (int g = 0; g < G.n; ++g) {
    bool ok = true;
    for (int x : P)
      if (!q.count(G.conj(x, g))) {
        ok = false;
        break;
      }
    if (ok) r.push_back(g);
  }
  return r;
}

Subgroup normalizer(const FiniteGroup& G, const std::vector<int>& P) {
  std::set<int> ps(P.begin(), P.end());
  Subgroup N;
  N.parent = &G;
  for (int g = 0; g < G.n; ++g) {
    bool ok = true;
    for (int x : P)
      if (!ps.count(G.conj(x, g))) {
        ok = false;
        break;
      }
    if (ok) N.members.push_back(g);
  }
  return N;
}

Subgroup centralizer(const FiniteGroup& G, const std::vector<int>& P) {
  Subgroup C;
  C.parent = &G;
  for (int g = 0; g < G.n; ++g) {
    bool ok = true;
    for (int x : P)
      if (G.conj(x, g) != x) {
        ok = false;
        break;
      }
    if (ok) C.members.push_back(g);
  }
  return C;
}

Subgroup center(const FiniteGroup& G) {
  std::vector<int> all(G.n);
  std::iota(all.begin(), all.end(), 0);
  return centralizer(G, all);
}

namespace {

std::vector<Subgroup> join_closure(const FiniteGroup& G,
                                   std::set<std::vector<int>> base,
                                   bool keep_normal_joins) {
  std::vector<std::vector<int>> work(base.begin(), base.end());
  for (size_t i = 0; i < work.size(); ++i) {
    for (size_t j = 0; j < i; ++j) {
      std::vector<int> seed = work[i];
      seed.insert(seed.end(), work[j].begin(), work[j].end());
      std::vector<int> join = keep_normal_joins
                                  ? normal_closure(G, seed).members
                                  : subgroup_closure(G, seed).members;
      if (base.insert(join).second) work.push_back(join);
    }
  }
  std::vector<Subgroup> out;
  for (const auto& m : base) out.push_back(Subgroup{&G, m});
  return out;
}

}  // namespace

std::vector<Subgroup> all_subgroups(const FiniteGroup& G) {
  if (G.n > 200) throw std::runtime_error("all_subgroups: group too large");
  std::set<std::vector<int>> base;
  base.insert({G.identity});
  for (int g = 0; g < G.n; ++g) base.insert(subgroup_closure(G, {g}).members);
  return join_closure(G, std::move(base), false);
}

std::vector<Subgroup> all_normal_subgroups(const FiniteGroup& G) {
  std::set<std::vector<int>> base;
  base.insert({G.identity});
  for (int g = 0; g < G.n; ++g) base.insert(normal_closure(G, {g}).members);
  return join_closure(G, std::move(base), true);
}

namespace {

bool order_is_p_power(int k, int p) {
  while (k % p == 0) k /= p;
  return k == 1;
}

Subgroup core_by_sieve(const FiniteGroup& G, int p, bool want_p_part) {
  std::set<int> acc{G.identity};
  for (int g = 0; g < G.n; ++g) {
    Subgroup ncl = normal_closure(G, {g});
    bool is_p = order_is_p_power(ncl.order(), p);
    bool is_p_prime = ncl.order() % p != 0;
    if ((want_p_part && is_p) || (!want_p_part && is_p_prime))
      acc.insert(ncl.members.begin(), ncl.members.end());
  }
  return subgroup_closure(G, {acc.begin(), acc.end()});
}

}  // namespace

Subgroup p_core(const FiniteGroup& G, int p) { return core_by_sieve(G, p, true); }

Subgroup p_prime_core(const FiniteGroup& G, int p) { return core_by_sieve(G, p, false); }

bool is_characteristic_p(const FiniteGroup& G, int p) {
  Subgroup Q = p_core(G, p);
  Subgroup C = centralizer(G, Q.members);
  for (int c : C.members)
    if (!Q.contains(c)) return false;
  return true;
}

GroupQuotient quotient_group(const FiniteGroup& G, const std::vector<int>& N) {
  if (!is_normal_set(G, N)) throw std::runtime_error("quotient_group: not normal");
  std::vector<int> coset_of(G.n, -1);
  std::vector<int> reps;
  for (int g = 0; g < G.n; ++g) {
    if (coset_of[g] >= 0) continue;
    int id = static_cast<int>(reps.size());
    reps.push_back(g);
    for (int x : N) coset_of[G.mul(x, g)] = id;
  }
  FiniteGroup Q;
  Q.n = static_cast<int>(reps.size());
  Q.identity = coset_of[G.identity];
  Q.table.resize(static_cast<size_t>(Q.n) * Q.n);
  Q.inv.resize(Q.n);
  Q.labels.resize(Q.n);
  for (int a = 0; a < Q.n; ++a) {
    Q.labels[a] = "[" + G.label(reps[a]) + "]";
    Q.inv[a] = coset_of[G.inv[reps[a]]];
    for (int b = 0; b < Q.n; ++b)
      Q.table[a * Q.n + b] = coset_of[G.mul(reps[a], reps[b])];
  }
  return {std::move(Q), std::move(coset_of)};
}

bool lemma42_check(const FiniteGroup& S, const std::vector<int>& P,
                   const std::vector<std::vector<int>>& Gamma) {
  if (Gamma.empty()) throw std::runtime_error("lemma42: empty family");
  std::set<std::vector<int>> fam(Gamma.begin(), Gamma.end());
  for (const auto& Q : fam) {
    if (transporter(S, P, Q).empty() || Q.size() != P.size())
      throw std::runtime_error("lemma42: member not an S-conjugate of P");
  }
  std::set<int> X;
  for (const auto& Q : fam) X.insert(Q.begin(), Q.end());
  for (int x : X) {
    std::vector<int> Pi = conjugate_set(S, P, x);
    if (!fam.count(Pi)) throw std::runtime_error("lemma42: family not X-invariant");
  }
  if (fam.size() == 1) return true;
  Subgroup NP = normalizer(S, P);
  std::set<int> Pset(P.begin(), P.end());
  for (int x : NP.members)
    if (X.count(x) && !Pset.count(x)) return true;
  return false;
}

}  // namespace ploc
