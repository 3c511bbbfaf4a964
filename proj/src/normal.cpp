#include "ploc/normal.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <set>
#include <stdexcept>
#include <string>

#include "ploc/group.hpp"

namespace ploc {

namespace {

bool safe_conj(const PartialGroupView& V, int x, int g, int* out) {
  std::array<int, 3> w{V.inv[g], x, g};
  if (!V.in_domain(w)) return false;
  return V.fold(w, out);
}

bool contains_sorted(const std::vector<int>& v, int x) {
  return std::binary_search(v.begin(), v.end(), x);
}

std::vector<int> sorted_unique(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

std::vector<int> map_set(const std::vector<int>& xs, const std::vector<int>& m) {
  std::vector<int> out;
  out.reserve(xs.size());
  for (int x : xs) out.push_back(m[static_cast<size_t>(x)]);
  return sorted_unique(std::move(out));
}

std::string elem(const PartialGroupView& V, int g) {
  return std::to_string(g) + ":" + V.label(g);
}

int p_part(int m, int p) {
  int q = 1;
  while (m % p == 0) {
    m /= p;
    q *= p;
  }
  return q;
}

bool is_p_power(int m, int p) {
  while (m % p == 0) m /= p;
  return m == 1;
}

/// Product of two subsets of S, computed in the S-group and mapped back
/// to element indices.
std::vector<int> s_product(const Locality& loc, const std::vector<int>& A,
                           const std::vector<int>& B) {
  std::vector<int> a, b;
  a.reserve(A.size());
  b.reserve(B.size());
  for (int x : A) a.push_back(loc.s_pos[x]);
  for (int x : B) b.push_back(loc.s_pos[x]);
  auto pr = set_product(loc.s_group, a, b);
  std::vector<int> out;
  out.reserve(pr.size());
  for (int q : pr) out.push_back(loc.S[q]);
  std::sort(out.begin(), out.end());
  return out;
}

/// Image of a subset of S under conjugation by a, inside the S-group.
bool s_normalizes(const Locality& loc, const std::vector<int>& X, int a) {
  int ap = loc.s_pos[a];
  for (int x : X) {
    int y = loc.S[loc.s_group.conj(loc.s_pos[x], ap)];
    if (!contains_sorted(X, y)) return false;
  }
  return true;
}

std::string first_fail_id(const Report& r) {
  for (const auto& c : r.checks)
    if (c.status == Status::Fail) return c.id;
  return {};
}

/// Fail-once bookkeeping for sweep reports: the first witness per check
/// id is kept, later ones are ignored.
struct Ledger {
  Report* rep;
  std::set<std::string> failed;

  bool ok(const std::string& id) const { return failed.count(id) == 0; }
  void fail(const std::string& id, std::string w, std::vector<int> key = {},
            int bound = -1) {
    if (failed.insert(id).second) rep->fail(id, std::move(w), std::move(key), bound);
  }
};

}  // namespace

bool is_partial_normal(const Locality& loc, const std::vector<int>& members) {
  const PartialGroupView& V = loc.pg;
  if (!is_partial_subgroup_set(V, members)) return false;
  for (int x : members) {
    for (int g = 0; g < V.n; ++g) {
      int y = -1;
      if (safe_conj(V, x, g, &y) && !contains_sorted(members, y)) return false;
    }
  }
  return true;
}

PartialNormal make_partial_normal(const Locality& loc, std::vector<int> members) {
  members = sorted_unique(std::move(members));
  if (!is_partial_normal(loc, members))
    throw std::invalid_argument("set is not a partial normal subgroup");
  PartialNormal N;
  N.loc = &loc;
  N.mask.assign(loc.n(), 0);
  for (int x : members) N.mask[static_cast<size_t>(x)] = 1;
  N.T = intersect_sorted(loc.S, members);
  N.members = std::move(members);
  return N;
}

PartialNormal partial_normal_closure(const Locality& loc, const std::vector<int>& seed) {
  const PartialGroupView& V = loc.pg;
  std::vector<int> X = seed;
  X.push_back(V.identity);
  X = sorted_unique(std::move(X));
  for (;;) {
    X = generated_partial_subgroup(V, X).members;
    std::vector<int> add;
    for (int x : X) {
      for (int g = 0; g < V.n; ++g) {
        int y = -1;
        if (safe_conj(V, x, g, &y) && !contains_sorted(X, y)) add.push_back(y);
      }
    }
    if (add.empty()) break;
    X.insert(X.end(), add.begin(), add.end());
    X = sorted_unique(std::move(X));
  }
  return make_partial_normal(loc, X);
}

std::vector<PartialNormal> all_partial_normal_subgroups(const Locality& loc) {
  std::vector<std::vector<int>> sets;
  auto push = [&](const std::vector<int>& m) {
    if (std::find(sets.begin(), sets.end(), m) == sets.end()) {
      sets.push_back(m);
      return true;
    }
    return false;
  };
  push({loc.pg.identity});
  for (int g = 0; g < loc.n(); ++g) push(partial_normal_closure(loc, {g}).members);
  for (bool grew = true; grew;) {
    grew = false;
    std::vector<std::vector<int>> snapshot = sets;
    for (size_t i = 0; i < snapshot.size(); ++i) {
      for (size_t j = i + 1; j < snapshot.size(); ++j) {
        std::vector<int> seed = snapshot[i];
        seed.insert(seed.end(), snapshot[j].begin(), snapshot[j].end());
        if (push(partial_normal_closure(loc, seed).members)) grew = true;
      }
    }
  }
  std::sort(sets.begin(), sets.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  std::vector<PartialNormal> out;
  out.reserve(sets.size());
  for (auto& m : sets) out.push_back(make_partial_normal(loc, std::move(m)));
  return out;
}

bool up_rel(const PartialNormal& N, int f, const std::vector<int>& P, int g,
            const std::vector<int>& Q) {
  const Locality& loc = *N.loc;
  const PartialGroupView& V = loc.pg;
  if (!subset_sorted(P, loc.sg[f]) || !subset_sorted(Q, loc.sg[g])) return false;
  const std::vector<int> Pf = loc.conj_subgroup(P, f);
  const std::vector<int> Qg = loc.conj_subgroup(Q, g);
  const int fi = V.inv[f];
  for (int x : N.members) {
    if (!subset_sorted(P, loc.sg[x])) continue;
    if (!subset_sorted(loc.conj_subgroup(P, x), Q)) continue;
    std::array<int, 3> w3{fi, x, g};
    int y = -1;
    if (!V.in_domain(w3) || !V.fold(w3, &y)) continue;
    if (!N.contains(y)) continue;
    if (!subset_sorted(Pf, loc.sg[y])) continue;
    if (!subset_sorted(loc.conj_subgroup(Pf, y), Qg)) continue;
    std::array<int, 4> w4{x, g, V.inv[y], fi};
    int prod = -1;
    if (V.in_domain(w4) && V.fold(w4, &prod) && prod == V.identity) return true;
  }
  return false;
}

bool is_up_maximal(const PartialNormal& N, int f) {
  const Locality& loc = *N.loc;
  const std::vector<int>& Sf = loc.sg[f];
  for (int g = 0; g < loc.n(); ++g) {
    for (const auto& Q : loc.delta.members) {
      if (Q.size() <= Sf.size()) continue;
      if (!subset_sorted(Q, loc.sg[g])) continue;
      if (up_rel(N, f, Sf, g, Q)) return false;
    }
  }
  return true;
}

std::vector<int> up_maximal_set(const PartialNormal& N) {
  std::vector<int> out;
  for (int f = 0; f < N.loc->n(); ++f)
    if (is_up_maximal(N, f)) out.push_back(f);
  return out;
}

std::pair<int, int> frattini_decompose(const PartialNormal& N, int f) {
  const Locality& loc = *N.loc;
  const PartialGroupView& V = loc.pg;
  auto s_equal = [&](int x, int g) {
    std::array<int, 2> w{x, g};
    return loc.s_w(w) == loc.sg[f];
  };
  if (is_up_maximal(N, f)) {
    if (V.pair_at(V.identity, f) != f || !s_equal(V.identity, f))
      throw std::runtime_error("identity decomposition misbehaves");
    return {V.identity, f};
  }
  for (int g = 0; g < loc.n(); ++g) {
    if (!is_up_maximal(N, g)) continue;
    int x = V.pair_at(f, V.inv[g]);
    if (x < 0 || !N.contains(x)) continue;
    if (V.pair_at(x, g) != f) continue;
    if (!s_equal(x, g))
      throw std::runtime_error("decomposition drops part of S_f at " + elem(V, f));
    return {x, g};
  }
  throw std::runtime_error("no decomposition over the climb-maximal set for " +
                           elem(V, f));
}

std::vector<int> coset_of(const PartialNormal& N, int f) {
  const PartialGroupView& V = N.loc->pg;
  std::vector<int> out;
  out.reserve(N.members.size());
  for (int x : N.members) {
    int g = V.pair_at(x, f);
    if (g >= 0) out.push_back(g);
  }
  return sorted_unique(std::move(out));
}

CosetPartition maximal_cosets(const PartialNormal& N) {
  const Locality& loc = *N.loc;
  CosetPartition cp;
  cp.block_of.assign(loc.n(), -1);
  for (int f : up_maximal_set(N)) {
    if (cp.block_of[f] >= 0) continue;
    std::vector<int> blk = coset_of(N, f);
    int b = static_cast<int>(cp.blocks.size());
    for (int g : blk) {
      if (cp.block_of[g] >= 0)
        throw std::runtime_error("maximal cosets overlap at " + elem(loc.pg, g));
      cp.block_of[g] = b;
    }
    cp.blocks.push_back(std::move(blk));
    cp.rep.push_back(f);
  }
  for (int g = 0; g < loc.n(); ++g)
    if (cp.block_of[g] < 0)
      throw std::runtime_error("maximal cosets miss " + elem(loc.pg, g));
  return cp;
}

Quotient quotient_locality(const Locality& loc, const PartialNormal& N) {
  if (N.loc != &loc)
    throw std::invalid_argument("normal subgroup belongs to another locality");
  Quotient q;
  q.loc = &loc;
  q.cosets = maximal_cosets(N);
  const PartialGroupView& V = loc.pg;
  const auto& blk = q.cosets.block_of;
  int m = static_cast<int>(q.cosets.blocks.size());

  PartialGroupView bar;
  bar.n = m;
  bar.identity = blk[V.identity];
  bar.inv.resize(m);
  bar.labels.resize(m);
  for (int b = 0; b < m; ++b) {
    bar.inv[b] = blk[V.inv[q.cosets.rep[b]]];
    bar.labels[b] = "[" + V.label(q.cosets.rep[b]) + "]";
  }
  bar.pair.assign(static_cast<size_t>(m) * m, -1);
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) {
      int pr = V.pair_at(q.cosets.rep[a], q.cosets.rep[b]);
      if (pr >= 0) bar.pair[static_cast<size_t>(a) * m + b] = blk[pr];
    }
  }
  bar.oracle = std::make_shared<MappedOracle>(V, q.cosets.rep);
  bar.validate();

  std::vector<int> sbar = map_set(loc.S, blk);
  SubgroupFamily dbar;
  for (const auto& P : loc.delta.members) dbar.insert(map_set(P, blk));
  q.bar = std::make_shared<Locality>(make_locality(std::move(bar), loc.p, sbar, dbar));
  return q;
}

std::vector<int> projection_kernel(const Projection& pr) {
  std::vector<int> out;
  int e = pr.cod->pg.identity;
  for (int g = 0; g < pr.dom->n(); ++g)
    if (pr.map[static_cast<size_t>(g)] == e) out.push_back(g);
  return out;
}

Report verify_projection(const Projection& pr, int max_len) {
  const Locality& dom = *pr.dom;
  const Locality& cod = *pr.cod;
  Report rep;
  PartialGroupHom h{&dom.pg, &cod.pg, pr.map};
  rep.merge(verify_homomorphism(h, max_len));

  Ledger led{&rep, {}};
  std::vector<std::vector<int>> fiber(cod.n());
  for (int g = 0; g < dom.n(); ++g) fiber[static_cast<size_t>(pr.map[g])].push_back(g);
  for (int b = 0; b < cod.n(); ++b) {
    if (fiber[static_cast<size_t>(b)].empty()) {
      led.fail("4.4.1", elem(cod.pg, b), {0, b});
      break;
    }
  }

  // Every accepted codomain word up to max_len must lift into D.
  std::vector<int> wbar(static_cast<size_t>(max_len));
  std::vector<int> wlift(static_cast<size_t>(max_len));
  auto lift_exists = [&](int len) {
    auto rec = [&](auto&& self, int i) -> bool {
      if (i == len) {
        return dom.pg.in_domain(std::span<const int>(wlift.data(), static_cast<size_t>(len)));
      }
      for (int g : fiber[static_cast<size_t>(wbar[static_cast<size_t>(i)])]) {
        wlift[static_cast<size_t>(i)] = g;
        if (self(self, i + 1)) return true;
      }
      return false;
    };
    return rec(rec, 0);
  };
  for (int len = 1; len <= max_len && led.ok("4.4.1"); ++len) {
    std::vector<int> idx(static_cast<size_t>(len), 0);
    for (;;) {
      for (int i = 0; i < len; ++i) wbar[static_cast<size_t>(i)] = idx[static_cast<size_t>(i)];
      std::span<const int> wb(wbar.data(), static_cast<size_t>(len));
      if (cod.pg.in_domain(wb) && !lift_exists(len)) {
        led.fail("4.4.1", word_witness(wb), idx, len);
        break;
      }
      int k = len - 1;
      while (k >= 0 && ++idx[static_cast<size_t>(k)] == cod.n()) idx[static_cast<size_t>(k--)] = 0;
      if (k < 0) break;
    }
  }

  SubgroupFamily img;
  for (const auto& P : dom.delta.members) img.insert(map_set(P, pr.map));
  if (!(img.members == cod.delta.members))
    led.fail("4.4.2", "object families differ (" + std::to_string(img.size()) + " vs " +
                          std::to_string(cod.delta.size()) + ")");

  if (led.ok("4.4.1")) rep.pass("4.4.1", max_len);
  if (led.ok("4.4.2")) rep.pass("4.4.2");
  rep.sort_lines();
  return rep;
}

FirstIso first_isomorphism(const Locality& dom, const Locality& cod,
                           const std::vector<int>& beta_map, const PartialNormal& N) {
  for (int x : N.members)
    if (beta_map[static_cast<size_t>(x)] != cod.pg.identity)
      throw std::invalid_argument("normal subgroup is not inside the kernel");
  FirstIso fi;
  fi.quot = quotient_locality(dom, N);
  std::vector<int> gmap(fi.quot.cosets.blocks.size());
  for (size_t b = 0; b < gmap.size(); ++b)
    gmap[b] = beta_map[static_cast<size_t>(fi.quot.cosets.rep[b])];
  fi.gamma = Projection{fi.quot.bar.get(), &cod, std::move(gmap)};
  std::vector<int> kernel;
  for (int g = 0; g < dom.n(); ++g)
    if (beta_map[static_cast<size_t>(g)] == cod.pg.identity) kernel.push_back(g);
  fi.isomorphism = kernel == N.members;
  return fi;
}

ThetaResult theta_quotient(const Locality& loc) {
  const PartialGroupView& V = loc.pg;
  ThetaResult th;
  std::vector<int> theta{V.identity};
  for (const auto& P : loc.delta.members) {
    std::vector<int> nm = loc.normalizer_in_l(P);
    FiniteGroup M = view_section_group(V, nm);
    Subgroup core = p_prime_core(M, loc.p);
    std::vector<int> tp;
    tp.reserve(core.members.size());
    for (int pos : core.members) tp.push_back(nm[static_cast<size_t>(pos)]);
    std::sort(tp.begin(), tp.end());
    GroupQuotient gq = quotient_group(M, core.members);
    if (!is_characteristic_p(gq.group, loc.p)) {
      th.offender = set_witness(P);
      return th;
    }
    theta.insert(theta.end(), tp.begin(), tp.end());
    th.theta_of.push_back(std::move(tp));
  }
  th.hypothesis_met = true;
  th.theta = sorted_unique(std::move(theta));
  th.normal = make_partial_normal(loc, th.theta);
  th.quot = quotient_locality(loc, *th.normal);
  return th;
}

Report verify_normal_theory(const Locality& loc, const PartialNormal& N, int max_len) {
  const PartialGroupView& V = loc.pg;
  const int n = loc.n();
  Report rep;
  rep.set_meta("elements", std::to_string(n));
  rep.set_meta("normal_size", std::to_string(N.members.size()));
  rep.set_meta("t_size", std::to_string(N.T.size()));

  if (!is_partial_normal(loc, N.members)) {
    rep.fail("1.7", "set is not conjugation-stable or not a partial subgroup");
    rep.sort_lines();
    return rep;
  }
  rep.pass("1.7");

  Ledger led{&rep, {}};
  const std::vector<int>& T = N.T;
  const std::vector<int> nlt = loc.normalizer_in_l(T);
  const std::vector<int> lam = up_maximal_set(N);
  std::vector<char> is_lam(static_cast<size_t>(n), 0);
  for (int f : lam) is_lam[static_cast<size_t>(f)] = 1;
  std::vector<std::vector<int>> cosN(static_cast<size_t>(n));
  for (int g = 0; g < n; ++g) cosN[static_cast<size_t>(g)] = coset_of(N, g);
  rep.set_meta("up_maximal", std::to_string(lam.size()));

  std::vector<int> tpos;
  tpos.reserve(T.size());
  for (int t : T) tpos.push_back(loc.s_pos[t]);
  std::vector<int> cst;
  for (int q : centralizer(loc.s_group, tpos).members) cst.push_back(loc.S[q]);
  std::sort(cst.begin(), cst.end());

  // T is invariant under every conjugation landing in S.
  for (int g = 0; g < n; ++g) {
    for (int x : intersect_sorted(T, loc.sg[g])) {
      if (!contains_sorted(T, loc.conj_in_s(x, g))) {
        led.fail("3.1.a", elem(V, x) + " ^ " + elem(V, g), {x, g});
        break;
      }
    }
  }

  // PT = P^xT for x in N and P below S_x.
  for (int x : N.members) {
    for (const auto& P : loc.s_lattice) {
      if (!subset_sorted(P, loc.sg[x])) continue;
      auto px = loc.conj_subgroup(P, x);
      if (s_product(loc, P, T) != s_product(loc, px, T)) {
        led.fail("3.1.b", "x=" + elem(V, x) + " P=" + set_witness(P), {x});
        break;
      }
    }
    if (!led.ok("3.1.b")) break;
  }

  // T is a maximal p-subgroup of N.
  if (!is_p_power(static_cast<int>(T.size()), loc.p)) {
    led.fail("3.1.c", "|T|=" + std::to_string(T.size()) + " is not a p-power");
  } else {
    for (int x : N.members) {
      if (contains_sorted(T, x)) continue;
      std::vector<int> seed = T;
      seed.push_back(x);
      auto H = generated_partial_subgroup(V, seed).members;
      if (!subset_sorted(H, N.members)) continue;
      if (!is_p_power(static_cast<int>(H.size()), loc.p)) continue;
      if (is_subgroup_in_l(loc, H)) {
        led.fail("3.1.c", "p-subgroup above T through " + elem(V, x), {x});
        break;
      }
    }
  }

  // xf = f(x^f) with matching S-sets.
  for (int x : N.members) {
    for (int f : nlt) {
      int xf = V.pair_at(x, f);
      if (xf < 0) continue;
      std::array<int, 4> w{f, V.inv[f], x, f};
      int cx = -1;
      if (!V.in_domain(w) || !safe_conj(V, x, f, &cx) || V.pair_at(f, cx) != xf) {
        led.fail("3.2.a", "(" + elem(V, x) + "," + elem(V, f) + ")", {x, f});
        continue;
      }
      std::array<int, 2> a{x, f}, b{f, cx};
      auto s1 = loc.s_w(a);
      if (s1 != loc.s_w(b) || s1 != intersect_sorted(loc.sg[x], loc.sg[f]))
        led.fail("3.2.a", "S mismatch at (" + elem(V, x) + "," + elem(V, f) + ")", {x, f});
    }
  }

  // fy = (y^{f^-1})f with matching S-sets.
  for (int f : nlt) {
    for (int y : N.members) {
      int fy = V.pair_at(f, y);
      if (fy < 0) continue;
      std::array<int, 4> w{f, y, V.inv[f], f};
      int yf = -1;
      if (!V.in_domain(w) || !safe_conj(V, y, V.inv[f], &yf) || V.pair_at(yf, f) != fy) {
        led.fail("3.2.b", "(" + elem(V, f) + "," + elem(V, y) + ")", {f, y});
        continue;
      }
      std::array<int, 2> a{f, y}, b{yf, f};
      auto s1 = loc.s_w(a);
      if (s1 != loc.s_w(b) || s1 != intersect_sorted(loc.sg[yf], loc.sg[f]))
        led.fail("3.2.b", "S mismatch at (" + elem(V, f) + "," + elem(V, y) + ")", {f, y});
    }
  }

  // Conjugating a normal element through a word over N_L(T).
  {
    std::vector<std::vector<int>> nwords;
    for (int a : nlt) nwords.push_back({a});
    for (int a : nlt) {
      for (int b : nlt) {
        std::array<int, 2> w{a, b};
        if (V.in_domain(w)) nwords.push_back({a, b});
      }
    }
    for (const auto& w : nwords) {
      if (!led.ok("3.3.a") && !led.ok("3.3.b")) break;
      int g = -1;
      if (!V.fold(w, &g)) continue;
      std::vector<int> wi(w.rbegin(), w.rend());
      for (int& t : wi) t = V.inv[t];
      for (int x : N.members) {
        if (!led.ok("3.3.a")) break;
        std::vector<int> xw;
        xw.reserve(w.size() + 1);
        xw.push_back(x);
        xw.insert(xw.end(), w.begin(), w.end());
        if (!V.in_domain(xw)) continue;
        auto P = loc.s_w(xw);
        std::vector<int> u = wi;
        u.insert(u.end(), xw.begin(), xw.end());
        bool bad = !V.in_domain(u);
        std::vector<int> pg;
        if (!bad) {
          for (int s : P) {
            int t = -1;
            if (!safe_conj(V, s, g, &t) || loc.s_pos[static_cast<size_t>(t)] < 0) {
              bad = true;
              break;
            }
            pg.push_back(t);
          }
        }
        if (!bad) {
          std::sort(pg.begin(), pg.end());
          bad = loc.s_w(u) != pg;
        }
        if (bad) led.fail("3.3.a", "x=" + elem(V, x) + " w=" + word_witness(w), {x}, 2);
      }
      for (int y : N.members) {
        if (!led.ok("3.3.b")) break;
        std::vector<int> wy = w;
        wy.push_back(y);
        if (!V.in_domain(wy)) continue;
        auto Q = loc.s_w(wy);
        std::vector<int> v = wy;
        v.insert(v.end(), wi.begin(), wi.end());
        if (!V.in_domain(v) || loc.s_w(v) != Q)
          led.fail("3.3.b", "y=" + elem(V, y) + " w=" + word_witness(w), {y}, 2);
      }
    }
  }

  // Frattini calculus on alternating words (f1,g1,f2,g2).
  for (int f1 : nlt) {
    if (!led.ok("3.4.a") && !led.ok("3.4.b")) break;
    for (int g1 : N.members) {
      if (V.pair_at(f1, g1) < 0) continue;
      std::array<int, 4> w{f1, g1, 0, 0};
      for (int f2 : nlt) {
        w[2] = f2;
        if (!V.in_domain(std::span<const int>(w.data(), 3))) continue;
        for (int g2 : N.members) {
          w[3] = g2;
          if (!V.in_domain(w)) continue;
          auto P = loc.s_w(w);
          int pw = -1;
          V.fold(w, &pw);
          std::array<int, 3> u1{V.inv[f2], g1, f2};
          int gb1 = -1;
          if (!V.in_domain(u1) || !V.fold(u1, &gb1) || !N.contains(gb1)) {
            led.fail("3.4.a", "entry shift undefined in " + word_witness(w),
                     {f1, g1, f2, g2}, 4);
            continue;
          }
          std::array<int, 4> wp{f1, f2, gb1, g2};
          int pwp = -1;
          if (!V.in_domain(wp) || loc.s_w(wp) != P || !V.fold(wp, &pwp) || pwp != pw) {
            led.fail("3.4.a", word_witness(w), {f1, g1, f2, g2}, 4);
            continue;
          }
          // u1 lies in D via the image of P along (f1,f2), not via P itself;
          // the transport is defined because s_w(wp) == P.
          bool via_ok = true;
          std::vector<int> tp;
          tp.reserve(P.size());
          for (int s : P) {
            int t = -1;
            if (!safe_conj(V, s, f1, &t) || !safe_conj(V, t, f2, &t)) {
              via_ok = false;
              break;
            }
            tp.push_back(t);
          }
          if (via_ok) {
            std::sort(tp.begin(), tp.end());
            via_ok = subset_sorted(tp, loc.s_w(u1));
          }
          if (!via_ok) {
            led.fail("3.4.a", "via object escapes in " + word_witness(w),
                     {f1, g1, f2, g2}, 4);
            continue;
          }
          int fp = V.pair_at(f1, f2), gp = V.pair_at(gb1, g2);
          if (fp < 0 || gp < 0 || V.pair_at(fp, gp) != pw)
            led.fail("3.4.a", "grouping fails at " + word_witness(w), {f1, g1, f2, g2}, 4);
          int gt1 = -1, gt2 = -1;
          bool ok = safe_conj(V, g1, V.inv[f1], &gt1) && fp >= 0 &&
                    safe_conj(V, g2, V.inv[fp], &gt2);
          if (ok) {
            int gl = V.pair_at(gt1, gt2);
            ok = gl >= 0 && V.pair_at(gl, fp) == pw;
          }
          if (!ok) led.fail("3.4.b", word_witness(w), {f1, g1, f2, g2}, 4);
        }
      }
    }
  }

  // Normalizer towers over C_S(T), gated on every N_L(P) being of
  // characteristic p.
  {
    bool star = true;
    std::string off;
    for (const auto& P : loc.delta.members) {
      FiniteGroup M = view_section_group(V, loc.normalizer_in_l(P));
      if (!is_characteristic_p(M, loc.p)) {
        star = false;
        off = set_witness(P);
        break;
      }
    }
    if (!star) {
      rep.skip("3.5", "hypothesis fails at P=" + off);
    } else {
      auto A = s_product(loc, cst, T);
      auto nnt = intersect_sorted(N.members, nlt);
      auto na = loc.normalizer_in_l(A);
      auto nc = loc.normalizer_in_l(cst);
      if (!subset_sorted(nnt, na))
        rep.fail("3.5", "N_N(T) escapes N_L(C_S(T)T)");
      else if (!subset_sorted(na, nc))
        rep.fail("3.5", "N_L(C_S(T)T) escapes N_L(C_S(T))");
      else
        rep.pass("3.5");
    }
  }

  // The climb relation: reflexive, transitive.
  struct UpPair {
    int f;
    const std::vector<int>* P;
  };
  std::vector<UpPair> upds;
  for (int f = 0; f < n; ++f)
    for (const auto& P : loc.delta.members)
      if (subset_sorted(P, loc.sg[f])) upds.push_back({f, &P});
  rep.set_meta("up_pairs", std::to_string(upds.size()));
  const bool full_pairs = upds.size() <= 300;
  std::vector<UpPair> upl;
  if (full_pairs) {
    upl = upds;
  } else {
    for (int f = 0; f < n; ++f) upl.push_back({f, &loc.sg[f]});
  }

  for (const auto& a : upds) {
    if (!up_rel(N, a.f, *a.P, a.f, *a.P)) {
      led.fail("3.6.a", "(" + elem(V, a.f) + "," + set_witness(*a.P) + ")", {a.f});
      break;
    }
  }

  {
    const size_t m = upl.size();
    std::vector<char> R(m * m, 0);
    for (size_t i = 0; i < m; ++i)
      for (size_t j = 0; j < m; ++j)
        R[i * m + j] = up_rel(N, upl[i].f, *upl[i].P, upl[j].f, *upl[j].P) ? 1 : 0;
    for (size_t i = 0; i < m && led.ok("3.6.b"); ++i)
      for (size_t j = 0; j < m && led.ok("3.6.b"); ++j) {
        if (!R[i * m + j]) continue;
        for (size_t k = 0; k < m; ++k)
          if (R[j * m + k] && !R[i * m + k]) {
            led.fail("3.6.b", "broken at (" + elem(V, upl[i].f) + ")->(" +
                                  elem(V, upl[j].f) + ")->(" + elem(V, upl[k].f) + ")",
                     {upl[i].f, upl[j].f, upl[k].f});
            break;
          }
      }
  }

  // Climb-maximality criteria.
  for (int f : loc.normalizer_in_l(loc.S)) {
    if (!is_lam[static_cast<size_t>(f)]) {
      led.fail("3.7.a", elem(V, f), {f});
      break;
    }
  }
  for (int f : lam) {
    if (!is_lam[static_cast<size_t>(V.inv[f])]) {
      led.fail("3.7.b", elem(V, f), {f});
      break;
    }
  }
  for (int f : lam) {
    if (!led.ok("3.7.c")) break;
    for (const auto& b : upds) {
      if (!up_rel(N, f, loc.sg[f], b.f, *b.P)) continue;
      if (!is_lam[static_cast<size_t>(b.f)] || *b.P != loc.sg[b.f]) {
        led.fail("3.7.c", elem(V, f) + " climbs to non-maximal " + elem(V, b.f), {f, b.f});
        break;
      }
    }
  }

  // Unique normal shift between related pairs, and Sylow transport.
  {
    auto syl_holds = [&](const std::vector<int>& X) {
      int nt = 0;
      for (int t : T)
        if (subset_sorted(X, loc.sg[t]) && s_normalizes(loc, X, t)) ++nt;
      int nn = 0;
      for (int u : N.members) {
        if (!subset_sorted(X, loc.sg[u])) continue;
        if (loc.conj_subgroup(X, u) == X) ++nn;
      }
      return nt == p_part(nn, loc.p);
    };
    for (const auto& a : upl) {
      if (!led.ok("3.8.a") && !led.ok("3.8.b")) break;
      for (const auto& b : upl) {
        if (!subset_sorted(T, *b.P)) continue;
        if (!up_rel(N, a.f, *a.P, b.f, *b.P)) continue;
        int y = -1, cnt = 0;
        for (int x : N.members)
          if (V.pair_at(x, b.f) == a.f) {
            y = x;
            ++cnt;
          }
        if (cnt != 1) {
          led.fail("3.8.a", std::to_string(cnt) + " shifts from " + elem(V, a.f) +
                                " to " + elem(V, b.f),
                   {a.f, b.f});
          continue;
        }
        std::array<int, 2> yh{y, b.f};
        if (!subset_sorted(*a.P, loc.sg[y]) ||
            !subset_sorted(loc.conj_subgroup(*a.P, y), *b.P) ||
            !subset_sorted(*a.P, loc.s_w(yh))) {
          led.fail("3.8.a", "shift " + elem(V, y) + " misplaces Q", {a.f, b.f, y});
          continue;
        }
        if (led.ok("3.8.b") && syl_holds(loc.conj_subgroup(*a.P, a.f)) &&
            !syl_holds(loc.conj_subgroup(*a.P, y)))
          led.fail("3.8.b", "transport from " + elem(V, a.f) + " via " + elem(V, y),
                   {a.f, b.f, y});
      }
    }
  }

  // Climb-maximal elements see all of T.
  for (int g : lam) {
    if (!subset_sorted(T, loc.sg[g])) {
      led.fail("3.9", elem(V, g), {g});
      break;
    }
  }

  // Under a splitting of S over T, all of N_L(T) is climb-maximal.
  {
    auto nnt = intersect_sorted(N.members, nlt);
    bool hyp = s_product(loc, cst, T) == loc.S &&
               subset_sorted(nnt, loc.normalizer_in_l(loc.S));
    if (!hyp) {
      rep.skip("3.10", "hypothesis not met: needs S=C_S(T)T and N_N(T)<=N_L(S)");
    } else {
      bool ok = true;
      for (int f : nlt)
        if (!is_lam[static_cast<size_t>(f)]) {
          rep.fail("3.10", elem(V, f) + " not climb-maximal", {f});
          ok = false;
          break;
        }
      if (ok) rep.pass("3.10");
    }
  }

  // Frattini: every element factors through the climb-maximal set, both ways.
  for (int f = 0; f < n; ++f) {
    bool left = is_lam[static_cast<size_t>(f)];
    bool right = left;
    for (int g : lam) {
      if (left && right) break;
      if (!left) {
        int x = V.pair_at(f, V.inv[g]);
        if (x >= 0 && N.contains(x) && V.pair_at(x, g) == f) left = true;
      }
      if (!right) {
        int x = V.pair_at(V.inv[g], f);
        if (x >= 0 && N.contains(x) && V.pair_at(g, x) == f) right = true;
      }
    }
    if (!left) led.fail("3.11", "no normal*maximal factorization of " + elem(V, f), {f});
    if (!right) led.fail("3.11", "no maximal*normal factorization of " + elem(V, f), {f});
    if (!led.ok("3.11")) break;
  }

  // Splitting: S_(x,f) = S_xf for climb-maximal f.
  for (int x : N.members) {
    if (!led.ok("3.12")) break;
    for (int f : lam) {
      int xf = V.pair_at(x, f);
      if (xf < 0) continue;
      std::array<int, 2> a{x, f};
      auto s1 = loc.s_w(a);
      int cx = -1;
      if (s1 != loc.sg[xf] || !safe_conj(V, x, f, &cx)) {
        led.fail("3.12", "(" + elem(V, x) + "," + elem(V, f) + ")", {x, f});
        continue;
      }
      std::array<int, 2> b{f, cx};
      if (loc.s_w(b) != s1)
        led.fail("3.12", "S mismatch at (" + elem(V, x) + "," + elem(V, f) + ")", {x, f});
    }
  }

  // Normal-in-N subgroups invariant under N_L(T) are normal in L.
  {
    auto closure_in_n = [&](std::vector<int> X) {
      X.push_back(V.identity);
      X = sorted_unique(std::move(X));
      for (;;) {
        X = generated_partial_subgroup(V, X).members;
        std::vector<int> add;
        for (int x : X)
          for (int g : N.members) {
            int y = -1;
            if (safe_conj(V, x, g, &y) && !contains_sorted(X, y)) add.push_back(y);
          }
        if (add.empty()) return X;
        X.insert(X.end(), add.begin(), add.end());
        X = sorted_unique(std::move(X));
      }
    };
    std::vector<std::vector<int>> ks;
    auto push = [&](const std::vector<int>& k) {
      if (std::find(ks.begin(), ks.end(), k) == ks.end()) {
        ks.push_back(k);
        return true;
      }
      return false;
    };
    for (int x : N.members) push(closure_in_n({x}));
    for (bool grew = true; grew;) {
      grew = false;
      auto snap = ks;
      for (size_t i = 0; i < snap.size(); ++i)
        for (size_t j = i + 1; j < snap.size(); ++j) {
          auto seed = snap[i];
          seed.insert(seed.end(), snap[j].begin(), snap[j].end());
          if (push(closure_in_n(seed))) grew = true;
        }
    }
    for (const auto& K : ks) {
      bool invariant = true;
      for (int x : K) {
        for (int h : nlt) {
          int y = -1;
          if (safe_conj(V, x, h, &y) && !contains_sorted(K, y)) {
            invariant = false;
            break;
          }
        }
        if (!invariant) break;
      }
      if (invariant && !is_partial_normal(loc, K))
        led.fail("3.13", "invariant K=" + set_witness(K) + " not normal in L");
    }
  }

  // Cosets: two-sided for N_L(T), sandwich-stable for maximal elements.
  for (int f : nlt) {
    std::vector<int> fn;
    for (int x : N.members) {
      int t = V.pair_at(f, x);
      if (t >= 0) fn.push_back(t);
    }
    if (sorted_unique(std::move(fn)) != cosN[static_cast<size_t>(f)]) {
      led.fail("3.14.a", "Nf != fN at f=" + elem(V, f), {f});
      break;
    }
  }
  for (int f : lam) {
    if (!led.ok("3.14.a")) break;
    std::vector<int> fn, nfn;
    for (int x : N.members) {
      int t = V.pair_at(f, x);
      if (t >= 0) fn.push_back(t);
      for (int y : N.members) {
        std::array<int, 3> w{x, f, y};
        int u = -1;
        if (V.in_domain(w) && V.fold(w, &u)) nfn.push_back(u);
      }
    }
    if (sorted_unique(std::move(fn)) != cosN[static_cast<size_t>(f)] ||
        sorted_unique(std::move(nfn)) != cosN[static_cast<size_t>(f)])
      led.fail("3.14.a", "NfN spills past Nf at f=" + elem(V, f), {f});
  }

  // The climb/coset/membership equivalence needs a maximal right factor:
  // for f below its own coset representative, g in Nf does not pull the
  // whole coset Ng under Nf.
  for (int g = 0; g < n && led.ok("3.14.b"); ++g) {
    for (int f : lam) {
      bool a = up_rel(N, g, loc.sg[g], f, loc.sg[f]);
      bool b = subset_sorted(cosN[static_cast<size_t>(g)], cosN[static_cast<size_t>(f)]);
      bool c = contains_sorted(cosN[static_cast<size_t>(f)], g);
      if (a != b || b != c) {
        led.fail("3.14.b", "(" + elem(V, g) + "," + elem(V, f) + ") climb=" +
                               std::to_string(a) + " coset=" + std::to_string(b) +
                               " member=" + std::to_string(c),
                 {g, f});
        break;
      }
    }
  }

  for (int g = 0; g < n; ++g) {
    bool maxi = true;
    for (int f = 0; f < n && maxi; ++f)
      if (cosN[static_cast<size_t>(f)].size() > cosN[static_cast<size_t>(g)].size() &&
          subset_sorted(cosN[static_cast<size_t>(g)], cosN[static_cast<size_t>(f)]))
        maxi = false;
    if (maxi != static_cast<bool>(is_lam[static_cast<size_t>(g)])) {
      led.fail("3.14.c", elem(V, g), {g});
      break;
    }
  }

  std::vector<int> blk(static_cast<size_t>(n), -1);
  std::vector<std::vector<int>> blocks;
  for (int f : lam) {
    if (blk[static_cast<size_t>(f)] >= 0) {
      if (cosN[static_cast<size_t>(f)] != blocks[static_cast<size_t>(blk[static_cast<size_t>(f)])])
        led.fail("3.14.d", "coset disagrees at " + elem(V, f), {f});
      continue;
    }
    bool clash = false;
    for (int g : cosN[static_cast<size_t>(f)])
      if (blk[static_cast<size_t>(g)] >= 0) {
        led.fail("3.14.d", "overlap at " + elem(V, g), {g});
        clash = true;
        break;
      }
    if (clash) continue;
    int b = static_cast<int>(blocks.size());
    for (int g : cosN[static_cast<size_t>(f)]) blk[static_cast<size_t>(g)] = b;
    blocks.push_back(cosN[static_cast<size_t>(f)]);
  }
  for (int g = 0; g < n; ++g)
    if (blk[static_cast<size_t>(g)] < 0) {
      led.fail("3.14.d", "uncovered " + elem(V, g), {g});
      break;
    }
  rep.set_meta("blocks", std::to_string(blocks.size()));

  const bool blocks_ok = led.ok("3.14.d");
  if (blocks_ok) {
    std::vector<std::vector<int>> blam(blocks.size());
    for (int f : lam) blam[static_cast<size_t>(blk[static_cast<size_t>(f)])].push_back(f);

    for (int g = 0; g < n && led.ok("3.14.e"); ++g) {
      auto tsu = s_product(loc, T, loc.sg[g]);
      for (int f : blam[static_cast<size_t>(blk[static_cast<size_t>(g)])]) {
        if (!subset_sorted(tsu, loc.sg[f]) ||
            !subset_sorted(cosN[static_cast<size_t>(g)], cosN[static_cast<size_t>(f)])) {
          led.fail("3.14.e", "u=(" + elem(V, g) + ") v=(" + elem(V, f) + ")", {g, f}, 2);
          break;
        }
      }
    }
    for (int a = 0; a < n && led.ok("3.14.e"); ++a) {
      for (int b = 0; b < n; ++b) {
        int pu = V.pair_at(a, b);
        if (pu < 0) continue;
        std::array<int, 2> u{a, b};
        auto tsu = s_product(loc, T, loc.s_w(u));
        bool broke = false;
        for (int f1 : blam[static_cast<size_t>(blk[static_cast<size_t>(a)])]) {
          for (int f2 : blam[static_cast<size_t>(blk[static_cast<size_t>(b)])]) {
            std::array<int, 2> v{f1, f2};
            int pv = V.pair_at(f1, f2);
            if (!V.in_domain(v) || pv < 0 || !subset_sorted(tsu, loc.s_w(v)) ||
                !subset_sorted(cosN[static_cast<size_t>(pu)], cosN[static_cast<size_t>(pv)])) {
              led.fail("3.14.e", "u=" + word_witness(u) + " v=" + word_witness(v),
                       {a, b, f1, f2}, 2);
              broke = true;
              break;
            }
          }
          if (broke) break;
        }
        if (broke) break;
      }
    }

    // Partial subgroups over N decompose into whole blocks.
    std::vector<std::vector<int>> hs;
    for (int g = 0; g < n && led.ok("3.15"); ++g) {
      std::vector<int> seed = N.members;
      seed.push_back(g);
      auto H = generated_partial_subgroup(V, seed).members;
      if (std::find(hs.begin(), hs.end(), H) != hs.end()) continue;
      hs.push_back(H);
      for (int h : H)
        if (!subset_sorted(blocks[static_cast<size_t>(blk[static_cast<size_t>(h)])], H)) {
          led.fail("3.15", "subgroup over N cuts a block at " + elem(V, h), {g, h});
          break;
        }
    }
  }

  // NS carries the same objects and Sylow set.
  {
    std::vector<int> ns;
    for (int s : loc.S) {
      const auto& c = cosN[static_cast<size_t>(s)];
      ns.insert(ns.end(), c.begin(), c.end());
    }
    ns = sorted_unique(std::move(ns));
    if (!is_partial_subgroup_set(V, ns)) {
      led.fail("4.1", "NS is not a partial subgroup");
    } else {
      try {
        Locality sub = sub_locality(loc, ns, loc.p, loc.S, loc.delta.members);
        Report r1 = verify_objectivity(sub, std::min(max_len, 2));
        Report r2 = verify_locality(sub);
        if (r1.failed() || r2.failed())
          led.fail("4.1", "NS locality fails " + first_fail_id(r1) + first_fail_id(r2));
      } catch (const std::exception& e) {
        led.fail("4.1", std::string("NS construction: ") + e.what());
      }
    }
    rep.set_meta("ns_size", std::to_string(ns.size()));
  }

  // N_L(T) is itself a locality on the same frame.
  try {
    Locality sub = normalizer_sublocality(loc, T);
    if (sub.delta.members != loc.delta.members) {
      led.fail("4.11.a", "object family changes under N_L(T)");
    } else {
      Report r1 = verify_objectivity(sub, std::min(max_len, 2));
      Report r2 = verify_locality(sub);
      if (r1.failed() || r2.failed())
        led.fail("4.11.a", "N_L(T) locality fails " + first_fail_id(r1) + first_fail_id(r2));
    }
  } catch (const std::exception& e) {
    led.fail("4.11.a", std::string("N_L(T) construction: ") + e.what());
  }

  const std::pair<const char*, int> plain[] = {
      {"3.1.a", -1},  {"3.1.b", -1},  {"3.1.c", -1}, {"3.2.a", -1},  {"3.2.b", -1},
      {"3.3.a", 2},   {"3.3.b", 2},   {"3.4.a", 4},  {"3.4.b", 4},   {"3.6.a", -1},
      {"3.7.a", -1},  {"3.7.b", -1},  {"3.7.c", -1}, {"3.9", -1},    {"3.11", -1},
      {"3.12", -1},   {"3.13", -1},   {"3.14.a", -1}, {"3.14.b", -1}, {"3.14.c", -1},
      {"3.14.d", -1}, {"3.14.e", 2},  {"3.15", -1},  {"4.1", -1},    {"4.11.a", -1}};
  for (const auto& [id, b] : plain)
    if (led.ok(id)) rep.pass(id, b);
  const char* mode = full_pairs ? "" : "pairs restricted to (f,S_f)";
  if (led.ok("3.6.b")) rep.add(Check{"3.6.b", Status::Pass, "", {}, -1, mode});
  if (led.ok("3.8.a")) rep.add(Check{"3.8.a", Status::Pass, "", {}, -1, mode});
  if (led.ok("3.8.b")) rep.add(Check{"3.8.b", Status::Pass, "", {}, -1, mode});
  rep.sort_lines();
  return rep;
}

Report verify_quotient(const Quotient& q, const PartialNormal& N, int max_len) {
  const Locality& loc = *q.loc;
  const Locality& bar = *q.bar;
  const PartialGroupView& V = loc.pg;
  const PartialGroupView& Vb = bar.pg;
  const int n = loc.n();
  const int m = bar.n();
  const std::vector<int>& blk = q.cosets.block_of;
  Report rep;
  rep.set_meta("blocks", std::to_string(m));

  rep.merge(verify_projection(q.rho(), max_len));
  Ledger led{&rep, {}};

  if (projection_kernel(q.rho()) != N.members)
    led.fail("3.16.c", "kernel of rho differs from N");

  // Folding any domain word lands in the same block as folding the word
  // of block representatives.
  {
    std::vector<int> w(static_cast<size_t>(max_len));
    std::vector<int> wr(static_cast<size_t>(max_len));
    for (int len = 1; len <= max_len && led.ok("3.16.b"); ++len) {
      std::vector<int> idx(static_cast<size_t>(len), 0);
      for (;;) {
        for (int i = 0; i < len; ++i) w[static_cast<size_t>(i)] = idx[static_cast<size_t>(i)];
        std::span<const int> ws(w.data(), static_cast<size_t>(len));
        if (V.in_domain(ws)) {
          int pu = -1;
          V.fold(ws, &pu);
          for (int i = 0; i < len; ++i)
            wr[static_cast<size_t>(i)] = q.rep(blk[static_cast<size_t>(w[static_cast<size_t>(i)])]);
          std::span<const int> wrs(wr.data(), static_cast<size_t>(len));
          int pv = -1;
          if (!V.in_domain(wrs) || !V.fold(wrs, &pv) ||
              blk[static_cast<size_t>(pu)] != blk[static_cast<size_t>(pv)]) {
            led.fail("3.16.b", word_witness(ws), idx, len);
            break;
          }
        }
        int k = len - 1;
        while (k >= 0 && ++idx[static_cast<size_t>(k)] == n) idx[static_cast<size_t>(k--)] = 0;
        if (k < 0) break;
      }
    }
  }

  // Fibers of rho are exactly the maximal cosets.
  {
    std::vector<std::vector<int>> fib(static_cast<size_t>(m));
    for (int g = 0; g < n; ++g) fib[static_cast<size_t>(blk[static_cast<size_t>(g)])].push_back(g);
    for (int b = 0; b < m; ++b) {
      if (fib[static_cast<size_t>(b)] != q.cosets.blocks[static_cast<size_t>(b)] ||
          coset_of(N, q.rep(b)) != q.cosets.blocks[static_cast<size_t>(b)]) {
        led.fail("4.3.a", "block " + std::to_string(b) + " rep " + elem(V, q.rep(b)), {b});
        break;
      }
    }
  }

  // Words of climb-maximal elements are in D exactly when their images
  // are in the quotient's domain.
  {
    const std::vector<int> lam = up_maximal_set(N);
    const int ln = static_cast<int>(lam.size());
    std::vector<int> w(static_cast<size_t>(max_len));
    std::vector<int> wb(static_cast<size_t>(max_len));
    for (int len = 1; len <= max_len && led.ok("4.3.b"); ++len) {
      std::vector<int> idx(static_cast<size_t>(len), 0);
      for (;;) {
        for (int i = 0; i < len; ++i) {
          w[static_cast<size_t>(i)] = lam[static_cast<size_t>(idx[static_cast<size_t>(i)])];
          wb[static_cast<size_t>(i)] = blk[static_cast<size_t>(w[static_cast<size_t>(i)])];
        }
        std::span<const int> ws(w.data(), static_cast<size_t>(len));
        std::span<const int> wbs(wb.data(), static_cast<size_t>(len));
        if (V.in_domain(ws) != Vb.in_domain(wbs)) {
          led.fail("4.3.b", word_witness(ws), idx, len);
          break;
        }
        int k = len - 1;
        while (k >= 0 && ++idx[static_cast<size_t>(k)] == ln) idx[static_cast<size_t>(k--)] = 0;
        if (k < 0) break;
      }
    }
    if (led.ok("4.3.b"))
      rep.add(Check{"4.3.b", Status::Pass, "", {}, max_len, ""});

    // S_g maps onto the image's S-set for climb-maximal g.
    for (int g : lam) {
      if (map_set(loc.sg[static_cast<size_t>(g)], blk) !=
          bar.sg[static_cast<size_t>(blk[static_cast<size_t>(g)])]) {
        led.fail("4.3.d", elem(V, g), {g});
        break;
      }
    }
  }

  // rho surjects transporter sets between objects over T.
  {
    std::vector<int> all(static_cast<size_t>(n));
    for (int g = 0; g < n; ++g) all[static_cast<size_t>(g)] = g;
    std::vector<int> allb(static_cast<size_t>(m));
    for (int b = 0; b < m; ++b) allb[static_cast<size_t>(b)] = b;
    for (const auto& P : loc.delta.members) {
      if (!led.ok("4.3.c")) break;
      if (!subset_sorted(N.T, P)) continue;
      for (const auto& Q : loc.delta.members) {
        if (!subset_sorted(N.T, Q)) continue;
        auto up = map_set(loc.transporter_in_l(P, Q, all), blk);
        auto down = bar.transporter_in_l(map_set(P, blk), map_set(Q, blk), allb);
        if (up != down) {
          led.fail("4.3.c", "P=" + set_witness(P) + " Q=" + set_witness(Q));
          break;
        }
      }
    }
  }

  // The quotient satisfies the locality axioms itself.
  {
    Report r1 = verify_objectivity(bar, std::min(max_len, 3));
    Report r2 = verify_locality(bar);
    if (r1.failed() || r2.failed())
      led.fail("4.5", "quotient fails " + first_fail_id(r1) + first_fail_id(r2));
  }

  // rho restricted to N_L(T) is still a projection onto the quotient.
  try {
    Locality sub = normalizer_sublocality(loc, N.T);
    std::vector<int> sub_map(static_cast<size_t>(sub.n()));
    const std::vector<int> members = loc.normalizer_in_l(N.T);
    for (size_t i = 0; i < members.size(); ++i)
      sub_map[i] = blk[static_cast<size_t>(members[i])];
    Report rl = verify_projection(Projection{&sub, &bar, sub_map}, max_len);
    if (rl.failed()) led.fail("4.11.b", "restriction fails " + first_fail_id(rl));
  } catch (const std::exception& e) {
    led.fail("4.11.b", std::string("N_L(T) construction: ") + e.what());
  }

  const std::pair<const char*, int> plain[] = {{"3.16.b", max_len}, {"3.16.c", -1},
                                               {"4.3.a", -1},       {"4.3.c", -1},
                                               {"4.3.d", -1},       {"4.5", -1},
                                               {"4.11.b", -1}};
  for (const auto& [id, b] : plain)
    if (led.ok(id)) rep.pass(id, b);
  rep.sort_lines();
  return rep;
}

Report verify_correspondence(const Quotient& q, const PartialNormal& N) {
  const Locality& loc = *q.loc;
  const Locality& bar = *q.bar;
  const PartialGroupView& V = loc.pg;
  const PartialGroupView& Vb = bar.pg;
  const int n = loc.n();
  const int m = bar.n();
  const std::vector<int>& blk = q.cosets.block_of;
  Report rep;
  Ledger led{&rep, {}};

  // Sampled family upstairs: closures of N with one or two extra
  // generators. Pair seeds are skipped on large instances.
  std::vector<std::vector<int>> fam;
  auto pushf = [&fam](const std::vector<int>& h) {
    if (std::find(fam.begin(), fam.end(), h) == fam.end()) fam.push_back(h);
  };
  pushf(N.members);
  for (int g = 0; g < n; ++g) {
    std::vector<int> seed = N.members;
    seed.push_back(g);
    pushf(generated_partial_subgroup(V, seed).members);
  }
  if (n <= 100) {
    for (int g = 0; g < n; ++g)
      for (int h = g + 1; h < n; ++h) {
        std::vector<int> seed = N.members;
        seed.push_back(g);
        seed.push_back(h);
        pushf(generated_partial_subgroup(V, seed).members);
      }
  }
  rep.set_meta("subgroups_over_n", std::to_string(fam.size()));

  // Sampled family downstairs, built the same way from the identity.
  std::vector<std::vector<int>> famb;
  auto pushb = [&famb](const std::vector<int>& h) {
    if (std::find(famb.begin(), famb.end(), h) == famb.end()) famb.push_back(h);
  };
  pushb({Vb.identity});
  for (int b = 0; b < m; ++b) pushb(generated_partial_subgroup(Vb, {Vb.identity, b}).members);
  if (m <= 100) {
    for (int b = 0; b < m; ++b)
      for (int c = b + 1; c < m; ++c)
        pushb(generated_partial_subgroup(Vb, {Vb.identity, b, c}).members);
  }

  auto preimage = [&](const std::vector<int>& hb) {
    std::vector<int> out;
    for (int g = 0; g < n; ++g)
      if (contains_sorted(hb, blk[static_cast<size_t>(g)])) out.push_back(g);
    return out;
  };

  for (const auto& H : fam) {
    if (!led.ok("4.7")) break;
    auto hb = map_set(H, blk);
    if (!is_partial_subgroup_set(Vb, hb)) {
      led.fail("4.7", "image of |H|=" + std::to_string(H.size()) + " not a partial subgroup");
      break;
    }
    if (preimage(hb) != H) {
      led.fail("4.7", "preimage of image differs, |H|=" + std::to_string(H.size()));
      break;
    }
  }
  for (const auto& B : famb) {
    if (!led.ok("4.7")) break;
    auto pre = preimage(B);
    if (!is_partial_subgroup_set(V, pre) || map_set(pre, blk) != B)
      led.fail("4.7", "preimage of |B|=" + std::to_string(B.size()) + " misbehaves");
  }

  for (const auto& H : fam) {
    if (!led.ok("4.7.n")) break;
    if (is_partial_normal(loc, H) != is_partial_normal(bar, map_set(H, blk)))
      led.fail("4.7.n", "normality transfer fails, |H|=" + std::to_string(H.size()));
  }

  // Images of intersections against arbitrary sample subsets.
  {
    std::vector<std::vector<int>> xs;
    xs.push_back(loc.S);
    xs.push_back(loc.normalizer_in_l(loc.S));
    std::vector<int> thirds, half;
    for (int g = 0; g < n; ++g) {
      if (g % 3 == 0) thirds.push_back(g);
      if (g < n / 2) half.push_back(g);
    }
    xs.push_back(std::move(thirds));
    xs.push_back(std::move(half));
    for (const auto& X : xs) {
      if (!led.ok("4.9")) break;
      for (const auto& H : fam) {
        auto lhs = map_set(intersect_sorted(X, H), blk);
        auto rhs = intersect_sorted(map_set(X, blk), map_set(H, blk));
        if (lhs != rhs) {
          led.fail("4.9", "|X|=" + std::to_string(X.size()) + " |H|=" + std::to_string(H.size()));
          break;
        }
      }
    }
  }

  // Sylow position downstairs: (S cap M) rho is a maximal p-subgroup of
  // M rho for normal M over N. Block decomposition of every sampled H.
  for (const auto& H : fam) {
    for (int h : H) {
      if (!subset_sorted(q.cosets.blocks[static_cast<size_t>(blk[static_cast<size_t>(h)])], H)) {
        led.fail("3.15", "sampled subgroup cuts a block at " + elem(V, h), {h});
        break;
      }
    }
    if (!led.ok("3.15")) break;
  }
  for (const auto& H : fam) {
    if (!led.ok("4.10")) break;
    if (!is_partial_normal(loc, H)) continue;
    auto uv = map_set(intersect_sorted(loc.S, H), blk);
    auto mb = map_set(H, blk);
    if (!is_p_power(static_cast<int>(uv.size()), loc.p)) {
      led.fail("4.10", "(S cap M)rho has non-p-power size " + std::to_string(uv.size()));
      break;
    }
    for (int x : mb) {
      if (contains_sorted(uv, x)) continue;
      std::vector<int> seed = uv;
      seed.push_back(x);
      auto K = generated_partial_subgroup(Vb, seed).members;
      if (subset_sorted(K, mb) && is_p_power(static_cast<int>(K.size()), bar.p) &&
          is_subgroup_in_l(bar, K)) {
        led.fail("4.10", "p-subgroup of Mrho above (S cap M)rho through block " +
                             std::to_string(x),
                 {x});
        break;
      }
    }
  }

  const char* ids[] = {"3.15", "4.7", "4.7.n", "4.9", "4.10"};
  for (const char* id : ids)
    if (led.ok(id)) rep.pass(id);
  rep.sort_lines();
  return rep;
}

Report verify_theta(const Locality& loc, int max_len) {
  const PartialGroupView& V = loc.pg;
  Report rep;
  std::optional<ThetaResult> th;
  std::string err;
  try {
    th = theta_quotient(loc);
  } catch (const std::exception& e) {
    err = e.what();
  }
  if (!th) {
    rep.skip("4.12.h", "not evaluated");
    rep.fail("4.12.n", "construction: " + err);
    rep.skip("4.12.a", "Theta unavailable");
    rep.skip("4.12.b", "Theta unavailable");
    rep.skip("4.12.c", "Theta unavailable");
    rep.sort_lines();
    return rep;
  }
  if (!th->hypothesis_met) {
    rep.skip("4.12.h", "hypothesis fails at P=" + th->offender);
    rep.skip("4.12.n", "gated by 4.12.h");
    rep.skip("4.12.a", "gated by 4.12.h");
    rep.skip("4.12.b", "gated by 4.12.h");
    rep.skip("4.12.c", "gated by 4.12.h");
    rep.sort_lines();
    return rep;
  }
  rep.pass("4.12.h");
  rep.set_meta("theta_size", std::to_string(th->theta.size()));
  const Quotient& q = *th->quot;
  const Locality& bar = *q.bar;
  const std::vector<int>& blk = q.cosets.block_of;

  {
    auto sint = intersect_sorted(loc.S, th->theta);
    std::vector<char> seen(static_cast<size_t>(bar.n()), 0);
    bool inj = true;
    for (int s : loc.S) {
      int b = blk[static_cast<size_t>(s)];
      if (seen[static_cast<size_t>(b)]) {
        inj = false;
        break;
      }
      seen[static_cast<size_t>(b)] = 1;
    }
    if (!is_partial_normal(loc, th->theta))
      rep.fail("4.12.n", "Theta is not normal");
    else if (sint != std::vector<int>{V.identity})
      rep.fail("4.12.n", "S cap Theta = " + set_witness(sint));
    else if (!inj)
      rep.fail("4.12.n", "rho is not injective on S");
    else
      rep.pass("4.12.n");
  }

  {
    Report r1 = verify_objectivity(bar, std::min(max_len, 3));
    Report r2 = verify_locality(bar);
    if (r1.failed() || r2.failed())
      rep.fail("4.12.a", "quotient fails " + first_fail_id(r1) + first_fail_id(r2));
    else
      rep.pass("4.12.a", std::min(max_len, 3));
  }

  {
    std::vector<int> bar_to_s(static_cast<size_t>(bar.n()), -1);
    for (int s : loc.S) bar_to_s[static_cast<size_t>(blk[static_cast<size_t>(s)])] = s;
    FusionMapSet up = fusion_maps(loc);
    FusionMapSet down = fusion_maps(bar);
    bool ok = true;
    FusionMapSet tr;
    for (const auto& mp : down.maps) {
      std::vector<std::pair<int, int>> g;
      for (const auto& [a, b] : mp) {
        int ta = bar_to_s[static_cast<size_t>(a)], tb = bar_to_s[static_cast<size_t>(b)];
        if (ta < 0 || tb < 0) {
          ok = false;
          break;
        }
        g.emplace_back(ta, tb);
      }
      if (!ok) break;
      std::sort(g.begin(), g.end());
      tr.maps.push_back(std::move(g));
    }
    if (ok) {
      for (auto& mp : up.maps) std::sort(mp.begin(), mp.end());
      std::sort(up.maps.begin(), up.maps.end());
      std::sort(tr.maps.begin(), tr.maps.end());
      ok = up.maps == tr.maps;
    }
    if (ok)
      rep.pass("4.12.b");
    else
      rep.fail("4.12.b", "fusion systems differ (" + std::to_string(up.maps.size()) +
                             " vs " + std::to_string(down.maps.size()) + " maps)");
  }

  {
    bool ok = true;
    for (size_t i = 0; i < loc.delta.members.size(); ++i) {
      const auto& P = loc.delta.members[i];
      auto nm = loc.normalizer_in_l(P);
      auto pb = map_set(P, blk);
      auto nmb = bar.normalizer_in_l(pb);
      std::vector<int> ker;
      for (int x : nm)
        if (blk[static_cast<size_t>(x)] == bar.pg.identity) ker.push_back(x);
      if (map_set(nm, blk) != nmb || ker != th->theta_of[i] ||
          !is_characteristic_p(view_section_group(bar.pg, nmb), loc.p)) {
        rep.fail("4.12.c", "P=" + set_witness(P));
        ok = false;
        break;
      }
    }
    if (ok) rep.pass("4.12.c");
  }
  rep.sort_lines();
  return rep;
}

Report verify_first_isomorphism(const FirstIso& fi, const std::vector<int>& beta_map,
                                int max_len) {
  Report rep;
  const Quotient& q = fi.quot;
  const Locality& dom = *q.loc;
  const Locality& cod = *fi.gamma.cod;

  bool ok = true;
  for (int g = 0; g < dom.n(); ++g)
    if (fi.gamma.map[static_cast<size_t>(q.block_of(g))] != beta_map[static_cast<size_t>(g)]) {
      rep.fail("4.6.a", "factorization breaks at " + elem(dom.pg, g), {g});
      ok = false;
      break;
    }
  if (ok) rep.pass("4.6.a");

  Report rg = verify_projection(fi.gamma, max_len);
  if (rg.failed())
    rep.fail("4.6.b", "gamma fails " + first_fail_id(rg));
  else
    rep.pass("4.6.b", max_len);

  bool inj = true;
  {
    std::vector<char> seen(static_cast<size_t>(cod.n()), 0);
    for (int b : fi.gamma.map) {
      if (seen[static_cast<size_t>(b)]) {
        inj = false;
        break;
      }
      seen[static_cast<size_t>(b)] = 1;
    }
  }
  if (inj != fi.isomorphism)
    rep.fail("4.6.c", inj ? "gamma injective with N below the kernel"
                          : "gamma collapses blocks with N equal to the kernel");
  else
    rep.pass("4.6.c");
  rep.sort_lines();
  return rep;
}

}  // namespace ploc
