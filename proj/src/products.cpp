#include "ploc/products.hpp"

#include <algorithm>
#include <array>

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

std::string elem(const PartialGroupView& V, int g) {
  return std::to_string(g) + ":" + V.label(g);
}

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

/// First member failing to normalize X, or -1.
int normalization_offender(const Locality& loc, const std::vector<int>& members,
                           const std::vector<int>& X) {
  for (int x : members) {
    if (!subset_sorted(X, loc.sg[x])) return x;
    if (loc.conj_subgroup(X, x) != X) return x;
  }
  return -1;
}

std::vector<int> pair_product_set(const PartialGroupView& V, const std::vector<int>& A,
                                  const std::vector<int>& B) {
  std::vector<int> out;
  for (int x : A)
    for (int y : B) {
      int t = V.pair_at(x, y);
      if (t >= 0) out.push_back(t);
    }
  return sorted_unique(std::move(out));
}

}  // namespace

ProductResult product_normal(const Locality& loc, const PartialNormal& M,
                             const PartialNormal& N) {
  ProductResult res;
  const PartialGroupView& V = loc.pg;
  int m_off = normalization_offender(loc, M.members, N.T);
  if (m_off >= 0) {
    res.refusal = "M does not normalize S cap N at " + elem(V, m_off);
    return res;
  }
  int n_off = normalization_offender(loc, N.members, M.T);
  if (n_off >= 0) {
    res.refusal = "N does not normalize S cap M at " + elem(V, n_off);
    return res;
  }
  res.applicable = true;
  res.members = pair_product_set(V, M.members, N.members);
  if (is_partial_normal(loc, res.members))
    res.normal = make_partial_normal(loc, res.members);
  return res;
}

std::pair<int, int> split_product_element(const Locality& loc, const PartialNormal& M,
                                          const PartialNormal& N, int g) {
  const PartialGroupView& V = loc.pg;
  for (int x : M.members) {
    for (int y : N.members) {
      if (V.pair_at(x, y) != g) continue;
      std::array<int, 2> w{x, y};
      if (loc.s_w(w) == loc.sg[static_cast<size_t>(g)]) return {x, y};
    }
  }
  return {-1, -1};
}

DisjointnessResult disjointness_criterion(const Locality& loc, const PartialNormal& M,
                                          const PartialNormal& N) {
  DisjointnessResult r;
  auto inter = intersect_sorted(M.members, N.members);
  if (!subset_sorted(inter, loc.S)) {
    r.note = "M cap N of size " + std::to_string(inter.size()) + " escapes S";
    return r;
  }
  r.applicable = true;
  r.note = "M cap N inside S, size " + std::to_string(inter.size());
  r.product = product_normal(loc, M, N);
  return r;
}

GeneratedResult generated_with_normal(const Locality& loc, const PartialNormal& N,
                                      const std::vector<int>& K) {
  GeneratedResult res;
  const PartialGroupView& V = loc.pg;
  for (const auto& P : loc.delta.members) {
    FiniteGroup sec = view_section_group(V, loc.normalizer_in_l(P));
    if (!is_characteristic_p(sec, loc.p)) {
      res.refusal = "normalizer of P=" + set_witness(P) + " not of characteristic p";
      return res;
    }
  }
  auto cent = centralizer_in_l(loc, N.T);
  if (!subset_sorted(K, cent)) {
    res.refusal = "K escapes C_L(T)";
    return res;
  }
  const std::vector<int> nlt = loc.normalizer_in_l(N.T);
  if (!subset_sorted(K, nlt) || !is_partial_subgroup_set(V, K)) {
    res.refusal = "K is not a partial subgroup of N_L(T)";
    return res;
  }
  for (int x : K) {
    for (int h : nlt) {
      int y = -1;
      if (safe_conj(V, x, h, &y) && !contains_sorted(K, y)) {
        res.refusal = "K not normal in N_L(T) at " + elem(V, x) + " ^ " + elem(V, h);
        return res;
      }
    }
  }
  res.hypothesis_met = true;
  std::vector<int> seed = K;
  seed.insert(seed.end(), N.members.begin(), N.members.end());
  res.members = generated_partial_subgroup(V, seed).members;
  if (is_partial_normal(loc, res.members))
    res.normal = make_partial_normal(loc, res.members);
  return res;
}

Report verify_products(const Locality& loc, const PartialNormal& M,
                       const PartialNormal& N, int max_len) {
  (void)max_len;
  const PartialGroupView& V = loc.pg;
  Report rep;
  rep.set_meta("m_size", std::to_string(M.members.size()));
  rep.set_meta("n_size", std::to_string(N.members.size()));

  ProductResult pr = product_normal(loc, M, N);
  auto check_product = [&](const std::string& id) {
    auto nm = pair_product_set(V, N.members, M.members);
    if (pr.members != nm) {
      rep.fail(id, "MN != NM (" + std::to_string(pr.members.size()) + " vs " +
                       std::to_string(nm.size()) + ")");
      return;
    }
    if (!pr.normal) {
      rep.fail(id, "MN is not a partial normal subgroup");
      return;
    }
    auto uv = s_product(loc, M.T, N.T);
    auto smn = intersect_sorted(loc.S, pr.members);
    if (smn != uv) {
      rep.fail(id, "S cap MN = " + set_witness(smn) + " but UV = " + set_witness(uv));
      return;
    }
    rep.pass(id);
  };

  if (!pr.applicable) {
    rep.skip("5.1", pr.refusal);
    rep.skip("5.2", "gated by 5.1");
  } else {
    check_product("5.1");
    rep.set_meta("product_size", std::to_string(pr.members.size()));
    bool ok = true;
    for (int g : pr.members) {
      auto [x, y] = split_product_element(loc, M, N, g);
      if (x < 0) {
        rep.fail("5.2", "no splitting of " + elem(V, g), {g});
        ok = false;
        break;
      }
    }
    if (ok) rep.pass("5.2");
  }

  auto inter = intersect_sorted(M.members, N.members);
  if (!subset_sorted(inter, loc.S)) {
    rep.skip("5.3", "M cap N escapes S");
    rep.skip("5.4", "M cap N escapes S");
  } else {
    int a = normalization_offender(loc, M.members, N.T);
    int b = normalization_offender(loc, N.members, M.T);
    if (a >= 0)
      rep.fail("5.3", "M misses N_L(S cap N) at " + elem(V, a), {a});
    else if (b >= 0)
      rep.fail("5.3", "N misses N_L(S cap M) at " + elem(V, b), {b});
    else
      rep.pass("5.3");
    if (a >= 0 || b >= 0) {
      // 5.4's conclusion is checked directly even though 5.3 already failed.
      auto mn = pair_product_set(V, M.members, N.members);
      auto nm = pair_product_set(V, N.members, M.members);
      if (mn != nm || !is_partial_normal(loc, mn) ||
          intersect_sorted(loc.S, mn) != s_product(loc, M.T, N.T))
        rep.fail("5.4", "product conclusions fail without mutual normalization");
      else
        rep.pass("5.4");
    } else {
      check_product("5.4");
    }
  }
  rep.sort_lines();
  return rep;
}

Report verify_generated(const Locality& loc, const PartialNormal& N,
                        const std::vector<int>& K, int max_len) {
  (void)max_len;
  const PartialGroupView& V = loc.pg;
  Report rep;
  rep.set_meta("k_size", std::to_string(K.size()));
  GeneratedResult gr = generated_with_normal(loc, N, K);
  if (!gr.hypothesis_met) {
    rep.skip("5.5.a", gr.refusal);
    rep.skip("5.5.b", "gated by hypothesis");
    rep.skip("5.5.c", "gated by hypothesis");
    rep.skip("5.5.d", "gated by hypothesis");
    rep.sort_lines();
    return rep;
  }
  rep.set_meta("generated_size", std::to_string(gr.members.size()));

  if (gr.normal)
    rep.pass("5.5.a");
  else
    rep.fail("5.5.a", "<K,N> is not a partial normal subgroup");

  auto skn = intersect_sorted(loc.S, gr.members);
  auto ukt = s_product(loc, intersect_sorted(loc.S, K), N.T);
  if (skn == ukt)
    rep.pass("5.5.b");
  else
    rep.fail("5.5.b", "S cap <K,N> = " + set_witness(skn) + " but (S cap K)T = " +
                          set_witness(ukt));

  {
    std::vector<int> tpos;
    for (int t : N.T) tpos.push_back(loc.s_pos[t]);
    std::vector<int> cst;
    for (int qp : centralizer(loc.s_group, tpos).members) cst.push_back(loc.S[qp]);
    std::sort(cst.begin(), cst.end());
    if (s_product(loc, cst, N.T) != loc.S) {
      rep.skip("5.5.c", "S != C_S(T)T");
    } else {
      auto kn = pair_product_set(V, K, N.members);
      auto nk = pair_product_set(V, N.members, K);
      if (kn == gr.members && nk == gr.members)
        rep.pass("5.5.c");
      else
        rep.fail("5.5.c", "<K,N> != KN or NK (" + std::to_string(gr.members.size()) +
                              " vs " + std::to_string(kn.size()) + "," +
                              std::to_string(nk.size()) + ")");
    }
  }

  try {
    Quotient q = quotient_locality(loc, N);
    const std::vector<int>& blk = q.cosets.block_of;
    std::vector<int> kbar;
    for (int x : K) kbar.push_back(blk[static_cast<size_t>(x)]);
    kbar = sorted_unique(std::move(kbar));
    auto closure = partial_normal_closure(*q.bar, kbar).members;
    std::vector<int> pre;
    for (int g = 0; g < loc.n(); ++g)
      if (contains_sorted(closure, blk[static_cast<size_t>(g)])) pre.push_back(g);
    if (pre == gr.members)
      rep.pass("5.5.d");
    else
      rep.fail("5.5.d", "preimage of the closure of K rho has size " +
                            std::to_string(pre.size()) + ", <K,N> has " +
                            std::to_string(gr.members.size()));
  } catch (const std::exception& e) {
    rep.fail("5.5.d", std::string("quotient unavailable: ") + e.what());
  }
  rep.sort_lines();
  return rep;
}

}  // namespace ploc
