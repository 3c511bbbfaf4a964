#include "ploc/locality.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace ploc {

namespace {

int p_part(int m, int p) {
  int q = 1;
  while (m > 0 && m % p == 0) {
    m /= p;
    q *= p;
  }
  return q;
}

bool is_p_power(int m, int p) { return p_part(m, p) == m; }

/// Cayley table of a subgroup of G on its own indices 0..|H|-1.
FiniteGroup section_group(const FiniteGroup& G, const std::vector<int>& members) {
  std::vector<int> pos(G.n, -1);
  for (size_t i = 0; i < members.size(); ++i) pos[members[i]] = static_cast<int>(i);
  if (members.empty() || pos[G.identity] < 0)
    throw std::runtime_error("section must contain the identity");
  FiniteGroup H;
  H.n = static_cast<int>(members.size());
  H.identity = pos[G.identity];
  H.table.assign(static_cast<size_t>(H.n) * H.n, -1);
  H.inv.resize(H.n);
  H.labels.resize(H.n);
  for (int i = 0; i < H.n; ++i) {
    int gi = G.inv[members[i]];
    if (gi < 0 || pos[gi] < 0) throw std::runtime_error("section not inverse-closed");
    H.inv[i] = pos[gi];
    H.labels[i] = G.label(members[i]);
    for (int j = 0; j < H.n; ++j) {
      int q = G.mul(members[i], members[j]);
      if (pos[q] < 0) throw std::runtime_error("section not closed under products");
      H.table[static_cast<size_t>(i) * H.n + j] = pos[q];
    }
  }
  return H;
}

std::string elem_witness(const PartialGroupView& V, int g) {
  return std::to_string(g) + ":" + V.label(g);
}

}  // namespace

bool subset_sorted(const std::vector<int>& a, const std::vector<int>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

std::vector<int> intersect_sorted(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool SubgroupFamily::contains(const std::vector<int>& m) const {
  return std::binary_search(members.begin(), members.end(), m);
}

void SubgroupFamily::insert(std::vector<int> m) {
  auto it = std::lower_bound(members.begin(), members.end(), m);
  if (it != members.end() && *it == m) return;
  members.insert(it, std::move(m));
}

ChainOracle::ChainOracle(int n, std::vector<int> S, SubgroupFamily delta,
                         std::vector<std::vector<int>> step)
    : S_(std::move(S)), delta_(std::move(delta)), step_(std::move(step)) {
  if (static_cast<int>(step_.size()) != n)
    throw std::invalid_argument("chain oracle: one step chart per element");
  for (const auto& row : step_)
    if (row.size() != S_.size()) throw std::invalid_argument("chain oracle: chart width");
}

bool ChainOracle::accepts(std::span<const int> w) const {
  const int n = static_cast<int>(step_.size());
  for (int g : w)
    if (g < 0 || g >= n) return false;
  std::vector<int> cur(S_.size());
  std::iota(cur.begin(), cur.end(), 0);
  for (int g : w) {
    const auto& row = step_[g];
    for (auto& c : cur)
      if (c >= 0) c = row[c];
  }
  std::vector<int> sw;
  for (size_t i = 0; i < S_.size(); ++i)
    if (cur[i] >= 0) sw.push_back(S_[i]);
  return delta_.contains(sw);
}

std::vector<int> Locality::s_w(std::span<const int> w) const {
  std::vector<int> cur(S.begin(), S.end());
  for (int g : w) {
    for (auto& c : cur) {
      if (c < 0) continue;
      c = in_sg(c, g) ? conj_in_s(c, g) : -1;
    }
  }
  std::vector<int> out;
  for (size_t i = 0; i < S.size(); ++i)
    if (cur[i] >= 0) out.push_back(S[i]);
  return out;
}

bool Locality::in_sg(int x, int g) const {
  return std::binary_search(sg[g].begin(), sg[g].end(), x);
}

int Locality::conj_in_s(int x, int g) const {
  auto it = std::lower_bound(sg[g].begin(), sg[g].end(), x);
  return cg[g][it - sg[g].begin()];
}

std::vector<int> Locality::conj_subgroup(const std::vector<int>& X, int g) const {
  std::vector<int> out;
  out.reserve(X.size());
  for (int x : X) {
    if (!in_sg(x, g)) throw std::runtime_error("conj_subgroup: set leaves S_g");
    out.push_back(conj_in_s(x, g));
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool Locality::subgroup_of_s(const std::vector<int>& X) const {
  return std::binary_search(s_lattice.begin(), s_lattice.end(), X);
}

std::vector<int> Locality::normalizer_in_l(const std::vector<int>& X) const {
  std::vector<int> out;
  std::vector<int> img;
  for (int g = 0; g < n(); ++g) {
    img.clear();
    bool ok = true;
    for (int x : X) {
      if (!in_sg(x, g)) {
        ok = false;
        break;
      }
      img.push_back(conj_in_s(x, g));
    }
    if (!ok) continue;
    std::sort(img.begin(), img.end());
    if (img == X) out.push_back(g);
  }
  return out;
}

std::vector<int> Locality::transporter_in_l(const std::vector<int>& X, const std::vector<int>& Y,
                                            const std::vector<int>& ground) const {
  std::vector<int> out;
  std::vector<int> img;
  for (int g : ground) {
    img.clear();
    bool ok = true;
    for (int x : X) {
      if (!in_sg(x, g)) {
        ok = false;
        break;
      }
      img.push_back(conj_in_s(x, g));
    }
    if (!ok) continue;
    std::sort(img.begin(), img.end());
    if (subset_sorted(img, Y)) out.push_back(g);
  }
  return out;
}

Locality make_locality(PartialGroupView pg, int p, std::vector<int> S, SubgroupFamily delta) {
  if (p < 2) throw std::invalid_argument("prime must be at least 2");
  Locality loc;
  loc.pg = std::move(pg);
  loc.p = p;
  loc.S = std::move(S);
  loc.delta = std::move(delta);
  const PartialGroupView& V = loc.pg;
  V.validate();

  if (loc.S.empty() || !std::is_sorted(loc.S.begin(), loc.S.end()) ||
      std::adjacent_find(loc.S.begin(), loc.S.end()) != loc.S.end())
    throw std::invalid_argument("S must be a sorted nonempty element list");
  for (int s : loc.S)
    if (s < 0 || s >= V.n) throw std::invalid_argument("S member out of range");

  loc.s_group = view_section_group(V, loc.S);
  loc.s_pos.assign(V.n, -1);
  for (size_t i = 0; i < loc.S.size(); ++i) loc.s_pos[loc.S[i]] = static_cast<int>(i);

  for (const Subgroup& H : all_subgroups(loc.s_group)) {
    std::vector<int> m;
    m.reserve(H.members.size());
    for (int i : H.members) m.push_back(loc.S[i]);
    loc.s_lattice.push_back(std::move(m));
  }
  std::sort(loc.s_lattice.begin(), loc.s_lattice.end());

  if (!loc.delta.contains(loc.S)) throw std::invalid_argument("family must contain S");
  for (const auto& X : loc.delta.members)
    if (!loc.subgroup_of_s(X))
      throw std::invalid_argument("family member is not a subgroup of S");

  loc.sg.resize(V.n);
  loc.cg.resize(V.n);
  for (int g = 0; g < V.n; ++g) {
    for (int x : loc.S) {
      if (!V.conj_defined(x, g)) continue;
      int y = V.conjugate(x, g);
      if (loc.s_pos[y] < 0) continue;
      loc.sg[g].push_back(x);
      loc.cg[g].push_back(y);
    }
  }
  return loc;
}

SubgroupFamily delta_closure(const FiniteGroup& G, const Subgroup& S,
                             const std::vector<std::vector<int>>& seeds) {
  FiniteGroup sec = section_group(G, S.members);
  std::vector<std::vector<int>> lattice;
  for (const Subgroup& H : all_subgroups(sec)) {
    std::vector<int> m;
    for (int i : H.members) m.push_back(S.members[i]);
    lattice.push_back(std::move(m));
  }
  std::sort(lattice.begin(), lattice.end());

  SubgroupFamily fam;
  std::deque<std::vector<int>> work;
  auto push = [&](std::vector<int> X) {
    if (fam.contains(X)) return;
    fam.insert(X);
    work.push_back(std::move(X));
  };
  push(S.members);
  for (auto seed : seeds) {
    std::sort(seed.begin(), seed.end());
    seed.erase(std::unique(seed.begin(), seed.end()), seed.end());
    if (!std::binary_search(lattice.begin(), lattice.end(), seed))
      throw std::invalid_argument("seed is not a subgroup of S");
    push(std::move(seed));
  }
  while (!work.empty()) {
    std::vector<int> X = std::move(work.front());
    work.pop_front();
    for (int g = 0; g < G.n; ++g) {
      std::vector<int> Y = conjugate_set(G, X, g);
      if (!subset_sorted(Y, S.members)) continue;
      for (const auto& Z : lattice)
        if (subset_sorted(Y, Z)) push(Z);
    }
  }
  return fam;
}

SubgroupFamily all_nonidentity_delta(const FiniteGroup& G, const Subgroup& S) {
  FiniteGroup sec = section_group(G, S.members);
  SubgroupFamily fam;
  for (const Subgroup& H : all_subgroups(sec)) {
    if (H.members.size() < 2) continue;
    std::vector<int> m;
    for (int i : H.members) m.push_back(S.members[i]);
    fam.insert(std::move(m));
  }
  if (fam.size() == 0) throw std::invalid_argument("S is trivial; the family would be empty");
  return fam;
}

Locality locality_from_group(const FiniteGroup& G, const Subgroup& S, int p,
                             const SubgroupFamily& delta_g) {
  if (!delta_g.contains(S.members)) throw std::invalid_argument("family must contain S");

  std::vector<int> L;
  for (int g = 0; g < G.n; ++g) {
    std::vector<int> meet = intersect_sorted(S.members, conjugate_set(G, S.members, g));
    if (delta_g.contains(meet)) L.push_back(g);
  }
  const int n = static_cast<int>(L.size());
  std::vector<int> pos(G.n, -1);
  for (int i = 0; i < n; ++i) pos[L[i]] = i;

  std::vector<int> S_loc;
  for (int s : S.members) {
    if (pos[s] < 0) throw std::logic_error("Sylow member missing from the construction");
    S_loc.push_back(pos[s]);
  }
  SubgroupFamily delta_loc;
  for (const auto& X : delta_g.members) {
    std::vector<int> m;
    for (int x : X) {
      if (pos[x] < 0) throw std::logic_error("object member missing from the construction");
      m.push_back(pos[x]);
    }
    delta_loc.insert(std::move(m));
  }

  std::vector<int> spos_g(G.n, -1);
  for (size_t i = 0; i < S.members.size(); ++i) spos_g[S.members[i]] = static_cast<int>(i);
  std::vector<std::vector<int>> step(n, std::vector<int>(S.members.size(), -1));
  for (int i = 0; i < n; ++i)
    for (size_t k = 0; k < S.members.size(); ++k) {
      int y = G.conj(S.members[k], L[i]);
      step[i][k] = spos_g[y];
    }
  auto oracle = std::make_shared<ChainOracle>(n, S_loc, delta_loc, std::move(step));

  PartialGroupView V;
  V.n = n;
  V.identity = pos[G.identity];
  V.inv.resize(n);
  V.labels.resize(n);
  V.pair.assign(static_cast<size_t>(n) * n, -1);
  for (int i = 0; i < n; ++i) {
    int gi = G.inv[L[i]];
    if (pos[gi] < 0) throw std::logic_error("inverse escaped; family is not closed");
    V.inv[i] = pos[gi];
    V.labels[i] = G.label(L[i]);
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const int w[2] = {i, j};
      if (!oracle->accepts(w)) continue;
      int q = G.mul(L[i], L[j]);
      if (pos[q] < 0) throw std::logic_error("product escaped; family is not closed");
      V.pair[static_cast<size_t>(i) * n + j] = pos[q];
    }
  V.oracle = oracle;
  return make_locality(std::move(V), p, std::move(S_loc), std::move(delta_loc));
}

Locality sub_locality(const Locality& loc, const std::vector<int>& members, int p,
                      const std::vector<int>& Ssub,
                      const std::vector<std::vector<int>>& delta_members) {
  if (members.empty() || !std::is_sorted(members.begin(), members.end()))
    throw std::invalid_argument("member list must be sorted");
  std::vector<int> pos(loc.n(), -1);
  for (size_t i = 0; i < members.size(); ++i) pos[members[i]] = static_cast<int>(i);
  const PartialGroupView& base = loc.pg;
  if (pos[base.identity] < 0) throw std::invalid_argument("subset must contain the identity");

  PartialGroupView V;
  V.n = static_cast<int>(members.size());
  V.identity = pos[base.identity];
  V.inv.resize(V.n);
  V.labels.resize(V.n);
  V.pair.assign(static_cast<size_t>(V.n) * V.n, -1);
  for (int i = 0; i < V.n; ++i) {
    int q = base.inv[members[i]];
    if (pos[q] < 0) throw std::invalid_argument("subset is not inverse-closed");
    V.inv[i] = pos[q];
    V.labels[i] = base.label(members[i]);
  }
  for (int i = 0; i < V.n; ++i)
    for (int j = 0; j < V.n; ++j) {
      int q = base.pair_at(members[i], members[j]);
      if (q < 0) continue;
      if (pos[q] < 0)
        throw std::invalid_argument("subset is not closed under defined products");
      V.pair[static_cast<size_t>(i) * V.n + j] = pos[q];
    }
  V.oracle = std::make_shared<MappedOracle>(base, members);

  std::vector<int> S_sub;
  for (int s : Ssub) {
    if (s < 0 || s >= loc.n() || pos[s] < 0)
      throw std::invalid_argument("Sylow member outside the subset");
    S_sub.push_back(pos[s]);
  }
  std::sort(S_sub.begin(), S_sub.end());
  SubgroupFamily delta_sub;
  for (const auto& X : delta_members) {
    std::vector<int> m;
    for (int x : X) {
      if (x < 0 || x >= loc.n() || pos[x] < 0)
        throw std::invalid_argument("object member outside the subset");
      m.push_back(pos[x]);
    }
    std::sort(m.begin(), m.end());
    delta_sub.insert(std::move(m));
  }
  return make_locality(std::move(V), p, std::move(S_sub), delta_sub);
}

namespace {

/// Conjugation that never throws: true and *out when (g^-1, x, g) is in
/// D and folds. Verification paths use this so corrupted instances
/// surface as FAIL lines instead of exceptions.
bool safe_conj(const PartialGroupView& V, int x, int g, int* out) {
  const int w[3] = {V.inv[g], x, g};
  return V.in_domain(w) && V.fold(w, out);
}

/// Word sweep of the objectivity suite. Enumerates every word up to
/// max_len depth-first in lex order, carrying the conjugation chain of S
/// along, and checks per word: domain vs chain criterion, S_w a
/// subgroup, composite conjugation on normalizers, the three-letter
/// product rearrangements, subgroup transport, and absorption by
/// N_L(S). Workers split on the first letter; each reports one line per
/// check id and reports merge deterministically.
struct ObjSweep {
  const Locality& loc;
  int max_len;
  const std::vector<int>& nls;
  const std::vector<std::vector<int>>& norms;

  Report rep;
  bool f_o1 = false, f_27 = false, f_23c = false, f_24a = false, f_24b = false,
       f_29 = false;
  Word word;
  std::vector<std::vector<int>> scratch;

  ObjSweep(const Locality& l, int ml, const std::vector<int>& ns,
           const std::vector<std::vector<int>>& nm)
      : loc(l), max_len(ml), nls(ns), norms(nm) {
    scratch.assign(max_len + 1, std::vector<int>(loc.S.size(), -1));
    for (size_t i = 0; i < loc.S.size(); ++i) scratch[0][i] = loc.S[i];
  }

  bool done() const { return f_o1 && f_27 && f_23c && f_24a && f_24b && f_29; }

  void fail_once(bool& flag, const char* id, std::string witness, std::vector<int> key,
                 int bound) {
    if (flag) return;
    flag = true;
    rep.fail(id, std::move(witness), std::move(key), bound);
  }

  void check_node(int depth, size_t parent_alive) {
    const PartialGroupView& V = loc.pg;
    const auto& cur = scratch[depth];
    std::vector<int> sw;
    for (size_t i = 0; i < loc.S.size(); ++i)
      if (cur[i] >= 0) sw.push_back(loc.S[i]);

    const bool acc = V.in_domain(word);
    if (!f_o1 && acc != loc.delta.contains(sw))
      fail_once(f_o1, "O1", word_witness(word), word, max_len);

    if (!f_27 && sw.size() != parent_alive) {
      bool group = !sw.empty();
      for (size_t a = 0; group && a < sw.size(); ++a)
        for (size_t b = 0; group && b < sw.size(); ++b) {
          int z = loc.S[loc.s_group.mul(loc.s_pos[sw[a]], loc.s_pos[sw[b]])];
          if (!std::binary_search(sw.begin(), sw.end(), z)) group = false;
        }
      if (!group) fail_once(f_27, "2.7", word_witness(word), word, max_len);
    }

    if (!acc) return;
    int prod = -1;
    if (!V.fold(word, &prod)) {
      fail_once(f_o1, "O1", word_witness(word) + " accepted with broken fold", word, max_len);
      return;
    }

    const int len = static_cast<int>(word.size());
    if (len == 2) {
      if (!f_23c) {
        for (size_t di = 0; di < loc.delta.size() && !f_23c; ++di) {
          const auto& X0 = loc.delta.members[di];
          if (!subset_sorted(X0, sw)) continue;
          for (int h : norms[di]) {
            int h1 = -1, h2 = -1, hd = -1;
            bool ok = safe_conj(V, h, word[0], &h1) && safe_conj(V, h1, word[1], &h2) &&
                      safe_conj(V, h, prod, &hd) && h2 == hd;
            if (!ok) {
              fail_once(f_23c, "2.3.c",
                        word_witness(word) + " on " + elem_witness(V, h),
                        {word[0], word[1], h}, 2);
              break;
            }
          }
        }
      }
      if (!f_24b) {
        for (const auto& X : loc.delta.members) {
          std::vector<int> xf, xfg;
          bool okf = true, okfg = true;
          for (int x : X) {
            if (okf && loc.in_sg(x, word[0]))
              xf.push_back(loc.conj_in_s(x, word[0]));
            else
              okf = false;
            if (okfg && loc.in_sg(x, prod))
              xfg.push_back(loc.conj_in_s(x, prod));
            else
              okfg = false;
          }
          if (!okf || !okfg) continue;
          std::sort(xf.begin(), xf.end());
          std::sort(xfg.begin(), xfg.end());
          if (!loc.delta.contains(xf) || !loc.delta.contains(xfg)) continue;
          std::vector<int> xf_g;
          bool ok = true;
          for (int y : xf) {
            if (!loc.in_sg(y, word[1])) {
              ok = false;
              break;
            }
            xf_g.push_back(loc.conj_in_s(y, word[1]));
          }
          if (ok) std::sort(xf_g.begin(), xf_g.end());
          if (!ok || xf_g != xfg) {
            fail_once(f_24b, "2.4.b", word_witness(word) + " X=" + set_witness(X),
                      {word[0], word[1]}, 2);
            break;
          }
        }
      }
    }

    if (len == 3 && !f_24a) {
      int a = word[0], c = word[2];
      int bc = V.pair_at(word[1], c);
      int ad = V.pair_at(V.inv[a], prod);
      int ab = V.pair_at(a, word[1]);
      int dc = V.pair_at(prod, V.inv[c]);
      if (bc < 0 || ad < 0 || bc != ad || ab < 0 || dc < 0 || ab != dc)
        fail_once(f_24a, "2.4.a", word_witness(word), word, 3);
    }

    if (len <= max_len - 2 && !f_29) {
      Word u(len + 2);
      std::copy(word.begin(), word.end(), u.begin() + 1);
      for (int x : nls) {
        u[0] = x;
        for (int y : nls) {
          u[len + 1] = y;
          if (!V.in_domain(u)) {
            fail_once(f_29, "2.9", word_witness(u), u, max_len);
            break;
          }
        }
        if (f_29) break;
      }
    }
  }

  void recurse(int depth) {
    const auto& cur = scratch[depth];
    auto& next = scratch[depth + 1];
    size_t alive = 0;
    for (int c : cur)
      if (c >= 0) ++alive;
    for (int g = 0; g < loc.n(); ++g) {
      for (size_t i = 0; i < cur.size(); ++i) {
        int c = cur[i];
        next[i] = (c >= 0 && loc.in_sg(c, g)) ? loc.conj_in_s(c, g) : -1;
      }
      word.push_back(g);
      check_node(depth + 1, alive);
      if (depth + 2 <= max_len) recurse(depth + 1);
      word.pop_back();
      if (done()) return;
    }
  }

  void run_range(int lo, int hi) {
    const auto& cur = scratch[0];
    auto& next = scratch[1];
    for (int g = lo; g < hi && !done(); ++g) {
      for (size_t i = 0; i < cur.size(); ++i) {
        int c = cur[i];
        next[i] = (c >= 0 && loc.in_sg(c, g)) ? loc.conj_in_s(c, g) : -1;
      }
      word.assign(1, g);
      check_node(1, loc.S.size());
      if (max_len >= 2) recurse(1);
      word.clear();
    }
  }

  void finish() {
    if (!f_o1) rep.pass("O1", max_len);
    if (!f_27) rep.pass("2.7", max_len);
    if (!f_23c) rep.pass("2.3.c", std::min(max_len, 2));
    if (max_len >= 3 && !f_24a) rep.pass("2.4.a", 3);
    if (!f_24b) rep.pass("2.4.b", 2);
    if (!f_29) rep.pass("2.9", max_len);
  }
};

}  // namespace

Report verify_objectivity(const Locality& loc, int max_len, int workers) {
  if (max_len < 2) throw std::invalid_argument("verification needs max_len >= 2");
  const PartialGroupView& V = loc.pg;
  const int n = V.n;
  Report rep;
  rep.set_meta("elements", std::to_string(n));
  rep.set_meta("objects", std::to_string(loc.delta.size()));
  rep.set_meta("bound", std::to_string(max_len));

  std::vector<std::vector<int>> norms;
  norms.reserve(loc.delta.size());
  for (const auto& X : loc.delta.members) norms.push_back(loc.normalizer_in_l(X));
  auto norm_of = [&](const std::vector<int>& Y) -> std::vector<int> {
    auto it = std::lower_bound(loc.delta.members.begin(), loc.delta.members.end(), Y);
    if (it != loc.delta.members.end() && *it == Y)
      return norms[it - loc.delta.members.begin()];
    return loc.normalizer_in_l(Y);
  };
  const std::vector<int> nls = loc.normalizer_in_l(loc.S);

  // Empty word against the chain criterion.
  if (V.in_domain({}) != loc.delta.contains(loc.S))
    rep.fail("O1", "[]", {}, max_len);

  // O2: overgroups in S of images of objects are objects.
  {
    bool bad = false;
    for (const auto& X : loc.delta.members) {
      for (int g = 0; g < n && !bad; ++g) {
        std::vector<int> img;
        bool ok = true;
        for (int x : X) {
          if (!loc.in_sg(x, g)) {
            ok = false;
            break;
          }
          img.push_back(loc.conj_in_s(x, g));
        }
        if (!ok) continue;
        std::sort(img.begin(), img.end());
        for (const auto& Z : loc.s_lattice) {
          if (!subset_sorted(img, Z) || loc.delta.contains(Z)) continue;
          rep.fail("O2", set_witness(X) + "^" + std::to_string(g) + "<=" + set_witness(Z), {g});
          bad = true;
          break;
        }
      }
      if (bad) break;
    }
    if (!bad) rep.pass("O2");
  }

  // 2.3.a: normalizers of objects are subgroups.
  {
    const int wb = std::min(max_len, 3);
    bool bad = false;
    for (size_t di = 0; di < loc.delta.size() && !bad; ++di) {
      const auto& N = norms[di];
      try {
        view_section_group(V, N);
      } catch (const std::exception&) {
        rep.fail("2.3.a", "N(" + set_witness(loc.delta.members[di]) + ") not a group", {}, wb);
        bad = true;
        break;
      }
      Word cex;
      if (!all_words_in_domain(V, N, wb, &cex)) {
        rep.fail("2.3.a", word_witness(cex), cex, wb);
        bad = true;
      }
    }
    if (!bad) rep.pass("2.3.a", wb);
  }

  // 2.3.b: conjugation between objects restricts to an isomorphism of
  // their normalizers.
  {
    bool bad = false;
    for (size_t di = 0; di < loc.delta.size() && !bad; ++di) {
      const auto& X = loc.delta.members[di];
      for (int g = 0; g < n && !bad; ++g) {
        std::vector<int> Y;
        bool in = true;
        for (int x : X) {
          if (!loc.in_sg(x, g)) {
            in = false;
            break;
          }
          Y.push_back(loc.conj_in_s(x, g));
        }
        if (!in) continue;
        std::sort(Y.begin(), Y.end());
        if (!loc.delta.contains(Y)) continue;
        const auto& NX = norms[di];
        std::vector<int> NY = norm_of(Y);
        std::vector<int> img;
        img.reserve(NX.size());
        auto fail_here = [&](const std::string& what) {
          rep.fail("2.3.b", what + " at g=" + std::to_string(g) + " X=" + set_witness(X), {g});
          bad = true;
        };
        for (int h : NX) {
          int y = -1;
          if (!safe_conj(V, h, g, &y)) {
            fail_here("conjugate undefined on " + elem_witness(V, h));
            break;
          }
          if (!std::binary_search(NY.begin(), NY.end(), y)) {
            fail_here("image leaves the target normalizer");
            break;
          }
          img.push_back(y);
        }
        if (bad) break;
        std::sort(img.begin(), img.end());
        if (std::adjacent_find(img.begin(), img.end()) != img.end()) {
          fail_here("not injective");
          break;
        }
        if (img.size() != NY.size()) {
          fail_here("not onto");
          break;
        }
        for (size_t a = 0; a < NX.size() && !bad; ++a)
          for (size_t b = 0; b < NX.size(); ++b) {
            int q = V.pair_at(NX[a], NX[b]);
            if (q < 0) continue;
            int qa = -1, qb = -1, qq = -1;
            if (!safe_conj(V, NX[a], g, &qa) || !safe_conj(V, NX[b], g, &qb) ||
                !safe_conj(V, q, g, &qq) || V.pair_at(qa, qb) != qq) {
              fail_here("not multiplicative");
              break;
            }
          }
      }
    }
    if (!bad) rep.pass("2.3.b");
  }

  // 2.5: a fixed point of conjugation commutes with the conjugator.
  {
    bool bad = false;
    for (int f = 0; f < n && !bad; ++f)
      for (int g = 0; g < n; ++g) {
        int im = -1;
        if (!safe_conj(V, f, g, &im) || im != f) continue;
        int fg = V.pair_at(f, g), gf = V.pair_at(g, f);
        int back = -1;
        if (fg < 0 || gf < 0 || fg != gf || !safe_conj(V, g, f, &back) || back != g) {
          rep.fail("2.5", "(f,g)=(" + std::to_string(f) + "," + std::to_string(g) + ")",
                   {f, g});
          bad = true;
          break;
        }
      }
    if (!bad) rep.pass("2.5");
  }

  // 2.6.a: S_g is an object.
  {
    bool bad = false;
    for (int g = 0; g < n; ++g)
      if (!loc.delta.contains(loc.sg[g])) {
        rep.fail("2.6.a", "S_g for g=" + elem_witness(V, g), {g});
        bad = true;
        break;
      }
    if (!bad) rep.pass("2.6.a");
  }

  // 2.6.b: c_g is an isomorphism S_g -> S_{g^-1}.
  {
    bool bad = false;
    for (int g = 0; g < n && !bad; ++g) {
      std::vector<int> img = loc.cg[g];
      std::sort(img.begin(), img.end());
      if (std::adjacent_find(img.begin(), img.end()) != img.end() ||
          img != loc.sg[V.inv[g]]) {
        rep.fail("2.6.b", "image of S_g at g=" + elem_witness(V, g), {g});
        bad = true;
        break;
      }
      const auto& dom = loc.sg[g];
      for (size_t a = 0; a < dom.size() && !bad; ++a) {
        if (loc.conj_in_s(loc.cg[g][a], V.inv[g]) != dom[a]) {
          rep.fail("2.6.b", "c_g not inverted by c_{g^-1} at g=" + elem_witness(V, g), {g});
          bad = true;
          break;
        }
        for (size_t b = 0; b < dom.size(); ++b) {
          int z = loc.S[loc.s_group.mul(loc.s_pos[dom[a]], loc.s_pos[dom[b]])];
          int za = loc.cg[g][a], zb = loc.cg[g][b];
          int zim = loc.S[loc.s_group.mul(loc.s_pos[za], loc.s_pos[zb])];
          if (!loc.in_sg(z, g) || loc.conj_in_s(z, g) != zim) {
            rep.fail("2.6.b", "c_g not multiplicative at g=" + elem_witness(V, g), {g});
            bad = true;
            break;
          }
        }
      }
    }
    if (!bad) rep.pass("2.6.b");
  }

  // 2.6.c: conjugation transports subgroups of S_g to subgroups of S and
  // objects to objects.
  {
    bool bad = false;
    for (const auto& P : loc.s_lattice) {
      for (int g = 0; g < n && !bad; ++g) {
        std::vector<int> img;
        bool in = true;
        for (int x : P) {
          if (!loc.in_sg(x, g)) {
            in = false;
            break;
          }
          img.push_back(loc.conj_in_s(x, g));
        }
        if (!in) continue;
        std::sort(img.begin(), img.end());
        if (!loc.subgroup_of_s(img) ||
            (loc.delta.contains(P) && !loc.delta.contains(img))) {
          rep.fail("2.6.c", set_witness(P) + "^" + std::to_string(g), {g});
          bad = true;
        }
      }
      if (bad) break;
    }
    if (!bad) rep.pass("2.6.c");
  }

  // 2.9 with the empty middle word.
  {
    bool bad = false;
    for (int x : nls) {
      for (int y : nls)
        if (V.pair_at(x, y) < 0) {
          rep.fail("2.9", word_witness(std::vector<int>{x, y}), {x, y}, max_len);
          bad = true;
          break;
        }
      if (bad) break;
    }
    // Worker sweeps add the nonempty cases; merge keeps the worst.
  }

  if (max_len < 3) rep.skip("2.4.a", "needs bound >= 3");

  const int W = std::max(1, std::min(workers, n));
  if (W == 1) {
    ObjSweep s(loc, max_len, nls, norms);
    s.run_range(0, n);
    s.finish();
    rep.merge(s.rep);
  } else {
    std::vector<std::unique_ptr<ObjSweep>> sweeps;
    for (int wi = 0; wi < W; ++wi)
      sweeps.push_back(std::make_unique<ObjSweep>(loc, max_len, nls, norms));
    std::vector<std::thread> threads;
    for (int wi = 0; wi < W; ++wi) {
      int lo = static_cast<int>(static_cast<long>(n) * wi / W);
      int hi = static_cast<int>(static_cast<long>(n) * (wi + 1) / W);
      threads.emplace_back([&, wi, lo, hi] { sweeps[wi]->run_range(lo, hi); });
    }
    for (auto& t : threads) t.join();
    for (auto& s : sweeps) {
      s->finish();
      rep.merge(s->rep);
    }
  }
  rep.sort_lines();
  return rep;
}

Report verify_locality(const Locality& loc) {
  const PartialGroupView& V = loc.pg;
  const int n = V.n;
  Report rep;
  rep.set_meta("elements", std::to_string(n));
  rep.set_meta("prime", std::to_string(loc.p));

  // L1: S is a p-group and an object.
  if (!is_p_power(static_cast<int>(loc.S.size()), loc.p))
    rep.fail("L1", "|S|=" + std::to_string(loc.S.size()));
  else if (!loc.delta.contains(loc.S))
    rep.fail("L1", "S not an object");
  else
    rep.pass("L1");

  // L2: S is Sylow in its normalizer, which pins down maximality among
  // p-subgroups.
  {
    std::vector<int> N = loc.normalizer_in_l(loc.S);
    bool ok = true;
    try {
      view_section_group(V, N);
    } catch (const std::exception&) {
      rep.fail("L2", "N_L(S) not a group");
      ok = false;
    }
    if (ok) {
      int pp = p_part(static_cast<int>(N.size()), loc.p);
      if (pp != static_cast<int>(loc.S.size()))
        rep.fail("L2", "|N_L(S)|=" + std::to_string(N.size()) +
                           " p-part=" + std::to_string(pp));
      else
        rep.pass("L2");
    }
  }

  // 2.10: every object has a conjugate whose S-normalizer is Sylow in
  // its L-normalizer.
  {
    bool bad = false;
    for (const auto& P : loc.delta.members) {
      std::vector<int> Ppos;
      for (int x : P) Ppos.push_back(loc.s_pos[x]);
      std::vector<int> NSP;
      for (int i : normalizer(loc.s_group, Ppos).members) NSP.push_back(loc.S[i]);
      std::sort(NSP.begin(), NSP.end());
      bool found = false;
      for (int g = 0; g < n && !found; ++g) {
        if (!subset_sorted(NSP, loc.sg[g])) continue;
        std::vector<int> Q;
        for (int x : P) Q.push_back(loc.conj_in_s(x, g));
        std::sort(Q.begin(), Q.end());
        if (!loc.subgroup_of_s(Q)) continue;
        std::vector<int> Qpos;
        for (int x : Q) Qpos.push_back(loc.s_pos[x]);
        std::vector<int> NSQ;
        for (int i : normalizer(loc.s_group, Qpos).members) NSQ.push_back(loc.S[i]);
        std::vector<int> NLQ = loc.normalizer_in_l(Q);
        try {
          view_section_group(V, NLQ);
        } catch (const std::exception&) {
          continue;
        }
        if (p_part(static_cast<int>(NLQ.size()), loc.p) == static_cast<int>(NSQ.size()))
          found = true;
      }
      if (!found) {
        rep.fail("2.10", "P=" + set_witness(P));
        bad = true;
        break;
      }
    }
    if (!bad) rep.pass("2.10");
  }

  // Subgroups generated by one or two elements, deduplicated: the sample
  // for 2.11.
  std::set<std::vector<int>> cands;
  for (int g = 0; g < n; ++g)
    cands.insert(generated_partial_subgroup(V, {g}).members);
  for (int g = 0; g < n; ++g)
    for (int h = g + 1; h < n; ++h)
      cands.insert(generated_partial_subgroup(V, {g, h}).members);

  std::vector<std::vector<int>> subgroups;
  for (const auto& H : cands) {
    bool closed = true;
    for (size_t a = 0; a < H.size() && closed; ++a)
      for (size_t b = 0; b < H.size(); ++b) {
        int q = V.pair_at(H[a], H[b]);
        if (q < 0 || !std::binary_search(H.begin(), H.end(), q)) {
          closed = false;
          break;
        }
      }
    if (closed && all_words_in_domain(V, H, 3)) subgroups.push_back(H);
  }

  // 2.11.a: every sampled subgroup normalizes an object.
  {
    bool bad = false;
    for (const auto& H : subgroups) {
      bool local = false;
      for (const auto& P : loc.delta.members) {
        bool norm = true;
        for (int h : H) {
          std::vector<int> img;
          bool in = true;
          for (int x : P) {
            if (!loc.in_sg(x, h)) {
              in = false;
              break;
            }
            img.push_back(loc.conj_in_s(x, h));
          }
          if (in) std::sort(img.begin(), img.end());
          if (!in || img != P) {
            norm = false;
            break;
          }
        }
        if (norm) {
          local = true;
          break;
        }
      }
      if (!local) {
        rep.fail("2.11.a", "H=" + set_witness(H), {}, 3);
        bad = true;
        break;
      }
    }
    if (!bad) rep.pass("2.11.a", 3);
  }

  // 2.11.b: sampled p-subgroups conjugate into S.
  {
    bool bad = false;
    for (const auto& H : subgroups) {
      if (!is_p_power(static_cast<int>(H.size()), loc.p)) continue;
      try {
        int r = conjugate_into_s(loc, H);
        for (int h : H) {
          int y = -1;
          if (!safe_conj(V, h, r, &y) || loc.s_pos[y] < 0)
            throw std::runtime_error("conjugate misses S");
        }
      } catch (const std::exception& e) {
        rep.fail("2.11.b", "H=" + set_witness(H) + " " + e.what(), {}, 3);
        bad = true;
        break;
      }
    }
    if (!bad) rep.pass("2.11.b", 3);
  }

  // 2.13.a: normalizers of subgroups of S are partial subgroups.
  {
    bool bad = false;
    for (const auto& R : loc.s_lattice) {
      std::vector<int> N = loc.normalizer_in_l(R);
      if (!is_partial_subgroup_set(V, N)) {
        rep.fail("2.13.a", "R=" + set_witness(R));
        bad = true;
        break;
      }
    }
    if (!bad) rep.pass("2.13.a");
  }

  // 2.13.c: for R normal in S the normalizer carries a locality again.
  {
    bool bad = false;
    for (const auto& R : loc.s_lattice) {
      std::vector<int> Rpos;
      for (int x : R) Rpos.push_back(loc.s_pos[x]);
      if (!is_normal_set(loc.s_group, Rpos)) continue;
      try {
        normalizer_sublocality(loc, R);
      } catch (const std::exception& e) {
        rep.fail("2.13.c", "R=" + set_witness(R) + " " + e.what());
        bad = true;
        break;
      }
    }
    if (!bad) rep.pass("2.13.c");
  }

  // 2.14: the conjugation-invariant core of S is the largest subgroup of
  // S that is partial normal.
  {
    bool bad = false;
    std::vector<int> core;
    try {
      core = op_subgroup(loc);
    } catch (const std::exception& e) {
      rep.fail("2.14", e.what());
      bad = true;
    }
    if (!bad) {
      for (const auto& T : loc.s_lattice) {
        bool pnormal = true;
        for (int x : T) {
          for (int g = 0; g < n; ++g) {
            int y = -1;
            if (!safe_conj(V, x, g, &y)) continue;
            if (!std::binary_search(T.begin(), T.end(), y)) {
              pnormal = false;
              break;
            }
          }
          if (!pnormal) break;
        }
        if (pnormal && !subset_sorted(T, core)) {
          rep.fail("2.14", "T=" + set_witness(T) + " outside " + set_witness(core));
          bad = true;
          break;
        }
      }
    }
    if (!bad) rep.pass("2.14");
  }

  rep.sort_lines();
  return rep;
}

Locality normalizer_sublocality(const Locality& loc, const std::vector<int>& R) {
  if (!loc.subgroup_of_s(R)) throw std::invalid_argument("R must be a subgroup of S");
  const PartialGroupView& V = loc.pg;

  auto normalizes_r = [&](int x) {
    std::vector<int> img;
    for (int r : R) img.push_back(loc.S[loc.s_group.conj(loc.s_pos[r], loc.s_pos[x])]);
    std::sort(img.begin(), img.end());
    return img == R;
  };

  std::vector<int> N = loc.normalizer_in_l(R);
  std::vector<std::vector<int>> gamma;
  for (const auto& P : loc.delta.members) {
    std::vector<int> NPR;
    for (int x : P)
      if (normalizes_r(x)) NPR.push_back(x);
    std::sort(NPR.begin(), NPR.end());
    gamma.push_back(std::move(NPR));
  }
  std::sort(gamma.begin(), gamma.end());
  gamma.erase(std::unique(gamma.begin(), gamma.end()), gamma.end());
  for (const auto& X : gamma)
    if (!loc.delta.contains(X))
      throw std::runtime_error("induced family leaves the object set");

  std::vector<int> NSR;
  for (int x : loc.S)
    if (normalizes_r(x)) NSR.push_back(x);

  // N_S(R) must be a maximal p-subgroup of N_L(R).
  for (int g : N) {
    if (std::binary_search(NSR.begin(), NSR.end(), g)) continue;
    std::vector<int> seed = NSR;
    seed.push_back(g);
    std::vector<int> H = generated_partial_subgroup(V, seed).members;
    if (!subset_sorted(H, N)) continue;
    bool closed = true;
    for (size_t a = 0; a < H.size() && closed; ++a)
      for (size_t b = 0; b < H.size(); ++b)
        if (V.pair_at(H[a], H[b]) < 0) {
          closed = false;
          break;
        }
    if (closed && all_words_in_domain(V, H, 3) &&
        is_p_power(static_cast<int>(H.size()), loc.p) && H.size() > NSR.size())
      throw std::runtime_error("N_S(R) is not a maximal p-subgroup of N_L(R)");
  }

  return sub_locality(loc, N, loc.p, NSR, gamma);
}

std::vector<int> op_subgroup(const Locality& loc) {
  std::vector<int> X = loc.S;
  for (;;) {
    std::vector<int> next;
    for (int x : X) {
      bool keep = true;
      for (int g = 0; g < loc.n(); ++g) {
        if (!loc.in_sg(x, g) ||
            !std::binary_search(X.begin(), X.end(), loc.conj_in_s(x, g))) {
          keep = false;
          break;
        }
      }
      if (keep) next.push_back(x);
    }
    if (next == X) break;
    X = std::move(next);
  }
  if (!loc.subgroup_of_s(X))
    throw std::runtime_error("invariant core is not a subgroup");
  return X;
}

int conjugate_into_s(const Locality& loc, const std::vector<int>& H) {
  const PartialGroupView& V = loc.pg;
  if (H.empty() || !std::is_sorted(H.begin(), H.end()))
    throw std::invalid_argument("H must be a sorted nonempty element list");
  if (!is_p_power(static_cast<int>(H.size()), loc.p))
    throw std::invalid_argument("H is not a p-subgroup");

  bool inside = true;
  for (int h : H)
    if (loc.s_pos[h] < 0) {
      inside = false;
      break;
    }
  if (inside) return V.identity;

  // An object normalized by H.
  const std::vector<int>* U = nullptr;
  for (const auto& P : loc.delta.members) {
    bool norm = true;
    for (int h : H) {
      std::vector<int> img;
      bool in = true;
      for (int x : P) {
        if (!loc.in_sg(x, h)) {
          in = false;
          break;
        }
        img.push_back(loc.conj_in_s(x, h));
      }
      if (in) std::sort(img.begin(), img.end());
      if (!in || img != P) {
        norm = false;
        break;
      }
    }
    if (norm) {
      U = &P;
      break;
    }
  }
  if (U == nullptr) throw std::runtime_error("H normalizes no object");

  std::vector<int> Upos;
  for (int x : *U) Upos.push_back(loc.s_pos[x]);
  std::vector<int> NSU;
  for (int i : normalizer(loc.s_group, Upos).members) NSU.push_back(loc.S[i]);
  std::sort(NSU.begin(), NSU.end());

  // Move U so that its S-normalizer is Sylow in its L-normalizer.
  for (int g = 0; g < loc.n(); ++g) {
    if (!subset_sorted(NSU, loc.sg[g])) continue;
    std::vector<int> Vobj;
    for (int x : *U) Vobj.push_back(loc.conj_in_s(x, g));
    std::sort(Vobj.begin(), Vobj.end());
    if (!loc.subgroup_of_s(Vobj)) continue;
    std::vector<int> Vpos;
    for (int x : Vobj) Vpos.push_back(loc.s_pos[x]);
    std::vector<int> NSV;
    for (int i : normalizer(loc.s_group, Vpos).members) NSV.push_back(loc.S[i]);
    std::sort(NSV.begin(), NSV.end());
    std::vector<int> M = loc.normalizer_in_l(Vobj);
    try {
      view_section_group(V, M);
    } catch (const std::exception&) {
      continue;
    }
    if (p_part(static_cast<int>(M.size()), loc.p) != static_cast<int>(NSV.size())) continue;

    std::vector<int> H1;
    bool ok = true;
    for (int h : H) {
      int y = -1;
      if (!safe_conj(V, h, g, &y)) {
        ok = false;
        break;
      }
      H1.push_back(y);
    }
    if (!ok) continue;
    std::sort(H1.begin(), H1.end());
    if (!subset_sorted(H1, M)) continue;

    for (int x : M) {
      bool fits = true;
      for (int h : H1) {
        int y = -1;
        if (!safe_conj(V, h, x, &y) || !std::binary_search(NSV.begin(), NSV.end(), y)) {
          fits = false;
          break;
        }
      }
      if (!fits) continue;
      int r = V.product(std::vector<int>{g, x});
      bool lands = true;
      for (int h : H) {
        int y = -1;
        if (!safe_conj(V, h, r, &y) || loc.s_pos[y] < 0) {
          lands = false;
          break;
        }
      }
      if (lands) return r;
    }
  }
  throw std::runtime_error("no conjugator into S found");
}

std::vector<int> centralizer_in_l(const Locality& loc, const std::vector<int>& T) {
  const PartialGroupView& V = loc.pg;
  std::vector<int> out;
  for (int g = 0; g < loc.n(); ++g) {
    bool central = true;
    for (int t : T) {
      int y = -1;
      if (!safe_conj(V, t, g, &y) || y != t) {
        central = false;
        break;
      }
    }
    if (central) out.push_back(g);
  }
  return out;
}

std::vector<int> subgroup_core(const Locality& loc, const std::vector<int>& H) {
  std::vector<int> Q = loc.S;
  for (int h : H) Q = intersect_sorted(Q, loc.sg[h]);
  for (;;) {
    std::vector<int> next;
    for (int x : Q) {
      bool keep = true;
      for (int h : H) {
        if (!std::binary_search(Q.begin(), Q.end(), loc.conj_in_s(x, h))) {
          keep = false;
          break;
        }
      }
      if (keep) next.push_back(x);
    }
    if (next == Q) return Q;
    Q = std::move(next);
  }
}

bool is_subgroup_in_l(const Locality& loc, const std::vector<int>& H) {
  const PartialGroupView& V = loc.pg;
  if (H.empty()) return false;
  for (int a : H) {
    if (!std::binary_search(H.begin(), H.end(), V.inv[a])) return false;
    for (int b : H) {
      int c = V.pair_at(a, b);
      if (c < 0 || !std::binary_search(H.begin(), H.end(), c)) return false;
    }
  }
  return loc.delta.contains(subgroup_core(loc, H));
}

FusionMapSet fusion_maps(const Locality& loc) {
  using Graph = std::vector<std::pair<int, int>>;
  std::set<Graph> maps;
  std::deque<Graph> work;
  auto push = [&](Graph m) {
    if (maps.insert(m).second) work.push_back(std::move(m));
  };

  for (int g = 0; g < loc.n(); ++g)
    for (const auto& P : loc.s_lattice) {
      Graph m;
      bool in = true;
      for (int x : P) {
        if (!loc.in_sg(x, g)) {
          in = false;
          break;
        }
        m.push_back({x, loc.conj_in_s(x, g)});
      }
      if (in) push(std::move(m));
    }

  auto image_of = [](const Graph& m) {
    std::vector<int> img;
    for (auto& [x, y] : m) img.push_back(y);
    std::sort(img.begin(), img.end());
    return img;
  };
  auto domain_of = [](const Graph& m) {
    std::vector<int> dom;
    for (auto& [x, y] : m) dom.push_back(x);
    return dom;  // sorted by construction
  };
  auto apply = [](const Graph& m, int x) {
    auto it = std::lower_bound(m.begin(), m.end(), std::pair<int, int>{x, -1});
    return it->second;
  };

  while (!work.empty()) {
    Graph m = work.front();
    work.pop_front();

    Graph flipped;
    for (auto& [x, y] : m) flipped.push_back({y, x});
    std::sort(flipped.begin(), flipped.end());
    push(std::move(flipped));

    std::vector<int> dom = domain_of(m);
    for (const auto& Q : loc.s_lattice) {
      if (Q == dom || !subset_sorted(Q, dom)) continue;
      Graph r;
      for (int x : Q) r.push_back({x, apply(m, x)});
      push(std::move(r));
    }

    std::vector<Graph> snapshot(maps.begin(), maps.end());
    std::vector<int> img = image_of(m);
    for (const Graph& other : snapshot) {
      if (subset_sorted(img, domain_of(other))) {
        Graph comp;
        for (auto& [x, y] : m) comp.push_back({x, apply(other, y)});
        push(std::move(comp));
      }
      if (subset_sorted(image_of(other), dom)) {
        Graph comp;
        for (auto& [x, y] : other) comp.push_back({x, apply(m, y)});
        push(std::move(comp));
      }
    }
  }

  FusionMapSet out;
  out.maps.assign(maps.begin(), maps.end());
  return out;
}

std::optional<Word> find_rejected_pair(const PartialGroupView& V) {
  for (int i = 0; i < V.n; ++i)
    for (int j = 0; j < V.n; ++j)
      if (V.pair_at(i, j) < 0) return Word{i, j};
  return std::nullopt;
}

}  // namespace ploc
