#pragma once

// Brute-force oracles. Deliberately naive, and independent of the search
// paths used by the library: everything here reads only the raw view
// tables (pair, inv, oracle) and the locality's S membership.

#include <algorithm>
#include <optional>
#include <vector>

#include "ploc/locality.hpp"

namespace oracles {

inline bool odo_next(std::vector<int>& w, int base) {
  int i = static_cast<int>(w.size()) - 1;
  while (i >= 0 && w[static_cast<size_t>(i)] == base - 1) w[static_cast<size_t>(i--)] = 0;
  if (i < 0) return false;
  ++w[static_cast<size_t>(i)];
  return true;
}

/// Closure of X under the products of accepted words up to maxlen, plus
/// inversion, iterated to a fixpoint.
inline std::vector<int> word_closure(const ploc::PartialGroupView& V, std::vector<int> X,
                                     int maxlen) {
  std::sort(X.begin(), X.end());
  X.erase(std::unique(X.begin(), X.end()), X.end());
  for (;;) {
    std::vector<int> grown = X;
    for (int x : X) grown.push_back(V.inv[static_cast<size_t>(x)]);
    const int m = static_cast<int>(X.size());
    for (int len = 2; len <= maxlen; ++len) {
      std::vector<int> idx(static_cast<size_t>(len), 0);
      do {
        ploc::Word w(idx.size());
        for (size_t i = 0; i < idx.size(); ++i) w[i] = X[static_cast<size_t>(idx[i])];
        int out = -1;
        if (V.in_domain(w) && V.fold(w, &out)) grown.push_back(out);
      } while (odo_next(idx, m));
    }
    std::sort(grown.begin(), grown.end());
    grown.erase(std::unique(grown.begin(), grown.end()), grown.end());
    if (grown == X) return X;
    X = std::move(grown);
  }
}

/// Conjugate of x by g off the raw tables, or -1.
inline int raw_conj(const ploc::PartialGroupView& V, int x, int g) {
  const int w[3] = {V.inv[static_cast<size_t>(g)], x, g};
  if (!V.in_domain(w)) return -1;
  int out = -1;
  if (!V.fold(w, &out)) return -1;
  return out;
}

inline bool in_sorted(const std::vector<int>& v, int x) {
  return std::binary_search(v.begin(), v.end(), x);
}

/// Image of a set under conjugation by g, or nullopt when any member
/// fails to conjugate.
inline std::optional<std::vector<int>> conj_set(const ploc::PartialGroupView& V,
                                                const std::vector<int>& X, int g) {
  std::vector<int> out;
  for (int x : X) {
    int y = raw_conj(V, x, g);
    if (y < 0) return std::nullopt;
    out.push_back(y);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Largest subgroup of S fixed setwise by every defined conjugation,
/// scanning the whole subgroup lattice of S.
inline std::vector<int> brute_op(const ploc::Locality& loc) {
  std::vector<int> best{loc.pg.identity};
  for (const auto& X : loc.s_lattice) {
    bool ok = true;
    for (int g = 0; g < loc.n() && ok; ++g) {
      auto img = conj_set(loc.pg, X, g);
      if (!img || *img != X) ok = false;
    }
    if (ok && X.size() > best.size()) best = X;
  }
  return best;
}

/// Largest subgroup of S surviving, inside S, the conjugation chain of
/// every word over H up to length `maxlen`.
inline std::vector<int> brute_core(const ploc::Locality& loc, const std::vector<int>& H,
                                   int maxlen) {
  auto survives = [&](int x0, const ploc::Word& w) {
    int x = x0;
    for (int g : w) {
      x = raw_conj(loc.pg, x, g);
      if (x < 0 || !in_sorted(loc.S, x)) return false;
    }
    return true;
  };
  std::vector<int> best{loc.pg.identity};
  const int m = static_cast<int>(H.size());
  for (const auto& Q : loc.s_lattice) {
    bool ok = true;
    for (int len = 1; len <= maxlen && ok; ++len) {
      std::vector<int> idx(static_cast<size_t>(len), 0);
      do {
        ploc::Word w(idx.size());
        for (size_t i = 0; i < idx.size(); ++i) w[i] = H[static_cast<size_t>(idx[i])];
        for (int x : Q)
          if (!survives(x, w)) {
            ok = false;
            break;
          }
      } while (ok && odo_next(idx, m));
    }
    if (ok && Q.size() > best.size()) best = Q;
  }
  return best;
}

/// Exhaustive scan for an element conjugating H into S.
inline std::optional<int> brute_conjugator(const ploc::Locality& loc,
                                           const std::vector<int>& H) {
  for (int u = 0; u < loc.n(); ++u) {
    bool ok = true;
    for (int h : H) {
      int y = raw_conj(loc.pg, h, u);
      if (y < 0 || !in_sorted(loc.S, y)) {
        ok = false;
        break;
      }
    }
    if (ok) return u;
  }
  return std::nullopt;
}

/// Dumb partial-normality test off the raw tables: closed under
/// inversion and defined pair products, stable under defined conjugation
/// from anywhere in L.
inline bool brute_partial_normal(const ploc::Locality& loc, const std::vector<int>& N) {
  const ploc::PartialGroupView& V = loc.pg;
  if (!in_sorted(N, V.identity)) return false;
  for (int x : N) {
    if (!in_sorted(N, V.inv[static_cast<size_t>(x)])) return false;
    for (int y : N) {
      const int w[2] = {x, y};
      if (!V.in_domain(w)) continue;
      int out = V.pair_at(x, y);
      if (out >= 0 && !in_sorted(N, out)) return false;
    }
    for (int g = 0; g < V.n; ++g) {
      int y = raw_conj(V, x, g);
      if (y >= 0 && !in_sorted(N, y)) return false;
    }
  }
  return true;
}

}  // namespace oracles
