#include "ploc/zoo.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace ploc {

namespace {

int index_of_perm(const FiniteGroup& G, const Perm& p) {
  std::string want = cycle_string(p);
  for (int i = 0; i < G.n; ++i)
    if (G.labels[i] == want) return i;
  throw std::logic_error("element not found: " + want);
}

/// Permutation of the 9 points of a 3x3 grid, point (a,b) at index 3a+b.
template <typename F>
Perm grid9(F f) {
  Perm p;
  p.img.resize(9);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      auto [na, nb] = f(a, b);
      p.img[3 * a + b] = 3 * na + nb;
    }
  return p;
}

/// Permutation of the 7 nonzero vectors of F_2^3, vector (a,b,c) at
/// index 4a+2b+c-1.
template <typename F>
Perm vec7(F f) {
  Perm p;
  p.img.resize(7);
  for (int x = 0; x < 7; ++x) {
    int v = x + 1;
    int a = (v >> 2) & 1, b = (v >> 1) & 1, c = v & 1;
    auto [na, nb, nc] = f(a, b, c);
    p.img[x] = (na << 2 | nb << 1 | nc) - 1;
  }
  return p;
}

std::vector<int> section_members(const FiniteGroup& G, const std::vector<int>& members,
                                 const std::vector<int>& positions) {
  (void)G;
  std::vector<int> out;
  out.reserve(positions.size());
  for (int i : positions) out.push_back(members[i]);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

NamedGroup named_group(const std::string& name) {
  NamedGroup out;
  if (name == "S3") {
    out.group = generate_group({parse_cycles("(1 2 3)", 3), parse_cycles("(1 2)", 3)});
    out.p = 3;
    out.sylow = sylow_subgroup(out.group, 3).members;
  } else if (name == "D8") {
    out.group = generate_group({parse_cycles("(1 2 3 4)", 4), parse_cycles("(2 4)", 4)});
    out.p = 2;
    out.sylow = sylow_subgroup(out.group, 2).members;
  } else if (name == "C6") {
    out.group = generate_group({parse_cycles("(1 2 3 4 5 6)", 6)});
    out.p = 3;
    out.sylow = sylow_subgroup(out.group, 3).members;
  } else if (name == "S4") {
    out.group = generate_group({parse_cycles("(1 2 3 4)", 4), parse_cycles("(1 2)", 4)});
    out.p = 2;
    out.sylow = sylow_subgroup(out.group, 2).members;
  } else if (name == "S3xC3") {
    out.group = generate_group({parse_cycles("(1 2 3)", 6), parse_cycles("(1 2)", 6),
                                parse_cycles("(4 5 6)", 6)});
    out.p = 3;
    out.sylow = sylow_subgroup(out.group, 3).members;
  } else if (name == "GL3_2") {
    Perm transvection = vec7([](int a, int b, int c) { return std::tuple{a ^ b, b, c}; });
    Perm cycle = vec7([](int a, int b, int c) { return std::tuple{c, a, b}; });
    out.group = generate_group({transvection, cycle});
    if (out.group.n != 168) throw std::logic_error("GL3_2 construction broke");
    out.p = 2;
    out.sylow = sylow_subgroup(out.group, 2).members;

    // The two proper overgroups of the Sylow subgroup.
    std::set<std::vector<int>> overs;
    for (int g = 0; g < out.group.n; ++g) {
      if (std::binary_search(out.sylow.begin(), out.sylow.end(), g)) continue;
      std::vector<int> seed = out.sylow;
      seed.push_back(g);
      std::vector<int> H = subgroup_closure(out.group, seed).members;
      if (static_cast<int>(H.size()) < out.group.n) overs.insert(std::move(H));
    }
    std::vector<std::vector<int>> maximal;
    for (const auto& H : overs) {
      bool top = true;
      for (const auto& K : overs)
        if (H != K && subset_sorted(H, K)) {
          top = false;
          break;
        }
      if (top) maximal.push_back(H);
    }
    std::sort(maximal.begin(), maximal.end());
    if (maximal.size() != 2) throw std::logic_error("expected two maximal overgroups");
    out.extras["M1"] = maximal[0];
    out.extras["M2"] = maximal[1];
    for (int k = 0; k < 2; ++k) {
      PartialGroupView full = full_group_view(out.group);
      FiniteGroup sec = view_section_group(full, maximal[k]);
      out.extras[k == 0 ? "P1" : "P2"] =
          section_members(out.group, maximal[k], p_core(sec, 2).members);
    }
  } else if (name == "O4plus2") {
    Perm t1 = grid9([](int a, int b) { return std::pair{(a + 1) % 3, b}; });
    Perm t2 = grid9([](int a, int b) { return std::pair{a, (b + 1) % 3}; });
    Perm r = grid9([](int a, int b) { return std::pair{b, (3 - a) % 3}; });
    Perm s = grid9([](int a, int b) { return std::pair{a, (3 - b) % 3}; });
    out.group = generate_group({t1, t2, r, s});
    if (out.group.n != 72) throw std::logic_error("O4plus2 construction broke");
    out.p = 2;
    out.sylow =
        subgroup_closure(out.group, {index_of_perm(out.group, r), index_of_perm(out.group, s)})
            .members;
    if (out.sylow.size() != 8) throw std::logic_error("point stabilizer is not a Sylow subgroup");
    out.extras["V"] = p_core(out.group, 3).members;
    if (out.extras["V"].size() != 9) throw std::logic_error("translation core broke");
  } else if (name == "C3xD8") {
    out.group = generate_group({parse_cycles("(1 2 3)", 7), parse_cycles("(4 5 6 7)", 7),
                                parse_cycles("(5 7)", 7)});
    if (out.group.n != 24) throw std::logic_error("C3xD8 construction broke");
    out.p = 2;
    out.sylow = subgroup_closure(out.group,
                                 {index_of_perm(out.group, parse_cycles("(4 5 6 7)", 7)),
                                  index_of_perm(out.group, parse_cycles("(5 7)", 7))})
                    .members;
    out.extras["C3"] = p_prime_core(out.group, 2).members;
  } else {
    throw std::invalid_argument("unknown group: " + name);
  }
  return out;
}

Instance zoo_instance(const std::string& name) {
  Instance inst;
  inst.name = name;
  if (name == "free1") {
    inst.view = free_one_generator();
    return inst;
  }
  auto colon = name.find(':');
  if (colon == std::string::npos) throw std::invalid_argument("unknown instance: " + name);
  const std::string base = name.substr(0, colon);
  const std::string mode = name.substr(colon + 1);

  NamedGroup g = named_group(base);
  Subgroup S{&g.group, g.sylow};
  SubgroupFamily delta;
  if (mode == "all")
    delta = all_nonidentity_delta(g.group, S);
  else if (base == "S3" && mode == "delta-C3")
    delta = delta_closure(g.group, S, {});
  else if (base == "GL3_2" && mode == "parabolic")
    delta = delta_closure(g.group, S, {g.extras.at("P1"), g.extras.at("P2")});
  else if (base == "C3xD8" && mode == "S-only")
    delta = delta_closure(g.group, S, {});
  else
    throw std::invalid_argument("unknown instance: " + name);

  inst.locality = locality_from_group(g.group, S, g.p, delta);

  std::map<std::string, int> by_label;
  for (int i = 0; i < inst.locality->n(); ++i)
    by_label[inst.locality->pg.labels[i]] = i;
  for (const auto& [key, members] : g.extras) {
    std::vector<int> mapped;
    bool whole = true;
    for (int x : members) {
      auto it = by_label.find(g.group.label(x));
      if (it == by_label.end()) {
        whole = false;
        break;
      }
      mapped.push_back(it->second);
    }
    if (!whole) continue;
    std::sort(mapped.begin(), mapped.end());
    inst.marks[key] = std::move(mapped);
  }
  return inst;
}

std::vector<std::string> zoo_list() {
  return {"free1",          "S3:delta-C3", "D8:all",       "O4plus2:all",
          "GL3_2:parabolic", "GL3_2:all",   "C3xD8:S-only"};
}

}  // namespace ploc
