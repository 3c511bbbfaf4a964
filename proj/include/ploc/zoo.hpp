#pragma once

#include <map>
#include <optional>
#include <string>

#include "ploc/locality.hpp"

namespace ploc {

/// A permutation group with a chosen prime, a Sylow p-subgroup, and any
/// distinguished subgroups the instance definitions refer to.
struct NamedGroup {
  FiniteGroup group;
  int p = 2;
  std::vector<int> sylow;
  std::map<std::string, std::vector<int>> extras;
};

/// Known names: S3, D8, C6, S4, S3xC3, GL3_2 (extras M1, M2, P1, P2),
/// O4plus2 (extra V), C3xD8 (extra C3).
NamedGroup named_group(const std::string& name);

/// A built-in example: either a locality or a bare partial group view,
/// plus marked element sets (in instance indices) for the distinguished
/// subgroups of the underlying group.
struct Instance {
  std::string name;
  std::optional<Locality> locality;
  std::optional<PartialGroupView> view;
  std::map<std::string, std::vector<int>> marks;

  const PartialGroupView& pg() const { return locality ? locality->pg : *view; }
};

/// Built-in instances: free1, S3:delta-C3, D8:all, O4plus2:all,
/// GL3_2:parabolic, GL3_2:all, C3xD8:S-only.
Instance zoo_instance(const std::string& name);
std::vector<std::string> zoo_list();

}  // namespace ploc
