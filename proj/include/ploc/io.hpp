#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "ploc/normal.hpp"

namespace ploc {

/// Input rejection carrying the offending line number (0 when the
/// problem is not tied to a line, e.g. a missing file).
struct ParseError : std::runtime_error {
  int line = 0;
  ParseError(int line, const std::string& msg);
};

/// What load() produced: a locality when the input carries a delta
/// oracle, names a locality instance, or is a group description file;
/// otherwise a bare view.
struct Loaded {
  std::optional<Locality> locality;
  std::optional<PartialGroupView> view;

  bool is_locality() const { return locality.has_value(); }
  const PartialGroupView& pg() const { return locality ? locality->pg : *view; }
};

/// Reads "example:<name>", an explicit partial-group file, or a group
/// description file (group block, prime, sylow, delta seeds).
Loaded load(const std::string& input);

/// Same grammar as load() minus the example: names, from memory.
Loaded parse_input(const std::string& text);

std::string save_text(const PartialGroupView& V);
std::string save_text(const Locality& loc);
std::string save_text(const Loaded& obj);

/// Writes save_text. Round trips: load(save(x)) is elementwise identical
/// and a second save is byte-identical to the first.
void save(const Loaded& obj, const std::string& path);

/// "all" (the whole of L) or "gen:<indices>" (comma or space separated,
/// partial normal closure of the listed elements).
PartialNormal parse_normal_spec(const Locality& loc, const std::string& spec);

}  // namespace ploc
