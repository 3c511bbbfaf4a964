#pragma once

#include <string>
#include <vector>

namespace ploc {

/// Permutation of {0, ..., degree-1}, stored as the image vector.
/// Points act on the right: (x)^(a*b) = ((x)^a)^b.
struct Perm {
  std::vector<int> img;

  int degree() const { return static_cast<int>(img.size()); }
  int at(int x) const { return img[x]; }
  bool is_identity() const;

  static Perm identity(int degree);
  friend Perm operator*(const Perm& a, const Perm& b);
  Perm inverse() const;
  bool operator==(const Perm&) const = default;
  bool operator<(const Perm& o) const { return img < o.img; }
};

/// Parses one permutation in cycle notation with 1-based points,
/// e.g. "(1 2 3)(4 5)". "()" or an empty string is the identity.
/// Points may be separated by spaces or commas. Throws on malformed
/// input or repeated points.
Perm parse_cycles(const std::string& text, int degree);

/// Degree needed to hold every point mentioned in `text` (0 if none).
int max_point(const std::string& text);

/// Renders a permutation back to cycle notation with 1-based points.
std::string cycle_string(const Perm& p);

}  // namespace ploc
