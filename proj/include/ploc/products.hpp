#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ploc/normal.hpp"

namespace ploc {

/// Product MN of two partial normal subgroups under the mutual
/// normalization hypothesis: M normalizes S cap N and N normalizes
/// S cap M. When a side fails, `refusal` names it and the product is
/// not computed.
struct ProductResult {
  bool applicable = false;
  std::string refusal;
  std::vector<int> members;  // MN = { Pi(x,y) : (x,y) in D }, sorted
  std::optional<PartialNormal> normal;
};

ProductResult product_normal(const Locality& loc, const PartialNormal& M,
                             const PartialNormal& N);

/// Splitting of g in MN as a domain pair (x,y) with x in M, y in N,
/// g = xy and S_g = S_(x,y). Returns the lexicographically smallest such
/// pair, or (-1,-1) when none exists.
std::pair<int, int> split_product_element(const Locality& loc, const PartialNormal& M,
                                          const PartialNormal& N, int g);

/// When M cap N lies inside S, both normalization conditions hold on
/// their own and the product goes through. `applicable` is false when
/// the intersection escapes S.
struct DisjointnessResult {
  bool applicable = false;
  std::string note;
  ProductResult product;
};

DisjointnessResult disjointness_criterion(const Locality& loc, const PartialNormal& M,
                                          const PartialNormal& N);

/// <K,N> for K a partial normal subgroup of N_L(T) centralizing T,
/// gated on every object normalizer having characteristic p. The
/// returned members are the closure of K cup N.
struct GeneratedResult {
  bool hypothesis_met = false;
  std::string refusal;
  std::vector<int> members;
  std::optional<PartialNormal> normal;
};

GeneratedResult generated_with_normal(const Locality& loc, const PartialNormal& N,
                                      const std::vector<int>& K);

/// Product sweep for one ordered pair (M,N): the normalization gate and
/// the product identities, elementwise splitting, and the disjointness
/// criterion. Check ids 5.1 through 5.4.
Report verify_products(const Locality& loc, const PartialNormal& M,
                       const PartialNormal& N, int max_len = 3);

/// Sweep for one K normal in N_L(T). Check ids under 5.5.
Report verify_generated(const Locality& loc, const PartialNormal& N,
                        const std::vector<int>& K, int max_len = 3);

}  // namespace ploc
