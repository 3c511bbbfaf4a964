#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

namespace ploc {

enum class Status { Pass, Fail, Skip };

/// One verified statement. `id` names the check in the report grammar
/// ("LEMMA <id> PASS|FAIL|SKIP [witness=...] [bound=<k>]"). Failed checks
/// always carry a witness; `bound` records the word-length horizon that was
/// actually swept, so a PASS is never read as more than it is.
struct Check {
  std::string id;
  Status status = Status::Pass;
  std::string witness;
  std::vector<int> witness_key;  // for deterministic merge order
  int bound = -1;
  std::string note;
};

struct Report {
  std::vector<Check> checks;
  std::vector<std::pair<std::string, std::string>> meta;

  bool passed() const;
  bool failed() const;
  void add(Check c);
  void pass(const std::string& id, int bound = -1);
  void fail(const std::string& id, std::string witness, std::vector<int> key = {},
            int bound = -1);
  void skip(const std::string& id, std::string note);
  void set_meta(const std::string& key, const std::string& value);

  /// Combines another report line-by-line. Two checks with the same id
  /// collapse to one: FAIL beats PASS, and among failures the smallest
  /// witness key wins, so the result does not depend on worker order.
  void merge(const Report& other);
  void sort_lines();

  std::string text() const;
  std::string json() const;
};

std::string word_witness(std::span<const int> w);
std::string set_witness(const std::vector<int>& xs);

}  // namespace ploc
