#include "ploc/report.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "json.hpp"

namespace ploc {

bool Report::passed() const { return !failed(); }

bool Report::failed() const {
  return std::any_of(checks.begin(), checks.end(),
                     [](const Check& c) { return c.status == Status::Fail; });
}

void Report::add(Check c) { checks.push_back(std::move(c)); }

void Report::pass(const std::string& id, int bound) {
  Check c;
  c.id = id;
  c.status = Status::Pass;
  c.bound = bound;
  checks.push_back(std::move(c));
}

void Report::fail(const std::string& id, std::string witness, std::vector<int> key,
                  int bound) {
  Check c;
  c.id = id;
  c.status = Status::Fail;
  c.witness = std::move(witness);
  c.witness_key = std::move(key);
  c.bound = bound;
  checks.push_back(std::move(c));
}

void Report::skip(const std::string& id, std::string note) {
  Check c;
  c.id = id;
  c.status = Status::Skip;
  c.note = std::move(note);
  checks.push_back(std::move(c));
}

void Report::set_meta(const std::string& key, const std::string& value) {
  for (auto& kv : meta) {
    if (kv.first == key) {
      kv.second = value;
      return;
    }
  }
  meta.emplace_back(key, value);
}

namespace {

// FAIL dominates SKIP dominates PASS; among two FAILs the smaller witness
// key (then the smaller rendered witness) is kept.
bool worse(const Check& a, const Check& b) {
  auto rank = [](Status s) {
    return s == Status::Fail ? 2 : (s == Status::Skip ? 1 : 0);
  };
  if (rank(a.status) != rank(b.status)) return rank(a.status) > rank(b.status);
  if (a.status == Status::Fail) {
    if (a.witness_key != b.witness_key) return a.witness_key < b.witness_key;
    return a.witness < b.witness;
  }
  return false;
}

}  // namespace

void Report::merge(const Report& other) {
  for (const auto& kv : other.meta) set_meta(kv.first, kv.second);
  for (const auto& oc : other.checks) {
    bool found = false;
    for (auto& c : checks) {
      if (c.id == oc.id) {
        found = true;
        if (worse(oc, c)) c = oc;
        if (c.status == Status::Pass && oc.bound > c.bound) c.bound = oc.bound;
        break;
      }
    }
    if (!found) checks.push_back(oc);
  }
}

void Report::sort_lines() {
  std::stable_sort(checks.begin(), checks.end(),
                   [](const Check& a, const Check& b) { return a.id < b.id; });
}

std::string Report::text() const {
  std::ostringstream os;
  for (const auto& kv : meta) os << "# " << kv.first << " = " << kv.second << "\n";
  for (const auto& c : checks) {
    os << "LEMMA " << c.id << ' ';
    switch (c.status) {
      case Status::Pass: os << "PASS"; break;
      case Status::Fail: os << "FAIL"; break;
      case Status::Skip: os << "SKIP"; break;
    }
    if (!c.witness.empty()) os << " witness=" << c.witness;
    if (c.bound >= 0) os << " bound=" << c.bound;
    if (!c.note.empty()) os << " note=\"" << c.note << "\"";
    os << "\n";
  }
  return os.str();
}

std::string Report::json() const {
  nlohmann::ordered_json j;
  j["meta"] = nlohmann::ordered_json::object();
  for (const auto& kv : meta) j["meta"][kv.first] = kv.second;
  j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : checks) {
    nlohmann::ordered_json jc;
    jc["id"] = c.id;
    jc["status"] = c.status == Status::Pass   ? "PASS"
                   : c.status == Status::Fail ? "FAIL"
                                              : "SKIP";
    if (!c.witness.empty()) jc["witness"] = c.witness;
    if (c.bound >= 0) jc["bound"] = c.bound;
    if (!c.note.empty()) jc["note"] = c.note;
    j["checks"].push_back(jc);
  }
  j["passed"] = passed();
  return j.dump(2) + "\n";
}

std::string word_witness(std::span<const int> w) {
  std::string s = "[";
  for (size_t i = 0; i < w.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(w[i]);
  }
  s += ']';
  return s;
}

std::string set_witness(const std::vector<int>& xs) {
  std::string s = "{";
  for (size_t i = 0; i < xs.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(xs[i]);
  }
  s += '}';
  return s;
}

}  // namespace ploc
