#include "ploc/suite.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace ploc {

namespace {

void tag_failures(Report& rep, const std::string& what) {
  for (auto& c : rep.checks)
    if (c.status == Status::Fail) c.witness += " " + what;
}

/// Folds reports from runs over many subgroup choices. Within one id a
/// failure wins (first one, for determinism under the sorted run order),
/// then a pass, then a skip; a pass over a partly-gated family records
/// how many runs its hypothesis covered.
class Aggregate {
 public:
  void fold(const Report& rep) {
    for (const auto& c : rep.checks) {
      auto it = slots_.find(c.id);
      if (it == slots_.end()) {
        order_.push_back(c.id);
        it = slots_.emplace(c.id, Slot{}).first;
      }
      Slot& s = it->second;
      if (c.status == Status::Pass) ++s.passes;
      if (c.status == Status::Skip) ++s.skips;
      if (!s.have) {
        s.check = c;
        s.have = true;
        continue;
      }
      if (rank(c.status) > rank(s.check.status)) {
        s.check = c;
      } else if (c.status == Status::Pass && s.check.status == Status::Pass) {
        s.check.bound = std::max(s.check.bound, c.bound);
      }
    }
  }

  void emit(Report& rep) const {
    for (const auto& id : order_) {
      const Slot& s = slots_.at(id);
      Check c = s.check;
      if (c.status == Status::Pass && s.skips > 0) {
        if (!c.note.empty()) c.note += "; ";
        c.note += "hypothesis met for " + std::to_string(s.passes) + " of " +
                  std::to_string(s.passes + s.skips) + " runs";
      }
      rep.add(c);
    }
  }

 private:
  struct Slot {
    Check check;
    int passes = 0, skips = 0;
    bool have = false;
  };
  static int rank(Status s) {
    return s == Status::Fail ? 2 : (s == Status::Pass ? 1 : 0);
  }
  std::vector<std::string> order_;
  std::map<std::string, Slot> slots_;
};

/// Candidate subgroups K for the generation sweep: closures of single
/// elements of C_L(T), plus the closure of the whole centralizer. The
/// gates inside verify_generated sort out which ones qualify.
std::vector<std::vector<int>> k_candidates(const Locality& loc, const PartialNormal& N) {
  std::set<std::vector<int>> out;
  out.insert({loc.pg.identity});
  auto cent = centralizer_in_l(loc, N.T);
  for (int c : cent) {
    if (out.size() >= 24) break;
    out.insert(generated_partial_subgroup(loc.pg, {c}).members);
  }
  out.insert(generated_partial_subgroup(loc.pg, cent).members);
  return {out.begin(), out.end()};
}

}  // namespace

bool valid_suite(const std::string& name) {
  return name == "axioms" || name == "locality" || name == "normal" ||
         name == "quotient" || name == "products" || name == "all";
}

Report run_suite(const Loaded& obj, const RunConfig& cfg) {
  if (!valid_suite(cfg.suite)) throw std::invalid_argument("unknown suite: " + cfg.suite);
  if (cfg.bound < 2) throw std::invalid_argument("bound must be at least 2");
  if (cfg.workers < 1) throw std::invalid_argument("workers must be positive");

  const bool all = cfg.suite == "all";
  auto selected = [&](const char* name) { return all || cfg.suite == name; };

  Report rep;
  const PartialGroupView& V = obj.pg();
  rep.set_meta("input", cfg.input);
  rep.set_meta("suite", cfg.suite);
  rep.set_meta("bound", std::to_string(cfg.bound));
  rep.set_meta("elements", std::to_string(V.n));
  rep.set_meta("oracle", V.oracle->tag());
  if (obj.is_locality()) {
    const Locality& loc = *obj.locality;
    rep.set_meta("p", std::to_string(loc.p));
    rep.set_meta("s_size", std::to_string(loc.S.size()));
    rep.set_meta("delta_size", std::to_string(loc.delta.size()));
  }

  if (selected("axioms")) rep.merge(verify_partial_group(V, cfg.bound, cfg.workers));

  if (!obj.is_locality()) {
    for (const char* name : {"locality", "normal", "quotient", "products"})
      if (selected(name)) rep.skip(std::string("suite:") + name, "input is not a locality");
    rep.sort_lines();
    return rep;
  }
  const Locality& loc = *obj.locality;

  if (selected("locality")) {
    rep.merge(verify_objectivity(loc, cfg.bound, cfg.workers));
    rep.merge(verify_locality(loc));
  }

  std::vector<PartialNormal> normals;
  if (selected("normal") || selected("quotient") || selected("products")) {
    normals = all_partial_normal_subgroups(loc);
    rep.set_meta("normal_subgroups", std::to_string(normals.size()));
  }

  if (selected("normal")) {
    Aggregate agg;
    for (const PartialNormal& N : normals) {
      Report r = verify_normal_theory(loc, N, cfg.bound);
      tag_failures(r, "N=" + set_witness(N.members));
      agg.fold(r);
    }
    Report out;
    agg.emit(out);
    rep.merge(out);
  }

  if (selected("quotient")) {
    Aggregate agg;
    for (const PartialNormal& N : normals) {
      try {
        Quotient q = quotient_locality(loc, N);
        Report r = verify_quotient(q, N, cfg.bound);
        r.merge(verify_correspondence(q, N));
        tag_failures(r, "N=" + set_witness(N.members));
        agg.fold(r);
      } catch (const std::exception& e) {
        Report r;
        r.fail("4.3.a", std::string("quotient construction broke: ") + e.what() +
                            " N=" + set_witness(N.members));
        agg.fold(r);
      }
    }
    for (const PartialNormal& N : normals) {
      for (const PartialNormal& M : normals) {
        if (!subset_sorted(N.members, M.members)) continue;
        const std::string pairtag =
            "N=" + set_witness(N.members) + " M=" + set_witness(M.members);
        try {
          Quotient qm = quotient_locality(loc, M);
          FirstIso fi = first_isomorphism(loc, *qm.bar, qm.cosets.block_of, N);
          Report r = verify_first_isomorphism(fi, qm.cosets.block_of, cfg.bound);
          tag_failures(r, pairtag);
          agg.fold(r);
        } catch (const std::exception& e) {
          Report r;
          r.fail("4.6.a", std::string("factorization broke: ") + e.what() + " " + pairtag);
          agg.fold(r);
        }
      }
    }
    agg.fold(verify_theta(loc, cfg.bound));
    Report out;
    agg.emit(out);
    rep.merge(out);
  }

  if (selected("products")) {
    Aggregate agg;
    for (const PartialNormal& M : normals) {
      for (const PartialNormal& N : normals) {
        Report r = verify_products(loc, M, N, cfg.bound);
        tag_failures(r, "M=" + set_witness(M.members) + " N=" + set_witness(N.members));
        agg.fold(r);
      }
    }
    for (const PartialNormal& N : normals) {
      for (const auto& K : k_candidates(loc, N)) {
        Report r = verify_generated(loc, N, K, cfg.bound);
        tag_failures(r, "N=" + set_witness(N.members) + " K=" + set_witness(K));
        agg.fold(r);
      }
    }
    Report out;
    agg.emit(out);
    rep.merge(out);
  }

  rep.sort_lines();
  return rep;
}

}  // namespace ploc
