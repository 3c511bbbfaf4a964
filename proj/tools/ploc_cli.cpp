#include <chrono>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>

#include "CLI11.hpp"
#include "ploc/io.hpp"
#include "ploc/suite.hpp"

namespace {

void write_out(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  os << text;
  if (!os) throw std::runtime_error("write failed: " + path);
}

const ploc::Locality& need_locality(const ploc::Loaded& obj, const std::string& input) {
  if (!obj.is_locality()) throw std::runtime_error(input + " is not a locality");
  return *obj.locality;
}

// Exit 0 when every check passed, 1 otherwise. Timing goes only to a
// terminal text run, so files and JSON stay byte-deterministic.
int run_and_emit(const ploc::RunConfig& cfg, bool json, const std::string& out) {
  const auto t0 = std::chrono::steady_clock::now();
  ploc::Loaded obj = ploc::load(cfg.input);
  ploc::Report rep = ploc::run_suite(obj, cfg);
  const auto ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0)
          .count();
  std::string text = json ? rep.json() : rep.text();
  if (!json && out.empty()) text += "--- timing ---\nwall_ms " + std::to_string(ms) + "\n";
  write_out(text, out);
  return rep.failed() ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite partial groups and localities"};
  app.require_subcommand(1);

  std::string input;
  std::string out;
  std::string suite = "all";
  std::string mspec;
  std::string nspec;
  std::string normal_spec;
  int bound = 3;
  int workers = 1;
  bool json = false;

  auto* build = app.add_subcommand("build", "load an input and write it back canonically");
  build->add_option("input", input, "path or example:<name>")->required();
  build->add_option("-o,--out", out, "output file")->required();

  auto* verify = app.add_subcommand("verify", "run one check suite");
  verify->add_option("input", input, "path or example:<name>")->required();
  verify->add_option("-s,--suite", suite, "axioms|locality|normal|quotient|products|all")
      ->check(CLI::IsMember({"axioms", "locality", "normal", "quotient", "products", "all"}));
  verify->add_option("-b,--bound", bound, "word length bound")->check(CLI::Range(2, 8));
  verify->add_option("-w,--workers", workers, "worker threads")->check(CLI::Range(1, 64));
  verify->add_flag("--json", json, "emit the report as JSON");
  verify->add_option("-o,--out", out, "write the report to a file");

  auto* report = app.add_subcommand("report", "run every suite");
  report->add_option("input", input, "path or example:<name>")->required();
  report->add_option("-b,--bound", bound, "word length bound")->check(CLI::Range(2, 8));
  report->add_option("-w,--workers", workers, "worker threads")->check(CLI::Range(1, 64));
  report->add_flag("--json", json, "emit the report as JSON");
  report->add_option("-o,--out", out, "write the report to a file");

  auto* quotient = app.add_subcommand("quotient", "build L/N and emit it");
  quotient->add_option("input", input, "path or example:<name>")->required();
  quotient->add_option("--normal", normal_spec, "all or gen:<indices>")->required();
  quotient->add_option("-o,--out", out, "output file");

  auto* normals = app.add_subcommand("normals", "enumerate partial normal subgroups");
  normals->add_option("input", input, "path or example:<name>")->required();

  auto* product = app.add_subcommand("product", "check the product of two normal subgroups");
  product->add_option("input", input, "path or example:<name>")->required();
  product->add_option("--m", mspec, "all or gen:<indices>")->required();
  product->add_option("--n", nspec, "all or gen:<indices>")->required();
  product->add_option("-b,--bound", bound, "word length bound")->check(CLI::Range(2, 8));
  product->add_flag("--json", json, "emit the report as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*build) {
      ploc::save(ploc::load(input), out);
      return 0;
    }
    if (*verify) return run_and_emit({input, suite, bound, workers}, json, out);
    if (*report) return run_and_emit({input, "all", bound, workers}, json, out);
    if (*quotient) {
      ploc::Loaded obj = ploc::load(input);
      const ploc::Locality& loc = need_locality(obj, input);
      ploc::PartialNormal N = ploc::parse_normal_spec(loc, normal_spec);
      ploc::Quotient q = ploc::quotient_locality(loc, N);
      write_out(ploc::save_text(*q.bar), out);
      return 0;
    }
    if (*normals) {
      ploc::Loaded obj = ploc::load(input);
      const ploc::Locality& loc = need_locality(obj, input);
      auto all = ploc::all_partial_normal_subgroups(loc);
      std::string text;
      for (size_t i = 0; i < all.size(); ++i) {
        text += "normal " + std::to_string(i) + " size=" + std::to_string(all[i].size()) +
                " t_size=" + std::to_string(all[i].T.size()) +
                " members=" + ploc::set_witness(all[i].members) + "\n";
      }
      write_out(text, "");
      return 0;
    }
    if (*product) {
      ploc::Loaded obj = ploc::load(input);
      const ploc::Locality& loc = need_locality(obj, input);
      ploc::PartialNormal M = ploc::parse_normal_spec(loc, mspec);
      ploc::PartialNormal N = ploc::parse_normal_spec(loc, nspec);
      ploc::Report rep = ploc::verify_products(loc, M, N, bound);
      write_out(json ? rep.json() : rep.text(), "");
      return rep.failed() ? 1 : 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
