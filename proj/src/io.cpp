#include "ploc/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

#include "ploc/zoo.hpp"

namespace ploc {

ParseError::ParseError(int line_, const std::string& msg)
    : std::runtime_error(line_ > 0 ? "line " + std::to_string(line_) + ": " + msg : msg),
      line(line_) {}

namespace {

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == '\n') {
      if (!cur.empty() && cur.back() == '\r') cur.pop_back();
      out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) {
    if (cur.back() == '\r') cur.pop_back();
    out.push_back(std::move(cur));
  }
  return out;
}

std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  std::string t;
  while (is >> t) out.push_back(t);
  return out;
}

bool blank_or_comment(const std::string& line) {
  for (char c : line) {
    if (c == '#') return true;
    if (c != ' ' && c != '\t') return false;
  }
  return true;
}

int to_int(const std::string& t, int line) {
  int v = 0;
  auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc{} || p != t.data() + t.size())
    throw ParseError(line, "expected an integer, got \"" + t + "\"");
  return v;
}

/// Accepts "key=5" or a bare "5".
int keyed_int(const std::string& t, const std::string& key, int line) {
  if (t.rfind(key, 0) == 0) return to_int(t.substr(key.size()), line);
  return to_int(t, line);
}

int element_index(const std::string& t, int n, int line) {
  int v = to_int(t, line);
  if (v < 0 || v >= n)
    throw ParseError(line, "element index " + std::to_string(v) + " out of range");
  return v;
}

const std::string& need(const std::vector<std::string>& toks, size_t i, int line) {
  if (i >= toks.size()) throw ParseError(line, "line is missing a field");
  return toks[i];
}

// ---- explicit partial-group format -------------------------------------

Loaded parse_explicit(const std::vector<std::string>& lines) {
  int n = -1;
  int identity = -1;
  std::vector<int> inv;
  std::vector<std::string> labels;
  std::vector<int> pair;
  std::string oracle_kind;
  int table_maxlen = -1;
  std::vector<Word> words;
  int p = -1;
  std::vector<int> sylow;
  bool saw_sylow = false;
  std::map<int, std::pair<std::vector<int>, int>> steps;  // g -> (row, line)
  std::vector<std::vector<int>> delta_rows;

  auto need_header = [&](int ln) {
    if (n < 0) throw ParseError(ln, "partialgroup header must come first");
  };

  for (size_t idx = 0; idx < lines.size(); ++idx) {
    const std::string& line = lines[idx];
    const int ln = static_cast<int>(idx) + 1;
    if (blank_or_comment(line)) continue;

    if (line.rfind("label", 0) == 0 &&
        (line.size() == 5 || line[5] == ' ' || line[5] == '\t')) {
      need_header(ln);
      std::istringstream is(line);
      std::string kw;
      int i = 0;
      is >> kw >> i;
      if (!is && kw == "label") throw ParseError(ln, "label needs an element index");
      if (i < 0 || i >= n)
        throw ParseError(ln, "element index " + std::to_string(i) + " out of range");
      std::string rest;
      std::getline(is, rest);
      size_t s = rest.find_first_not_of(" \t");
      labels[static_cast<size_t>(i)] = s == std::string::npos ? "" : rest.substr(s);
      continue;
    }

    auto toks = split_ws(line);
    const std::string& kw = toks[0];
    if (kw == "partialgroup") {
      if (n >= 0) throw ParseError(ln, "second partialgroup header");
      n = keyed_int(need(toks, 1, ln), "n=", ln);
      if (n <= 0) throw ParseError(ln, "element count must be positive");
      inv.assign(static_cast<size_t>(n), -1);
      labels.assign(static_cast<size_t>(n), "");
      pair.assign(static_cast<size_t>(n) * static_cast<size_t>(n), -1);
    } else if (kw == "identity") {
      need_header(ln);
      identity = element_index(need(toks, 1, ln), n, ln);
    } else if (kw == "inv") {
      need_header(ln);
      int i = element_index(need(toks, 1, ln), n, ln);
      int j = element_index(need(toks, 2, ln), n, ln);
      inv[static_cast<size_t>(i)] = j;
    } else if (kw == "pair") {
      need_header(ln);
      int a = element_index(need(toks, 1, ln), n, ln);
      int b = element_index(need(toks, 2, ln), n, ln);
      int v = element_index(need(toks, 3, ln), n, ln);
      pair[static_cast<size_t>(a) * n + b] = v;
    } else if (kw == "oracle") {
      need_header(ln);
      oracle_kind = need(toks, 1, ln);
      if (oracle_kind == "table")
        table_maxlen = keyed_int(need(toks, 2, ln), "maxlen=", ln);
      else if (oracle_kind != "full" && oracle_kind != "free1" && oracle_kind != "delta")
        throw ParseError(ln, "unknown oracle \"" + oracle_kind + "\"");
    } else if (kw == "word") {
      need_header(ln);
      Word w;
      for (size_t i = 1; i < toks.size(); ++i) w.push_back(element_index(toks[i], n, ln));
      words.push_back(std::move(w));
    } else if (kw == "prime") {
      p = keyed_int(need(toks, 1, ln), "p=", ln);
      if (p < 2) throw ParseError(ln, "prime must be at least 2");
    } else if (kw == "sylow") {
      need_header(ln);
      saw_sylow = true;
      for (size_t i = 1; i < toks.size(); ++i)
        sylow.push_back(element_index(toks[i], n, ln));
      std::sort(sylow.begin(), sylow.end());
      sylow.erase(std::unique(sylow.begin(), sylow.end()), sylow.end());
    } else if (kw == "step") {
      need_header(ln);
      int g = element_index(need(toks, 1, ln), n, ln);
      std::vector<int> row;
      for (size_t i = 2; i < toks.size(); ++i) row.push_back(to_int(toks[i], ln));
      steps[g] = {std::move(row), ln};
    } else if (kw == "delta") {
      need_header(ln);
      std::vector<int> row;
      for (size_t i = 1; i < toks.size(); ++i) row.push_back(element_index(toks[i], n, ln));
      std::sort(row.begin(), row.end());
      row.erase(std::unique(row.begin(), row.end()), row.end());
      delta_rows.push_back(std::move(row));
    } else {
      throw ParseError(ln, "unknown keyword \"" + kw + "\"");
    }
  }

  if (n < 0) throw ParseError(0, "missing partialgroup header");
  if (identity < 0) throw ParseError(0, "missing identity line");
  for (int i = 0; i < n; ++i)
    if (inv[static_cast<size_t>(i)] < 0)
      throw ParseError(0, "element " + std::to_string(i) + " has no inv line");

  PartialGroupView V;
  V.n = n;
  V.identity = identity;
  V.inv = std::move(inv);
  V.pair = std::move(pair);
  V.labels = std::move(labels);

  if (oracle_kind.empty()) throw ParseError(0, "missing oracle line");
  if (oracle_kind == "full") {
    V.oracle = std::make_shared<FullOracle>();
  } else if (oracle_kind == "free1") {
    V.oracle = std::make_shared<Free1Oracle>();
  } else if (oracle_kind == "table") {
    if (table_maxlen < 2) throw ParseError(0, "table oracle needs maxlen >= 2");
    V.oracle = std::make_shared<TableOracle>(n, table_maxlen, std::move(words));
  } else {
    if (p < 2) throw ParseError(0, "delta oracle needs a prime line");
    if (!saw_sylow || sylow.empty()) throw ParseError(0, "delta oracle needs a sylow line");
    std::vector<std::vector<int>> step_rows(static_cast<size_t>(n));
    for (int g = 0; g < n; ++g) {
      auto it = steps.find(g);
      if (it == steps.end())
        throw ParseError(0, "missing step line for element " + std::to_string(g));
      if (it->second.first.size() != sylow.size())
        throw ParseError(it->second.second, "step row width differs from the sylow line");
      for (int v : it->second.first)
        if (v < -1 || v >= static_cast<int>(sylow.size()))
          throw ParseError(it->second.second, "step entry out of range");
      step_rows[static_cast<size_t>(g)] = std::move(it->second.first);
    }
    if (delta_rows.empty()) throw ParseError(0, "delta oracle needs delta lines");
    SubgroupFamily fam;
    for (auto& row : delta_rows) fam.insert(std::move(row));
    V.oracle = std::make_shared<ChainOracle>(n, sylow, fam, std::move(step_rows));
    Loaded out;
    out.locality = make_locality(std::move(V), p, std::move(sylow), std::move(fam));
    return out;
  }

  V.validate();
  Loaded out;
  out.view = std::move(V);
  return out;
}

// ---- group description format -------------------------------------------

int find_element(const FiniteGroup& G, const Perm& q, int line) {
  std::string want = cycle_string(q);
  for (int i = 0; i < G.n; ++i)
    if (G.labels[static_cast<size_t>(i)] == want) return i;
  throw ParseError(line, "permutation " + want + " is not in the generated group");
}

/// Generators on one line, separated by ';'.
std::vector<int> parse_generator_list(const FiniteGroup& G, const std::string& text,
                                      int degree, int line) {
  std::vector<int> out;
  size_t start = 0;
  while (start <= text.size()) {
    size_t semi = text.find(';', start);
    std::string part = text.substr(start, semi == std::string::npos ? semi : semi - start);
    size_t a = part.find_first_not_of(" \t");
    if (a != std::string::npos) {
      size_t b = part.find_last_not_of(" \t");
      part = part.substr(a, b - a + 1);
      Perm q;
      try {
        q = parse_cycles(part, degree);
      } catch (const std::exception& e) {
        throw ParseError(line, e.what());
      }
      out.push_back(find_element(G, q, line));
    }
    if (semi == std::string::npos) break;
    start = semi + 1;
  }
  if (out.empty()) throw ParseError(line, "empty generator list");
  return out;
}

Loaded parse_description(const std::vector<std::string>& lines) {
  std::vector<std::pair<std::string, int>> gen_lines;
  std::string sylow_spec = "auto";
  int sylow_line = 0;
  std::string delta_mode;
  std::vector<std::pair<std::string, int>> seed_lines;
  int p = -1;

  size_t idx = 0;
  auto block = [&](std::vector<std::pair<std::string, int>>& into) {
    int opened = static_cast<int>(idx) + 1;
    ++idx;
    while (idx < lines.size()) {
      const std::string& line = lines[idx];
      const int ln = static_cast<int>(idx) + 1;
      ++idx;
      if (blank_or_comment(line)) continue;
      auto toks = split_ws(line);
      if (toks.size() == 1 && toks[0] == "end") return;
      into.emplace_back(line, ln);
    }
    throw ParseError(opened, "block is never closed with \"end\"");
  };

  while (idx < lines.size()) {
    const std::string& line = lines[idx];
    const int ln = static_cast<int>(idx) + 1;
    if (blank_or_comment(line)) {
      ++idx;
      continue;
    }
    auto toks = split_ws(line);
    const std::string& kw = toks[0];
    if (kw == "group") {
      block(gen_lines);
    } else if (kw == "prime") {
      p = keyed_int(need(toks, 1, ln), "p=", ln);
      if (p < 2) throw ParseError(ln, "prime must be at least 2");
      ++idx;
    } else if (kw == "sylow") {
      size_t at = line.find("sylow");
      sylow_spec = line.substr(at + 5);
      size_t a = sylow_spec.find_first_not_of(" \t");
      sylow_spec = a == std::string::npos ? "" : sylow_spec.substr(a);
      if (sylow_spec.empty()) throw ParseError(ln, "sylow needs auto or generators");
      sylow_line = ln;
      ++idx;
    } else if (kw == "delta") {
      const std::string& mode = need(toks, 1, ln);
      if (mode == "seed") {
        delta_mode = "seed";
        block(seed_lines);
      } else if (mode == "all-nonidentity") {
        delta_mode = "all-nonidentity";
        ++idx;
      } else {
        throw ParseError(ln, "delta must be \"seed\" or \"all-nonidentity\"");
      }
    } else {
      throw ParseError(ln, "unknown keyword \"" + kw + "\"");
    }
  }

  if (gen_lines.empty()) throw ParseError(0, "description needs a group block");
  if (p < 2) throw ParseError(0, "description needs a prime line");
  if (delta_mode.empty()) throw ParseError(0, "description needs a delta section");

  int degree = 0;
  for (const auto& [text, ln] : gen_lines) degree = std::max(degree, max_point(text));
  if (degree == 0) throw ParseError(gen_lines[0].second, "generators move no points");

  std::vector<Perm> gens;
  for (const auto& [text, ln] : gen_lines) {
    try {
      gens.push_back(parse_cycles(text, degree));
    } catch (const std::exception& e) {
      throw ParseError(ln, e.what());
    }
  }
  FiniteGroup G = generate_group(gens);

  std::vector<int> smembers;
  if (sylow_spec == "auto") {
    smembers = sylow_subgroup(G, p).members;
  } else {
    auto sgens = parse_generator_list(G, sylow_spec, degree, sylow_line);
    smembers = subgroup_closure(G, sgens).members;
  }
  Subgroup S{&G, smembers};

  SubgroupFamily fam;
  if (delta_mode == "all-nonidentity") {
    fam = all_nonidentity_delta(G, S);
  } else {
    std::vector<std::vector<int>> seeds;
    for (const auto& [text, ln] : seed_lines) {
      auto sgens = parse_generator_list(G, text, degree, ln);
      seeds.push_back(subgroup_closure(G, sgens).members);
    }
    fam = delta_closure(G, S, seeds);
  }

  Loaded out;
  out.locality = locality_from_group(G, S, p, fam);
  return out;
}

}  // namespace

Loaded parse_input(const std::string& text) {
  auto lines = split_lines(text);
  for (size_t idx = 0; idx < lines.size(); ++idx) {
    if (blank_or_comment(lines[idx])) continue;
    auto toks = split_ws(lines[idx]);
    if (toks[0] == "partialgroup") return parse_explicit(lines);
    if (toks[0] == "group") return parse_description(lines);
    throw ParseError(static_cast<int>(idx) + 1, "unknown header \"" + toks[0] + "\"");
  }
  throw ParseError(0, "empty input");
}

Loaded load(const std::string& input) {
  if (input.rfind("example:", 0) == 0) {
    Instance inst = zoo_instance(input.substr(8));
    Loaded out;
    if (inst.locality)
      out.locality = std::move(inst.locality);
    else
      out.view = std::move(inst.view);
    return out;
  }
  std::ifstream f(input, std::ios::binary);
  if (!f) throw ParseError(0, "cannot open " + input);
  std::ostringstream buf;
  buf << f.rdbuf();
  return parse_input(buf.str());
}

namespace {

void emit_tables(std::ostringstream& os, const PartialGroupView& V) {
  os << "partialgroup n=" << V.n << "\n";
  os << "identity " << V.identity << "\n";
  for (int i = 0; i < V.n; ++i) os << "inv " << i << ' ' << V.inv[static_cast<size_t>(i)] << "\n";
  for (int i = 0; i < V.n; ++i) {
    std::string l = V.label(i);
    os << "label " << i;
    if (!l.empty()) os << ' ' << l;
    os << "\n";
  }
  for (int a = 0; a < V.n; ++a)
    for (int b = 0; b < V.n; ++b)
      if (V.pair_at(a, b) >= 0)
        os << "pair " << a << ' ' << b << ' ' << V.pair_at(a, b) << "\n";
}

void emit_words(std::ostringstream& os, const std::vector<Word>& words) {
  for (const Word& w : words) {
    os << "word";
    for (int x : w) os << ' ' << x;
    os << "\n";
  }
}

}  // namespace

std::string save_text(const PartialGroupView& V) {
  std::ostringstream os;
  emit_tables(os, V);
  const std::string tag = V.oracle->tag();
  if (tag == "full") {
    os << "oracle full\n";
  } else if (tag == "free1") {
    os << "oracle free1\n";
  } else if (tag == "table") {
    const auto* t = dynamic_cast<const TableOracle*>(V.oracle.get());
    os << "oracle table maxlen=" << t->maxlen() << "\n";
    emit_words(os, t->words());
  } else {
    // Opaque oracle (a mapped one, usually): materialize the accepted
    // words as a table, capping the sweep so the file stays desk-scale.
    int maxlen = 4;
    double total = 0;
    for (;;) {
      total = 1;
      for (int i = 0; i < maxlen; ++i) total *= V.n;
      if (maxlen == 2 || total <= 2e6) break;
      --maxlen;
    }
    std::vector<Word> words;
    for (int len = 2; len <= maxlen; ++len) {
      Word w(static_cast<size_t>(len), 0);
      for (;;) {
        if (V.in_domain(w)) words.push_back(w);
        int i = len - 1;
        while (i >= 0 && w[static_cast<size_t>(i)] == V.n - 1) w[static_cast<size_t>(i--)] = 0;
        if (i < 0) break;
        ++w[static_cast<size_t>(i)];
      }
    }
    os << "oracle table maxlen=" << maxlen << "\n";
    emit_words(os, words);
  }
  return os.str();
}

std::string save_text(const Locality& loc) {
  std::ostringstream os;
  emit_tables(os, loc.pg);
  os << "oracle delta\n";
  os << "prime p=" << loc.p << "\n";
  os << "sylow";
  for (int s : loc.S) os << ' ' << s;
  os << "\n";

  const auto* chain = dynamic_cast<const ChainOracle*>(loc.pg.oracle.get());
  std::vector<std::vector<int>> steps;
  if (chain) {
    steps = chain->step();
  } else {
    // Rebuild the one-step charts from the conjugation tables; for an
    // objective domain this reproduces the same word acceptance.
    steps.assign(static_cast<size_t>(loc.n()), std::vector<int>(loc.S.size(), -1));
    for (int g = 0; g < loc.n(); ++g)
      for (size_t k = 0; k < loc.sg[static_cast<size_t>(g)].size(); ++k) {
        int x = loc.sg[static_cast<size_t>(g)][k];
        int y = loc.cg[static_cast<size_t>(g)][k];
        steps[static_cast<size_t>(g)][static_cast<size_t>(loc.s_pos[static_cast<size_t>(x)])] =
            loc.s_pos[static_cast<size_t>(y)];
      }
  }
  for (int g = 0; g < loc.n(); ++g) {
    os << "step " << g;
    for (int v : steps[static_cast<size_t>(g)]) os << ' ' << v;
    os << "\n";
  }
  for (const auto& member : loc.delta.members) {
    os << "delta";
    for (int x : member) os << ' ' << x;
    os << "\n";
  }
  return os.str();
}

std::string save_text(const Loaded& obj) {
  return obj.locality ? save_text(*obj.locality) : save_text(*obj.view);
}

void save(const Loaded& obj, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << save_text(obj);
  f.flush();
  if (!f) throw std::runtime_error("write failed: " + path);
}

PartialNormal parse_normal_spec(const Locality& loc, const std::string& spec) {
  if (spec == "all") {
    std::vector<int> all(static_cast<size_t>(loc.n()));
    std::iota(all.begin(), all.end(), 0);
    return make_partial_normal(loc, std::move(all));
  }
  if (spec.rfind("gen:", 0) == 0) {
    std::string body = spec.substr(4);
    std::replace(body.begin(), body.end(), ',', ' ');
    std::vector<int> gens;
    for (const std::string& t : split_ws(body)) gens.push_back(element_index(t, loc.n(), 0));
    if (gens.empty()) throw std::invalid_argument("normal spec lists no elements");
    return partial_normal_closure(loc, gens);
  }
  throw std::invalid_argument("normal spec must be \"all\" or \"gen:<indices>\": " + spec);
}

}  // namespace ploc
