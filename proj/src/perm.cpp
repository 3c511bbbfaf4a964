#include "ploc/perm.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <stdexcept>

namespace ploc {

bool Perm::is_identity() const {
  for (int i = 0; i < degree(); ++i)
    if (img[i] != i) return false;
  return true;
}

Perm Perm::identity(int degree) {
  Perm p;
  p.img.resize(degree);
  std::iota(p.img.begin(), p.img.end(), 0);
  return p;
}

Perm operator*(const Perm& a, const Perm& b) {
  if (a.degree() != b.degree()) throw std::invalid_argument("degree mismatch");
  Perm c;
  c.img.resize(a.degree());
  for (int x = 0; x < a.degree(); ++x) c.img[x] = b.img[a.img[x]];
  return c;
}

Perm Perm::inverse() const {
  Perm r;
  r.img.resize(degree());
  for (int x = 0; x < degree(); ++x) r.img[img[x]] = x;
  return r;
}

Perm parse_cycles(const std::string& text, int degree) {
  Perm p = Perm::identity(degree);
  std::vector<bool> seen(degree, false);
  size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == ','))
      ++i;
  };
  skip_ws();
  while (i < text.size()) {
    if (text[i] != '(') throw std::runtime_error("expected '(' in cycle: " + text);
    ++i;
    std::vector<int> cyc;
    skip_ws();
    while (i < text.size() && text[i] != ')') {
      if (!std::isdigit(static_cast<unsigned char>(text[i])))
        throw std::runtime_error("expected point in cycle: " + text);
      int v = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
        v = v * 10 + (text[i++] - '0');
      if (v < 1 || v > degree) throw std::runtime_error("point out of range: " + text);
      if (seen[v - 1]) throw std::runtime_error("repeated point: " + text);
      seen[v - 1] = true;
      cyc.push_back(v - 1);
      skip_ws();
    }
    if (i >= text.size()) throw std::runtime_error("unterminated cycle: " + text);
    ++i;  // ')'
    for (size_t k = 0; k + 1 < cyc.size(); ++k) p.img[cyc[k]] = cyc[k + 1];
    if (cyc.size() > 1) p.img[cyc.back()] = cyc.front();
    skip_ws();
  }
  return p;
}

int max_point(const std::string& text) {
  int best = 0;
  size_t i = 0;
  while (i < text.size()) {
    if (std::isdigit(static_cast<unsigned char>(text[i]))) {
      int v = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
        v = v * 10 + (text[i++] - '0');
      best = std::max(best, v);
    } else {
      ++i;
    }
  }
  return best;
}

std::string cycle_string(const Perm& p) {
  std::string out;
  std::vector<bool> done(p.degree(), false);
  for (int x = 0; x < p.degree(); ++x) {
    if (done[x] || p.img[x] == x) continue;
    out += '(';
    int y = x;
    bool first = true;
    do {
      if (!first) out += ' ';
      first = false;
      out += std::to_string(y + 1);
      done[y] = true;
      y = p.img[y];
    } while (y != x);
    out += ')';
  }
  if (out.empty()) out = "()";
  return out;
}

}  // namespace ploc
