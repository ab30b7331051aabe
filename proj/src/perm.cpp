#include "polarot/perm.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

namespace ot {

Perm identity_perm(std::size_t n) {
  Perm p(n);
  std::iota(p.begin(), p.end(), std::size_t{0});
  return p;
}

bool is_permutation(const Perm& p) {
  std::vector<bool> seen(p.size(), false);
  for (std::size_t v : p) {
    if (v >= p.size() || seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

Perm compose(const Perm& a, const Perm& b) {
  if (a.size() != b.size()) throw std::invalid_argument("size mismatch");
  Perm out(a.size());
  for (std::size_t i = 0; i < b.size(); ++i) out[i] = a[b[i]];
  return out;
}

Perm inverse(const Perm& p) {
  Perm out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) out[p[i]] = i;
  return out;
}

Perm perm_power(const Perm& p, unsigned long long e) {
  Perm acc = identity_perm(p.size());
  Perm base = p;
  while (e > 0) {
    if (e & 1) acc = compose(base, acc);
    base = compose(base, base);
    e >>= 1;
  }
  return acc;
}

std::vector<std::vector<std::size_t>> cycle_decomposition(const Perm& p) {
  std::vector<std::vector<std::size_t>> cycles;
  std::vector<bool> seen(p.size(), false);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i]) continue;
    std::vector<std::size_t> cyc;
    std::size_t j = i;
    while (!seen[j]) {
      seen[j] = true;
      cyc.push_back(j);
      j = p[j];
    }
    cycles.push_back(std::move(cyc));
  }
  return cycles;
}

unsigned long long perm_order(const Perm& p) {
  unsigned long long ord = 1;
  for (const auto& c : cycle_decomposition(p))
    ord = std::lcm(ord, static_cast<unsigned long long>(c.size()));
  return ord;
}

Perm conjugate_perm(const Perm& pi, const Perm& alpha) {
  return compose(compose(pi, alpha), inverse(pi));
}

std::string cycle_string(const Perm& p) {
  std::ostringstream os;
  for (const auto& c : cycle_decomposition(p)) {
    os << '(';
    for (std::size_t k = 0; k < c.size(); ++k) {
      if (k) os << ' ';
      os << c[k] + 1;
    }
    os << ')';
  }
  return os.str();
}

Perm perm_from_cycle_string(const std::string& s, std::size_t n) {
  Perm p = identity_perm(n);
  std::vector<std::size_t> cyc;
  std::vector<bool> seen(n, false);
  std::size_t pos = 0;
  auto close_cycle = [&] {
    for (std::size_t k = 0; k < cyc.size(); ++k) {
      const std::size_t from = cyc[k], to = cyc[(k + 1) % cyc.size()];
      p[from] = to;
    }
    cyc.clear();
  };
  while (pos < s.size()) {
    const char ch = s[pos];
    if (ch == '(' || ch == ' ' || ch == ',') {
      ++pos;
    } else if (ch == ')') {
      close_cycle();
      ++pos;
    } else if (ch >= '0' && ch <= '9') {
      std::size_t v = 0;
      while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9')
        v = v * 10 + static_cast<std::size_t>(s[pos++] - '0');
      if (v < 1 || v > n) throw std::invalid_argument("cycle label out of range");
      if (seen[v - 1]) throw std::invalid_argument("labels repeat across cycles");
      seen[v - 1] = true;
      cyc.push_back(v - 1);
    } else {
      throw std::invalid_argument("bad character in cycle notation");
    }
  }
  if (!cyc.empty()) throw std::invalid_argument("unterminated cycle");
  if (!is_permutation(p)) throw std::invalid_argument("labels repeat across cycles");
  return p;
}

BitMatrix perm_matrix(const Perm& p) {
  BitMatrix m(p.size(), p.size());
  for (std::size_t j = 0; j < p.size(); ++j) m.set(p[j], j, true);
  return m;
}

Perm perm_from_matrix(const BitMatrix& m) {
  if (!is_perm_matrix(m)) throw std::invalid_argument("not a permutation matrix");
  Perm p(m.cols());
  for (std::size_t j = 0; j < m.cols(); ++j)
    for (std::size_t i = 0; i < m.rows(); ++i)
      if (m.get(i, j)) p[j] = i;
  return p;
}

bool is_perm_matrix(const BitMatrix& m) {
  if (m.rows() != m.cols()) return false;
  std::vector<std::size_t> col_count(m.cols(), 0), row_count(m.rows(), 0);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m.get(i, j)) {
        ++row_count[i];
        ++col_count[j];
      }
  for (std::size_t i = 0; i < m.rows(); ++i)
    if (row_count[i] != 1 || col_count[i] != 1) return false;
  return true;
}

}  // namespace ot
