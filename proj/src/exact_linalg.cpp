#include "exact_linalg.hpp"

#include <utility>

namespace formcalc::detail {

long rank(const QMatrix& m) {
  if (m.empty()) return 0;
  const std::size_t cols = m.front().size();
  std::vector<std::vector<Integer>> a;
  a.reserve(m.size());
  for (const auto& row : m) {
    Integer lcm = 1;
    for (const auto& q : row) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), q.get_den_mpz_t());
    std::vector<Integer> r;
    r.reserve(cols);
    for (const auto& q : row) r.push_back(q.get_num() * (lcm / q.get_den()));
    a.push_back(std::move(r));
  }
  const std::size_t rows = a.size();
  Integer previous = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t pivot = r;
    while (pivot < rows && a[pivot][c] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(a[pivot], a[r]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        a[i][j] = (a[r][c] * a[i][j] - a[i][c] * a[r][j]) / previous;
      }
      a[i][c] = 0;
    }
    previous = a[r][c];
    ++r;
  }
  return static_cast<long>(r);
}

std::vector<std::vector<Rational>> nullspace(const QMatrix& m, std::size_t columns) {
  QMatrix a = m;
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < columns && r < a.size(); ++c) {
    std::size_t pivot = r;
    while (pivot < a.size() && a[pivot][c] == 0) ++pivot;
    if (pivot == a.size()) continue;
    std::swap(a[pivot], a[r]);
    const Rational inv = 1 / a[r][c];
    for (auto& v : a[r]) v *= inv;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == r || a[i][c] == 0) continue;
      const Rational f = a[i][c];
      for (std::size_t j = 0; j < columns; ++j) a[i][j] -= f * a[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  std::vector<bool> is_pivot(columns, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::vector<Rational>> basis;
  for (std::size_t free = 0; free < columns; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> v(columns, Rational(0));
    v[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -a[i][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

QMatrix multiply(const QMatrix& a, const QMatrix& b, std::size_t inner) {
  const std::size_t cols = b.empty() ? 0 : b.front().size();
  QMatrix out(a.size(), std::vector<Rational>(cols, Rational(0)));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t l = 0; l < inner; ++l) {
      if (a[i][l] == 0) continue;
      for (std::size_t j = 0; j < cols; ++j) out[i][j] += a[i][l] * b[l][j];
    }
  }
  return out;
}

}  // namespace formcalc::detail
