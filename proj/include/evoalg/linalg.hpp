#ifndef EVOALG_LINALG_HPP_
#define EVOALG_LINALG_HPP_

#include <array>
#include <cstddef>
#include <vector>

#include "evoalg/error.hpp"
#include "evoalg/field.hpp"

namespace evoalg {

// 2x2 matrix, row-major: [[m[0], m[1]], [m[2], m[3]]].
struct Mat2 {
  std::array<Fel, 4> m;

  static Mat2 of(const Fel& a, const Fel& b, const Fel& c, const Fel& d) { return Mat2{{a, b, c, d}}; }
  static Mat2 from_ints(const Field& f, long long a, long long b, long long c, long long d) {
    return of(f.from_int(a), f.from_int(b), f.from_int(c), f.from_int(d));
  }
  static Mat2 identity(const Field& f) { return of(f.one(), f.zero(), f.zero(), f.one()); }
  static Mat2 zero(const Field& f) { return of(f.zero(), f.zero(), f.zero(), f.zero()); }
  static Mat2 diag(const Fel& a, const Fel& d) { return of(a, a.field().zero(), a.field().zero(), d); }
  static Mat2 swap(const Field& f) { return of(f.zero(), f.one(), f.one(), f.zero()); }

  const Field& field() const { return m[0].field(); }
  const Fel& operator()(int r, int c) const { return m[static_cast<std::size_t>(2 * r + c)]; }
  Fel& operator()(int r, int c) { return m[static_cast<std::size_t>(2 * r + c)]; }

  Fel det() const { return m[0] * m[3] - m[1] * m[2]; }

  Mat2 inverse() const {
    const Fel d = det();
    if (d.is_zero()) throw Error(Errc::singular_change, "matrix is singular");
    const Fel di = d.inv();
    return of(m[3] * di, -m[1] * di, -m[2] * di, m[0] * di);
  }

  Mat2 mapped(const Embedding& e) const { return of(e(m[0]), e(m[1]), e(m[2]), e(m[3])); }

  friend Mat2 operator*(const Mat2& a, const Mat2& b) {
    return of(a.m[0] * b.m[0] + a.m[1] * b.m[2], a.m[0] * b.m[1] + a.m[1] * b.m[3],
              a.m[2] * b.m[0] + a.m[3] * b.m[2], a.m[2] * b.m[1] + a.m[3] * b.m[3]);
  }
  friend Mat2 operator+(const Mat2& a, const Mat2& b) {
    return of(a.m[0] + b.m[0], a.m[1] + b.m[1], a.m[2] + b.m[2], a.m[3] + b.m[3]);
  }
  friend Mat2 operator-(const Mat2& a, const Mat2& b) {
    return of(a.m[0] - b.m[0], a.m[1] - b.m[1], a.m[2] - b.m[2], a.m[3] - b.m[3]);
  }
  friend Mat2 operator*(const Fel& s, const Mat2& a) { return of(s * a.m[0], s * a.m[1], s * a.m[2], s * a.m[3]); }
  friend bool operator==(const Mat2& a, const Mat2& b) { return a.m == b.m; }

  bool is_zero() const {
    for (const Fel& x : m) {
      if (!x.is_zero()) return false;
    }
    return true;
  }
};

// Lexicographic on row-major entries by canonical_cmp.
struct Mat2Less {
  bool operator()(const Mat2& a, const Mat2& b) const {
    for (std::size_t i = 0; i < 4; ++i) {
      const auto c = canonical_cmp(a.m[i], b.m[i]);
      if (c != 0) return c < 0;
    }
    return false;
  }
};

using Row = std::vector<Fel>;

// In-place reduced row echelon form with leading coefficients 1; zero rows
// are dropped. Returns the pivot column of each remaining row.
inline std::vector<std::size_t> rref(std::vector<Row>& rows, std::size_t ncols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t col = 0; col < ncols && r < rows.size(); ++col) {
    std::size_t sel = r;
    while (sel < rows.size() && rows[sel][col].is_zero()) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[r], rows[sel]);
    const Fel inv = rows[r][col].inv();
    for (auto& x : rows[r]) x *= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][col].is_zero()) continue;
      const Fel factor = rows[i][col];
      for (std::size_t j = 0; j < ncols; ++j) rows[i][j] -= factor * rows[r][j];
    }
    pivots.push_back(col);
    ++r;
  }
  rows.resize(r);
  return pivots;
}

// Basis of {v : A v = 0}, one vector per free column with that coordinate
// set to 1.
inline std::vector<Row> nullspace(std::vector<Row> a, std::size_t ncols, const Field& f) {
  const auto pivots = rref(a, ncols);
  std::vector<bool> is_pivot(ncols, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<Row> basis;
  for (std::size_t free = 0; free < ncols; ++free) {
    if (is_pivot[free]) continue;
    Row v(ncols, f.zero());
    v[free] = f.one();
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -a[i][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace evoalg

#endif  // EVOALG_LINALG_HPP_
