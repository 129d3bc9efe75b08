#ifndef EVOALG_DER_HPP_
#define EVOALG_DER_HPP_

// Derivations D = [[x,y],[z,t]] with E (D (x) I + I (x) D) - D E = 0.

#include <vector>

#include "evoalg/classify.hpp"
#include "evoalg/error.hpp"
#include "evoalg/field.hpp"
#include "evoalg/linalg.hpp"
#include "evoalg/tensor.hpp"

namespace evoalg {

// Linearly independent derivations in reduced echelon form over the
// coordinates (x, y, z, t), leading coefficients 1.
struct DerBasis {
  Field field;
  std::vector<Mat2> basis;

  std::size_t dim() const noexcept { return basis.size(); }
  friend bool operator==(const DerBasis& a, const DerBasis& b) { return a.field == b.field && a.basis == b.basis; }
};

inline Msc der_residual(const Msc& e, const Mat2& d) {
  require_same_field(e.field(), d.field());
  const Mat2 id = Mat2::identity(d.field());
  const Mat4 k1 = kron(d, id), k2 = kron(id, d);
  Mat4 sum;
  for (std::size_t i = 0; i < 16; ++i) sum.e[i] = k1.e[i] + k2.e[i];
  return e * sum - d * e;
}

inline bool der_check(const Msc& e, const Mat2& d) { return der_residual(e, d).is_zero(); }

// Row-reduces the span of `ms` into a DerBasis.
inline DerBasis echelon(const Field& f, const std::vector<Mat2>& ms) {
  std::vector<Row> rows;
  for (const Mat2& m : ms) rows.push_back(Row(m.m.begin(), m.m.end()));
  rref(rows, 4);
  DerBasis out{f, {}};
  for (const Row& r : rows) out.basis.push_back(Mat2::of(r[0], r[1], r[2], r[3]));
  return out;
}

inline DerBasis der_solve(const Msc& e) {
  const Field& f = e.field();
  // Column j holds the residual of the j-th coordinate matrix; the residual
  // is linear in D.
  std::vector<Row> system(8, Row(4, f.zero()));
  for (std::size_t j = 0; j < 4; ++j) {
    Mat2 unit = Mat2::zero(f);
    unit.m[j] = f.one();
    const Msc r = der_residual(e, unit);
    for (std::size_t i = 0; i < 8; ++i) system[i][j] = r.e[i];
  }
  std::vector<Mat2> kernel;
  for (const Row& v : nullspace(system, 4, f)) kernel.push_back(Mat2::of(v[0], v[1], v[2], v[3]));
  return echelon(f, kernel);
}

inline DerBasis der_solve(const EvolutionMsc& e) { return der_solve(e.to_msc()); }

// Tabulated Der of a canonical algebra: one table for characteristic 0 and
// p >= 5, one for 2 and one for 3.
inline DerBasis der_closed_form(const CanonicalKey& key) {
  const Field& f = key.field;
  const unsigned p = f.characteristic();
  auto m = [&](long long x, long long y, long long z, long long t) { return Mat2::from_ints(f, x, y, z, t); };
  std::vector<Mat2> gens;
  switch (key.label) {
    case Label::E0: throw Error(Errc::unsupported_key, "the zero algebra has no closed form");
    case Label::E1: break;
    case Label::E2:
      if (key.params.size() != 1) throw Error(Errc::invalid_params, "E2 takes one parameter");
      if (key.params[0].is_zero()) gens = {m(0, 0, 1, -1)};
      break;
    case Label::E3:
      if (p == 3) gens = {m(2, 0, 0, 1)};
      break;
    case Label::E4:
      if (p == 2) gens = {m(0, 0, 0, 1)};
      break;
    case Label::E5:
      gens = {p == 2 ? m(1, -1, 1, -1) : m(-1, 1, 1, -1)};
      break;
    case Label::E6:
      if (p == 2) gens = {m(0, 0, 0, 1), m(0, 1, 0, 0)};
      else gens = {m(2, 0, 0, 1), m(0, 1, 0, 0)};
      break;
  }
  return echelon(f, gens);
}

inline Mat2 lie_bracket(const Mat2& a, const Mat2& b) {
  require_same_field(a.field(), b.field());
  return a * b - b * a;
}

// Whether m lies in the span of an echelon basis.
inline bool in_span(const DerBasis& d, const Mat2& m) {
  std::vector<Mat2> ms = d.basis;
  ms.push_back(m);
  return echelon(d.field, ms).dim() == d.dim();
}

}  // namespace evoalg

#endif  // EVOALG_DER_HPP_
