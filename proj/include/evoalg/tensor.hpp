#ifndef EVOALG_TENSOR_HPP_
#define EVOALG_TENSOR_HPP_

// Matrices of structure constants (MSC) of 2-dimensional algebras and the
// basis-change action B = g A (g^-1 (x) g^-1).
//
// An MSC is 2x4: row k holds the e_k-coordinates of the products
// e1e1, e1e2, e2e1, e2e2 (in that column order).

#include <array>
#include <optional>

#include "evoalg/error.hpp"
#include "evoalg/field.hpp"
#include "evoalg/linalg.hpp"

namespace evoalg {

struct Msc {
  std::array<Fel, 8> e;  // row-major

  static Msc zero(const Field& f) {
    Msc out;
    out.e.fill(f.zero());
    return out;
  }
  static Msc from_ints(const Field& f, const std::array<long long, 8>& v) {
    Msc out;
    for (std::size_t i = 0; i < 8; ++i) out.e[i] = f.from_int(v[i]);
    return out;
  }

  const Field& field() const { return e[0].field(); }
  const Fel& operator()(int row, int col) const { return e[static_cast<std::size_t>(4 * row + col)]; }
  Fel& operator()(int row, int col) { return e[static_cast<std::size_t>(4 * row + col)]; }

  Msc mapped(const Embedding& emb) const {
    Msc out;
    for (std::size_t i = 0; i < 8; ++i) out.e[i] = emb(e[i]);
    return out;
  }

  bool is_zero() const {
    for (const Fel& x : e) {
      if (!x.is_zero()) return false;
    }
    return true;
  }

  friend bool operator==(const Msc& a, const Msc& b) { return a.e == b.e; }
};

struct Mat4 {
  std::array<Fel, 16> e;  // row-major
  const Fel& operator()(int r, int c) const { return e[static_cast<std::size_t>(4 * r + c)]; }
  Fel& operator()(int r, int c) { return e[static_cast<std::size_t>(4 * r + c)]; }
  friend bool operator==(const Mat4& a, const Mat4& b) { return a.e == b.e; }
};

// Evolution-form MSC [[a,0,0,b],[c,0,0,d]].
struct EvolutionMsc {
  Fel a, b, c, d;

  static EvolutionMsc from_ints(const Field& f, long long a, long long b, long long c, long long d) {
    return {f.from_int(a), f.from_int(b), f.from_int(c), f.from_int(d)};
  }

  // Only when the mixed-product columns are zero.
  static std::optional<EvolutionMsc> from_msc(const Msc& m);

  const Field& field() const { return a.field(); }

  Msc to_msc() const {
    const Fel z = a.field().zero();
    return Msc{{a, z, z, b, c, z, z, d}};
  }

  // The associated 2x2 matrix [[a,b],[c,d]].
  Mat2 matrix() const { return Mat2::of(a, b, c, d); }

  EvolutionMsc mapped(const Embedding& emb) const { return {emb(a), emb(b), emb(c), emb(d)}; }

  bool is_zero() const { return a.is_zero() && b.is_zero() && c.is_zero() && d.is_zero(); }

  friend bool operator==(const EvolutionMsc& x, const EvolutionMsc& y) {
    return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d;
  }
};

// A change of basis, stored as g^-1 = [[xi1, eta1], [xi2, eta2]]: the
// columns of g^-1 are the new basis vectors in old coordinates.
class BasisChange {
 public:
  explicit BasisChange(Mat2 ginv) : ginv_(std::move(ginv)) {
    if (ginv_.det().is_zero()) throw Error(Errc::singular_change, "basis change has zero determinant");
  }

  static BasisChange identity(const Field& f) { return BasisChange(Mat2::identity(f)); }
  static BasisChange from_g(const Mat2& g) { return BasisChange(g.inverse()); }

  const Mat2& ginv() const noexcept { return ginv_; }
  Mat2 g() const { return ginv_.inverse(); }
  const Field& field() const { return ginv_.field(); }

  const Fel& xi1() const { return ginv_.m[0]; }
  const Fel& eta1() const { return ginv_.m[1]; }
  const Fel& xi2() const { return ginv_.m[2]; }
  const Fel& eta2() const { return ginv_.m[3]; }
  Fel delta() const { return ginv_.det(); }

  // *this first, then `next`: g = g_next g_this.
  BasisChange then(const BasisChange& next) const { return BasisChange(ginv_ * next.ginv_); }

  BasisChange inverse() const { return BasisChange(ginv_.inverse()); }

  BasisChange mapped(const Embedding& e) const { return BasisChange(ginv_.mapped(e)); }

  friend bool operator==(const BasisChange& x, const BasisChange& y) { return x.ginv_ == y.ginv_; }

 private:
  Mat2 ginv_;
};

// Entries of g E (g^-1)^{(x)2} for an evolution E, named as in the
// classification: alpha is row 1, beta is row 2.
struct TransformedEntries {
  std::array<Fel, 4> alpha, beta;

  Msc to_msc() const {
    return Msc{{alpha[0], alpha[1], alpha[2], alpha[3], beta[0], beta[1], beta[2], beta[3]}};
  }
};

inline std::optional<EvolutionMsc> EvolutionMsc::from_msc(const Msc& m) {
  if (!m(0, 1).is_zero() || !m(0, 2).is_zero() || !m(1, 1).is_zero() || !m(1, 2).is_zero()) {
    return std::nullopt;
  }
  return EvolutionMsc{m(0, 0), m(0, 3), m(1, 0), m(1, 3)};
}

// (a (x) b)[(i,j),(k,l)] = a[i][k] b[j][l], pairs ordered (1,1),(1,2),(2,1),(2,2).
inline Mat4 kron(const Mat2& a, const Mat2& b) {
  Mat4 out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) out(2 * i + j, 2 * k + l) = a(i, k) * b(j, l);
  return out;
}

inline Mat4 kron_square(const Mat2& m) { return kron(m, m); }

inline Msc operator*(const Mat2& g, const Msc& a) {
  Msc out;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 4; ++c) out(r, c) = g(r, 0) * a(0, c) + g(r, 1) * a(1, c);
  return out;
}

inline Msc operator*(const Msc& a, const Mat4& k) {
  Msc out;
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 4; ++c) {
      Fel s = a(r, 0) * k(0, c);
      for (int i = 1; i < 4; ++i) s += a(r, i) * k(i, c);
      out(r, c) = s;
    }
  }
  return out;
}

inline Msc operator-(const Msc& a, const Msc& b) {
  Msc out;
  for (std::size_t i = 0; i < 8; ++i) out.e[i] = a.e[i] - b.e[i];
  return out;
}

inline void require_same_field(const Field& a, const Field& b) {
  if (!(a == b)) throw Error(Errc::mixed_fields, a.name() + " vs " + b.name());
}

// g A (g^-1 (x) g^-1).
inline Msc transform(const Msc& a, const BasisChange& g) {
  require_same_field(a.field(), g.field());
  return (g.g() * a) * kron_square(g.ginv());
}

// Closed-form transformed entries of an evolution MSC.
inline TransformedEntries transform_evolution(const EvolutionMsc& e, const BasisChange& g) {
  require_same_field(e.field(), g.field());
  const Fel &xi1 = g.xi1(), &eta1 = g.eta1(), &xi2 = g.xi2(), &eta2 = g.eta2();
  const Fel delta_inv = g.delta().inv();
  const Fel u = e.a * eta2 - e.c * eta1;   // a eta2 - c eta1
  const Fel v = e.b * eta2 - e.d * eta1;   // b eta2 - d eta1
  const Fel w = e.c * xi1 - e.a * xi2;     // -a xi2 + c xi1
  const Fel z = e.d * xi1 - e.b * xi2;     // -b xi2 + d xi1
  const Fel s11 = xi1 * xi1, s22 = xi2 * xi2, m1 = xi1 * eta1, m2 = xi2 * eta2, t11 = eta1 * eta1,
            t22 = eta2 * eta2;
  TransformedEntries out;
  out.alpha[0] = (s11 * u + s22 * v) * delta_inv;
  out.alpha[1] = (m1 * u + m2 * v) * delta_inv;
  out.alpha[2] = out.alpha[1];
  out.alpha[3] = (t11 * u + t22 * v) * delta_inv;
  out.beta[0] = (s11 * w + s22 * z) * delta_inv;
  out.beta[1] = (m1 * w + m2 * z) * delta_inv;
  out.beta[2] = out.beta[1];
  out.beta[3] = (t11 * w + t22 * z) * delta_inv;
  return out;
}

// Evolution form in the given basis: both mixed-product columns vanish.
inline bool is_evolution(const Msc& a) { return EvolutionMsc::from_msc(a).has_value(); }

inline Fel det2x2(const EvolutionMsc& e) { return e.a * e.d - e.b * e.c; }

}  // namespace evoalg

#endif  // EVOALG_TENSOR_HPP_
