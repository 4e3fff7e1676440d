#pragma once

#include <string>
#include <vector>

#include "k3qf/lattice.hpp"

namespace k3qf {

/// A rational point x = u + i v of the K3 period domain, up to a common rational scale.
/// Stored canonically: integral, content 1, first nonzero coordinate of u positive.
class PeriodPoint {
 public:
  PeriodPoint(const RatVector& u, const RatVector& v) {
    if (u.size() != kK3Rank || v.size() != kK3Rank)
      throw Error(Errc::dimension_mismatch, "period vectors must have length 22");
    const RatMatrix g = to_rational(k3_lattice().gram());
    const Rational uu = bilinear(g, u, u), vv = bilinear(g, v, v), uv = bilinear(g, u, v);
    if (uu <= 0) throw Error(Errc::not_positive, "(x, conj x) > 0 fails: (u,u) = " + to_string(uu));
    if (uu != vv) throw Error(Errc::not_on_quadric, "(x)^2 = 0 fails: (u,u) != (v,v)");
    if (uv != 0) throw Error(Errc::not_on_quadric, "(x)^2 = 0 fails: (u,v) != 0");

    Integer den = 1;
    for (const auto* vec : {&u, &v})
      for (const auto& q : *vec) den = lcm(den, q.get_den());
    Integer content = 0;
    for (const auto* vec : {&u, &v})
      for (const auto& q : *vec) content = gcd(content, Integer(q * den));
    Integer scale_num = den, scale_den = content;
    for (const auto& q : u)
      if (q != 0) {
        if (q < 0) scale_num = -scale_num;
        break;
      }
    const Rational scale = make_rational(scale_num, scale_den);
    for (const auto& q : u) u_.push_back(Integer(q * scale));
    for (const auto& q : v) v_.push_back(Integer(q * scale));
  }

  PeriodPoint(const IntVector& u, const IntVector& v) : PeriodPoint(to_rational(u), to_rational(v)) {}

  const IntVector& u() const noexcept { return u_; }
  const IntVector& v() const noexcept { return v_; }
  Integer norm() const { return k3_lattice().pair(u_, u_); }

  friend bool operator==(const PeriodPoint&, const PeriodPoint&) = default;

 private:
  IntVector u_, v_;
};

inline PeriodPoint make_period_point(const RatVector& u, const RatVector& v) { return PeriodPoint(u, v); }

/// NS = classes orthogonal to u and v; T = NS^perp. Both saturated in the K3 lattice.
struct HodgeDecomposition {
  IntMatrix ns_basis;  // rows
  IntMatrix t_basis;   // rows
  std::size_t rho = 0;
  Integer index;  // [Lambda : NS + T]
};

inline HodgeDecomposition neron_severi(const PeriodPoint& p) {
  const IntegralLattice k3 = k3_lattice();
  HodgeDecomposition h;
  h.ns_basis = orthogonal_basis(k3, IntMatrix::from_rows({p.u(), p.v()}));
  h.t_basis = orthogonal_basis(k3, h.ns_basis);
  h.rho = h.ns_basis.rows();
  IntMatrix both(kK3Rank, kK3Rank);
  for (std::size_t i = 0; i < h.ns_basis.rows(); ++i)
    for (std::size_t j = 0; j < kK3Rank; ++j) both(i, j) = h.ns_basis(i, j);
  for (std::size_t i = 0; i < h.t_basis.rows(); ++i)
    for (std::size_t j = 0; j < kK3Rank; ++j) both(h.rho + i, j) = h.t_basis(i, j);
  h.index = abs(determinant(both));
  return h;
}

/// Gram matrix of the K3 pairing restricted to the row span of `basis`.
inline IntegralLattice restricted_lattice(const IntMatrix& basis, std::string label = {}) {
  return IntegralLattice(basis * k3_lattice().gram() * basis.transposed(), std::move(label));
}

/// e + d f is of type (1,1): orthogonal to u and v, with positive square 2d.
inline bool check_polarization(const PeriodPoint& p, const Integer& d) {
  const auto w = polarization_vector(d);
  const IntegralLattice k3 = k3_lattice();
  return k3.pair(w.coords, w.coords) == 2 * d && k3.pair(w.coords, p.u()) == 0 && k3.pair(w.coords, p.v()) == 0;
}

struct HodgeIsometryReport {
  bool isometry = false;               // g^T G g = G
  bool plane_preserved = false;        // g span{u1,v1} = span{u2,v2}
  bool orientation_preserved = false;  // g x1 is a multiple of x2 rather than of conj(x2)

  bool holds() const { return isometry && plane_preserved; }
};

inline HodgeIsometryReport hodge_isometry_report(const RatMatrix& g, const PeriodPoint& p1, const PeriodPoint& p2) {
  if (g.rows() != kK3Rank || g.cols() != kK3Rank) throw Error(Errc::dimension_mismatch, "g must be 22x22");
  const RatMatrix gram = to_rational(k3_lattice().gram());
  HodgeIsometryReport r;
  r.isometry = g.transposed() * gram * g == gram;
  const RatVector gu = g * to_rational(p1.u()), gv = g * to_rational(p1.v());
  const RatVector u2 = to_rational(p2.u()), v2 = to_rational(p2.v());
  r.plane_preserved = rank(RatMatrix::from_rows({gu, gv, u2, v2})) == 2;
  if (r.plane_preserved) {
    // u2, v2 are orthogonal of equal norm, so coordinates are plain projections.
    const Rational n = bilinear(gram, u2, u2);
    const Rational a = bilinear(gram, gu, u2) / n, b = bilinear(gram, gu, v2) / n;
    const Rational c = bilinear(gram, gv, u2) / n, d = bilinear(gram, gv, v2) / n;
    r.orientation_preserved = a * d - b * c > 0;
  }
  return r;
}

inline bool verify_hodge_isometry(const RatMatrix& g, const PeriodPoint& p1, const PeriodPoint& p2) {
  return hodge_isometry_report(g, p1, p2).holds();
}

struct HodgeNumbers {
  std::size_t h20 = 0, h11 = 0, h02 = 0;
  friend bool operator==(const HodgeNumbers&, const HodgeNumbers&) = default;
};

/// (1, 20, 1): V^{2,0} = C x, V^{0,2} = C conj(x), V^{1,1} their orthogonal complement.
inline HodgeNumbers hodge_numbers(const PeriodPoint&) { return {1, kK3Rank - 2, 1}; }

}  // namespace k3qf
