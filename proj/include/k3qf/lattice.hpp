#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "k3qf/linalg.hpp"
#include "k3qf/quadspace.hpp"

namespace k3qf {

/// Integer Gram matrix, symmetric and nondegenerate.
class IntegralLattice {
 public:
  explicit IntegralLattice(IntMatrix gram, std::string label = {}) : gram_(std::move(gram)), label_(std::move(label)) {
    if (gram_.rows() == 0 || !gram_.is_square()) throw Error(Errc::dimension_mismatch, "Gram matrix must be square");
    if (!gram_.is_symmetric()) throw Error(Errc::not_symmetric, "Gram matrix is not symmetric");
    det_ = determinant(gram_);
    if (det_ == 0) throw Error(Errc::degenerate, "Gram matrix has zero determinant");
  }

  std::size_t rank() const noexcept { return gram_.rows(); }
  const IntMatrix& gram() const noexcept { return gram_; }
  const std::string& label() const noexcept { return label_; }
  const Integer& det() const noexcept { return det_; }

  Integer pair(const IntVector& x, const IntVector& y) const { return bilinear(gram_, x, y); }

  QuadraticSpace rational() const { return QuadraticSpace(gram_); }

  friend bool operator==(const IntegralLattice& a, const IntegralLattice& b) { return a.gram_ == b.gram_; }

 private:
  IntMatrix gram_;
  std::string label_;
  Integer det_;
};

inline Integer det(const IntegralLattice& l) { return l.det(); }

inline bool is_even(const IntegralLattice& l) {
  for (std::size_t i = 0; i < l.rank(); ++i)
    if (!mpz_even_p(l.gram()(i, i).get_mpz_t())) return false;
  return true;
}

/// Order of the discriminant group L^dual / L.
inline Integer disc_group_order(const IntegralLattice& l) { return abs(l.det()); }

/// Basis (e, f) with e^2 = f^2 = 0, (e, f) = 1.
inline IntegralLattice hyperbolic_plane() { return IntegralLattice(IntMatrix{{0, 1}, {1, 0}}, "U"); }

/// Cartan matrix of E8 in Bourbaki labeling (chain 1-3-4-5-6-7-8, node 2 attached to 4), times sign.
inline IntegralLattice e8(int sign = 1) {
  if (sign != 1 && sign != -1) throw Error(Errc::zero_scale, "E8 sign must be +1 or -1");
  constexpr std::array<std::pair<int, int>, 7> edges{{{1, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {7, 8}, {2, 4}}};
  IntMatrix g(8, 8);
  for (std::size_t i = 0; i < 8; ++i) g(i, i) = 2 * sign;
  for (auto [a, b] : edges) {
    g(a - 1, b - 1) = -sign;
    g(b - 1, a - 1) = -sign;
  }
  return IntegralLattice(std::move(g), sign == 1 ? "E8" : "E8m");
}

inline IntegralLattice direct_sum(std::span<const IntegralLattice> parts, std::string label = {}) {
  std::vector<IntMatrix> grams;
  for (const auto& l : parts) grams.push_back(l.gram());
  return IntegralLattice(block_diagonal<Integer>(grams), std::move(label));
}

inline IntegralLattice direct_sum(std::initializer_list<IntegralLattice> parts, std::string label = {}) {
  return direct_sum(std::span<const IntegralLattice>(parts.begin(), parts.size()), std::move(label));
}

/// L(c): the same module with pairing multiplied by c.
inline IntegralLattice rescale(const IntegralLattice& l, const Integer& c) {
  if (c == 0) throw Error(Errc::zero_scale, "rescale by 0");
  return IntegralLattice(l.gram().map([&](const Integer& x) { return Integer(x * c); }));
}

inline constexpr std::size_t kK3Rank = 22;

/// U + U + U + E8(-1) + E8(-1); coordinates 0..5 are (e1, f1, e2, f2, e3, f3).
inline IntegralLattice k3_lattice() {
  const auto u = hyperbolic_plane();
  const auto em = e8(-1);
  return direct_sum({u, u, u, em, em}, "K3");
}

/// e + d f in the first hyperbolic summand of the K3 lattice.
struct PolarizationVector {
  IntVector coords;
  Integer degree;  // d; the self-pairing is 2d
};

inline PolarizationVector polarization_vector(const Integer& d) {
  if (d <= 0) throw Error(Errc::nonpositive_degree, "degree must be positive");
  PolarizationVector w{IntVector(kK3Rank, 0), d};
  w.coords[0] = 1;
  w.coords[1] = d;
  return w;
}

inline bool is_primitive(const IntVector& w) {
  Integer g = 0;
  for (const auto& x : w) g = gcd(g, x);
  return g == 1;
}

/// Z-basis (as rows) of the sublattice of L orthogonal to every row of `vectors`.
inline IntMatrix orthogonal_basis(const IntegralLattice& l, const IntMatrix& vectors) {
  return integer_kernel(vectors * l.gram());
}

/// {x in L : (x, w) = 0} on its saturated basis; rank n - 1.
inline IntegralLattice orthogonal_complement(const IntegralLattice& l, const IntVector& w, std::string label = {}) {
  if (w.size() != l.rank()) throw Error(Errc::dimension_mismatch, "vector length differs from rank");
  if (!is_primitive(w)) throw Error(Errc::not_primitive, "gcd of coordinates is not 1");
  if (l.pair(w, w) == 0) throw Error(Errc::degenerate_complement, "w is isotropic");
  IntMatrix basis = orthogonal_basis(l, IntMatrix::from_rows({w}));
  IntMatrix g = basis * l.gram() * basis.transposed();
  if (determinant(g) == 0) throw Error(Errc::degenerate_complement, "complement is degenerate");
  return IntegralLattice(std::move(g), std::move(label));
}

/// The degree-2d polarized K3 lattice: the complement of e + d f in the K3 lattice.
inline IntegralLattice k3_polarized_lattice(const Integer& d) {
  return orthogonal_complement(k3_lattice(), polarization_vector(d).coords, "K3-2d");
}

/// Invariants of L tensor Q seen at the finite places (signature deliberately absent).
inline LocalData local_data(const IntegralLattice& l) { return local_data(l.rational()); }

/// Signatures (r, s), r + s = dim, for which some rational space has the given finite local
/// data: sign(disc) = (-1)^s and (-1)^{s(s-1)/2} equal to the finite Hasse product. Sorted by
/// r descending.
inline std::vector<Signature> admissible_signatures(const LocalData& data) {
  if (data.dim < 3) throw Error(Errc::rank_too_small, "admissible signatures need rank >= 3");
  std::vector<Signature> out;
  for (std::size_t s = 0; s <= data.dim; ++s) {
    GlobalInvariants t{data.dim, data.disc, {data.dim - s, s}, data.relevant, data.hasse_minus};
    if (exists_with_invariants(t)) out.push_back(t.sig);
  }
  std::ranges::sort(out, [](const Signature& a, const Signature& b) { return a.r > b.r; });
  return out;
}

inline std::vector<Signature> admissible_signatures(const IntegralLattice& l) {
  if (l.rank() < 3) throw Error(Errc::rank_too_small, "admissible signatures need rank >= 3");
  return admissible_signatures(local_data(l));
}

/// Catalog lookup: "U", "E8", "E8m", "K3", "K3-2d" (the last requires d).
inline IntegralLattice catalog_lattice(const std::string& label, std::optional<Integer> d = std::nullopt) {
  if (label == "U") return hyperbolic_plane();
  if (label == "E8") return e8(1);
  if (label == "E8m") return e8(-1);
  if (label == "K3") return k3_lattice();
  if (label == "K3-2d") {
    if (!d) throw Error(Errc::parse, "K3-2d requires a degree d");
    return k3_polarized_lattice(*d);
  }
  throw Error(Errc::parse, "unknown lattice label '" + label + "'");
}

}  // namespace k3qf
