#pragma once

#include <algorithm>
#include <iterator>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "k3qf/arith.hpp"
#include "k3qf/linalg.hpp"

namespace k3qf {

struct Signature {
  std::size_t r = 0;  // positive squares
  std::size_t s = 0;  // negative squares
  friend auto operator<=>(const Signature&, const Signature&) = default;
  friend std::ostream& operator<<(std::ostream& os, const Signature& sig) {
    return os << '(' << sig.r << ',' << sig.s << ')';
  }
};

/// Congruence diagonalization: basechange^T * gram * basechange = diag(entries).
struct DiagonalForm {
  RatVector entries;
  RatMatrix basechange;
};

namespace detail {

// Symmetric pivoting elimination. Pivot on the first nonzero diagonal entry of the remaining
// block; if the whole remaining diagonal vanishes, replace b_i by b_i + b_j for the first
// nonzero off-diagonal (i, j), which makes the new diagonal entry 2*(b_i, b_j).
inline std::optional<DiagonalForm> diagonalize_gram(const RatMatrix& gram) {
  const std::size_t n = gram.rows();
  RatMatrix a = gram;
  RatMatrix b = RatMatrix::identity(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    while (piv < n && a(piv, piv) == 0) ++piv;
    if (piv == n) {
      std::size_t pi = n, pj = n;
      for (std::size_t i = k; i < n && pi == n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
          if (a(i, j) != 0) {
            pi = i;
            pj = j;
            break;
          }
      if (pi == n) return std::nullopt;
      for (std::size_t c = 0; c < n; ++c) a(pi, c) += a(pj, c);
      for (std::size_t r = 0; r < n; ++r) a(r, pi) += a(r, pj);
      for (std::size_t r = 0; r < n; ++r) b(r, pi) += b(r, pj);
      piv = pi;
    }
    if (piv != k) {
      a.swap_rows(piv, k);
      a.swap_cols(piv, k);
      b.swap_cols(piv, k);
    }
    const Rational pivot = a(k, k);
    for (std::size_t j = k + 1; j < n; ++j) {
      if (a(j, k) == 0) continue;
      const Rational f = a(j, k) / pivot;
      for (std::size_t c = k; c < n; ++c) a(j, c) -= f * a(k, c);
      for (std::size_t r = k; r < n; ++r) a(r, j) -= f * a(r, k);
      for (std::size_t r = 0; r < n; ++r) b(r, j) -= f * b(r, k);
    }
  }
  DiagonalForm out;
  out.entries.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.entries.push_back(a(i, i));
  out.basechange = std::move(b);
  return out;
}

}  // namespace detail

/// Nondegenerate symmetric rational Gram matrix. Validated on construction.
class QuadraticSpace {
 public:
  explicit QuadraticSpace(RatMatrix gram) : gram_(std::move(gram)) {
    if (gram_.rows() == 0) throw Error(Errc::dimension_mismatch, "empty Gram matrix");
    if (!gram_.is_square()) throw Error(Errc::dimension_mismatch, "Gram matrix is not square");
    if (!gram_.is_symmetric()) throw Error(Errc::not_symmetric, "Gram matrix is not symmetric");
    auto d = detail::diagonalize_gram(gram_);
    if (!d) throw Error(Errc::degenerate, "Gram matrix has zero determinant");
    diag_ = std::move(*d);
  }

  explicit QuadraticSpace(const IntMatrix& gram) : QuadraticSpace(to_rational(gram)) {}

  static QuadraticSpace diagonal(const RatVector& entries) {
    RatMatrix g(entries.size(), entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) g(i, i) = entries[i];
    return QuadraticSpace(std::move(g));
  }

  std::size_t dim() const noexcept { return gram_.rows(); }
  const RatMatrix& gram() const noexcept { return gram_; }
  const DiagonalForm& diagonal_form() const noexcept { return diag_; }

  Rational det() const {
    Rational d = 1;
    for (const auto& x : diag_.entries) d *= x;
    return d;
  }

  /// T^T G T for an invertible T.
  QuadraticSpace transformed(const RatMatrix& t) const { return QuadraticSpace(t.transposed() * gram_ * t); }

 private:
  RatMatrix gram_;
  DiagonalForm diag_;
};

inline const DiagonalForm& diagonalize(const QuadraticSpace& q) { return q.diagonal_form(); }

inline Signature signature(const QuadraticSpace& q) {
  Signature sig;
  for (const auto& a : q.diagonal_form().entries) (a > 0 ? sig.r : sig.s)++;
  return sig;
}

inline SquareClass discriminant(const QuadraticSpace& q) { return square_class(q.det()); }

enum class HasseConvention {
  strict,     // prod_{i<j} (a_i, a_j)_p
  inclusive,  // prod_{i<=j} (a_i, a_j)_p
};

inline int hasse_of_entries(std::span<const Rational> a, const Place& v,
                            HasseConvention conv = HasseConvention::strict) {
  int c = 1;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (conv == HasseConvention::inclusive) c *= hilbert_symbol(a[i], a[i], v);
    for (std::size_t j = i + 1; j < a.size(); ++j) c *= hilbert_symbol(a[i], a[j], v);
  }
  return c;
}

/// c_v over the stored diagonalization. Valid at the infinite place too.
inline int hasse_invariant(const QuadraticSpace& q, const Place& v,
                           HasseConvention conv = HasseConvention::strict) {
  return hasse_of_entries(q.diagonal_form().entries, v, conv);
}

/// c_inf = (-1)^{s(s-1)/2} under the strict convention.
inline int hasse_at_infinity(std::size_t s) { return (s * (s - 1) / 2) % 2 == 0 ? 1 : -1; }

/// 2 together with every prime dividing a numerator or denominator of a diagonal entry.
inline std::vector<Place> relevant_places(const QuadraticSpace& q) {
  std::set<Integer> primes{Integer(2)};
  for (const auto& a : q.diagonal_form().entries) {
    for (auto& p : prime_divisors(a.get_num())) primes.insert(p);
    for (auto& p : prime_divisors(a.get_den())) primes.insert(p);
  }
  std::vector<Place> out;
  for (const auto& p : primes) out.push_back(Place::prime(p));
  return out;
}

/// dim, discriminant, finite Hasse data; the part of the invariants seen by every Q_p.
struct LocalData {
  std::size_t dim = 0;
  SquareClass disc;
  std::vector<Integer> relevant;   // sorted; c_p = +1 off this list
  std::set<Integer> hasse_minus;   // finite primes with c_p = -1

  int hasse(const Integer& p) const { return hasse_minus.contains(p) ? -1 : 1; }
  int finite_hasse_product() const { return hasse_minus.size() % 2 == 0 ? 1 : -1; }

  friend bool operator==(const LocalData& a, const LocalData& b) {
    return a.dim == b.dim && a.disc == b.disc && a.hasse_minus == b.hasse_minus;
  }
};

/// Complete Hasse-Minkowski data of a rational quadratic space.
struct GlobalInvariants {
  std::size_t dim = 0;
  SquareClass disc;
  Signature sig;
  std::vector<Integer> relevant;
  std::set<Integer> hasse_minus;

  int hasse(const Integer& p) const { return hasse_minus.contains(p) ? -1 : 1; }
  int hasse_infinity() const { return hasse_at_infinity(sig.s); }
  int finite_hasse_product() const { return hasse_minus.size() % 2 == 0 ? 1 : -1; }

  LocalData local() const { return {dim, disc, relevant, hasse_minus}; }

  /// r + s = dim, sign(disc) = (-1)^s, and the product formula.
  bool consistent() const {
    if (sig.r + sig.s != dim) return false;
    if (disc.sign() != (sig.s % 2 == 0 ? 1 : -1)) return false;
    return finite_hasse_product() * hasse_infinity() == 1;
  }

  // The relevant list depends on the diagonalization and takes no part in equality.
  friend bool operator==(const GlobalInvariants& a, const GlobalInvariants& b) {
    return a.dim == b.dim && a.disc == b.disc && a.sig == b.sig && a.hasse_minus == b.hasse_minus;
  }
};

inline GlobalInvariants invariants(const QuadraticSpace& q) {
  GlobalInvariants g;
  g.dim = q.dim();
  g.disc = discriminant(q);
  g.sig = signature(q);
  for (const auto& v : relevant_places(q)) {
    g.relevant.push_back(v.p());
    if (hasse_invariant(q, v) == -1) g.hasse_minus.insert(v.p());
  }
  return g;
}

inline LocalData local_data(const QuadraticSpace& q) { return invariants(q).local(); }

inline bool is_equivalent(const QuadraticSpace& a, const QuadraticSpace& b) { return invariants(a) == invariants(b); }

/// First invariant on which two spaces differ ("dim", "disc", "signature", "hasse@p"), or "".
inline std::string first_difference(const GlobalInvariants& a, const GlobalInvariants& b) {
  if (a.dim != b.dim) return "dim";
  if (a.sig != b.sig) return "signature";
  if (a.disc != b.disc) return "disc";
  std::set<Integer> diff;
  std::ranges::set_symmetric_difference(a.hasse_minus, b.hasse_minus, std::inserter(diff, diff.begin()));
  if (!diff.empty()) return "hasse@" + to_string(*diff.begin());
  return "";
}

/// Whether q represents 0 nontrivially over Q_v, by the rank-stratified criteria.
inline bool is_isotropic_local(const QuadraticSpace& q, const Place& v) {
  const auto& a = q.diagonal_form().entries;
  const std::size_t n = a.size();
  if (n == 1) return false;
  if (v.is_infinite()) {
    auto sig = signature(q);
    return sig.r > 0 && sig.s > 0;
  }
  const Rational d = q.det();
  switch (n) {
    case 2: return is_local_square(-d, v);
    case 3: return hasse_invariant(q, v) == hilbert_symbol(-1, -d, v);
    case 4: return !is_local_square(d, v) || hasse_invariant(q, v) == hilbert_symbol(-1, -1, v);
    default: return true;
  }
}

/// Cassels-style existence conditions for a rational space with the given invariants.
inline bool exists_with_invariants(const GlobalInvariants& t) {
  if (t.dim == 0 || t.sig.r + t.sig.s != t.dim)
    throw Error(Errc::malformed_invariants, "signature does not add up to the dimension");
  for (const auto& p : t.hasse_minus)
    if (!is_prime(p)) throw Error(Errc::malformed_invariants, to_string(p) + " is not a prime place");
  if (!t.consistent()) return false;
  if (t.dim == 1) return t.hasse_minus.empty();
  if (t.dim == 2) {
    const Rational minus_d = -Rational(t.disc.rep());
    return std::ranges::none_of(t.hasse_minus,
                                [&](const Integer& p) { return is_local_square(minus_d, Place::prime(p)); });
  }
  return true;
}

namespace detail {

// Squarefree x (by |x|, positive first) with (x, m)_v = -1 exactly for v in `minus`.
inline Integer solve_hilbert_symbols(const Rational& m, const std::set<Place>& minus, unsigned long bound) {
  std::set<Place> base{Place::infinity(), Place::prime(2)};
  for (auto& p : prime_divisors(detail::integral_representative(m))) base.insert(Place::prime(p));
  base.insert(minus.begin(), minus.end());
  for (unsigned long k = 1; k <= bound; ++k) {
    for (int s : {1, -1}) {
      Integer x = Integer(k) * s;
      if (!is_squarefree(x)) continue;
      std::set<Place> places = base;
      for (auto& p : prime_divisors(x)) places.insert(Place::prime(p));
      bool ok = std::ranges::all_of(places, [&](const Place& v) {
        return hilbert_symbol(Rational(x), m, v) == (minus.contains(v) ? -1 : 1);
      });
      if (ok) return x;
    }
  }
  throw Error(Errc::search_exhausted, "no x with prescribed Hilbert symbols below bound");
}

}  // namespace detail

/// A diagonal form realizing `target`: a seed of +-1 entries plus a constructed tail of rank
/// min(dim, 3). Invariants of the result are recomputed and checked before returning.
inline QuadraticSpace construct_with_invariants(const GlobalInvariants& target,
                                                unsigned long bound = kDefaultRealizeBound) {
  if (!exists_with_invariants(target)) throw Error(Errc::not_realizable, "invariants admit no rational form");
  const std::size_t n = target.dim;
  const Rational d = target.disc.rep();
  const Place inf = Place::infinity();

  // Finite places where anything can be nontrivial.
  std::set<Integer> support{Integer(2)};
  support.insert(target.hasse_minus.begin(), target.hasse_minus.end());
  for (auto& p : prime_divisors(target.disc.rep())) support.insert(p);

  RatVector entries;
  if (n == 1) {
    entries = {d};
  } else if (n == 2) {
    // <a, a d> has c_v = (a, -d)_v.
    std::set<Place> minus;
    for (const auto& p : target.hasse_minus) minus.insert(Place::prime(p));
    if (target.hasse_infinity() == -1) minus.insert(inf);
    Integer a = detail::solve_hilbert_symbols(-d, minus, bound);
    entries = {Rational(a), Rational(SquareClass::of(a * d).rep())};
  } else {
    const std::size_t s2 = std::min<std::size_t>(target.sig.s, 3);
    const std::size_t s0 = target.sig.s - s2;
    const std::size_t r0 = target.sig.r - (3 - s2);
    RatVector seed;
    seed.insert(seed.end(), r0, Rational(1));
    seed.insert(seed.end(), s0, Rational(-1));
    const Rational d1 = (s0 % 2 == 0) ? 1 : -1;
    const Rational d2 = SquareClass::of(d * d1).rep();

    // Hasse data required of the ternary tail: c(f1 + f2) = c(f1) c(f2) (d1, d2).
    std::map<Place, int> tail_hasse;
    for (const auto& p : support) {
      const Place v = Place::prime(p);
      tail_hasse[v] = target.hasse(p) * hasse_of_entries(seed, v) * hilbert_symbol(d1, d2, v);
    }
    tail_hasse[inf] = hasse_at_infinity(s2);
    auto tail_at = [&](const Place& v) {
      auto it = tail_hasse.find(v);
      return it == tail_hasse.end() ? 1 : it->second;
    };

    // Where the tail is anisotropic, a must avoid the local class of -d2.
    std::vector<LocalClassConstraint> constraints;
    for (const auto& [v, c] : tail_hasse) {
      if (c == hilbert_symbol(-1, -d2, v)) continue;
      if (v.is_infinite()) {
        constraints.push_back({v, SquareClass(Integer(d2 > 0 ? 1 : -1))});
      } else {
        const bool minus_d2_square = is_local_square(-d2, v);
        constraints.push_back({v, SquareClass(minus_d2_square ? v.p() : Integer(1))});
      }
    }
    const Integer a = realize_square_classes(constraints, bound);

    // With c = d2 a b the tail has c_v = (a,b)(ab,-d2) = (b, -a d2)_v (a, -d2)_v.
    std::set<Place> places{inf};
    for (const auto& [v, c] : tail_hasse) places.insert(v);
    for (auto& p : prime_divisors(a)) places.insert(Place::prime(p));
    std::set<Place> minus;
    for (const auto& v : places)
      if (tail_at(v) * hilbert_symbol(Rational(a), -d2, v) == -1) minus.insert(v);
    const Integer b = detail::solve_hilbert_symbols(-Rational(a) * d2, minus, bound);

    entries = seed;
    entries.push_back(Rational(a));
    entries.push_back(Rational(b));
    entries.push_back(Rational(SquareClass::of(d2 * a * b).rep()));
  }

  QuadraticSpace out = QuadraticSpace::diagonal(entries);
  if (invariants(out) != target)
    throw std::logic_error("construct_with_invariants: recomputed invariants differ from target");
  return out;
}

}  // namespace k3qf
