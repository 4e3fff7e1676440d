#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "k3qf/error.hpp"

namespace k3qf {

using Integer = mpz_class;
using Rational = mpq_class;

inline Integer abs(const Integer& n) { return ::abs(n); }
inline int sign(const Integer& n) { return sgn(n); }
inline int sign(const Rational& q) { return sgn(q); }

/// Builds num/den in lowest terms with a positive denominator.
inline Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw Error(Errc::zero_input, "zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline std::string to_string(const Integer& n) { return n.get_str(); }

/// "p/q", or bare "p" when the denominator is 1.
inline std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline Integer gcd(const Integer& a, const Integer& b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline Integer lcm(const Integer& a, const Integer& b) {
  Integer l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

/// Floor-style remainder in [0, |m|).
inline Integer mod(const Integer& a, const Integer& m) {
  Integer r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

/// p-adic valuation of a nonzero integer and the remaining unit part.
inline std::pair<unsigned long, Integer> split_valuation(const Integer& n, const Integer& p) {
  if (n == 0) throw Error(Errc::zero_input, "valuation of zero");
  Integer unit;
  auto v = mpz_remove(unit.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t());
  return {static_cast<unsigned long>(v), unit};
}

inline unsigned long valuation(const Integer& n, const Integer& p) { return split_valuation(n, p).first; }

namespace detail {

inline constexpr std::array<unsigned, 12> kWitnesses{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

// Strong probable-prime test to base a; n odd, n > a.
inline bool strong_probable_prime(const Integer& n, unsigned long a) {
  Integer d = n - 1;
  auto s = mpz_scan1(d.get_mpz_t(), 0);
  mpz_tdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);
  Integer x;
  Integer base(a);
  mpz_powm(x.get_mpz_t(), base.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
  const Integer nm1 = n - 1;
  if (x == 1 || x == nm1) return true;
  for (mp_bitcnt_t r = 1; r < s; ++r) {
    x = x * x % n;
    if (x == nm1) return true;
    if (x == 1) return false;
  }
  return false;
}

}  // namespace detail

/// Number of probabilistic rounds handed to GMP for inputs of 64 bits or more.
inline constexpr int kPrimalityRoundsAbove64Bits = 40;

/// Miller-Rabin with the first twelve prime bases, which is deterministic below 2^64.
/// Larger inputs fall back to GMP's Baillie-PSW plus `kPrimalityRoundsAbove64Bits` rounds.
inline bool is_prime(const Integer& n) {
  if (n < 2) return false;
  for (unsigned w : detail::kWitnesses) {
    if (n == w) return true;
    if (mpz_divisible_ui_p(n.get_mpz_t(), w)) return false;
  }
  if (mpz_sizeinbase(n.get_mpz_t(), 2) > 64) {
    return mpz_probab_prime_p(n.get_mpz_t(), kPrimalityRoundsAbove64Bits) != 0;
  }
  return std::ranges::all_of(detail::kWitnesses,
                             [&](unsigned w) { return detail::strong_probable_prime(n, w); });
}

struct Factorization {
  int sign = 1;
  std::vector<std::pair<Integer, unsigned long>> factors;  // primes strictly increasing

  Integer value() const {
    Integer v = sign;
    for (const auto& [p, e] : factors) {
      Integer pe;
      mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), e);
      v *= pe;
    }
    return v;
  }
  friend bool operator==(const Factorization&, const Factorization&) = default;
};

namespace detail {

// Brent's variant of Pollard rho; n odd composite. Deterministic sequence of seeds.
inline Integer pollard_brent(const Integer& n) {
  for (unsigned long c = 1;; ++c) {
    Integer y = 2, x, ys, q = 1, g = 1;
    auto f = [&](const Integer& v) { return Integer((v * v + c) % n); };
    unsigned long r = 1;
    const unsigned long m = 128;
    do {
      x = y;
      for (unsigned long i = 0; i < r; ++i) y = f(y);
      unsigned long k = 0;
      do {
        ys = y;
        for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          q = q * abs(Integer(x - y)) % n;
        }
        g = gcd(q, n);
        k += m;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = gcd(abs(Integer(x - ys)), n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

inline void factor_into(const Integer& n, std::vector<Integer>& primes) {
  if (n == 1) return;
  if (is_prime(n)) {
    primes.push_back(n);
    return;
  }
  Integer d = pollard_brent(n);
  factor_into(d, primes);
  factor_into(Integer(n / d), primes);
}

}  // namespace detail

/// Sign and prime-power decomposition of a nonzero integer.
inline Factorization factorize(const Integer& n) {
  if (n == 0) throw Error(Errc::zero_input, "factorize(0)");
  Factorization out;
  out.sign = sign(n);
  Integer m = abs(n);
  std::vector<Integer> primes;
  for (unsigned long p = 2; p < 1000 && Integer(p) * p <= m; p += (p == 2 ? 1 : 2)) {
    while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
      primes.emplace_back(p);
      m /= p;
    }
  }
  if (m != 1) detail::factor_into(m, primes);
  std::ranges::sort(primes);
  for (const auto& p : primes) {
    if (!out.factors.empty() && out.factors.back().first == p)
      ++out.factors.back().second;
    else
      out.factors.emplace_back(p, 1);
  }
  return out;
}

inline std::vector<Integer> prime_divisors(const Integer& n) {
  std::vector<Integer> ps;
  for (auto& [p, e] : factorize(n).factors) ps.push_back(p);
  return ps;
}

inline bool is_squarefree(const Integer& n) {
  if (n == 0) return false;
  return std::ranges::all_of(factorize(n).factors, [](const auto& pe) { return pe.second == 1; });
}

/// Element of Q^x / (Q^x)^2, represented by a squarefree integer (sign included).
class SquareClass {
 public:
  SquareClass() : rep_(1) {}
  explicit SquareClass(const Integer& squarefree) : rep_(squarefree) {
    if (!is_squarefree(rep_)) throw Error(Errc::invalid_constraint, to_string(rep_) + " is not squarefree");
  }

  /// Class of an arbitrary nonzero rational.
  static SquareClass of(const Rational& q) {
    if (q == 0) throw Error(Errc::zero_input, "square class of zero");
    // num/den and num*den differ by den^2.
    Integer t = q.get_num() * q.get_den();
    Factorization f = factorize(t);
    Integer rep = f.sign;
    for (const auto& [p, e] : f.factors)
      if (e % 2 == 1) rep *= p;
    SquareClass c;
    c.rep_ = rep;
    return c;
  }

  const Integer& rep() const noexcept { return rep_; }
  int sign() const { return k3qf::sign(rep_); }

  SquareClass operator*(const SquareClass& o) const { return of(Rational(rep_ * o.rep_)); }

  friend bool operator==(const SquareClass& a, const SquareClass& b) { return a.rep_ == b.rep_; }
  friend bool operator<(const SquareClass& a, const SquareClass& b) { return a.rep_ < b.rep_; }

 private:
  Integer rep_;
};

inline SquareClass square_class(const Rational& q) { return SquareClass::of(q); }

/// A place of Q: a certified prime p, or the real place.
class Place {
 public:
  static Place infinity() { return Place(); }
  static Place prime(const Integer& p) {
    if (!is_prime(p)) throw Error(Errc::not_a_prime, to_string(p) + " is not prime");
    Place v;
    v.p_ = p;
    return v;
  }
  static Place prime(long p) { return prime(Integer(p)); }

  bool is_infinite() const noexcept { return p_ == 0; }
  bool is_finite() const noexcept { return p_ != 0; }
  /// The prime; 0 for the infinite place.
  const Integer& p() const noexcept { return p_; }

  std::string str() const { return is_infinite() ? "inf" : to_string(p_); }

  // The infinite place sorts first, then primes ascending.
  friend bool operator==(const Place& a, const Place& b) { return a.p_ == b.p_; }
  friend bool operator<(const Place& a, const Place& b) { return a.p_ < b.p_; }

 private:
  Place() = default;
  Integer p_ = 0;
};

/// Legendre symbol (a/p) for an odd prime p.
inline int legendre_symbol(const Integer& a, const Integer& p) {
  if (p < 3 || p % 2 == 0 || !is_prime(p)) throw Error(Errc::not_an_odd_prime, to_string(p));
  Integer r = mod(a, p);
  if (r == 0) return 0;
  Integer e = (p - 1) / 2, x;
  mpz_powm(x.get_mpz_t(), r.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
  return x == 1 ? 1 : -1;
}

namespace detail {

// Symbol on nonzero integers; the rational case reduces to this through num*den.
inline int hilbert_integers(const Integer& a, const Integer& b, const Place& v) {
  if (v.is_infinite()) return (a < 0 && b < 0) ? -1 : 1;
  const Integer& p = v.p();
  auto [alpha, u] = split_valuation(a, p);
  auto [beta, w] = split_valuation(b, p);
  if (p == 2) {
    auto eps = [](const Integer& x) { return mod(x, 4) == 3 ? 1UL : 0UL; };
    auto omega = [](const Integer& x) {
      Integer r = mod(x, 8);
      return (r == 3 || r == 5) ? 1UL : 0UL;
    };
    unsigned long e = eps(u) * eps(w) + alpha * omega(w) + beta * omega(u);
    return e % 2 == 0 ? 1 : -1;
  }
  int r = 1;
  if ((alpha * beta) % 2 == 1 && mod(p, 4) == 3) r = -r;
  if (beta % 2 == 1) r *= legendre_symbol(u, p);
  if (alpha % 2 == 1) r *= legendre_symbol(w, p);
  return r;
}

inline Integer integral_representative(const Rational& q) { return q.get_num() * q.get_den(); }

}  // namespace detail

/// Hilbert symbol (a,b)_v: +1 iff z^2 = a x^2 + b y^2 has a nontrivial solution in Q_v.
inline int hilbert_symbol(const Rational& a, const Rational& b, const Place& v) {
  if (a == 0 || b == 0) throw Error(Errc::zero_input, "hilbert symbol of zero");
  return detail::hilbert_integers(detail::integral_representative(a), detail::integral_representative(b), v);
}

/// True iff q is a square in the completion Q_v.
inline bool is_local_square(const Rational& q, const Place& v) {
  if (q == 0) throw Error(Errc::zero_input, "local square test of zero");
  Integer t = detail::integral_representative(q);
  if (v.is_infinite()) return t > 0;
  auto [k, u] = split_valuation(t, v.p());
  if (k % 2 == 1) return false;
  if (v.p() == 2) return mod(u, 8) == 1;
  return legendre_symbol(u, v.p()) == 1;
}

/// a and b define the same element of Q_v^x / (Q_v^x)^2.
inline bool same_local_class(const Rational& a, const Rational& b, const Place& v) {
  return is_local_square(a * b, v);
}

struct LocalClassConstraint {
  Place place;
  SquareClass cls;
};

inline constexpr unsigned long kDefaultRealizeBound = 1'000'000;

/// Smallest squarefree t (by |t|, positive first) lying in each prescribed local square class.
/// A solution always exists; `bound` caps |t| and SearchExhausted is raised past it.
inline Integer realize_square_classes(std::span<const LocalClassConstraint> constraints,
                                      unsigned long bound = kDefaultRealizeBound) {
  std::vector<Place> seen;
  for (const auto& c : constraints) {
    if (std::ranges::find(seen, c.place) != seen.end())
      throw Error(Errc::invalid_constraint, "place " + c.place.str() + " constrained twice");
    seen.push_back(c.place);
    if (c.place.is_infinite() && abs(c.cls.rep()) != 1)
      throw Error(Errc::invalid_constraint, "class at inf must be +1 or -1");
  }
  for (unsigned long m = 1; m <= bound; ++m) {
    for (int s : {1, -1}) {
      Integer t = Integer(m) * s;
      bool ok = std::ranges::all_of(constraints, [&](const LocalClassConstraint& c) {
        return same_local_class(Rational(t), Rational(c.cls.rep()), c.place);
      });
      if (ok && is_squarefree(t)) return t;
    }
  }
  throw Error(Errc::search_exhausted, "no squarefree |t| <= " + std::to_string(bound));
}

}  // namespace k3qf
