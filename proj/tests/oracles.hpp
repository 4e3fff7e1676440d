#pragma once

// Brute-force references used only by tests. Nothing here calls into the library's symbol
// or criterion code; everything is machine-integer enumeration.

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <tuple>
#include <vector>

namespace k3qf::oracle {

inline long ipow(long b, int e) {
  long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

inline long modp(long a, long m) {
  long r = a % m;
  return r < 0 ? r + m : r;
}

// Valuation of a nonzero integer.
inline int vp(long x, long p) {
  int v = 0;
  while (x % p == 0) {
    x /= p;
    ++v;
  }
  return v;
}

inline std::set<long> squares_mod(long p) {
  std::set<long> s;
  for (long x = 1; x < p; ++x) s.insert(x * x % p);
  return s;
}

inline int legendre(long a, long p) {
  long r = modp(a, p);
  if (r == 0) return 0;
  return squares_mod(p).contains(r) ? 1 : -1;
}

/// Does sum a_i x_i^2 = 0 have a nontrivial solution in Q_p?
///
/// After stripping even powers of p from each coefficient (a change of variables), a primitive
/// p-adic zero exists iff some primitive x mod p^k has f(x) = 0 mod p^{2 delta + 1}, where
/// delta = min_i v_p(2 a_i x_i) and k = 2 (v_p(2) + max_i v_p(a_i)) + 1 (Hensel's lemma
/// in the coordinate attaining delta). The search runs meet-in-the-middle over deduplicated
/// partial sums.
inline bool padic_isotropic(std::vector<long> a, long p) {
  if (a.size() < 2) return false;
  int vmax = 0;
  for (auto& x : a) {
    int v = vp(x, p);
    x /= ipow(p, 2 * (v / 2));
    vmax = std::max(vmax, v % 2);
  }
  const int k = 2 * ((p == 2 ? 1 : 0) + vmax) + 1;
  const long m = ipow(p, k);

  // States (sum mod m, min valuation d in [0, k], has unit coordinate) packed into a bitmap.
  const long nstates = m * (k + 1) * 2;
  auto index = [&](long s, int d, bool u) { return (s * (k + 1) + d) * 2 + (u ? 1 : 0); };
  auto coordinate_states = [&](long ai) {
    std::vector<char> seen(nstates, 0);
    std::vector<std::tuple<long, int, bool>> out;
    for (long x = 0; x < m; ++x) {
      const long r = modp(ai * (x * x % m), m);
      const int d = x == 0 ? k : std::min(k, vp(2 * ai * x, p));
      const bool u = x % p != 0;
      if (!seen[index(r, d, u)]) {
        seen[index(r, d, u)] = 1;
        out.emplace_back(r, d, u);
      }
    }
    return out;
  };
  auto half_states = [&](std::size_t from, std::size_t to) {
    std::vector<std::tuple<long, int, bool>> acc{{0, k, false}};
    for (std::size_t i = from; i < to; ++i) {
      const auto cs = coordinate_states(a[i]);
      std::vector<char> seen(nstates, 0);
      std::vector<std::tuple<long, int, bool>> next;
      for (const auto& [s1, d1, u1] : acc)
        for (const auto& [s2, d2, u2] : cs) {
          const long s = (s1 + s2) % m;
          const int d = std::min(d1, d2);
          const bool u = u1 || u2;
          if (!seen[index(s, d, u)]) {
            seen[index(s, d, u)] = 1;
            next.emplace_back(s, d, u);
          }
        }
      acc = std::move(next);
    }
    return acc;
  };
  const std::size_t h = a.size() / 2;
  const auto left = half_states(0, h);
  const auto right = half_states(h, a.size());

  // right grouped by (d, unit); residues reduced modulo every p^e.
  std::map<std::pair<int, bool>, std::vector<std::vector<char>>> groups;
  for (const auto& [s, d, u] : right) {
    auto& g = groups[{d, u}];
    if (g.empty())
      for (int e = 0; e <= k; ++e) g.emplace_back(ipow(p, e), 0);
    for (int e = 1; e <= k; ++e) g[e][s % ipow(p, e)] = 1;
  }
  for (const auto& [s1, d1, u1] : left) {
    for (const auto& [key, sets] : groups) {
      const auto [d2, u2] = key;
      if (!u1 && !u2) continue;
      const int e = 2 * std::min(d1, d2) + 1;
      if (e > k) continue;
      if (sets[e][modp(-s1, ipow(p, e))]) return true;
    }
  }
  return false;
}

inline bool real_isotropic(const std::vector<long>& a) {
  bool pos = false, neg = false;
  for (long x : a) (x > 0 ? pos : neg) = true;
  return pos && neg;
}

/// (a, b)_p from solvability of z^2 - a x^2 - b y^2 = 0.
inline int hilbert(long a, long b, long p) { return padic_isotropic({1, -a, -b}, p) ? 1 : -1; }

inline int hilbert_real(long a, long b) { return real_isotropic({1, -a, -b}) ? 1 : -1; }

/// t is a square in Q_p iff <1, -t> is isotropic.
inline bool padic_square(long t, long p) { return padic_isotropic({1, -t}, p); }

/// Cofactor expansion; exponential, for small matrices only.
inline long long laplace_det(const std::vector<std::vector<long long>>& m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  if (n == 1) return m[0][0];
  long long det = 0;
  for (std::size_t c = 0; c < n; ++c) {
    if (m[0][c] == 0) continue;
    std::vector<std::vector<long long>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<long long> row;
      for (std::size_t j = 0; j < n; ++j)
        if (j != c) row.push_back(m[r][j]);
      minor.push_back(row);
    }
    det += (c % 2 == 0 ? 1 : -1) * m[0][c] * laplace_det(minor);
  }
  return det;
}

inline std::vector<long> primes_up_to(long n) {
  std::vector<bool> sieve(n + 1, true);
  std::vector<long> ps;
  for (long i = 2; i <= n; ++i) {
    if (!sieve[i]) continue;
    ps.push_back(i);
    for (long j = i * i; j <= n; j += i) sieve[j] = false;
  }
  return ps;
}

}  // namespace k3qf::oracle
