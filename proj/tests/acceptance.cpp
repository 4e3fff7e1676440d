// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "k3qf/k3qf.hpp"
#include "k3qf/io.hpp"
#include "oracles.hpp"

using namespace k3qf;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass;
  std::string detail;
};

std::string run_cli(const std::string& args, int& code) {
  const std::string cmd = std::string(K3QF_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) throw std::runtime_error("popen failed");
  std::string out;
  std::array<char, 4096> buf;
  while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
  const int status = pclose(pipe);
  code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return out;
}

std::string sig_list(const std::vector<Signature>& sigs) {
  std::ostringstream os;
  for (const auto& s : sigs) os << s;
  return os.str();
}

const std::vector<Signature> kK3Pairs{{19, 3}, {15, 7}, {11, 11}, {7, 15}, {3, 19}};

Outcome classify_k3() {
  const auto t0 = Clock::now();
  int code = 0;
  const std::string out = run_cli("--format machine qf classify --lattice K3", code);
  const double t = seconds_since(t0);
  const auto j = io::Json::parse(out);
  std::vector<Signature> got;
  for (const auto& p : j.at("admissible_signatures")) got.push_back({p.at(0).get<std::size_t>(), p.at(1).get<std::size_t>()});
  std::ostringstream d;
  d << "cli output " << sig_list(got) << ", exit " << code << ", " << t << " s";
  return {code == 0 && got == kK3Pairs && t < 1.0, d.str()};
}

Outcome certify_k3() {
  const auto k3 = k3_lattice();
  const auto q = k3.rational();
  const bool even = is_even(k3);
  const Integer det = k3.det();
  const auto disc = discriminant(q);
  const auto sig = signature(q);
  std::ostringstream d;
  d << "even=" << even << " det=" << to_string(det) << " disc=" << to_string(disc.rep()) << " sig=" << sig;
  return {even && abs(det) == 1 && disc.rep() == -1 && sig == Signature{3, 19}, d.str()};
}

Outcome hasse_product() {
  const auto q = k3_lattice().rational();
  int prod = 1;
  for (const auto& v : relevant_places(q)) prod *= hasse_invariant(q, v);
  const int c_inf = hasse_invariant(q, Place::infinity());
  std::ostringstream d;
  d << "finite product " << prod << ", c_inf " << c_inf << " (closed form " << hasse_at_infinity(19) << ")";
  return {prod == -1 && c_inf == -1 && hasse_at_infinity(19) == -1, d.str()};
}

Outcome reciprocity() {
  const auto t0 = Clock::now();
  long pairs = 0, bad = 0;
  for (long a = -50; a <= 50; ++a)
    for (long b = -50; b <= 50; ++b) {
      if (a == 0 || b == 0) continue;
      std::set<Place> places{Place::infinity(), Place::prime(2)};
      for (const auto& p : prime_divisors(Integer(a * b))) places.insert(Place::prime(p));
      int prod = 1;
      for (const auto& v : places) prod *= hilbert_symbol(Rational(a), Rational(b), v);
      ++pairs;
      if (prod != 1) ++bad;
    }
  const double t = seconds_since(t0);
  std::ostringstream d;
  d << pairs << " pairs, " << bad << " violations, " << t << " s";
  return {bad == 0 && pairs == 10000 && t < 30.0, d.str()};
}

Outcome isotropy_oracle() {
  std::mt19937 rng(20261016);
  std::uniform_int_distribution<long> coef(1, 10);
  const std::vector<long> primes{2, 3, 5, 7, 11, 13};
  long cases = 0, checks = 0, bad = 0;
  for (int it = 0; it < 1000; ++it) {
    const std::size_t n = 1 + it % 4;
    std::vector<long> a(n);
    RatVector ar;
    for (auto& x : a) {
      x = coef(rng) * (rng() % 2 ? 1 : -1);
      ar.emplace_back(x);
    }
    const auto q = QuadraticSpace::diagonal(ar);
    for (long p : primes) {
      ++checks;
      if (is_isotropic_local(q, Place::prime(p)) != oracle::padic_isotropic(a, p)) ++bad;
    }
    ++checks;
    if (is_isotropic_local(q, Place::infinity()) != oracle::real_isotropic(a)) ++bad;
    ++cases;
  }
  std::ostringstream d;
  d << cases << " forms, " << checks << " place checks, " << bad << " disagreements";
  return {bad == 0 && cases >= 500, d.str()};
}

Outcome congruence_invariance() {
  std::mt19937 rng(7);
  std::uniform_int_distribution<long> entry(-9, 9), num(-5, 5), den(1, 4);
  long pairs = 0, bad = 0;
  while (pairs < 200) {
    const std::size_t n = 1 + pairs % 6;
    IntMatrix g(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) g(i, j) = g(j, i) = entry(rng);
    if (determinant(g) == 0) continue;
    RatMatrix t(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) t(i, j) = make_rational(num(rng), den(rng));
    if (determinant(t) == 0) continue;
    const QuadraticSpace q(g);
    const auto qt = q.transformed(t);
    if (!(invariants(q) == invariants(qt)) || !is_equivalent(q, qt)) ++bad;
    ++pairs;
  }
  std::ostringstream d;
  d << pairs << " (form, transform) pairs, " << bad << " mismatches";
  return {bad == 0, d.str()};
}

Outcome construction_round_trip() {
  const auto lambda = k3_lattice().rational();
  const auto base = invariants(lambda);
  bool ok = true;
  std::ostringstream d;
  for (const auto& sig : admissible_signatures(k3_lattice())) {
    auto target = base;
    target.sig = sig;
    const auto built = construct_with_invariants(target);
    const bool match = invariants(built) == target;
    const bool equiv = is_equivalent(built, lambda);
    const bool want = sig == Signature{3, 19};
    ok = ok && match && equiv == want;
    d << (d.tellp() > 0 ? " " : "") << sig << (match ? " match" : " MISMATCH") << (equiv ? "/equiv" : "/inequiv");
  }
  return {ok, d.str()};
}

Outcome polarized_complement() {
  const auto k3 = k3_lattice();
  bool ok = true;
  std::ostringstream d;
  for (long dd = 1; dd <= 10; ++dd) {
    const auto w = polarization_vector(dd);
    const Integer sq = k3.pair(w.coords, w.coords);
    const Integer order = disc_group_order(k3_polarized_lattice(dd));
    ok = ok && sq == 2 * dd && order == 2 * dd;
    d << to_string(order) << (dd < 10 ? "," : "");
  }
  return {ok, "disc group orders " + d.str()};
}

Outcome period_decomposition() {
  IntVector u(kK3Rank, 0), v(kK3Rank, 0);
  u[2] = u[3] = 1;
  v[4] = v[5] = 1;
  const PeriodPoint p(u, v);
  const auto h = neron_severi(p);
  const auto ns = signature(restricted_lattice(h.ns_basis).rational());
  const auto t = signature(restricted_lattice(h.t_basis).rational());
  const auto hn = hodge_numbers(p);
  bool pol = true;
  for (long d = 1; d <= 1000; ++d) pol = pol && check_polarization(p, d);
  std::ostringstream d;
  d << "rho=" << h.rho << " NS" << ns << " T" << t << " hodge=(" << hn.h20 << "," << hn.h11 << "," << hn.h02
    << ") polarization d=1..1000 " << (pol ? "all true" : "FAILED");
  return {h.rho == 20 && ns == Signature{1, 19} && t == Signature{2, 0} && hn == HodgeNumbers{1, 20, 1} && pol,
          d.str()};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"classify K3 via CLI", classify_k3},
      {"K3 lattice certification", certify_k3},
      {"K3 Hasse product", hasse_product},
      {"Hilbert reciprocity |a|,|b| <= 50", reciprocity},
      {"local isotropy vs brute force", isotropy_oracle},
      {"invariance under congruence", congruence_invariance},
      {"construction round-trip on K3 signatures", construction_round_trip},
      {"polarized complement disc 2d", polarized_complement},
      {"period decomposition", period_decomposition},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::cout << (o.pass ? "PASS" : "FAIL") << " [" << i + 1 << "] " << criteria[i].first << ": " << o.detail
              << '\n';
  }
  return failures == 0 ? 0 : 1;
}
