#pragma once

#include <algorithm>
#include <fstream>
#include <iterator>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "k3qf/io.hpp"
#include "k3qf/k3qf.hpp"

namespace k3qf::cli {

using io::Json;

enum ExitCode : int {
  kSuccess = 0,
  kFalse = 1,
  kParse = 2,
  kDegenerate = 3,
  kUnsupportedRank = 4,
  kInvalidPeriod = 5,
};

enum class Format { text, machine };

inline int exit_code_for(Errc e) {
  switch (e) {
    case Errc::degenerate:
    case Errc::degenerate_complement: return kDegenerate;
    case Errc::rank_too_small: return kUnsupportedRank;
    case Errc::not_on_quadric:
    case Errc::not_positive: return kInvalidPeriod;
    default: return kParse;
  }
}

namespace detail {

inline bool is_scalar(const Json& j) { return !j.is_array() && !j.is_object(); }

inline std::string scalar_text(const Json& j) { return j.is_string() ? j.get<std::string>() : j.dump(); }

inline void render_text(std::ostream& os, const Json& j, const std::string& indent) {
  for (const auto& [key, val] : j.items()) {
    os << indent << key << ":";
    if (is_scalar(val)) {
      os << ' ' << scalar_text(val) << '\n';
    } else if (val.is_array() && std::ranges::all_of(val, is_scalar)) {
      os << " [";
      for (std::size_t i = 0; i < val.size(); ++i) os << (i ? ", " : "") << scalar_text(val[i]);
      os << "]\n";
    } else if (val.is_array() && std::ranges::all_of(val, [](const Json& r) { return r.is_array(); })) {
      os << '\n';
      for (const auto& r : val) {
        os << indent << "  ";
        for (std::size_t i = 0; i < r.size(); ++i) os << (i ? " " : "") << scalar_text(r[i]);
        os << '\n';
      }
    } else if (val.is_object()) {
      os << '\n';
      render_text(os, val, indent + "  ");
    } else {
      os << ' ' << val.dump() << '\n';
    }
  }
}

}  // namespace detail

/// Machine mode is one line of compact JSON; text mode is "key: value" lines.
inline void emit(std::ostream& os, const Json& report, Format fmt) {
  if (fmt == Format::machine)
    os << report.dump() << '\n';
  else
    detail::render_text(os, report, "");
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::parse, "cannot read '" + path + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline RatMatrix read_gram(const std::string& path) {
  auto doc = io::parse_document(read_file(path));
  if (auto* g = std::get_if<io::GramDocument>(&doc)) return g->gram;
  throw Error(Errc::parse, "'" + path + "' is not a gram document");
}

inline Json signature_json(const Signature& s) { return Json::array({s.r, s.s}); }

inline Json invariants_json(const QuadraticSpace& q) {
  const GlobalInvariants g = invariants(q);
  Json j;
  j["dim"] = g.dim;
  j["det"] = io::to_json(q.det());
  j["disc"] = io::to_json(g.disc.rep());
  j["signature"] = signature_json(g.sig);
  j["diagonal"] = io::to_json(q.diagonal_form().entries);
  j["relevant_places"] = io::to_json(g.relevant);
  Json h = Json::object();
  for (const auto& p : g.relevant) h[to_string(p)] = g.hasse(p);
  j["hasse"] = h;
  j["hasse_infinity"] = g.hasse_infinity();
  j["finite_hasse_product"] = g.finite_hasse_product();
  return j;
}

inline Json lattice_json(const IntegralLattice& l) {
  Json j;
  j["label"] = l.label();
  j["rank"] = l.rank();
  j["gram"] = io::to_json(l.gram());
  j["det"] = io::to_json(l.det());
  j["even"] = is_even(l);
  j["disc_group_order"] = io::to_json(disc_group_order(l));
  const Json inv = invariants_json(l.rational());
  for (auto& [k, v] : inv.items())
    if (k != "dim" && k != "det") j[k] = v;
  return j;
}

template <class F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  }
}

inline int cmd_invariants(const std::string& file, Format fmt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    QuadraticSpace q(read_gram(file));
    emit(out, invariants_json(q), fmt);
    return int(kSuccess);
  });
}

inline int cmd_equiv(const std::string& a, const std::string& b, Format fmt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    QuadraticSpace qa(read_gram(a)), qb(read_gram(b));
    const std::string diff = first_difference(invariants(qa), invariants(qb));
    Json j;
    j["equivalent"] = diff.empty();
    if (!diff.empty()) j["reason"] = diff;
    emit(out, j, fmt);
    return int(diff.empty() ? kSuccess : kFalse);
  });
}

inline int cmd_classify(const std::optional<std::string>& file, const std::optional<std::string>& label,
                        std::optional<Integer> d, Format fmt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (file.has_value() == label.has_value()) throw Error(Errc::parse, "give exactly one of FILE or --lattice");
    std::vector<Signature> sigs;
    std::size_t dim = 0;
    if (label) {
      auto l = catalog_lattice(*label, d);
      dim = l.rank();
      sigs = admissible_signatures(l);
    } else {
      QuadraticSpace q(read_gram(*file));
      dim = q.dim();
      sigs = admissible_signatures(local_data(q));
    }
    Json j;
    j["dim"] = dim;
    Json a = Json::array();
    for (const auto& s : sigs) a.push_back(signature_json(s));
    j["admissible_signatures"] = a;
    emit(out, j, fmt);
    return int(kSuccess);
  });
}

inline int cmd_lattice(const std::string& label, std::optional<Integer> d, Format fmt, std::ostream& out,
                       std::ostream& err) {
  return guarded(err, [&] {
    emit(out, lattice_json(catalog_lattice(label, d)), fmt);
    return int(kSuccess);
  });
}

inline int cmd_period(const std::string& file, std::optional<Integer> d, Format fmt, std::ostream& out,
                      std::ostream& err) {
  return guarded(err, [&] {
    auto doc = io::parse_document(read_file(file));
    auto* pd = std::get_if<io::PeriodDocument>(&doc);
    if (!pd) throw Error(Errc::parse, "'" + file + "' is not a u/v document");
    if (pd->u.size() != kK3Rank || pd->v.size() != kK3Rank) throw Error(Errc::parse, "u and v need 22 entries");
    Json j;
    std::optional<PeriodPoint> p;
    try {
      p.emplace(pd->u, pd->v);
    } catch (const Error& e) {
      j["valid"] = false;
      j["violated"] = std::string(to_string(e.code()));
      emit(out, j, fmt);
      err << "error: " << e.what() << '\n';
      return exit_code_for(e.code());
    }
    const auto h = neron_severi(*p);
    j["valid"] = true;
    j["u"] = io::to_json(p->u());
    j["v"] = io::to_json(p->v());
    j["rho"] = h.rho;
    j["ns_basis"] = io::to_json(h.ns_basis);
    j["t_basis"] = io::to_json(h.t_basis);
    j["index"] = io::to_json(h.index);
    j["ns_signature"] = signature_json(signature(restricted_lattice(h.ns_basis).rational()));
    j["t_signature"] = signature_json(signature(restricted_lattice(h.t_basis).rational()));
    const auto hn = hodge_numbers(*p);
    j["hodge_numbers"] = Json::array({hn.h20, hn.h11, hn.h02});
    if (d) {
      if (*d <= 0) throw Error(Errc::parse, "--d must be positive");
      j["d"] = io::to_json(*d);
      j["polarization"] = check_polarization(*p, *d);
    }
    emit(out, j, fmt);
    return int(kSuccess);
  });
}

inline int cmd_reciprocity(const Integer& a, const Integer& b, Format fmt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (a == 0 || b == 0) throw Error(Errc::parse, "--a and --b must be nonzero");
    std::set<Place> places{Place::infinity(), Place::prime(2)};
    for (auto& p : prime_divisors(Integer(a * b))) places.insert(Place::prime(p));
    Json symbols = Json::object();
    int product = 1;
    for (const auto& v : places) {
      const int h = hilbert_symbol(Rational(a), Rational(b), v);
      symbols[v.str()] = h;
      product *= h;
    }
    Json j;
    j["a"] = io::to_json(a);
    j["b"] = io::to_json(b);
    j["symbols"] = symbols;
    j["product"] = product;
    emit(out, j, fmt);
    return int(product == 1 ? kSuccess : kFalse);
  });
}

inline int cmd_realize(const std::string& file, unsigned long bound, Format fmt, std::ostream& out,
                       std::ostream& err) {
  return guarded(err, [&] {
    auto doc = io::parse_document(read_file(file));
    auto* cd = std::get_if<io::ConstraintsDocument>(&doc);
    if (!cd) throw Error(Errc::parse, "'" + file + "' is not a constraints document");
    const Integer t = realize_square_classes(cd->constraints, bound);
    Json j;
    j["t"] = io::to_json(t);
    emit(out, j, fmt);
    return int(kSuccess);
  });
}

}  // namespace k3qf::cli
