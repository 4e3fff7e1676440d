// Command-line front end: one subcommand per question, exit codes
// 0 true/success, 1 false, 2 parse, 3 degenerate, 4 unsupported rank, 5 invalid period point.

#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"

namespace {

using k3qf::Integer;
using k3qf::cli::Format;

std::optional<Integer> parse_degree(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return k3qf::io::parse_integer(k3qf::io::Json(s));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact rational quadratic forms and K3 lattices"};
  app.require_subcommand(1);

  std::string format = "text";
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "machine"}));

  std::string file, file_b, label, degree, a_arg, b_arg;
  unsigned long bound = k3qf::kDefaultRealizeBound;

  auto* qf = app.add_subcommand("qf", "Rational quadratic spaces")->require_subcommand(1);
  auto* qf_inv = qf->add_subcommand("invariants", "dim, discriminant, signature, Hasse invariants");
  qf_inv->add_option("file", file, "Gram document")->required();
  auto* qf_equiv = qf->add_subcommand("equiv", "Rational equivalence of two Gram documents");
  qf_equiv->add_option("a", file, "First Gram document")->required();
  qf_equiv->add_option("b", file_b, "Second Gram document")->required();
  auto* qf_classify = qf->add_subcommand("classify", "Signatures compatible with the finite local data");
  qf_classify->add_option("file", file, "Gram document");
  qf_classify->add_option("--lattice", label, "Catalog label: U, E8, E8m, K3, K3-2d");
  qf_classify->add_option("--d", degree, "Degree for K3-2d");

  auto* lat = app.add_subcommand("lattice", "Lattice catalog")->require_subcommand(1);
  auto* lat_show = lat->add_subcommand("show", "Gram matrix and invariants of a catalog lattice");
  lat_show->add_option("--lattice", label, "Catalog label: U, E8, E8m, K3, K3-2d")->required();
  lat_show->add_option("--d", degree, "Degree for K3-2d");

  auto* per = app.add_subcommand("period", "Rational period points")->require_subcommand(1);
  auto* per_an = per->add_subcommand("analyze", "Validity, NS/T decomposition, polarization");
  per_an->add_option("file", file, "u/v document")->required();
  per_an->add_option("--d", degree, "Check the polarization e + d f");

  auto* chk = app.add_subcommand("check", "Local symbol checks")->require_subcommand(1);
  auto* chk_rec = chk->add_subcommand("reciprocity", "Hilbert symbols of (a, b) and their product");
  chk_rec->add_option("--a", a_arg, "Nonzero integer")->required();
  chk_rec->add_option("--b", b_arg, "Nonzero integer")->required();
  auto* chk_real = chk->add_subcommand("realize", "Squarefree integer with prescribed local square classes");
  chk_real->add_option("file", file, "constraints document")->required();
  chk_real->add_option("--bound", bound, "Search bound on |t|");

  // Subcommands accept --format after their own arguments too.
  for (auto* sub : {qf_inv, qf_equiv, qf_classify, lat_show, per_an, chk_rec, chk_real})
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "machine"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return k3qf::cli::kParse;
  }

  const Format fmt = format == "machine" ? Format::machine : Format::text;
  auto& out = std::cout;
  auto& err = std::cerr;
  try {
    const auto d = parse_degree(degree);
    auto opt = [](const std::string& s) { return s.empty() ? std::nullopt : std::optional<std::string>(s); };
    if (*qf_inv) return k3qf::cli::cmd_invariants(file, fmt, out, err);
    if (*qf_equiv) return k3qf::cli::cmd_equiv(file, file_b, fmt, out, err);
    if (*qf_classify) return k3qf::cli::cmd_classify(opt(file), opt(label), d, fmt, out, err);
    if (*lat_show) return k3qf::cli::cmd_lattice(label, d, fmt, out, err);
    if (*per_an) return k3qf::cli::cmd_period(file, d, fmt, out, err);
    if (*chk_rec)
      return k3qf::cli::cmd_reciprocity(k3qf::io::parse_integer(k3qf::io::Json(a_arg)),
                                        k3qf::io::parse_integer(k3qf::io::Json(b_arg)), fmt, out, err);
    if (*chk_real) return k3qf::cli::cmd_realize(file, bound, fmt, out, err);
  } catch (const k3qf::Error& e) {
    err << "error: " << e.what() << '\n';
    return k3qf::cli::exit_code_for(e.code());
  }
  return k3qf::cli::kParse;
}
