#include "welfarelens/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include "CLI11.hpp"
#include "welfarelens/csv.hpp"
#include "welfarelens/curves.hpp"
#include "welfarelens/dominance.hpp"
#include "welfarelens/report.hpp"
#include "welfarelens/welfare.hpp"

namespace welfarelens::cli {
namespace {

double parse_double(const std::string& token, const std::string& what) {
  double v = 0.0;
  const char* begin = token.data();
  const char* end = begin + token.size();
  auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc() || ptr != end || token.empty()) {
    throw std::domain_error("unparsable " + what + " '" + token + "'");
  }
  return v;
}

Distribution parse_dist_spec(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string family = spec.substr(0, colon);
  std::vector<double> ps;
  if (colon != std::string::npos) {
    std::string rest = spec.substr(colon + 1);
    std::size_t start = 0;
    while (start <= rest.size()) {
      const auto comma = rest.find(',', start);
      const auto len = (comma == std::string::npos ? rest.size() : comma) - start;
      ps.push_back(parse_double(rest.substr(start, len),
                                "parameter for " + family));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
  }
  auto want = [&](std::size_t n, const char* names) {
    if (ps.size() != n) {
      throw std::domain_error(family + " takes " + std::to_string(n) +
                              " parameter(s): " + family + ":" + names);
    }
  };
  if (family == "degenerate") {
    want(1, "value");
    return Degenerate{ps[0]};
  }
  if (family == "uniform") {
    want(2, "lo,hi");
    return Uniform{ps[0], ps[1]};
  }
  if (family == "exponential") {
    want(1, "rate");
    return Exponential{ps[0]};
  }
  if (family == "pareto") {
    want(2, "shape,x_min");
    return Pareto{ps[0], ps[1]};
  }
  if (family == "lognormal") {
    want(2, "log_mean,log_sd");
    return Lognormal{ps[0], ps[1]};
  }
  throw std::domain_error(
      "unknown distribution '" + family +
      "' (expected degenerate, uniform, exponential, pareto or lognormal)");
}

struct SourceOpts {
  std::string input;
  std::string column = "income";
  std::string weight_column;
  std::string dist;
};

void add_source_flags(CLI::App* cmd, SourceOpts& s, const char* suffix) {
  const std::string sfx = suffix;
  cmd->add_option("--input" + sfx, s.input,
                  "CSV file holding the incomes" +
                      (sfx.empty() ? "" : " of distribution " + sfx));
  cmd->add_option("--column" + sfx, s.column, "income column name")
      ->capture_default_str();
  cmd->add_option("--weight-column" + sfx, s.weight_column,
                  "population weight column name");
  cmd->add_option("--dist" + sfx, s.dist,
                  "parametric spec, e.g. pareto:2,1 or uniform:0,1");
}

Distribution load_source(const SourceOpts& s) {
  if (!s.input.empty() && !s.dist.empty()) {
    throw std::domain_error("give either --input or --dist, not both");
  }
  if (!s.input.empty()) {
    return Distribution(from_csv_column(s.input, s.column, s.weight_column));
  }
  if (!s.dist.empty()) {
    return parse_dist_spec(s.dist);
  }
  throw std::domain_error("an input source is required (--input or --dist)");
}

double resolve_rel_tol(const CLI::Option* opt, double flag_value) {
  if (opt->count() > 0) return flag_value;
  if (const char* env = std::getenv("WELFARELENS_REL_TOL")) {
    return parse_double(env, "WELFARELENS_REL_TOL value");
  }
  return kDefaultRelTol;
}

CurveKind parse_curve_kind(const std::string& name) {
  if (name == "lorenz") return CurveKind::lorenz;
  if (name == "generalized_lorenz") return CurveKind::generalized_lorenz;
  if (name == "bonferroni") return CurveKind::bonferroni_curve;
  if (name == "uniformity") return CurveKind::uniformity_ratio;
  if (name == "zenga") return CurveKind::zenga_inequality;
  throw std::domain_error("unknown curve kind '" + name +
                          "' (expected lorenz, generalized_lorenz, "
                          "bonferroni, uniformity or zenga)");
}

WelfareFamily parse_family(const std::string& name) {
  if (name == "gini") return WelfareFamily::gini;
  if (name == "gini_k") return WelfareFamily::gini_generalized;
  if (name == "bonferroni") return WelfareFamily::bonferroni;
  if (name == "zenga") return WelfareFamily::zenga;
  throw std::domain_error(
      "unknown index family '" + name +
      "' (expected gini, gini_k, bonferroni or zenga)");
}

WeightVariant parse_variant(const std::string& name) {
  if (name == "nu") return WeightVariant::nu;
  if (name == "nu_star") return WeightVariant::nu_star;
  if (name == "beta") return WeightVariant::beta;
  throw std::domain_error("unknown weight variant '" + name +
                          "' (expected nu, nu_star or beta)");
}

void check_format(const std::string& format, bool csv_allowed) {
  if (format == "json") return;
  if (format == "csv") {
    if (csv_allowed) return;
    throw std::domain_error(
        "csv output is only available for curve and weights");
  }
  throw std::domain_error("unknown format '" + format +
                          "' (expected json or csv)");
}

void emit(const std::string& text, const std::string& output_path,
          std::ostream& out) {
  const bool needs_newline = text.empty() || text.back() != '\n';
  if (output_path.empty()) {
    out << text;
    if (needs_newline) out << "\n";
    return;
  }
  std::ofstream file(output_path);
  if (!file) throw std::runtime_error("cannot write '" + output_path + "'");
  file << text;
  if (needs_newline) file << "\n";
}

double official_index(const Distribution& d, const WelfareKind& kind,
                      double rel_tol) {
  switch (kind.family) {
    case WelfareFamily::gini: return gini(d, rel_tol);
    case WelfareFamily::gini_generalized:
      return gini_generalized(d, kind.k, rel_tol);
    case WelfareFamily::bonferroni: return bonferroni(d, rel_tol);
    case WelfareFamily::zenga: return zenga_index(d, rel_tol);
  }
  throw std::logic_error("unreachable welfare family");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"inequality curves, indices and the welfare they imply"};
  app.require_subcommand(1);

  SourceOpts src, src2;
  std::string format = "json";
  std::string output_path;
  std::string kind_name = "lorenz";
  std::string family_name = "zenga";
  std::string variant_name = "nu";
  std::vector<double> orders = {2.0};
  double order = 2.0;
  double rel_tol = kDefaultRelTol;
  int grid = 99;
  int dominance_grid = 1001;

  auto add_common = [&](CLI::App* cmd, bool with_source = true) {
    if (with_source) add_source_flags(cmd, src, "");
    cmd->add_option("--rel-tol", rel_tol,
                    "relative tolerance for numeric integrals (env "
                    "WELFARELENS_REL_TOL, flag wins)");
    cmd->add_option("--output", output_path, "write the report to this file");
    return cmd;
  };

  CLI::App* index_cmd =
      add_common(app.add_subcommand("index", "all inequality indices"));
  index_cmd->add_option("--k", orders, "orders for the generalized gini")
      ->delimiter(',')
      ->capture_default_str();
  index_cmd->add_option("--format", format, "json")->capture_default_str();

  CLI::App* curve_cmd =
      add_common(app.add_subcommand("curve", "tabulate an inequality curve"));
  curve_cmd
      ->add_option("--kind", kind_name,
                   "lorenz, generalized_lorenz, bonferroni, uniformity or "
                   "zenga")
      ->capture_default_str();
  curve_cmd->add_option("--grid", grid, "number of interior grid points")
      ->capture_default_str();
  curve_cmd->add_option("--format", format, "json or csv")
      ->capture_default_str();

  CLI::App* weights_cmd = add_common(
      app.add_subcommand("weights", "tabulate a welfare weight function"));
  weights_cmd
      ->add_option("--kind", family_name,
                   "gini, gini_k, bonferroni or zenga")
      ->capture_default_str();
  weights_cmd
      ->add_option("--variant", variant_name,
                   "nu, or for zenga also nu_star and beta")
      ->capture_default_str();
  weights_cmd->add_option("--k", order, "order for gini_k")
      ->capture_default_str();
  weights_cmd->add_option("--grid", grid, "number of interior grid points")
      ->capture_default_str();
  weights_cmd->add_option("--format", format, "json or csv")
      ->capture_default_str();

  CLI::App* welfare_cmd = add_common(
      app.add_subcommand("welfare", "welfare implied by an index"));
  welfare_cmd
      ->add_option("--kind", family_name, "gini, gini_k, bonferroni or zenga")
      ->capture_default_str();
  welfare_cmd->add_option("--k", order, "order for gini_k")
      ->capture_default_str();
  welfare_cmd->add_option("--format", format, "json")->capture_default_str();

  CLI::App* dominance_cmd = add_common(app.add_subcommand(
      "dominance", "compare two distributions pointwise"));
  add_source_flags(dominance_cmd, src2, "2");
  dominance_cmd
      ->add_option("--grid", dominance_grid, "uniform grid points")
      ->capture_default_str();
  dominance_cmd->add_option("--format", format, "json")
      ->capture_default_str();

  CLI::App* verify_cmd = add_common(app.add_subcommand(
      "verify", "certify the analytic weight propositions numerically"));
  verify_cmd->add_option("--format", format, "json")->capture_default_str();

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("welfarelens");
  for (const std::string& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (index_cmd->parsed()) {
      check_format(format, false);
      const double tol = resolve_rel_tol(index_cmd->get_option("--rel-tol"),
                                         rel_tol);
      emit(to_json(indices(load_source(src), orders, tol)), output_path, out);
      return 0;
    }
    if (curve_cmd->parsed()) {
      check_format(format, true);
      const CurveKind kind = parse_curve_kind(kind_name);
      CurveGrid g = curve_grid(load_source(src), kind, grid);
      emit(format == "csv" ? to_csv(g) : to_json(g), output_path, out);
      return 0;
    }
    if (weights_cmd->parsed()) {
      check_format(format, true);
      const double tol = resolve_rel_tol(weights_cmd->get_option("--rel-tol"),
                                         rel_tol);
      const WelfareKind kind{parse_family(family_name), order};
      const WeightVariant variant = parse_variant(variant_name);
      const bool have_source = !src.input.empty() || !src.dist.empty();
      Distribution d = Degenerate{1.0};
      if (have_source) d = load_source(src);
      WeightProfile profile = weight_profile(have_source ? &d : nullptr, kind,
                                             variant, grid, tol);
      emit(format == "csv" ? to_csv(profile) : to_json(profile), output_path,
           out);
      return 0;
    }
    if (welfare_cmd->parsed()) {
      check_format(format, false);
      const double tol = resolve_rel_tol(welfare_cmd->get_option("--rel-tol"),
                                         rel_tol);
      const WelfareKind kind{parse_family(family_name), order};
      const Distribution d = load_source(src);
      WelfareReport r;
      r.kind = kind;
      r.mean = d.mean();
      r.index = official_index(d, kind, tol);
      r.value = r.mean * (1.0 - r.index);
      r.direct = welfare_direct(d, kind, tol);
      r.from_curve = welfare_from_curve(d, kind, tol);
      emit(to_json(r), output_path, out);
      return 0;
    }
    if (dominance_cmd->parsed()) {
      check_format(format, false);
      EquivalenceReport rep = equivalence_check(
          load_source(src), load_source(src2), dominance_grid);
      emit(to_json(rep), output_path, out);
      return 0;
    }
    if (verify_cmd->parsed()) {
      check_format(format, false);
      const double tol = resolve_rel_tol(verify_cmd->get_option("--rel-tol"),
                                         rel_tol);
      const auto certs = certify(load_source(src), tol);
      const bool all_passed =
          std::all_of(certs.begin(), certs.end(),
                      [](const PropositionCertificate& c) { return c.passed; });
      emit(to_json(certs, all_passed), output_path, out);
      return all_passed ? 0 : 2;
    }
    throw std::logic_error("no subcommand dispatched");
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace welfarelens::cli
