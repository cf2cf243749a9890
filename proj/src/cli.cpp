#include "lpcurse/cli.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <new>
#include <optional>
#include <ostream>
#include <sstream>
#include <vector>

#include <CLI11.hpp>

#include "lpcurse/analytic.hpp"
#include "lpcurse/certifier.hpp"
#include "lpcurse/discrepancy.hpp"
#include "lpcurse/errors.hpp"
#include "lpcurse/json_io.hpp"
#include "lpcurse/pointsets.hpp"

namespace lpcurse::cli {

namespace {

// Shortest round-trip representation, used for CSV and JSON.
std::string exact(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

// Ten significant digits, used for text output.
std::string text(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

double parse_exponent(const std::string& s) {
  if (s == "inf" || s == "infinity") return std::numeric_limits<double>::infinity();
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw CLI::ValidationError("--p", "'" + s + "' is neither a number nor 'inf'");
  }
  return value;
}

// Writes to `path`, or to `out` when the path is empty or "-".
void emit(const std::string& path, const std::string& content, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << content;
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file || !(file << content)) throw ParseError("cannot write " + path, 0);
}

struct ConstantsArgs {
  std::vector<double> p;
  std::string format = "csv";
};

void run_constants(const ConstantsArgs& args, std::ostream& out) {
  std::vector<HolderPair> pairs;
  for (double p : args.p) pairs.push_back(holder_conjugate(p));

  nlohmann::json rows = nlohmann::json::array();
  std::ostringstream csv;
  csv << (args.format == "text" ? "p C_p C_tilde_p\n" : "p,C_p,C_tilde_p\n");
  for (const auto& pair : pairs) {
    const double cp = decomposition_constants(pair).c_p;
    const double ct = spline_constants(pair).c_tilde;
    if (args.format == "json") {
      rows.push_back({{"p", pair.p()}, {"C_p", cp}, {"C_tilde_p", ct}});
    } else if (args.format == "text") {
      csv << text(pair.p()) << ' ' << text(cp) << ' ' << text(ct) << '\n';
    } else {
      csv << exact(pair.p()) << ',' << exact(cp) << ',' << exact(ct) << '\n';
    }
  }
  if (args.format == "json") {
    out << rows.dump(2) << '\n';
  } else {
    out << csv.str();
  }
}

struct FigureArgs {
  std::vector<std::string> curves{"cp", "cptilde"};
  double p_min = 1.001;
  double p_max = 50.0;
  unsigned samples = 200;
  std::string out_path;
};

void run_figure(const FigureArgs& args, std::ostream& out) {
  if (!(args.p_min > 1.0) || !(args.p_max > args.p_min) || !std::isfinite(args.p_max)) {
    throw DomainError("figure needs 1 < p-min < p-max < inf");
  }
  if (args.samples == 0) throw DomainError("figure needs at least one sample");
  std::ostringstream csv;
  csv << 'p';
  for (const auto& c : args.curves) csv << ',' << c;
  csv << '\n';
  // Log-spaced over (p_min, p_max].
  const double ratio = std::log(args.p_max / args.p_min);
  for (unsigned i = 1; i <= args.samples; ++i) {
    const double p = i == args.samples ? args.p_max
                                       : args.p_min * std::exp(ratio * i / args.samples);
    const auto pair = holder_conjugate(p);
    csv << exact(p);
    for (const auto& c : args.curves) {
      csv << ',' << exact(c == "cp" ? decomposition_constants(pair).c_p
                                    : spline_constants(pair).c_tilde);
    }
    csv << '\n';
  }
  emit(args.out_path, csv.str(), out);
}

struct GenArgs {
  std::string kind;
  std::size_t d = 0;
  std::optional<std::size_t> n;
  std::optional<std::size_t> m;
  std::uint64_t seed = 0;
  std::string out_path;
};

void run_gen(const GenArgs& args, std::ostream& out) {
  const bool grid = args.kind == "grid" || args.kind == "centered-grid";
  if (grid && !args.m) throw CLI::RequiredError("--m is required for grid kinds");
  if (!grid && !args.n) throw CLI::RequiredError("--n is required for " + args.kind);
  PointSet ps = grid                      ? gen_grid(args.d, *args.m, args.kind == "centered-grid")
                : args.kind == "halton" ? gen_halton(args.d, *args.n)
                                        : gen_random(args.d, *args.n, args.seed);
  emit(args.out_path, format_rule(QuadratureRule::qmc(std::move(ps)), false), out);
}

struct DiscArgs {
  std::string points;
  std::string p = "2";
  std::string method;
  std::uint64_t samples = 100000;
  std::uint64_t seed = 0;
  unsigned nodes = 8;
  std::uint64_t cap = kDefaultGridCap;
  std::string format = "text";
};

void run_disc(const DiscArgs& args, std::ostream& out) {
  const double p = parse_exponent(args.p);
  if (!(p >= 1.0)) throw DomainError("exponent p must be >= 1");
  if (args.nodes == 0) throw DomainError("--nodes must be >= 1");
  if (args.samples < 2) throw DomainError("--samples must be >= 2");
  std::string method = args.method;
  if (method.empty()) method = (p == 2.0 || std::isinf(p)) ? "exact" : "cellwise";
  if (std::isinf(p) && method != "exact") {
    throw DomainError("p=inf is only available with --method exact");
  }
  if (method == "exact" && p != 2.0 && !std::isinf(p)) {
    throw DomainError("--method exact supports p=2 and p=inf only");
  }

  const auto rule = read_rule(args.points).rule;
  DiscrepancyEstimate est{};
  if (method == "exact") {
    est = std::isinf(p) ? star_discrepancy_exact(rule, args.cap) : l2_discrepancy_exact(rule);
  } else if (method == "cellwise") {
    est = lp_discrepancy_cellwise(rule, p, args.nodes, args.cap);
  } else {
    est = lp_discrepancy_mc(rule, p, args.samples, args.seed);
  }

  if (args.format == "json") {
    out << nlohmann::json(est).dump(2) << '\n';
  } else if (args.format == "csv") {
    out << "method,p,value,uncertainty\n"
        << to_string(est.method) << ',' << exact(est.p) << ',' << exact(est.value) << ','
        << exact(est.uncertainty) << '\n';
  } else {
    out << "method " << to_string(est.method) << "\np " << text(est.p) << "\nvalue "
        << text(est.value) << "\nuncertainty " << text(est.uncertainty) << '\n';
  }
}

struct ReflectArgs {
  std::string points;
  std::string out_path;
};

void run_reflect(const ReflectArgs& args, std::ostream& out) {
  const auto file = read_rule(args.points);
  QuadratureRule reflected(reflect(file.rule.points()), file.rule.weights());
  emit(args.out_path, format_rule(reflected, file.weighted), out);
}

struct CertifyArgs {
  std::string rule;
  double p = 2.0;
  std::string method = "best";
  std::string mode = "sharp";
  std::string format = "text";
};

void run_certify(const CertifyArgs& args, std::ostream& out) {
  const auto pair = holder_conjugate(args.p);
  const auto mode = args.mode == "paper" ? CertificateMode::paper : CertificateMode::sharp;
  if (args.method == "best" && mode == CertificateMode::paper) {
    throw CLI::ValidationError("--mode", "method 'best' compares sharp certificates only");
  }
  const auto rule = read_rule(args.rule).rule;
  const Certificate cert = args.method == "best"          ? certify_best(rule, pair)
                           : args.method == "spline"      ? certify_spline(rule, pair, mode)
                                                          : certify_decomposition(rule, pair, mode);
  if (args.format == "json") {
    out << nlohmann::json(cert).dump(2) << '\n';
    return;
  }
  out << "method " << to_string(cert.method) << "\nmode " << to_string(cert.mode) << "\np "
      << text(cert.p) << "\nq " << text(cert.q) << "\nd " << cert.d << "\nn " << cert.n
      << "\nlower_bound " << text(cert.lower_bound) << "\nintegral_hd " << text(cert.integral_hd)
      << "\nintegral_fstar " << text(cert.integral_fstar) << "\nnorm_hd " << text(cert.norm_hd)
      << "\nnorm_fstar_bound " << text(cert.norm_fstar_bound) << '\n';
}

struct BoundArgs {
  std::optional<double> p;
  unsigned d = 0;
  double eps = 0.0;
  std::string method = "cptilde";
  std::string format = "text";
};

void run_bound(const BoundArgs& args, std::ostream& out) {
  if (args.method == "cp" || args.method == "cptilde") {
    if (!args.p) throw CLI::RequiredError("--p is required for method " + args.method);
    const auto pair = holder_conjugate(*args.p);
    const auto n = inverse_lower_bound(
        pair, args.d, args.eps, args.method == "cp" ? CurseConstant::cp : CurseConstant::cptilde);
    if (args.format == "json") {
      out << nlohmann::json{{"method", args.method}, {"lower", n}}.dump(2) << '\n';
    } else {
      out << "lower " << n << '\n';
    }
    return;
  }
  const auto bounds = known_inverse_bounds(
      args.method == "l2-known" ? KnownBound::l2 : KnownBound::star, args.d, args.eps);
  if (args.format == "json") {
    nlohmann::json j{{"method", args.method}, {"upper", bounds.upper}};
    j["lower"] = bounds.lower ? nlohmann::json(*bounds.lower) : nlohmann::json(nullptr);
    out << j.dump(2) << '\n';
  } else {
    out << "lower " << (bounds.lower ? text(*bounds.lower) : std::string("none")) << "\nupper "
        << text(bounds.upper) << '\n';
  }
}

std::string one_line(std::string s) {
  for (char& c : s) {
    if (c == '\n' || c == '\r') c = ' ';
  }
  return s;
}

} // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Curse-of-dimensionality constants, L_p discrepancy and worst-case error "
               "certificates for positive quadrature rules",
               "lpcurse"};
  app.require_subcommand(1);

  ConstantsArgs constants;
  auto* cmd_constants = app.add_subcommand("constants", "Table of C_p and C_tilde_p");
  cmd_constants->add_option("--p", constants.p, "Exponents, comma separated")
      ->required()
      ->delimiter(',');
  cmd_constants->add_option("--format", constants.format)
      ->check(CLI::IsMember({"csv", "json", "text"}));

  FigureArgs figure;
  auto* cmd_figure = app.add_subcommand("figure", "Sample C_p and C_tilde_p curves to CSV");
  cmd_figure->add_option("--curve", figure.curves, "cp, cptilde or both")
      ->delimiter(',')
      ->check(CLI::IsMember({"cp", "cptilde"}));
  cmd_figure->add_option("--p-min", figure.p_min);
  cmd_figure->add_option("--p-max", figure.p_max);
  cmd_figure->add_option("--samples", figure.samples);
  cmd_figure->add_option("--out", figure.out_path);

  GenArgs gen;
  auto* cmd_gen = app.add_subcommand("gen", "Generate a point set");
  cmd_gen->add_option("--kind", gen.kind)
      ->required()
      ->check(CLI::IsMember({"random", "grid", "centered-grid", "halton"}));
  cmd_gen->add_option("--d", gen.d)->required();
  cmd_gen->add_option("--n", gen.n);
  cmd_gen->add_option("--m", gen.m);
  cmd_gen->add_option("--seed", gen.seed);
  cmd_gen->add_option("--out", gen.out_path);

  DiscArgs disc;
  auto* cmd_disc = app.add_subcommand("disc", "Discrepancy of a point set or rule");
  cmd_disc->add_option("--points", disc.points)->required();
  cmd_disc->add_option("--p", disc.p, "Exponent or 'inf'");
  cmd_disc->add_option("--method", disc.method)
      ->check(CLI::IsMember({"exact", "cellwise", "mc"}));
  cmd_disc->add_option("--samples", disc.samples);
  cmd_disc->add_option("--seed", disc.seed);
  cmd_disc->add_option("--nodes", disc.nodes);
  cmd_disc->add_option("--cap", disc.cap);
  cmd_disc->add_option("--format", disc.format)->check(CLI::IsMember({"text", "csv", "json"}));

  ReflectArgs reflect_args;
  auto* cmd_reflect = app.add_subcommand("reflect", "Map every coordinate x to 1 - x");
  cmd_reflect->add_option("--points", reflect_args.points)->required();
  cmd_reflect->add_option("--out", reflect_args.out_path);

  CertifyArgs certify;
  auto* cmd_certify = app.add_subcommand("certify", "Worst-case error lower bound for a rule");
  cmd_certify->add_option("--rule", certify.rule)->required();
  cmd_certify->add_option("--p", certify.p)->required();
  cmd_certify->add_option("--method", certify.method)
      ->check(CLI::IsMember({"decomposition", "spline", "best"}));
  cmd_certify->add_option("--mode", certify.mode)->check(CLI::IsMember({"paper", "sharp"}));
  cmd_certify->add_option("--format", certify.format)->check(CLI::IsMember({"text", "json"}));

  BoundArgs bound;
  auto* cmd_bound = app.add_subcommand("bound", "Bounds on the inverse of the discrepancy");
  cmd_bound->add_option("--p", bound.p);
  cmd_bound->add_option("--d", bound.d)->required();
  cmd_bound->add_option("--eps", bound.eps)->required();
  cmd_bound->add_option("--method", bound.method)
      ->check(CLI::IsMember({"cp", "cptilde", "l2-known", "star-known"}));
  cmd_bound->add_option("--format", bound.format)->check(CLI::IsMember({"text", "json"}));

  try {
    // CLI11 consumes the argument vector from the back.
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);

    if (cmd_constants->parsed()) run_constants(constants, out);
    if (cmd_figure->parsed()) run_figure(figure, out);
    if (cmd_gen->parsed()) run_gen(gen, out);
    if (cmd_disc->parsed()) run_disc(disc, out);
    if (cmd_reflect->parsed()) run_reflect(reflect_args, out);
    if (cmd_certify->parsed()) run_certify(certify, out);
    if (cmd_bound->parsed()) run_bound(bound, out);
    return kOk;
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::Error& e) {
    err << "lpcurse: usage_error: " << one_line(e.what()) << '\n';
    return kUsage;
  } catch (const ResourceError& e) {
    err << "lpcurse: resource_error: " << one_line(e.what()) << '\n';
    return kResource;
  } catch (const std::bad_alloc&) {
    err << "lpcurse: resource_error: out of memory\n";
    return kResource;
  } catch (const ParseError& e) {
    err << "lpcurse: parse_error: " << one_line(e.what()) << '\n';
    return kDomain;
  } catch (const DomainError& e) {
    err << "lpcurse: domain_error: " << one_line(e.what()) << '\n';
    return kDomain;
  } catch (const ConvergenceError& e) {
    err << "lpcurse: convergence_error: " << one_line(e.what()) << '\n';
    return kDomain;
  }
}

} // namespace lpcurse::cli
