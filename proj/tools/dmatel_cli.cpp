// dmatel: batch front end for the Gaunt, hypergeometric, radial, quadruple
// and self-energy shift kernels.
//
// Exit codes: 0 success, 2 invalid input, 3 numerical failure.

#include "dmatel/angular.hpp"
#include "dmatel/config.hpp"
#include "dmatel/errors.hpp"
#include "dmatel/matel.hpp"
#include "dmatel/numerics.hpp"
#include "dmatel/output.hpp"
#include "dmatel/radial.hpp"
#include "dmatel/report.hpp"
#include "dmatel/shift.hpp"
#include <CLI11.hpp>
#include <charconv>
#include <cmath>
#include <iostream>

using namespace dmatel;
using output::Cell;
using output::Document;

namespace {

constexpr int exit_invalid = 2;
constexpr int exit_numerical = 3;

struct Common {
  int Z = 1;
  double alpha = states::PhysicalConstants{}.alpha;
  std::string out;
  std::string format = "csv";

  states::PhysicalConstants constants() const {
    states::PhysicalConstants c;
    c.Z = Z;
    c.alpha = alpha;
    c.validate();
    return c;
  }
  output::Format fmt() const { return format == "json" ? output::Format::json : output::Format::csv; }
};

void add_common(CLI::App *cmd, Common &c, bool physics) {
  if (physics) {
    cmd->add_option("--Z", c.Z, "nuclear charge");
    cmd->add_option("--alpha", c.alpha, "fine-structure constant");
  }
  cmd->add_option("--out", c.out, "output file (default: stdout)");
  cmd->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
}

double number(const std::string &s) {
  if (s == "inf")
    return std::numeric_limits<double>::infinity();
  if (s == "-inf")
    return -std::numeric_limits<double>::infinity();
  double v = 0.0;
  const char *b = s.data(), *e = b + s.size();
  if (b != e && *b == '+')
    ++b;
  const auto [ptr, ec] = std::from_chars(b, e, v);
  if (ec != std::errc() || ptr != e || b == e)
    throw ValidationError("not a number: '" + s + "'");
  return v;
}

//! "re" or "re,im"
std::complex<double> complex_arg(const std::string &s) {
  const auto comma = s.find(',');
  if (comma == std::string::npos)
    return number(s);
  return {number(s.substr(0, comma)), number(s.substr(comma + 1))};
}

//! n_r kappa m
states::BoundState bound_arg(const std::vector<std::string> &v) {
  const double n = number(v.at(0)), k = number(v.at(1)), two_m = 2.0 * number(v.at(2));
  if (n != std::round(n) || k != std::round(k) || two_m != std::round(two_m))
    throw ValidationError("bound state: expected integer n_r, integer kappa, half-integer m");
  states::BoundState s{static_cast<int>(n), static_cast<int>(k), static_cast<int>(two_m)};
  s.validate();
  return s;
}

//! p kappa m
states::FreeState free_arg(const std::vector<std::string> &v) {
  const double k = number(v.at(1)), two_m = 2.0 * number(v.at(2));
  if (k != std::round(k) || two_m != std::round(two_m))
    throw ValidationError("continuum state: expected p, integer kappa, half-integer m");
  states::FreeState s{number(v.at(0)), static_cast<int>(k), static_cast<int>(two_m)};
  s.validate();
  return s;
}

void emit(const Document &doc, const Common &c) { output::write(doc, c.fmt(), c.out); }

//------------------------------------------------------------------------------

struct GauntArgs {
  Common common;
  std::vector<int> l, m;
  bool sph = false;
};

void cmd_gaunt(const GauntArgs &a) {
  Document doc;
  doc.table.columns = {"l1", "l2", "l3", "m1", "m2", "m3", "value", "vanishing_reason"};
  angular::GauntValue g;
  if (a.sph)
    g = angular::gaunt_sph_value(a.l[0], a.m[0], a.l[1], a.m[1], a.l[2], a.m[2]);
  else
    g = angular::gaunt_legendre({a.l[0], a.l[1], a.l[2], a.m[0], a.m[1], a.m[2]});
  doc.table.add({(long long)a.l[0], (long long)a.l[1], (long long)a.l[2], (long long)a.m[0],
                 (long long)a.m[1], (long long)a.m[2], g.value,
                 std::string(angular::to_string(g.vanishing_reason))});
  doc.config = {{"kind", a.sph ? "sph" : "legendre"}};
  emit(doc, a.common);
}

struct HypArgs {
  Common common;
  std::vector<std::string> f11, f21;
};

void cmd_hyp(const HypArgs &a) {
  if (a.f11.empty() == a.f21.empty())
    throw ValidationError("hyp: give exactly one of --1f1 a c z or --2f1 a b c z");
  Document doc;
  doc.table.columns = {"function", "z_re", "z_im", "value_re", "value_im", "terms",
                       "truncation_bound", "transformation"};
  numerics::WithDiagnostics<std::complex<double>> r;
  std::complex<double> z;
  std::string fn;
  if (!a.f11.empty()) {
    z = complex_arg(a.f11[2]);
    r = numerics::hyp1f1(complex_arg(a.f11[0]), complex_arg(a.f11[1]), z);
    fn = "1F1";
  } else {
    z = complex_arg(a.f21[3]);
    r = numerics::hyp2f1(complex_arg(a.f21[0]), complex_arg(a.f21[1]), complex_arg(a.f21[2]), z);
    fn = "2F1";
  }
  doc.table.add({fn, z.real(), z.imag(), r.value.real(), r.value.imag(),
                 (long long)r.diagnostics.terms_used, r.diagnostics.truncation_bound,
                 std::string(numerics::to_string(r.diagnostics.transformation_applied))});
  emit(doc, a.common);
}

struct RadialArgs {
  Common common;
  std::vector<std::string> hankel, laplace, bound;
  double k = 0.0;
  int l = 0;
  std::string components = "gg";
};

void cmd_radial(const RadialArgs &a) {
  const int given = !a.hankel.empty() + !a.laplace.empty() + !a.bound.empty();
  if (given != 1)
    throw ValidationError("radial: give exactly one of --hankel, --laplace, --bound");
  radial::RadialIntegralResult r;
  Document doc;
  if (!a.hankel.empty()) {
    r = radial::hankel_laplace({complex_arg(a.hankel[0]), number(a.hankel[1]),
                                complex_arg(a.hankel[2]), number(a.hankel[3])});
    doc.config = {{"integral", "hankel"}};
  } else if (!a.laplace.empty()) {
    radial::Laplace1F1Spec s{complex_arg(a.laplace[0]), complex_arg(a.laplace[1]),
                             complex_arg(a.laplace[2]), complex_arg(a.laplace[3]),
                             complex_arg(a.laplace[4]), a.k};
    r = a.k > 0.0 ? radial::laplace_1f1_sinc(s) : radial::laplace_1f1(s);
    doc.config = {{"integral", "laplace"}, {"k", output::format_number(a.k)}};
  } else {
    if (a.components.size() != 2 || a.components.find_first_not_of("gf") != std::string::npos)
      throw ValidationError("radial: --components must be gg, gf, fg or ff");
    const auto c = a.common.constants();
    const auto s1 = bound_arg({a.bound[0], a.bound[1], "0.5"});
    const auto s2 = bound_arg({a.bound[2], a.bound[3], "0.5"});
    auto comp = [](char ch) { return ch == 'g' ? radial::Component::large : radial::Component::small; };
    r = radial::radial_bound_bound(states::bound_decomposition(s1, c), comp(a.components[0]),
                                   states::bound_decomposition(s2, c), comp(a.components[1]), a.l,
                                   a.k);
    doc.config = {{"integral", "bound_bound"}, {"Z", std::to_string(c.Z)},
                  {"l", std::to_string(a.l)}, {"k", output::format_number(a.k)},
                  {"components", a.components}};
  }
  doc.table.columns = {"path", "value_re", "value_im", "terms", "cancellation_warning",
                       "cancellation_ratio"};
  doc.table.add({std::string(radial::to_string(r.path)), r.value.real(), r.value.imag(),
                 (long long)r.diagnostics.terms_used, r.cancellation_warning,
                 r.cancellation_ratio});
  emit(doc, a.common);
}

struct QuadArgs {
  Common common;
  std::vector<std::string> s1, s2, free2;
  std::vector<double> k;
};

void cmd_quadruple(const QuadArgs &a) {
  if (a.s2.empty() == a.free2.empty())
    throw ValidationError("quadruple: give exactly one of --s2 or --free2");
  const auto c = a.common.constants();
  const auto o1 = matel::make_orbital(bound_arg(a.s1), c);
  const auto o2 = a.s2.empty() ? matel::make_orbital(free_arg(a.free2), c)
                               : matel::make_orbital(bound_arg(a.s2), c);
  for (double k : a.k)
    if (!(k > 0.0 && std::isfinite(k)))
      throw ValidationError("quadruple: k must be positive and finite");
  Document doc;
  doc.table.columns = {"k", "t0", "t1", "t2", "t3", "combined", "cancellation_warning"};
  for (double k : a.k) {
    const auto q = matel::transition_quadruple(o1, o2, k);
    doc.table.add({k, q.t0, q.t1, q.t2, q.t3, q.combined, q.cancellation_warning});
  }
  doc.config = {{"Z", std::to_string(c.Z)}, {"alpha", output::format_number(c.alpha)}};
  emit(doc, a.common);
}

//------------------------------------------------------------------------------

struct ShiftArgs {
  std::string config;
  std::string out, format, hook;
  std::optional<double> lambda;
};

int cmd_shift(const ShiftArgs &a) {
  auto cfg = config::load(a.config);
  if (a.lambda)
    cfg.reg.lambda = *a.lambda;
  if (!a.hook.empty())
    cfg.hook = a.hook;
  if (!a.out.empty())
    cfg.path = a.out;
  if (!a.format.empty())
    cfg.format = a.format == "json" ? output::Format::json : output::Format::csv;
  cfg.validate();

  try {
    const auto res = shift::state_sum(cfg.s1, cfg.constants, cfg.truncation, cfg.reg,
                                      cfg.delta_m_hook(), cfg.grid_policy());
    if (res.truncation_warning)
      std::cerr << "warning: last kappa shell contributes "
                << output::format_number(res.tail_estimate) << " (budget "
                << output::format_number(cfg.truncation.tail_budget) << " x |total|)\n";
    output::write(report::shift_table(cfg, res), cfg.format, cfg.path);
  } catch (const shift::ShiftFailure &e) {
    output::write(report::shift_failure(cfg, e), cfg.format, cfg.path);
    throw;
  }
  return 0;
}

std::string one_line(std::string s) {
  for (char &ch : s)
    if (ch == '\n' || ch == '\r')
      ch = ' ';
  return s;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Dirac bound-state matrix elements and self-energy state sums"};
  app.require_subcommand(1);

  GauntArgs ga;
  auto *gaunt = app.add_subcommand("gaunt", "Gaunt coefficient");
  add_common(gaunt, ga.common, false);
  gaunt->add_option("--l", ga.l, "l1 l2 l3")->expected(3)->required();
  gaunt->add_option("--m", ga.m, "m1 m2 m3")->expected(3)->required();
  gaunt->add_flag("--sph", ga.sph,
                  "sphere integral of conj(Y_l1m1) conj(Y_l2m2) Y_l3m3 instead of the "
                  "Legendre integral over [-1, 1]");

  HypArgs ha;
  auto *hyp = app.add_subcommand("hyp", "confluent or Gauss hypergeometric function");
  add_common(hyp, ha.common, false);
  hyp->add_option("--1f1", ha.f11, "a c z (complex as re,im)")->expected(3);
  hyp->add_option("--2f1", ha.f21, "a b c z (complex as re,im)")->expected(4);

  RadialArgs ra;
  auto *rad = app.add_subcommand("radial", "closed-form radial integral");
  add_common(rad, ra.common, true);
  rad->add_option("--hankel", ra.hankel, "mu nu alpha beta")->expected(4);
  rad->add_option("--laplace", ra.laplace, "a c b p s")->expected(5);
  rad->add_option("--bound", ra.bound, "n_r1 kappa1 n_r2 kappa2")->expected(4);
  rad->add_option("--k", ra.k, "photon momentum (laplace: sinc factor when > 0)");
  rad->add_option("--l", ra.l, "Bessel order for --bound");
  rad->add_option("--components", ra.components, "gg, gf, fg or ff for --bound");

  QuadArgs qa;
  auto *quad = app.add_subcommand("quadruple", "matrix-element quadruple");
  add_common(quad, qa.common, true);
  quad->add_option("--s1", qa.s1, "n_r kappa m")->expected(3)->required();
  quad->add_option("--s2", qa.s2, "n_r kappa m")->expected(3);
  quad->add_option("--free2", qa.free2, "p kappa m (continuum s2)")->expected(3);
  quad->add_option("--k", qa.k, "one or more k values")->expected(1, 1 << 20)->required();

  ShiftArgs sa;
  auto *sh = app.add_subcommand("shift", "itemized self-energy state sum");
  sh->add_option("--config", sa.config, "run configuration file")->required();
  sh->add_option("--lambda", sa.lambda, "override the regularization cutoff");
  sh->add_option("--hook", sa.hook, "override the delta-m hook (zero or self)");
  sh->add_option("--out", sa.out, "override the output path");
  sh->add_option("--format", sa.format, "override the output format")
      ->check(CLI::IsMember({"csv", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    std::cerr << "error: " << one_line(e.what()) << "\n";
    return exit_invalid;
  }

  try {
    shift::thread_limit();
    if (gaunt->parsed())
      cmd_gaunt(ga);
    else if (hyp->parsed())
      cmd_hyp(ha);
    else if (rad->parsed())
      cmd_radial(ra);
    else if (quad->parsed())
      cmd_quadruple(qa);
    else
      return cmd_shift(sa);
  } catch (const ValidationError &e) {
    std::cerr << "error: " << one_line(e.what()) << "\n";
    return exit_invalid;
  } catch (const std::exception &e) {
    std::cerr << "numerical failure: " << one_line(e.what()) << "\n";
    return exit_numerical;
  }
  return 0;
}
