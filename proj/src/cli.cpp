#include "weyl/cli.hpp"

#include <fstream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "weyl/counting.hpp"
#include "weyl/errors.hpp"
#include "weyl/lowrank.hpp"
#include "weyl/modular.hpp"
#include "weyl/parallel.hpp"
#include "weyl/shells.hpp"
#include "weyl/weights.hpp"

namespace weyl {

namespace {

using nlohmann::json;

struct Config {
  int digits = default_digits();
  unsigned threads = 0;
  std::string format;  // csv | json; empty picks the command's natural form
  std::string out_path;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Rows of string cells; rendered as CSV or as a JSON array of objects.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::string csv() const {
    std::string s;
    auto line = [&s](const std::vector<std::string>& cells) {
      for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) s += ',';
        s += cells[i];
      }
      s += '\n';
    };
    line(header);
    for (const auto& r : rows) line(r);
    return s;
  }

  json to_json() const {
    json arr = json::array();
    for (const auto& r : rows) {
      json o = json::object();
      for (std::size_t i = 0; i < header.size(); ++i) o[header[i]] = r[i];
      arr.push_back(std::move(o));
    }
    return arr;
  }
};

std::string str(const Integer& v) { return v.get_str(); }
std::string str(const Rational& v) { return to_string(v); }
std::string str(std::int64_t v) { return std::to_string(v); }
std::string str(const BigFloat& v, int digits) { return v.to_scientific(digits); }

bool want_json(const Config& c) { return c.format == "json"; }

std::string render(const Config& c, const Table& t, json extra = json::object()) {
  if (!want_json(c)) return t.csv();
  extra["rows"] = t.to_json();
  return extra.dump(2) + "\n";
}

GroupParams group_arg(const std::string& text) {
  if (text.empty()) throw UsageError("--group is required");
  return parse_group(text);
}

MultiPoly poly_arg(const std::string& text, int n) {
  if (text.empty()) throw UsageError("--poly is required");
  return parse_poly(text, n);
}

std::vector<std::int64_t> diag_arg(const std::string& text) {
  std::vector<std::int64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoll(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("--diag expects comma-separated integers, got '" + text + "'");
    }
  }
  return out;
}

Rational rational_arg(const std::string& text, const char* flag) {
  if (text.empty()) throw UsageError(std::string(flag) + " is required");
  return parse_rational(text);
}

std::string fit_csv(const EnvelopeFit& f) {
  std::ostringstream s;
  s.precision(10);
  s << "slope,intercept,residual,windows\n" << f.slope << ',' << f.intercept << ',' << f.residual << ','
    << f.windows.size() << '\n';
  return s.str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config cfg;
  CLI::App app{"Eigenvalue counting on SO(N): exact spectra, lattice sums and error-term experiments", "weyl-lab"};
  app.require_subcommand(1);
  app.add_option("--digits", cfg.digits, "decimal working precision (>= 20)")->check(CLI::Range(20, 100000));
  app.add_option("--threads", cfg.threads, "worker threads (default: all cores)")->check(CLI::Range(1u, 4096u));
  app.add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", cfg.out_path, "write output to this file instead of stdout");
  app.fallthrough();

  std::string group, poly, diag, alpha, beta, parity = "all", method = "both", a_text, b_text, stat = "none";
  std::int64_t lambda = -1, lambda_max = -1, step = 1, n = 0, k = -1, k_min = 1, k_max = -1, r_max = -1,
               r2_max = -1, points = 100000, k_from = 1024;
  int M = 0, primes = 8, first_window = 0;
  bool summary = false;

  auto sub = [&app](const char* name, const char* help) {
    auto* s = app.add_subcommand(name, help);
    s->fallthrough();
    return s;
  };

  auto* spectrum = sub("spectrum", "eigenvalues with multiplicities up to --lambda-max");
  spectrum->add_option("--group", group)->required();
  spectrum->add_option("--lambda-max", lambda_max)->required();

  auto* count = sub("count", "eigenvalue counting function N(lambda)");
  count->add_option("--group", group)->required();
  count->add_option("--lambda", lambda)->required();
  count->add_option("--method", method)->check(CLI::IsMember({"direct", "lattice", "both"}));

  auto* shells = sub("shells", "representation numbers or weighted shell sums");
  shells->add_option("--n", n)->required();
  shells->add_option("--k-max", k_max)->required();
  shells->add_option("--parity", parity);
  shells->add_option("--poly", poly);
  shells->add_option("--diag", diag, "diagonal form a1,...,an (direct enumeration per k)");

  auto* theta = sub("theta", "theta-series coefficients and their statistics");
  theta->add_option("--n", n)->required();
  theta->add_option("--poly", poly)->required();
  theta->add_option("--k-max", k_max)->required();
  theta->add_option("--stat", stat)->check(CLI::IsMember({"none", "partial", "mean", "band"}));
  theta->add_option("--k-from", k_from, "first K of the band summary");

  auto* harmonic = sub("harmonic", "decompose a homogeneous polynomial into |x|^{2l} H_l");
  harmonic->add_option("--n", n)->required();
  harmonic->add_option("--poly", poly)->required();

  auto* weyl_error = sub("weyl-error", "N(lambda) minus the smooth main term, with envelope fit");
  weyl_error->add_option("--group", group)->required();
  weyl_error->add_option("--lambda-max", lambda_max)->required();
  weyl_error->add_option("--step", step);
  weyl_error->add_option("--first-window", first_window);
  weyl_error->add_flag("--summary", summary, "print only the envelope fit");

  auto* radial = sub("radial-check", "lattice sums against their radial decomposition");
  radial->add_option("--group", group)->required();
  radial->add_option("--r2-max", r2_max)->required();
  radial->add_flag("--summary", summary, "print only the mismatch count");

  auto* average = sub("average", "sum of r_n(k) for k <= R^2 against its main term");
  average->add_option("--n", n)->required();
  average->add_option("--r-max", r_max)->required();
  average->add_option("--parity", parity);
  average->add_flag("--summary", summary, "print only the envelope fit");

  auto* equidist = sub("equidist", "shell average of P minus its sphere average");
  equidist->add_option("--n", n)->required();
  equidist->add_option("--k", k)->required();
  equidist->add_option("--poly", poly)->required();

  auto* jumps = sub("jumps", "minimum of r_n(k) / k^{n/2-1} over nonempty shells");
  jumps->add_option("--n", n)->required();
  jumps->add_option("--k-min", k_min);
  jumps->add_option("--k-max", k_max)->required();
  jumps->add_option("--parity", parity);

  auto* extremal = sub("r4-extremal", "r_4 at products of the first odd primes");
  extremal->add_option("--primes", primes, "largest j; rows for j = 3..primes");

  auto* so_low = sub("so-low", "closed-form counts for SO(2) and SO(3)");
  so_low->add_option("--group", group)->required();
  so_low->add_option("--lambda-max", lambda_max)->required();

  auto* sonin = sub("sonin", "Sonin summation identity for a polynomial in one variable");
  sonin->add_option("--poly", poly)->required();
  sonin->add_option("--a", a_text)->required();
  sonin->add_option("--b", b_text)->required();

  auto* tsplit = sub("t-split", "SO(4) count split into the terms T1, T2, T3");
  tsplit->add_option("--lambda", lambda)->required();

  auto* psi = sub("psi", "trigonometric majorant and minorant of the sawtooth");
  psi->add_option("--M", M)->required();
  psi->add_option("--points", points, "grid size for the sandwich check");

  auto* pair = sub("exponent-pair", "exponents obtained from an exponent pair");
  pair->add_option("--alpha", alpha)->required();
  pair->add_option("--beta", beta)->required();

  auto* r3 = sub("r3-fit", "envelope slope of the n = 3 average, all and odd vectors");
  r3->add_option("--r-max", r_max)->required();

  std::vector<const char*> argv{"weyl-lab"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, err, err);
    return 2;
  }

  const int digits = cfg.digits;
  const unsigned threads = resolve_threads(cfg.threads);
  std::string text;

  try {
    if (spectrum->parsed()) {
      const auto s = enumerate_spectrum(group_arg(group), lambda_max);
      text = want_json(cfg) ? spectrum_to_json(s).dump(2) + "\n" : spectrum_to_csv(s);
    } else if (count->parsed()) {
      const auto g = group_arg(group);
      Table t{{"method", "count"}, {}};
      if (method != "lattice") t.rows.push_back({"direct", str(count_direct(g, lambda))});
      if (method != "direct") t.rows.push_back({"lattice", str(count_lattice(g, lambda, threads))});
      if (cfg.format.empty()) {
        for (const auto& r : t.rows) text += r[1] + "\n";
      } else {
        text = render(cfg, t, {{"group", g.name()}, {"lambda", lambda}});
      }
    } else if (shells->parsed()) {
      const auto par = parse_lattice_parity(parity);
      const int dim = static_cast<int>(n);
      Table t{{"k", "value"}, {}};
      if (!diag.empty()) {
        const auto a = diag_arg(diag);
        const auto p = poly.empty() ? MultiPoly::constant(dim, 1) : parse_poly(poly, dim);
        for (std::int64_t kk = 0; kk <= k_max; ++kk) t.rows.push_back({str(kk), str(shell_sum_form(a, kk, p))});
      } else if (poly.empty()) {
        const auto tab = rep_table(dim, k_max, par, threads);
        for (std::size_t i = 0; i < tab.values.size(); ++i)
          t.rows.push_back({str(static_cast<std::int64_t>(i)), str(tab.values[i])});
      } else {
        const auto tab = shell_sum_table(parse_poly(poly, dim), k_max, par, threads);
        for (std::size_t i = 0; i < tab.values.size(); ++i)
          t.rows.push_back({str(static_cast<std::int64_t>(i)), str(tab.values[i])});
      }
      text = render(cfg, t, {{"n", n}, {"parity", parity}});
    } else if (theta->parsed()) {
      const int dim = static_cast<int>(n);
      const auto c = theta_coeffs(dim, poly_arg(poly, dim), k_max, threads);
      json meta = {{"n", n}, {"weight", str(c.weight)}, {"degenerate", is_degenerate(c)}};
      if (stat == "none") {
        Table t{{"k", "a_k"}, {}};
        for (std::size_t i = 1; i < c.a.size(); ++i) t.rows.push_back({str(static_cast<std::int64_t>(i)), str(c.a[i])});
        text = render(cfg, t, meta);
      } else if (stat == "band") {
        const auto rows = mean_square_stat(c, digits);
        const auto b = band(c, rows, k_from);
        if (want_json(cfg)) {
          text = band_to_json(b, digits).dump(2) + "\n";
        } else {
          text = "weight,degenerate,band_min,band_max\n" + str(b.weight) + "," + (b.degenerate ? "true" : "false") +
                 "," + str(b.band_min, digits) + "," + str(b.band_max, digits) + "\n";
        }
      } else {
        const auto rows = stat == "partial" ? partial_sum_stat(c, digits) : mean_square_stat(c, digits);
        Table t{{"K", "value"}, {}};
        for (const auto& r : rows) t.rows.push_back({str(r.K), str(r.value, digits)});
        text = render(cfg, t, meta);
      }
    } else if (harmonic->parsed()) {
      const int dim = static_cast<int>(n);
      const auto parts = harmonic_decompose(poly_arg(poly, dim));
      Table t{{"l", "component"}, {}};
      for (const auto& h : parts) t.rows.push_back({std::to_string(h.l), h.component.to_string()});
      text = render(cfg, t, {{"n", n}});
    } else if (weyl_error->parsed()) {
      const auto g = group_arg(group);
      const auto series = error_series(g, lambda_max, step, digits, threads);
      const auto main = smooth_main(g);
      if (summary) {
        const auto fit = envelope_fit(series, first_window);
        text = want_json(cfg) ? fit_to_json(fit).dump(2) + "\n" : fit_csv(fit);
      } else {
        json fit = nullptr;
        try {
          fit = fit_to_json(envelope_fit(series, first_window));
        } catch (const InsufficientData&) {
          // short series: the table is still useful without a fit
        }
        Table t{{"lambda", "count", "smooth", "error"}, {}};
        for (const auto& r : series.rows)
          t.rows.push_back({str(r.lambda), str(r.count), str(r.smooth, digits), str(r.error, digits)});
        text = render(cfg, t,
                      {{"group", g.name()},
                       {"dimension", g.dimension},
                       {"leading_coefficient", main.leading_coefficient().to_string()},
                       {"leading_power", str(main.leading_half_power())},
                       {"fit", fit}});
      }
    } else if (radial->parsed()) {
      const auto g = group_arg(group);
      const auto rd = radial_decomposition(g);
      const auto chk = radial_check(rd, r2_max, threads);
      if (summary) {
        text = want_json(cfg) ? json{{"r2_max", chk.r2_max}, {"mismatches", chk.mismatches},
                                     {"first_mismatch", chk.first_mismatch}}
                                        .dump(2) +
                                    "\n"
                              : "r2_max,mismatches,first_mismatch\n" + str(chk.r2_max) + "," +
                                    str(chk.mismatches) + "," + str(chk.first_mismatch) + "\n";
      } else {
        Table t{{"r2", "lattice", "radial"}, {}};
        for (std::size_t i = 0; i < chk.lattice_sums.size(); ++i)
          t.rows.push_back({str(static_cast<std::int64_t>(i)), str(chk.lattice_sums[i]), str(chk.radial_sums[i])});
        text = render(cfg, t, {{"group", g.name()}, {"mismatches", chk.mismatches}});
      }
    } else if (average->parsed()) {
      const auto par = parse_lattice_parity(parity);
      if (summary) {
        const auto fit = average_envelope_fit(static_cast<int>(n), r_max, par, digits, threads);
        text = want_json(cfg) ? fit_to_json(fit).dump(2) + "\n" : fit_csv(fit);
      } else {
        const auto rows = average_compare(static_cast<int>(n), r_max, par, digits, threads);
        Table t{{"R", "count", "main", "difference"}, {}};
        for (const auto& r : rows)
          t.rows.push_back({str(r.radius), str(r.count), str(r.main_term, digits), str(r.difference, digits)});
        text = render(cfg, t,
                      {{"n", n}, {"parity", parity},
                       {"constant", average_constant(static_cast<int>(n), par).to_string()}});
      }
    } else if (equidist->parsed()) {
      const int dim = static_cast<int>(n);
      const auto e = equidist_error(dim, k, poly_arg(poly, dim), digits);
      text = want_json(cfg) ? json{{"n", n}, {"k", k}, {"error", str(e, digits)}}.dump(2) + "\n"
                            : "n,k,error\n" + str(n) + "," + str(k) + "," + str(e, digits) + "\n";
    } else if (jumps->parsed()) {
      const auto r = jump_check(static_cast<int>(n), k_min, k_max, parse_lattice_parity(parity), digits, threads);
      Table t{{"min_ratio", "argmin", "shells_checked", "empty_mod4_classes"},
              {{str(r.min_ratio, digits), str(r.argmin), str(r.shells_checked), str(r.empty_mod4_classes)}}};
      text = render(cfg, t, {{"n", n}, {"parity", parity}});
    } else if (extremal->parsed()) {
      Table t{{"j", "k", "r4", "ratio", "reference"}, {}};
      for (int j = 3; j <= primes; ++j) {
        const auto r = r4_extremal_ratio(j, digits);
        t.rows.push_back({std::to_string(j), str(r.k), str(r.r4), str(r.ratio, digits), str(r.reference, digits)});
      }
      text = render(cfg, t);
    } else if (so_low->parsed()) {
      const auto g = group_arg(group);
      if (g.N != 2 && g.N != 3) throw UsageError("so-low supports SO2 and SO3");
      Table t{{"lambda", "count"}, {}};
      for (std::int64_t l = 0; l <= lambda_max; ++l)
        t.rows.push_back({str(l), str(g.N == 2 ? so2_count(l) : so3_count(l))});
      text = render(cfg, t, {{"group", g.name()}});
    } else if (sonin->parsed()) {
      const auto r = sonin_sum(parse_poly(poly, 1), rational_arg(a_text, "--a"), rational_arg(b_text, "--b"));
      Table t{{"lhs", "rhs", "holds"}, {{str(r.lhs), str(r.rhs), r.holds() ? "true" : "false"}}};
      text = render(cfg, t);
    } else if (tsplit->parsed()) {
      const auto r = t_split(lambda, digits);
      Table t{{"lambda", "t1", "t2", "t3", "count", "residual", "t3_over_r4"},
              {{str(r.lambda), str(r.t1, digits), str(r.t2, digits), str(r.t3, digits), str(r.count),
                str(r.residual, 6), str(r.t3_over_r4, digits)}}};
      text = render(cfg, t);
    } else if (psi->parsed()) {
      const auto q = psi_majorants(M, digits);
      const auto chk = check_majorants(q, points, digits);
      Table t{{"M", "points", "violations", "reflection_failures", "coefficient_failures", "a0_plus", "a0_minus",
               "max_gap", "mean_gap"},
              {{std::to_string(M), str(chk.points), str(chk.violations), str(chk.reflection_failures),
                str(chk.coefficient_failures), str(q.plus.constant), str(q.minus.constant),
                str(chk.max_gap, digits), str(chk.mean_gap, digits)}}};
      json extra = json::object();
      if (want_json(cfg)) {
        json coeffs = json::array();
        for (int m = 1; m <= M; ++m) {
          const auto i = static_cast<std::size_t>(m - 1);
          coeffs.push_back({{"m", m},
                            {"cos_plus", str(q.plus.cos_coeffs[i])},
                            {"cos_minus", str(q.minus.cos_coeffs[i])},
                            {"sin", str(q.plus.sin_coeffs[i], digits)}});
        }
        extra["coefficients"] = coeffs;
      }
      text = render(cfg, t, extra);
    } else if (pair->parsed()) {
      const auto r = exponent_pair_calc({rational_arg(alpha, "--alpha"), rational_arg(beta, "--beta")});
      if (cfg.format.empty()) {
        text = str(r.m_exponent) + " " + str(r.t2_exponent) + " " + str(r.weyl_deficit) + "\n";
      } else {
        Table t{{"m_exponent", "t2_exponent", "weyl_deficit", "degenerate"},
                {{str(r.m_exponent), str(r.t2_exponent), str(r.weyl_deficit), r.degenerate ? "true" : "false"}}};
        text = render(cfg, t);
      }
    } else if (r3->parsed()) {
      const auto fit = r3_average_fit(r_max, digits, threads);
      if (want_json(cfg)) {
        text = json{{"all", fit_to_json(fit.all)}, {"odd", fit_to_json(fit.odd)}}.dump(2) + "\n";
      } else {
        std::ostringstream s;
        s.precision(10);
        s << "parity,slope,intercept,residual,windows\n";
        s << "all," << fit.all.slope << ',' << fit.all.intercept << ',' << fit.all.residual << ','
          << fit.all.windows.size() << '\n';
        s << "odd," << fit.odd.slope << ',' << fit.odd.intercept << ',' << fit.odd.residual << ','
          << fit.odd.windows.size() << '\n';
        text = s.str();
      }
    }
  } catch (const InvalidGroup& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return 2;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << " (at position " << e.position() << ")\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  if (cfg.out_path.empty()) {
    out << text;
  } else {
    std::ofstream f(cfg.out_path, std::ios::binary);
    if (!f) {
      err << "error: cannot open " << cfg.out_path << "\n";
      return 1;
    }
    f << text;
  }
  return 0;
}

}  // namespace weyl
