#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "germkit/io.hpp"

using nlohmann::json;

namespace {

using namespace germkit;

struct AxisFlag {
  double lo = 0.0, hi = 0.0;
  int count = 1;
};

AxisFlag parse_axis(const std::string& text) {
  AxisFlag ax;
  char c1 = 0, c2 = 0;
  std::istringstream is(text);
  if (!(is >> ax.lo >> c1 >> ax.hi >> c2 >> ax.count) || c1 != ':' ||
      c2 != ':' || ax.count < 1) {
    throw InvalidArgument("expected lo:hi:count, got '" + text + "'");
  }
  return ax;
}

Interval parse_window(const std::string& text) {
  Interval w;
  char c = 0;
  std::istringstream is(text);
  if (!(is >> w.lo >> c >> w.hi) || c != ':' || !(w.lo < w.hi)) {
    throw InvalidArgument("expected lo:hi with lo < hi, got '" + text + "'");
  }
  return w;
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::istringstream is(text);
  std::string item;
  while (std::getline(is, item, ',')) {
    out.push_back(std::stod(item));
  }
  return out;
}

void emit_text(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(path);
    if (!f) throw InvalidArgument("cannot open output file '" + path + "'");
    f << text;
  }
}

void emit_json(const json& j, const std::string& path) {
  emit_text(j.dump(2) + "\n", path);
}

std::string settings_comment(const json& settings) {
  std::string out = "# germkit\n";
  for (const auto& [key, value] : settings.items()) {
    out += "# " + key + "=" + value.dump() + "\n";
  }
  return out;
}

Witness resolve_map(const std::string& spec) {
  const std::string prefix = "builtin:";
  if (spec.rfind(prefix, 0) != 0) {
    throw InvalidArgument("--map expects builtin:<name>");
  }
  return builtin_witness(spec.substr(prefix.size()));
}

int run(int argc, char** argv) {
  CLI::App app{"local classification and conjugacy toolkit for "
               "one-dimensional vector fields"};
  app.require_subcommand(1);

  // classify
  auto* classify_cmd =
      app.add_subcommand("classify", "classify a germ at the origin");
  std::string cl_field, cl_output;
  int cl_max_order = 16;
  double cl_tol = kZeroTol;
  bool cl_sample_flat = false;
  classify_cmd->add_option("--field", cl_field, "field coefficient f(x)")
      ->required();
  classify_cmd->add_option("--max-order", cl_max_order, "jet truncation order");
  classify_cmd->add_option("--tol", cl_tol, "relative zero threshold");
  classify_cmd->add_flag("--sample-flat", cl_sample_flat,
                         "sign-sample flat germs for a topological class");
  classify_cmd->add_option("--output", cl_output, "write JSON here");

  // normal-form
  auto* nf_cmd = app.add_subcommand("normal-form",
                                    "normal form under a conjugacy relation");
  std::string nf_field, nf_relation = "c1", nf_output;
  bool nf_tti = false;
  int nf_max_order = 16;
  double nf_tol = kZeroTol;
  nf_cmd->add_option("--field", nf_field)->required();
  nf_cmd->add_option("--relation", nf_relation, "c0, c1 or cinf");
  nf_cmd->add_flag("--tti", nf_tti, "tangent-to-identity changes only");
  nf_cmd->add_option("--max-order", nf_max_order);
  nf_cmd->add_option("--tol", nf_tol);
  nf_cmd->add_option("--output", nf_output);

  // conjugate
  auto* conj_cmd = app.add_subcommand(
      "conjugate", "construct the conjugacy onto the C1 normal form");
  std::string co_field, co_output, co_csv;
  bool co_tti = false, co_verify = false;
  double co_eps = 0.5;
  int co_samples = 101;
  conj_cmd->add_option("--field", co_field)->required();
  conj_cmd->add_flag("--tti", co_tti);
  conj_cmd->add_option("--eps", co_eps, "neighborhood radius");
  conj_cmd->add_option("--samples", co_samples, "CSV sample count");
  conj_cmd->add_option("--csv", co_csv, "write (x, phi, dphi) samples here");
  conj_cmd->add_flag("--verify", co_verify,
                     "check flow commutation against the target model");
  conj_cmd->add_option("--output", co_output);

  // verify
  auto* verify_cmd = app.add_subcommand(
      "verify", "flow-commutation residual of a reference map");
  std::string ve_f, ve_g, ve_map, ve_output, ve_csv;
  std::string ve_x = "-0.5:0.5:21", ve_t = "-1:1:9";
  verify_cmd->add_option("--f", ve_f)->required();
  verify_cmd->add_option("--g", ve_g)->required();
  verify_cmd->add_option("--map", ve_map, "builtin:<name>")->required();
  verify_cmd->add_option("--x", ve_x, "x grid lo:hi:count");
  verify_cmd->add_option("--t", ve_t, "t grid lo:hi:count");
  verify_cmd->add_option("--csv", ve_csv, "write (x,t,residual) rows here");
  verify_cmd->add_option("--output", ve_output);

  // homological
  auto* hom_cmd = app.add_subcommand(
      "homological", "solve -X'f + Xf' = fg + f'k with X in m^2");
  std::string ho_f, ho_g, ho_k, ho_output, ho_csv;
  int ho_samples = 101;
  hom_cmd->add_option("--f", ho_f)->required();
  hom_cmd->add_option("--g", ho_g)->required();
  hom_cmd->add_option("--k", ho_k)->required();
  hom_cmd->add_option("--samples", ho_samples);
  hom_cmd->add_option("--csv", ho_csv, "write (x, X, dX) samples here");
  hom_cmd->add_option("--output", ho_output);

  // flow
  auto* flow_cmd = app.add_subcommand("flow", "integrate x' = f(x)");
  std::string fl_field, fl_output;
  double fl_x0 = 0.0, fl_t = 1.0, fl_xmax = 1e6;
  flow_cmd->add_option("--field", fl_field)->required();
  flow_cmd->add_option("--x0", fl_x0)->required();
  flow_cmd->add_option("--t", fl_t)->required();
  flow_cmd->add_option("--x-max", fl_xmax, "blow-up bound");
  flow_cmd->add_option("--output", fl_output);

  // unfold
  auto* unfold_cmd = app.add_subcommand(
      "unfold", "instantiate or sweep an unfolding family");
  std::string un_kind = "Q", un_lambda, un_sweep, un_window = "-2:2";
  std::string un_sweep_d, un_output;
  int un_k = 2, un_sign = 1;
  double un_a = 1.0, un_d = 0.0;
  bool un_has_a = false, un_has_d = false;
  unfold_cmd->add_option("--kind", un_kind, "Q, Q1, F or F1");
  unfold_cmd->add_option("--k", un_k)->required();
  unfold_cmd->add_option("--a", un_a)->each([&](const std::string&) {
    un_has_a = true;
  });
  unfold_cmd->add_option("--d", un_d)->each([&](const std::string&) {
    un_has_d = true;
  });
  unfold_cmd->add_option("--sign", un_sign, "+1 or -1 (F only)");
  unfold_cmd->add_option("--lambda", un_lambda, "comma-separated values");
  unfold_cmd->add_option("--sweep", un_sweep,
                         "comma-separated lo:hi:count per parameter");
  unfold_cmd->add_option("--sweep-d", un_sweep_d,
                         "extra lo:hi:count axis over the modulus d");
  unfold_cmd->add_option("--window", un_window, "equilibria window lo:hi");
  unfold_cmd->add_option("--output", un_output);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  if (classify_cmd->parsed()) {
    const Expr f = Expr::parse(cl_field);
    const Classification cls =
        classify_germ(f, cl_max_order, cl_tol, cl_sample_flat);
    json j = classification_json(cls);
    j["field"] = cl_field;
    j["settings"] = {{"max_order", cl_max_order},
                     {"tol", cl_tol},
                     {"sample_flat", cl_sample_flat}};
    if (cls.kind == GermKind::ZeroField) {
      std::cerr << "zero field: " << cl_field
                << " vanishes identically (through order " << cls.checked_order
                << " and on the sample grid)\n";
      emit_json(j, cl_output);
      return 2;
    }
    emit_json(j, cl_output);
    return 0;
  }

  if (nf_cmd->parsed()) {
    const Expr f = Expr::parse(nf_field);
    Relation rel;
    if (nf_relation == "c0") rel = Relation::C0;
    else if (nf_relation == "c1") rel = Relation::C1;
    else if (nf_relation == "cinf") rel = Relation::Cinf;
    else throw InvalidArgument("--relation must be c0, c1 or cinf");
    const Classification cls = classify_germ(f, nf_max_order, nf_tol);
    const NormalForm nf = normal_form(cls, rel, nf_tti);
    json j = normal_form_json(nf);
    j["kind"] = to_string(cls.kind);
    j["field"] = nf_field;
    j["settings"] = {{"max_order", nf_max_order}, {"tol", nf_tol}};
    emit_json(j, nf_output);
    return 0;
  }

  if (conj_cmd->parsed()) {
    const Expr f = Expr::parse(co_field);
    const Witness w = c1_conjugator(f, co_eps, co_tti);
    json j = witness_summary_json(w);
    j["field"] = co_field;
    j["settings"] = {{"eps", co_eps}, {"tti", co_tti}, {"samples", co_samples}};
    if (co_verify) {
      const Expr target = Expr::parse(w.target);
      GridSpec grid;
      grid.x_lo = -co_eps / 3.0;
      grid.x_hi = co_eps / 3.0;
      grid.nx = 7;
      grid.t_lo = -0.75;
      grid.t_hi = 0.75;
      grid.nt = 5;
      j["verify"] = verify_json(verify_conjugacy(f, target, w, grid));
    }
    if (!co_csv.empty()) {
      std::ostringstream csv;
      csv << settings_comment(j["settings"]);
      write_witness_csv(w, co_samples, csv);
      emit_text(csv.str(), co_csv);
      j["csv"] = co_csv;
    }
    emit_json(j, co_output);
    return 0;
  }

  if (verify_cmd->parsed()) {
    const Expr f = Expr::parse(ve_f);
    const Expr g = Expr::parse(ve_g);
    const Witness w = resolve_map(ve_map);
    const AxisFlag ax = parse_axis(ve_x);
    const AxisFlag at = parse_axis(ve_t);
    GridSpec grid{ax.lo, ax.hi, ax.count, at.lo, at.hi, at.count};
    json settings = {{"x", ve_x}, {"t", ve_t}, {"map", ve_map}};
    VerifyResult res;
    if (!ve_csv.empty()) {
      std::ostringstream csv;
      csv << settings_comment(settings);
      res = verify_conjugacy(f, g, w, grid, &csv);
      emit_text(csv.str(), ve_csv);
    } else {
      res = verify_conjugacy(f, g, w, grid);
    }
    json j = verify_json(res);
    j["f"] = ve_f;
    j["g"] = ve_g;
    j["settings"] = settings;
    if (!ve_csv.empty()) j["csv"] = ve_csv;
    emit_json(j, ve_output);
    return 0;
  }

  if (hom_cmd->parsed()) {
    const Expr f = Expr::parse(ho_f);
    const Expr g = Expr::parse(ho_g);
    const Expr k = Expr::parse(ho_k);
    const Homological sol = solve_homological(f, g, k);
    json j;
    j["residual_bound"] = sol.residual_bound;
    j["kernel_note"] = sol.kernel_note;
    if (sol.kernel_note) j["base_magnitude"] = sol.base_magnitude;
    j["f"] = ho_f;
    j["g"] = ho_g;
    j["k"] = ho_k;
    j["settings"] = {{"samples", ho_samples}};
    if (!ho_csv.empty()) {
      std::ostringstream csv;
      csv << settings_comment(j["settings"]);
      csv << "x,X,dX\n";
      const int n = std::max(2, ho_samples);
      for (int i = 0; i < n; ++i) {
        const double x = -0.5 + 1.0 * i / (n - 1.0);
        csv << format_double(x) << ',' << format_double(sol.X(x)) << ','
            << format_double(sol.dX(x)) << '\n';
      }
      emit_text(csv.str(), ho_csv);
      j["csv"] = ho_csv;
    }
    emit_json(j, ho_output);
    return 0;
  }

  if (flow_cmd->parsed()) {
    const Expr f = Expr::parse(fl_field);
    FlowOptions opts;
    opts.x_max = fl_xmax;
    const FlowResult r = flow(f, fl_x0, fl_t, opts);
    json j = flow_json(r);
    j["field"] = fl_field;
    j["x0"] = fl_x0;
    j["t"] = fl_t;
    j["settings"] = {{"x_max", fl_xmax},
                     {"rel_tol", opts.rel_tol},
                     {"abs_tol", opts.abs_tol}};
    emit_json(j, fl_output);
    return 0;
  }

  if (unfold_cmd->parsed()) {
    FamilyKind kind;
    if (un_kind == "Q") kind = FamilyKind::Q;
    else if (un_kind == "Q1") kind = FamilyKind::Q1;
    else if (un_kind == "F") kind = FamilyKind::F;
    else if (un_kind == "F1") kind = FamilyKind::F1;
    else throw InvalidArgument("--kind must be Q, Q1, F or F1");
    const UnfoldingFamily fam = build_unfolding(
        kind, un_k, un_has_a ? std::optional<double>(un_a) : std::nullopt,
        un_has_d ? std::optional<double>(un_d) : std::nullopt, un_sign);
    const Interval window = parse_window(un_window);
    json settings = {{"kind", un_kind}, {"k", un_k}, {"window", un_window},
                     {"sign", un_sign}};
    if (un_has_a) settings["a"] = un_a;
    if (un_has_d) settings["d"] = un_d;

    if (!un_lambda.empty() || fam.param_count == 0) {
      const std::vector<double> lambda = parse_list(un_lambda);
      const std::vector<double> poly = instantiate(fam, lambda);
      const EquilibriumReport rep = equilibria(poly, window);
      json j;
      j["family"] = to_string(fam.kind);
      j["coefficients"] = poly;
      json eqs = json::array();
      for (const Equilibrium& e : rep.equilibria) {
        eqs.push_back({{"root", e.location},
                       {"multiplicity", e.multiplicity},
                       {"stability", to_string(e.stability)}});
      }
      j["equilibria"] = eqs;
      j["n_equilibria"] = rep.equilibria.size();
      j["settings"] = settings;
      emit_json(j, un_output);
      return 0;
    }

    if (un_sweep.empty()) {
      throw InvalidArgument("unfold needs --lambda or --sweep");
    }
    std::vector<AxisSpec> axes;
    {
      std::istringstream is(un_sweep);
      std::string item;
      while (std::getline(is, item, ',')) {
        const AxisFlag ax = parse_axis(item);
        axes.push_back({ax.lo, ax.hi, ax.count});
      }
    }
    settings["sweep"] = un_sweep;

    std::ostringstream csv;
    if (un_sweep_d.empty()) {
      const BifurcationTable table = sweep(fam, axes, window);
      csv << settings_comment(settings);
      write_csv(table, csv);
    } else {
      // the modulus joins the sweep as an explicit trailing axis
      const AxisFlag axd = parse_axis(un_sweep_d);
      settings["sweep_d"] = un_sweep_d;
      BifurcationTable merged;
      merged.param_count = axes.size() + 1;
      UnfoldingFamily fam_d = fam;
      for (int i = 0; i < axd.count; ++i) {
        const double dval =
            axd.count == 1 ? axd.lo
                           : axd.lo + (axd.hi - axd.lo) * i / (axd.count - 1.0);
        fam_d.d = dval;
        BifurcationTable part = sweep(fam_d, axes, window);
        for (EquilibriumReport& row : part.rows) {
          row.params.push_back(dval);
          merged.max_equilibria =
              std::max(merged.max_equilibria, row.equilibria.size());
          merged.rows.push_back(std::move(row));
        }
      }
      csv << settings_comment(settings);
      write_csv(merged, csv);
    }
    emit_text(csv.str(), un_output);
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (...) {
    std::fputs("error: unexpected failure\n", stderr);
    return 2;
  }
}
