#include "qsemi/cli.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qsemi/catalog.hpp"
#include "qsemi/contour.hpp"
#include "qsemi/errors.hpp"
#include "qsemi/io.hpp"
#include "qsemi/numerical_range.hpp"
#include "qsemi/semigroup.hpp"
#include "qsemi/spectral.hpp"
#include "qsemi/subellipticity.hpp"
#include "qsemi/weyl.hpp"

namespace qsemi {

namespace {

constexpr const char* kVersion = "1.0.0";
constexpr const char* kTruncationNote =
    "computed on the compression of q^w to Hermite functions of total degree <= N; only "
    "compression-exact properties (numerical range, contraction, the resolvent bound by the distance to the numerical range) "
    "hold at finite N, limits in N are not asserted";

struct Options {
  std::string format = "auto";
  std::optional<double> tol;
  std::string form;
  double radius = 10.0;
  int degree = 20;
  double t_max = 5.0;
  int steps = 50;
  std::string window = "-2,0,-2,2";
  std::string grid = "20,20";
  double s = 1.0;
  std::optional<double> ray;
  std::string point;
  std::string output;
  std::string catalog_id;
};

Tolerances tolerances(const Options& o) {
  Tolerances t;
  if (o.tol) t.definiteness = *o.tol;
  return t;
}

Metadata base_metadata(const Options& o, const std::string& command) {
  const Tolerances t = tolerances(o);
  Metadata m{{"tool", "qsemi"},
             {"version", kVersion},
             {"command", command},
             {"tol_definiteness", format_double(t.definiteness)},
             {"tol_cluster", format_double(t.cluster)},
             {"tol_sector_angle", format_double(t.sector_angle)},
             {"tol_real_eigenvalue", format_double(t.real_eigenvalue)}};
  return m;
}

void add_truncation(Metadata& m, const TruncatedOperator& op) {
  m.emplace_back("N", std::to_string(op.degree));
  m.emplace_back("dim", std::to_string(op.dim()));
  m.emplace_back("truncation", kTruncationNote);
}

std::string pick_format(const Options& o, const char* fallback) {
  const std::string f = o.format == "auto" ? fallback : o.format;
  if (f != "json" && f != "csv") throw ParseError("--format must be json or csv");
  return f;
}

void emit_json(std::ostream& out, ordered_json body, const Metadata& meta) {
  body["metadata"] = metadata_json(meta);
  out << body.dump(2) << '\n';
}

void emit_key_value_csv(std::ostream& out, const std::vector<std::pair<std::string, std::string>>& kv,
                        const Metadata& meta) {
  out << "key,value\n";
  for (const auto& [k, v] : kv) out << k << ',' << v << '\n';
  write_csv_metadata(out, meta);
}

std::vector<double> parse_list(const std::string& text, std::size_t expected, const char* what) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double x;
    try {
      x = std::stod(item, &used);
    } catch (const std::exception&) {
      throw ParseError(std::string("cannot parse ") + what + ": '" + text + "'");
    }
    if (used != item.size()) throw ParseError(std::string("cannot parse ") + what);
    v.push_back(x);
  }
  if (expected != 0 && v.size() != expected) {
    throw ParseError(std::string(what) + " needs " + std::to_string(expected) + " values");
  }
  return v;
}

ordered_json sector_json(const Sector& s) {
  ordered_json j;
  j["kind"] = s.is_full_plane() ? "full_plane" : "sector";
  if (!s.is_full_plane()) {
    j["theta_min"] = s.theta_min();
    j["theta_max"] = s.theta_max();
    j["opening"] = s.opening();
  }
  return j;
}

const char* verdict_name(EllipticityCertificate::Verdict v) {
  switch (v) {
    case EllipticityCertificate::Verdict::elliptic:
      return "elliptic";
    case EllipticityCertificate::Verdict::not_elliptic:
      return "not_elliptic";
    case EllipticityCertificate::Verdict::indeterminate:
      return "indeterminate";
  }
  return "?";
}

ordered_json order_json(const OrderResult& r) {
  ordered_json j;
  j["j0"] = r.j0;
  j["k"] = r.k;
  j["finite"] = r.finite;
  j["bracket_value"] = complex_json(r.bracket_value);
  j["point"] = std::vector<double>(r.point.data(), r.point.data() + r.point.size());
  return j;
}

ordered_json real_class_json(const RealPartClass& c) {
  ordered_json j;
  j["kind"] = to_string(c.kind);
  j["k"] = c.k;
  j["l"] = c.l;
  j["lambdas"] = c.lambdas;
  return j;
}

bool has_real_hamilton_eigenvalue(const ComplexQuadraticForm& form, const Tolerances& tol) {
  const HamiltonMap f = hamilton_map(form);
  const double fn = f.matrix().norm();
  for (const auto& h : hamilton_spectrum(f, tol)) {
    if (std::abs(h.lambda.imag()) <= tol.real_eigenvalue * fn) return true;
  }
  return false;
}

// ----------------------------------------------------------- subcommands

void cmd_analyze(const Options& o, std::ostream& out) {
  const Tolerances tol = tolerances(o);
  const ComplexQuadraticForm form = load_form(o.form);
  const auto cert = check_elliptic(form, tol);
  if (cert.verdict == EllipticityCertificate::Verdict::not_elliptic) {
    throw HypothesisError("form is not elliptic (min |q| on the unit sphere = " +
                          format_double(cert.min_modulus) + ")");
  }
  if (cert.verdict == EllipticityCertificate::Verdict::indeterminate) {
    throw NumericalError("ellipticity is indeterminate at the current tolerance");
  }
  ordered_json r;
  r["form"] = form_to_json(form);
  r["ellipticity"]["verdict"] = verdict_name(cert.verdict);
  r["ellipticity"]["witness_angle"] =
      cert.witness_angle ? ordered_json(*cert.witness_angle) : ordered_json(nullptr);
  r["ellipticity"]["min_modulus"] = cert.min_modulus;
  const Sector sector = numerical_range(form, cert);
  r["sector"] = sector_json(sector);

  const HamiltonMap f = hamilton_map(form);
  ordered_json spec = ordered_json::array(), real_eigs = ordered_json::array();
  const double fn = f.matrix().norm();
  for (const auto& h : hamilton_spectrum(f, tol)) {
    ordered_json e;
    e["lambda_re"] = h.lambda.real();
    e["lambda_im"] = h.lambda.imag();
    e["r"] = h.multiplicity;
    spec.push_back(e);
    if (std::abs(h.lambda.imag()) <= tol.real_eigenvalue * fn) real_eigs.push_back(e);
  }
  r["hamilton_spectrum"] = spec;
  r["real_hamilton_eigenvalues"] = real_eigs;

  require_nonpositive_real_part(form, tol);
  r["real_part"] = real_class_json(classify_real_part(form, tol));

  const Tensorization t = split_real_eigenspaces(form, tol);
  r["tensorization"]["n_s"] = t.n_s();
  r["tensorization"]["n_perp"] = t.n_perp();
  r["tensorization"]["mu"] = t.mu;
  r["tensorization"]["epsilon"] = t.epsilon;

  const RForm rf = r_form(form, tol);
  r["r_form"]["positive_definite"] = rf.positive_definite;
  r["r_form"]["min_eigenvalue"] = rf.min_eigenvalue;

  if (!sector.is_full_plane() && !has_real_hamilton_eigenvalue(form, tol)) {
    ordered_json rays = ordered_json::array();
    int max_k = 0;
    std::vector<double> thetas{sector.theta_min()};
    if (sector.opening() > tol.sector_angle) thetas.push_back(sector.theta_max());
    for (double th : thetas) {
      const OrderResult res = order_on_ray(form, th, tol);
      ordered_json e;
      e["theta"] = th;
      e["order"] = order_json(res);
      rays.push_back(e);
      max_k = std::max(max_k, res.k);
    }
    r["boundary_order"]["rays"] = rays;
    r["boundary_order"]["max_k"] = max_k;
    r["boundary_order"]["bound_4n_minus_2"] = 4 * form.n() - 2;
  } else {
    r["boundary_order"] = nullptr;
  }

  if (real_part_vanishes(form, tol)) {
    r["decay"] = nullptr;
  } else {
    const DecayRate d = decay_rate(form, tol);
    r["decay"]["a0"] = d.a0;
    r["decay"]["constant_free_rate"] =
        d.constant_free_rate ? ordered_json(*d.constant_free_rate) : ordered_json(nullptr);
  }
  emit_json(out, std::move(r), base_metadata(o, "analyze"));
}

void cmd_spectrum(const Options& o, std::ostream& out) {
  const Tolerances tol = tolerances(o);
  const ComplexQuadraticForm form = load_form(o.form);
  const SpectrumReport rep = operator_spectrum(form, o.radius, tol);
  Metadata meta = base_metadata(o, "spectrum");
  meta.emplace_back("radius", format_double(o.radius));
  meta.emplace_back("a0", format_double(rep.a0));
  if (pick_format(o, "json") == "csv") {
    out << "re,im\n";
    for (const auto& p : rep.points) {
      out << format_double(p.z.real()) << ',' << format_double(p.z.imag()) << '\n';
    }
    write_csv_metadata(out, meta);
    return;
  }
  ordered_json r;
  r["a0"] = rep.a0;
  r["radius"] = rep.radius;
  r["sector"] = sector_json(rep.sector);
  ordered_json adm = ordered_json::array();
  for (const auto& h : rep.admissible) {
    ordered_json e;
    e["lambda_re"] = h.lambda.real();
    e["lambda_im"] = h.lambda.imag();
    e["r"] = h.multiplicity;
    bool boundary = false;
    for (cplx b : rep.boundary_lambdas) boundary = boundary || b == h.lambda;
    e["on_boundary"] = boundary;
    adm.push_back(e);
  }
  r["admissible"] = adm;
  ordered_json pts = ordered_json::array();
  for (const auto& p : rep.points) {
    ordered_json e;
    e["re"] = p.z.real();
    e["im"] = p.z.imag();
    ordered_json gens = ordered_json::array();
    for (const auto& g : p.gens) {
      ordered_json ge;
      ge["lambda_re"] = g.lambda.real();
      ge["lambda_im"] = g.lambda.imag();
      ge["k"] = g.k;
      gens.push_back(ge);
    }
    e["gens"] = gens;
    pts.push_back(e);
  }
  r["count"] = rep.points.size();
  r["points"] = pts;
  emit_json(out, std::move(r), meta);
}

void cmd_semigroup(const Options& o, std::ostream& out) {
  const ComplexQuadraticForm form = load_form(o.form);
  require_nonpositive_real_part(form, tolerances(o));
  const TruncatedOperator op = weyl_matrix(form, o.degree);
  const NormProfile prof = semigroup_profile(op, o.t_max, o.steps);
  const double abscissa = spectral_abscissa(op.a);
  Metadata meta = base_metadata(o, "semigroup");
  add_truncation(meta, op);
  meta.emplace_back("fitted_tail_slope", format_double(prof.fitted_slope));
  meta.emplace_back("spectral_abscissa", format_double(abscissa));
  meta.emplace_back("semigroup_residual", format_double(prof.semigroup_residual));
  if (pick_format(o, "csv") == "csv") {
    out << "t,norm\n";
    for (std::size_t i = 0; i < prof.times.size(); ++i) {
      out << format_double(prof.times[i]) << ',' << format_double(prof.norms[i]) << '\n';
    }
    write_csv_metadata(out, meta);
    return;
  }
  ordered_json r;
  r["t"] = prof.times;
  r["norm"] = prof.norms;
  r["fitted_slope"] = prof.fitted_slope;
  r["spectral_abscissa"] = abscissa;
  emit_json(out, std::move(r), meta);
}

void cmd_pseudospectrum(const Options& o, std::ostream& out) {
  const Tolerances tol = tolerances(o);
  const ComplexQuadraticForm form = load_form(o.form);
  const auto w = parse_list(o.window, 4, "--window re_min,re_max,im_min,im_max");
  const auto g = parse_list(o.grid, 2, "--grid nx,ny");
  if (g[0] != std::floor(g[0]) || g[1] != std::floor(g[1])) throw ParseError("--grid needs integers");
  const TruncatedOperator op = weyl_matrix(form, o.degree);
  const ResolventGrid grid = pseudospectrum_grid(op, Window{w[0], w[1], w[2], w[3]},
                                                 static_cast<int>(g[0]), static_cast<int>(g[1]));
  // The matrix numerical range lies in Sigma(q), so norm * d(z, Sigma(q)) <= 1.
  std::optional<Sector> sector;
  const auto cert = check_elliptic(form, tol);
  if (cert.elliptic()) sector = numerical_range(form, cert);
  double worst = 0.0;
  for (std::size_t i = 0; i < grid.z.size(); ++i) {
    if (!sector) break;
    const double d = sector->distance(grid.z[i]);
    if (d > 0.0) worst = std::max(worst, grid.values[i] * d);
  }
  Metadata meta = base_metadata(o, "pseudospectrum");
  add_truncation(meta, op);
  meta.emplace_back("nx", std::to_string(grid.nx));
  meta.emplace_back("ny", std::to_string(grid.ny));
  if (sector) meta.emplace_back("max_resnorm_times_distance", format_double(worst));
  if (pick_format(o, "csv") == "csv") {
    out << "re,im,resnorm\n";
    for (std::size_t i = 0; i < grid.z.size(); ++i) {
      out << format_double(grid.z[i].real()) << ',' << format_double(grid.z[i].imag()) << ','
          << format_double(grid.values[i]) << '\n';
    }
    write_csv_metadata(out, meta);
    return;
  }
  ordered_json r;
  r["nx"] = grid.nx;
  r["ny"] = grid.ny;
  ordered_json pts = ordered_json::array();
  for (std::size_t i = 0; i < grid.z.size(); ++i) {
    ordered_json e;
    e["re"] = grid.z[i].real();
    e["im"] = grid.z[i].imag();
    e["resnorm"] = grid.values[i];
    pts.push_back(e);
  }
  r["points"] = pts;
  emit_json(out, std::move(r), meta);
}

void cmd_contour_check(const Options& o, std::ostream& out) {
  const ComplexQuadraticForm form = load_form(o.form);
  const TruncatedOperator op = weyl_matrix(form, o.degree);
  const ContourSpec c = build_contour(form, op);
  const ContourCheck sem = contour_semigroup(op, c, o.s);
  const ContourCheck lem = contour_lemma_check(op, c);
  Metadata meta = base_metadata(o, "contour-check");
  add_truncation(meta, op);
  std::vector<std::pair<std::string, std::string>> kv{
      {"c1", format_double(c.c1)},
      {"t0", format_double(c.t0)},
      {"b", format_double(c.b)},
      {"m", std::to_string(c.m)},
      {"a0", format_double(c.a0)},
      {"c2", format_double(c.c2)},
      {"separation", format_double(c.separation)},
      {"s", format_double(o.s)},
      {"relative_error", format_double(sem.relative_error)},
      {"lemma_relative_error", format_double(lem.relative_error)},
      {"panels", std::to_string(sem.details.panels)},
      {"nodes", std::to_string(sem.details.nodes)},
      {"tail_parameter", format_double(sem.details.tail_parameter)},
      {"tail_bound", format_double(sem.details.tail_bound)}};
  if (pick_format(o, "json") == "csv") {
    emit_key_value_csv(out, kv, meta);
    return;
  }
  ordered_json r;
  r["contour"]["c1"] = c.c1;
  r["contour"]["t0"] = c.t0;
  r["contour"]["b"] = c.b;
  r["contour"]["m"] = c.m;
  r["contour"]["a0"] = c.a0;
  r["contour"]["c2"] = c.c2;
  r["contour"]["separation"] = c.separation;
  r["s"] = o.s;
  r["relative_error"] = sem.relative_error;
  r["lemma_relative_error"] = lem.relative_error;
  r["quadrature"]["panels"] = sem.details.panels;
  r["quadrature"]["nodes"] = sem.details.nodes;
  r["quadrature"]["tail_parameter"] = sem.details.tail_parameter;
  r["quadrature"]["tail_bound"] = sem.details.tail_bound;
  emit_json(out, std::move(r), meta);
}

void cmd_normal_form(const Options& o, std::ostream& out) {
  const Tolerances tol = tolerances(o);
  const ComplexQuadraticForm form = load_form(o.form);
  const NormalForm nf = symplectic_normal_form(form, tol);
  const RMat j = symplectic_j(form.n());
  const double sym = (nf.chi.transpose() * j * nf.chi - j).cwiseAbs().maxCoeff();
  const double res =
      (nf.chi.transpose() * (-form.re()) * nf.chi - nf.coefficients()).cwiseAbs().maxCoeff();
  Metadata meta = base_metadata(o, "normal-form");
  if (pick_format(o, "json") == "csv") {
    out << "row,col,chi\n";
    for (Eigen::Index r = 0; r < nf.chi.rows(); ++r) {
      for (Eigen::Index c = 0; c < nf.chi.cols(); ++c) {
        out << r << ',' << c << ',' << format_double(nf.chi(r, c)) << '\n';
      }
    }
    meta.emplace_back("k", std::to_string(nf.k));
    meta.emplace_back("l", std::to_string(nf.l));
    write_csv_metadata(out, meta);
    return;
  }
  ordered_json r;
  r["k"] = nf.k;
  r["l"] = nf.l;
  r["lambdas"] = nf.lambdas;
  r["chi"] = real_matrix_json(nf.chi);
  r["symplectic_residual"] = sym;
  r["normal_form_residual"] = res;
  emit_json(out, std::move(r), meta);
}

void cmd_order(const Options& o, std::ostream& out) {
  const Tolerances tol = tolerances(o);
  const ComplexQuadraticForm form = load_form(o.form);
  OrderResult res;
  if (o.ray && !o.point.empty()) throw ParseError("give either --ray or --point, not both");
  if (o.ray) {
    res = order_on_ray(form, *o.ray, tol);
  } else if (!o.point.empty()) {
    const auto p = parse_list(o.point, static_cast<std::size_t>(form.dim()), "--point");
    res = order_at_point(form, Eigen::Map<const RVec>(p.data(), form.dim()), tol);
  } else {
    throw ParseError("order needs --ray THETA or --point X");
  }
  Metadata meta = base_metadata(o, "order");
  if (pick_format(o, "json") == "csv") {
    emit_key_value_csv(out,
                       {{"j0", std::to_string(res.j0)},
                        {"k", std::to_string(res.k)},
                        {"finite", res.finite ? "true" : "false"},
                        {"bracket_re", format_double(res.bracket_value.real())},
                        {"bracket_im", format_double(res.bracket_value.imag())}},
                       meta);
    return;
  }
  emit_json(out, order_json(res), meta);
}

void cmd_catalog(const Options& o, std::ostream& out) {
  Metadata meta = base_metadata(o, "catalog");
  if (!o.catalog_id.empty()) {
    const auto e = find_catalog_entry(o.catalog_id);
    if (!e) throw ParseError("unknown catalog id '" + o.catalog_id + "'");
    ordered_json r = form_to_json(e->form);
    meta.emplace_back("id", e->id);
    meta.emplace_back("notes", e->notes);
    emit_json(out, std::move(r), meta);
    return;
  }
  ordered_json list = ordered_json::array();
  for (const auto& e : catalog()) {
    ordered_json item;
    item["id"] = e.id;
    item["notes"] = e.notes;
    item["form"] = form_to_json(e.form);
    ordered_json ex = ordered_json::object();
    if (e.expected.a0) ex["a0"] = *e.expected.a0;
    if (e.expected.theta_min) ex["theta_min"] = *e.expected.theta_min;
    if (e.expected.theta_max) ex["theta_max"] = *e.expected.theta_max;
    if (e.expected.real_part_class) ex["real_part_class"] = *e.expected.real_part_class;
    item["expected"] = ex;
    list.push_back(item);
  }
  ordered_json r;
  r["entries"] = list;
  emit_json(out, std::move(r), meta);
}

void cmd_matrix(const Options& o, std::ostream& out) {
  const ComplexQuadraticForm form = load_form(o.form);
  const TruncatedOperator op = weyl_matrix(form, o.degree);
  Metadata meta = base_metadata(o, "matrix");
  add_truncation(meta, op);
  if (!o.output.empty()) {
    std::ofstream f(o.output, std::ios::binary);
    if (!f) throw Error("cannot write '" + o.output + "'");
    write_matrix_binary(f, op.a);
    // The binary layout is fixed, so its metadata goes to a sidecar file.
    std::ofstream side(o.output + ".meta.json");
    side << metadata_json(meta).dump(2) << '\n';
    ordered_json r;
    r["output"] = o.output;
    r["dim"] = op.dim();
    emit_json(out, std::move(r), meta);
    return;
  }
  if (pick_format(o, "csv") == "json") throw ParseError("matrix supports csv or --output only");
  write_matrix_csv(out, op.a);
  write_csv_metadata(out, meta);
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"qsemi: spectral analysis of elliptic quadratic differential operators"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--format", o.format, "output format: json or csv (default per command)");
  app.add_option("--tol", o.tol, "definiteness tolerance (relative), default 1e-9")
      ->check(CLI::PositiveNumber);

  const std::string form_help = "catalog id (ho1d, nil1d, mix2d, ...) or form JSON file";
  auto add_form = [&](CLI::App* sub) { sub->add_option("form", o.form, form_help)->required(); };
  auto add_degree = [&](CLI::App* sub) {
    sub->add_option("-N,--degree", o.degree, "maximal total Hermite degree")->check(CLI::Range(2, 100000));
  };

  auto* analyze = app.add_subcommand("analyze", "ellipticity, sector, real part, order, decay");
  add_form(analyze);
  auto* spectrum = app.add_subcommand("spectrum", "eigenvalues of q^w with |z| <= radius");
  add_form(spectrum);
  spectrum->add_option("--radius", o.radius, "enumeration radius")->check(CLI::PositiveNumber);
  auto* semigroup = app.add_subcommand("semigroup", "||e^{tA}|| on a truncation");
  add_form(semigroup);
  add_degree(semigroup);
  semigroup->add_option("--tmax", o.t_max, "final time")->check(CLI::PositiveNumber);
  semigroup->add_option("--steps", o.steps, "number of time steps")->check(CLI::Range(1, 1000000));
  auto* pseudo = app.add_subcommand("pseudospectrum", "resolvent norms on a grid");
  add_form(pseudo);
  add_degree(pseudo);
  pseudo->add_option("--window", o.window, "re_min,re_max,im_min,im_max");
  pseudo->add_option("--grid", o.grid, "nx,ny");
  auto* contour = app.add_subcommand("contour-check", "contour formula vs matrix exponential");
  add_form(contour);
  add_degree(contour);
  contour->add_option("-s,--time", o.s, "time s > 0")->check(CLI::PositiveNumber);
  auto* normal = app.add_subcommand("normal-form", "symplectic normal form of -Re q");
  add_form(normal);
  auto* order = app.add_subcommand("order", "chain order on a ray or at a point");
  add_form(order);
  order->add_option("--ray", o.ray, "ray angle theta (radians)");
  order->add_option("--point", o.point, "comma-separated phase-space point");
  auto* cat = app.add_subcommand("catalog", "list catalog forms, or print one as form JSON");
  cat->add_option("id", o.catalog_id, "catalog id");
  auto* matrix = app.add_subcommand("matrix", "Hermite-basis matrix of q^w");
  add_form(matrix);
  add_degree(matrix);
  matrix->add_option("-o,--output", o.output, "binary output file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kExitOk;
    }
    err << "qsemi: " << e.what() << '\n';
    return kExitParse;
  }

  std::ostringstream buf;
  try {
    if (*analyze) cmd_analyze(o, buf);
    else if (*spectrum) cmd_spectrum(o, buf);
    else if (*semigroup) cmd_semigroup(o, buf);
    else if (*pseudo) cmd_pseudospectrum(o, buf);
    else if (*contour) cmd_contour_check(o, buf);
    else if (*normal) cmd_normal_form(o, buf);
    else if (*order) cmd_order(o, buf);
    else if (*cat) cmd_catalog(o, buf);
    else if (*matrix) cmd_matrix(o, buf);
  } catch (const Error& e) {
    err << "qsemi: " << e.what() << '\n';
    return e.exit_code();
  } catch (const std::invalid_argument& e) {
    err << "qsemi: invalid input: " << e.what() << '\n';
    return kExitParse;
  } catch (const std::exception& e) {
    err << "qsemi: internal error: " << e.what() << '\n';
    return kExitFailure;
  }
  out << buf.str();
  out.flush();
  return kExitOk;
}

}  // namespace qsemi
