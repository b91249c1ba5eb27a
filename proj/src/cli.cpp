#include "margulis/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <sstream>

#include "margulis/affine_invariants.hpp"
#include "margulis/error.hpp"
#include "margulis/hitchin.hpp"
#include "margulis/repfile.hpp"
#include "margulis/spectra.hpp"

namespace margulis {
namespace {

struct Options {
  std::size_t max_length = 6;
  std::size_t powers = 16;
  std::string out_path;
  double tolerance = 1e-9;
  unsigned threads = 1;

  std::string file;
  std::string word;
  std::string eta;
  std::size_t direction = 0;
  double step = 1e-4;
  std::size_t n = 0;
  std::size_t k = 0;
};

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ComplexSpectrum:
    case ErrorKind::ModulusCollision:
    case ErrorKind::Singular:
    case ErrorKind::NotTransverse:
    case ErrorKind::DegenerateParameters:
      return 3;
    default:
      return 2;
  }
}

void emit_error(std::ostream& err, std::string_view kind, std::string_view message) {
  err << "{\"error\": " << quote(kind) << ", \"message\": " << quote(message) << "}\n";
}

std::vector<double> as_doubles(const std::vector<int>& v) { return {v.begin(), v.end()}; }

// Writes to --out when given, else to `out`.
void deliver(const Options& o, std::ostream& out, const std::string& text) {
  if (o.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(o.out_path, std::ios::binary);
  if (!f) throw LoadError(1, "IoError", "cannot write " + o.out_path);
  f << text;
  if (!f) throw LoadError(1, "IoError", "cannot write " + o.out_path);
}

Matrix sl_basis_element(std::size_t n, std::size_t index) {
  Matrix x(n, n);
  const std::size_t off = n * (n - 1);
  if (index < off) {
    const std::size_t i = index / (n - 1);
    std::size_t j = index % (n - 1);
    if (j >= i) ++j;
    x(i, j) = 1.0;
    return x;
  }
  const std::size_t h = index - off;
  if (h + 1 >= n) {
    throw MathError(ErrorKind::OutOfRange, "direction index must be below " + std::to_string(n * n - 1));
  }
  x(h, h) = 1.0;
  x(h + 1, h + 1) = -1.0;
  return x;
}

int cmd_validate(const Options& o, std::ostream& out) {
  const Tolerances tol = Tolerances::with_base(o.tolerance);
  const RepFile f = load_rep_file(o.file, tol);
  out << "{\"valid\": true, \"name\": " << quote(f.name) << ", \"n\": " << f.rep.n << ", \"k\": " << f.rep.k()
      << "}\n";
  return 0;
}

int cmd_invariant(const Options& o, std::ostream& out) {
  const Tolerances tol = Tolerances::with_base(o.tolerance);
  const RepFile f = load_rep_file(o.file, tol);
  const GroupWord w = parse_word(o.word, f.rep.k());
  const WordInvariants inv = word_invariants(f.rep, w, tol);
  out << "{\"word\": " << quote(to_string(w)) << ", \"jordan\": " << format_array(inv.jordan)
      << ", \"margulis\": " << format_array(inv.margulis) << ", \"signs\": " << format_array(as_doubles(inv.signs))
      << "}\n";
  return 0;
}

int cmd_crossratio(const Options& o, std::ostream& out) {
  const Tolerances tol = Tolerances::with_base(o.tolerance);
  const auto spaces = parse_parabolics(read_text_file(o.file));
  if (spaces.size() == 4) {
    out << "{\"beta\": " << format_array(cross_ratio(spaces[0], spaces[1], spaces[2], spaces[3], tol)) << "}\n";
  } else if (spaces.size() == 3) {
    out << "{\"delta\": " << format_array(triple_ratio(spaces[0], spaces[1], spaces[2], tol)) << "}\n";
  } else {
    throw LoadError(2, "SchemaError", "expected 3 spaces (triple ratio) or 4 spaces (cross ratio)");
  }
  return 0;
}

int cmd_spectrum(const Options& o, std::ostream& out) {
  const Tolerances tol = Tolerances::with_base(o.tolerance);
  const RepFile f = load_rep_file(o.file, tol);
  const auto samples = sample_spectrum(f.rep, o.max_length, tol, o.threads);
  const std::size_t n = f.rep.n;
  std::string csv = "word,length";
  for (std::size_t i = 1; i <= n; ++i) csv += ",jd_" + std::to_string(i);
  for (std::size_t i = 1; i <= n; ++i) csv += ",m_" + std::to_string(i);
  csv += ",status\n";
  for (const auto& s : samples) {
    csv += to_string(s.word) + "," + std::to_string(s.length);
    for (std::size_t i = 0; i < n; ++i) csv += "," + (s.ok ? format_number(s.jordan[i]) : std::string());
    for (std::size_t i = 0; i < n; ++i) csv += "," + (s.ok ? format_number(s.margulis[i]) : std::string());
    csv += s.ok ? ",ok\n" : ",skipped:" + s.skip_reason + "\n";
  }
  deliver(o, out, csv);
  return 0;
}

int cmd_proper(const Options& o, std::ostream& out) {
  const Tolerances tol = Tolerances::with_base(o.tolerance);
  const RepFile f = load_rep_file(o.file, tol);
  const auto samples = sample_spectrum(f.rep, o.max_length, tol, o.threads);
  const PropernessReport r = properness_diagnostic(samples);
  std::ostringstream s;
  s << "{\"horizon\": " << r.horizon << ", \"functional\": " << format_array(r.functional)
    << ", \"margin\": " << (r.margin ? format_number(*r.margin) : "null") << ", \"sample_count\": " << r.sample_count
    << ", \"skipped_count\": " << r.skipped_count << ", \"tau_proper\": " << format_number(kTauProper)
    << ", \"tau_zero\": " << format_number(kTauZero) << ", \"verdict\": " << quote(to_string(r.verdict))
    << ", \"note\": \"sampled evidence up to the horizon, not a certificate\"}\n";
  deliver(o, out, s.str());
  return 0;
}

int cmd_limit(const Options& o, std::ostream& out) {
  const Tolerances tol = Tolerances::with_base(o.tolerance);
  const RepFile f = load_rep_file(o.file, tol);
  const GroupWord g = parse_word(o.word, f.rep.k());
  const GroupWord h = parse_word(o.eta, f.rep.k());
  const auto rows = limit_formula_experiment(f.rep, g, h, o.powers, tol);
  std::ostringstream s;
  s << "{\"gamma\": " << quote(to_string(g)) << ", \"eta\": " << quote(to_string(h))
    << ", \"target\": " << format_array(rows.empty() ? CartanVector{} : rows.front().target) << ", \"rows\": [";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    s << (i ? ", " : "") << "{\"n\": " << rows[i].power << ", \"defect\": " << format_array(rows[i].defect)
      << ", \"gap\": " << format_number(rows[i].gap) << "}";
  }
  s << "]}\n";
  deliver(o, out, s.str());
  return 0;
}

int cmd_deriv(const Options& o, std::ostream& out) {
  const Tolerances tol = Tolerances::with_base(o.tolerance);
  const RepFile f = load_rep_file(o.file, tol);
  const GroupWord w = parse_word(o.word, f.rep.k());
  const Matrix g = eval_affine(f.rep, w).g;
  const Matrix x = sl_basis_element(f.rep.n, o.direction);
  const DerivativeResult r = derivative_experiment(g, x, o.step, tol);
  out << "{\"word\": " << quote(to_string(w)) << ", \"direction\": " << o.direction
      << ", \"t\": " << format_number(o.step) << ", \"finite_difference\": " << format_array(r.finite_difference)
      << ", \"margulis\": " << format_array(r.margulis) << ", \"error\": " << format_number(r.error) << "}\n";
  return 0;
}

int cmd_lw(const Options& o, std::ostream& out) {
  const CartanVector x = lw_direction(o.n, o.k);
  for (std::size_t i = 0; i < x.size(); ++i) out << (i ? " " : "") << format_number(x[i]);
  out << "\n";
  return 0;
}

int cmd_fuchsian(const Options& o, std::ostream& out) {
  const Tolerances tol = Tolerances::with_base(o.tolerance);
  const RepFile base = load_rep_file(o.file, tol);
  if (base.rep.n != 2) throw LoadError(2, "SchemaError", "fuchsian expects a 2x2 representation file");
  if (o.n < 2 || o.n > 12) throw MathError(ErrorKind::OutOfRange, "target dimension must lie in 2..12");
  std::vector<Matrix> rho;
  std::vector<Matrix> u;
  for (std::size_t i = 0; i < base.rep.k(); ++i) {
    rho.push_back(sym_rep(o.n, base.rep.rho[i], tol));
    u.push_back(sym_rep_lie(o.n, base.rep.u[i]));
  }
  RepFile lifted;
  lifted.name = base.name.empty() ? "lift" : base.name + " lift";
  lifted.description = "Sym^" + std::to_string(o.n - 1) + " lift of a 2x2 representation";
  lifted.rep = AffineRepresentation::make(std::move(rho), std::move(u), tol);
  deliver(o, out, rep_file_json(lifted));
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Affine invariants of free-group representations into SL(n,R) x| sl(n,R)", "margulis"};
  app.require_subcommand(1);
  app.add_option("--tolerance", o.tolerance, "Base tolerance (unimodularity, tracelessness, gaps)")
      ->check(CLI::PositiveNumber);
  app.add_option("--threads", o.threads, "Worker threads for spectrum sampling (0 = all cores)");
  app.add_option("--max-length", o.max_length, "Maximal word length")->check(CLI::PositiveNumber);
  app.add_option("--out", o.out_path, "Write the result to this file");

  auto* validate = app.add_subcommand("validate", "Check a representation file");
  validate->add_option("file", o.file)->required();

  auto* invariant = app.add_subcommand("invariant", "Jordan projection and Margulis invariant of a word");
  invariant->add_option("file", o.file)->required();
  invariant->add_option("word", o.word)->required();

  auto* crossratio = app.add_subcommand("crossratio", "Affine cross ratio (4 spaces) or triple ratio (3 spaces)");
  crossratio->add_option("file", o.file)->required();

  auto* spectrum = app.add_subcommand("spectrum", "CSV of invariants over conjugacy representatives");
  spectrum->add_option("file", o.file)->required();

  auto* proper = app.add_subcommand("proper", "Properness diagnostic report");
  proper->add_option("file", o.file)->required();

  auto* limit = app.add_subcommand("limit", "Defect M(g^n h^n) - M(g^n) - M(h^n) against the cross ratio");
  limit->add_option("file", o.file)->required();
  limit->add_option("gamma", o.word)->required();
  limit->add_option("eta", o.eta)->required();
  limit->add_option("--powers", o.powers, "Largest power n")->check(CLI::PositiveNumber);

  auto* deriv = app.add_subcommand("deriv", "Central difference of the Jordan projection along a direction");
  deriv->add_option("file", o.file)->required();
  deriv->add_option("word", o.word)->required();
  deriv->add_option("direction", o.direction, "Index into the basis E_ij (i != j, row-major), then H_i")
      ->required();
  deriv->add_option("t", o.step)->required();

  auto* lw = app.add_subcommand("lw", "Direction vector X_k in dimension n");
  lw->add_option("n", o.n)->required();
  lw->add_option("k", o.k)->required();

  auto* fuchsian = app.add_subcommand("fuchsian", "Lift a 2x2 representation file to dimension n");
  fuchsian->add_option("n", o.n)->required();
  fuchsian->add_option("file", o.file)->required();

  for (auto* sub : app.get_subcommands([](const CLI::App*) { return true; })) sub->fallthrough();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*validate) return cmd_validate(o, out);
    if (*invariant) return cmd_invariant(o, out);
    if (*crossratio) return cmd_crossratio(o, out);
    if (*spectrum) return cmd_spectrum(o, out);
    if (*proper) return cmd_proper(o, out);
    if (*limit) return cmd_limit(o, out);
    if (*deriv) return cmd_deriv(o, out);
    if (*lw) return cmd_lw(o, out);
    if (*fuchsian) return cmd_fuchsian(o, out);
  } catch (const LoadError& e) {
    emit_error(err, e.kind(), e.what());
    return e.exit_code();
  } catch (const MathError& e) {
    emit_error(err, to_string(e.kind()), e.what());
    return exit_code_for(e.kind());
  }
  return 2;
}

}  // namespace margulis
