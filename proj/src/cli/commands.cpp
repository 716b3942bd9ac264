#include "detflow/cli/commands.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>

#include "detflow/cli/suites.hpp"
#include "detflow/errors.hpp"
#include "detflow/flows/diagnostics.hpp"
#include "detflow/flows/gz_flow.hpp"
#include "detflow/flows/minor_flow.hpp"
#include "detflow/gz/gz_system.hpp"
#include "detflow/poisson/bracket.hpp"
#include "detflow/poisson/field.hpp"
#include "detflow/poisson/minor.hpp"
#include "detflow/polyalg/parser.hpp"
#include "detflow/weyl/kz.hpp"

namespace detflow {

namespace {

struct UsageError : Error {
  using Error::Error;
};

/// A parse failure inside one named argument, rendered with a caret.
struct CaretError : Error {
  CaretError(const std::string& text, const ParseError& e)
      : Error(e.message() + " at position " + std::to_string(e.position()) + "\n  " + text + "\n  " +
              std::string(e.position(), ' ') + "^") {}
};

struct ShapeArgs {
  std::string shape;
  int m = 0;
  int n = 0;

  Shape resolve(Shape fallback) const {
    Shape s = fallback;
    if (!shape.empty()) {
      const auto x = shape.find('x');
      try {
        if (x == std::string::npos) throw std::invalid_argument("");
        s = {std::stoi(shape.substr(0, x)), std::stoi(shape.substr(x + 1))};
      } catch (const std::exception&) {
        throw UsageError("--shape expects MxN, got '" + shape + "'");
      }
    }
    if (m > 0) s.rows = m;
    if (n > 0) s.cols = n;
    if (m == 0 && n > 0 && shape.empty()) s.rows = n;  // --n alone: square
    if (s.rows < 1 || s.cols < 1 || s.rows > 8 || s.cols > 8) throw UsageError("shape must lie within 1x1 .. 8x8");
    return s;
  }
};

void add_shape(CLI::App* cmd, ShapeArgs& a) {
  cmd->add_option("--shape", a.shape, "Ambient shape MxN");
  cmd->add_option("--m", a.m, "Number of rows");
  cmd->add_option("--n", a.n, "Number of columns (alone: square size)");
}

RationalFn parse_arg(const std::string& text, Shape shape) {
  try {
    return parse_rational(text, shape);
  } catch (const ParseError& e) {
    throw CaretError(text, e);
  }
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw UsageError("invalid JSON in '" + path + "': " + e.what());
  }
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write '" + path.string() + "'");
  out << content;
}

std::string render(const RationalFn& f) { return f.is_polynomial() ? f.as_poly().render() : f.render(); }

std::string render_point(const MatrixPoint& x) {
  std::ostringstream out;
  out.precision(10);
  for (int i = 1; i <= x.shape().rows; ++i) {
    out << "  [";
    for (int j = 1; j <= x.shape().cols; ++j) {
      const cplx v = x(i, j);
      out << (j > 1 ? ", " : "") << v.real() << (v.imag() < 0 ? " - " : " + ") << std::abs(v.imag()) << "i";
    }
    out << "]\n";
  }
  return out.str();
}

std::vector<int> parse_ints(const std::string& csv, const std::string& what) {
  std::vector<int> out;
  std::stringstream in(csv);
  for (std::string item; std::getline(in, item, ',');) {
    try {
      out.push_back(std::stoi(item));
    } catch (const std::exception&) {
      throw UsageError(what + ": expected comma-separated integers, got '" + csv + "'");
    }
  }
  return out;
}

struct PointArgs {
  std::string x0_file;
  std::optional<std::uint64_t> seed;

  /// Seeded points are resampled until `distance` clears the guard.
  MatrixPoint resolve(Shape shape, const std::function<double(const MatrixPoint&)>& distance,
                      std::uint64_t& used_seed) const {
    if (!x0_file.empty()) {
      MatrixPoint x = point_from_json(read_json_file(x0_file));
      if (x.shape() != shape) throw UsageError("--x0 has shape " + x.shape().to_string() + ", expected " + shape.to_string());
      return x;
    }
    used_seed = seed.value_or(42);
    std::mt19937_64 rng(used_seed);
    for (;;) {
      MatrixPoint x = generic_point(shape, rng);
      if (!distance || distance(x) >= 1e-8 * (1 + x.max_abs())) return x;
    }
  }
};

void add_point(CLI::App* cmd, PointArgs& a) {
  auto* f = cmd->add_option("--x0", a.x0_file, "Initial point JSON file");
  auto* s = cmd->add_option("--seed", a.seed, "Seed for a generic random initial point (default 42)");
  f->excludes(s);
}

struct FlowArgs {
  double theta = 0;
  double arclength = 2;
  double tol = 1e-10;
  bool closed = false, numeric = false, both = false;
};

void add_flow(CLI::App* cmd, FlowArgs& a) {
  cmd->add_option("--theta", a.theta, "Ray angle: t = s e^{i theta}");
  cmd->add_option("--arclength", a.arclength, "Ray length S");
  cmd->add_option("--tol", a.tol, "Integrator relative tolerance");
  auto* c = cmd->add_flag("--closed", a.closed, "Closed form only");
  auto* nm = cmd->add_flag("--numeric", a.numeric, "Numeric integration only");
  auto* b = cmd->add_flag("--both", a.both, "Both, with cross-validation (default)");
  c->excludes(nm)->excludes(b);
  nm->excludes(b);
}

std::optional<MinorSpec> as_minor(const RationalFn& h) {
  if (!h.is_polynomial()) return std::nullopt;
  const Poly& p = h.as_poly();
  const int r = p.total_degree();
  const Shape shape = p.shape();
  if (r < 1 || r > std::min(shape.rows, shape.cols)) return std::nullopt;
  for (const auto& spec : all_minors(shape, r))
    if (spec.size() == r && minor(spec, shape) == p) return spec;
  return std::nullopt;
}

/// Runs closed and/or numeric flows, writes artifacts, prints a summary.
int run_flow(const RationalFn& h, const MatrixPoint& x0, std::uint64_t seed,
             const std::function<ClosedFlow()>& closed_builder, const std::function<double(std::span<const cplx>)>& locus,
             const FlowArgs& args, const std::string& out_dir, bool as_json, std::ostream& out) {
  const bool want_closed = !args.numeric;
  const bool want_numeric = !args.closed;
  json summary = {{"hamiltonian", render(h)}, {"x0", point_to_json(x0)}, {"seed", seed},
                  {"theta", args.theta},      {"arclength", args.arclength}, {"tol", args.tol}};
  std::optional<ClosedFlow> closed;
  std::optional<Trajectory> traj;
  if (want_closed) {
    closed = closed_builder();
    summary["closed"] = {{"stages", closed->stage}};
    const auto end = closed->evaluate(std::polar(args.arclength, args.theta));
    summary["closed"]["endpoint"] = point_to_json(end);
  }
  if (want_numeric) {
    FlowOptions o;
    o.theta = args.theta;
    o.arclength = args.arclength;
    o.tol = args.tol;
    o.locus_distance = locus;
    traj = numeric_flow(h, x0, o);
    summary["numeric"] = {{"steps", traj->times.size() - 1},
                          {"rejected", traj->rejected},
                          {"conservation_error", traj->conservation_error()},
                          {"endpoint", point_to_json(traj->final_point())}};
  }
  bool passed = true;
  if (closed && traj) {
    const CrossValidation cv = cross_validate(*closed, *traj);
    passed = cv.passed();
    summary["cross_validation"] = {{"max_deviation", cv.max_deviation},
                                   {"tolerance", CrossValidation::kTolerance},
                                   {"status", passed ? "PASS" : "FAIL"}};
  }
  if (!out_dir.empty()) {
    const std::filesystem::path dir(out_dir);
    if (traj) write_file(dir / "trajectory.csv", traj->csv());
    if (closed) write_file(dir / "closed_flow.json", closed_flow_to_json(*closed).dump(2) + "\n");
    write_file(dir / "flow_report.json", summary.dump(2) + "\n");
  }
  if (as_json) {
    out << summary.dump(2) << "\n";
  } else {
    out << "h = " << render(h) << "\n";
    if (closed) out << "closed form at t = S e^{i theta}:\n" << render_point(closed->evaluate(std::polar(args.arclength, args.theta)));
    if (traj)
      out << "numeric: " << traj->times.size() - 1 << " steps, conservation error "
          << traj->conservation_error() << "\n"
          << render_point(traj->final_point());
    if (closed && traj)
      out << "cross-validation: " << summary["cross_validation"]["max_deviation"].get<double>() << " ("
          << (passed ? "PASS" : "FAIL") << ", tol 1e-6)\n";
  }
  return passed ? kExitPass : kExitFail;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Determinantal Hamiltonians on matrix affine Poisson space"};
  app.require_subcommand(1);
  bool as_json = false;
  std::string out_dir;
  app.add_flag("--json", as_json, "Machine-readable output");
  app.add_option("--out", out_dir, "Directory for output files");

  // bracket
  ShapeArgs bracket_shape;
  std::string f_text, g_text;
  auto* bracket_cmd = app.add_subcommand("bracket", "Poisson bracket {f, g}");
  bracket_cmd->add_option("f", f_text)->required();
  bracket_cmd->add_option("g", g_text)->required();
  add_shape(bracket_cmd, bracket_shape);

  // minor-bracket
  ShapeArgs mb_shape;
  int mb_k = 0, mb_l = 0;
  std::string mb_rows, mb_cols;
  auto* mb_cmd = app.add_subcommand("minor-bracket", "{x_kl, Delta_{I,J}} in closed form");
  mb_cmd->add_option("k", mb_k)->required();
  mb_cmd->add_option("l", mb_l)->required();
  mb_cmd->add_option("--rows", mb_rows, "Row set I, comma separated")->required();
  mb_cmd->add_option("--cols", mb_cols, "Column set J, comma separated")->required();
  add_shape(mb_cmd, mb_shape);

  // kz
  int kz_n = 0;
  std::string kz_word;
  bool kz_all = false;
  auto* kz_cmd = app.add_subcommand("kz", "Kogan-Zelevinsky Hamiltonians of a reduced word");
  kz_cmd->add_option("n", kz_n)->required();
  auto* kz_word_opt = kz_cmd->add_option("reduced_word", kz_word, "Reduced word of the longest element, e.g. 1,2,1");
  kz_cmd->add_option("--word", kz_word, "Same as the positional word")->excludes(kz_word_opt);
  kz_cmd->add_flag("--all-words", kz_all, "Every reduced word (n <= 5)");

  // gz
  int gz_n = 0;
  std::string gz_chain;
  auto* gz_cmd = app.add_subcommand("gz", "Gelfand-Zeitlin Hamiltonians");
  gz_cmd->add_option("n", gz_n)->required();
  gz_cmd->add_option("--chain", gz_chain, "Projection chain JSON file");

  // flow
  ShapeArgs flow_shape;
  std::string flow_h;
  PointArgs flow_point;
  FlowArgs flow_args;
  auto* flow_cmd = app.add_subcommand("flow", "Hamiltonian flow of an expression");
  flow_cmd->add_option("hamiltonian", flow_h, "Expression, e.g. x[3][1] or det(1,2;2,3)")->required();
  add_shape(flow_cmd, flow_shape);
  add_point(flow_cmd, flow_point);
  add_flow(flow_cmd, flow_args);

  // gz-flow
  int gzf_n = 0;
  std::string gzf_member, gzf_chain;
  PointArgs gzf_point;
  FlowArgs gzf_args;
  auto* gzf_cmd = app.add_subcommand("gz-flow", "Flow of a Gelfand-Zeitlin Hamiltonian");
  gzf_cmd->add_option("--n", gzf_n)->required();
  gzf_cmd->add_option("--member", gzf_member, "Level and generator 'l,k' (k = l: Delta_l)")->required();
  gzf_cmd->add_option("--chain", gzf_chain, "Projection chain JSON file");
  add_point(gzf_cmd, gzf_point);
  add_flow(gzf_cmd, gzf_args);

  // rank
  ShapeArgs rank_shape;
  PointArgs rank_point;
  auto* rank_cmd = app.add_subcommand("rank", "Rank of the Poisson bivector at a point");
  add_shape(rank_cmd, rank_shape);
  add_point(rank_cmd, rank_point);

  // verify
  std::string suite;
  std::vector<int> verify_ns = {3};
  std::uint64_t verify_seed = 42;
  unsigned jobs = 0;
  auto* verify_cmd = app.add_subcommand("verify", "Run a verification suite");
  verify_cmd->add_option("suite", suite, "algebra, kz, gz, flows or all")->required()->check(CLI::IsMember({"algebra", "kz", "gz", "flows", "all"}));
  verify_cmd->add_option("--n", verify_ns, "Sizes, comma separated")->delimiter(',');
  verify_cmd->add_option("--seed", verify_seed);
  verify_cmd->add_option("--jobs", jobs, "Worker threads (0: all cores)");

  for (auto* sub : app.get_subcommands({})) {
    sub->add_flag("--json", as_json, "Machine-readable output");
    sub->add_option("--out", out_dir, "Directory for output files");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (bracket_cmd->parsed()) {
      const Shape shape = bracket_shape.resolve({2, 2});
      const RationalFn f = parse_arg(f_text, shape), g = parse_arg(g_text, shape);
      const RationalFn b = f.is_polynomial() && g.is_polynomial() ? RationalFn(bracket(f.as_poly(), g.as_poly()))
                                                                  : bracket(f, g);
      if (as_json)
        out << json{{"shape", {shape.rows, shape.cols}}, {"result", rational_to_json(b)}, {"text", render(b)}}.dump(2)
            << "\n";
      else
        out << render(b) << "\n";
      return kExitPass;
    }

    if (mb_cmd->parsed()) {
      const Shape shape = mb_shape.resolve({3, 3});
      const MinorSpec spec(parse_ints(mb_rows, "--rows"), parse_ints(mb_cols, "--cols"));
      if (!spec.fits(shape)) throw IndexOutOfRange(spec.label() + " does not fit " + shape.to_string());
      const Poly closed = minor_bracket(mb_k, mb_l, spec, shape);
      const auto sign_form = lemma_sign_bracket(mb_k, mb_l, spec, shape);
      if (as_json) {
        json j = {{"minor", minor_spec_to_json(spec)}, {"k", mb_k}, {"l", mb_l}, {"result", poly_to_json(closed)},
                  {"text", closed.render()}, {"sign_form_applies", sign_form.has_value()}};
        out << j.dump(2) << "\n";
      } else {
        out << closed.render() << "\n";
        if (sign_form) out << "(sign form applies)\n";
      }
      return kExitPass;
    }

    if (kz_cmd->parsed()) {
      if (kz_all) {
        if (kz_n > 5) throw SizeGuard("--all-words supports n <= 5");
        json systems = json::array();
        for (const auto& w : all_reduced_words(Permutation::longest(kz_n))) {
          const KZSystem sys = kz_hamiltonians(kz_n, w);
          if (as_json) {
            systems.push_back(kz_to_json(sys));
          } else {
            out << w.to_string() << ":";
            for (const auto& s : sys.specs) out << " " << s.label();
            out << "\n";
          }
        }
        if (as_json) out << json{{"n", kz_n}, {"systems", systems}}.dump(2) << "\n";
        else out << "all pairs commute in every system\n";
        return kExitPass;
      }
      if (kz_word.empty()) throw UsageError("kz: give a reduced word or --all-words");
      const KZSystem sys = kz_hamiltonians(kz_n, ReducedWord::parse(kz_word));
      if (as_json) {
        out << kz_to_json(sys).dump(2) << "\n";
      } else {
        for (std::size_t k = 0; k < sys.specs.size(); ++k)
          out << "H_" << k + 1 << " = " << sys.specs[k].label() << " = " << sys.hams[k].render() << "\n";
        const std::size_t pairs = sys.specs.size() * (sys.specs.size() - 1) / 2;
        out << "all " << pairs << " pairs commute ("
            << (sys.certificate == KZSystem::Certificate::Exact ? "exact" : "numeric") << ")\n";
      }
      return kExitPass;
    }

    if (gz_cmd->parsed()) {
      std::optional<std::vector<ChainStep>> chain;
      if (!gz_chain.empty()) chain = chain_from_json(read_json_file(gz_chain));
      const GZSystem sys = gz_system(gz_n, chain);
      if (as_json) {
        out << gz_to_json(sys).dump(2) << "\n";
      } else {
        for (std::size_t a = 0; a < sys.hams.size(); ++a)
          out << sys.labels[a] << " = " << render(sys.hams[a]) << "\n";
        out << "duplicates: " << sys.duplicate_count() << "\n";
      }
      return kExitPass;
    }

    if (flow_cmd->parsed()) {
      const Shape shape = flow_shape.resolve({3, 3});
      const RationalFn h = parse_arg(flow_h, shape);
      std::uint64_t seed = 0;
      const CompiledFunction compiled(h);
      std::function<double(const MatrixPoint&)> dist;
      if (!h.is_polynomial()) dist = [&](const MatrixPoint& x) { return std::abs(compiled.denominator(x.values())); };
      const MatrixPoint x0 = flow_point.resolve(shape, dist, seed);
      const auto spec = as_minor(h);
      auto builder = [&]() -> ClosedFlow {
        if (spec) return minor_flow_closed(*spec, x0);
        try {
          return ratio_flow_closed(h, x0);
        } catch (const OnSingularLocus&) {
          throw;
        } catch (const Error& e) {
          throw UsageError(std::string("no closed form for this Hamiltonian (") + e.what() + "); use --numeric");
        }
      };
      return run_flow(h, x0, seed, builder, {}, flow_args, out_dir, as_json, out);
    }

    if (gzf_cmd->parsed()) {
      const auto lk = parse_ints(gzf_member, "--member");
      if (lk.size() != 2 || lk[0] < 1 || lk[0] > gzf_n || lk[1] < 1 || lk[1] > lk[0])
        throw UsageError("--member expects 'l,k' with 1 <= k <= l <= n");
      std::optional<std::vector<ChainStep>> chain;
      if (!gzf_chain.empty()) chain = chain_from_json(read_json_file(gzf_chain));
      const GZSystem sys = gz_system(gzf_n, chain);
      const std::size_t member = static_cast<std::size_t>(lk[0] * (lk[0] - 1) / 2 + lk[1] - 1);
      const RationalFn& h = sys.hams[member];
      const SingularLocus locus(gzf_n);
      std::uint64_t seed = 0;
      const MatrixPoint x0 =
          gzf_point.resolve({gzf_n, gzf_n}, [&](const MatrixPoint& x) { return locus.distance(x); }, seed);
      if (!chain && locus.contains(x0)) throw OnSingularLocus("X0 lies on D_" + std::to_string(gzf_n));
      const GZIndex idx{lk[0], lk[1]};
      auto builder = [&]() { return chain ? gz_flow_closed(sys, member, x0) : gz_flow_closed(idx, x0); };
      std::function<double(std::span<const cplx>)> guard;
      if (!chain) guard = [&locus](std::span<const cplx> x) { return locus.distance(x); };
      return run_flow(h, x0, seed, builder, guard, gzf_args, out_dir, as_json, out);
    }

    if (rank_cmd->parsed()) {
      const Shape shape = rank_shape.resolve({3, 3});
      std::uint64_t seed = 0;
      const MatrixPoint x = rank_point.resolve(shape, {}, seed);
      const Eigen::MatrixXcd b = bivector_matrix(x);
      const int rank = numeric_rank(b);
      if (!out_dir.empty()) write_file(std::filesystem::path(out_dir) / "bivector.csv", bivector_csv(b));
      if (as_json)
        out << json{{"shape", {shape.rows, shape.cols}}, {"seed", seed}, {"rank", rank}, {"dimension", shape.size()}}.dump(2)
            << "\n";
      else
        out << "bivector rank " << rank << " of " << shape.size() << "\n";
      return kExitPass;
    }

    if (verify_cmd->parsed()) {
      const VerificationReport report = run_suite(suite, {verify_ns, verify_seed, jobs});
      if (!out_dir.empty()) {
        write_file(std::filesystem::path(out_dir) / "report.json", report.to_json().dump(2) + "\n");
        write_file(std::filesystem::path(out_dir) / "report.txt", report.table());
      }
      if (as_json) out << report.to_json().dump(2) << "\n";
      else out << report.table();
      return report.all_passed() ? kExitPass : kExitFail;
    }
  } catch (const CaretError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const IndexOutOfRange& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ShapeMismatch& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const NotReducedWord& e) {
    err << "error: not a reduced word of the longest element: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InvalidChain& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const SizeGuard& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const OnSingularLocus& e) {
    err << "error: " << e.what() << "\n";
    return kExitSingular;
  } catch (const SingularityApproached& e) {
    err << "error: " << e.what() << " (last good t = " << e.last_good_t().real() << " + " << e.last_good_t().imag()
        << "i)\n";
    return kExitSingular;
  } catch (const DenominatorVanishes& e) {
    err << "error: " << e.what() << "\n";
    return kExitSingular;
  } catch (const json::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFail;
  }
  return kExitUsage;
}

}  // namespace detflow
