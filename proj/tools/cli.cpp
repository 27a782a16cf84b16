#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "madelung/crystal.hpp"
#include "madelung/errors.hpp"
#include "madelung/format.hpp"
#include "madelung/green.hpp"
#include "madelung/lattice_sums.hpp"
#include "madelung/madelung.hpp"
#include "madelung/verify.hpp"

namespace madelung::cli {
namespace {

const std::vector<std::string> kCommands = {"madelung", "potential-grid", "psi", "partial-sums", "verify"};

struct SpecFlags {
  std::string family = "nacl";
  int dim = 3;
  std::optional<double> a;
  std::optional<double> length;
  std::string convention = "half-period";
};

struct QuadFlags {
  std::optional<double> abs_tol;
  std::optional<double> rel_tol;
};

void add_spec_flags(CLI::App& app, SpecFlags& s) {
  app.add_option("--family", s.family, "nacl or cscl")->capture_default_str();
  app.add_option("--dim", s.dim, "dimension n")->capture_default_str();
  auto* a = app.add_option("--a", s.a, "half-period a (default 1)");
  auto* len = app.add_option("--length", s.length, "length in the convention given by --convention");
  a->excludes(len);
  app.add_option("--convention", s.convention, "half-period, cell-side or nearest-neighbour")
      ->capture_default_str();
}

void add_quad_flags(CLI::App& app, QuadFlags& q) {
  app.add_option("--abs-tol", q.abs_tol, "absolute quadrature tolerance");
  app.add_option("--rel-tol", q.rel_tol, "relative quadrature tolerance");
}

CrystalSpec resolve(const SpecFlags& s) {
  const Family family = parse_family(s.family);
  const LengthConvention convention = parse_convention(s.convention);
  if (s.a && convention != LengthConvention::kHalfPeriod) {
    throw DomainError("--a is the half-period; use --length with --convention " + s.convention);
  }
  const CrystalSpec spec = s.length ? CrystalSpec::from_length(family, s.dim, *s.length, convention)
                                    : CrystalSpec{family, s.dim, s.a.value_or(1.0)};
  spec.validate();
  return spec;
}

QuadratureConfig resolve(const QuadFlags& q) {
  QuadratureConfig cfg;
  if (q.abs_tol) cfg.abs_tol = *q.abs_tol;
  if (q.rel_tol) cfg.rel_tol = *q.rel_tol;
  cfg.validate();
  return cfg;
}

std::vector<double> parse_point(const std::string& text) {
  std::vector<double> x;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) x.push_back(parse_double(part));
  return x;
}

// Writes to --output when given, else to out.
void emit(const std::string& path, std::ostream& out, const std::function<void(std::ostream&)>& body) {
  if (path.empty() || path == "-") {
    body(out);
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw DomainError("cannot open output file " + path);
  body(file);
  if (!file) throw Error("failed writing " + path);
}

std::string failure_json(const char* kind, const std::string& message, std::optional<double> best = {},
                         std::optional<double> err = {}) {
  nlohmann::ordered_json j;
  j["schema"] = 1;
  j["error"] = kind;
  j["message"] = message;
  if (best) j["best_estimate"] = *best;
  if (err) j["error_estimate"] = std::isfinite(*err) ? nlohmann::ordered_json(*err) : nlohmann::ordered_json();
  return j.dump(2);
}

}  // namespace

int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  // A bare flag list means the madelung command.
  if (args.empty() || std::find(kCommands.begin(), kCommands.end(), args.front()) == kCommands.end()) {
    if (args.empty() || (args.front() != "--help" && args.front() != "-h")) args.insert(args.begin(), "madelung");
  }

  CLI::App app{"Madelung constants and potentials of hypercubic NaCl and CsCl crystals", "madelung"};
  app.require_subcommand(1);

  SpecFlags mspec;
  QuadFlags mquad;
  std::optional<std::string> method;
  double eps = 1e-6;
  double splitting = 1.0;
  std::string output;
  auto* cmd_m = app.add_subcommand("madelung", "compute the Madelung constant (JSON)");
  add_spec_flags(*cmd_m, mspec);
  add_quad_flags(*cmd_m, mquad);
  cmd_m->add_option("--method", method, "subtracted, epsilon-limit, closed-form-2d or ewald-oracle");
  cmd_m->add_option("--eps", eps, "lower cutoff for epsilon-limit")->capture_default_str();
  cmd_m->add_option("--splitting", splitting, "Ewald splitting parameter")->capture_default_str();
  cmd_m->add_option("--output", output, "output file (default stdout)");

  SpecFlags gspec;
  QuadFlags gquad;
  int resolution = 16;
  std::string format = "json";
  auto* cmd_g = app.add_subcommand("potential-grid", "sample the crystal potential on a regular grid");
  add_spec_flags(*cmd_g, gspec);
  add_quad_flags(*cmd_g, gquad);
  cmd_g->add_option("--resolution", resolution, "samples per axis")->capture_default_str();
  cmd_g->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  cmd_g->add_option("--output", output, "output file (default stdout)");

  SpecFlags pspec;
  QuadFlags pquad;
  std::vector<std::string> points;
  auto* cmd_p = app.add_subcommand("psi", "fundamental solution Psi at points (JSON)");
  add_spec_flags(*cmd_p, pspec);
  add_quad_flags(*cmd_p, pquad);
  cmd_p->add_option("--point", points, "comma-separated coordinates; repeatable")->required();
  cmd_p->add_option("--output", output, "output file (default stdout)");

  SpecFlags sspec;
  std::string ordering = "cubes";
  double radius_max = 40.0;
  auto* cmd_s = app.add_subcommand("partial-sums", "naive lattice-sum trajectory (CSV)");
  add_spec_flags(*cmd_s, sspec);
  cmd_s->add_option("--ordering", ordering, "cubes or spheres")->check(CLI::IsMember({"cubes", "spheres"}))
      ->capture_default_str();
  cmd_s->add_option("--radius-max", radius_max, "largest shell radius")->capture_default_str();
  cmd_s->add_option("--output", output, "output file (default stdout)");

  std::string filter;
  auto* cmd_v = app.add_subcommand("verify", "run the invariant suite (JSON report)");
  cmd_v->add_option("--filter", filter, "run checks whose module/name contains this");
  cmd_v->add_option("--output", output, "output file (default stdout)");

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "madelung: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (cmd_m->parsed()) {
      const CrystalSpec spec = resolve(mspec);
      const QuadratureConfig cfg = resolve(mquad);
      const Method m = method ? parse_method(*method) : (spec.n == 2 ? Method::kClosedForm2d : Method::kSubtracted);
      MadelungResult r;
      switch (m) {
        case Method::kEpsilonLimit: r = finite_part_epsilon(spec, eps, cfg); break;
        case Method::kSubtracted: r = finite_part_subtracted(spec, cfg); break;
        case Method::kClosedForm2d:
          if (spec.n != 2) throw UnsupportedError("closed-form-2d requires --dim 2");
          r = madelung_2d(spec);
          break;
        case Method::kEwaldOracle: r = ewald_madelung(spec, splitting); break;
      }
      emit(output, out, [&r](std::ostream& o) { o << to_json(r) << "\n"; });
    } else if (cmd_g->parsed()) {
      const CrystalSpec spec = resolve(gspec);
      const PotentialField field = field_grid(spec, resolution, resolve(gquad));
      emit(output, out, [&](std::ostream& o) {
        if (format == "csv") {
          write_csv(field, o);
        } else {
          o << to_json(field) << "\n";
        }
      });
    } else if (cmd_p->parsed()) {
      const CrystalSpec spec = resolve(pspec);
      const QuadratureConfig cfg = resolve(pquad);
      nlohmann::ordered_json j;
      j["schema"] = 1;
      j["n"] = spec.n;
      j["a"] = spec.a;
      j["normalization"] = "zero-mean";
      auto arr = nlohmann::ordered_json::array();
      for (const std::string& text : points) {
        const std::vector<double> x = parse_point(text);
        if (static_cast<int>(x.size()) != spec.n) {
          throw DomainError("point '" + text + "' does not have " + std::to_string(spec.n) + " coordinates");
        }
        const GreenValue g = psi_integral(TorusPoint(x, spec.a), cfg);
        nlohmann::ordered_json e;
        e["x"] = x;
        e["value"] = g.value;
        e["error_estimate"] = g.error_estimate;
        arr.push_back(std::move(e));
      }
      j["points"] = std::move(arr);
      emit(output, out, [&j](std::ostream& o) { o << j.dump(2) << "\n"; });
    } else if (cmd_s->parsed()) {
      const CrystalSpec spec = resolve(sspec);
      const SumOrdering ord{ordering == "cubes" ? OrderingKind::kExpandingCubes : OrderingKind::kExpandingSpheres,
                            radius_max};
      const auto sums = naive_partial_sums(spec, ord);
      emit(output, out, [&sums](std::ostream& o) { write_csv(sums, o); });
    } else if (cmd_v->parsed()) {
      VerifyOptions opts;
      opts.filter = filter;
      const VerifyReport report = run_verify(opts);
      emit(output, out, [&report](std::ostream& o) { o << report.to_json() << "\n"; });
      return report.passed() ? kExitOk : kExitNumerical;
    }
  } catch (const DomainError& e) {
    err << "madelung: " << e.what() << "\n";
    return kExitUsage;
  } catch (const UnsupportedError& e) {
    err << "madelung: " << e.what() << "\n";
    return kExitUsage;
  } catch (const SingularityError& e) {
    err << "madelung: " << e.what() << "\n";
    return kExitUsage;
  } catch (const AccuracyError& e) {
    out << failure_json("accuracy", e.what(), e.best_estimate(), e.error_estimate()) << "\n";
    return kExitNumerical;
  } catch (const InternalConsistencyError& e) {
    out << failure_json("internal-consistency", e.what()) << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    out << failure_json("failure", e.what()) << "\n";
    return kExitNumerical;
  }
  return kExitOk;
}

}  // namespace madelung::cli
