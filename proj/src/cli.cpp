#include "qspectral/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "qspectral/classify.hpp"
#include "qspectral/corpus.hpp"
#include "qspectral/finite_spectrum.hpp"
#include "qspectral/invariants.hpp"
#include "qspectral/oracle.hpp"
#include "qspectral/spec_io.hpp"

namespace qspectral::cli {

namespace {

// Sets that are the eigenspheres of a matrix; every other set is empty in
// finite dimension.
bool matrix_eigen_set(const std::string& name) {
  return name == "sigma_s" || name == "sigma_ps" || name == "sigma_0" || name == "pi_0" ||
         name == "iso";
}

std::string file_name(const std::string& set) {
  std::string s = set;
  std::replace(s.begin(), s.end(), ':', '_');
  return s + ".csv";
}

Verdict membership(const SpectralClassification& c, const std::string& name) {
  auto b = [](bool x) { return x ? Verdict::yes : Verdict::no; };
  if (name == "sigma_s") return c.s_spectrum;
  if (name == "sigma_ps") return c.point_spectrum;
  if (name == "sigma_rs") return c.residual_spectrum;
  if (name == "sigma_cs") return c.continuous_spectrum;
  if (name == "sigma_e") return b(c.essential);
  if (name == "sigma_el") return b(c.essential_left);
  if (name == "sigma_er") return b(c.essential_right);
  if (name == "sigma_+inf") return b(c.plus_infinity);
  if (name == "sigma_-inf") return b(c.minus_infinity);
  if (name == "sigma_0") return c.sigma_0;
  if (name == "ws") return c.weyl;
  if (name == "bs") return c.browder;
  if (name == "iso") return c.isolated;
  if (name == "acc") return c.accumulation;
  if (name == "pi_0") return c.pi_0;
  const long long k = std::stoll(name.substr(std::string("sigma_k:").size()));
  return b(c.sigma_k && *c.sigma_k == k);
}

// Oracle estimate of a delegated set from a truncation report.
Verdict estimate(const SpectralClassification& c, const TruncationReport& r, const std::string& name) {
  Verdict in_s = Verdict::delegated;
  if (c.s_spectrum == Verdict::yes || r.verdict == TrendVerdict::vanishing) in_s = Verdict::yes;
  else if (r.verdict == TrendVerdict::bounded_away) in_s = Verdict::no;
  const Verdict known = membership(c, name);
  if (known != Verdict::delegated) return known;
  if (in_s == Verdict::no) return Verdict::no;
  if (name == "sigma_s") return in_s;
  if (name == "sigma_0") return estimate_sigma0(r) ? Verdict::yes : Verdict::delegated;
  if (name == "sigma_ps" && r.verdict == TrendVerdict::vanishing && r.rows.back().kernel_estimate > 0)
    return Verdict::yes;
  return Verdict::delegated;
}

char flag(Verdict v) {
  switch (v) {
    case Verdict::yes: return '1';
    case Verdict::no: return '0';
    case Verdict::delegated: return '?';
  }
  return '?';
}

std::vector<HalfPlanePoint> raster(std::size_t columns) {
  const std::size_t rows = (columns + 1) / 2;
  std::vector<HalfPlanePoint> pts = half_plane_grid(columns, rows);
  std::sort(pts.begin(), pts.end(), [](const HalfPlanePoint& a, const HalfPlanePoint& b) {
    return a.u != b.u ? a.u < b.u : a.s < b.s;
  });
  return pts;
}

// Writes to out directly, to --out as a file, or to --out/<name> as a directory.
class Sink {
 public:
  Sink(const std::string& out, std::size_t outputs, std::ostream& stream)
      : out_(out), multiple_(outputs > 1), stream_(stream) {
    if (!out_.empty() && multiple_) std::filesystem::create_directories(out_);
  }

  void emit(const std::string& name, const std::string& csv) {
    if (out_.empty()) {
      stream_ << "# " << name << '\n' << csv;
      return;
    }
    const auto path = multiple_ ? (std::filesystem::path(out_) / file_name(name)).string() : out_;
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << csv;
  }

 private:
  std::string out_;
  bool multiple_;
  std::ostream& stream_;
};

std::string eigensphere_csv(const EigensphereSet& e) {
  std::ostringstream os;
  os << std::setprecision(12) << "u,s,multiplicity\n";
  for (const auto& s : e.spheres) os << s.point.u << ',' << s.point.s << ',' << s.multiplicity << '\n';
  return os.str();
}

int spectrum_matrix(const SpectrumArgs& args, const QMatrixd& a, std::ostream& out) {
  const auto spheres = right_eigenspheres(matrix_cast<Rational>(a));
  std::vector<std::string> sets = args.sets;
  if (sets.empty()) sets = {"sigma_s", "sigma_e", "ws", "bs", "sigma_0", "pi_0", "iso", "acc"};
  Sink sink(args.out, sets.size() + (args.grid ? 1 : 0), out);
  EigensphereSet none;
  for (const auto& name : sets)
    sink.emit(name, eigensphere_csv(matrix_eigen_set(name) ? spheres : none));
  if (args.grid) {
    std::ostringstream os;
    os << std::setprecision(12) << "u,s,sigma_s\n";
    for (const auto& p : raster(*args.grid))
      os << p.u << ',' << p.s << ','
         << (s_spectrum_membership(a, slice_representative(p)) == SpectralTag::point ? 1 : 0) << '\n';
    sink.emit("grid", os.str());
  }
  return kOk;
}

int spectrum_structured(const SpectrumArgs& args, const StructuredOperator& a, std::ostream& out,
                        std::ostream& err) {
  auto regions = spectrum_regions(a);
  std::vector<std::string> sets = args.sets;
  if (sets.empty())
    for (const auto& [name, r] : regions) sets.push_back(name);

  std::vector<std::string> delegated;
  for (const auto& name : sets)
    if (a.is_perturbed() && !is_perturbation_invariant(name)) delegated.push_back(name);
  if (!delegated.empty() && !args.oracle) {
    err << "error: " << delegated.front()
        << " is UNKNOWN-DELEGATED for a perturbed operator; rerun with --oracle\n";
    return kUnsupported;
  }

  Sink sink(args.out, sets.size() + (args.grid ? 1 : 0), out);
  const SpectralModel model(a);
  std::optional<TruncationOracle> oracle;
  if (!delegated.empty()) oracle.emplace(a);
  std::map<std::pair<double, double>, TruncationReport> reports;
  auto report_at = [&](const HalfPlanePoint& p) -> const TruncationReport& {
    auto key = std::make_pair(p.u, p.s);
    auto it = reports.find(key);
    if (it == reports.end()) it = reports.emplace(key, oracle->evaluate(p)).first;
    return it->second;
  };

  for (const auto& name : sets) {
    std::ostringstream os;
    if (std::find(delegated.begin(), delegated.end(), name) != delegated.end()) {
      os << std::setprecision(12) << "u,s,verdict,estimate,near_boundary\n";
      for (const auto& p : raster(args.grid.value_or(kDefaultGrid))) {
        const auto& r = report_at(p);
        os << p.u << ',' << p.s << ',' << to_string(r.verdict) << ','
           << flag(estimate(classify(a, p), r, name)) << ','
           << (model.boundary_distance(p) < 0.05 ? 1 : 0) << '\n';
      }
    } else {
      const auto it = regions.find(name);
      write_csv(os, it == regions.end() ? RegionSet() : it->second);
    }
    sink.emit(name, os.str());
  }

  if (args.grid) {
    std::ostringstream os;
    os << std::setprecision(12) << "u,s";
    for (const auto& name : sets) os << ',' << name;
    os << ",near_boundary\n";
    for (const auto& p : raster(*args.grid)) {
      const auto c = classify(a, p);
      os << p.u << ',' << p.s;
      for (const auto& name : sets) {
        Verdict v = membership(c, name);
        if (v == Verdict::delegated && oracle) v = estimate(c, report_at(p), name);
        os << ',' << flag(v);
      }
      os << ',' << (model.boundary_distance(p) < 0.05 ? 1 : 0) << '\n';
    }
    sink.emit("grid", os.str());
  }
  return kOk;
}

// Runs body and maps library exceptions to exit codes.
int guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const parse_error& e) {
    err << "parse error: " << e.what() << '\n';
    return kParseError;
  } catch (const malformed_operator& e) {
    err << "parse error: " << e.what() << '\n';
    return kParseError;
  } catch (const numerical_error& e) {
    err << "numerical failure: " << e.what() << " (residual " << e.residual() << ")\n";
    return kNumericalFailure;
  } catch (const std::domain_error& e) {
    err << "unsupported: " << e.what() << '\n';
    return kUnsupported;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kNumericalFailure;
  }
}

std::string matrix_summary(const QMatrixd& a, const HalfPlanePoint& p, std::ostream& details) {
  const QMatrixq aq = matrix_cast<Rational>(a);
  const Rational u(p.u), s(p.s);
  const auto r = pseudo_resolvent(aq, u, Rational(u * u + s * s));
  const std::size_t k = kernel_dim(r);
  const auto ad = asc_dsc(r);
  details << "point: " << p << '\n'
          << "dim ker R_q: " << k << '\n'
          << "asc(R_q): " << ad.ascent << '\n'
          << "dsc(R_q): " << ad.descent << '\n';
  if (k == 0) return "resolvent";
  std::ostringstream os;
  os << "sigma_pS dim " << k << "; Fredholm index 0; sigma_0; pi_0; not Bs; asc(R_q)="
     << ad.ascent << " dsc(R_q)=" << ad.descent;
  return os.str();
}

}  // namespace

HalfPlanePoint parse_point(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw parse_error("point must be given as u,s");
  try {
    std::size_t a = 0, b = 0;
    const double u = std::stod(text.substr(0, comma), &a);
    const double s = std::stod(text.substr(comma + 1), &b);
    if (a != comma || b != text.size() - comma - 1) throw parse_error("point must be given as u,s");
    if (!std::isfinite(u) || !std::isfinite(s)) throw parse_error("point coordinates must be finite");
    if (s < 0.0) throw parse_error("point must satisfy s >= 0");
    return {u, s};
  } catch (const std::invalid_argument&) {
    throw parse_error("point must be given as u,s");
  } catch (const std::out_of_range&) {
    throw parse_error("point coordinate out of range");
  }
}

int cmd_spectrum(const SpectrumArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    for (const auto& name : args.sets)
      if (!is_known_set_name(name)) throw parse_error("unknown set name " + name);
    if (args.grid && *args.grid < 2) throw parse_error("--grid must be at least 2");
    const auto spec = load_operator_spec(args.file);
    if (spec.matrix) return spectrum_matrix(args, *spec.matrix, out);
    return spectrum_structured(args, *spec.structured, out, err);
  });
}

int cmd_classify(const ClassifyArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto p = parse_point(args.point);
    const auto spec = load_operator_spec(args.file);
    if (spec.matrix) {
      std::ostringstream details;
      out << matrix_summary(*spec.matrix, p, details) << '\n' << details.str();
      return static_cast<int>(kOk);
    }
    const auto& a = *spec.structured;
    const auto c = classify(a, p);
    out << c;
    if (args.oracle) {
      const auto r = cross_check(a, p);
      out << "oracle:\n" << r;
      out << "near_boundary: " << (SpectralModel(a).boundary_distance(p) < 0.05 ? "yes" : "no")
          << '\n';
    }
    return static_cast<int>(kOk);
  });
}

int cmd_check(const CheckArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (args.file.empty() == args.corpus.empty())
      throw parse_error("check needs exactly one of a file and --corpus seed,count");
    if (args.inject_fault)
      testing::set_classifier_fault([](SpectralClassification& c) {
        c.weyl = c.weyl == Verdict::yes ? Verdict::no : Verdict::yes;
      });
    struct ClearFault {
      ~ClearFault() { testing::clear_classifier_fault(); }
    } clear;

    CheckReport rep;
    if (!args.file.empty()) {
      const auto spec = load_operator_spec(args.file);
      if (spec.matrix) rep = check_matrix(*spec.matrix, spec.basis);
      else rep = check_structured(*spec.structured);
    } else {
      const auto comma = args.corpus.find(',');
      if (comma == std::string::npos) throw parse_error("--corpus expects seed,count");
      std::uint64_t seed = 0;
      std::size_t count = 0;
      try {
        seed = std::stoull(args.corpus.substr(0, comma));
        count = std::stoull(args.corpus.substr(comma + 1));
      } catch (const std::exception&) {
        throw parse_error("--corpus expects seed,count");
      }
      seed = corpus_seed(seed);
      rep = check_corpus(seed, count);
    }
    write_summary(out, rep);
    if (rep.ok()) return static_cast<int>(kOk);
    out << "violations: " << rep.failures() << '\n';
    write_counterexamples(out, rep);
    if (!args.dump.empty()) {
      std::ofstream f(args.dump);
      f << rep.counterexamples().front().operator_spec << '\n';
    }
    return static_cast<int>(kViolation);
  });
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quaternionic S-spectrum toolkit"};
  app.require_subcommand(1);

  SpectrumArgs sa;
  std::size_t grid = kDefaultGrid;
  auto* spectrum = app.add_subcommand("spectrum", "Regions of the spectral sets as CSV");
  spectrum->add_option("file", sa.file, "Operator spec (JSON)")->required();
  spectrum->add_option("--set", sa.sets, "Set name (repeatable); default all");
  auto* grid_opt = spectrum->add_option("--grid", grid, "Raster columns over [-3,3]x[0,3]")
                       ->expected(0, 1)
                       ->default_str(std::to_string(kDefaultGrid));
  spectrum->add_option("--out", sa.out, "Output CSV file, or directory for several outputs");
  spectrum->add_flag("--oracle", sa.oracle, "Estimate delegated sets with the truncation oracle");

  ClassifyArgs ca;
  auto* classify_cmd = app.add_subcommand("classify", "Classify one sphere");
  classify_cmd->add_option("file", ca.file, "Operator spec (JSON)")->required();
  classify_cmd->add_option("--point", ca.point, "u,s with s >= 0")->required();
  classify_cmd->add_flag("--oracle", ca.oracle, "Cross-check with the truncation oracle");

  CheckArgs ka;
  auto* check = app.add_subcommand("check", "Run the invariant suites");
  check->add_option("file", ka.file, "Operator spec (JSON)");
  check->add_option("--corpus", ka.corpus, "seed,count of a random corpus");
  check->add_option("--dump", ka.dump, "Write the first counterexample spec here");
  check->add_flag("--inject-fault", ka.inject_fault)->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kParseError;
  }

  if (spectrum->parsed()) {
    if (grid_opt->count() > 0) sa.grid = grid;
    return cmd_spectrum(sa, out, err);
  }
  if (classify_cmd->parsed()) return cmd_classify(ca, out, err);
  return cmd_check(ka, out, err);
}

}  // namespace qspectral::cli
