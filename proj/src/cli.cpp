#include "ptmat/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <iostream>
#include <limits>
#include <optional>
#include <regex>
#include <sstream>
#include <thread>

#include "ptmat/analytic.hpp"
#include "ptmat/construction.hpp"
#include "ptmat/dynamics.hpp"
#include "ptmat/errors.hpp"
#include "ptmat/serialization.hpp"
#include "ptmat/spectral.hpp"
#include "ptmat/symmetry_algebra.hpp"

namespace ptmat::cli {

namespace {

using io::format_double;
using io::Json;

/// Exit with a specific code after printing `message`.
struct ExitRequest {
  int code;
  std::string message;
};

Signature parse_signature(const std::string& text) {
  const std::regex pattern(R"(\s*(\d+)\s*,\s*(\d+)\s*)");
  std::smatch m;
  if (!std::regex_match(text, m, pattern)) {
    throw InvalidArgument("--signature must look like m_plus,m_minus (got \"" + text + "\")");
  }
  return {std::stoul(m[1].str()), std::stoul(m[2].str())};
}

struct Range {
  double lo = 0.0;
  double hi = 0.0;
  double step = 0.0;
};

Range parse_range(const std::string& text) {
  std::stringstream ss(text);
  std::string part;
  std::vector<double> values;
  while (std::getline(ss, part, ',')) {
    try {
      std::size_t used = 0;
      values.push_back(std::stod(part, &used));
      if (part.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(part);
    } catch (const std::exception&) {
      throw InvalidArgument("--range must be lo,hi,step (bad value \"" + part + "\")");
    }
  }
  if (values.size() != 3) throw InvalidArgument("--range must be lo,hi,step");
  Range r{values[0], values[1], values[2]};
  if (!std::isfinite(r.lo) || !std::isfinite(r.hi) || !std::isfinite(r.step) || r.step <= 0.0 ||
      r.hi < r.lo) {
    throw InvalidArgument("--range is empty: need finite lo <= hi and step > 0");
  }
  return r;
}

// Half-open grid lo, lo + step, ... < hi.
std::vector<double> grid_points(const Range& r) {
  const double span = (r.hi - r.lo) / r.step;
  const auto count = static_cast<std::size_t>(std::max(0.0, std::ceil(span - 1e-9)));
  std::vector<double> pts(count);
  for (std::size_t k = 0; k < count; ++k) pts[k] = r.lo + static_cast<double>(k) * r.step;
  return pts;
}

void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
  } else {
    io::write_text_file(path, text);
  }
}

std::string counts_line(std::size_t d) {
  const ParameterCounts c = parameter_table(d);
  std::ostringstream s;
  s << "parameter counts (D=" << d << "): parity_max=" << c.parity_max << " h0=" << c.h0
    << " pt=" << c.pt << " hermitian=" << c.hermitian << " real_symmetric=" << c.real_symmetric;
  return s.str();
}

// generate ----------------------------------------------------------------

struct GenerateOptions {
  std::size_t dim = 0;
  std::string signature;
  std::uint64_t seed = 0;
  double tol = kDefaultTol;
  double coupling = 1.0;
  bool unbroken = false;
  std::size_t max_attempts = 100000;
  std::string out = "-";
};

int cmd_generate(const GenerateOptions& o, std::ostream& out, std::ostream& err) {
  if (o.dim == 0) throw InvalidArgument("--dim must be at least 1");
  const Signature sig = o.signature.empty() ? maximal_signature(o.dim) : parse_signature(o.signature);
  if (sig.dim() != o.dim) {
    throw InvalidArgument("--signature " + std::to_string(sig.plus) + "," + std::to_string(sig.minus) +
                          " does not sum to --dim " + std::to_string(o.dim));
  }
  if (!(o.coupling >= 0.0) || !std::isfinite(o.coupling)) throw InvalidArgument("--coupling must be >= 0");

  std::uint64_t seed = o.seed;
  std::optional<PTSystem> sys;
  for (std::size_t attempt = 0;; ++attempt, ++seed) {
    sys.emplace(random_pt_system(sig, seed, o.coupling));
    if (!o.unbroken || classify_phase(*sys, o.tol).phase == Phase::Unbroken) break;
    if (attempt + 1 >= o.max_attempts) {
      throw NumericalError("no unbroken system found in " + std::to_string(o.max_attempts) + " seeds");
    }
  }

  std::ostream& info = (o.out.empty() || o.out == "-") ? err : out;
  emit(o.out, io::dump(io::to_json(*sys)), out);
  info << "dimension: " << o.dim << "\n"
       << "signature: " << sig.plus << "," << sig.minus << "\n"
       << "seed: " << seed << "\n"
       << "parity params: " << count_parity_params(o.dim, sig.plus, sig.minus) << "\n"
       << "hamiltonian params: " << o.dim * (o.dim + 1) / 2 + count_parity_params(o.dim, sig.plus, sig.minus)
       << "\n"
       << counts_line(o.dim) << "\n";
  return kSuccess;
}

// analyze -----------------------------------------------------------------

struct AnalyzeOptions {
  std::string input;
  double tol = kDefaultTol;
  std::string out = "-";
};

int cmd_analyze(const AnalyzeOptions& o, std::ostream& out, std::ostream& /*err*/) {
  const PTSystem sys = io::pt_system_from_json(io::read_json_file(o.input), o.tol);
  const SpectralData data = classify_phase(sys, o.tol);

  Json report;
  report["dim"] = sys.dim();
  const Signature sig = sys.signature();
  report["signature"] = Json::array({sig.plus, sig.minus});
  const Json spectrum = io::to_json(data);
  for (auto it = spectrum.begin(); it != spectrum.end(); ++it) report[it.key()] = it.value();

  Json inv;
  inv["h_symmetry"] = max_abs(sys.h() - sys.h().transpose());
  inv["pt_commutation"] = max_abs(pt_commutation_residual(sys.h(), sys.p(), TimeReversal::Conjugation));
  inv["parity_involution"] = max_abs(mat_mul(sys.p(), sys.p()) - ComplexMatrix::identity(sys.dim()));
  if (data.phase == Phase::Unbroken) {
    const COperator c = build_c_operator(sys, o.tol);
    const ComplexMatrix& cm = c.matrix;
    report["c_operator"] = io::to_json(cm);
    inv["c_squared"] = norm_inf(mat_mul(cm, cm) - ComplexMatrix::identity(sys.dim()));
    inv["c_commutes_h"] = norm_inf(commutator(cm, sys.h()));
    inv["c_commutes_pt"] = norm_inf(mat_mul(mat_mul(sys.p(), cm.conj()), sys.p()) - cm);
    inv["c_symmetry"] = max_abs(cm - cm.transpose());
  } else {
    report["c_operator"] = nullptr;
  }
  report["invariants"] = std::move(inv);
  report["classes"] = classify_matrix(sys.h(), sys.p(), o.tol).names();
  report["h"] = io::to_json(sys.h());
  report["p"] = io::to_json(sys.p());
  emit(o.out, io::dump(report), out);
  return kSuccess;
}

// counts ------------------------------------------------------------------

struct CountsOptions {
  std::size_t max_dim = 6;
  bool csv = false;
  std::string out;
};

std::string counts_csv(std::size_t max_dim) {
  std::ostringstream s;
  s << "D,parity_max,h0,pt,hermitian,real_symmetric\n";
  for (std::size_t d = 1; d <= max_dim; ++d) {
    const ParameterCounts c = parameter_table(d);
    s << d << ',' << c.parity_max << ',' << c.h0 << ',' << c.pt << ',' << c.hermitian << ','
      << c.real_symmetric << '\n';
  }
  return s.str();
}

std::string counts_text(std::size_t max_dim) {
  std::ostringstream s;
  s << std::left << std::setw(16) << "class";
  for (std::size_t d = 1; d <= max_dim; ++d) s << std::right << std::setw(6) << ("D=" + std::to_string(d));
  s << '\n';
  const std::pair<const char*, std::size_t ParameterCounts::*> rows[] = {
      {"parity_max", &ParameterCounts::parity_max}, {"h0", &ParameterCounts::h0},
      {"pt", &ParameterCounts::pt},                 {"hermitian", &ParameterCounts::hermitian},
      {"real_symmetric", &ParameterCounts::real_symmetric}};
  for (const auto& [name, field] : rows) {
    s << std::left << std::setw(16) << name;
    for (std::size_t d = 1; d <= max_dim; ++d) s << std::right << std::setw(6) << parameter_table(d).*field;
    s << '\n';
  }
  return s.str();
}

int cmd_counts(const CountsOptions& o, std::ostream& out) {
  if (o.max_dim == 0) throw InvalidArgument("--max-dim must be at least 1");
  if (o.csv) {
    out << counts_csv(o.max_dim);
  } else {
    out << counts_text(o.max_dim);
  }
  if (!o.out.empty()) io::write_text_file(o.out, counts_csv(o.max_dim));
  return kSuccess;
}

// sweep -------------------------------------------------------------------

struct SweepOptions {
  std::string input;
  analytic::TwoByTwoParams params{0.0, 0.0, 1.0, 0.0};
  std::string param;
  std::string range;
  double tol = kDefaultTol;
  std::size_t threads = 0;
  std::string out = "-";
};

// Produces the system at one grid value.
using SystemAt = std::function<PTSystem(double)>;

SystemAt two_by_two_family(const analytic::TwoByTwoParams& base, const std::string& name) {
  double analytic::TwoByTwoParams::*field = nullptr;
  if (name == "r") field = &analytic::TwoByTwoParams::r;
  if (name == "s") field = &analytic::TwoByTwoParams::s;
  if (name == "t") field = &analytic::TwoByTwoParams::t;
  if (name == "phi") field = &analytic::TwoByTwoParams::phi;
  if (field == nullptr) throw InvalidArgument("--param for the 2x2 family must be one of r, s, t, phi");
  return [base, field](double value) {
    analytic::TwoByTwoParams p = base;
    p.*field = value;
    return PTSystem(analytic::h2(p), analytic::p2(p.phi));
  };
}

SystemAt block_family(const PTSystem& base, const std::string& name) {
  const Provenance& prov = base.provenance();
  if (!prov.parity || !prov.blocks) {
    throw InvalidArgument("sweeping a file requires provenance with parity and blocks");
  }
  const std::regex entry(R"(([ABC])\[(\d+),(\d+)\])");
  const std::regex angle(R"(angle\[(\d+)\])");
  std::smatch m;
  const BlockForm blocks = *prov.blocks;
  const ParitySpec spec = *prov.parity;
  if (std::regex_match(name, m, entry)) {
    const char which = m[1].str()[0];
    const std::size_t i = std::stoul(m[2].str());
    const std::size_t j = std::stoul(m[3].str());
    const RealMatrix& target = which == 'A' ? blocks.a : which == 'B' ? blocks.b : blocks.c;
    if (i >= target.rows() || j >= target.cols()) throw InvalidArgument("--param index out of range");
    return [blocks, spec, which, i, j](double value) {
      BlockForm b = blocks;
      RealMatrix& t = which == 'A' ? b.a : which == 'B' ? b.b : b.c;
      t(i, j) = value;
      if (which != 'B') t(j, i) = value;
      return make_pt_system(b, spec);
    };
  }
  if (std::regex_match(name, m, angle)) {
    const std::size_t k = std::stoul(m[1].str());
    if (k >= spec.angles.size()) throw InvalidArgument("--param angle index out of range");
    return [blocks, spec, k](double value) {
      ParitySpec s = spec;
      s.angles[k] = value;
      return make_pt_system(blocks, s);
    };
  }
  throw InvalidArgument("--param for a system file must be A[i,j], B[i,j], C[i,j] or angle[k]");
}

struct SweepRow {
  std::string text;
  std::string error;
};

SweepRow sweep_row(const SystemAt& family, double value, std::size_t dim, double tol) {
  try {
    const PTSystem sys = family(value);
    const SpectralData data = classify_phase(sys, tol);
    std::ostringstream s;
    s << format_double(value);
    double gap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < data.pairs.size(); ++i) {
      s << ',' << format_double(data.pairs[i].value.real()) << ',' << format_double(data.pairs[i].value.imag());
      for (std::size_t j = i + 1; j < data.pairs.size(); ++j)
        gap = std::min(gap, std::abs(data.pairs[i].value - data.pairs[j].value));
    }
    if (data.pairs.size() != dim) throw NumericalError("dimension changed during sweep");
    s << ',' << to_string(data.phase) << ',' << (std::isfinite(gap) ? format_double(gap) : "") << '\n';
    return {s.str(), {}};
  } catch (const Error& e) {
    return {{}, "at value " + format_double(value) + ": " + e.what()};
  }
}

int cmd_sweep(const SweepOptions& o, std::ostream& out, std::ostream& err) {
  const Range range = parse_range(o.range);
  SystemAt family;
  std::size_t dim = 2;
  if (o.input.empty()) {
    family = two_by_two_family(o.params, o.param);
  } else {
    const PTSystem base = io::pt_system_from_json(io::read_json_file(o.input), o.tol);
    dim = base.dim();
    family = block_family(base, o.param);
  }

  const std::vector<double> pts = grid_points(range);
  std::vector<SweepRow> rows(pts.size());
  std::size_t workers = o.threads != 0 ? o.threads : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<std::size_t>(workers, std::max<std::size_t>(pts.size(), 1));
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t k = w; k < pts.size(); k += workers) rows[k] = sweep_row(family, pts[k], dim, o.tol);
      });
    }
  }

  std::ostringstream csv;
  csv << "value";
  for (std::size_t i = 0; i < dim; ++i) csv << ",re_" << i << ",im_" << i;
  csv << ",phase,min_gap\n";
  for (const auto& row : rows) {
    if (!row.error.empty()) {
      err << "sweep failed " << row.error << "\n";
      return kNumericalFailure;
    }
    csv << row.text;
  }
  emit(o.out, csv.str(), out);
  return kSuccess;
}

// evolve ------------------------------------------------------------------

struct EvolveOptions {
  std::string input;
  std::string state = "random";
  std::string state_b;
  double t_max = 10.0;
  std::size_t steps = 101;
  std::uint64_t seed = 0;
  double tol = kDefaultTol;
  std::string inner = "cpt";
  std::string out = "-";
};

ComplexVector resolve_state(const std::string& spec, const std::vector<ComplexVector>& eigvecs,
                            std::size_t dim, Rng& rng) {
  const std::regex eigen(R"(eigen:(\d+))");
  const std::regex basis(R"(basis:(\d+))");
  std::smatch m;
  if (spec == "random") {
    ComplexVector v(dim);
    for (auto& z : v) z = Complex(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
    return scaled(v, 1.0 / norm2(v));
  }
  if (std::regex_match(spec, m, eigen)) {
    const std::size_t n = std::stoul(m[1].str());
    if (n >= eigvecs.size()) throw InvalidArgument("state " + spec + ": no such eigenvector");
    return eigvecs[n];
  }
  if (std::regex_match(spec, m, basis)) {
    const std::size_t k = std::stoul(m[1].str());
    if (k >= dim) throw InvalidArgument("state " + spec + ": index out of range");
    ComplexVector v(dim);
    v[k] = 1.0;
    return v;
  }
  throw InvalidArgument("state must be random, eigen:<n> or basis:<k> (got \"" + spec + "\")");
}

int finish_trace(const EvolutionTrace& trace, const EvolveOptions& o, std::ostream& out,
                 std::ostream& err, const char* label) {
  std::ostringstream csv;
  io::write_trace_csv(csv, trace);
  emit(o.out, csv.str(), out);
  err << label << " max_drift: " << format_double(trace.max_drift) << "\n";
  if (trace.max_drift > kUnitarityDriftLimit) {
    err << "unitarity violation: inner product drifts by more than " << kUnitarityDriftLimit << "\n";
    return kUnitarityViolation;
  }
  return kSuccess;
}

int cmd_evolve(const EvolveOptions& o, std::ostream& out, std::ostream& err) {
  if (o.inner != "cpt" && o.inner != "pt") throw InvalidArgument("--inner must be cpt or pt");
  const io::SystemRecord rec = io::system_record_from_json(io::read_json_file(o.input));
  if (!rec.h.is_symmetric(1e-12 * std::max(1.0, max_abs(rec.h)))) {
    const EvolutionTrace trace = nonunitarity_demo(rec.h, rec.p, o.t_max, o.steps, o.seed, o.tol);
    err << "asymmetric Hamiltonian: sampling the weight-matrix inner product\n";
    return finish_trace(trace, o, out, err, "weight-matrix");
  }

  const PTSystem sys(rec.h, rec.p, rec.provenance, o.tol);
  const SpectralData data = classify_phase(sys, o.tol);
  if (data.phase != Phase::Unbroken) {
    err << "evolve requires unbroken PT symmetry; system is " << to_string(data.phase) << "\n";
    return kNumericalFailure;
  }
  std::vector<ComplexVector> eigvecs;
  for (const auto& pair : data.pairs) eigvecs.push_back(pt_normalize(pair.vector, sys.p(), o.tol));

  Rng rng(o.seed);
  const ComplexVector a = resolve_state(o.state, eigvecs, sys.dim(), rng);
  const ComplexVector b = resolve_state(o.state_b.empty() ? o.state : o.state_b, eigvecs, sys.dim(), rng);
  const COperator c = build_c_operator(sys, o.tol);
  const InnerProductKind kind = o.inner == "pt" ? InnerProductKind::PT : InnerProductKind::CPT;
  const EvolutionTrace trace = unitarity_trace(sys, c, a, b, o.t_max, o.steps, kind, o.tol);
  return finish_trace(trace, o, out, err, kind == InnerProductKind::PT ? "PT" : "CPT");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite-dimensional PT-symmetric Hamiltonians: construction, spectra, C operator"};
  app.require_subcommand(1);

  GenerateOptions gen;
  auto* gen_cmd = app.add_subcommand("generate", "Generate a seeded random PT-symmetric system (JSON)");
  gen_cmd->add_option("--dim", gen.dim, "Matrix dimension D")->required();
  gen_cmd->add_option("--signature", gen.signature, "Parity signature m_plus,m_minus (default: maximal)");
  gen_cmd->add_option("--seed", gen.seed, "64-bit generator seed");
  gen_cmd->add_option("--tol", gen.tol, "Numerical tolerance");
  gen_cmd->add_option("--coupling", gen.coupling, "Scale of the B block (default 1)");
  gen_cmd->add_flag("--unbroken", gen.unbroken, "Advance the seed until the system is unbroken");
  gen_cmd->add_option("--max-attempts", gen.max_attempts, "Seed budget for --unbroken");
  gen_cmd->add_option("--out", gen.out, "Output path ('-' for stdout)");

  AnalyzeOptions ana;
  auto* ana_cmd = app.add_subcommand("analyze", "Spectrum, phase, PT norms and C operator of a system");
  ana_cmd->add_option("input", ana.input, "PTSystem JSON file")->required();
  ana_cmd->add_option("--tol", ana.tol, "Numerical tolerance");
  ana_cmd->add_option("--out", ana.out, "Report path ('-' for stdout)");

  CountsOptions cnt;
  auto* cnt_cmd = app.add_subcommand("counts", "Free-parameter counts for D = 1..max-dim");
  cnt_cmd->add_option("max_dim", cnt.max_dim, "Largest dimension (default 6)");
  cnt_cmd->add_option("--max-dim", cnt.max_dim, "Largest dimension (default 6)");
  cnt_cmd->add_flag("--csv", cnt.csv, "Print CSV instead of the text table");
  cnt_cmd->add_option("--out", cnt.out, "Also write the CSV to this path");

  SweepOptions swp;
  auto* swp_cmd = app.add_subcommand("sweep", "Phase and spectrum along a one-parameter family (CSV)");
  swp_cmd->add_option("--in", swp.input, "PTSystem JSON to perturb (default: the 2x2 family)");
  swp_cmd->add_option("--r", swp.params.r, "2x2 family: r");
  swp_cmd->add_option("--s", swp.params.s, "2x2 family: s");
  swp_cmd->add_option("--t", swp.params.t, "2x2 family: t");
  swp_cmd->add_option("--phi", swp.params.phi, "2x2 family: phi");
  swp_cmd->add_option("--param", swp.param, "r|s|t|phi, or A[i,j]|B[i,j]|C[i,j]|angle[k] with --in")
      ->required();
  swp_cmd->add_option("--range", swp.range, "lo,hi,step (half-open [lo, hi))")->required();
  swp_cmd->add_option("--tol", swp.tol, "Numerical tolerance");
  swp_cmd->add_option("--threads", swp.threads, "Worker threads (default: hardware)");
  swp_cmd->add_option("--out", swp.out, "CSV path ('-' for stdout)");

  EvolveOptions evo;
  auto* evo_cmd = app.add_subcommand("evolve", "Time evolution and inner-product drift (CSV)");
  evo_cmd->add_option("input", evo.input, "System JSON file")->required();
  evo_cmd->add_option("--state", evo.state, "random | eigen:<n> | basis:<k>");
  evo_cmd->add_option("--state-b", evo.state_b, "Second state (default: same spec as --state)");
  evo_cmd->add_option("--t-max", evo.t_max, "Final time (default 10)");
  evo_cmd->add_option("--steps", evo.steps, "Number of samples (default 101)");
  evo_cmd->add_option("--seed", evo.seed, "Seed for random states");
  evo_cmd->add_option("--tol", evo.tol, "Numerical tolerance");
  evo_cmd->add_option("--inner", evo.inner, "cpt (default) or pt");
  evo_cmd->add_option("--out", evo.out, "CSV path ('-' for stdout)");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsageError;
  }

  try {
    if (gen_cmd->parsed()) return cmd_generate(gen, out, err);
    if (ana_cmd->parsed()) return cmd_analyze(ana, out, err);
    if (cnt_cmd->parsed()) return cmd_counts(cnt, out);
    if (swp_cmd->parsed()) return cmd_sweep(swp, out, err);
    if (evo_cmd->parsed()) return cmd_evolve(evo, out, err);
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kNumericalFailure;
  }
  return kUsageError;
}

}  // namespace ptmat::cli
