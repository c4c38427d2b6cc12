#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "mmspectra/harmonics.hpp"
#include "mmspectra/inference.hpp"
#include "mmspectra/io.hpp"
#include "mmspectra/parallel.hpp"
#include "mmspectra/signatures.hpp"
#include "mmspectra/spectrum.hpp"
#include "mmspectra/ssl.hpp"
#include "svg.hpp"

namespace mmspectra::cli {

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

constexpr const char* kVersion = "0.1.0";

struct Common {
  std::string out = "mmspectra_out";
  std::size_t threads = 0;
  std::string mass = "uniform";
  bool no_plot = false;
};

// Output directory, manifest and the list of files written by a run.
class Run {
 public:
  Run(std::string command, const Common& common) : command_(std::move(command)), common_(common) {
    config_["out"] = common.out;
    config_["threads"] = common.threads;
    config_["resolved_threads"] = common.threads ? common.threads : default_threads();
    config_["mass"] = common.mass;
    config_["plots"] = !common.no_plot;
  }

  json& config() { return config_; }
  json& results() { return results_; }
  bool plots() const { return !common_.no_plot; }

  void write(const std::string& name, const std::string& text) {
    io::write_file(fs::path(common_.out) / name, text);
    outputs_.push_back(name);
  }

  void finish(int exit_code, const std::string& error) {
    json m;
    m["tool"] = "mmspectra";
    m["version"] = kVersion;
    m["command"] = command_;
    m["config"] = config_;
    m["outputs"] = outputs_;
    m["status"] = exit_code == kOk ? "ok" : "error";
    m["exit_code"] = exit_code;
    if (!error.empty()) m["error"] = error;
    if (!results_.is_null()) m["results"] = results_;
    try {
      io::write_file(fs::path(common_.out) / "manifest.json", m.dump(2) + "\n");
    } catch (const std::exception&) {
      // An unwritable --out directory is already reported by the failing step.
    }
  }

 private:
  std::string command_;
  Common common_;
  json config_;
  json results_;
  std::vector<std::string> outputs_;
};

MassPolicy mass_policy(const Common& c) {
  if (c.mass == "degree") return MassPolicy::degree_proportional();
  return MassPolicy::uniform();
}

json vec_json(const Vector& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

// Files named on the command line, with directories expanded. The group of a
// space is the name of the directory it was found in.
struct SpaceSet {
  std::vector<fs::path> paths;
  std::vector<MmSpace> spaces;
  std::vector<int> group;
  std::vector<std::string> group_names;
};

SpaceSet load_spaces(const std::vector<std::string>& inputs, const MassPolicy& policy) {
  SpaceSet set;
  std::map<std::string, int> ids;
  auto add = [&](const fs::path& p, const std::string& g) {
    auto [it, fresh] = ids.emplace(g, static_cast<int>(ids.size()));
    if (fresh) set.group_names.push_back(g);
    set.paths.push_back(p);
    set.spaces.push_back(io::load_space(p, policy));
    set.group.push_back(it->second);
  };
  for (const auto& in : inputs) {
    const fs::path p(in);
    if (fs::is_directory(p)) {
      const auto files = io::list_space_files(p);
      if (files.empty()) throw InputError(p.string() + " contains no mm-space files");
      const std::string g = p.filename().empty() ? p.parent_path().filename().string() : p.filename().string();
      for (const auto& f : files) add(f, g);
    } else {
      add(p, p.parent_path().filename().string());
    }
  }
  return set;
}

std::vector<SpectralCurve> sweep_all(const std::vector<MmSpace>& spaces, std::size_t threads) {
  std::vector<SpectralCurve> curves;
  curves.reserve(spaces.size());
  for (const auto& s : spaces) curves.push_back(sweep(s, SweepOptions{false, threads}));
  return curves;
}

std::size_t resolve_k_prime(std::size_t requested, const std::vector<SpectralCurve>& curves) {
  const std::size_t common = common_k_prime(curves);
  if (requested == 0) return common;
  if (requested > common) {
    throw InputError("--kprime " + std::to_string(requested) + " exceeds the smallest node count " +
                     std::to_string(common));
  }
  return requested;
}

// Eigenvalue indices (1-based) shown in a sweep plot: all of 2..K when few,
// otherwise up to ten spread evenly.
std::vector<std::size_t> plotted_indices(std::size_t k) {
  std::vector<std::size_t> out;
  if (k < 2) return out;
  const std::size_t count = std::min<std::size_t>(k - 1, 10);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t idx = 2 + (count == 1 ? 0 : i * (k - 2) / (count - 1));
    if (out.empty() || out.back() != idx) out.push_back(idx);
  }
  return out;
}

std::string curve_svg(const SpectralCurve& curve, const std::string& title) {
  const auto& bp = curve.breakpoints;
  const double end = bp.empty() ? 1.0 : bp.back() * 1.1 + (bp.back() == 0.0 ? 1.0 : 0.0);
  std::vector<double> x{0.0};
  x.insert(x.end(), bp.begin(), bp.end());
  x.push_back(end);
  std::vector<svg::Series> series;
  for (std::size_t idx : plotted_indices(curve.node_count())) {
    svg::Series s;
    s.label = "lambda_" + std::to_string(idx);
    s.steps = true;
    s.x = x;
    for (const auto& spec : curve.spectra) s.y.push_back(spec.values(static_cast<Eigen::Index>(idx - 1)));
    s.y.push_back(s.y.back());
    series.push_back(std::move(s));
  }
  return svg::line_plot(series, {title, "rho", "eigenvalue"});
}

// ---------------------------------------------------------------------------

struct SpectrumArgs {
  std::string input;
  std::optional<double> rho;
  bool sweep = false;
};

void cmd_spectrum(const SpectrumArgs& a, Run& run, const Common& c, std::ostream& out) {
  run.config()["input"] = a.input;
  const MmSpace space = io::load_space(a.input, mass_policy(c));
  if (a.sweep) {
    run.config()["mode"] = "sweep";
    const SpectralCurve curve = sweep(space, SweepOptions{false, c.threads});
    run.write("curve.json", io::curve_to_json(curve));
    run.write("curve.csv", io::curve_to_csv(curve));
    if (run.plots()) run.write("curve.svg", curve_svg(curve, fs::path(a.input).filename().string()));
    run.results()["nodes"] = space.size();
    run.results()["intervals"] = curve.interval_count();
    out << "nodes " << space.size() << ", intervals " << curve.interval_count() << "\n";
    return;
  }
  run.config()["mode"] = "single";
  run.config()["rho"] = *a.rho;
  const Spectrum spec = eig(laplacian(space, *a.rho), false);
  const std::string row = io::spectrum_to_csv_row(spec);
  run.write("spectrum.csv", row);
  run.write("spectrum.json", io::spectrum_to_json(spec, *a.rho));
  run.results()["eigenvalues"] = vec_json(spec.values);
  out << row;
}

struct DistanceArgs {
  std::vector<std::string> inputs;
  std::size_t grid = kDefaultGridSize;
  std::size_t k_prime = 0;
  std::size_t dims = 2;
  bool exact_sup = false;
};

void cmd_distance(const DistanceArgs& a, Run& run, const Common& c, std::ostream& out) {
  run.config()["inputs"] = a.inputs;
  run.config()["grid"] = a.grid;
  run.config()["dims"] = a.dims;
  run.config()["exact_sup"] = a.exact_sup;
  const SpaceSet set = load_spaces(a.inputs, mass_policy(c));
  if (set.spaces.size() < 2) throw InputError("distance needs at least two mm-spaces");
  const auto curves = sweep_all(set.spaces, c.threads);
  const std::size_t kp = resolve_k_prime(a.k_prime, curves);
  run.config()["k_prime"] = kp;

  QuantileGrid grid;
  if (a.exact_sup) {
    std::vector<const SpectralCurve*> ptrs;
    for (const auto& cv : curves) ptrs.push_back(&cv);
    grid = breakpoint_grid(ptrs);
  } else {
    grid = build_grid(set.spaces, a.grid);
  }
  const auto d = pairwise_distances(curves, grid, kp, c.threads);

  std::vector<std::string> names;
  for (const auto& p : set.paths) names.push_back(p.stem().string());
  std::ostringstream dist_csv;
  dist_csv << "name";
  for (const auto& n : names) dist_csv << ',' << n;
  dist_csv << '\n';
  for (std::size_t i = 0; i < names.size(); ++i) {
    dist_csv << names[i];
    for (std::size_t j = 0; j < names.size(); ++j) {
      dist_csv << ',' << io::format_csv_double(d.distances(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
    }
    dist_csv << '\n';
  }
  run.write("distances.csv", dist_csv.str());

  const auto mds = classical_mds(d, a.dims);
  std::ostringstream mds_csv;
  mds_csv << "name,group";
  for (std::size_t k = 0; k < a.dims; ++k) mds_csv << ",x" << k + 1;
  mds_csv << '\n';
  for (std::size_t i = 0; i < names.size(); ++i) {
    mds_csv << names[i] << ',' << set.group_names[static_cast<std::size_t>(set.group[i])];
    for (std::size_t k = 0; k < a.dims; ++k) {
      mds_csv << ',' << io::format_csv_double(mds.coordinates(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)));
    }
    mds_csv << '\n';
  }
  run.write("mds.csv", mds_csv.str());

  if (run.plots()) {
    std::vector<double> x, y;
    for (Eigen::Index i = 0; i < mds.coordinates.rows(); ++i) {
      x.push_back(mds.coordinates(i, 0));
      y.push_back(mds.coordinates.cols() > 1 ? mds.coordinates(i, 1) : 0.0);
    }
    run.write("mds.svg", svg::scatter(x, y, set.group, set.group_names, {"Spectral distance MDS", "MDS 1", "MDS 2"}));
  }

  run.results()["spaces"] = names.size();
  run.results()["grid_points"] = grid.size();
  run.results()["mds_warnings"] = mds.warnings;
  if (set.group_names.size() >= 2) {
    run.results()["silhouette"] = silhouette(mds.coordinates, set.group);
  }
  out << "spaces " << names.size() << ", k' " << kp << ", grid " << grid.size() << "\n";
  for (const auto& w : mds.warnings) out << "warning: " << w << "\n";
}

struct TestArgs {
  std::string sample_a;
  std::string sample_b;
  std::size_t replicates = 500;
  std::uint64_t seed = 0;
  double level = 0.95;
  std::size_t grid = kDefaultGridSize;
  std::size_t k_prime = 0;
  bool raw = false;
  bool plus_one = false;
};

void cmd_test(const TestArgs& a, Run& run, const Common& c, std::ostream& out) {
  run.config()["sample_a"] = a.sample_a;
  run.config()["sample_b"] = a.sample_b;
  run.config()["B"] = a.replicates;
  run.config()["seed"] = a.seed;
  run.config()["level"] = a.level;
  run.config()["grid"] = a.grid;
  run.config()["raw_statistic"] = a.raw;
  run.config()["plus_one"] = a.plus_one;
  if (!(a.level > 0.0 && a.level < 1.0)) throw InputError("--level must lie in (0, 1)");
  for (const auto& dir : {a.sample_a, a.sample_b}) {
    if (!fs::is_directory(dir)) throw InputError(dir + " is not a directory");
  }
  const SpaceSet sa = load_spaces({a.sample_a}, mass_policy(c));
  const SpaceSet sb = load_spaces({a.sample_b}, mass_policy(c));
  const auto ca = sweep_all(sa.spaces, c.threads);
  const auto cb = sweep_all(sb.spaces, c.threads);
  std::vector<SpectralCurve> all = ca;
  all.insert(all.end(), cb.begin(), cb.end());
  const std::size_t kp = resolve_k_prime(a.k_prime, all);
  run.config()["k_prime"] = kp;
  std::vector<MmSpace> pooled = sa.spaces;
  pooled.insert(pooled.end(), sb.spaces.begin(), sb.spaces.end());
  const QuantileGrid grid = build_grid(pooled, a.grid);

  BootstrapOptions o;
  o.replicates = a.replicates;
  o.seed = a.seed;
  o.scaling = a.raw ? Scaling::kRaw : Scaling::kCalibrated;
  o.plus_one = a.plus_one;
  o.threads = c.threads;
  const TestResult r = bootstrap_test(make_sample(ca, grid, kp), make_sample(cb, grid, kp), o);

  json report;
  report["statistic"] = r.statistic;
  report["compared_statistic"] = r.compared_statistic;
  report["p_value"] = r.p_value;
  report["B"] = r.replicates;
  report["seed"] = r.seed;
  report["scaling_mode"] = to_string(r.scaling);
  report["plus_one"] = r.plus_one;
  report["n"] = ca.size();
  report["m"] = cb.size();
  report["alpha"] = 1.0 - a.level;
  report["reject"] = r.p_value < 1.0 - a.level;
  report["warnings"] = r.warnings;
  run.write("test_report.json", report.dump(2) + "\n");
  std::ostringstream theta;
  theta << "replicate,theta\n";
  for (std::size_t b = 0; b < r.theta.size(); ++b) theta << b << ',' << io::format_double(r.theta[b]) << '\n';
  run.write("theta.csv", theta.str());
  run.results() = report;
  out << "T " << io::format_csv_double(r.statistic) << ", p " << io::format_csv_double(r.p_value)
      << (report["reject"].get<bool>() ? ", reject" : ", do not reject") << " at alpha "
      << io::format_csv_double(1.0 - a.level) << "\n";
}

struct HarmonicsArgs {
  std::string input;
  std::string rho = "auto";
  double q = kDefaultSignRegionFraction;
  std::string coords;
};

double parse_rho(const std::string& text, const MmSpace& space, json& config) {
  if (text == "auto") {
    const double r = auto_rho(space);
    config["rho_mode"] = "auto";
    config["min_connected_rho"] = min_connected_rho(space);
    return r;
  }
  config["rho_mode"] = "value";
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || !(v > 0.0)) {
    throw InputError("--rho must be \"auto\" or a positive number, got \"" + text + "\"");
  }
  return v;
}

void cmd_harmonics(const HarmonicsArgs& a, Run& run, const Common& c, std::ostream& out) {
  run.config()["input"] = a.input;
  run.config()["q"] = a.q;
  const MmSpace space = io::load_space(a.input, mass_policy(c));
  const double rho = parse_rho(a.rho, space, run.config());
  run.config()["rho"] = rho;
  const HarmonicReport r = fiedler(space, rho, a.q);

  json report;
  report["rho"] = rho;
  report["fiedler_value"] = r.fiedler_value;
  report["vector"] = vec_json(r.fiedler_vector);
  report["split"] = {{"positive", r.positive_side}, {"negative", r.negative_side}};
  report["sign_region"] = r.sign_region;
  report["requested_region_size"] = r.requested_region_size;
  report["multiplicity"] = r.multiplicity;
  report["canonical"] = r.canonical;
  run.write("harmonics.json", report.dump(2) + "\n");
  run.results() = {{"fiedler_value", r.fiedler_value}, {"canonical", r.canonical}};

  std::optional<Matrix> coords;
  if (!a.coords.empty()) {
    run.config()["coords"] = a.coords;
    coords = io::parse_point_coordinates_csv(io::read_file(a.coords));
  } else if (io::detect_format(a.input) == io::Format::kPointCloud) {
    coords = io::parse_point_coordinates_csv(io::read_file(a.input));
  }
  if (coords && static_cast<std::size_t>(coords->rows()) != space.size()) {
    throw InputError("coordinate file has " + std::to_string(coords->rows()) + " rows for " +
                     std::to_string(space.size()) + " nodes");
  }
  if (coords && run.plots()) {
    std::vector<double> x, y, v;
    std::vector<bool> ring(space.size(), false);
    for (std::size_t j : r.sign_region) ring[j] = true;
    for (Eigen::Index i = 0; i < coords->rows(); ++i) {
      x.push_back((*coords)(i, 0));
      y.push_back(coords->cols() > 1 ? (*coords)(i, 1) : 0.0);
      v.push_back(r.fiedler_vector(i));
    }
    run.write("harmonics.svg", svg::value_scatter(x, y, v, ring, {"Fiedler vector", "x", "y"}));
  }
  out << "rho " << io::format_csv_double(rho) << ", fiedler value " << io::format_csv_double(r.fiedler_value)
      << ", split " << r.positive_side.size() << "/" << r.negative_side.size() << ", sign region "
      << r.sign_region.size() << (r.canonical ? "" : " (repeated eigenvalue, split not canonical)") << "\n";
}

struct SslArgs {
  std::string input;
  std::string labels;
  std::string rho = "auto";
  double tau = 1.0;
};

void cmd_ssl(const SslArgs& a, Run& run, const Common& c, std::ostream& out) {
  run.config()["input"] = a.input;
  run.config()["labels"] = a.labels;
  run.config()["tau"] = a.tau;
  const MmSpace space = io::load_space(a.input, mass_policy(c));
  const double rho = parse_rho(a.rho, space, run.config());
  run.config()["rho"] = rho;
  const SslProblem problem{space, rho, a.tau, io::parse_labels_csv(io::read_file(a.labels))};
  const SslSolution s = solve(problem);

  std::ostringstream csv;
  csv << "node,score,prediction,no_evidence\n";
  std::size_t isolated = 0;
  for (std::size_t j = 0; j < space.size(); ++j) {
    csv << j << ',' << io::format_csv_double(s.scores(static_cast<Eigen::Index>(j))) << ',' << s.predictions[j]
        << ',' << (s.no_evidence[j] ? 1 : 0) << '\n';
    isolated += s.no_evidence[j] ? 1 : 0;
  }
  run.write("predictions.csv", csv.str());
  run.results() = {{"objective", s.objective}, {"no_evidence", isolated}};
  out << "nodes " << space.size() << ", labelled " << problem.labeled.size() << ", without graph evidence "
      << isolated << "\n";
}

struct BandsArgs {
  std::vector<std::string> samples;
  std::string which = "fiedler";
  double level = 0.95;
  std::size_t grid = kDefaultGridSize;
  std::size_t k_prime = 0;
};

void cmd_bands(const BandsArgs& a, Run& run, const Common& c, std::ostream& out) {
  run.config()["samples"] = a.samples;
  run.config()["which"] = a.which;
  run.config()["level"] = a.level;
  run.config()["grid"] = a.grid;
  std::vector<SpaceSet> sets;
  std::vector<std::vector<SpectralCurve>> curves;
  std::vector<MmSpace> pooled;
  std::vector<SpectralCurve> all;
  for (const auto& dir : a.samples) {
    if (!fs::is_directory(dir)) throw InputError(dir + " is not a directory");
    sets.push_back(load_spaces({dir}, mass_policy(c)));
    curves.push_back(sweep_all(sets.back().spaces, c.threads));
    pooled.insert(pooled.end(), sets.back().spaces.begin(), sets.back().spaces.end());
    all.insert(all.end(), curves.back().begin(), curves.back().end());
  }
  const std::size_t kp = resolve_k_prime(a.k_prime, all);
  run.config()["k_prime"] = kp;

  std::size_t index = 0;
  if (a.which == "fiedler") {
    index = 2;
  } else if (a.which == "largest") {
    index = kp;
  } else {
    const auto [ptr, ec] = std::from_chars(a.which.data(), a.which.data() + a.which.size(), index);
    if (ec != std::errc() || ptr != a.which.data() + a.which.size()) {
      throw InputError("--which must be fiedler, largest or an eigenvalue index");
    }
  }
  run.config()["eigen_index"] = index;

  const QuantileGrid grid = build_grid(pooled, a.grid);
  std::vector<ConfidenceBand> bands;
  std::vector<svg::Series> series;
  for (std::size_t g = 0; g < sets.size(); ++g) {
    const auto est = mean_spectrum(make_sample(curves[g], grid, kp));
    bands.push_back(confidence_bands(est, a.level, index));
    const auto& b = bands.back();
    std::string name = fs::path(a.samples[g]).filename().string();
    if (name.empty()) name = fs::path(a.samples[g]).parent_path().filename().string();
    std::ostringstream csv;
    csv << "rho,mean,lower,upper\n";
    for (std::size_t i = 0; i < b.rho.size(); ++i) {
      csv << io::format_csv_double(b.rho[i]) << ',' << io::format_csv_double(b.mean[i]) << ','
          << io::format_csv_double(b.lower[i]) << ',' << io::format_csv_double(b.upper[i]) << '\n';
    }
    run.write(sets.size() == 1 ? "bands.csv" : "bands_" + name + ".csv", csv.str());
    series.push_back({name, b.rho, b.mean, b.lower, b.upper, false});
  }
  if (run.plots()) {
    run.write("bands.svg", svg::line_plot(series, {"Mean lambda_" + std::to_string(index) + " with " +
                                                       io::format_csv_double(a.level) + " bands",
                                                   "rho", "eigenvalue"}));
  }
  if (bands.size() == 2) {
    std::size_t disjoint = 0;
    for (std::size_t i = 0; i < bands[0].rho.size(); ++i) {
      disjoint += bands[0].upper[i] < bands[1].lower[i] || bands[1].upper[i] < bands[0].lower[i];
    }
    run.results()["disjoint_grid_points"] = disjoint;
  }
  run.results()["grid_points"] = grid.size();
  out << "bands for lambda_" << index << " over " << grid.size() << " grid points, " << sets.size()
      << " sample(s)\n";
}

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--out", c.out, "Output directory")->capture_default_str();
  sub->add_option("--threads", c.threads, "Worker threads (0: MM_SPECTRA_THREADS or all cores)");
  sub->add_option("--mass", c.mass, "Mass policy for point clouds and graphs")
      ->check(CLI::IsMember({"uniform", "degree"}))
      ->capture_default_str();
  sub->add_flag("--no-plot", c.no_plot, "Skip SVG output");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rho-Laplacian spectra of metric measure spaces"};
  app.name("mmspectra");
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  Common common;
  SpectrumArgs spectrum_args;
  DistanceArgs distance_args;
  TestArgs test_args;
  HarmonicsArgs harmonics_args;
  SslArgs ssl_args;
  BandsArgs bands_args;

  auto* spectrum_cmd = app.add_subcommand("spectrum", "Spectrum at one rho, or the full rho-sweep");
  spectrum_cmd->add_option("input", spectrum_args.input, "mm-space file (.json, .csv, edge list)")->required();
  auto* rho_opt = spectrum_cmd->add_option("--rho", spectrum_args.rho, "Scale parameter");
  auto* sweep_flag = spectrum_cmd->add_flag("--sweep", spectrum_args.sweep, "Every breakpoint interval");
  rho_opt->excludes(sweep_flag);
  add_common(spectrum_cmd, common);

  auto* distance_cmd = app.add_subcommand("distance", "Spectral distance matrix and MDS embedding");
  distance_cmd->add_option("inputs", distance_args.inputs, "mm-space files or directories")->required();
  distance_cmd->add_option("--grid", distance_args.grid, "Quantile grid size")->capture_default_str();
  distance_cmd->add_option("--kprime", distance_args.k_prime, "Eigenvalues compared (0: smallest K)");
  distance_cmd->add_option("--dims", distance_args.dims, "MDS dimensions")->capture_default_str();
  distance_cmd->add_flag("--exact-sup", distance_args.exact_sup, "Evaluate every breakpoint interval");
  add_common(distance_cmd, common);

  auto* test_cmd = app.add_subcommand("test", "Bootstrap two-sample test of equal mean spectra");
  test_cmd->add_option("sample_a", test_args.sample_a, "Directory of mm-spaces")->required();
  test_cmd->add_option("sample_b", test_args.sample_b, "Directory of mm-spaces")->required();
  test_cmd->add_option("--B", test_args.replicates, "Bootstrap replicates")->capture_default_str();
  test_cmd->add_option("--seed", test_args.seed, "Random seed")->capture_default_str();
  test_cmd->add_option("--level", test_args.level, "Confidence level (alpha = 1 - level)")->capture_default_str();
  test_cmd->add_option("--grid", test_args.grid, "Quantile grid size")->capture_default_str();
  test_cmd->add_option("--kprime", test_args.k_prime, "Eigenvalues compared (0: smallest K)");
  test_cmd->add_flag("--raw-statistic", test_args.raw, "Compare the unscaled statistic with the replicates");
  test_cmd->add_flag("--plus-one", test_args.plus_one, "Use (1 + #exceed) / (B + 1)");
  add_common(test_cmd, common);

  auto* harmonics_cmd = app.add_subcommand("harmonics", "Fiedler vector, split and sign-change region");
  harmonics_cmd->add_option("input", harmonics_args.input, "mm-space file")->required();
  harmonics_cmd->add_option("--rho", harmonics_args.rho, "\"auto\" or a value")->capture_default_str();
  harmonics_cmd->add_option("--q", harmonics_args.q, "Sign-region fraction")->capture_default_str();
  harmonics_cmd->add_option("--coords", harmonics_args.coords, "Point coordinates CSV for the plot");
  add_common(harmonics_cmd, common);

  auto* ssl_cmd = app.add_subcommand("ssl", "Semi-supervised label propagation");
  ssl_cmd->add_option("input", ssl_args.input, "mm-space file")->required();
  ssl_cmd->add_option("labels", ssl_args.labels, "CSV of node_index,label (+1/-1)")->required();
  ssl_cmd->add_option("--rho", ssl_args.rho, "\"auto\" or a value")->capture_default_str();
  ssl_cmd->add_option("--tau", ssl_args.tau, "Smoothness weight")->capture_default_str();
  add_common(ssl_cmd, common);

  auto* bands_cmd = app.add_subcommand("bands", "Pointwise confidence bands of the mean spectrum");
  bands_cmd->add_option("samples", bands_args.samples, "Directories of mm-spaces")->required();
  bands_cmd->add_option("--which", bands_args.which, "fiedler, largest or an index")->capture_default_str();
  bands_cmd->add_option("--level", bands_args.level, "Confidence level")->capture_default_str();
  bands_cmd->add_option("--grid", bands_args.grid, "Quantile grid size")->capture_default_str();
  bands_cmd->add_option("--kprime", bands_args.k_prime, "Eigenvalues kept (0: smallest K)");
  add_common(bands_cmd, common);

  std::vector<std::string> argv_store{"mmspectra"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_store) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }
  if (spectrum_cmd->parsed() && !spectrum_args.rho && !spectrum_args.sweep) {
    err << "mmspectra spectrum: give --rho or --sweep\n";
    return kInputError;
  }

  CLI::App* chosen = app.get_subcommands().front();
  Run run_state(chosen->get_name(), common);
  int code = kOk;
  std::string message;
  try {
    if (chosen == spectrum_cmd) cmd_spectrum(spectrum_args, run_state, common, out);
    if (chosen == distance_cmd) cmd_distance(distance_args, run_state, common, out);
    if (chosen == test_cmd) cmd_test(test_args, run_state, common, out);
    if (chosen == harmonics_cmd) cmd_harmonics(harmonics_args, run_state, common, out);
    if (chosen == ssl_cmd) cmd_ssl(ssl_args, run_state, common, out);
    if (chosen == bands_cmd) cmd_bands(bands_args, run_state, common, out);
  } catch (const InputError& e) {
    code = kInputError;
    message = e.what();
  } catch (const DisconnectedError& e) {
    code = kNumericalError;
    message = e.what();
    run_state.config()["components"] = e.components();
  } catch (const NumericalError& e) {
    code = kNumericalError;
    message = e.what();
  } catch (const fs::filesystem_error& e) {
    code = kInputError;
    message = e.what();
  } catch (const std::exception& e) {
    code = kNumericalError;
    message = e.what();
  }
  if (code != kOk) err << "mmspectra " << chosen->get_name() << ": " << message << "\n";
  run_state.finish(code, message);
  return code;
}

}  // namespace mmspectra::cli
