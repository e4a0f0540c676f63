#include "htlpp/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "htlpp/chains.hpp"
#include "htlpp/continuum.hpp"
#include "htlpp/distributions.hpp"
#include "htlpp/greedy.hpp"
#include "htlpp/lattice.hpp"
#include "htlpp/stable.hpp"
#include "htlpp/stats.hpp"

namespace htlpp {

namespace fs = std::filesystem;

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

using Row = std::vector<std::string>;

std::string cell(double v) { return format_double(v); }
std::string cell(std::size_t v) { return std::to_string(v); }
std::string cell(const std::string& v) { return v; }

template <typename... Ts>
Row row(const Ts&... values) {
  return Row{cell(values)...};
}

class CsvFile {
 public:
  CsvFile(fs::path path, Row header) : path_(std::move(path)), header_(std::move(header)) {}

  void add(Row r) { rows_.push_back(std::move(r)); }
  void add_all(std::vector<Row> rs) {
    for (auto& r : rs) rows_.push_back(std::move(r));
  }

  fs::path write() const {
    std::ofstream out(path_, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + path_.string() + " for writing");
    write_row(out, header_);
    for (const auto& r : rows_) write_row(out, r);
    out.flush();
    if (!out) throw std::runtime_error("failed writing " + path_.string());
    return path_;
  }

 private:
  static void write_row(std::ostream& out, const Row& r) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (i > 0) out << ',';
      out << r[i];
    }
    out << '\n';
  }

  fs::path path_;
  Row header_;
  std::vector<Row> rows_;
};

// Per-replicate row blocks assembled in replicate order.
template <typename Fn>
std::vector<Row> replicate_rows(const RunConfig& c, std::size_t count, Fn&& fn) {
  std::vector<std::vector<Row>> slots(count);
  for_each_replicate(count, c.workers, [&](std::size_t rep) { slots[rep] = fn(rep); });
  std::vector<Row> out;
  for (auto& s : slots) {
    for (auto& r : s) out.push_back(std::move(r));
  }
  return out;
}

WeightDistribution make_distribution(const RunConfig& c) {
  if (c.distribution == "pareto") return WeightDistribution::pareto(c.alpha);
  if (c.distribution == "exponential") return WeightDistribution::exponential(1.0);
  if (c.distribution == "slowly_varying_log") return WeightDistribution::slowly_varying_log();
  throw std::invalid_argument("unknown distribution: " + c.distribution);
}

std::vector<double> even_grid(double lo, double hi, std::size_t count) {
  if (count <= 1 || hi == lo) return {0.5 * (lo + hi)};
  std::vector<double> g(count);
  for (std::size_t i = 0; i < count; ++i) {
    g[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
  }
  return g;
}

void prepare_output(const RunConfig& c) {
  std::error_code ec;
  fs::create_directories(c.output_dir, ec);
  if (ec) throw std::runtime_error("cannot create " + c.output_dir.string() + ": " + ec.message());
}

fs::path write_manifest(const RunConfig& c, const std::vector<fs::path>& data_files) {
  nlohmann::json j;
  j["version"] = kVersion;
  j["subcommand"] = c.subcommand;
  j["master_seed"] = c.master_seed;
  j["config"] = c.to_json();
  std::vector<std::string> names;
  for (const auto& f : data_files) names.push_back(f.filename().string());
  j["outputs"] = names;
  const fs::path path = c.output_dir / "manifest.json";
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << j.dump(2) << '\n';
  if (!out) throw std::runtime_error("failed writing " + path.string());
  return path;
}

RunResult finish(const RunConfig& c, const std::vector<CsvFile>& files) {
  std::vector<fs::path> written;
  for (const auto& f : files) written.push_back(f.write());
  RunResult result;
  result.files.push_back(write_manifest(c, written));
  result.files.insert(result.files.end(), written.begin(), written.end());
  return result;
}

std::uint64_t derived_reference_seed(std::uint64_t master) {
  return mix64(master ^ 0x7265666572656e63ULL);
}

// Config with every derived value filled in, as recorded in the manifest.
RunConfig resolved(const RunConfig& in) {
  RunConfig c = in;
  if (c.k_ladder.empty()) c.k_ladder = {c.k};
  if (c.n_ladder.empty()) c.n_ladder = {10, 30, 100};
  if (c.subcommand == "airy" && c.z_min <= 0.0) c.z_min = z_min_for_budget(c.alpha, c.point_budget);
  if (c.subcommand == "stable" && c.delta <= 0.0) {
    c.delta = delta_for_budget(c.alpha, c.c_plus, c.c_minus, c.jump_budget);
  }
  if (c.subcommand == "converge" && c.reference_seed == 0) {
    c.reference_seed = derived_reference_seed(c.master_seed);
  }
  return c;
}

}  // namespace

nlohmann::json RunConfig::to_json() const {
  nlohmann::json j;
  j["subcommand"] = subcommand;
  j["alpha"] = alpha;
  j["n"] = n;
  j["k"] = k;
  j["dims"] = dims;
  j["replicates"] = replicates;
  j["master_seed"] = master_seed;
  j["workers"] = workers;
  j["output_dir"] = output_dir.string();
  j["distribution"] = distribution;
  j["weights_file"] = weights_file.string();
  j["emit_tree"] = emit_tree;
  j["emit_path"] = emit_path;
  j["k_ladder"] = k_ladder;
  j["tau"] = tau;
  j["u_points"] = u_points;
  j["theta_points"] = theta_points;
  j["z_min"] = z_min;
  j["point_budget"] = point_budget;
  j["eps"] = eps;
  j["scale"] = scale;
  j["g_points"] = g_points;
  j["m"] = m;
  j["delta"] = delta;
  j["jump_budget"] = jump_budget;
  j["c_plus"] = c_plus;
  j["c_minus"] = c_minus;
  j["top_jumps"] = top_jumps;
  j["n_ladder"] = n_ladder;
  j["reference_seed"] = reference_seed;
  return j;
}

void RunConfig::validate() const {
  auto fail = [](const std::string& msg) { throw std::invalid_argument(msg); };
  if (n < 1) fail("n must be >= 1");
  if (k < 1) fail("k must be >= 1");
  if (workers < 1) fail("workers must be >= 1");
  if (subcommand == "discrete") {
    if (dims != 2 && dims != 3) fail("discrete: dims must be 2 or 3");
    if ((emit_tree || emit_path) && dims != 2) fail("discrete: tree/path output needs dims = 2");
    if (distribution == "pareto" && !(alpha > 0.0)) fail("discrete: alpha must be > 0");
  } else if (subcommand == "continuum") {
    if (dims < 2) fail("continuum: dims must be >= 2");
    if (!(alpha > 0.0 && alpha < static_cast<double>(dims))) fail("continuum: alpha must lie in (0, d)");
    for (std::size_t kk : k_ladder) {
      if (kk < 1) fail("continuum: ladder entries must be >= 1");
    }
  } else if (subcommand == "airy") {
    if (!(alpha > 0.0 && alpha < 2.0)) fail("airy: alpha must lie in (0, 2)");
    if (!(tau >= 0.0)) fail("airy: tau must be >= 0");
    if (u_points < 1) fail("airy: u_points must be >= 1");
    if (z_min < 0.0) fail("airy: z_min must be > 0");
    if (!(point_budget > 0.0)) fail("airy: point_budget must be > 0");
  } else if (subcommand == "greedy") {
    if (!(eps > 0.0 && eps < 1.0)) fail("greedy: eps must lie in (0, 1)");
    if (dims < 2) fail("greedy: dims must be >= 2");
    if (dims == 2 && !(scale > 0.0 && scale < 0.25)) fail("greedy: scale must lie in (0, 1/4)");
    if (dims == 2 && eps > scale / 16.0) fail("greedy: eps must be <= scale / 16");
  } else if (subcommand == "stable") {
    StableSpec{alpha, c_plus, c_minus, delta > 0.0 ? delta : 1.0}.validate();
    if (m < 1) fail("stable: m must be >= 1");
    if (!(jump_budget > 0.0)) fail("stable: jump_budget must be > 0");
  } else if (subcommand == "converge") {
    if (!(alpha > 0.0 && alpha < 2.0)) fail("converge: alpha must lie in (0, 2)");
    for (std::size_t nn : n_ladder) {
      if (nn < 1) fail("converge: ladder entries must be >= 1");
    }
  } else {
    fail("unknown subcommand: " + subcommand);
  }
}

std::vector<double> read_weights_file(const fs::path& path, std::size_t& side) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read weights file " + path.string());
  std::vector<double> values;
  std::string token;
  while (in >> token) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(token, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != token.size()) throw std::invalid_argument("weights file: bad number '" + token + "'");
    values.push_back(v);
  }
  side = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(values.size()))));
  if (values.empty() || side * side != values.size()) {
    throw std::invalid_argument("weights file: value count must be a nonzero square");
  }
  return values;
}

RunResult run_discrete(const RunConfig& in) {
  RunConfig c = resolved(in);
  c.validate();
  const WeightDistribution dist = make_distribution(c);

  std::vector<double> fixture;
  std::size_t fixture_side = 0;
  if (!c.weights_file.empty()) {
    fixture = read_weights_file(c.weights_file, fixture_side);
    if (c.dims != 2) throw std::invalid_argument("discrete: weights file needs dims = 2");
    c.n = fixture_side;
  }
  prepare_output(c);

  auto make_grid = [&](std::size_t rep) {
    if (!fixture.empty()) return LatticeGrid(2, fixture_side, fixture);
    Rng rng = split_stream(c.master_seed, rep);
    return LatticeGrid::random(static_cast<int>(c.dims), c.n, dist, rng);
  };

  // A fixture grid is deterministic, so it is evaluated once.
  const std::size_t reps = fixture.empty() ? c.replicates : std::min<std::size_t>(c.replicates, 1);
  CsvFile main(c.output_dir / "discrete.csv", {"replicate", "n", "T", "T_scaled"});
  main.add_all(replicate_rows(c, reps, [&](std::size_t rep) {
    const LatticeGrid grid = make_grid(rep);
    const double t = passage_time(grid);
    std::uint64_t sites = 1;
    for (std::size_t d = 0; d < c.dims; ++d) sites *= c.n;
    return std::vector<Row>{row(rep, c.n, t, t / dist.scale_constant(sites))};
  }));
  std::vector<CsvFile> files{main};

  if ((c.emit_tree || c.emit_path) && reps > 0) {
    const LatticeGrid grid = make_grid(0);
    const PassageField field = passage_field(grid);
    if (c.emit_tree) {
      CsvFile tree(c.output_dir / "geodesic_tree.csv", {"i", "j", "parent_i", "parent_j"});
      const auto parent = geodesic_tree(field);
      for (std::size_t s = 0; s < parent.size(); ++s) {
        if (parent[s] < 0) continue;
        const auto p = static_cast<std::size_t>(parent[s]);
        tree.add(row(s / c.n + 1, s % c.n + 1, p / c.n + 1, p % c.n + 1));
      }
      files.push_back(tree);
    }
    if (c.emit_path) {
      CsvFile path_csv(c.output_dir / "optimal_path.csv", {"order", "x", "y"});
      const MonotonePath path = path_to_unit_cube(optimal_path(field), c.n);
      for (std::size_t i = 0; i < path.size(); ++i) {
        path_csv.add(row(i, path.vertex(i)[0], path.vertex(i)[1]));
      }
      files.push_back(path_csv);
    }
  }
  return finish(c, files);
}

RunResult run_continuum(const RunConfig& in) {
  RunConfig c = resolved(in);
  c.validate();
  prepare_output(c);
  std::vector<std::size_t> ladder = c.k_ladder;
  std::sort(ladder.begin(), ladder.end());
  ladder.erase(std::unique(ladder.begin(), ladder.end()), ladder.end());
  const std::size_t k_max = ladder.back();
  // The remainder bound needs weights and chain lengths beyond the cutoff.
  const std::size_t horizon = 2 * k_max;

  CsvFile main(c.output_dir / "continuum.csv", {"replicate", "k", "T_k", "U_k"});
  main.add_all(replicate_rows(c, c.replicates, [&](std::size_t rep) {
    Rng rng = split_stream(c.master_seed, rep);
    const ContinuumSample sample = sample_continuum(horizon, c.alpha, c.dims, rng);
    std::vector<std::size_t> profile;
    if (c.dims == 2) profile = lis_profile(sample.points);
    std::vector<Row> rows;
    for (std::size_t kk : ladder) {
      const double t = max_weight_chain(sample.points.prefix(kk)).total;
      const double u = c.dims == 2 ? remainder_bound(sample.weights.weights, profile, kk)
                                   : std::nan("");
      rows.push_back(row(rep, kk, t, u));
    }
    return rows;
  }));
  std::vector<CsvFile> files{main};

  if (c.replicates > 0 && c.dims == 2) {
    Rng rng = split_stream(c.master_seed, 0);
    const ContinuumSample sample = sample_continuum(horizon, c.alpha, c.dims, rng);
    const WeightedPointSet top = sample.points.prefix(k_max);
    const ChainResult chain = max_weight_chain(top);
    const MonotonePath path = chain_closure_path(chain, top);
    CsvFile chain_csv(c.output_dir / "chain.csv", {"order", "x", "y"});
    for (std::size_t i = 0; i < path.size(); ++i) {
      chain_csv.add(row(i, path.vertex(i)[0], path.vertex(i)[1]));
    }
    files.push_back(chain_csv);
  }
  return finish(c, files);
}

RunResult run_airy(const RunConfig& in) {
  RunConfig c = resolved(in);
  c.validate();
  prepare_output(c);
  const std::vector<double> u_grid = even_grid(-c.tau, c.tau, c.u_points);
  const std::vector<double> theta_grid = even_grid(-c.tau, c.tau, c.theta_points);
  const double side = std::exp(c.tau);

  std::vector<std::vector<Row>> trace_rows(c.replicates), theta_rows(c.replicates);
  for_each_replicate(c.replicates, c.workers, [&](std::size_t rep) {
    Rng rng = split_stream(c.master_seed, rep);
    const PRMSample prm = sample_prm(side, side, c.z_min, c.alpha, rng);
    const AiryTrace trace = airy_trace(c.tau, u_grid, prm);
    for (std::size_t i = 0; i < u_grid.size(); ++i) {
      trace_rows[rep].push_back(row(rep, u_grid[i], trace.values[i]));
    }
    std::vector<Query> uv;
    for (double u : theta_grid) {
      for (double v : theta_grid) uv.push_back({u, v});
    }
    const auto theta = theta_at(prm, uv);
    for (std::size_t i = 0; i < uv.size(); ++i) {
      theta_rows[rep].push_back(row(rep, uv[i].x, uv[i].y, theta[i]));
    }
  });
  CsvFile airy(c.output_dir / "airy.csv", {"replicate", "u", "H"});
  CsvFile theta(c.output_dir / "theta.csv", {"replicate", "u", "v", "theta"});
  for (std::size_t rep = 0; rep < c.replicates; ++rep) {
    airy.add_all(std::move(trace_rows[rep]));
    theta.add_all(std::move(theta_rows[rep]));
  }
  return finish(c, {airy, theta});
}

RunResult run_greedy(const RunConfig& in) {
  RunConfig c = resolved(in);
  c.validate();
  prepare_output(c);
  std::vector<CsvFile> files;

  if (c.replicates > 0) {
    Rng rng = split_stream(c.master_seed, 0);
    const GreedyPath path = greedy_path(c.eps, c.dims, rng);
    Row header{"order"};
    if (c.dims == 2) {
      header.insert(header.end(), {"x", "y"});
    } else {
      for (std::size_t d = 0; d < c.dims; ++d) header.push_back("x" + std::to_string(d + 1));
    }
    CsvFile path_csv(c.output_dir / "greedy_path.csv", header);
    for (std::size_t i = 0; i < path.size(); ++i) {
      Row r{cell(i)};
      for (double v : path.vertices.vertex(i)) r.push_back(cell(v));
      path_csv.add(std::move(r));
    }
    files.push_back(path_csv);
  }

  if (c.dims == 2) {
    const std::vector<double> x_grid = even_grid(0.0, 1.0, c.g_points);
    std::vector<std::vector<Row>> g_rows(c.replicates), e_rows(c.replicates);
    for_each_replicate(c.replicates, c.workers, [&](std::size_t rep) {
      Rng rng = split_stream(c.master_seed, rep);
      const GreedyPath path = greedy_path(c.eps, 2, rng);
      for (double x : x_grid) g_rows[rep].push_back(row(rep, x, measure_cdf(path, x)));
      for (const auto& ld : coarse_local_dimensions(path, c.scale)) {
        e_rows[rep].push_back(row(rep, ld.x, ld.exponent));
      }
    });
    CsvFile g_csv(c.output_dir / "greedy_G.csv", {"replicate", "x", "G"});
    CsvFile e_csv(c.output_dir / "exponents.csv", {"replicate", "x", "exponent"});
    for (std::size_t rep = 0; rep < c.replicates; ++rep) {
      g_csv.add_all(std::move(g_rows[rep]));
      e_csv.add_all(std::move(e_rows[rep]));
    }
    files.push_back(g_csv);
    files.push_back(e_csv);
  }

  std::vector<double> a_grid;
  for (int j = 0; j <= 130; ++j) a_grid.push_back(static_cast<double>(j) / 20.0);
  a_grid.push_back(kSpectrumLow);
  a_grid.push_back(kSpectrumHigh);
  std::sort(a_grid.begin(), a_grid.end());
  CsvFile spec_csv(c.output_dir / "spectrum.csv", {"a", "f", "status"});
  for (double a : a_grid) {
    const SpectrumPoint p = spectrum(a);
    spec_csv.add(row(a, p.f, std::string(p.status == SpectrumStatus::interior ? "interior" : "empty")));
  }
  files.push_back(spec_csv);
  return finish(c, files);
}

RunResult run_stable(const RunConfig& in) {
  RunConfig c = resolved(in);
  c.validate();
  prepare_output(c);
  const StableSpec spec{c.alpha, c.c_plus, c.c_minus, c.delta};

  std::vector<std::vector<Row>> rows(c.replicates);
  std::vector<std::vector<double>> weights(c.replicates);
  for_each_replicate(c.replicates, c.workers, [&](std::size_t rep) {
    Rng rng = split_stream(c.master_seed, rep);
    const ProcessGrid grid = simulate_processes(spec, c.n, c.m, rng);
    const double l = directed_L(grid);
    rows[rep].push_back(row(rep, c.n, c.m, l, rescaled_L(grid, spec),
                            directed_L_lower(grid, c.top_jumps), directed_L_upper(grid)));
    weights[rep] = range_sup_weights(grid);
  });
  CsvFile main(c.output_dir / "stable.csv",
               {"replicate", "n", "m", "L", "L_scaled", "L_lower", "L_upper"});
  std::vector<double> pooled;
  for (std::size_t rep = 0; rep < c.replicates; ++rep) {
    main.add_all(std::move(rows[rep]));
    pooled.insert(pooled.end(), weights[rep].begin(), weights[rep].end());
  }
  CsvFile tail(c.output_dir / "tail.csv", {"x", "tail"});
  if (!pooled.empty()) {
    const EmpiricalSample sample(pooled);
    std::vector<double> x_grid;
    for (double p : {0.5, 0.75, 0.9, 0.95, 0.99, 0.995, 0.999}) {
      const double x = sample.quantile(p);
      if (x > 0.0) x_grid.push_back(x);
    }
    for (const auto& [x, v] : tail_estimate(pooled, x_grid, c.alpha)) tail.add(row(x, v));
  }
  return finish(c, {main, tail});
}

RunResult run_converge(const RunConfig& in) {
  RunConfig c = resolved(in);
  c.validate();
  prepare_output(c);
  const WeightDistribution dist = WeightDistribution::pareto(c.alpha);

  std::vector<double> reference(c.replicates);
  for_each_replicate(c.replicates, c.workers, [&](std::size_t rep) {
    Rng rng = split_stream(c.reference_seed, rep);
    reference[rep] = truncated_T(sample_continuum(c.k, c.alpha, 2, rng)).first;
  });
  const EmpiricalSample ref(reference);

  CsvFile out(c.output_dir / "converge.csv", {"n", "ks", "reps"});
  for (std::size_t l = 0; l < c.n_ladder.size(); ++l) {
    const std::size_t n = c.n_ladder[l];
    std::vector<double> scaled(c.replicates);
    for_each_replicate(c.replicates, c.workers, [&](std::size_t rep) {
      Rng rng = split_stream(c.master_seed, (static_cast<std::uint64_t>(l + 1) << 32) | rep);
      scaled[rep] = rescaled_passage(LatticeGrid::random(2, n, dist, rng), dist);
    });
    const double ks = c.replicates > 0 ? ks_two_sample(EmpiricalSample(scaled), ref) : std::nan("");
    out.add(row(n, ks, c.replicates));
  }
  return finish(c, {out});
}

RunResult run(const RunConfig& config) {
  if (config.subcommand == "discrete") return run_discrete(config);
  if (config.subcommand == "continuum") return run_continuum(config);
  if (config.subcommand == "airy") return run_airy(config);
  if (config.subcommand == "greedy") return run_greedy(config);
  if (config.subcommand == "stable") return run_stable(config);
  if (config.subcommand == "converge") return run_converge(config);
  throw std::invalid_argument("unknown subcommand: " + config.subcommand);
}

}  // namespace htlpp
