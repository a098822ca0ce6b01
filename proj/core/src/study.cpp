#include "romlab/study.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <cstdio>
#include <exception>
#include <map>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "romlab/errors.hpp"
#include "romlab/pod_cache.hpp"

namespace romlab {

std::string to_string(StudyKind kind) {
  switch (kind) {
    case StudyKind::filter_delta: return "filter-delta";
    case StudyKind::filter_r: return "filter-r";
    case StudyKind::lrom_dt: return "lrom-dt";
    case StudyKind::lrom_delta: return "lrom-delta";
    case StudyKind::lrom_r: return "lrom-r";
  }
  return "unknown";
}

std::optional<StudyKind> parse_study_kind(const std::string& name) {
  for (StudyKind k : {StudyKind::filter_delta, StudyKind::filter_r, StudyKind::lrom_dt,
                      StudyKind::lrom_delta, StudyKind::lrom_r}) {
    if (to_string(k) == name) {
      return k;
    }
  }
  return std::nullopt;
}

namespace {

bool is_filter_study(StudyKind k) { return k == StudyKind::filter_delta || k == StudyKind::filter_r; }
bool is_r_sweep(StudyKind k) { return k == StudyKind::filter_r || k == StudyKind::lrom_r; }

const char* swept_name(StudyKind k) {
  switch (k) {
    case StudyKind::filter_delta:
    case StudyKind::lrom_delta: return "delta";
    case StudyKind::filter_r:
    case StudyKind::lrom_r: return "r";
    case StudyKind::lrom_dt: return "dt";
  }
  return "value";
}

}  // namespace

StudyConfig StudyConfig::defaults(StudyKind kind) {
  StudyConfig c;
  c.kind = kind;
  switch (kind) {
    case StudyKind::filter_delta:
      c.r = 95;
      c.dt = 1e-4;
      c.sweep = {1e-2, 5e-3, 2.5e-3, 2.0e-3, 1.67e-3, 1.25e-3};
      break;
    case StudyKind::filter_r:
      c.delta = 1e-3;
      c.dt = 1e-4;
      c.sweep = {30, 40, 50, 60, 70, 80};
      break;
    case StudyKind::lrom_dt:
      c.r = 99;
      c.delta = 1e-4;
      c.sweep = {1e-2, 5e-3, 2.5e-3, 1.25e-3, 6.25e-4};
      break;
    case StudyKind::lrom_delta:
      c.r = 99;
      c.dt = 1e-4;
      c.sweep = {5e-1, 2.5e-1, 1.25e-1, 6.25e-2, 3.12e-2, 1.56e-2};
      break;
    case StudyKind::lrom_r:
      c.delta = 1e-2;
      c.dt = 1e-4;
      c.sweep = {10, 20, 30, 40, 50};
      break;
  }
  c.out = to_string(kind) + ".csv";
  return c;
}

void StudyConfig::validate() const {
  auto fail = [](const std::string& msg) { throw std::invalid_argument("study config: " + msg); };
  if (mesh_n == 0) fail("mesh n must be positive");
  if (!(snapshot_dt > 0.0)) fail("snapshot dt must be positive");
  if (snapshot_steps == 0) fail("snapshot count must be at least 2");
  if (static_cast<double>(snapshot_steps) * snapshot_dt > 1.0 + 1e-12) {
    fail("snapshots must lie in [0, 1]");
  }
  if (!(nu > 0.0) || !std::isfinite(nu)) fail("nu must be positive");
  if (!(t_final > 0.0)) fail("t_final must be positive");
  if (!is_r_sweep(kind) && r == 0) fail("r must be positive");
  if (kind != StudyKind::filter_delta && kind != StudyKind::lrom_delta && !(delta >= 0.0)) {
    fail("delta must be non-negative");
  }
  if (kind != StudyKind::lrom_dt && !(dt > 0.0)) fail("dt must be positive");
  if (sweep.empty()) fail("sweep list is empty");
  for (double v : sweep) {
    if (!(v > 0.0) || !std::isfinite(v)) fail("sweep values must be positive");
    if (is_r_sweep(kind) && v != std::floor(v)) fail("r sweep values must be integers");
  }
  if (sweep.size() > 1) {
    const bool up = sweep[1] > sweep[0];
    for (std::size_t i = 1; i < sweep.size(); ++i) {
      if (up ? !(sweep[i] > sweep[i - 1]) : !(sweep[i] < sweep[i - 1])) {
        fail("sweep list must be strictly monotone");
      }
    }
  }
}

Regression loglog_regression(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) {
    throw std::invalid_argument("loglog_regression: length mismatch");
  }
  if (xs.size() < 2) {
    throw std::invalid_argument("loglog_regression: need at least two points");
  }
  const auto n = static_cast<double>(xs.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!(xs[i] > 0.0) || !(ys[i] > 0.0)) {
      throw std::invalid_argument("loglog_regression: values must be positive");
    }
    mx += std::log(xs[i]);
    my += std::log(ys[i]);
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = std::log(xs[i]) - mx;
    const double dy = std::log(ys[i]) - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx == 0.0) {
    throw std::invalid_argument("loglog_regression: abscissae are all equal");
  }
  Regression fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r_squared = syy == 0.0 ? 1.0 : std::clamp(sxy * sxy / (sxx * syy), 0.0, 1.0);
  return fit;
}

FilterErrors avg_filter_errors(const PODBasis& basis, std::size_t r, double delta,
                               const SnapshotSet& snapshots, const SymmetricOperator& mass,
                               const SymmetricOperator& stiffness) {
  const RomStiffness sr = rom_stiffness(basis, r);
  const FilterOperator filter(sr, delta);
  const auto ri = static_cast<Eigen::Index>(r);
  const Matrix coords = basis.modes.leftCols(ri).transpose() * mass.apply(snapshots.columns);
  const Matrix filtered = filter.apply(coords);
  const Matrix err = snapshots.columns - basis.modes.leftCols(ri) * filtered;
  const Matrix m_err = mass.apply(err);
  const Matrix s_err = stiffness.apply(err);
  FilterErrors out;
  for (Eigen::Index k = 0; k < err.cols(); ++k) {
    out.l2 += err.col(k).dot(m_err.col(k));
    out.h1 += err.col(k).dot(s_err.col(k));
  }
  const auto count = static_cast<double>(err.cols());
  out.l2 /= count;
  out.h1 /= count;
  return out;
}

double final_time_error(const ROMTrajectory& traj, const Vector& exact_final,
                        const PODBasis& basis, const SymmetricOperator& mass,
                        FinalErrorVariant variant, const FilterOperator* filter) {
  if (traj.states.empty()) {
    throw std::invalid_argument("final_time_error: empty trajectory");
  }
  const Vector& a = traj.final_state();
  Vector approx;
  if (variant == FinalErrorVariant::rom_state) {
    approx = reconstruct(basis, a);
  } else {
    if (filter == nullptr) {
      throw std::invalid_argument("final_time_error: filtered variant needs a filter");
    }
    approx = reconstruct(basis, filter_fe(*filter, basis, mass, exact_final));
  }
  return l2_norm(mass, exact_final - approx);
}

int StudyResult::exit_code() const {
  if (!fit_l2) return 4;
  for (const auto& rec : records) {
    if (!rec.ok) return 3;
  }
  return 0;
}

Laboratory::Laboratory(const Options& options)
    : options_(options), solution_(options.nu) {
  space_ = std::make_unique<VelocitySpace>(build_mesh(options.mesh_n));
  mass_ = assemble_mass(*space_);
  stiffness_ = assemble_stiffness(*space_);
  const auto times = uniform_times(options.snapshot_dt, options.snapshot_steps);
  snapshots_ = collect_snapshots(*space_, solution_, times);

  const PODCacheKey key{options.mesh_n, options.snapshot_dt, options.snapshot_steps,
                        options.pod.rank_tol, options.nu};
  if (!options.cache_dir.empty()) {
    const auto file = pod_cache_path(options.cache_dir, key);
    if (auto cached = load_pod_cache(file, key, space_->num_dofs(), snapshots_.count())) {
      basis_ = std::move(*cached);
      basis_.h1 = options.pod.h1;
      from_cache_ = true;
      return;
    }
    basis_ = build_pod_basis(snapshots_, mass_, stiffness_, options.pod);
    save_pod_cache(file, key, basis_);
    return;
  }
  basis_ = build_pod_basis(snapshots_, mass_, stiffness_, options.pod);
}

TrilinearTensor Laboratory::tensor(std::size_t r) {
  std::lock_guard<std::mutex> lock(mutex_);
  if (!tensor_ || tensor_->dim() < r) {
    tensor_ = std::make_unique<TrilinearTensor>(build_trilinear_tensor(basis_, r, *space_));
  }
  return tensor_->dim() == r ? *tensor_ : tensor_->leading(r);
}

Matrix Laboratory::forcing(std::size_t r, double dt, std::size_t steps) {
  std::lock_guard<std::mutex> lock(mutex_);
  const auto key = std::make_pair(std::bit_cast<std::uint64_t>(dt), steps);
  auto it = forcing_.find(key);
  if (it == forcing_.end() || static_cast<std::size_t>(it->second.rows()) < r) {
    const auto times = uniform_times(dt, steps);
    Matrix f = project_forcing(basis_, r, mass_, *space_, solution_.forcing_function(), times);
    it = forcing_.insert_or_assign(key, std::move(f)).first;
  }
  return it->second.topRows(static_cast<Eigen::Index>(r));
}

ROMOperators Laboratory::rom_operators(const LROMConfig& cfg) {
  cfg.validate();
  ROMOperators ops;
  ops.stiffness = rom_stiffness(basis_, cfg.r);
  ops.tensor = tensor(cfg.r);
  ops.forcing = forcing(cfg.r, cfg.dt, cfg.num_steps());
  ops.initial = project_Pr(basis_, cfg.r, mass_, exact_state(0.0));
  return ops;
}

Vector Laboratory::exact_state(double t) const {
  return interpolate(*space_, solution_.velocity_function(), t).coeffs;
}

double study_abscissa(const StudyResult& result, const StudyRecord& record) {
  if (is_r_sweep(result.config.kind)) {
    return record.lambda_h1.value_or(0.0);
  }
  return record.value;
}

namespace {

void evaluate_point(Laboratory& lab, const StudyConfig& cfg, StudyRecord& rec) {
  const PODBasis& basis = lab.basis();
  const std::size_t r = is_r_sweep(cfg.kind) ? static_cast<std::size_t>(rec.value) : cfg.r;
  if (r == 0 || r > basis.rank()) {
    throw std::invalid_argument("r = " + std::to_string(r) + " outside [1, " +
                                std::to_string(basis.rank()) + "]");
  }
  const TruncationErrors lam = truncation_errors(basis, r);
  rec.lambda_l2 = lam.l2;
  rec.lambda_h1 = lam.h1;

  if (is_filter_study(cfg.kind)) {
    const double delta = cfg.kind == StudyKind::filter_delta ? rec.value : cfg.delta;
    const FilterErrors err = avg_filter_errors(basis, r, delta, lab.snapshots(), lab.mass(), lab.stiffness());
    rec.e_l2 = err.l2;
    rec.e_h1 = err.h1;
    return;
  }

  LROMConfig rc;
  rc.r = r;
  rc.delta = cfg.kind == StudyKind::lrom_delta ? rec.value : cfg.delta;
  rc.dt = cfg.kind == StudyKind::lrom_dt ? rec.value : cfg.dt;
  rc.t_final = cfg.t_final;
  rc.nu = cfg.nu;
  rc.linearization = cfg.linearization;
  const ROMOperators ops = lab.rom_operators(rc);
  const FilterOperator filter(ops.stiffness, rc.delta);
  const ROMTrajectory traj = run(ops, filter, rc);
  const Vector exact = lab.exact_state(rc.dt * static_cast<double>(rc.num_steps()));
  rec.e_l2 = final_time_error(traj, exact, basis, lab.mass(), cfg.error_variant, &filter);
  const StabilityReport stab = stability_check(traj, ops, rc);
  rec.stability_bound = stab.max_value;
  rec.stability_bounded = stab.bounded;
  if (!traj.iterations.empty()) {
    rec.picard_max = *std::max_element(traj.iterations.begin(), traj.iterations.end());
    double sum = 0.0;
    for (std::size_t it : traj.iterations) sum += static_cast<double>(it);
    rec.picard_mean = sum / static_cast<double>(traj.iterations.size());
  }
}

}  // namespace

StudyResult run_study(Laboratory& lab, const StudyConfig& cfg, std::ostream* log) {
  cfg.validate();
  StudyResult result;
  result.config = cfg;
  result.rank = lab.basis().rank();
  result.records.resize(cfg.sweep.size());
  for (std::size_t i = 0; i < cfg.sweep.size(); ++i) {
    result.records[i].value = cfg.sweep[i];
  }

  // Fill the shared caches up front so concurrent points only read them.
  if (!is_filter_study(cfg.kind)) {
    std::size_t r_max = cfg.r;
    if (is_r_sweep(cfg.kind)) {
      r_max = static_cast<std::size_t>(*std::max_element(cfg.sweep.begin(), cfg.sweep.end()));
    }
    r_max = std::min(r_max, lab.basis().rank());
    try {
      (void)lab.tensor(r_max);
      if (cfg.kind == StudyKind::lrom_dt) {
        for (double dt : cfg.sweep) {
          LROMConfig rc;
          rc.r = r_max;
          rc.dt = dt;
          rc.t_final = cfg.t_final;
          (void)lab.forcing(r_max, dt, rc.num_steps());
        }
      } else {
        LROMConfig rc;
        rc.r = r_max;
        rc.dt = cfg.dt;
        rc.t_final = cfg.t_final;
        (void)lab.forcing(r_max, cfg.dt, rc.num_steps());
      }
    } catch (const std::exception&) {
      // Surfaced per point below.
    }
  }

  std::size_t threads = cfg.threads != 0 ? cfg.threads : std::thread::hardware_concurrency();
  threads = std::clamp<std::size_t>(threads, 1, cfg.sweep.size());
  std::mutex log_mutex;
  auto work = [&](std::size_t i) {
    StudyRecord& rec = result.records[i];
    try {
      evaluate_point(lab, cfg, rec);
      rec.ok = true;
    } catch (const std::exception& err) {
      rec.ok = false;
      rec.error = err.what();
    }
    if (log != nullptr) {
      std::lock_guard<std::mutex> lock(log_mutex);
      *log << to_string(cfg.kind) << ": " << swept_name(cfg.kind) << " = " << rec.value
           << (rec.ok ? " done" : " FAILED: " + rec.error) << '\n';
    }
  };
  if (threads == 1) {
    for (std::size_t i = 0; i < cfg.sweep.size(); ++i) work(i);
  } else {
    std::vector<std::thread> pool;
    std::atomic<std::size_t> next{0};
    for (std::size_t t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < cfg.sweep.size(); i = next++) work(i);
      });
    }
    for (auto& th : pool) th.join();
  }

  std::vector<double> xs;
  std::vector<double> ys;
  std::vector<double> hs;
  for (auto& rec : result.records) {
    if (!rec.ok) {
      result.warnings.push_back(std::string(swept_name(cfg.kind)) + " = " + std::to_string(rec.value) +
                                " failed and is excluded from the regression: " + rec.error);
      continue;
    }
    const double x = study_abscissa(result, rec);
    if (!(x > 0.0) || !(rec.e_l2.value_or(0.0) > 0.0)) {
      result.warnings.push_back(std::string(swept_name(cfg.kind)) + " = " + std::to_string(rec.value) +
                                " has a non-positive abscissa or error; excluded from the regression");
      continue;
    }
    xs.push_back(x);
    ys.push_back(*rec.e_l2);
    if (rec.e_h1) hs.push_back(*rec.e_h1);
    if (xs.size() >= 2) {
      rec.slope_running = loglog_regression(xs, ys).slope;
    }
  }
  if (xs.size() >= 2) {
    result.fit_l2 = loglog_regression(xs, ys);
    if (hs.size() == xs.size() && is_filter_study(cfg.kind)) {
      result.fit_h1 = loglog_regression(xs, hs);
    }
  } else {
    result.warnings.push_back("fewer than two usable sweep points; no regression");
  }
  return result;
}

StudyResult run_study(const StudyConfig& cfg, std::ostream* log) {
  cfg.validate();
  Laboratory::Options opts;
  opts.mesh_n = cfg.mesh_n;
  opts.snapshot_dt = cfg.snapshot_dt;
  opts.snapshot_steps = cfg.snapshot_steps;
  opts.nu = cfg.nu;
  opts.pod.h1 = cfg.h1;
  opts.cache_dir = cfg.cache_dir;
  Laboratory lab(opts);
  return run_study(lab, cfg, log);
}

namespace {

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string cell(const std::optional<double>& v) { return v ? fmt17(*v) : std::string(); }

}  // namespace

void write_csv(const StudyResult& result, std::ostream& out) {
  out << "param,value,e_l2,e_h1,lambda_l2,lambda_h1,slope_running\n";
  for (const auto& rec : result.records) {
    out << swept_name(result.config.kind) << ',' << fmt17(rec.value) << ','
        << (rec.ok ? cell(rec.e_l2) : "") << ',' << (rec.ok ? cell(rec.e_h1) : "") << ','
        << cell(rec.lambda_l2) << ',' << cell(rec.lambda_h1) << ',' << cell(rec.slope_running)
        << '\n';
  }
}

void write_plot_data(const StudyResult& result, std::ostream& out) {
  const bool r_sweep = is_r_sweep(result.config.kind);
  const char* xlabel = r_sweep ? "Lambda_H1" : swept_name(result.config.kind);
  auto dataset = [&](const char* name, auto getter, const std::optional<Regression>& fit) {
    out << "# " << to_string(result.config.kind) << ": log10(" << xlabel << ") log10(" << name << ")\n";
    double lo = 0.0;
    double hi = 0.0;
    bool any = false;
    for (const auto& rec : result.records) {
      const std::optional<double> y = getter(rec);
      const double x = study_abscissa(result, rec);
      if (!rec.ok || !y || !(*y > 0.0) || !(x > 0.0)) continue;
      const double lx = std::log10(x);
      out << fmt17(lx) << ' ' << fmt17(std::log10(*y)) << '\n';
      lo = any ? std::min(lo, lx) : lx;
      hi = any ? std::max(hi, lx) : lx;
      any = true;
    }
    out << "\n\n";
    if (fit && any) {
      out << "# fit " << name << ": slope " << fmt17(fit->slope) << " intercept(ln) "
          << fmt17(fit->intercept) << " R^2 " << fmt17(fit->r_squared) << '\n';
      constexpr int kSamples = 16;
      for (int s = 0; s <= kSamples; ++s) {
        const double lx = lo + (hi - lo) * s / kSamples;
        const double ly = (fit->intercept + fit->slope * lx * std::log(10.0)) / std::log(10.0);
        out << fmt17(lx) << ' ' << fmt17(ly) << '\n';
      }
      out << "\n\n";
    }
  };
  dataset("e_l2", [](const StudyRecord& r) { return r.e_l2; }, result.fit_l2);
  if (is_filter_study(result.config.kind)) {
    dataset("e_h1", [](const StudyRecord& r) { return r.e_h1; }, result.fit_h1);
  }
}

}  // namespace romlab
