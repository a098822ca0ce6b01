#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "romlab/assembly.hpp"
#include "romlab/fe_space.hpp"
#include "romlab/filter.hpp"
#include "romlab/manufactured.hpp"
#include "romlab/pod.hpp"
#include "romlab/rom.hpp"

namespace romlab {

enum class StudyKind { filter_delta, filter_r, lrom_dt, lrom_delta, lrom_r };

std::string to_string(StudyKind kind);
std::optional<StudyKind> parse_study_kind(const std::string& name);

/// Error measured at the final time of an L-ROM run.
enum class FinalErrorVariant {
  rom_state,          // ||u^M - u_r^M||
  filtered_snapshot,  // ||u^M - filter(u^M)||
};

struct StudyConfig {
  StudyKind kind = StudyKind::filter_delta;
  std::size_t mesh_n = 64;
  double snapshot_dt = 1e-2;
  std::size_t snapshot_steps = 100;
  std::size_t r = 95;
  double delta = 1e-2;
  double dt = 1e-4;
  double nu = 1e-3;
  double t_final = 1.0;
  std::vector<double> sweep;
  std::string out;
  std::string cache_dir;
  Linearization linearization = Linearization::picard_implicit;
  H1Convention h1 = H1Convention::full_norm;
  FinalErrorVariant error_variant = FinalErrorVariant::rom_state;
  std::size_t threads = 0;  // 0: hardware concurrency

  /// Fixed parameters and sweep grid for a study kind.
  static StudyConfig defaults(StudyKind kind);

  /// Throws std::invalid_argument on an empty or non-monotone sweep or a
  /// non-positive fixed parameter.
  void validate() const;
};

struct Regression {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

/// Ordinary least squares on (ln x, ln y). Throws std::invalid_argument on
/// fewer than two points, mismatched lengths or non-positive values.
Regression loglog_regression(std::span<const double> xs, std::span<const double> ys);

struct FilterErrors {
  double l2 = 0.0;  // average squared L2 error
  double h1 = 0.0;  // average squared gradient error
};

/// Average squared filtering errors over all snapshots.
FilterErrors avg_filter_errors(const PODBasis& basis, std::size_t r, double delta,
                               const SnapshotSet& snapshots, const SymmetricOperator& mass,
                               const SymmetricOperator& stiffness);

/// L2 norm of exact_final minus the ROM state (or minus the filtered exact
/// state for FinalErrorVariant::filtered_snapshot).
double final_time_error(const ROMTrajectory& traj, const Vector& exact_final,
                        const PODBasis& basis, const SymmetricOperator& mass,
                        FinalErrorVariant variant = FinalErrorVariant::rom_state,
                        const FilterOperator* filter = nullptr);

struct StudyRecord {
  double value = 0.0;
  bool ok = false;
  std::string error;
  std::optional<double> e_l2;
  std::optional<double> e_h1;
  std::optional<double> lambda_l2;
  std::optional<double> lambda_h1;
  std::optional<double> slope_running;
  // L-ROM diagnostics
  std::size_t picard_max = 0;
  double picard_mean = 0.0;
  std::optional<double> stability_bound;
  std::optional<bool> stability_bounded;
};

struct StudyResult {
  StudyConfig config;
  std::vector<StudyRecord> records;
  std::optional<Regression> fit_l2;  // primary error vs sweep abscissa
  std::optional<Regression> fit_h1;  // filter studies only
  std::vector<std::string> warnings;
  std::size_t rank = 0;  // POD dimension d

  /// 0 success, 3 sweep-point failure(s), 4 regression impossible.
  int exit_code() const;
};

/// Shared, read-only setup: mesh, space, operators, snapshots and POD basis.
/// Tensor and forcing projections are built on first use for the largest
/// requested r and sliced afterwards; those caches are mutex guarded.
class Laboratory {
 public:
  struct Options {
    std::size_t mesh_n = 64;
    double snapshot_dt = 1e-2;
    std::size_t snapshot_steps = 100;
    double nu = 1e-3;
    PODOptions pod;
    std::string cache_dir;
  };

  explicit Laboratory(const Options& options);

  const Options& options() const { return options_; }
  const VelocitySpace& space() const { return *space_; }
  const SymmetricOperator& mass() const { return mass_; }
  const SymmetricOperator& stiffness() const { return stiffness_; }
  const AnalyticSolution& solution() const { return solution_; }
  const SnapshotSet& snapshots() const { return snapshots_; }
  const PODBasis& basis() const { return basis_; }
  bool loaded_from_cache() const { return from_cache_; }

  /// Tensor on the leading r modes (built once for the largest r seen).
  TrilinearTensor tensor(std::size_t r);

  /// Projected forcing at t_k = k dt, k = 0..steps, on the leading r modes.
  Matrix forcing(std::size_t r, double dt, std::size_t steps);

  /// Reduced operators for one L-ROM configuration.
  ROMOperators rom_operators(const LROMConfig& cfg);

  /// Nodal interpolant of the exact velocity at time t.
  Vector exact_state(double t) const;

 private:
  Options options_;
  std::unique_ptr<VelocitySpace> space_;
  SymmetricOperator mass_;
  SymmetricOperator stiffness_;
  AnalyticSolution solution_;
  SnapshotSet snapshots_;
  PODBasis basis_;
  bool from_cache_ = false;
  std::mutex mutex_;
  std::unique_ptr<TrilinearTensor> tensor_;
  std::map<std::pair<std::uint64_t, std::size_t>, Matrix> forcing_;
};

/// Run one sweep. Point failures are recorded, warned about, and excluded
/// from the regression.
StudyResult run_study(Laboratory& lab, const StudyConfig& cfg, std::ostream* log = nullptr);
StudyResult run_study(const StudyConfig& cfg, std::ostream* log = nullptr);

/// Header: param,value,e_l2,e_h1,lambda_l2,lambda_h1,slope_running
void write_csv(const StudyResult& result, std::ostream& out);
/// "log10(x) log10(y)" pairs, a blank line, then samples of the fitted line.
void write_plot_data(const StudyResult& result, std::ostream& out);

/// Regression abscissa of a record (sweep value, or Lambda_H1 for r sweeps).
double study_abscissa(const StudyResult& result, const StudyRecord& record);

}  // namespace romlab
