// SPDX-License-Identifier: Apache-2.0
//
// Simulation-free machinery: the two coupled 1-D projected SDEs of the bridge
// process, extraction of the Riemannian-normal parameters (alpha_t, rho_t)
// from their mean projections, and construction / persistence of the
// precomputed parameter table used during training.

#pragma once

#include <cstdint>
#include <filesystem>
#include <utility>
#include <vector>

#include "rdlm/kummer.hpp"
#include "rdlm/rng.hpp"
#include "rdlm/schedules.hpp"
#include "rdlm/types.hpp"

namespace rdlm {

struct ProjectedMeans {
  std::vector<double> t;       // K+1 grid nodes on [0, horizon]
  std::vector<double> ezT;     // mean <X_t, X_T>
  std::vector<double> ez0;     // mean <X_t, X_0>
  std::vector<double> ezT_se;  // standard errors of the means
  std::vector<double> ez0_se;
};

// Euler-Maruyama on the coupled scalar SDEs for z^T = <X_t, X_T> and
// z^0 = <X_t, X_0>, N trajectories with per-trajectory substreams, initial
// z^T = psi0 and z^0 = 1. dim is the ambient sphere dimension (drift factor
// (dim-1)). States are clamped into (-1+eps, 1-eps). noise_scale = 0 gives
// the deterministic projection ODE.
ProjectedMeans simulate_projected(double psi0, const NoiseSchedule& schedule,
                                  Index dim, Index n_traj, int k_steps,
                                  const Rng& root, double noise_scale = 1.0);

struct ExtractResult {
  double alpha;
  double rho;
  bool clamped;
};

// alpha = sqrt((r - cos phi0)^2 / (sin^2 phi0 + (r - cos phi0)^2)) with
// r = EzT/Ez0, clamped into [0, sin phi0]; rho inverts the damped Kummer
// function at Ez0 / sqrt(1 - alpha^2) with the boundary policy of
// KummerEval::invert_clamped.
ExtractResult extract_params(double ezT, double ez0, double phi0,
                             const KummerEval& kummer);

struct TableRow {
  double t;
  double alpha;
  double rho;
};

struct PrecomputedTable {
  Index dim = 0;  // ambient sphere dimension
  double psi0 = 0.0;
  std::uint64_t seed = 0;
  NoiseSchedule schedule;
  Index n_traj = 0;
  double calibration = 1.0;  // constant rho scaling fitted for small dim
  std::vector<TableRow> rows;

  double sin_phi0() const;
  // Piecewise-linear in t, exact at grid nodes.
  std::pair<double, double> interpolate(double t) const;

  void save(const std::filesystem::path& file) const;
  void save_csv(const std::filesystem::path& file) const;
  static PrecomputedTable load(const std::filesystem::path& file);
};

struct BuildOptions {
  Index n_traj = 8192;
  int k_steps = 1024;
  // rho calibration below this ambient dimension (least-squares scalar fitted
  // against a simulated bridge at 8 checkpoints).
  Index calibrate_below_dim = 16;
  Index calib_traj = 2048;
  int calib_steps = 512;
};

// Full table construction. u is the process initial point; its projection
// onto every token vertex must be identical (radial symmetry), which is
// verified over the first dim-1 coordinates.
PrecomputedTable build_table(const Vec& u, const NoiseSchedule& schedule,
                             const BuildOptions& opts, const Rng& root);

}  // namespace rdlm
