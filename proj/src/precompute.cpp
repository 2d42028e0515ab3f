// SPDX-License-Identifier: Apache-2.0

#include "rdlm/precompute.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <numbers>

#include "rdlm/bridges.hpp"
#include "rdlm/parallel.hpp"

namespace rdlm {
namespace {

constexpr double kZClamp = 1e-7;  // discretization noise crosses +-1
constexpr char kMagic[5] = {'R', 'N', 'T', 'B', '1'};

double clamp_z(double z) {
  return std::min(1.0 - kZClamp, std::max(-1.0 + kZClamp, z));
}

void put_u64(std::ostream& os, std::uint64_t v) {
  unsigned char buf[8];
  for (int i = 0; i < 8; ++i) buf[i] = static_cast<unsigned char>(v >> (8 * i));
  os.write(reinterpret_cast<const char*>(buf), 8);
}

void put_f64(std::ostream& os, double v) {
  std::uint64_t bits;
  std::memcpy(&bits, &v, 8);
  put_u64(os, bits);
}

std::uint64_t get_u64(std::istream& is) {
  unsigned char buf[8];
  is.read(reinterpret_cast<char*>(buf), 8);
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(buf[i]) << (8 * i);
  return v;
}

double get_f64(std::istream& is) {
  std::uint64_t bits = get_u64(is);
  double v;
  std::memcpy(&v, &bits, 8);
  return v;
}

}  // namespace

ProjectedMeans simulate_projected(double psi0, const NoiseSchedule& schedule,
                                  Index dim, Index n_traj, int k_steps,
                                  const Rng& root, double noise_scale) {
  if (n_traj < 1) throw InvariantError("simulate_projected: need n_traj >= 1");
  if (!(psi0 >= 0.0 && psi0 < 1.0))
    throw InvariantError("simulate_projected: psi0 outside [0, 1)");
  const double T = schedule.horizon;
  const double dt = T / k_steps;
  const double dfac = 0.5 * (double(dim) - 1.0);

  std::vector<double> gammas(k_steps), sigmas(k_steps);
  for (int k = 0; k < k_steps; ++k) {
    gammas[k] = schedule.gamma(k * dt);
    sigmas[k] = noise_scale * schedule.sigma(k * dt);
  }

  const int n_blocks = 16;
  // Per-block running sums and sums of squares at every grid node.
  std::vector<std::vector<double>> sum_t(n_blocks), sum_0(n_blocks);
  std::vector<std::vector<double>> sq_t(n_blocks), sq_0(n_blocks);
  for (auto& v : sum_t) v.assign(k_steps + 1, 0.0);
  for (auto& v : sum_0) v.assign(k_steps + 1, 0.0);
  for (auto& v : sq_t) v.assign(k_steps + 1, 0.0);
  for (auto& v : sq_0) v.assign(k_steps + 1, 0.0);

  parallel_blocks(
      n_traj,
      [&](Index lo, Index hi, int block) {
        auto& st = sum_t[block];
        auto& s0 = sum_0[block];
        auto& qt = sq_t[block];
        auto& q0 = sq_0[block];
        for (Index j = lo; j < hi; ++j) {
          Rng rng = root.stream("traj", static_cast<std::uint64_t>(j));
          double zt = psi0;
          double z0 = 1.0;
          st[0] += zt;
          s0[0] += z0;
          qt[0] += zt * zt;
          q0[0] += z0 * z0;
          for (int k = 0; k < k_steps; ++k) {
            const double g = gammas[k];
            const double s = sigmas[k];
            const double zt_c = clamp_z(zt);
            const double z0_c = clamp_z(z0);
            const double root_t = std::sqrt(1.0 - zt_c * zt_c);
            const double root_0 = std::sqrt(1.0 - z0_c * z0_c);
            const double acos_t = std::acos(zt_c);
            const double sq = std::sqrt(dt);
            zt += (g * acos_t * root_t - dfac * s * s * zt_c) * dt;
            z0 += (g * acos_t / root_t * (psi0 - z0_c * zt_c) -
                   dfac * s * s * z0_c) *
                  dt;
            if (s != 0.0) {
              zt += s * root_t * sq * rng.normal();
              z0 += s * root_0 * sq * rng.normal();
            }
            zt = clamp_z(zt);
            z0 = clamp_z(z0);
            st[k + 1] += zt;
            s0[k + 1] += z0;
            qt[k + 1] += zt * zt;
            q0[k + 1] += z0 * z0;
          }
        }
      },
      n_blocks);

  ProjectedMeans out;
  out.t.resize(k_steps + 1);
  out.ezT.assign(k_steps + 1, 0.0);
  out.ez0.assign(k_steps + 1, 0.0);
  out.ezT_se.assign(k_steps + 1, 0.0);
  out.ez0_se.assign(k_steps + 1, 0.0);
  const double n = double(n_traj);
  for (int k = 0; k <= k_steps; ++k) {
    out.t[k] = k * dt;
    double st = 0.0, s0 = 0.0, qt = 0.0, q0 = 0.0;
    for (int b = 0; b < n_blocks; ++b) {
      st += sum_t[b][k];
      s0 += sum_0[b][k];
      qt += sq_t[b][k];
      q0 += sq_0[b][k];
    }
    out.ezT[k] = st / n;
    out.ez0[k] = s0 / n;
    if (n_traj > 1) {
      out.ezT_se[k] =
          std::sqrt(std::max(0.0, (qt / n - out.ezT[k] * out.ezT[k]) / (n - 1)));
      out.ez0_se[k] =
          std::sqrt(std::max(0.0, (q0 / n - out.ez0[k] * out.ez0[k]) / (n - 1)));
    }
  }
  return out;
}

ExtractResult extract_params(double ezT, double ez0, double phi0,
                             const KummerEval& kummer) {
  if (!(phi0 > 0.0 && phi0 <= 0.5 * std::numbers::pi + 1e-12))
    throw InvariantError("extract_params: phi0 outside (0, pi/2]");
  const double c0 = std::cos(phi0);
  const double s0 = std::sin(phi0);
  ez0 = std::min(1.0 - kZClamp, std::max(kZClamp, ez0));
  ezT = clamp_z(ezT);
  const double r = ezT / ez0;
  const double q = (r - c0) * (r - c0);
  double alpha = std::sqrt(q / (s0 * s0 + q));
  alpha = std::min(alpha, s0);
  const double denom = std::sqrt(1.0 - alpha * alpha);
  const auto inv = kummer.invert_clamped(ez0 / denom);
  return {alpha, inv.rho, inv.clamped};
}

double PrecomputedTable::sin_phi0() const {
  return std::sqrt(std::max(0.0, 1.0 - psi0 * psi0));
}

std::pair<double, double> PrecomputedTable::interpolate(double t) const {
  const double T = schedule.horizon;
  if (t < 0.0 || t > T + 1e-12)
    throw InvariantError("interpolate: t outside [0, horizon]");
  t = std::min(t, T);
  const auto K = static_cast<Index>(rows.size()) - 1;
  const double pos = t / T * double(K);
  const Index i = std::min<Index>(K - 1, static_cast<Index>(pos));
  const double w = pos - double(i);
  if (w <= 0.0) return {rows[i].alpha, rows[i].rho};
  return {(1.0 - w) * rows[i].alpha + w * rows[i + 1].alpha,
          (1.0 - w) * rows[i].rho + w * rows[i + 1].rho};
}

void PrecomputedTable::save(const std::filesystem::path& file) const {
  std::ofstream os(file, std::ios::binary);
  if (!os) throw ArtifactError("cannot open table file for writing: " + file.string());
  os.write(kMagic, 5);
  const char pad[3] = {0, 0, 0};
  os.write(pad, 3);
  put_u64(os, static_cast<std::uint64_t>(dim));
  put_u64(os, static_cast<std::uint64_t>(rows.size() - 1));
  put_f64(os, psi0);
  put_u64(os, seed);
  put_f64(os, schedule.sigma0);
  put_f64(os, schedule.sigmaT);
  put_f64(os, schedule.horizon);
  put_u64(os, static_cast<std::uint64_t>(n_traj));
  put_f64(os, calibration);
  for (const auto& row : rows) {
    put_f64(os, row.t);
    put_f64(os, row.alpha);
    put_f64(os, row.rho);
  }
  if (!os) throw ArtifactError("failed writing table file: " + file.string());
}

void PrecomputedTable::save_csv(const std::filesystem::path& file) const {
  std::ofstream os(file);
  if (!os) throw ArtifactError("cannot open csv for writing: " + file.string());
  os << "t,alpha,rho\n";
  os.precision(17);
  for (const auto& row : rows)
    os << row.t << ',' << row.alpha << ',' << row.rho << '\n';
}

PrecomputedTable PrecomputedTable::load(const std::filesystem::path& file) {
  std::ifstream is(file, std::ios::binary);
  if (!is) throw ArtifactError("missing table file: " + file.string());
  char magic[8];
  is.read(magic, 8);
  if (!is || std::memcmp(magic, kMagic, 5) != 0)
    throw ArtifactError("not a parameter table: " + file.string());
  PrecomputedTable table;
  table.dim = static_cast<Index>(get_u64(is));
  const auto K = get_u64(is);
  table.psi0 = get_f64(is);
  table.seed = get_u64(is);
  const double s0 = get_f64(is);
  const double sT = get_f64(is);
  const double T = get_f64(is);
  table.schedule = NoiseSchedule(s0, sT, T);
  table.n_traj = static_cast<Index>(get_u64(is));
  table.calibration = get_f64(is);
  table.rows.resize(K + 1);
  for (auto& row : table.rows) {
    row.t = get_f64(is);
    row.alpha = get_f64(is);
    row.rho = get_f64(is);
  }
  if (!is) throw ArtifactError("truncated table file: " + file.string());
  return table;
}

namespace {

// Single scalar rho calibration: least squares between the model's predicted
// mean projection F(c rho_t) sqrt(1 - alpha_t^2) and the empirical
// <X_t, X_0> of a simulated bridge at 8 interior checkpoints.
double fit_calibration(const PrecomputedTable& table, const Vec& u,
                       const BuildOptions& opts, const Rng& root) {
  const double T = table.schedule.horizon;
  const int n_check = 8;
  std::vector<double> checks(n_check);
  for (int j = 0; j < n_check; ++j) checks[j] = (j + 1) * T / (n_check + 1);

  BridgeSpec spec{geom::SpherePoint::basis(table.dim, 0), table.schedule};
  const auto states = simulate_bridge_ensemble(
      u, spec, opts.calib_steps, 1e-3 * T, opts.calib_traj, checks,
      root.stream("calibrate"));

  std::vector<double> emp(n_check), alphas(n_check), rhos(n_check);
  for (int j = 0; j < n_check; ++j) {
    emp[j] = (states[j].transpose() * u).mean();
    const auto [a, r] = table.interpolate(checks[j]);
    alphas[j] = a;
    rhos[j] = r;
  }

  const Index dof = table.dim - 1;
  auto loss = [&](double c) {
    double acc = 0.0;
    for (int j = 0; j < n_check; ++j) {
      const double pred =
          kummer_f(c * rhos[j], dof) * std::sqrt(1.0 - alphas[j] * alphas[j]);
      const double diff = pred - emp[j];
      acc += diff * diff;
    }
    return acc;
  };

  double best_c = 1.0;
  double lo = 0.25, hi = 4.0;
  for (int level = 0; level < 3; ++level) {
    double best_l = loss(best_c);
    const int n_grid = 121;
    for (int i = 0; i < n_grid; ++i) {
      const double c = lo * std::pow(hi / lo, double(i) / (n_grid - 1));
      const double l = loss(c);
      if (l < best_l) {
        best_l = l;
        best_c = c;
      }
    }
    const double shrink = std::pow(hi / lo, 1.0 / 8.0);
    lo = best_c / shrink;
    hi = best_c * shrink;
  }
  return best_c;
}

}  // namespace

PrecomputedTable build_table(const Vec& u, const NoiseSchedule& schedule,
                             const BuildOptions& opts, const Rng& root) {
  const Index dim = u.size();
  if (dim < 2) throw InvariantError("build_table: dimension must be >= 2");
  if (std::abs(u.norm() - 1.0) > 1e-9)
    throw InvariantError("build_table: initial point must be unit norm");
  // Radial symmetry: the projection onto every token vertex must agree.
  for (Index k = 1; k + 1 < dim; ++k)
    if (std::abs(u[k] - u[0]) > 1e-9)
      throw InvariantError(
          "build_table: initial point is not radially symmetric over tokens");
  const double psi0 = u[0];
  const double phi0 = std::acos(geom::clamp_unit(psi0));

  PrecomputedTable table;
  table.dim = dim;
  table.psi0 = psi0;
  table.seed = root.seed();
  table.schedule = schedule;
  table.n_traj = opts.n_traj;

  const auto means = simulate_projected(psi0, schedule, dim, opts.n_traj,
                                        opts.k_steps, root.stream("projected"));
  const KummerEval kummer(dim - 1);

  table.rows.resize(opts.k_steps + 1);
  table.rows[0] = {0.0, 0.0, 0.0};
  for (int i = 1; i <= opts.k_steps; ++i) {
    const auto ext = extract_params(means.ezT[i], means.ez0[i], phi0, kummer);
    table.rows[i] = {means.t[i], ext.alpha, ext.rho};
  }
  // The bridge is exactly pinned at the horizon; the simulated last row only
  // carries noise there, so it is set to the analytic limit.
  table.rows[opts.k_steps] = {schedule.horizon, table.sin_phi0(), 0.0};

  if (dim < opts.calibrate_below_dim) {
    table.calibration = fit_calibration(table, u, opts, root);
    for (auto& row : table.rows) row.rho *= table.calibration;
  }
  return table;
}

}  // namespace rdlm
