// plots.hpp - static SVG rendering of run logs and sweep grids. Output is a
// pure function of the data: identical inputs give byte-identical files.
#pragma once

#include <string>
#include <vector>

#include "so3l1/harness.hpp"

namespace so3l1 {

// Writes four files next to `prefix`:
//   <prefix>_config_errors.svg   psi, psi_hat, psi_tilde over time
//   <prefix>_omega_errors.svg    ||e_Omega|| family over time
//   <prefix>_theta.svg           theta vs theta_hat vs theta_filt, per axis
//   <prefix>_trajectory_xy.svg   planar path, actual vs desired
// Returns the paths written. Throws IoError; EmptyWindow for an empty log.
std::vector<std::string> emit_plots(const SimLog& log, const std::string& prefix);

// One heatmap file per m_a value, geo-l1 and euler-l1 side by side, failures
// masked grey: <prefix>_sweep_ma<value>.svg.
std::vector<std::string> emit_sweep_plots(const std::vector<SweepCell>& cells,
                                          const std::string& prefix);

}  // namespace so3l1
