#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "ukepler/generators.hpp"

namespace ukepler {

enum class IntegratorKind { RK4, RK45 };

struct FlowConfig {
  double dt = 1e-3;
  double t_end = 10.0;
  IntegratorKind integrator = IntegratorKind::RK4;
  double rel_tol = 1e-10;   // RK45 only
  double abs_tol = 1e-12;   // RK45 only
  double chart_switch_threshold = 4.0;
  int monitor_stride = 100;

  void validate() const;
};

struct PivotSwitch {
  double t;
  int from;
  int to;
};

// Conserved-quantity samples along a trajectory: the Hamiltonian, every
// angular momentum component Luv(e_a, e_b) (row-major over basis pairs),
// every LRL component, the two Casimir sums, and the pointwise
// Hamiltonian/angular-momentum/LRL relation residual.
struct MonitorSample {
  double t;
  double H;
  double L2;
  double A2;
  double hla;
  std::vector<double> Ls;
  std::vector<double> As;
};

struct TrajectoryRecord {
  std::vector<double> times;
  std::vector<PhasePoint> states;
  std::vector<MonitorSample> monitors;
  std::vector<PivotSwitch> switches;
  bool complete = true;
  std::string abort_reason;  // "collision" | "step_underflow" when incomplete
  double abort_time = 0.0;
};

// Hamilton's equations of the magnetized bracket:
// qdot^i = dH/dp_i, pdot_i = -dH/dq^i + sum_j F_ij dH/dp_j.
std::pair<std::vector<double>, std::vector<double>> vector_field(const PhasePoint& ph, double mu);

TrajectoryRecord integrate(const PhasePoint& initial, double mu, const FlowConfig& config);

// Residual of -2H (L^2 - n^2(n-1) mu^2/4) = (n/2)^2 (n - 1 - A^2),
// reported as |lhs - rhs| / (1 + |lhs| + |rhs|).
double hla_residual(const PhasePoint& ph, double mu);

MonitorSample monitor_sample(const PhasePoint& ph, double mu, double t);

// Initial data for the level-2 problem mapped from the light-cone picture:
// position (1,0,0) with momentum (0,vphi,vz) in the global spin-factor chart.
PhasePoint preset_circular();
PhasePoint preset_elliptic();

// Seeded generic initial condition with a prescribed energy; throws a domain
// error when the target is unreachable from the sampled cone point.
PhasePoint initial_condition(const AlgebraDescriptor& desc, double mu, double target_H,
                             uint64_t seed);

void write_trajectory_csv(std::ostream& os, const TrajectoryRecord& rec);

}  // namespace ukepler
