#pragma once

#include "sbrl/rng.hpp"

namespace sbrl {

/// Continuous state of the two-wheeled robot. Pitch is positive when the
/// chassis leans forward.
struct SimState {
  double pitch = 0.0;       // rad
  double pitch_rate = 0.0;  // rad/s
  double base_pos = 0.0;    // m
  double base_vel = 0.0;    // m/s
  double sim_time = 0.0;    // s

  friend bool operator==(const SimState&, const SimState&) = default;
};

/// Damped inverted pendulum on an accelerating base. The base acceleration is
/// proportional to the motor command and saturates at `accel_limit`.
struct PhysicsParams {
  double pendulum_length = 0.5;   // m
  double gravity = 9.81;          // m/s^2
  double pitch_damping = 8.0;     // 1/s
  double command_gain = 0.02;     // (m/s^2) per command unit
  double accel_limit = 8.0;       // m/s^2
  double control_period = 0.05;   // s
  double substep = 0.01;          // s
  double init_pitch = 0.0;        // rad, offset applied at reset
  double init_pitch_jitter = 0.0175;  // rad, half-width of the uniform draw
  double warmup_time = 1.0;       // s of zero-command settling before release

  /// Throws std::invalid_argument when a field is out of range or the substep
  /// does not divide the control period.
  void validate() const;
  int substeps_per_step() const;

  friend bool operator==(const PhysicsParams&, const PhysicsParams&) = default;
};

struct PidGains {
  double kp = 60.0;
  double ki = 5.0;
  double kd = 15.0;
  double integral_clamp = 50.0;

  void validate() const;

  friend bool operator==(const PidGains&, const PidGains&) = default;
};

struct PidMemory {
  double integral = 0.0;
  double prev_error = 0.0;
};

struct StepResult {
  SimState state;
  bool terminated = false;
};

struct PidOutput {
  double command = 0.0;
  PidMemory memory;
};

double deg_to_rad(double deg);
double rad_to_deg(double rad);

/// Places the robot upright at rest, lets it settle for `warmup_time` with
/// zero command, then releases it at `init_pitch` plus a uniform jitter with
/// the clock restarted at zero. Consumes exactly one draw from `rng`.
SimState reset(const PhysicsParams& params, Rng& rng);

/// Integrates one control period without a termination check.
SimState advance(const SimState& state, double command, const PhysicsParams& params);

/// Advances one control period and reports whether the post-step pitch has
/// reached the limit. Throws std::invalid_argument on a non-finite command.
StepResult step(const SimState& state, double command, const PhysicsParams& params,
                double limit_deg);

/// True iff |pitch| in degrees is at or beyond `limit_deg`.
bool is_fallen(const SimState& state, double limit_deg);

/// Reflection through the upright equilibrium (time is unchanged).
SimState mirror(const SimState& state);

/// PID on the pitch error in degrees. The error is measured as pitch minus the
/// upright setpoint so that positive gains push the base under the fall.
PidOutput pid_action(const SimState& state, const PidGains& gains, const PidMemory& memory,
                     double control_period);

}  // namespace sbrl
