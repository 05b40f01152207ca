#include "sbrl/pendulum_env.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace sbrl {
namespace {

void require(bool ok, const char* what) {
  if (!ok) {
    throw std::invalid_argument(std::string("PhysicsParams: ") + what);
  }
}

}  // namespace

void PhysicsParams::validate() const {
  require(std::isfinite(pendulum_length) && pendulum_length > 0.0, "pendulum_length must be > 0");
  require(std::isfinite(gravity) && gravity > 0.0, "gravity must be > 0");
  require(std::isfinite(pitch_damping) && pitch_damping >= 0.0, "pitch_damping must be >= 0");
  require(std::isfinite(command_gain), "command_gain must be finite");
  require(std::isfinite(accel_limit) && accel_limit > 0.0, "accel_limit must be > 0");
  require(std::isfinite(control_period) && control_period > 0.0, "control_period must be > 0");
  require(std::isfinite(substep) && substep > 0.0, "substep must be > 0");
  require(std::isfinite(init_pitch), "init_pitch must be finite");
  require(std::isfinite(init_pitch_jitter) && init_pitch_jitter >= 0.0,
          "init_pitch_jitter must be >= 0");
  require(std::isfinite(warmup_time) && warmup_time >= 0.0, "warmup_time must be >= 0");
  const double ratio = control_period / substep;
  const double n = std::round(ratio);
  require(n >= 1.0 && std::abs(ratio - n) <= 1e-9 * n,
          "substep must divide control_period exactly");
}

int PhysicsParams::substeps_per_step() const {
  return static_cast<int>(std::round(control_period / substep));
}

void PidGains::validate() const {
  if (!(std::isfinite(kp) && std::isfinite(ki) && std::isfinite(kd))) {
    throw std::invalid_argument("PidGains: gains must be finite");
  }
  if (!(integral_clamp > 0.0) || !std::isfinite(integral_clamp)) {
    throw std::invalid_argument("PidGains: integral_clamp must be > 0");
  }
}

double deg_to_rad(double deg) { return deg * (std::numbers::pi / 180.0); }
double rad_to_deg(double rad) { return rad * (180.0 / std::numbers::pi); }

SimState advance(const SimState& state, double command, const PhysicsParams& params) {
  const double base_accel =
      std::clamp(params.command_gain * command, -params.accel_limit, params.accel_limit);
  const double h = params.substep;
  const double gl = params.gravity / params.pendulum_length;
  const double al = base_accel / params.pendulum_length;

  SimState next = state;
  for (int i = 0, n = params.substeps_per_step(); i < n; ++i) {
    const double pitch_accel =
        gl * std::sin(next.pitch) - al * std::cos(next.pitch) - params.pitch_damping * next.pitch_rate;
    // Semi-implicit Euler: velocities first, positions from the new velocities.
    next.pitch_rate += h * pitch_accel;
    next.base_vel += h * base_accel;
    next.pitch += h * next.pitch_rate;
    next.base_pos += h * next.base_vel;
  }
  next.sim_time = state.sim_time + params.control_period;
  return next;
}

SimState reset(const PhysicsParams& params, Rng& rng) {
  params.validate();
  SimState state;
  const auto settle_steps =
      static_cast<long>(std::floor(params.warmup_time / params.control_period + 1e-9));
  for (long i = 0; i < settle_steps; ++i) {
    state = advance(state, 0.0, params);
  }
  state.sim_time = 0.0;
  const double u = rng.uniform01();
  state.pitch += params.init_pitch + params.init_pitch_jitter * (2.0 * u - 1.0);
  return state;
}

StepResult step(const SimState& state, double command, const PhysicsParams& params,
                double limit_deg) {
  if (!std::isfinite(command)) {
    throw std::invalid_argument("step: command must be finite");
  }
  StepResult out;
  out.state = advance(state, command, params);
  out.terminated = is_fallen(out.state, limit_deg);
  return out;
}

bool is_fallen(const SimState& state, double limit_deg) {
  return std::abs(rad_to_deg(state.pitch)) >= limit_deg;
}

SimState mirror(const SimState& state) {
  return {-state.pitch, -state.pitch_rate, -state.base_pos, -state.base_vel, state.sim_time};
}

PidOutput pid_action(const SimState& state, const PidGains& gains, const PidMemory& memory,
                     double control_period) {
  const double error = rad_to_deg(state.pitch);
  PidOutput out;
  out.memory.integral = std::clamp(memory.integral + error * control_period,
                                   -gains.integral_clamp, gains.integral_clamp);
  out.memory.prev_error = error;
  const double derivative = (error - memory.prev_error) / control_period;
  out.command = gains.kp * error + gains.ki * out.memory.integral + gains.kd * derivative;
  return out;
}

}  // namespace sbrl
