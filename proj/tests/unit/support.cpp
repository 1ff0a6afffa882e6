#include "support.hpp"

namespace deepwave::testing {

const solver::ConformalWave& small_wave() {
  static const solver::ConformalWave wave = [] {
    solver::SolverConfig config;
    config.N = 256;
    config.L = 50.0;
    config.continuation_steps = 5;
    const auto params = solver::wave_params(1.0, 1.0, 0.9 * solver::minimum_speed(1.0, 1.0));
    return solver::continuation(params, config);
  }();
  return wave;
}

}  // namespace deepwave::testing
