#pragma once

// Programmatic versions of the shipped scenarios, built without the file
// parser so chain and interferometer tests do not depend on it.

#include "sqz/chain.hpp"

namespace sqz::test {

inline LossElement element(const char* name, double eta, LossCategory c) {
  return LossElement{name, Efficiency(eta), c};
}

inline CavityParams tabletop_src(double loss_rt = 0.003) {
  CavityParams p;
  p.length_m = 1.21;
  p.t_in = 0.10;
  p.loss_rt = loss_rt;
  p.detuning_hz = 10e6;
  return derive_rates(p);
}

inline CavityParams tabletop_filter(double hwhm_hz) {
  CavityParams p;
  p.t_in = 0.10;
  p.detuning_hz = -10e6;
  p.hwhm_hz = hwhm_hz;
  return derive_rates(p);
}

inline Scenario tabletop(double src_loss = 0.003) {
  Scenario sc;
  sc.name = "tabletop";
  sc.source.gen_db_at_dc = 5.7;
  sc.source.escape = 0.90;
  sc.source.bandwidth_hz = 20e6;
  const CavityParams src = tabletop_src(src_loss);
  sc.stages = {
      element("isolator", 0.94, LossCategory::isolator_rotator),
      element("filter_mode_matching", 0.95, LossCategory::mode_matching),
      CavityStage{CavityRole::filter, tabletop_filter(src.hwhm_hz)},
      element("rotator_double_pass", 0.97, LossCategory::isolator_rotator),
      element("src_mode_matching", 0.95, LossCategory::mode_matching),
      CavityStage{CavityRole::src, src},
      element("homodyne_mode_matching", 0.95, LossCategory::mode_matching),
      element("photodiode", 0.93, LossCategory::photodiode),
  };
  sc.grid = {5e6, 15e6, 201};
  return finalize(sc);
}

}  // namespace sqz::test
