#pragma once

#include <string>
#include <vector>

#include "foursplit/oracles.hpp"
#include "foursplit/stepsize.hpp"

namespace foursplit {

/// Named algorithms obtained by specializing the four-term scheme.
///   DYS         Davis-Yin splitting (p = 0), tau = 1, beta infinite
///   DYS_BZ      DYS with the Bian-Zhang stepsize
///   PG          proximal gradient on g + (f + h), p = 0
///   PDC / GPP   proximal difference-of-convex / generalized proximal point
///   FOUR_SPLIT  the general scheme at any tau
enum class PresetName { kDys, kDysBz, kPg, kPdc, kGpp, kFourSplit };

enum class StepPolicy { kTheorem, kBianZhang, kFixed };
enum class Rewire { kIdentity, kFoldFIntoH, kDropP };

struct AlgorithmPreset {
  PresetName name = PresetName::kFourSplit;
  double tau = 1.0;
  StepPolicy policy = StepPolicy::kTheorem;
  double safety = 0.99;
  double fixed_alpha = 0.0;  // used by StepPolicy::kFixed
  Rewire rewire = Rewire::kIdentity;
};

std::string to_string(PresetName name);
/// Accepts the names above (case-insensitive, '-' or '_').
PresetName parse_preset_name(const std::string& text);

/// Default preset for a name. `tau` only matters for FOUR_SPLIT.
AlgorithmPreset make_preset(PresetName name, double tau = 1.0, double safety = 0.99);

/// f' = 0 and h' = f + h with L_h' = L_f + L_h, rho_h' = rho_f + rho_h,
/// sigma_h' = sigma_f + sigma_h. The input is not modified.
ProblemSpec fold_f_into_h(const ProblemSpec& spec);
/// p' = 0 and rho_p' = 0.
ProblemSpec drop_p(const ProblemSpec& spec);

struct PresetInstance {
  ProblemSpec spec;
  StepConfig cfg;
  std::string note;  // stepsize policy in words, for reports
};

/// Rewired problem and stepsizes for a preset. Throws PresetInapplicable when
/// DYS or PG meet a problem with p != 0, and propagates InfeasibleTau.
PresetInstance instantiate(const AlgorithmPreset& preset, const ProblemSpec& spec);

}  // namespace foursplit
