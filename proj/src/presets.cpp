#include "foursplit/presets.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace foursplit {

std::string to_string(PresetName name) {
  switch (name) {
    case PresetName::kDys: return "DYS";
    case PresetName::kDysBz: return "DYS_BZ";
    case PresetName::kPg: return "PG";
    case PresetName::kPdc: return "PDC";
    case PresetName::kGpp: return "GPP";
    case PresetName::kFourSplit: return "FOUR_SPLIT";
  }
  return "?";
}

PresetName parse_preset_name(const std::string& text) {
  std::string key;
  for (char c : text) key += c == '-' ? '_' : static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  for (PresetName n : {PresetName::kDys, PresetName::kDysBz, PresetName::kPg, PresetName::kPdc, PresetName::kGpp,
                       PresetName::kFourSplit})
    if (key == to_string(n)) return n;
  throw ArgumentError("unknown preset '" + text + "'");
}

AlgorithmPreset make_preset(PresetName name, double tau, double safety) {
  AlgorithmPreset p;
  p.name = name;
  p.safety = safety;
  switch (name) {
    case PresetName::kFourSplit:
      p.tau = tau;
      break;
    case PresetName::kDysBz:
      p.policy = StepPolicy::kBianZhang;
      break;
    case PresetName::kPg:
    case PresetName::kPdc:
    case PresetName::kGpp:
      p.rewire = Rewire::kFoldFIntoH;
      break;
    case PresetName::kDys:
      break;
  }
  return p;
}

ProblemSpec fold_f_into_h(const ProblemSpec& spec) {
  ProblemSpec out = spec;
  out.f_value = nullptr;
  out.f_grad = nullptr;
  out.f_prox = nullptr;
  const bool hf = spec.has_f(), hh = spec.has_h();
  if (hf || hh) {
    auto fv = spec.f_value, hv = spec.h_value;
    auto fg = spec.f_grad, hg = spec.h_grad;
    out.h_value = [fv, hv](const Vector& x) { return (fv ? fv(x) : 0.0) + (hv ? hv(x) : 0.0); };
    out.h_grad = [fg, hg](const Vector& x) -> Vector {
      if (!fg) return hg(x);
      if (!hg) return fg(x);
      return fg(x) + hg(x);
    };
  }
  const CurvatureParams& p = spec.params;
  out.params.l_h = p.l_f + p.l_h;
  out.params.rho_h = p.rho_f + p.rho_h;
  out.params.sigma_h = p.sigma_f + p.sigma_h;
  out.params.l_f = 0.0;
  out.params.rho_f = 0.0;
  out.params.sigma_f = 0.0;
  out.name = spec.name + "+fold";
  return out;
}

ProblemSpec drop_p(const ProblemSpec& spec) {
  ProblemSpec out = spec;
  out.p_value = nullptr;
  out.p_subgrad = nullptr;
  out.params.rho_p = 0.0;
  out.name = spec.name + "-p";
  return out;
}

PresetInstance instantiate(const AlgorithmPreset& preset, const ProblemSpec& spec) {
  const PresetName n = preset.name;
  const bool needs_p_free = n == PresetName::kDys || n == PresetName::kDysBz || n == PresetName::kPg;
  PresetInstance out;
  switch (preset.rewire) {
    case Rewire::kIdentity: out.spec = spec; break;
    case Rewire::kFoldFIntoH: out.spec = fold_f_into_h(spec); break;
    case Rewire::kDropP: out.spec = drop_p(spec); break;
  }
  if (needs_p_free && out.spec.has_p())
    throw PresetInapplicable(to_string(n) + " requires p = 0 but the problem has a nonzero p");

  const CurvatureParams& prm = out.spec.params;
  std::ostringstream note;
  note.precision(6);
  if (preset.policy == StepPolicy::kFixed) {
    const double beta = prm.rho_p > 0.0 ? 1.0 / prm.rho_p : kInfinity;
    out.cfg = make_config(preset.tau, preset.fixed_alpha, beta);
    note << "fixed alpha=" << preset.fixed_alpha;
  } else if (n == PresetName::kPg) {
    const double s = prm.l_f + prm.l_h;
    if (s == 0.0) throw PresetInapplicable("PG needs a smooth part");
    out.cfg = make_config(1.0, preset.safety / s, kInfinity);
    note << "gamma=" << preset.safety << "/(L_f+L_h)=" << out.cfg.gamma;
  } else if (n == PresetName::kDys || n == PresetName::kDysBz) {
    double alpha;
    if (preset.policy == StepPolicy::kBianZhang) {
      alpha = preset.safety * bian_zhang_alpha(prm);
      note << "alpha=" << preset.safety << "*bian-zhang=" << alpha;
    } else {
      const StepsizeBound b = compute_alpha_bar(prm, 1.0);
      if (std::isinf(b.alpha_bar)) throw PresetInapplicable("DYS needs a smooth part");
      alpha = preset.safety * b.alpha_bar;
      note << "alpha=" << preset.safety << "*alpha_bar=" << alpha;
    }
    out.cfg = make_config(1.0, alpha, kInfinity);
  } else {
    const double tau = (n == PresetName::kFourSplit) ? preset.tau : 1.0;
    out.cfg = make_step_config(prm, tau, preset.safety);
    note << "tau=" << tau << " alpha=" << out.cfg.alpha << " beta=" << out.cfg.beta;
  }
  out.note = note.str();
  return out;
}

}  // namespace foursplit
