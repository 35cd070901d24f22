#pragma once

#include <string>

namespace lindblad {

// Constants of an exponential contraction bound K e^{-gamma t}, K >= 1.
struct BaseContraction {
  double K = 1.0;
  double gamma = 1.0;
};

struct PerturbedContraction {
  double K_tilde = 1.0;
  double gamma_tilde = 0.0;
  double x_star = 0.0;  // inner maximizer; infinity when the sup is a limit
  bool feasible = false;
  bool limit_case = false;  // value taken from an analytic limit, not a search
  std::string note;
};

// Contraction constants surviving a generator perturbation of 1->1 norm
// deltaL. Feasible iff deltaL < gamma / (1 + ln K). K = 1 reduces exactly to
// gamma - deltaL with K unchanged; deltaL = 0 returns the base constants.
PerturbedContraction perturbed_rate(const BaseContraction& base, double deltaL);

// Contraction constants when the generator drifts at 1->1-norm speed l and
// every frozen-time generator contracts with (K0, gamma0). K0 = 1 yields
// (gamma0, 1) for any l; otherwise the windowed bound is maximized over the
// window size.
PerturbedContraction slow_drive_rate(const BaseContraction& base0, double l);

// Small-drive test: passes when v_max < gamma / (2 + 2 ln K); the commutator
// bound ||[V, .]|| <= 2 ||V||_inf then feeds perturbed_rate.
PerturbedContraction small_drive_check(const BaseContraction& base,
                                       double v_max);

// Slow-drive test: passes when
// h_dot_max < 2 gamma0^2 / (3 + 2 ln K0 + ln^2 K0), then feeds
// slow_drive_rate with l = 2 h_dot_max.
PerturbedContraction slow_drive_check(const BaseContraction& base0,
                                      double h_dot_max);

struct TimeAverageResult {
  bool pass = false;      // generic condition avg < (1 - K e^{-gamma T}) / T
  bool concrete = false;  // T >= ln(4K)/gamma and avg <= 1/(2T)
  double K_D = 0.0;       // 4/3 when concrete
  double gamma_D = 0.0;   // ln(4/3)/T when concrete
  std::string note;
};

// Window-averaged perturbation test over horizon T > ln(K)/gamma. `avg` is
// the supremum over length-T windows of the window-averaged perturbation
// size; both recipes are evaluated on it.
TimeAverageResult time_average_check(const BaseContraction& base, double avg,
                                     double T);

}  // namespace lindblad
