#pragma once

#include <string>
#include <vector>

#include "triqed/exact.hpp"

namespace triqed {

// Constant part of the branch phase, C_{j,na} = E_{j,na,0}.
struct BranchPhase {
  int j = 1, na = 0;
  double c_const = 0;
};
BranchPhase branch_phase(const CouplingSet& c, int j, int na);

// Two dressed branches sharing one initial mirror coherent state |beta>.
struct EchoSpec {
  int j1 = 1, na = 0;
  int j2 = 2, ma = 0;
  Complex beta = 0.0;
  double delta_echo = 0;  // alpha_{j1,na} - alpha_{j2,ma}
};
EchoSpec make_echo_spec(const CouplingSet& c, int j1, int na, int j2, int ma,
                        Complex beta);

// exp(-i H_branch t)|beta> stays coherent: amplitude
// alpha + (beta - alpha) e^{-i wM t} with total phase
// -C t + alpha (Im beta - Im[(beta - alpha) e^{-i wM t}]); the second term is
// the geometric phase of the displaced-frame rotation.
struct BranchCoherent {
  Complex amplitude;
  double phase;
};
BranchCoherent evolve_branch_coherent(const CouplingSet& c, int j, int na,
                                      Complex beta, double t);

// D(t) = <branch1(t)|branch2(t)>, both branches started from |beta>.
Complex decoherence_factor(const CouplingSet& c, const EchoSpec& s, double t);

// |D(t)|^2 = exp(2 delta_echo^2 (cos wM t - 1)); beta-free and 2 pi / wM
// periodic.
double loschmidt_echo(const CouplingSet& c, const EchoSpec& s, double t);

struct TimeSeries {
  RealVector times;
  RealVector values;
  std::string label;
};

RealVector time_grid(double t0, double t1, int points);

std::vector<TimeSeries> echo_series(const CouplingSet& c,
                                    const std::vector<EchoSpec>& specs,
                                    const RealVector& times);

}  // namespace triqed
