#include "triqed/decoherence.hpp"

#include <cmath>
#include <sstream>

#include "triqed/errors.hpp"

namespace triqed {

BranchPhase branch_phase(const CouplingSet& c, int j, int na) {
  return BranchPhase{j, na, eigenvalue(c, j, na, 0)};
}

EchoSpec make_echo_spec(const CouplingSet& c, int j1, int na, int j2, int ma,
                        Complex beta) {
  EchoSpec s;
  s.j1 = j1;
  s.na = na;
  s.j2 = j2;
  s.ma = ma;
  s.beta = beta;
  s.delta_echo =
      displacement_alpha(c, j1, na) - displacement_alpha(c, j2, ma);
  return s;
}

BranchCoherent evolve_branch_coherent(const CouplingSet& c, int j, int na,
                                      Complex beta, double t) {
  const double alpha = displacement_alpha(c, j, na);
  const double c_const = branch_phase(c, j, na).c_const;
  const Complex rotated = (beta - alpha) * std::exp(Complex(0, -c.omegaM * t));
  BranchCoherent out;
  out.amplitude = alpha + rotated;
  // -C t plus the geometric phase the displaced frame picks up while the
  // coherent amplitude circles alpha
  out.phase = -c_const * t + alpha * (beta.imag() - rotated.imag());
  return out;
}

Complex decoherence_factor(const CouplingSet& c, const EchoSpec& s, double t) {
  const BranchCoherent b1 = evolve_branch_coherent(c, s.j1, s.na, s.beta, t);
  const BranchCoherent b2 = evolve_branch_coherent(c, s.j2, s.ma, s.beta, t);
  const Complex u1 = b1.amplitude, u2 = b2.amplitude;
  // <u1|u2> = exp(-|u1-u2|^2/2 + i Im(conj(u1) u2))
  const double overlap_mag = -0.5 * std::norm(u1 - u2);
  const double overlap_arg = std::imag(std::conj(u1) * u2);
  return std::exp(Complex(overlap_mag, overlap_arg + b2.phase - b1.phase));
}

double loschmidt_echo(const CouplingSet& c, const EchoSpec& s, double t) {
  const double d = s.delta_echo;
  return std::exp(2.0 * d * d * (std::cos(c.omegaM * t) - 1.0));
}

RealVector time_grid(double t0, double t1, int points) {
  if (points < 2) throw ConfigError("time grid needs at least two points");
  if (!(t1 > t0)) throw ConfigError("time grid needs t1 > t0");
  RealVector t(points);
  const double step = (t1 - t0) / (points - 1);
  for (int i = 0; i < points; ++i) t(i) = t0 + step * i;
  t(points - 1) = t1;
  return t;
}

std::vector<TimeSeries> echo_series(const CouplingSet& c,
                                    const std::vector<EchoSpec>& specs,
                                    const RealVector& times) {
  if (times.size() == 0) throw ConfigError("echo series needs a nonempty grid");
  for (Eigen::Index i = 1; i < times.size(); ++i)
    if (!(times(i) > times(i - 1)))
      throw ConfigError("time grid must be strictly increasing");

  std::vector<TimeSeries> out;
  out.reserve(specs.size());
  for (const EchoSpec& s : specs) {
    TimeSeries series;
    series.times = times;
    series.values.resize(times.size());
    for (Eigen::Index i = 0; i < times.size(); ++i)
      series.values(i) = loschmidt_echo(c, s, times(i));
    std::ostringstream label;
    label << "LE_b" << s.j1 << "n" << s.na << "_b" << s.j2 << "m" << s.ma;
    series.label = label.str();
    out.push_back(std::move(series));
  }
  return out;
}

}  // namespace triqed
