// Copyright 2026 The thermoflow Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef THERMOFLOW_ANALYSIS_HPP
#define THERMOFLOW_ANALYSIS_HPP

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "thermoflow/flow.hpp"
#include "thermoflow/systems.hpp"

namespace thermoflow {

/// One-parameter curve through state space used to search for equidistant
/// partners.
struct ConstraintLine {
  std::string name;
  std::function<State(double)> at;
};

/// s ↦ (s, η₂): isobar for the ideal gas, iso-μ line for rigid gases.
ConstraintLine constant_eta2_line(double eta2);
/// s ↦ (T, s): fixed temperature, varying η₂.
ConstraintLine constant_temperature_line(double T);
/// s ↦ q + s (through − q).
ConstraintLine ray_line(const State& q, const State& through);

struct Bracket {
  double lo = 0.0;
  double hi = 0.0;
};

/// Two states at equal divergence from the same target.
struct EquidistantPair {
  State hot;
  State cold;
  State q;
  double divergence_value = 0.0;
  State solved;            ///< the state found on the line
  double parameter = 0.0;  ///< its line parameter
};

/// Finds the state on `line` whose divergence from q equals that of
/// `given`, by bisection on the bracket to relative 1e-12 in the parameter.
/// Throws BracketError when the bracket does not straddle the level.
EquidistantPair solve_equidistant(const ThermoSystem& system, const State& q, const State& given,
                                  const ConstraintLine& line, Bracket bracket);

enum class Branch { kFirst, kSecond, kInconclusive };
std::string_view to_string(Branch branch);

/// A time at which both branches move at the same Riemannian speed.
struct SpeedMatch {
  double t = 0.0;
  double cubic_first = 0.0;   ///< C(γ̇¹, γ̇¹, γ̇¹)
  double cubic_second = 0.0;  ///< C(γ̇², γ̇², γ̇²)
  double delta_dd = 0.0;      ///< ΔD̈* = (C² − C¹) / λ
};

/// Interior extremum of ΔD* = D*(γ²) − D*(γ¹).
struct CriticalPoint {
  double t_grid = 0.0;
  double t_parabolic = 0.0;  ///< three-point parabola through the grid values
  double t_refined = 0.0;    ///< Brent search on the dense trajectories
  double value = 0.0;
  bool maximum = false;
};

struct AsymmetryReport {
  double t_star = 0.0;  ///< first speed-matching time
  double delta_dd = 0.0;
  double cubic_first = 0.0;
  double cubic_second = 0.0;
  Branch faster = Branch::kInconclusive;
  std::vector<SpeedMatch> matches;
  std::vector<CriticalPoint> extrema;
  /// Largest distance from an extremum of ΔD* to the nearest speed match.
  double coincidence_gap = 0.0;
};

/// Applies the cubic-form criterion to two relaxations sharing system,
/// target and rate. Throws GridError if the speeds differ but never cross.
AsymmetryReport classify_asymmetry(const ThermoSystem& system, const Trajectory& first,
                                   const Trajectory& second);

/// Interior extrema of ΔD* = D*(second) − D*(first), refined.
std::vector<CriticalPoint> divergence_gap_extrema(const ThermoSystem& system,
                                                  const Trajectory& first,
                                                  const Trajectory& second);

/// For isobaric ideal-gas relaxations from an equidistant pair: locates the
/// critical point t* of ΔD* and returns |T⁺T⁻ − T_q²| / T_q² there.
double isobaric_product_check(const ThermoSystem& system, const Trajectory& hot,
                              const Trajectory& cold, const State& q);

struct TurRow {
  double tau = 0.0;
  double delta_a = 0.0;
  double bound = 0.0;
  double ratio = 0.0;
};

/// δA(τ) = λ⁻¹ ∫₀^τ ||γ̇||² dt against L_γ(τ)² / (λτ) at each τ (snapped to
/// the nearest grid time).
std::vector<TurRow> tur_audit(const ThermoSystem& system, const Trajectory& trajectory,
                              double lambda, const std::vector<double>& taus);

struct HorseCarrotRow {
  double tau = 0.0;
  double delta_a = 0.0;
  double eps_bar = 0.0;
  double length = 0.0;
  double bound = 0.0;
  double ratio = 0.0;
};

/// δA against ε̄ L² / τ for a driven trajectory, with ε̄ the ||γ̇||²-weighted
/// mean of 1/λ.
HorseCarrotRow horse_carrot_audit(const ThermoSystem& system, const Trajectory& driven);

/// A := −λ³ C(grad D*_q, grad D*_q, grad D*_q).
double cubic_potential(const ThermoSystem& system, const State& state, const State& q,
                       double lambda);

struct MpembaOptions {
  double horizon = 20.0;
  int grid_points = 10001;
};

struct MpembaResult {
  double c = 1.5;
  double n0kb = 1.0;
  double lambda = 1.0;
  State q{275.0, -100000.0};
  State p_first{375.0, -100000.0};
  State p_second{300.0, -189487.5};
  double divergence_first = 0.0;
  double divergence_second = 0.0;
  double t_star = 0.0;           ///< speed-match time
  double t_star_critical = 0.0;  ///< refined extremum of ΔD*
  double delta_a = 0.0;          ///< A(γ¹) − A(γ²) at t*
  double delta_d_at_t_star = 0.0;
  Branch faster = Branch::kInconclusive;
  AsymmetryReport report;
  Trajectory first;
  Trajectory second;
};

/// Two relaxations of one mole of monoatomic ideal gas to (275 K, 100 kPa):
/// isobaric from 375 K and non-isobaric from (300 K, 189.4875 kPa).
MpembaResult mpemba_scenario(const MpembaOptions& options = {});

struct LevelSegment {
  State a;
  State b;
};

/// Polyline approximation of {p : D*_q(p) = level} by marching squares on an
/// nx × ny grid over [t_lo, t_hi] × [eta2_lo, eta2_hi].
std::vector<LevelSegment> divergence_level_set(const ThermoSystem& system, const State& q,
                                               double level, Bracket t_range, Bracket eta2_range,
                                               int nx, int ny);

struct SweepRow {
  double T = 0.0;
  double eta2 = 0.0;
  double t_star = 0.0;
  double delta_a = 0.0;
  Branch faster = Branch::kInconclusive;
};

/// Best-effort scan for Mpemba-like partners of `first`: for each candidate
/// temperature the η₂ on the equidistant level set is solved, both flows
/// are run and classified. Candidates without a partner or a speed match
/// are skipped.
std::vector<SweepRow> mpemba_sweep(const ThermoSystem& system, const State& q, const State& first,
                                   double lambda, const std::vector<double>& temperatures,
                                   Bracket eta2_bracket, const MpembaOptions& options = {});

}  // namespace thermoflow

#endif  // THERMOFLOW_ANALYSIS_HPP
