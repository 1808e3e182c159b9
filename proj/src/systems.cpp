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

#include "thermoflow/systems.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include <boost/math/quadrature/gauss.hpp>

#include "thermoflow/errors.hpp"

namespace thermoflow {

namespace {

void require_finite(const State& state) {
  if (!std::isfinite(state.T) || !std::isfinite(state.eta2)) {
    throw DomainError("state has non-finite coordinates");
  }
}

void require_positive_temperature(const State& state) {
  if (!(state.T > 0.0)) {
    throw DomainError("temperature must be positive, got T=" + std::to_string(state.T));
  }
}

// All partial derivatives up to third order of ψ(T, μ) = K T^n h(μ/T), given
// h and its first three derivatives at u = μ/T. Both rigid-gas potentials
// have this homogeneous form.
struct HomogeneousJet {
  double psi, d_t, d_m;
  double d_tt, d_tm, d_mm;
  double d_ttt, d_ttm, d_tmm, d_mmm;
};

HomogeneousJet homogeneous_jet(double n, double scale, double T, double mu,
                               const std::array<double, 4>& h) {
  const double u = mu / T;
  const double p0 = scale * std::pow(T, n);
  const double p1 = p0 / T;
  const double p2 = p1 / T;
  const double p3 = p2 / T;
  HomogeneousJet j{};
  j.psi = p0 * h[0];
  j.d_t = p1 * (n * h[0] - u * h[1]);
  j.d_m = p1 * h[1];
  j.d_tt = p2 * (n * (n - 1) * h[0] - 2 * (n - 1) * u * h[1] + u * u * h[2]);
  j.d_tm = p2 * ((n - 1) * h[1] - u * h[2]);
  j.d_mm = p2 * h[2];
  j.d_ttt = p3 * (n * (n - 1) * (n - 2) * h[0] - 3 * (n - 1) * (n - 2) * u * h[1] +
                  3 * (n - 2) * u * u * h[2] - u * u * u * h[3]);
  j.d_ttm = p3 * ((n - 1) * (n - 2) * h[1] - 2 * (n - 2) * u * h[2] + u * u * h[3]);
  j.d_tmm = p3 * ((n - 2) * h[2] - u * h[3]);
  j.d_mmm = p3 * h[3];
  return j;
}

SymTensor2 jet_metric(const HomogeneousJet& j) { return {j.d_tt, j.d_tm, j.d_mm}; }

SymTensor3 jet_cubic(const HomogeneousJet& j) { return {-j.d_ttt, -j.d_ttm, -j.d_tmm, -j.d_mmm}; }

void require_rigid_state(const State& state) {
  require_finite(state);
  require_positive_temperature(state);
  if (!(state.eta2 < 0.0)) {
    throw DomainError("chemical potential must be negative, got mu=" + std::to_string(state.eta2));
  }
}

// Below this relative offset the availability formula cancels badly and
// the integral representation is used instead.
constexpr double kIntegralFormThreshold = 0.05;

}  // namespace

std::string_view to_string(SystemKind kind) {
  switch (kind) {
    case SystemKind::kIdealGasTP: return "ideal-gas-tp";
    case SystemKind::kBosonRigid: return "boson-rigid";
    case SystemKind::kFermionRigid: return "fermion-rigid";
    case SystemKind::kClassicalRigid: return "classical-rigid";
    case SystemKind::kToyQuadratic: return "toy-quadratic";
  }
  return "unknown";
}

std::optional<SystemKind> parse_system_kind(std::string_view name) {
  for (auto kind : {SystemKind::kIdealGasTP, SystemKind::kBosonRigid, SystemKind::kFermionRigid,
                    SystemKind::kClassicalRigid, SystemKind::kToyQuadratic}) {
    if (to_string(kind) == name) return kind;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Closed ideal gas

ClassicalIdealGasTP::ClassicalIdealGasTP(double c, double n0kb, State reference)
    : ThermoSystem(reference), c_(c), n0kb_(n0kb) {
  if (!(c > 0.0) || !(n0kb > 0.0) || !std::isfinite(c) || !std::isfinite(n0kb)) {
    throw DomainError("ideal gas requires c > 0 and N0kB > 0");
  }
  validate(reference);
}

void ClassicalIdealGasTP::validate(const State& state) const {
  require_finite(state);
  require_positive_temperature(state);
  if (!(state.eta2 < 0.0)) {
    throw DomainError("pressure must be positive (negP < 0), got negP=" +
                      std::to_string(state.eta2));
  }
}

DualState ClassicalIdealGasTP::dual(const State& state) const {
  const State& q = reference();
  const double P = -state.eta2;
  const double Pq = -q.eta2;
  const double S = n0kb_ * ((c_ + 1.0) * std::log(state.T / q.T) - std::log(P / Pq));
  const double V = n0kb_ * state.T / P;
  return {{S, V}, c_ * n0kb_ * state.T};
}

double ClassicalIdealGasTP::potential(const State& state) const {
  // ψ = T S − P V − U = T S − (c + 1) N₀k_B T.
  const DualState d = dual(state);
  return state.T * d.theta[0] - (c_ + 1.0) * n0kb_ * state.T;
}

SymTensor2 ClassicalIdealGasTP::metric(const State& state) const {
  const double T = state.T;
  const double P = -state.eta2;
  return {(c_ + 1.0) * n0kb_ / T, n0kb_ / P, n0kb_ * T / (P * P)};
}

SymTensor3 ClassicalIdealGasTP::amari_chentsov(const State& state) const {
  const double T = state.T;
  const double P = -state.eta2;
  return {(c_ + 1.0) * n0kb_ / (T * T), 0.0, -n0kb_ / (P * P), -2.0 * n0kb_ * T / (P * P * P)};
}

namespace {

// r − 1 − ln r as a function of e = r − 1, accurate for small e.
double phi_of_excess(double e) {
  if (std::abs(e) < 1e-2) {
    double term = -e;
    double sum = 0.0;
    for (int k = 2; k < 40; ++k) {
      term *= -e;
      const double contrib = term / k;
      sum += contrib;
      if (std::abs(contrib) <= 1e-18 * std::abs(sum)) break;
    }
    return sum;
  }
  return e - std::log1p(e);
}

}  // namespace

double ClassicalIdealGasTP::divergence_closed_form(const State& p, const State& q) const {
  validate(p);
  validate(q);
  const double P = -p.eta2;
  const double Pq = -q.eta2;
  const double temp_excess = (p.T - q.T) / q.T;
  // V/V_q − 1 = (T P_q − T_q P) / (T_q P), with the numerator from offsets.
  const double volume_excess = ((p.T - q.T) * Pq - q.T * (P - Pq)) / (q.T * P);
  return n0kb_ * q.T * (c_ * phi_of_excess(temp_excess) + phi_of_excess(volume_excess));
}

// ---------------------------------------------------------------------------
// Quantum rigid gas

QuantumRigidGas::QuantumRigidGas(Statistics statistics, double kappa, double a, double kb,
                                 State reference, specfun::EvalSettings settings)
    : ThermoSystem(reference),
      statistics_(statistics),
      kappa_(kappa),
      a_(a),
      kb_(kb),
      settings_(settings) {
  if (!(kappa > 0.0) || !(kb > 0.0) || !(a >= 0.5) || !std::isfinite(a)) {
    throw DomainError("quantum gas requires kappa > 0, kB > 0 and a >= 1/2");
  }
  validate(reference);
  entropy_offset_ = 0.0;
  entropy_offset_ = dual(reference).theta[0];
}

SystemKind QuantumRigidGas::kind() const {
  return statistics_ == Statistics::kBoson ? SystemKind::kBosonRigid : SystemKind::kFermionRigid;
}

void QuantumRigidGas::validate(const State& state) const { require_rigid_state(state); }

double QuantumRigidGas::fugacity(const State& state) const {
  return std::exp(state.eta2 / (kb_ * state.T));
}

bool QuantumRigidGas::near_degenerate(const State& state) const {
  return statistics_ == Statistics::kFermion && fugacity(state) > 0.5;
}

namespace {

struct QuantumParams {
  double n, scale, z, kb;
};

HomogeneousJet quantum_jet(const QuantumParams& qp, const State& state, int highest,
                           const specfun::EvalSettings& settings) {
  std::array<double, 4> h{};
  double kpow = 1.0;
  for (int j = 0; j <= highest; ++j) {
    h[j] = specfun::polylog(qp.n - j, qp.z, settings) / kpow;
    kpow *= qp.kb;
  }
  return homogeneous_jet(qp.n, qp.scale, state.T, state.eta2, h);
}

}  // namespace

DualState QuantumRigidGas::dual(const State& state) const {
  validate(state);
  const double n = a_ + 2.0;
  const QuantumParams qp{n, sign() * kappa_ * specfun::gamma(a_ + 1.0) * std::pow(kb_, n),
                         sign() * fugacity(state), kb_};
  const HomogeneousJet j = quantum_jet(qp, state, 1, settings_);
  const double energy = state.T * j.d_t + state.eta2 * j.d_m - j.psi;
  return {{j.d_t - entropy_offset_, j.d_m}, energy};
}

double QuantumRigidGas::potential(const State& state) const {
  validate(state);
  const double n = a_ + 2.0;
  const double z = sign() * fugacity(state);
  const double psi = sign() * kappa_ * specfun::gamma(a_ + 1.0) * std::pow(kb_ * state.T, n) *
                     specfun::polylog(n, z, settings_);
  return psi - entropy_offset_ * state.T;
}

SymTensor2 QuantumRigidGas::metric(const State& state) const {
  validate(state);
  const double n = a_ + 2.0;
  const QuantumParams qp{n, sign() * kappa_ * specfun::gamma(a_ + 1.0) * std::pow(kb_, n),
                         sign() * fugacity(state), kb_};
  return jet_metric(quantum_jet(qp, state, 2, settings_));
}

SymTensor3 QuantumRigidGas::amari_chentsov(const State& state) const {
  validate(state);
  const double n = a_ + 2.0;
  const QuantumParams qp{n, sign() * kappa_ * specfun::gamma(a_ + 1.0) * std::pow(kb_, n),
                         sign() * fugacity(state), kb_};
  return jet_cubic(quantum_jet(qp, state, 3, settings_));
}

double QuantumRigidGas::energy_eos(const State& state) const {
  validate(state);
  return sign() * kappa_ * specfun::gamma(a_ + 2.0) *
         std::pow(kb_ * state.T, a_ + 2.0) *
         specfun::polylog(a_ + 2.0, sign() * fugacity(state), settings_);
}

double QuantumRigidGas::number_eos(const State& state) const {
  validate(state);
  return sign() * kappa_ * specfun::gamma(a_ + 1.0) * std::pow(kb_ * state.T, a_ + 1.0) *
         specfun::polylog(a_ + 1.0, sign() * fugacity(state), settings_);
}

// ---------------------------------------------------------------------------
// Classical rigid gas

ClassicalRigidGas::ClassicalRigidGas(double c, double prefactor, double kb, State reference)
    : ThermoSystem(reference), c_(c), prefactor_(prefactor), kb_(kb) {
  if (!(c > 0.0) || !(prefactor > 0.0) || !(kb > 0.0)) {
    throw DomainError("classical rigid gas requires c > 0, prefactor > 0 and kB > 0");
  }
  validate(reference);
  entropy_offset_ = dual(reference).theta[0];
}

double ClassicalRigidGas::matched_prefactor(double kappa, double a, double kb) {
  return kappa * specfun::gamma(a + 1.0) * std::pow(kb, a + 1.0);
}

void ClassicalRigidGas::validate(const State& state) const { require_rigid_state(state); }

namespace {

HomogeneousJet classical_jet(double c, double prefactor, double kb, const State& state) {
  const double xi = std::exp(state.eta2 / (kb * state.T));
  return homogeneous_jet(c + 1.0, prefactor * kb, state.T, state.eta2,
                         {xi, xi / kb, xi / (kb * kb), xi / (kb * kb * kb)});
}

}  // namespace

DualState ClassicalRigidGas::dual(const State& state) const {
  validate(state);
  const HomogeneousJet j = classical_jet(c_, prefactor_, kb_, state);
  const double energy = state.T * j.d_t + state.eta2 * j.d_m - j.psi;
  return {{j.d_t - entropy_offset_, j.d_m}, energy};
}

double ClassicalRigidGas::potential(const State& state) const {
  validate(state);
  return classical_jet(c_, prefactor_, kb_, state).psi - entropy_offset_ * state.T;
}

SymTensor2 ClassicalRigidGas::metric(const State& state) const {
  validate(state);
  return jet_metric(classical_jet(c_, prefactor_, kb_, state));
}

SymTensor3 ClassicalRigidGas::amari_chentsov(const State& state) const {
  validate(state);
  return jet_cubic(classical_jet(c_, prefactor_, kb_, state));
}

// ---------------------------------------------------------------------------
// Toy quadratic

ToyQuadratic::ToyQuadratic(SymTensor2 hessian, State reference)
    : ThermoSystem(reference), hessian_(hessian) {
  if (!(hessian(0, 0) > 0.0) || !(hessian.determinant() > 0.0)) {
    throw DomainError("toy quadratic requires a positive-definite Hessian");
  }
  validate(reference);
}

void ToyQuadratic::validate(const State& state) const { require_finite(state); }

DualState ToyQuadratic::dual(const State& state) const {
  validate(state);
  const Vec2 d = state.eta() - reference().eta();
  const Vec2 theta = hessian_.apply(d);
  const double psi = 0.5 * hessian_.quadratic(d);
  const Vec2 eta = state.eta();
  return {theta, eta[0] * theta[0] + eta[1] * theta[1] - psi};
}

double ToyQuadratic::potential(const State& state) const {
  validate(state);
  return 0.5 * hessian_.quadratic(state.eta() - reference().eta());
}

// ---------------------------------------------------------------------------
// Checked operations

DualState theta_of(const ThermoSystem& system, const State& state) {
  system.validate(state);
  return system.dual(state);
}

double entropy_of(const ThermoSystem& system, const State& state) {
  return theta_of(system, state).entropy();
}

SymTensor2 metric_eta(const ThermoSystem& system, const State& state) {
  system.validate(state);
  return system.metric(state);
}

SymTensor3 amari_chentsov_eta(const ThermoSystem& system, const State& state) {
  system.validate(state);
  return system.amari_chentsov(state);
}

double divergence_availability(const ThermoSystem& system, const State& p, const State& q) {
  system.validate(p);
  system.validate(q);
  const DualState dp = system.dual(p);
  const DualState dq = system.dual(q);
  // ψ(q) by Legendre transform at q, so that D(q, q) vanishes identically.
  const double psi_q = q.T * dq.theta[0] + q.eta2 * dq.theta[1] - dq.energy;
  return dp.energy + psi_q - q.T * dp.theta[0] - q.eta2 * dp.theta[1];
}

double divergence_from_offset(const ThermoSystem& system, const State& q, const Vec2& offset) {
  system.validate(q);
  const State p{q.T + offset[0], q.eta2 + offset[1]};
  system.validate(p);
  if (offset[0] == 0.0 && offset[1] == 0.0) return 0.0;

  double relative = 0.0;
  for (int i = 0; i < 2; ++i) {
    const double scale = std::max(std::abs(q.eta()[i]), std::abs(p.eta()[i]));
    relative = std::max(relative, scale > 0.0 ? std::abs(offset[i]) / scale : INFINITY);
  }
  if (relative >= kIntegralFormThreshold) {
    return std::max(0.0, divergence_availability(system, p, q));
  }
  // D = ∫₀¹ (1 − s) g(η_q + (1 − s) δ)[δ, δ] ds, the Taylor remainder of ψ.
  auto integrand = [&](double s) {
    const double w = 1.0 - s;
    const State x{q.T + w * offset[0], q.eta2 + w * offset[1]};
    return w * system.metric(x).quadratic(offset);
  };
  return boost::math::quadrature::gauss<double, 10>::integrate(integrand, 0.0, 1.0);
}

double divergence(const ThermoSystem& system, const State& p, const State& q) {
  system.validate(p);
  return divergence_from_offset(system, q, p.eta() - q.eta());
}

State eta_of(const ThermoSystem& system, const Vec2& theta, const State& guess) {
  system.validate(guess);
  State current = guess;
  for (int iter = 0; iter < 100; ++iter) {
    const Vec2 residual = theta - system.dual(current).theta;
    const SymTensor2 jac = system.metric(current);
    Vec2 step = jac.inverse().apply(residual);
    // Damp until the update stays inside the chart.
    State next{};
    for (int halvings = 0;; ++halvings) {
      next = State{current.T + step[0], current.eta2 + step[1]};
      try {
        system.validate(next);
        break;
      } catch (const DomainError&) {
        if (halvings > 60) throw;
        step = 0.5 * step;
      }
    }
    const bool small = std::abs(step[0]) <= 1e-12 * std::abs(next.T) + 1e-300 &&
                       std::abs(step[1]) <= 1e-12 * std::abs(next.eta2) + 1e-300;
    current = next;
    if (small) {
      // One more full step once in the quadratic regime lands on the
      // rounding floor.
      const Vec2 last = system.metric(current).inverse().apply(theta - system.dual(current).theta);
      const State polished{current.T + last[0], current.eta2 + last[1]};
      system.validate(polished);
      return polished;
    }
  }
  throw ConvergenceError("eta_of: Newton iteration did not converge");
}

}  // namespace thermoflow
