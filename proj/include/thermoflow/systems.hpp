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

#ifndef THERMOFLOW_SYSTEMS_HPP
#define THERMOFLOW_SYSTEMS_HPP

#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "thermoflow/specfun.hpp"
#include "thermoflow/tensor.hpp"

namespace thermoflow {

/// A point on the equilibrium manifold in the affine η chart: (T, η₂) where
/// η₂ is −P for a closed fluid and μ for a gas in a rigid container.
struct State {
  double T = 0.0;
  double eta2 = 0.0;

  Vec2 eta() const { return {T, eta2}; }
  static State from_eta(const Vec2& eta) { return {eta[0], eta[1]}; }

  friend bool operator==(const State&, const State&) = default;
};

/// The Legendre-dual coordinates θ = ∂ψ/∂η = (S, V) or (S, N), with the
/// internal energy U carried alongside. S is anchored to zero at the
/// owning system's reference state.
struct DualState {
  Vec2 theta{};
  double energy = 0.0;

  double entropy() const { return theta[0]; }
};

enum class SystemKind { kIdealGasTP, kBosonRigid, kFermionRigid, kClassicalRigid, kToyQuadratic };

std::string_view to_string(SystemKind kind);
std::optional<SystemKind> parse_system_kind(std::string_view name);

/// Catalog entry: a convex potential ψ(η) with its analytic derivatives.
///
/// The metric is the Hessian of ψ in the η chart and the Amari-Chentsov
/// tensor is C^{ijk} = −∂³ψ/∂η_i∂η_j∂η_k. Implementations are immutable
/// after construction and every method is safe to call concurrently.
class ThermoSystem {
 public:
  virtual ~ThermoSystem() = default;

  virtual SystemKind kind() const = 0;
  /// Column label of the second η coordinate ("negP", "mu", "x2").
  virtual std::string_view eta2_name() const = 0;
  /// Throws DomainError if the state violates the system's invariants.
  virtual void validate(const State& state) const = 0;

  virtual DualState dual(const State& state) const = 0;
  /// ψ(η), consistent with dual(): ∂ψ/∂η = θ.
  virtual double potential(const State& state) const = 0;
  virtual SymTensor2 metric(const State& state) const = 0;
  virtual SymTensor3 amari_chentsov(const State& state) const = 0;

  /// State at which the entropy is anchored to zero.
  const State& reference() const { return reference_; }

 protected:
  explicit ThermoSystem(State reference) : reference_(reference) {}

 private:
  State reference_;
};

using SystemPtr = std::shared_ptr<const ThermoSystem>;

/// Closed ideal gas in the (T, −P) chart: U = c N₀k_B T, PV = N₀k_B T.
class ClassicalIdealGasTP final : public ThermoSystem {
 public:
  ClassicalIdealGasTP(double c, double n0kb, State reference);

  SystemKind kind() const override { return SystemKind::kIdealGasTP; }
  std::string_view eta2_name() const override { return "negP"; }
  void validate(const State& state) const override;
  DualState dual(const State& state) const override;
  double potential(const State& state) const override;
  SymTensor2 metric(const State& state) const override;
  SymTensor3 amari_chentsov(const State& state) const override;

  double c() const { return c_; }
  double n0kb() const { return n0kb_; }

  /// D*_q(p) written as N₀k_B T_q [c φ(T/T_q) + φ(V/V_q)] with
  /// φ(r) = r − 1 − ln r; manifestly nonnegative.
  double divergence_closed_form(const State& p, const State& q) const;

 private:
  double c_;
  double n0kb_;
};

enum class Statistics { kFermion, kBoson };

/// Ideal Fermi or Bose gas in a rigid container, chart (T, μ):
/// ψ(T, μ) = ∓κ Γ(a+1) (k_B T)^{a+2} Li_{a+2}(∓ξ), ξ = exp(μ / k_B T).
class QuantumRigidGas final : public ThermoSystem {
 public:
  QuantumRigidGas(Statistics statistics, double kappa, double a, double kb, State reference,
                  specfun::EvalSettings settings = {});

  SystemKind kind() const override;
  std::string_view eta2_name() const override { return "mu"; }
  void validate(const State& state) const override;
  DualState dual(const State& state) const override;
  double potential(const State& state) const override;
  SymTensor2 metric(const State& state) const override;
  SymTensor3 amari_chentsov(const State& state) const override;

  Statistics statistics() const { return statistics_; }
  double kappa() const { return kappa_; }
  double a() const { return a_; }
  double kb() const { return kb_; }

  double fugacity(const State& state) const;
  /// Soft flag: fermions with ξ > 0.5 are too close to the degenerate regime
  /// for the cooling-faster argument.
  bool near_degenerate(const State& state) const;

  /// Internal energy and particle number straight from the equations of state.
  double energy_eos(const State& state) const;
  double number_eos(const State& state) const;

 private:
  double sign() const { return statistics_ == Statistics::kBoson ? 1.0 : -1.0; }

  Statistics statistics_;
  double kappa_;
  double a_;
  double kb_;
  specfun::EvalSettings settings_;
  double entropy_offset_ = 0.0;
};

/// Classical ideal gas in a rigid container: N = prefactor T^c ξ,
/// U = c k_B T N, from ψ = prefactor k_B T^{c+1} ξ.
class ClassicalRigidGas final : public ThermoSystem {
 public:
  ClassicalRigidGas(double c, double prefactor, double kb, State reference);

  /// Prefactor κ Γ(a+1) k_B^c that matches a quantum gas with a = c − 1 in
  /// the ξ → 0 limit.
  static double matched_prefactor(double kappa, double a, double kb);

  SystemKind kind() const override { return SystemKind::kClassicalRigid; }
  std::string_view eta2_name() const override { return "mu"; }
  void validate(const State& state) const override;
  DualState dual(const State& state) const override;
  double potential(const State& state) const override;
  SymTensor2 metric(const State& state) const override;
  SymTensor3 amari_chentsov(const State& state) const override;

  double c() const { return c_; }
  double prefactor() const { return prefactor_; }
  double kb() const { return kb_; }

 private:
  double c_;
  double prefactor_;
  double kb_;
  double entropy_offset_ = 0.0;
};

/// Test system with quadratic ψ(η) = ½ (η − η_ref)ᵀ A (η − η_ref). Its
/// divergence is symmetric and its Amari-Chentsov tensor vanishes.
class ToyQuadratic final : public ThermoSystem {
 public:
  ToyQuadratic(SymTensor2 hessian, State reference);

  SystemKind kind() const override { return SystemKind::kToyQuadratic; }
  std::string_view eta2_name() const override { return "x2"; }
  void validate(const State& state) const override;
  DualState dual(const State& state) const override;
  double potential(const State& state) const override;
  SymTensor2 metric(const State&) const override { return hessian_; }
  SymTensor3 amari_chentsov(const State&) const override { return {}; }

 private:
  SymTensor2 hessian_;
};

// Checked entry points. Each validates its states before evaluating.

DualState theta_of(const ThermoSystem& system, const State& state);
double entropy_of(const ThermoSystem& system, const State& state);
SymTensor2 metric_eta(const ThermoSystem& system, const State& state);
SymTensor3 amari_chentsov_eta(const ThermoSystem& system, const State& state);

/// Bregman divergence D*_q(p) = U(p) + ψ(q) − T_q S(p) − (η₂)_q θ²(p),
/// the negative availability of p relative to the bath state q.
double divergence(const ThermoSystem& system, const State& p, const State& q);

/// Same quantity for p = q + offset, keeping relative accuracy when the
/// offset is tiny compared with q.
double divergence_from_offset(const ThermoSystem& system, const State& q, const Vec2& offset);

/// The availability formula evaluated literally, ψ(q) from the Legendre
/// transform at q. Loses precision as p → q; exposed as a second route.
double divergence_availability(const ThermoSystem& system, const State& p, const State& q);

/// Inverse Legendre map θ → η by Newton iteration with the metric as
/// Jacobian, starting from `guess`. Throws ConvergenceError or DomainError.
State eta_of(const ThermoSystem& system, const Vec2& theta, const State& guess);

}  // namespace thermoflow

#endif  // THERMOFLOW_SYSTEMS_HPP
