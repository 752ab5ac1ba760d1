// SPDX-License-Identifier: Apache-2.0
#pragma once

namespace bbkit::thermo {

/// Macroscopic state of a radiation gas with equation of state U = alpha P V.
/// The chemical-potential term mu dN is fixed to zero; it is an assumption of
/// the model, not a parameter.
struct ThermoState {
    double internal_energy = 0.0;  // J
    double pressure = 0.0;         // Pa
    double volume = 0.0;           // m^3
    double temperature = 0.0;      // K
    double alpha = 3.0;            // U = alpha P V

    static constexpr double mu_dN = 0.0;
};

/// Builds a state from (P, V, T, alpha), deriving U = alpha P V.
/// Throws std::domain_error for non-positive P, V, T or alpha.
ThermoState make_state(double pressure, double volume, double temperature, double alpha);

/// Exponent n of the power law P ~ T^n implied by U = alpha P V together with
/// the thermodynamic relation (dU/dV)_T = T (dP/dT)_V - P: returns alpha + 1.
/// Throws std::domain_error for alpha <= 0.
double pressure_exponent(double alpha);

/// Integrates dP/P = (alpha+1) dT/T from (t0, p0) to t1 with a fixed-step
/// classical Runge-Kutta scheme in tau = ln T, where the equation is the
/// linear ODE dP/dtau = (alpha+1) P. The scheme is 4th order: the one-step
/// relative defect against e^(lambda h) is lambda^5 h^5 / 120 + O(h^6), so the
/// global relative error is bounded by steps * (lambda h)^5 / 120 with
/// h = ln(t1/t0)/steps. Converges to p0 * (t1/t0)^(alpha+1).
double integrate_pressure(double t0, double p0, double t1, double alpha, int steps);

/// Differential heat, work and energy change for a volume change dV at fixed T:
/// dQ = (alpha+1) P dV, dL = P dV, dU = dQ - dL (= alpha P dV).
/// The first law dU = dQ - dL holds exactly, to the last bit, by construction.
struct HeatWork {
    double heat = 0.0;           // dQ, J
    double work = 0.0;           // dL, J
    double energy_change = 0.0;  // dU, J
};

HeatWork heat_and_work(const ThermoState& state, double volume_change);

}  // namespace bbkit::thermo
