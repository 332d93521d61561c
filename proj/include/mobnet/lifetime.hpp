#pragma once

#include <stdexcept>

namespace mobnet::lifetime {

/// Inputs to the analytic lifetime formulas. All values are per node except
/// where noted.
struct LifetimeInputs {
    double init_energy = 1000.0;            // E0
    double hop_cost = 1.0;                  // dE
    double capacity = 5.0;                  // C
    double gen_rate = 0.1;                  // rho
    double tau0 = 1.0;                      // mean hops per delivered packet
    double energy_range_at_death = 0.0;     // R(T)
    double n_nodes = 1000.0;                // N
    double avg_deliveries_per_step = 0.0;   // D, network-wide

    /// Effective per-node throughput min(rho * tau0, C).
    double omega() const { return rho_tau0() < capacity ? rho_tau0() : capacity; }
    double rho_tau0() const { return gen_rate * tau0; }
};

/// Lifetime from the network energy budget:
/// (E_total(0) - E_total(T)) / (D * dE). Throws std::domain_error unless
/// D > 0, dE > 0 and E_total(0) >= E_total(T) >= 0.
double predict_general(double total_energy_start, double total_energy_end, double deliveries_per_step,
                       double hop_cost);

/// Free-flow lifetime (E0 - R(T)/2) / (rho * tau0 * dE).
double predict_no_congestion(double init_energy, double energy_range_at_death, double gen_rate, double tau0,
                             double hop_cost);

/// Saturated lifetime E0 / (C * dE).
double predict_absolute(double init_energy, double capacity, double hop_cost);

/// k * E0 / (Omega * dE) with Omega = min(rho * tau0, C).
double predict_unified(double init_energy, double gen_rate, double tau0, double capacity, double hop_cost, double k);

double predict_unified(const LifetimeInputs& in, double k);

/// Inverse of predict_unified in k: T * Omega * dE / E0.
double extract_k(double simulated_lifetime, double init_energy, double gen_rate, double tau0, double capacity,
                 double hop_cost);

/// min(rho * tau0, C).
double omega(double gen_rate, double tau0, double capacity);

}  // namespace mobnet::lifetime
