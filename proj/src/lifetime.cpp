#include "mobnet/lifetime.hpp"

#include <algorithm>
#include <string>

namespace mobnet::lifetime {

namespace {

void require_positive(double value, const char* name) {
    if (!(value > 0.0)) throw std::domain_error(std::string(name) + " must be positive");
}

}  // namespace

double predict_general(double total_energy_start, double total_energy_end, double deliveries_per_step,
                       double hop_cost) {
    require_positive(deliveries_per_step, "deliveries per step");
    require_positive(hop_cost, "hop cost");
    if (!(total_energy_end >= 0.0) || !(total_energy_start >= total_energy_end)) {
        throw std::domain_error("total energy must satisfy E(0) >= E(T) >= 0");
    }
    return (total_energy_start - total_energy_end) / (deliveries_per_step * hop_cost);
}

double predict_no_congestion(double init_energy, double energy_range_at_death, double gen_rate, double tau0,
                             double hop_cost) {
    require_positive(init_energy, "initial energy");
    require_positive(gen_rate * tau0, "rho * tau0");
    require_positive(hop_cost, "hop cost");
    if (!(energy_range_at_death >= 0.0)) throw std::domain_error("energy range must be non-negative");
    return (init_energy - energy_range_at_death / 2.0) / (gen_rate * tau0 * hop_cost);
}

double predict_absolute(double init_energy, double capacity, double hop_cost) {
    require_positive(init_energy, "initial energy");
    require_positive(capacity, "capacity");
    require_positive(hop_cost, "hop cost");
    return init_energy / (capacity * hop_cost);
}

double omega(double gen_rate, double tau0, double capacity) {
    require_positive(gen_rate, "generation rate");
    require_positive(tau0, "tau0");
    require_positive(capacity, "capacity");
    return std::min(gen_rate * tau0, capacity);
}

double predict_unified(double init_energy, double gen_rate, double tau0, double capacity, double hop_cost, double k) {
    require_positive(init_energy, "initial energy");
    require_positive(hop_cost, "hop cost");
    require_positive(k, "k");
    return k * init_energy / (omega(gen_rate, tau0, capacity) * hop_cost);
}

double predict_unified(const LifetimeInputs& in, double k) {
    return predict_unified(in.init_energy, in.gen_rate, in.tau0, in.capacity, in.hop_cost, k);
}

double extract_k(double simulated_lifetime, double init_energy, double gen_rate, double tau0, double capacity,
                 double hop_cost) {
    require_positive(simulated_lifetime, "simulated lifetime");
    require_positive(init_energy, "initial energy");
    require_positive(hop_cost, "hop cost");
    return simulated_lifetime * omega(gen_rate, tau0, capacity) * hop_cost / init_energy;
}

}  // namespace mobnet::lifetime
