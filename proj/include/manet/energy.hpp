#ifndef MANET_ENERGY_HPP
#define MANET_ENERGY_HPP

#include <vector>

#include "manet/errors.hpp"

namespace manet {

/// Node battery. Levels are dimensionless energy-units; the default full
/// scale is 15. A node whose level falls below deathThreshold transmits
/// nothing, which is exactly what makes it miss its ack window.
struct Battery {
    double level = 15.0;
    double eMax = 15.0;
    double voltage = 1.0;
    double current = 1.0;
    double deathThreshold = 0.15;

    bool alive() const { return level >= deathThreshold; }
};

/// Link-quality transmission cost parameters: packet length M (bits),
/// transmit power (W), data rate (bit/s) and the probability of correct
/// reception, kept as a configured scalar.
struct LinkEnergyParams {
    double packetBits = 0.0;
    double txPowerW = 0.1;
    double dataRateBps = 54e6;
    double pCorrect = 1.0;
};

/// Dimensionless inverse battery fraction: K = e_max / e, so K = 1 at full
/// charge and grows as the battery drains. Throws ENERGY_NONPOSITIVE for
/// e <= 0.
double kFactor(double energy, double eMax);

/// Time on air: header bits at 6 Mbit/s plus payload bits at 54 Mbit/s.
double packetAirtime(double headerBits, double payloadBits);

/// Constant-power cost: E = i * v * t_p.
double txEnergyTimeModel(double headerBits, double payloadBits, const Battery& bat);

/// Link-model cost: E = M * P / (R * p_c). Throws PC_ZERO when p_c = 0.
double txEnergyLinkModel(const LinkEnergyParams& p);

/// Sum of per-link costs over a neighborhood.
double resultantEnergy(const std::vector<double>& costs);

} // namespace manet

#endif
