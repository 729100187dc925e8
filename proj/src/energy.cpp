#include "manet/energy.hpp"

namespace manet {

double kFactor(double energy, double eMax) {
    if (energy <= 0.0)
        throw SimError(ErrorCode::ENERGY_NONPOSITIVE, "k-factor of non-positive energy");
    return eMax / energy;
}

double packetAirtime(double headerBits, double payloadBits) {
    return headerBits / 6e6 + payloadBits / 54e6;
}

double txEnergyTimeModel(double headerBits, double payloadBits, const Battery& bat) {
    return bat.current * bat.voltage * packetAirtime(headerBits, payloadBits);
}

double txEnergyLinkModel(const LinkEnergyParams& p) {
    if (p.pCorrect <= 0.0)
        throw SimError(ErrorCode::PC_ZERO, "correct-reception probability must be positive");
    return p.packetBits * p.txPowerW / (p.dataRateBps * p.pCorrect);
}

double resultantEnergy(const std::vector<double>& costs) {
    double sum = 0.0;
    for (double c : costs)
        sum += c;
    return sum;
}

} // namespace manet
