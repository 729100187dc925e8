#include "manet/model.hpp"

namespace manet {

const char* messageKindName(MessageKind k) {
    switch (k) {
    case MessageKind::HELLO:
        return "HELLO";
    case MessageKind::HELLO_ACK:
        return "HELLO_ACK";
    case MessageKind::RREQ:
        return "RREQ";
    case MessageKind::RREP:
        return "RREP";
    case MessageKind::RERR:
        return "RERR";
    case MessageKind::DATA:
        return "DATA";
    }
    return "?";
}

bool isControl(MessageKind k) {
    return k != MessageKind::DATA;
}

bool fresherRoute(int64_t candSeq, uint32_t candHops, int64_t incSeq, uint32_t incHops) {
    if (candSeq != incSeq)
        return candSeq > incSeq;
    return candHops < incHops;
}

uint64_t dataPayloadBits(const PayloadConfig& p) {
    return p.multiplier * (p.dataBytes + p.udpBytes + p.ipBytes);
}

uint64_t messageSizeBits(const Message& m, const SizeConfig& sizes) {
    if (isControl(m.kind))
        return sizes.controlHeaderBits;
    return m.headerBits + m.payloadBits;
}

uint64_t messageHeaderBits(const Message& m, const SizeConfig& sizes) {
    if (isControl(m.kind))
        return sizes.controlHeaderBits;
    return m.headerBits;
}

uint64_t messagePayloadBits(const Message& m) {
    return isControl(m.kind) ? 0 : m.payloadBits;
}

} // namespace manet
