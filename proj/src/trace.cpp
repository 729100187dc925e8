#include "manet/trace.hpp"

namespace manet {

void TraceSink::emit(double time, NodeId node, const char* event, const char* kind, NodeId src,
                     NodeId dst, const std::string& detail) {
    if (!enabled())
        return;
    char buf[256];
    int len = std::snprintf(buf, sizeof(buf), "%.9f\t%u\t%s\t%s\t%u\t%u\t%s\n", time, node, event,
                            kind, src, dst, detail.c_str());
    if (len < 0)
        return;
    if (len >= static_cast<int>(sizeof(buf)))
        len = sizeof(buf) - 1;
    if (hashing_)
        for (int i = 0; i < len; ++i) {
            hash_ ^= static_cast<unsigned char>(buf[i]);
            hash_ *= 0x100000001b3ULL;
        }
    if (out_)
        out_->write(buf, len);
}

} // namespace manet
