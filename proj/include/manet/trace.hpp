#ifndef MANET_TRACE_HPP
#define MANET_TRACE_HPP

#include <cstdint>
#include <cstdio>
#include <ostream>
#include <string>

#include "manet/model.hpp"

namespace manet {

/// Line-delimited event trace: `time node event kind src dst detail`,
/// tab-separated, time with 9 decimal places. Also folds every line into a
/// running FNV-1a hash so tests can compare whole traces cheaply.
class TraceSink {
  public:
    explicit TraceSink(std::ostream* out = nullptr) : out_(out) {}

    void setStream(std::ostream* out) { out_ = out; }
    bool enabled() const { return out_ != nullptr || hashing_; }
    void enableHashing(bool on) { hashing_ = on; }

    void emit(double time, NodeId node, const char* event, const char* kind, NodeId src,
              NodeId dst, const std::string& detail);

    uint64_t hash() const { return hash_; }

  private:
    std::ostream* out_;
    bool hashing_ = false;
    uint64_t hash_ = 0xcbf29ce484222325ULL;
};

} // namespace manet

#endif
