#ifndef MANET_ERRORS_HPP
#define MANET_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace manet {

enum class ErrorCode {
    SCHEDULE_IN_PAST,
    ENERGY_NONPOSITIVE,
    PC_ZERO,
    OFFSET_TOO_SMALL,
    NO_CANDIDATE,
    PARSE_ERROR,
    RANGE_ERROR,
    IO_ERROR,
};

class SimError : public std::runtime_error {
  public:
    SimError(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const { return code_; }

  private:
    ErrorCode code_;
};

} // namespace manet

#endif
