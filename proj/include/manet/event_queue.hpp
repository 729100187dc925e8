#ifndef MANET_EVENT_QUEUE_HPP
#define MANET_EVENT_QUEUE_HPP

#include <cstdint>
#include <functional>
#include <queue>
#include <unordered_set>
#include <vector>

#include "manet/errors.hpp"

namespace manet {

using EventId = uint64_t;

/// Deterministic event queue. Events pop in (fireTime, insertion seq)
/// lexicographic order, so same-instant events replay in the exact order
/// they were scheduled and the whole simulation is a pure function of its
/// inputs.
class EventQueue {
  public:
    /// Enqueue an action; throws SCHEDULE_IN_PAST if t is before the clock.
    EventId schedule(double t, std::function<void()> action);

    /// Tombstone a pending event. Unknown/already-fired ids are ignored.
    void cancel(EventId id);

    /// Process every event with fireTime <= tEnd, leaving the clock at tEnd.
    /// Returns the number of events processed (cancelled ones excluded).
    uint64_t runUntil(double tEnd);

    double now() const { return clock; }
    bool empty() const { return queue.size() == cancelled.size(); }

  private:
    struct Event {
        double time;
        EventId seq;
        std::function<void()> action;

        bool operator>(const Event& o) const {
            if (time != o.time)
                return time > o.time;
            return seq > o.seq;
        }
    };

    std::priority_queue<Event, std::vector<Event>, std::greater<Event>> queue;
    std::unordered_set<EventId> cancelled;
    double clock = 0.0;
    EventId nextSeq = 0;
};

} // namespace manet

#endif
