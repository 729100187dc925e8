#include "manet/event_queue.hpp"

#include <utility>

namespace manet {

EventId EventQueue::schedule(double t, std::function<void()> action) {
    if (t < clock)
        throw SimError(ErrorCode::SCHEDULE_IN_PAST, "schedule at " + std::to_string(t) +
                                                        " before clock " + std::to_string(clock));
    EventId id = nextSeq++;
    queue.push(Event{t, id, std::move(action)});
    return id;
}

void EventQueue::cancel(EventId id) {
    if (id < nextSeq)
        cancelled.insert(id);
}

uint64_t EventQueue::runUntil(double tEnd) {
    if (tEnd < clock)
        throw SimError(ErrorCode::SCHEDULE_IN_PAST, "runUntil into the past");
    uint64_t processed = 0;
    while (!queue.empty() && queue.top().time <= tEnd) {
        Event ev = queue.top();
        queue.pop();
        if (auto it = cancelled.find(ev.seq); it != cancelled.end()) {
            cancelled.erase(it);
            continue;
        }
        clock = ev.time;
        ev.action();
        ++processed;
    }
    clock = tEnd;
    return processed;
}

} // namespace manet
