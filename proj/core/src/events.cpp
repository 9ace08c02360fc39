#include "scd/events.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>

namespace scd {

const char* to_string(DetectionMethod m) {
    return m == DetectionMethod::divergence ? "divergence" : "prediction";
}

namespace {

void require_sorted(const std::vector<ChangeEvent>& events) {
    for (std::size_t i = 1; i < events.size(); ++i)
        if (events[i].frame_index < events[i - 1].frame_index)
            throw std::invalid_argument(
                "write_events: events must be sorted by frame_index");
}

std::string format_row(const ChangeEvent& e, const char* fmt) {
    char buf[160];
    std::snprintf(buf, sizeof buf, fmt, e.frame_index, e.time_s, e.score,
                  to_string(e.method));
    return buf;
}

} // namespace

void write_events(const std::vector<ChangeEvent>& events, EventFormat format,
                  std::ostream& out) {
    require_sorted(events);
    if (format == EventFormat::csv) {
        out << "frame_index,time_s,score,method\n";
        for (const auto& e : events)
            out << format_row(e, "%zu,%.9f,%.9g,%s\n");
    } else {
        out << "[\n";
        for (std::size_t i = 0; i < events.size(); ++i) {
            out << format_row(events[i],
                              "  {\"frame_index\": %zu, \"time_s\": %.9f, "
                              "\"score\": %.9g, \"method\": \"%s\"}");
            out << (i + 1 < events.size() ? ",\n" : "\n");
        }
        out << "]\n";
    }
}

void write_events(const std::vector<ChangeEvent>& events, EventFormat format,
                  const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot open " + path + " for writing");
    write_events(events, format, out);
    out.flush();
    if (!out)
        throw std::runtime_error("write failure on " + path);
}

} // namespace scd
