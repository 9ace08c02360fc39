#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace scd {

enum class DetectionMethod { divergence, prediction };

const char* to_string(DetectionMethod m);

/// One detected spectral change. time_s is frame_index * hop / rate under
/// the analysis parameters that produced the event; score is the ratio
/// that crossed the threshold (the peak ratio when a run of consecutive
/// triggering frames was merged).
struct ChangeEvent {
    std::size_t frame_index = 0;
    double time_s = 0.0;
    double score = 0.0;
    DetectionMethod method = DetectionMethod::divergence;
};

enum class EventFormat { csv, json };

/// Serialize events, which must be sorted by frame_index. CSV carries the
/// header `frame_index,time_s,score,method`; JSON is an array of objects
/// with the same four keys. time_s is printed with 9 decimal digits.
void write_events(const std::vector<ChangeEvent>& events, EventFormat format,
                  std::ostream& out);
void write_events(const std::vector<ChangeEvent>& events, EventFormat format,
                  const std::string& path);

} // namespace scd
