#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "slicesim/env_model.hpp"

namespace slicesim {

enum class Direction { uplink, downlink };

struct TraceRecord {
  std::uint64_t timestamp_us = 0;  // since trace start
  Direction direction = Direction::downlink;
  std::uint64_t size_bytes = 0;
  std::string flow_id;
};

struct TraceWarning {
  std::size_t line = 0;
  std::string message;
};

struct LoadedTrace {
  std::vector<TraceRecord> records;  // timestamp-sorted
  std::vector<TraceWarning> warnings;
};

// Trace CSV: header `timestamp_us,direction,size_bytes,flow_id`. Malformed
// lines are reported with their line numbers; more than 1% malformed lines
// or an unparseable header is an error. Out-of-order timestamps are stably
// sorted with a warning. A zero-byte file is an empty trace.
LoadedTrace load_trace(const std::string& path);

struct TrafficProfile {
  std::optional<SliceType> slice_type;
  double window_s = 0.0;
  std::vector<double> packets_per_s;  // one entry per window
  std::vector<double> bits_per_s;
  double interarrival_mean_us = 0.0;
  double interarrival_stddev_us = 0.0;
  double interarrival_p50_us = 0.0;
  double interarrival_p90_us = 0.0;
  double interarrival_p99_us = 0.0;
  double direction_ratio = 0.0;  // downlink bytes / total bytes
  std::uint64_t packet_count = 0;
};

// Windowed rates, inter-arrival statistics over consecutive timestamps and
// the downlink byte share. Needs at least two records.
TrafficProfile profile_trace(const std::vector<TraceRecord>& records, double window_s,
                             std::optional<SliceType> slice_type = std::nullopt);

void save_profile_csv(const TrafficProfile& profile, const std::string& path);

struct DemandEntry {
  double cpu_percent = 0.0;             // of one core-equivalent
  std::optional<double> mem_mib;        // absent when not measured

  bool operator==(const DemandEntry&) const = default;
};

struct DemandLookup {
  double cpu_percent = 0.0;
  std::optional<double> mem_mib;
  bool clamped = false;  // user count fell outside the measured grid
};

// (slice type, VNF, active users) -> measured demand upper bounds.
class ResourceLookupTable {
 public:
  void set(SliceType type, const std::string& vnf, int users, DemandEntry entry);

  // Exact on grid points, piecewise linear between them, clamped (and
  // flagged) beyond the measured range. Unknown (type, vnf) throws.
  DemandLookup lookup(SliceType type, const std::string& vnf, int users) const;

  // Grid series that decrease with user count are reported, not rejected.
  std::vector<std::string> validate_monotone() const;

  bool empty() const { return entries_.empty(); }

  void save_csv(const std::string& path) const;
  static ResourceLookupTable load_csv(const std::string& path);

  bool operator==(const ResourceLookupTable& other) const = default;

 private:
  // ordered keys keep CSV output and interpolation deterministic
  std::map<std::tuple<SliceType, std::string, int>, DemandEntry> entries_;
};

// The measured CPU figures for the three reference slices: eMBB at 50 and
// 200 users, URLLC and mMTC at 200 users, and the sub-1.5% mMTC readings at
// 10 users encoded as the 1.5 upper bound. Memory columns were not
// measured and stay empty.
ResourceLookupTable seed_demand_table();

DemandLookup lookup_demand(const ResourceLookupTable& table, SliceType type,
                           const std::string& vnf, int users);

}  // namespace slicesim
