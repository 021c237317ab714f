#include "slicesim/profiler.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "slicesim/util.hpp"

namespace slicesim {

namespace {

constexpr const char* kTraceHeader = "timestamp_us,direction,size_bytes,flow_id";

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  fields.push_back(cur);
  return fields;
}

bool parse_u64(const std::string& s, std::uint64_t& out) {
  if (s.empty()) return false;
  std::uint64_t v = 0;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
    v = v * 10 + static_cast<std::uint64_t>(c - '0');
  }
  out = v;
  return true;
}

}  // namespace

LoadedTrace load_trace(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open trace: " + path);

  LoadedTrace out;
  std::string line;
  if (!std::getline(is, line)) return out;  // zero-byte file: empty trace

  {
    std::string header = line;
    if (!header.empty() && header.back() == '\r') header.pop_back();
    if (header != kTraceHeader)
      throw std::runtime_error("unrecognized trace header in " + path + ": " + header);
  }

  std::size_t line_no = 1;
  std::size_t malformed = 0, data_lines = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    ++data_lines;
    const auto fields = split_csv_line(line);
    TraceRecord rec;
    bool ok = fields.size() == 4;
    if (ok) ok = parse_u64(fields[0], rec.timestamp_us);
    if (ok) {
      if (fields[1] == "uplink")
        rec.direction = Direction::uplink;
      else if (fields[1] == "downlink")
        rec.direction = Direction::downlink;
      else
        ok = false;
    }
    if (ok) ok = parse_u64(fields[2], rec.size_bytes);
    if (ok) rec.flow_id = fields[3];
    if (!ok) {
      ++malformed;
      out.warnings.push_back({line_no, "malformed line"});
      continue;
    }
    out.records.push_back(std::move(rec));
  }
  if (data_lines > 0 && malformed * 100 > data_lines)
    throw std::runtime_error(path + ": " + std::to_string(malformed) + " of " +
                             std::to_string(data_lines) + " lines malformed (over 1%)");

  bool sorted = std::is_sorted(out.records.begin(), out.records.end(),
                               [](const TraceRecord& a, const TraceRecord& b) {
                                 return a.timestamp_us < b.timestamp_us;
                               });
  if (!sorted) {
    std::stable_sort(out.records.begin(), out.records.end(),
                     [](const TraceRecord& a, const TraceRecord& b) {
                       return a.timestamp_us < b.timestamp_us;
                     });
    out.warnings.push_back({0, "out-of-order timestamps; stable sort applied"});
  }
  return out;
}

namespace {

double nearest_rank_percentile(const std::vector<double>& sorted, double pct) {
  if (sorted.empty()) return 0.0;
  const std::size_t n = sorted.size();
  std::size_t rank = static_cast<std::size_t>(std::ceil(pct / 100.0 * static_cast<double>(n)));
  if (rank == 0) rank = 1;
  if (rank > n) rank = n;
  return sorted[rank - 1];
}

}  // namespace

TrafficProfile profile_trace(const std::vector<TraceRecord>& records, double window_s,
                             std::optional<SliceType> slice_type) {
  if (records.size() < 2) throw std::invalid_argument("profiling needs at least two records");
  if (window_s <= 0.0) throw std::invalid_argument("window must be positive");

  TrafficProfile p;
  p.slice_type = slice_type;
  p.window_s = window_s;
  p.packet_count = records.size();

  const double window_us = window_s * 1e6;
  const std::size_t n_windows =
      static_cast<std::size_t>(std::floor(static_cast<double>(records.back().timestamp_us) / window_us)) + 1;
  std::vector<std::uint64_t> counts(n_windows, 0);
  std::vector<std::uint64_t> bytes(n_windows, 0);
  std::uint64_t downlink_bytes = 0, total_bytes = 0;
  for (const auto& r : records) {
    auto w = static_cast<std::size_t>(static_cast<double>(r.timestamp_us) / window_us);
    if (w >= n_windows) w = n_windows - 1;
    counts[w] += 1;
    bytes[w] += r.size_bytes;
    total_bytes += r.size_bytes;
    if (r.direction == Direction::downlink) downlink_bytes += r.size_bytes;
  }
  p.packets_per_s.reserve(n_windows);
  p.bits_per_s.reserve(n_windows);
  for (std::size_t w = 0; w < n_windows; ++w) {
    p.packets_per_s.push_back(static_cast<double>(counts[w]) / window_s);
    p.bits_per_s.push_back(static_cast<double>(bytes[w]) * 8.0 / window_s);
  }
  p.direction_ratio =
      total_bytes > 0 ? static_cast<double>(downlink_bytes) / static_cast<double>(total_bytes) : 0.0;

  std::vector<double> gaps;
  gaps.reserve(records.size() - 1);
  for (std::size_t i = 1; i < records.size(); ++i)
    gaps.push_back(static_cast<double>(records[i].timestamp_us - records[i - 1].timestamp_us));
  double mean = 0.0;
  for (double g : gaps) mean += g;
  mean /= static_cast<double>(gaps.size());
  double var = 0.0;
  for (double g : gaps) var += (g - mean) * (g - mean);
  var /= static_cast<double>(gaps.size());
  p.interarrival_mean_us = mean;
  p.interarrival_stddev_us = std::sqrt(var);

  std::sort(gaps.begin(), gaps.end());
  p.interarrival_p50_us = nearest_rank_percentile(gaps, 50.0);
  p.interarrival_p90_us = nearest_rank_percentile(gaps, 90.0);
  p.interarrival_p99_us = nearest_rank_percentile(gaps, 99.0);
  return p;
}

void save_profile_csv(const TrafficProfile& profile, const std::string& path) {
  std::ofstream os(path, std::ios::trunc);
  if (!os) throw std::runtime_error("cannot write profile: " + path);
  os << "# packets=" << profile.packet_count
     << " interarrival_mean_us=" << format_double(profile.interarrival_mean_us)
     << " interarrival_stddev_us=" << format_double(profile.interarrival_stddev_us)
     << " p50_us=" << format_double(profile.interarrival_p50_us)
     << " p90_us=" << format_double(profile.interarrival_p90_us)
     << " p99_us=" << format_double(profile.interarrival_p99_us)
     << " direction_ratio=" << format_double(profile.direction_ratio);
  if (profile.slice_type) os << " slice_type=" << to_string(*profile.slice_type);
  os << "\n";
  os << "window_start_s,packets_per_s,bits_per_s\n";
  for (std::size_t w = 0; w < profile.packets_per_s.size(); ++w)
    os << format_double(static_cast<double>(w) * profile.window_s) << ","
       << format_double(profile.packets_per_s[w]) << "," << format_double(profile.bits_per_s[w])
       << "\n";
  if (!os) throw std::runtime_error("short write: " + path);
}

void ResourceLookupTable::set(SliceType type, const std::string& vnf, int users,
                              DemandEntry entry) {
  entries_[{type, vnf, users}] = entry;
}

DemandLookup ResourceLookupTable::lookup(SliceType type, const std::string& vnf,
                                         int users) const {
  // collect this series' grid
  std::vector<std::pair<int, const DemandEntry*>> grid;
  auto it = entries_.lower_bound({type, vnf, std::numeric_limits<int>::min()});
  for (; it != entries_.end(); ++it) {
    const auto& [k_type, k_vnf, k_users] = it->first;
    if (k_type != type || k_vnf != vnf) break;
    grid.emplace_back(k_users, &it->second);
  }
  if (grid.empty())
    throw std::invalid_argument("no measurements for (" + to_string(type) + ", " + vnf + ")");

  DemandLookup out;
  if (users <= grid.front().first) {
    out.cpu_percent = grid.front().second->cpu_percent;
    out.mem_mib = grid.front().second->mem_mib;
    out.clamped = users < grid.front().first;
    return out;
  }
  if (users >= grid.back().first) {
    out.cpu_percent = grid.back().second->cpu_percent;
    out.mem_mib = grid.back().second->mem_mib;
    out.clamped = users > grid.back().first;
    return out;
  }
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (users > grid[i].first) continue;
    const auto& [u0, e0] = grid[i - 1];
    const auto& [u1, e1] = grid[i];
    if (users == u1) {
      out.cpu_percent = e1->cpu_percent;
      out.mem_mib = e1->mem_mib;
      return out;
    }
    const double f = static_cast<double>(users - u0) / static_cast<double>(u1 - u0);
    out.cpu_percent = e0->cpu_percent + (e1->cpu_percent - e0->cpu_percent) * f;
    if (e0->mem_mib && e1->mem_mib) out.mem_mib = *e0->mem_mib + (*e1->mem_mib - *e0->mem_mib) * f;
    return out;
  }
  throw std::logic_error("interpolation fell through");
}

std::vector<std::string> ResourceLookupTable::validate_monotone() const {
  std::vector<std::string> warnings;
  const DemandEntry* prev = nullptr;
  SliceType prev_type{};
  std::string prev_vnf;
  int prev_users = 0;
  for (const auto& [key, entry] : entries_) {
    const auto& [type, vnf, users] = key;
    if (prev != nullptr && type == prev_type && vnf == prev_vnf &&
        entry.cpu_percent < prev->cpu_percent) {
      warnings.push_back("(" + to_string(type) + ", " + vnf + ") cpu decreases from " +
                         format_double(prev->cpu_percent) + "% at " + std::to_string(prev_users) +
                         " users to " + format_double(entry.cpu_percent) + "% at " +
                         std::to_string(users));
    }
    prev = &entry;
    prev_type = type;
    prev_vnf = vnf;
    prev_users = users;
  }
  return warnings;
}

void ResourceLookupTable::save_csv(const std::string& path) const {
  std::ofstream os(path, std::ios::trunc);
  if (!os) throw std::runtime_error("cannot write lookup table: " + path);
  os << "slice_type,vnf,users,cpu_percent,mem_mib\n";
  for (const auto& [key, entry] : entries_) {
    const auto& [type, vnf, users] = key;
    os << to_string(type) << "," << vnf << "," << users << ","
       << format_double(entry.cpu_percent) << ",";
    if (entry.mem_mib) os << format_double(*entry.mem_mib);
    os << "\n";
  }
  if (!os) throw std::runtime_error("short write: " + path);
}

ResourceLookupTable ResourceLookupTable::load_csv(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open lookup table: " + path);
  std::string line;
  if (!std::getline(is, line)) throw std::runtime_error("empty lookup table: " + path);
  ResourceLookupTable table;
  std::size_t line_no = 1;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != 5)
      throw std::runtime_error(path + ":" + std::to_string(line_no) + ": expected 5 fields");
    DemandEntry entry;
    entry.cpu_percent = std::stod(fields[3]);
    if (!fields[4].empty()) entry.mem_mib = std::stod(fields[4]);
    table.set(slice_type_from_string(fields[0]), fields[1], std::stoi(fields[2]), entry);
  }
  return table;
}

ResourceLookupTable seed_demand_table() {
  ResourceLookupTable t;
  // eMBB, measured at 50 and 200 active users
  t.set(SliceType::embb, "DU", 50, {11.01, std::nullopt});
  t.set(SliceType::embb, "CU", 50, {9.18, std::nullopt});
  t.set(SliceType::embb, "UPF", 50, {14.15, std::nullopt});
  t.set(SliceType::embb, "DU", 200, {31.67, std::nullopt});
  t.set(SliceType::embb, "CU", 200, {31.04, std::nullopt});
  t.set(SliceType::embb, "UPF", 200, {41.48, std::nullopt});
  // URLLC at 200 users
  t.set(SliceType::urllc, "DU", 200, {2.93, std::nullopt});
  t.set(SliceType::urllc, "CU", 200, {1.19, std::nullopt});
  t.set(SliceType::urllc, "UPF", 200, {2.71, std::nullopt});
  // mMTC at 200 users, plus the sub-1.5% readings at 10 users kept as the
  // 1.5 upper bound
  t.set(SliceType::mmtc, "DU", 200, {2.77, std::nullopt});
  t.set(SliceType::mmtc, "CU", 200, {1.82, std::nullopt});
  t.set(SliceType::mmtc, "UPF", 200, {2.82, std::nullopt});
  t.set(SliceType::mmtc, "DU", 10, {1.5, std::nullopt});
  t.set(SliceType::mmtc, "CU", 10, {1.5, std::nullopt});
  t.set(SliceType::mmtc, "UPF", 10, {1.5, std::nullopt});
  return t;
}

DemandLookup lookup_demand(const ResourceLookupTable& table, SliceType type,
                           const std::string& vnf, int users) {
  return table.lookup(type, vnf, users);
}

}  // namespace slicesim
