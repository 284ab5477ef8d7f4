#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "burstlab/types.hpp"

namespace burstlab {

struct InteractionEvent {
  UserId who = 0;
  UserId whom = 0;
  Timestamp time = 0;
  Channel channel = Channel::Retweet;

  friend bool operator==(const InteractionEvent&, const InteractionEvent&) = default;
};

// Inclusive observation window. The defaults cover 2012-07-01 00:00:00 GMT
// through 2012-07-07 23:59:59 GMT.
struct TimeWindow {
  Timestamp start = 1341100800;
  Timestamp end = 1341705599;

  bool contains(Timestamp t) const { return t >= start && t <= end; }
  friend bool operator==(const TimeWindow&, const TimeWindow&) = default;
};

// Which column of a raw line holds the active user. `AActive` reads
// `userA userB t RT` as "userA retweeted userB".
enum class Direction : std::uint8_t { AActive, BActive };
enum class SelfPolicy : std::uint8_t { Drop, Keep };
enum class MalformedPolicy : std::uint8_t { Skip, Strict };

struct IngestOptions {
  TimeWindow window{};
  Direction direction = Direction::AActive;
  SelfPolicy self = SelfPolicy::Drop;
  MalformedPolicy malformed = MalformedPolicy::Skip;
};

struct ChannelCounts {
  std::size_t events = 0;
  std::size_t distinct_who = 0;
  std::size_t distinct_whom = 0;

  friend bool operator==(const ChannelCounts&, const ChannelCounts&) = default;
};

struct LogSummary {
  std::size_t total_events = 0;
  std::size_t total_users = 0;
  // Indexed by channel_index() for Retweet, Mention, Reply.
  std::array<ChannelCounts, 3> per_channel{};

  std::size_t lines_read = 0;
  std::size_t skipped_malformed = 0;
  std::size_t skipped_self = 0;
  std::size_t skipped_out_of_window = 0;
  // First few malformed-line messages, for the warning report.
  std::vector<std::string> warnings;

  const ChannelCounts& channel(Channel c) const { return per_channel.at(channel_index(c)); }
};

// Events sorted ascending by timestamp, ties kept in input order. Immutable
// once loaded.
struct EventLog {
  std::vector<InteractionEvent> events;
  TimeWindow window{};

  bool empty() const { return events.empty(); }
  std::size_t size() const { return events.size(); }
};

struct LoadedLog {
  EventLog log;
  LogSummary summary;
};

enum class LineKind : std::uint8_t { Event, SelfInteraction };

struct ParsedLine {
  LineKind kind = LineKind::Event;
  InteractionEvent event{};
};

// Parses one `userA userB timestamp TAG` line. Throws ParseError carrying
// `line_no` on a malformed line. A self-interaction is reported as
// LineKind::SelfInteraction when the policy is Drop.
ParsedLine parse_line(std::string_view line, std::size_t line_no, const IngestOptions& options);

// Reads, validates, filters to the window and sorts. Throws EmptyLogError when
// nothing survives filtering and ParseError on the first malformed line in
// strict mode.
LoadedLog load_log(std::istream& in, const IngestOptions& options = {});
LoadedLog load_log_file(const std::filesystem::path& path, const IngestOptions& options = {});

// Recounts a log. The skip counters of the result are zero.
LogSummary summarize(const EventLog& log);

// Serializes in the raw line format with the active user first, so that
// loading the output with default direction reproduces `log`.
void write_log(const EventLog& log, std::ostream& out);

}  // namespace burstlab
