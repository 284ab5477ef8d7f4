#include "burstlab/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <iterator>
#include <ostream>
#include <sstream>

#include "burstlab/error.hpp"

namespace burstlab {
namespace {

constexpr std::size_t kMaxWarnings = 20;

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f'; }

// Splits on runs of whitespace. Returns the number of fields found, up to
// fields.size() + 1 so that an overlong line is detectable.
std::size_t split_fields(std::string_view line, std::array<std::string_view, 4>& fields) {
  std::size_t n = 0;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && is_space(line[i])) ++i;
    if (i == line.size()) break;
    std::size_t j = i;
    while (j < line.size() && !is_space(line[j])) ++j;
    if (n == fields.size()) return n + 1;
    fields[n++] = line.substr(i, j - i);
    i = j;
  }
  return n;
}

template <typename T>
bool parse_integer(std::string_view s, T& out) {
  if (s.empty()) return false;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if constexpr (std::is_signed_v<T>) {
    if (*first == '+') ++first;
  }
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc{} && ptr == last;
}

bool is_blank_or_comment(std::string_view line) {
  for (char c : line) {
    if (is_space(c)) continue;
    return c == '#';
  }
  return true;
}

}  // namespace

ParsedLine parse_line(std::string_view line, std::size_t line_no, const IngestOptions& options) {
  std::array<std::string_view, 4> f;
  const std::size_t n = split_fields(line, f);
  if (n != 4) {
    throw ParseError(line_no, "expected 4 fields (userA userB timestamp tag), found " +
                                  (n > 4 ? std::string("more than 4") : std::to_string(n)));
  }
  UserId a = 0;
  UserId b = 0;
  Timestamp t = 0;
  if (!parse_integer(f[0], a)) throw ParseError(line_no, "non-numeric user id '" + std::string(f[0]) + "'");
  if (!parse_integer(f[1], b)) throw ParseError(line_no, "non-numeric user id '" + std::string(f[1]) + "'");
  if (!parse_integer(f[2], t)) throw ParseError(line_no, "non-numeric timestamp '" + std::string(f[2]) + "'");
  const auto channel = parse_channel_tag(f[3]);
  if (!channel) throw ParseError(line_no, "unknown channel tag '" + std::string(f[3]) + "'");

  ParsedLine out;
  out.event.channel = *channel;
  out.event.time = t;
  if (options.direction == Direction::AActive) {
    out.event.who = a;
    out.event.whom = b;
  } else {
    out.event.who = b;
    out.event.whom = a;
  }
  if (a == b && options.self == SelfPolicy::Drop) out.kind = LineKind::SelfInteraction;
  return out;
}

LogSummary summarize(const EventLog& log) {
  LogSummary s;
  std::array<std::vector<UserId>, 3> who;
  std::array<std::vector<UserId>, 3> whom;
  std::vector<UserId> everyone;
  everyone.reserve(log.events.size() * 2);

  for (const auto& e : log.events) {
    const auto c = channel_index(e.channel);
    ++s.per_channel[c].events;
    who[c].push_back(e.who);
    whom[c].push_back(e.whom);
    everyone.push_back(e.who);
    everyone.push_back(e.whom);
  }

  auto distinct = [](std::vector<UserId>& v) {
    std::sort(v.begin(), v.end());
    return static_cast<std::size_t>(std::unique(v.begin(), v.end()) - v.begin());
  };
  for (std::size_t c = 0; c < 3; ++c) {
    s.per_channel[c].distinct_who = distinct(who[c]);
    s.per_channel[c].distinct_whom = distinct(whom[c]);
  }
  s.total_events = log.events.size();
  s.total_users = distinct(everyone);
  return s;
}

LoadedLog load_log(std::istream& in, const IngestOptions& options) {
  if (options.window.start > options.window.end) {
    throw Error("observation window start is after its end");
  }
  const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  if (in.bad()) throw IoError("read failure while loading log");

  LoadedLog result;
  result.log.window = options.window;
  auto& events = result.log.events;
  events.reserve(text.size() / 28);

  std::size_t malformed = 0;
  std::size_t self = 0;
  std::size_t outside = 0;
  std::size_t line_no = 0;
  std::vector<std::string> warnings;

  std::string_view rest(text);
  while (!rest.empty()) {
    const auto nl = rest.find('\n');
    const std::string_view line = rest.substr(0, nl);
    rest = nl == std::string_view::npos ? std::string_view{} : rest.substr(nl + 1);
    ++line_no;
    if (is_blank_or_comment(line)) continue;

    ParsedLine parsed;
    try {
      parsed = parse_line(line, line_no, options);
    } catch (const ParseError& e) {
      if (options.malformed == MalformedPolicy::Strict) throw;
      ++malformed;
      if (warnings.size() < kMaxWarnings) warnings.emplace_back(e.what());
      continue;
    }
    if (parsed.kind == LineKind::SelfInteraction) {
      ++self;
      continue;
    }
    if (!options.window.contains(parsed.event.time)) {
      ++outside;
      continue;
    }
    events.push_back(parsed.event);
  }

  if (events.empty()) {
    throw EmptyLogError("log is empty after filtering (" + std::to_string(line_no) +
                        " lines read, " + std::to_string(outside) + " outside the window, " +
                        std::to_string(malformed) + " malformed)");
  }

  std::stable_sort(events.begin(), events.end(),
                   [](const InteractionEvent& x, const InteractionEvent& y) { return x.time < y.time; });

  result.summary = summarize(result.log);
  result.summary.lines_read = line_no;
  result.summary.skipped_malformed = malformed;
  result.summary.skipped_self = self;
  result.summary.skipped_out_of_window = outside;
  result.summary.warnings = std::move(warnings);
  return result;
}

LoadedLog load_log_file(const std::filesystem::path& path, const IngestOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open input file '" + path.string() + "'");
  return load_log(in, options);
}

void write_log(const EventLog& log, std::ostream& out) {
  for (const auto& e : log.events) {
    out << e.who << ' ' << e.whom << ' ' << e.time << ' ' << channel_tag(e.channel) << '\n';
  }
}

}  // namespace burstlab
