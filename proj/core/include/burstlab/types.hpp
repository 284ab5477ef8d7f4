#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <string_view>

namespace burstlab {

using UserId = std::uint64_t;

// Seconds since the Unix epoch, GMT.
using Timestamp = std::int64_t;

// Interaction channel. `All` is an analysis-time aggregate and never appears
// on a stored event.
enum class Channel : std::uint8_t { Retweet, Mention, Reply, All };

enum class Role : std::uint8_t { Active, Passive };

inline constexpr std::array<Channel, 3> kEventChannels{Channel::Retweet, Channel::Mention,
                                                       Channel::Reply};
inline constexpr std::array<Channel, 4> kAnalysisChannels{Channel::All, Channel::Retweet,
                                                          Channel::Mention, Channel::Reply};
inline constexpr std::array<Role, 2> kRoles{Role::Active, Role::Passive};

constexpr std::size_t channel_index(Channel c) { return static_cast<std::size_t>(c); }

// Lower-case names used on the command line and in output files:
// "rt", "mention", "reply", "all" and "active", "passive".
std::string_view to_string(Channel c);
std::string_view to_string(Role r);
std::optional<Channel> parse_channel(std::string_view name);
std::optional<Role> parse_role(std::string_view name);

// Tags used in the raw log format: RT, MT, RE.
std::string_view channel_tag(Channel c);
std::optional<Channel> parse_channel_tag(std::string_view tag);

struct TrainKey {
  UserId user = 0;
  Role role = Role::Active;
  Channel channel = Channel::All;

  friend auto operator<=>(const TrainKey&, const TrainKey&) = default;
};

}  // namespace burstlab
