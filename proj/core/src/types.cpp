#include "burstlab/types.hpp"

namespace burstlab {

std::string_view to_string(Channel c) {
  switch (c) {
    case Channel::Retweet: return "rt";
    case Channel::Mention: return "mention";
    case Channel::Reply: return "reply";
    case Channel::All: return "all";
  }
  return "?";
}

std::string_view to_string(Role r) {
  return r == Role::Active ? "active" : "passive";
}

std::optional<Channel> parse_channel(std::string_view name) {
  if (name == "all") return Channel::All;
  if (name == "rt" || name == "retweet") return Channel::Retweet;
  if (name == "mention" || name == "mt") return Channel::Mention;
  if (name == "reply" || name == "re") return Channel::Reply;
  return std::nullopt;
}

std::optional<Role> parse_role(std::string_view name) {
  if (name == "active" || name == "who") return Role::Active;
  if (name == "passive" || name == "whom") return Role::Passive;
  return std::nullopt;
}

std::string_view channel_tag(Channel c) {
  switch (c) {
    case Channel::Retweet: return "RT";
    case Channel::Mention: return "MT";
    case Channel::Reply: return "RE";
    case Channel::All: break;
  }
  return "ALL";
}

std::optional<Channel> parse_channel_tag(std::string_view tag) {
  if (tag == "RT") return Channel::Retweet;
  if (tag == "MT") return Channel::Mention;
  if (tag == "RE") return Channel::Reply;
  return std::nullopt;
}

}  // namespace burstlab
