#include "tacbench/types.hpp"

namespace tacbench {
namespace {

constexpr std::array<Channel, 2> kFxy{Channel::Fx, Channel::Fy};
constexpr std::array<Channel, 1> kFz{Channel::Fz};
constexpr std::array<Channel, 2> kPxy{Channel::Px, Channel::Py};
constexpr std::array<Channel, 1> kPz{Channel::Pz};

}  // namespace

std::span<const Channel> channels_of(ChannelGroup group) noexcept {
  switch (group) {
    case ChannelGroup::Fxy: return kFxy;
    case ChannelGroup::Fz: return kFz;
    case ChannelGroup::Pxy: return kPxy;
    case ChannelGroup::Pz: return kPz;
  }
  return {};
}

bool is_force(ChannelGroup group) noexcept {
  return group == ChannelGroup::Fxy || group == ChannelGroup::Fz;
}

std::string_view to_string(Channel c) noexcept {
  switch (c) {
    case Channel::Px: return "Px";
    case Channel::Py: return "Py";
    case Channel::Pz: return "Pz";
    case Channel::Fx: return "Fx";
    case Channel::Fy: return "Fy";
    case Channel::Fz: return "Fz";
  }
  return "?";
}

std::string_view to_string(ChannelGroup g) noexcept {
  switch (g) {
    case ChannelGroup::Fxy: return "Fxy";
    case ChannelGroup::Fz: return "Fz";
    case ChannelGroup::Pxy: return "Pxy";
    case ChannelGroup::Pz: return "Pz";
  }
  return "?";
}

std::optional<Channel> parse_channel(std::string_view name) noexcept {
  for (Channel c : kAllChannels) {
    if (to_string(c) == name) return c;
  }
  return std::nullopt;
}

std::optional<ChannelGroup> parse_group(std::string_view name) noexcept {
  for (ChannelGroup g : kAllGroups) {
    if (to_string(g) == name) return g;
  }
  return std::nullopt;
}

}  // namespace tacbench
