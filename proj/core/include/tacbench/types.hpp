#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

namespace tacbench {

/// Label channels in sample-table order: position (mm) then force (N).
enum class Channel : std::uint8_t { Px = 0, Py, Pz, Fx, Fy, Fz };

inline constexpr std::size_t kChannelCount = 6;
inline constexpr std::array<Channel, kChannelCount> kAllChannels{
    Channel::Px, Channel::Py, Channel::Pz, Channel::Fx, Channel::Fy, Channel::Fz};

/// Ground truth or predicted (Px, Py, Pz, Fx, Fy, Fz).
using Label6 = std::array<double, kChannelCount>;

constexpr std::size_t index_of(Channel c) noexcept { return static_cast<std::size_t>(c); }

/// Reporting rows. The xy groups stack their two channels into one series.
enum class ChannelGroup : std::uint8_t { Fxy = 0, Fz, Pxy, Pz };

inline constexpr std::array<ChannelGroup, 4> kAllGroups{
    ChannelGroup::Fxy, ChannelGroup::Fz, ChannelGroup::Pxy, ChannelGroup::Pz};

std::span<const Channel> channels_of(ChannelGroup group) noexcept;
bool is_force(ChannelGroup group) noexcept;

std::string_view to_string(Channel c) noexcept;
std::string_view to_string(ChannelGroup g) noexcept;
std::optional<Channel> parse_channel(std::string_view name) noexcept;
std::optional<ChannelGroup> parse_group(std::string_view name) noexcept;

}  // namespace tacbench
