#pragma once

#include <array>

#include "tacbench/dataset.hpp"
#include "tacbench/split.hpp"
#include "tacbench/types.hpp"

namespace tacbench {

struct ChannelRange {
  double min = 0.0;
  double max = 1.0;

  bool operator==(const ChannelRange&) const = default;
};

/// Per-channel min-max parameters fitted on the training split.
struct NormParams {
  std::array<ChannelRange, kChannelCount> ranges{};

  /// The identity transform (min 0, max 1 on every channel).
  static NormParams identity() noexcept { return {}; }

  bool operator==(const NormParams&) const = default;
};

/// Throws EmptySplit when the training split is empty and DegenerateChannel
/// when a channel is constant over it.
NormParams fit_minmax(const SensorDataset& dataset, const SplitAssignment& split);

/// v' = (v - min) / (max - min). Values outside the training range map outside [0, 1].
Label6 normalize(const Label6& values, const NormParams& params) noexcept;
Label6 denormalize(const Label6& values, const NormParams& params) noexcept;

std::string norm_params_to_json_text(const NormParams& params);
/// Accepts either a bare norm object or any document with a top-level "norm" key.
NormParams norm_params_from_json_text(std::string_view text);

}  // namespace tacbench
