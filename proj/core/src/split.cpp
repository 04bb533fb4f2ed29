#include "tacbench/split.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "tacbench/rng.hpp"
#include "text_io.hpp"

namespace tacbench {
namespace {

template <typename T>
void shuffle_in_place(std::vector<T>& values, Rng& rng) {
  for (std::size_t i = values.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(rng.below(i));
    std::swap(values[i - 1], values[j]);
  }
}

}  // namespace

std::string_view to_string(Split split) noexcept {
  switch (split) {
    case Split::Train: return "train";
    case Split::Val: return "val";
    case Split::Test: return "test";
  }
  return "?";
}

std::optional<Split> parse_split(std::string_view name) noexcept {
  if (name == "train") return Split::Train;
  if (name == "val") return Split::Val;
  if (name == "test") return Split::Test;
  return std::nullopt;
}

std::vector<std::uint64_t> SplitAssignment::ids(Split which) const {
  std::vector<std::uint64_t> out;
  for (const auto& [id, s] : assignment) {
    if (s == which) out.push_back(id);
  }
  return out;
}

std::array<std::size_t, 3> SplitAssignment::counts() const {
  std::array<std::size_t, 3> c{};
  for (const auto& [id, s] : assignment) ++c[static_cast<std::size_t>(s)];
  return c;
}

std::optional<Split> SplitAssignment::find(std::uint64_t sample_id) const {
  const auto it = assignment.find(sample_id);
  if (it == assignment.end()) return std::nullopt;
  return it->second;
}

std::array<std::size_t, 3> split_targets(std::size_t n, const SplitRatios& ratios) {
  const double total = ratios.train + ratios.val + ratios.test;
  if (!(ratios.train >= 0 && ratios.val >= 0 && ratios.test >= 0) || total <= 0.0) {
    throw Error(ErrorKind::InvalidArgument, "split ratios must be non-negative with a positive sum");
  }
  const auto nd = static_cast<double>(n);
  auto train = static_cast<std::size_t>(std::llround(nd * ratios.train / total));
  auto val = static_cast<std::size_t>(std::llround(nd * ratios.val / total));
  train = std::min(train, n);
  val = std::min(val, n - train);
  return {train, val, n - train - val};
}

SplitAssignment split_dataset(const SensorDataset& dataset, const SplitRatios& ratios,
                              std::uint64_t seed, bool group_by_point) {
  if (dataset.empty()) throw Error(ErrorKind::EmptySplit, "cannot split an empty dataset");
  const auto targets = split_targets(dataset.size(), ratios);
  Rng rng(seed);
  SplitAssignment out;
  out.seed = seed;

  if (!group_by_point) {
    auto ids = dataset.ids();
    std::sort(ids.begin(), ids.end());
    shuffle_in_place(ids, rng);
    for (std::size_t i = 0; i < ids.size(); ++i) {
      const Split s = i < targets[0]               ? Split::Train
                      : i < targets[0] + targets[1] ? Split::Val
                                                    : Split::Test;
      out.assignment.emplace(ids[i], s);
    }
  } else {
    std::map<std::int64_t, std::vector<std::uint64_t>> by_point;
    for (const auto& s : dataset.samples()) by_point[s.point_id].push_back(s.sample_id);
    std::vector<std::int64_t> points;
    points.reserve(by_point.size());
    for (const auto& entry : by_point) points.push_back(entry.first);
    shuffle_in_place(points, rng);

    std::array<std::size_t, 3> filled{};
    for (auto point : points) {
      // Largest relative shortfall wins; ties go to the earlier split.
      std::size_t best = 0;
      double best_gap = -std::numeric_limits<double>::infinity();
      for (std::size_t k = 0; k < 3; ++k) {
        if (targets[k] == 0) continue;
        const double gap = (static_cast<double>(targets[k]) - static_cast<double>(filled[k])) /
                           static_cast<double>(targets[k]);
        if (gap > best_gap) {
          best_gap = gap;
          best = k;
        }
      }
      const auto& members = by_point[point];
      filled[best] += members.size();
      for (auto id : members) out.assignment.emplace(id, static_cast<Split>(best));
    }
  }

  const auto c = out.counts();
  for (std::size_t k = 0; k < 3; ++k) {
    if (c[k] == 0) {
      throw Error(ErrorKind::EmptySplit, "dataset of " + std::to_string(dataset.size()) +
                                             " samples leaves the " +
                                             std::string(to_string(static_cast<Split>(k))) +
                                             " split empty");
    }
  }
  return out;
}

SplitAssignment load_split(const std::filesystem::path& path) {
  const auto lines = detail::read_lines(path);
  if (lines.empty()) throw Error(ErrorKind::SchemaError, "split file is empty");
  const auto header = detail::split_fields(lines.front());
  if (header.size() != 2 || header[0] != "sample_id" || header[1] != "split") {
    throw Error(ErrorKind::MissingColumn, "split.csv header must be 'sample_id,split'");
  }
  SplitAssignment out;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (detail::trim(lines[i]).empty()) continue;
    const auto fields = detail::split_fields(lines[i]);
    if (fields.size() != 2) {
      throw Error(ErrorKind::SchemaError, "split.csv line " + std::to_string(i + 1) + " malformed");
    }
    const auto id = detail::parse_uint(fields[0], "sample_id");
    const auto s = parse_split(fields[1]);
    if (!s) throw Error(ErrorKind::SchemaError, "unknown split '" + std::string(fields[1]) + "'");
    if (!out.assignment.emplace(id, *s).second) {
      throw Error(ErrorKind::DuplicateSampleId, "sample " + std::to_string(id) + " split twice");
    }
  }
  return out;
}

void save_split(const SplitAssignment& split, const std::filesystem::path& path) {
  std::string text = "sample_id,split\n";
  for (const auto& [id, s] : split.assignment) {
    text += std::to_string(id);
    text += ',';
    text += to_string(s);
    text += '\n';
  }
  detail::write_text(path, text);
}

void check_split_covers(const SplitAssignment& split, const SensorDataset& dataset) {
  for (const auto& [id, s] : split.assignment) {
    if (dataset.find(id) == nullptr) {
      throw Error(ErrorKind::UnknownSampleId, "split lists sample " + std::to_string(id) +
                                                  " which is not in the dataset");
    }
  }
  for (const auto& sample : dataset.samples()) {
    if (!split.assignment.contains(sample.sample_id)) {
      throw Error(ErrorKind::SchemaError,
                  "sample " + std::to_string(sample.sample_id) + " has no split assignment");
    }
  }
}

}  // namespace tacbench
