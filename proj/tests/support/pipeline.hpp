#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace testing_support {

/// Runs the command-line tool in-process. Returns its exit code.
int run(const std::vector<std::string>& args, std::string* out = nullptr, std::string* err = nullptr);

/// simulate, split, fit-baseline, predict, every eval, report and radar under
/// `root`. Returns the first nonzero exit code, or 0.
int run_full_pipeline(const std::filesystem::path& root, const std::string& seed, std::string* log = nullptr);

/// Relative path to file contents for every regular file under `root`.
std::map<std::string, std::string> snapshot(const std::filesystem::path& root);

}  // namespace testing_support
