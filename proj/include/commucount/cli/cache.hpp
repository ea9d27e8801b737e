#pragma once

/**
 * Append-only JSON-lines store of computed results, one file per cache
 * directory. Each line is {"key", "version", "result"}; lookups take the
 * last matching line. Appends hold an exclusive flock on the file.
 */

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>

#include "commucount/cli/result.hpp"

namespace commucount::cli {

class ResultCache {
public:
    /// `warn` receives one line per skipped corrupt entry.
    ResultCache(std::filesystem::path directory, std::string version, std::ostream& warn);

    /// COMMUCOUNT_CACHE_DIR, else $XDG_CACHE_HOME/commucount, else
    /// ~/.cache/commucount, else a directory under the system temp path.
    static std::filesystem::path default_directory();

    /// command + canonical params.
    static std::string key_for(const std::string& command, const std::map<std::string, std::string>& params);

    [[nodiscard]] std::optional<CommandResult> lookup(const std::string& key) const;
    /// Returns false (after a warning) when the file cannot be written.
    bool store(const std::string& key, const CommandResult& result) const;

    [[nodiscard]] const std::filesystem::path& file() const noexcept { return file_; }

private:
    std::filesystem::path file_;
    std::string version_;
    std::ostream& warn_;
};

}  // namespace commucount::cli
