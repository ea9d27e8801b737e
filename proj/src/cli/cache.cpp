#include "commucount/cli/cache.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <cstdlib>
#include <fstream>

namespace commucount::cli {

namespace {

/// Holds flock(2) on a path for the lifetime of the object.
class FileLock {
public:
    FileLock(const std::filesystem::path& path, int mode) {
        fd_ = ::open(path.c_str(), O_RDWR | O_CREAT, 0644);
        if (fd_ >= 0 && ::flock(fd_, mode) != 0) {
            ::close(fd_);
            fd_ = -1;
        }
    }
    ~FileLock() {
        if (fd_ >= 0) {
            ::flock(fd_, LOCK_UN);
            ::close(fd_);
        }
    }
    FileLock(const FileLock&) = delete;
    FileLock& operator=(const FileLock&) = delete;
    [[nodiscard]] bool held() const noexcept { return fd_ >= 0; }

private:
    int fd_ = -1;
};

}  // namespace

ResultCache::ResultCache(std::filesystem::path directory, std::string version, std::ostream& warn)
    : file_(std::move(directory) / "results.jsonl"), version_(std::move(version)), warn_(warn) {}

std::filesystem::path ResultCache::default_directory() {
    if (const char* dir = std::getenv("COMMUCOUNT_CACHE_DIR"); dir && *dir) return dir;
    if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg) return std::filesystem::path(xdg) / "commucount";
    if (const char* home = std::getenv("HOME"); home && *home) {
        return std::filesystem::path(home) / ".cache" / "commucount";
    }
    return std::filesystem::temp_directory_path() / "commucount-cache";
}

std::string ResultCache::key_for(const std::string& command, const std::map<std::string, std::string>& params) {
    return command + "?" + param_string(params);
}

std::optional<CommandResult> ResultCache::lookup(const std::string& key) const {
    std::error_code ec;
    if (!std::filesystem::exists(file_, ec)) return std::nullopt;
    FileLock lock(file_, LOCK_SH);
    std::ifstream in(file_);
    if (!in) return std::nullopt;
    std::optional<CommandResult> found;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        try {
            const auto j = nlohmann::ordered_json::parse(line);
            if (j.at("key").get<std::string>() != key) continue;
            if (j.at("version").get<std::string>() != version_) continue;
            found = from_json(j.at("result"));
        } catch (const std::exception&) {
            warn_ << "warning: skipping corrupt cache entry at " << file_.string() << ":" << line_no << "\n";
        }
    }
    return found;
}

bool ResultCache::store(const std::string& key, const CommandResult& result) const {
    std::error_code ec;
    std::filesystem::create_directories(file_.parent_path(), ec);
    FileLock lock(file_, LOCK_EX);
    std::ofstream out(file_, std::ios::app);
    if (!lock.held() || !out) {
        warn_ << "warning: cannot write cache file " << file_.string() << "\n";
        return false;
    }
    nlohmann::ordered_json line;
    line["key"] = key;
    line["version"] = version_;
    line["result"] = to_json(result);
    out << line.dump() << "\n";
    return static_cast<bool>(out.flush());
}

}  // namespace commucount::cli
