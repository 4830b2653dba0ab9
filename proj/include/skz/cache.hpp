// Memoized cohomology rings, optionally persisted in a content-addressed directory.
#pragma once

#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <string>

#include "skz/cobar.hpp"

namespace skz {

// Environment variable naming the default cache directory.
inline constexpr const char* kCacheEnv = "SKZ_CACHE_DIR";

class RingCache {
public:
    explicit RingCache(std::optional<std::filesystem::path> dir = std::nullopt);
    static std::optional<std::filesystem::path> dir_from_env();

    // Ring for (a, options); threads/progress in `o` do not affect the key.
    RingPtr get(AlgebraPtr a, const CohomologyOptions& o);
    std::filesystem::path file_for(std::uint64_t hash) const;
    const std::optional<std::filesystem::path>& dir() const { return dir_; }

    std::size_t disk_hits() const { return disk_hits_; }
    std::size_t computed() const { return computed_; }

private:
    std::optional<std::filesystem::path> dir_;
    std::mutex mu_;
    std::map<std::uint64_t, RingPtr> mem_;
    std::size_t disk_hits_ = 0, computed_ = 0;
};

}  // namespace skz
