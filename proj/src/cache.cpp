#include "skz/cache.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include "skz/specseq.hpp"

namespace skz {

RingCache::RingCache(std::optional<std::filesystem::path> dir) : dir_(std::move(dir)) {}

std::optional<std::filesystem::path> RingCache::dir_from_env() {
    const char* v = std::getenv(kCacheEnv);
    if (!v || !*v) return std::nullopt;
    return std::filesystem::path(v);
}

std::filesystem::path RingCache::file_for(std::uint64_t hash) const {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
    return *dir_ / (std::string("skz-") + buf + ".cohom");
}

RingPtr RingCache::get(AlgebraPtr a, const CohomologyOptions& o) {
    const std::uint64_t key = CohomologyRing::content_hash(*a, o);
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = mem_.find(key);
        // hash collisions between different algebras would be caught here
        if (it != mem_.end() && same_structure(it->second->algebra(), *a)) return it->second;
    }
    RingPtr ring;
    if (dir_) {
        std::ifstream in(file_for(key), std::ios::binary);
        if (in) {
            try {
                auto r = CohomologyRing::load(in, a);
                ring = r;
                ++disk_hits_;
            } catch (const std::exception& e) {
                if (o.progress) std::cerr << "[cache] ignoring " << file_for(key) << ": " << e.what() << "\n";
            }
        }
    }
    if (!ring) {
        ring = CohomologyRing::compute(a, o);
        ++computed_;
        if (dir_) {
            std::error_code ec;
            std::filesystem::create_directories(*dir_, ec);
            auto path = file_for(key);
            auto tmp = path;
            tmp += ".tmp";
            {
                std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
                if (out) ring->save(out);
            }
            std::filesystem::rename(tmp, path, ec);
            if (ec && o.progress) std::cerr << "[cache] could not write " << path << ": " << ec.message() << "\n";
        }
    }
    std::lock_guard<std::mutex> lock(mu_);
    mem_[key] = ring;
    return ring;
}

}  // namespace skz
