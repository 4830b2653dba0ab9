// Acceptance matrix: named verification items grouped by acceptance criterion.
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "skz/cache.hpp"

namespace skz {

struct VerifyItemInfo {
    std::string id;
    int ac = 0;
    bool p5 = false;  // belongs to the p = 5 additions
    std::string title;
};

struct VerifyResult {
    std::string id;
    int ac = 0;
    bool p5 = false;
    bool pass = false;
    std::vector<std::string> failures;
    std::vector<std::pair<std::string, std::string>> facts;  // deterministic key/value log
};

struct VerifyOptions {
    bool include_p5 = false;
    std::vector<std::string> items;  // empty: all (subject to include_p5)
    int threads = 1;
    bool progress = false;
    RingCache* cache = nullptr;
};

const std::vector<VerifyItemInfo>& verify_items();

// Throws std::invalid_argument for unknown item ids.
std::vector<VerifyResult> run_verification(const VerifyOptions& opt);

}  // namespace skz
