// Runs the full verification matrix (including p = 5) and prints one line per criterion.
#include <cstdlib>
#include <iostream>
#include <map>
#include <string>

#include "skz/verify.hpp"

int main(int argc, char** argv) {
    skz::VerifyOptions opt;
    opt.include_p5 = true;
    if (const char* t = std::getenv("SKZ_THREADS")) opt.threads = std::max(1, std::atoi(t));
    opt.progress = argc > 1 && std::string(argv[1]) == "-v";
    auto results = skz::run_verification(opt);

    std::map<int, bool> pass;
    std::map<int, std::string> items;
    for (int ac = 1; ac <= 14; ++ac) pass[ac] = false;
    std::map<int, int> count;
    for (const auto& r : results) {
        bool prev = count[r.ac]++ ? pass[r.ac] : true;
        pass[r.ac] = prev && r.pass;
        items[r.ac] += (items[r.ac].empty() ? "" : ",") + r.id;
        for (const auto& f : r.failures) std::cerr << "  " << r.id << ": " << f << "\n";
    }
    bool all = true;
    for (int ac = 1; ac <= 14; ++ac) {
        bool ok = count[ac] > 0 && pass[ac];
        all &= ok;
        std::cout << "AC" << ac << ": " << (ok ? "PASS" : "FAIL") << " [" << items[ac] << "]\n";
    }
    return all ? 0 : 1;
}
