#include "skz/named.hpp"

#include <map>

namespace skz {

namespace {

std::string pw(const std::string& x, int i) { return i == 1 ? x : x + "^" + std::to_string(i); }

void try_add(std::vector<NamedClass>& out, const CohomologyRing& h, const std::string& name,
             const std::vector<std::pair<long long, std::string>>& terms) {
    try {
        Cochain c = cochain_from_terms(h.algebra(), terms);
        if (!h.dim(c.s, c.t) || !h.has_reps(c.s, c.t)) return;
        NamedClass n{name, h.classify(c), "representative", format_cochain(h.algebra(), c)};
        out.push_back(std::move(n));
    } catch (const std::exception&) {
        // representative not available in this algebra or range
    }
}

void add_by_position(std::vector<NamedClass>& out, const CohomologyRing& h, const std::string& name, int s, int t) {
    auto d = h.dim(s, t);
    if (!d || *d == 0 || !h.has_reps(s, t)) return;
    NamedClass n{name, h.basis_class(s, t, 0), "bidegree position", format_cochain(h.algebra(), h.rep(s, t, 0))};
    out.push_back(std::move(n));
}

std::vector<std::pair<long long, std::string>> power_pairs(const std::string& x, int n) {
    std::vector<std::pair<long long, std::string>> terms;
    for (int i = 1; i < n; ++i) terms.push_back({1, pw(x, i) + "|" + pw(x, n - i)});
    return terms;
}

}  // namespace

std::vector<NamedClass> named_classes(const CohomologyRing& h, const Roles& r) {
    const int p = int(h.field().p());
    std::vector<NamedClass> out;
    try_add(out, h, "alpha", {{1, r.a}});
    try_add(out, h, "beta", {{1, r.b}});
    try_add(out, h, "x1", {{1, r.a + "|" + r.c}, {1, pw(r.a, 2) + "|" + r.b}});
    try_add(out, h, "x2", {{-1, r.a + "|" + pw(r.b, 2)}, {-1, r.c + "|" + r.b}});
    try_add(out, h, "u", power_pairs(r.a, p));
    try_add(out, h, "v", power_pairs(r.b, p));
    add_by_position(out, h, "e", 2, 4 * p);
    if (r.with_w) add_by_position(out, h, "w", 2, 2 * p * p);
    return out;
}

std::vector<NamedClass> truncated_named(const CohomologyRing& h, const std::string& x, int height) {
    std::vector<NamedClass> out;
    try_add(out, h, "z", {{1, x}});
    try_add(out, h, "e", power_pairs(x, height));
    return out;
}

std::vector<NamedClass> default_named(const CohomologyRing& h) {
    const auto& names = h.algebra().meta().generator_names;
    auto has = [&](const std::string& n) {
        for (const auto& x : names)
            if (x == n) return true;
        return false;
    };
    if (has("f") && has("g") && has("h")) return named_classes(h, Roles{"f", "g", "h", true});
    if (has("a") && has("b") && has("c")) return named_classes(h, Roles{"a", "b", "c", false});
    if (names.size() == 1) {
        // height of the generator: largest k with x^k a basis label, plus one
        int k = 1;
        while (h.algebra().index_of_label(pw(names[0], k + 1))) ++k;
        return truncated_named(h, names[0], k + 1);
    }
    if (names.size() == 2) {
        std::vector<NamedClass> out;
        try_add(out, h, "sigma", {{1, names[0]}});
        try_add(out, h, "tau", {{1, names[1]}});
        return out;
    }
    return {};
}

std::optional<NamedClass> find_named(const std::vector<NamedClass>& v, const std::string& name) {
    static const std::map<std::string, std::string> alias = {
        {"α", "alpha"}, {"β", "beta"}, {"x₁", "x1"}, {"x₂", "x2"}, {"σ", "sigma"}, {"τ", "tau"}, {"ζ", "z"}};
    std::string key = name;
    if (auto it = alias.find(name); it != alias.end()) key = it->second;
    for (const auto& n : v)
        if (n.name == key) return n;
    return std::nullopt;
}

}  // namespace skz
