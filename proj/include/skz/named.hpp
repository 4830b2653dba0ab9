// Named cohomology classes (α, β, u, v, x₁, x₂, e, w, σ, τ, z) resolved from explicit cobar representatives.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "skz/cobar.hpp"

namespace skz {

struct NamedClass {
    std::string name;      // ascii: alpha, beta, x1, x2, u, v, e, w, sigma, tau, z
    CohomClass cls;
    std::string how;       // "representative" or "bidegree position"
    std::string representative;
};

// Letters playing the roles of a, b, c = [a, b] in C(3).
struct Roles {
    std::string a = "a", b = "b", c = "c";
    bool with_w = false;
};

std::vector<NamedClass> named_classes(const CohomologyRing& h, const Roles& roles);
// Single generator x of F_p[x]/(x^{p^n}): z = [x*], e = Σ [(x^r)*|(x^{N-r})*].
std::vector<NamedClass> truncated_named(const CohomologyRing& h, const std::string& x, int height);
// Chooses a naming scheme from the algebra's generator names.
std::vector<NamedClass> default_named(const CohomologyRing& h);

// Accepts ascii names and the Greek/subscript spellings.
std::optional<NamedClass> find_named(const std::vector<NamedClass>& v, const std::string& name);

}  // namespace skz
