// Triple and symmetric Massey products in the cobar complex.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "skz/cobar.hpp"

namespace skz {

// value + span(basis) inside H^{s,t}, coordinates over the representative basis.
struct Coset {
    CohomClass value;
    std::vector<std::vector<Residue>> basis;  // reduced echelon basis
    bool exact = true;                        // false when basis is only a sampled lower bound

    bool contains(const PrimeField& f, const CohomClass& c) const;
};

bool cosets_intersect(const PrimeField& f, const Coset& a, const Coset& b);
Coset left_multiply(const CohomologyRing& h, const CohomClass& x, const Coset& c);
Coset right_multiply(const CohomologyRing& h, const Coset& c, const CohomClass& y);

struct MasseyResult {
    bool defined = false;
    int failed_stage = 0;  // 1-based stage of the first unsolvable δ equation
    std::string reason;
    int s = 0;
    int t = 0;
    Coset coset;
    Cochain representative;                // related cocycle
    std::vector<Cochain> defining_system;  // u_1, u_2 for triples; a_1..a_{k-1} for powers
    std::vector<CohomClass> coset_sample;
};

// Extra cocycles added to the solved u_i (triple) or a_i (symmetric, index i-1), for
// exercising alternative defining systems.
using Shifts = std::vector<Cochain>;

MasseyResult massey_triple(const CohomologyRing& h, const CohomClass& a1, const CohomClass& a2, const CohomClass& a3,
                           const Shifts& shifts = {});

// ⟨a⟩^k. When some intermediate cohomology group is nonzero the indeterminacy is
// estimated from `samples` randomly perturbed defining systems and flagged inexact.
MasseyResult massey_symmetric(const CohomologyRing& h, const CohomClass& a, int k, const Shifts& shifts = {},
                              int samples = 4, std::uint64_t seed = 1);

// Random cocycle in a bidegree (combination of representatives plus a coboundary), or zero.
Cochain random_cocycle(const CohomologyRing& h, int s, int t, std::uint64_t seed);

}  // namespace skz
