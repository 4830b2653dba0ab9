#include "skz/massey.hpp"

#include <random>
#include <stdexcept>

namespace skz {

namespace {

std::vector<std::vector<Residue>> echelon_basis(const PrimeField& f, std::size_t n,
                                                const std::vector<std::vector<Residue>>& vs) {
    if (n == 0) return {};
    return Subspace::span(f, n, vs).basis_vectors();
}

std::vector<Residue> diff(const PrimeField& f, const std::vector<Residue>& a, const std::vector<Residue>& b) {
    std::vector<Residue> d(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) d[i] = f.sub(a[i], b[i]);
    return d;
}

Cochain zero_cochain(int s, int t) {
    Cochain c;
    c.s = s;
    c.t = t;
    return c;
}

Cochain plus(const PrimeField& f, Cochain a, const Cochain& b) {
    int s = a.s, t = a.t;
    a.add(f, b);
    a.s = s;
    a.t = t;
    return a;
}

// Classes x·H^{s,t} (or H^{s,t}·y) spanning a product indeterminacy term.
std::vector<std::vector<Residue>> product_span(const CohomologyRing& h, const CohomClass& x, int s, int t, bool left,
                                               bool& exact) {
    std::vector<std::vector<Residue>> out;
    if (s < 1 || t < 1) return out;
    auto d = h.dim(s, t);
    if (!d) {
        exact = false;
        return out;
    }
    for (std::size_t i = 0; i < *d; ++i) {
        if (!h.has_reps(s, t)) {
            exact = false;
            return out;
        }
        auto b = h.basis_class(s, t, i);
        out.push_back((left ? h.cup(x, b) : h.cup(b, x)).coords);
    }
    return out;
}

}  // namespace

bool Coset::contains(const PrimeField& f, const CohomClass& c) const {
    if (c.s != value.s || c.t != value.t) return false;
    auto d = diff(f, c.coords, value.coords);
    if (basis.empty()) {
        for (auto x : d)
            if (x) return false;
        return true;
    }
    return Subspace::span(f, d.size(), basis).contains(f, d);
}

bool cosets_intersect(const PrimeField& f, const Coset& a, const Coset& b) {
    if (a.value.s != b.value.s || a.value.t != b.value.t) return false;
    auto d = diff(f, a.value.coords, b.value.coords);
    std::vector<std::vector<Residue>> all = a.basis;
    all.insert(all.end(), b.basis.begin(), b.basis.end());
    if (all.empty()) {
        for (auto x : d)
            if (x) return false;
        return true;
    }
    return Subspace::span(f, d.size(), all).contains(f, d);
}

Coset left_multiply(const CohomologyRing& h, const CohomClass& x, const Coset& c) {
    Coset out;
    out.value = h.cup(x, c.value);
    out.exact = c.exact;
    std::vector<std::vector<Residue>> vs;
    for (const auto& b : c.basis) {
        CohomClass bc{c.value.s, c.value.t, b};
        vs.push_back(h.cup(x, bc).coords);
    }
    out.basis = echelon_basis(h.field(), out.value.coords.size(), vs);
    return out;
}

Coset right_multiply(const CohomologyRing& h, const Coset& c, const CohomClass& y) {
    Coset out;
    out.value = h.cup(c.value, y);
    out.exact = c.exact;
    std::vector<std::vector<Residue>> vs;
    for (const auto& b : c.basis) {
        CohomClass bc{c.value.s, c.value.t, b};
        vs.push_back(h.cup(bc, y).coords);
    }
    out.basis = echelon_basis(h.field(), out.value.coords.size(), vs);
    return out;
}

Cochain random_cocycle(const CohomologyRing& h, int s, int t, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const PrimeField& f = h.field();
    Cochain c = zero_cochain(s, t);
    auto d = h.dim(s, t);
    if (d && h.has_reps(s, t))
        for (std::size_t i = 0; i < *d; ++i) c = plus(f, c, scaled(f, h.rep(s, t, i), Residue(rng() % f.p())));
    // add a coboundary of a random cochain one step down
    if (s >= 2 && t >= 1) {
        std::size_t n = h.cochain_dim(s - 1, t);
        if (n) {
            SparseVec v;
            for (std::size_t i = 0; i < n; ++i)
                if (rng() % 4 == 0) v.push(std::uint32_t(i), Residue(1 + rng() % (f.p() - 1)));
            c = plus(f, c, h.complex().delta(h.from_sparse(s - 1, t, v)));
        }
    }
    return c;
}

MasseyResult massey_triple(const CohomologyRing& h, const CohomClass& a1, const CohomClass& a2, const CohomClass& a3,
                           const Shifts& shifts) {
    const PrimeField& f = h.field();
    MasseyResult res;
    res.s = a1.s + a2.s + a3.s - 1;
    res.t = a1.t + a2.t + a3.t;
    Cochain c1 = h.cochain(a1), c2 = h.cochain(a2), c3 = h.cochain(a3);
    c1.s = a1.s, c1.t = a1.t, c2.s = a2.s, c2.t = a2.t, c3.s = a3.s, c3.t = a3.t;
    auto u1 = h.solve_delta(concat(f, bar(f, c1), c2));
    if (!u1) {
        res.failed_stage = 1;
        res.reason = "first product is nonzero";
        return res;
    }
    auto u2 = h.solve_delta(concat(f, bar(f, c2), c3));
    if (!u2) {
        res.failed_stage = 2;
        res.reason = "second product is nonzero";
        return res;
    }
    if (shifts.size() > 0 && !shifts[0].is_zero()) *u1 = plus(f, *u1, shifts[0]);
    if (shifts.size() > 1 && !shifts[1].is_zero()) *u2 = plus(f, *u2, shifts[1]);
    Cochain rep = plus(f, concat(f, bar(f, c1), *u2), concat(f, bar(f, *u1), c3));
    rep.s = res.s;
    rep.t = res.t;
    res.defined = true;
    res.representative = rep;
    res.defining_system = {*u1, *u2};
    res.coset.value = h.classify(rep);
    bool exact = true;
    auto left = product_span(h, a1, a2.s + a3.s - 1, a2.t + a3.t, true, exact);
    auto right = product_span(h, a3, a1.s + a2.s - 1, a1.t + a2.t, false, exact);
    left.insert(left.end(), right.begin(), right.end());
    res.coset.basis = echelon_basis(f, res.coset.value.coords.size(), left);
    res.coset.exact = exact;
    res.coset_sample.push_back(res.coset.value);
    for (const auto& b : res.coset.basis) {
        CohomClass c{res.s, res.t, b};
        res.coset_sample.push_back(h.add(res.coset.value, c));
        if (res.coset_sample.size() >= 4) break;
    }
    return res;
}

namespace {

// One defining system for ⟨a⟩^k; returns the related cocycle or the failing stage.
struct SymRun {
    bool ok = false;
    int failed_stage = 0;
    std::vector<Cochain> sys;
    Cochain related;
};

SymRun run_symmetric(const CohomologyRing& h, const Cochain& a, int k, const Shifts& shifts) {
    const PrimeField& f = h.field();
    SymRun run;
    run.sys.push_back(a);
    if (!shifts.empty() && !shifts[0].is_zero()) run.sys[0] = plus(f, run.sys[0], shifts[0]);
    const int s = a.s, t = a.t;
    for (int i = 2; i <= k; ++i) {
        Cochain rhs = zero_cochain(i * (s - 1) + 2, i * t);
        for (int r = 1; r <= i - 1; ++r) rhs = plus(f, rhs, concat(f, bar(f, run.sys[r - 1]), run.sys[i - r - 1]));
        if (i == k) {
            run.related = rhs;
            run.ok = true;
            return run;
        }
        auto ai = h.solve_delta(rhs);
        if (!ai) {
            run.failed_stage = i;
            return run;
        }
        ai->s = i * (s - 1) + 1;
        ai->t = i * t;
        if (int(shifts.size()) > i - 1 && !shifts[i - 1].is_zero()) *ai = plus(f, *ai, shifts[i - 1]);
        run.sys.push_back(*ai);
    }
    return run;
}

}  // namespace

MasseyResult massey_symmetric(const CohomologyRing& h, const CohomClass& a, int k, const Shifts& shifts, int samples,
                              std::uint64_t seed) {
    if (k < 2) throw std::invalid_argument("symmetric Massey products need k >= 2");
    const PrimeField& f = h.field();
    MasseyResult res;
    res.s = k * (a.s - 1) + 2;
    res.t = k * a.t;
    Cochain base = h.cochain(a);
    base.s = a.s;
    base.t = a.t;
    SymRun run = run_symmetric(h, base, k, shifts);
    if (!run.ok) {
        res.failed_stage = run.failed_stage;
        res.reason = "stage " + std::to_string(run.failed_stage) + " cocycle is not a coboundary";
        res.defining_system = run.sys;
        return res;
    }
    res.defined = true;
    res.representative = run.related;
    res.representative.s = res.s;
    res.representative.t = res.t;
    res.defining_system = run.sys;
    res.coset.value = h.classify(res.representative);

    bool vanishing = true;
    for (int i = 2; i <= k - 1; ++i) {
        auto d = h.dim(i * (a.s - 1) + 1, i * a.t);
        if (!d || *d != 0) vanishing = false;
    }
    if (vanishing) {
        res.coset.exact = true;
    } else {
        res.coset.exact = false;
        std::vector<std::vector<Residue>> diffs;
        std::mt19937_64 rng(seed);
        for (int n = 0; n < samples; ++n) {
            Shifts sh(k - 1);
            for (int i = 1; i <= k - 1; ++i) {
                int si = i * (a.s - 1) + 1, ti = i * a.t;
                if (h.dim(si, ti) && h.has_reps(si, ti)) sh[i - 1] = random_cocycle(h, si, ti, rng());
                else sh[i - 1] = zero_cochain(si, ti);
            }
            SymRun alt = run_symmetric(h, base, k, sh);
            if (!alt.ok) continue;
            alt.related.s = res.s;
            alt.related.t = res.t;
            diffs.push_back(diff(f, h.classify(alt.related).coords, res.coset.value.coords));
        }
        res.coset.basis = echelon_basis(f, res.coset.value.coords.size(), diffs);
    }
    res.coset_sample.push_back(res.coset.value);
    for (const auto& b : res.coset.basis) {
        CohomClass c{res.s, res.t, b};
        res.coset_sample.push_back(h.add(res.coset.value, c));
        if (res.coset_sample.size() >= 4) break;
    }
    return res;
}

}  // namespace skz
