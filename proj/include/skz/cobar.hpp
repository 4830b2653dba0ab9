// Cobar complex of a connected graded algebra and its cohomology ring.
#pragma once

#include <functional>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "skz/algebra.hpp"
#include "skz/fplin.hpp"

namespace skz {

// Element of C^{s,t}: tuples of algebra basis indices (each of positive degree) with coefficients.
struct Cochain {
    int s = 0;
    int t = 0;
    std::map<std::vector<std::uint32_t>, Residue> terms;

    bool is_zero() const { return terms.empty(); }
    void add(const PrimeField& f, const std::vector<std::uint32_t>& tuple, Residue c);
    void add(const PrimeField& f, const Cochain& o, Residue c = 1);
    bool operator==(const Cochain&) const = default;
};

Cochain scaled(const PrimeField& f, const Cochain& c, Residue k);
// Concatenation product [a|b] of cochains.
Cochain concat(const PrimeField& f, const Cochain& a, const Cochain& b);
// (-1)^{s+t+1} a
Cochain bar(const PrimeField& f, const Cochain& a);

// "[a*|c*] + [(a^2)*|b*]" style rendering; coefficients printed as symmetric residues.
std::string format_cochain(const GradedAlgebra& a, const Cochain& c);
// Inverse of the rendering for single tuples: "a|a^2" or "[a*|(a^2)*]".
std::vector<std::uint32_t> parse_tuple(const GradedAlgebra& a, const std::string& text);
Cochain cochain_from_terms(const GradedAlgebra& a, const std::vector<std::pair<long long, std::string>>& terms);

// Differential and indexing data of C*(A), independent of bounds.
class CobarComplex {
public:
    explicit CobarComplex(AlgebraPtr a);

    const GradedAlgebra& algebra() const { return *a_; }
    AlgebraPtr algebra_ptr() const { return a_; }
    const PrimeField& field() const { return a_->field(); }

    Cochain delta(const Cochain& c) const;

    // Internal order of I(A): decreasing degree, so low-degree duals get large indices.
    std::size_t idim() const { return order_.size(); }
    std::uint32_t basis_of(std::uint32_t internal) const { return order_[internal]; }
    std::int32_t internal_of(std::uint32_t basis) const { return internal_[basis]; }
    int ideg(std::uint32_t internal) const { return ideg_[internal]; }
    int min_degree() const { return min_deg_; }

    struct Split {
        std::uint32_t left, right;  // internal indices
        Residue coef;               // θ sign included
    };
    const std::vector<Split>& splits(std::uint32_t internal) const { return splits_[internal]; }

    unsigned key_bits() const { return bits_; }

private:
    AlgebraPtr a_;
    std::vector<std::uint32_t> order_;
    std::vector<std::int32_t> internal_;
    std::vector<int> ideg_;
    std::vector<std::vector<Split>> splits_;
    int min_deg_ = 0;
    unsigned bits_ = 1;
};

struct CohomologyOptions {
    int s_max = 3;   // differentials δ_1..δ_{s_max} are reduced: dims for s ≤ s_max, coboundaries for s ≤ s_max+1
    int t_max = 12;
    int rep_s_max = -1;              // representatives for s ≤ rep_s_max (default s_max)
    std::map<int, int> rep_t_max;    // per-s override of the representative t bound
    int solve_s_max = 2;             // keep preimages of δ_s for s ≤ solve_s_max where reps are kept
    std::size_t size_cap = 4'000'000;  // largest C^{s,t} handled
    int threads = 1;
    bool progress = false;
};

struct CohomClass {
    int s = 0;
    int t = 0;
    std::vector<Residue> coords;
    bool is_zero() const {
        for (auto c : coords)
            if (c) return false;
        return true;
    }
    bool operator==(const CohomClass&) const = default;
};

class CohomologyRing {
public:
    static std::shared_ptr<CohomologyRing> compute(AlgebraPtr a, const CohomologyOptions& opt);

    const CobarComplex& complex() const { return cx_; }
    const GradedAlgebra& algebra() const { return cx_.algebra(); }
    const PrimeField& field() const { return cx_.field(); }
    const CohomologyOptions& options() const { return opt_; }
    int s_max() const { return opt_.s_max; }
    int t_max() const { return opt_.t_max; }

    // dim C^{s,t}
    std::size_t cochain_dim(int s, int t) const;
    // dim H^{s,t}; nullopt outside the bounds or when the size cap stopped the stratum.
    std::optional<std::size_t> dim(int s, int t) const;
    std::size_t dim_or_throw(int s, int t) const;
    bool has_reps(int s, int t) const;
    bool has_boundaries(int s, int t) const;
    bool has_solver(int s, int t) const;

    Cochain rep(int s, int t, std::size_t i) const;
    std::vector<Cochain> reps(int s, int t) const;
    Cochain cochain(const CohomClass& c) const;
    CohomClass basis_class(int s, int t, std::size_t i) const;
    CohomClass zero_class(int s, int t) const;

    bool is_cocycle(const Cochain& c) const;
    bool is_coboundary(const Cochain& c) const;
    // Coordinates of a cocycle in the representative basis; throws if c is not a cocycle.
    CohomClass classify(const Cochain& c) const;
    // u with δu = w, or nullopt when w is not a coboundary.
    std::optional<Cochain> solve_delta(const Cochain& w) const;

    CohomClass cup(const CohomClass& x, const CohomClass& y) const;
    CohomClass add(const CohomClass& x, const CohomClass& y, Residue c = 1) const;

    // Rank of the span of cocycles modulo coboundaries (all in one bidegree).
    std::size_t rank_mod_boundaries(const std::vector<Cochain>& v) const;
    // Relations Σ c_i v_i ∈ B among cocycles, as a basis of coefficient vectors.
    std::vector<std::vector<Residue>> relations_mod_boundaries(const std::vector<Cochain>& v) const;

    struct Indecomposable {
        std::size_t dim = 0;
        bool exact = true;  // false when some factor lacked representatives
    };
    std::map<std::pair<int, int>, Indecomposable> indecomposables() const;

    // Whether some C^{s,t} in bounds exceeded the size cap.
    bool partial() const;
    std::vector<std::pair<int, int>> partial_bidegrees() const;

    void save(std::ostream& out) const;
    static std::shared_ptr<CohomologyRing> load(std::istream& in, AlgebraPtr a);
    // Stable 64-bit digest of the algebra structure and the options that affect stored data.
    static std::uint64_t content_hash(const GradedAlgebra& a, const CohomologyOptions& opt);

    // Internal sparse access, exposed for the spectral-sequence engine.
    std::optional<SparseVec> to_sparse(const Cochain& c) const;
    Cochain from_sparse(int s, int t, const SparseVec& v) const;

    struct Level {
        bool keys_ready = false;
        std::vector<std::uint64_t> keys;  // sorted tuple keys of C^{s,t}
        bool reduced = false;             // δ_s reduced at this t
        bool over_cap = false;
        std::size_t rank = 0;             // rank of δ_s
        std::size_t h = 0;                // dim H^{s,t}
        std::unique_ptr<SparseEchelon> image;  // im δ_s ⊂ C^{s+1,t}
        std::vector<SparseVec> preimage;       // δ_s(preimage[k]) = image->vec(k), when tracked
        bool tracked = false;
        std::unique_ptr<SparseEchelon> reps;   // canonical representatives in C^{s,t}
    };

private:
    CohomologyRing(AlgebraPtr a, CohomologyOptions opt) : cx_(std::move(a)), opt_(std::move(opt)) {}
    void compute_stratum(int t);
    void build_keys(int s, int t);
    SparseVec delta_column(int s, int t, std::uint64_t key) const;
    std::uint64_t key_of(const std::vector<std::uint32_t>& internal_tuple) const;
    std::vector<std::uint32_t> tuple_of(std::uint64_t key, int s) const;
    const Level* level(int s, int t) const;
    bool want_reps(int s, int t) const;

    CobarComplex cx_;
    CohomologyOptions opt_;
    std::vector<std::vector<Level>> strata_;  // [t][s], s = 0..s_max+1
};

using RingPtr = std::shared_ptr<const CohomologyRing>;

}  // namespace skz
