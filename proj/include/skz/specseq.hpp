// Central extensions F_p[z]/(z^p) → A → B: extension class, E₂→E₃ pages, and bigeneration checks.
#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "skz/cache.hpp"
#include "skz/cobar.hpp"

namespace skz {

struct ExtensionData {
    AlgebraPtr total;
    std::vector<Residue> z;
    int deg_z = 0;
    AlgebraPtr fiber;  // F_p[z]/(z^p)
    AlgebraPtr base;   // A//F
    // section[b] = coordinates in A of the lift of base basis element b
    std::vector<std::vector<Residue>> section;
    // projection[j] = image of A basis element j in B
    std::vector<std::vector<Term>> projection;
};

ExtensionData split_extension(AlgebraPtr a, const std::vector<Residue>& z);
// Same extension with section s'(b) = s(b) + Σ random multiples of z·s(b') (deg b' = deg b − deg z).
ExtensionData perturb_section(const ExtensionData& ext, std::uint64_t seed);

struct ExtensionClass {
    Cochain cocycle;  // in C^{2,deg z}(B)
    CohomClass mu;
};

// Same basis, degrees and structure constants.
bool same_structure(const GradedAlgebra& a, const GradedAlgebra& b);

// Pullback along s⊗s of δ_A of the functional "coefficient of z" (relative to the section).
ExtensionClass extension_class(const ExtensionData& ext, const CohomologyRing& h_base);

// c ≠ 0 with x = c·y, or nullopt.
std::optional<Residue> proportional(const PrimeField& f, const CohomClass& x, const CohomClass& y);

// Finite bigraded algebra data: basis coordinates per (s, t) and a product.
class BigradedRing {
public:
    virtual ~BigradedRing() = default;
    virtual const PrimeField& field() const = 0;
    virtual int s_max() const = 0;
    virtual int t_max() const = 0;
    virtual std::optional<std::size_t> dim(int s, int t) const = 0;
    virtual std::vector<Residue> multiply(int s1, int t1, const std::vector<Residue>& x, int s2, int t2,
                                          const std::vector<Residue>& y) const = 0;
};

class CohomologyView : public BigradedRing {
public:
    explicit CohomologyView(RingPtr h) : h_(std::move(h)) {}
    const PrimeField& field() const override { return h_->field(); }
    int s_max() const override { return h_->s_max(); }
    int t_max() const override { return h_->t_max(); }
    std::optional<std::size_t> dim(int s, int t) const override;
    std::vector<Residue> multiply(int s1, int t1, const std::vector<Residue>& x, int s2, int t2,
                                  const std::vector<Residue>& y) const override;

private:
    RingPtr h_;
};

// E₃ = H(B)/(μ) ⊗ F_p[ε]  ⊕  Ann(μ)·ζ ⊗ F_p[ε] as a bigraded ring (p odd), with
// ζ ∈ (1, n), ε ∈ (2, p·n), ζ² = 0. This is the E₃ page of a central extension whose
// d₂(ζ) = μ and whose base cohomology is h.
class E3Ring : public BigradedRing {
public:
    E3Ring(RingPtr h, CohomClass mu, int n);
    const PrimeField& field() const override { return h_->field(); }
    int s_max() const override { return s_max_; }
    int t_max() const override { return h_->t_max(); }
    std::optional<std::size_t> dim(int s, int t) const override;
    std::vector<Residue> multiply(int s1, int t1, const std::vector<Residue>& x, int s2, int t2,
                                  const std::vector<Residue>& y) const override;

    // Coordinates of r⊗ζ (r ∈ Ann(μ) ⊂ H^{s,t}(B)) inside E₃^{s+1, t+n}.
    std::optional<std::vector<Residue>> zeta_multiple(const CohomClass& r) const;

private:
    struct Block {
        bool zeta;  // Ann part
        int k;      // ε power
        int s, t;   // bidegree in H(B)
        std::size_t offset, size;
    };
    std::vector<Block> blocks(int s, int t) const;
    const Subspace& image(int s, int t) const;  // μ·H^{s-2,t-n}
    const Subspace& ann(int s, int t) const;    // Ann(μ) ∩ H^{s,t}
    std::vector<Residue> lift(const Block& b, const std::vector<Residue>& x) const;
    std::vector<Residue> project(const Block& b, const std::vector<Residue>& v) const;

    RingPtr h_;
    CohomClass mu_;
    int n_;
    int pn_;
    int s_max_;
    mutable std::map<std::pair<int, int>, Subspace> image_cache_, ann_cache_;
};

struct SemiKoszulReport {
    int s_max = 0;
    int t_max = 0;
    std::map<std::pair<int, int>, std::size_t> generated_dims;
    std::map<std::pair<int, int>, std::size_t> full_dims;
    bool verdict = true;
    bool complete = true;  // every bidegree in bounds had data
    struct Witness {
        int s, t;
        std::vector<std::vector<Residue>> basis;      // complement of the generated part
        std::vector<std::vector<Residue>> generated;  // basis of the generated part
    };
    std::vector<Witness> witnesses;
};

SemiKoszulReport semi_koszul_check(const BigradedRing& h, int s_max, int t_max);

enum class AnnVerdict { Zero, DimOneGenerated, Violating };
std::string to_string(AnnVerdict v);

struct AnnihilatorReport {
    AnnVerdict verdict = AnnVerdict::Zero;
    std::map<std::pair<int, int>, std::vector<std::vector<Residue>>> ann;  // nonzero pieces
    int s_max = 0;  // bidegrees checked: s ≤ s_max, t ≤ t_max
    int t_max = 0;
    struct Witness {
        int s, t;
        std::vector<std::vector<Residue>> basis;  // Ann(μ) modulo the ideal generated by Ann ∩ H¹
    };
    std::vector<Witness> witnesses;
};

AnnihilatorReport annihilator_report(const BigradedRing& h, const CohomClass& mu);

enum class BocksteinVerdict { VanishesByDegree, VanishesByDecomposability, Inconclusive };
std::string to_string(BocksteinVerdict v);

struct BocksteinReport {
    BocksteinVerdict verdict = BocksteinVerdict::Inconclusive;
    std::string detail;
};

BocksteinReport bockstein_vanishing_surrogate(const CohomologyRing& h_base, const CohomClass& mu);

struct SSReport {
    using Key = std::tuple<int, int, int>;  // (s, t, internal)
    int total_max = 0;                      // total degrees n ≤ total_max
    int t_max = 0;                          // internal degrees ≤ t_max
    int n = 0;                              // deg z
    CohomClass mu;
    std::map<Key, std::size_t> e2_dims, e3_dims;
    std::map<Key, FpMatrix> d2;  // E₂^{s,t,u} → E₂^{s+2,t-1,u}, nonzero sources only
    std::map<std::pair<int, int>, std::size_t> h_total_dims;  // (n, internal) → dim H^{n,u}(A)
    std::map<int, std::size_t> e3_totals, h_totals;           // per total degree
    bool collapse = false;
    bool d2_squared_zero = true;
    bool euler_ok = true;
    std::vector<int> euler_checked;  // internal degrees with a complete box
    std::vector<std::pair<int, int>> mismatches;  // (n, u) where collapse fails
};

// h_base needs s_max ≥ total_max + 1; h_total needs s_max ≥ total_max. Both up to t_max.
SSReport e2_to_e3(const CohomologyRing& h_base, const CohomologyRing& h_total, const ExtensionData& ext,
                  const CohomClass& mu, int total_max, int t_max);

// dims of H(B)/(μ) ⊗ F_p[w], w ∈ (2, p·n), for s ≤ s_max, t ≤ t_max.
std::map<std::pair<int, int>, std::size_t> quotient_poly_dims(const CohomologyRing& h_base, const CohomClass& mu,
                                                              int n, int s_max, int t_max);

struct MainTheoremBounds {
    int s_max = 4;
    int t_max = 24;
    int threads = 1;
    bool progress = false;
};

struct MainTheoremReport {
    ExtensionData ext;
    RingPtr h_base, h_total;
    ExtensionClass mu;
    BocksteinReport bockstein;
    AnnihilatorReport annihilator;
    SemiKoszulReport base_semi_koszul;
    SSReport ss;
    SemiKoszulReport total_semi_koszul;
    bool conditions_hold = false;
    bool conclusion_verified = false;  // direct semi-Koszul check on H*(A)
    std::string verdict;               // "theorem", "verified directly only", "fails"
};

MainTheoremReport main_theorem_report(AlgebraPtr a, const std::vector<Residue>& z, const MainTheoremBounds& b,
                                      RingCache* cache = nullptr);

}  // namespace skz
