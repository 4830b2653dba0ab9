// Finite p-groups by collection, the mod-p lower central series, and E⁰(kG).
#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "skz/algebra.hpp"
#include "skz/fplin.hpp"
#include "skz/group_spec.hpp"

namespace skz {

// Power-conjugate presentation on generators g_0 < g_1 < ... with normal words
// g_0^{e_0} g_1^{e_1} ...; powers and conjugates are normal words in later generators.
class PcPresentation {
public:
    using Exps = std::vector<long long>;

    PcPresentation(std::vector<std::string> names, std::vector<long long> rel_orders);
    void set_power(std::size_t i, Exps word);          // g_i^{m_i}
    void set_conjugate(std::size_t i, std::size_t j, Exps word);  // g_i^{-1} g_j g_i, i < j

    std::size_t rank() const { return names_.size(); }
    const std::vector<std::string>& names() const { return names_; }
    const std::vector<long long>& relative_orders() const { return orders_; }
    long long order() const;

    // u · g_i by collection.
    Exps multiply_generator(const Exps& u, std::size_t i) const;
    // Normal form of a word given as a list of generator indices (positive letters).
    Exps collect(const std::vector<std::size_t>& letters) const;
    Exps multiply(const Exps& u, const Exps& v) const;

private:
    Exps mul_gen(const Exps& u, std::size_t i, long long& budget) const;
    Exps mul_word(Exps u, const Exps& w, long long& budget) const;

    std::vector<std::string> names_;
    std::vector<long long> orders_;
    std::vector<Exps> powers_;
    std::vector<std::vector<Exps>> conj_;
};

PcPresentation pc_presentation(const GroupSpec& spec);

struct GroupTable {
    unsigned p = 0;
    int order = 0;
    std::vector<std::vector<long long>> elements;  // normal-form exponents (empty rows for explicit tables)
    std::vector<int> mult;                         // order*order
    int identity = 0;
    std::vector<int> generators;
    std::vector<std::string> generator_names;
    std::vector<int> inverse;
    std::string name;

    int mul(int a, int b) const { return mult[std::size_t(a) * order + b]; }
    int pow(int a, long long e) const;
    int commutator(int x, int y) const { return mul(mul(inverse[x], inverse[y]), mul(x, y)); }
    int element_order(int a) const;
    int index_of(const std::vector<long long>& exps) const;
    std::string describe(int a) const;
    int generator(const std::string& name) const;
};

GroupTable build_group(const GroupSpec& spec, const PrimeField& f);

// Subgroup generated by a set of elements, as a sorted index list.
std::vector<int> subgroup_closure(const GroupTable& g, const std::vector<int>& gens);

struct FiltrationChain {
    // levels[d] = Γ^d for d >= 1 (levels[0] unused); the last level is trivial.
    std::vector<std::vector<int>> levels;
    std::map<int, int> quotient_dims;  // degree -> dim Γ^d / Γ^{d+1}
};

struct LCSReport {
    FiltrationChain chain;
    std::map<int, int> graded_dims;
    // Group elements whose images form a basis of each nonzero graded piece.
    std::map<int, std::vector<int>> piece_basis;
    struct Bracket {
        int r, i, s, j;  // [ρ_r x_i, ρ_s x_j]
        int degree;
        std::vector<Residue> value;
    };
    struct Restriction {
        int r, i;
        int degree;
        std::vector<Residue> value;
    };
    std::vector<Bracket> bracket;
    std::vector<Restriction> restriction;

    // Coordinates of x ∈ Γ^d in the basis of Γ^d/Γ^{d+2} (empty piece -> empty vector).
    std::vector<Residue> coordinates(int d, int x) const;

    std::map<int, std::map<int, std::vector<Residue>>> coords_;  // degree -> element -> coordinates
};

LCSReport lower_central_series(const GroupTable& g, const PrimeField& f);

class GroupAlgebra {
public:
    GroupAlgebra(const GroupTable& g, const PrimeField& f) : g_(&g), f_(f) {}
    std::size_t dim() const { return std::size_t(g_->order); }
    std::vector<Residue> element(int g) const;
    std::vector<Residue> multiply(const std::vector<Residue>& a, const std::vector<Residue>& b) const;
    // v · (x - 1)
    std::vector<Residue> times_x_minus_one(const std::vector<Residue>& v, int x) const;
    Residue augmentation(const std::vector<Residue>& v) const;
    const PrimeField& field() const { return f_; }

private:
    const GroupTable* g_;
    PrimeField f_;
};

struct AssociatedGraded {
    AlgebraPtr algebra;
    std::vector<std::size_t> ideal_dims;  // dim I^n, n = 0, 1, ...
    // lift basis of kG (columns) and its inverse; basis element b of the algebra lifts to column b
    FpMatrix lifts;
    FpMatrix lifts_inverse;

    // Filtration degree n of v ∈ kG (largest n with v ∈ I^n), or -1 for v = 0.
    int filtration(const std::vector<Residue>& v) const;
    // Class of v in I^n/I^{n+1} as coordinates over the algebra basis.
    std::vector<Residue> leading_class(const std::vector<Residue>& v) const;

    std::vector<Subspace> ideals;  // I^n
    PrimeField field{2};
};

AssociatedGraded associated_graded_group_ring(const GroupTable& g, const PrimeField& f);

struct QuillenReport {
    bool relations_hold = false;
    bool generates = false;
    bool dims_agree = false;
    bool ok() const { return relations_hold && generates && dims_agree; }
    std::string detail;
};

// generator_map[i] = coordinates in e0 of the image of presented generator i.
QuillenReport quillen_check(const GradedAlgebra& e0, const AlgebraSpec& presentation, const GradedAlgebra& presented,
                            const std::vector<std::vector<Residue>>& generator_map);

// Group elements corresponding to the presentation generators of family_presentation(spec).
std::vector<int> family_generator_elements(const GroupSpec& spec, const GroupTable& g);

// Builds G, E⁰(kG) and the family presentation, then runs quillen_check with x ↦ class of (x-1).
QuillenReport quillen_check_family(const GroupSpec& spec);

}  // namespace skz
