// Connected graded algebras over F_p given by basis and structure constants.
#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "skz/fplin.hpp"
#include "skz/group_spec.hpp"

namespace skz {

struct Term {
    std::uint32_t index;
    Residue coef;
    bool operator==(const Term&) const = default;
};

using Word = std::vector<std::uint32_t>;

class GradedAlgebra {
public:
    struct Meta {
        std::string name;
        // Presentation generators (when known) and the basis index of each.
        std::vector<std::string> generator_names;
        std::vector<int> generator_degrees;
        std::vector<std::uint32_t> generator_basis;
        // Normal word of each basis element (presented algebras only).
        std::vector<Word> words;
        // Restricted enveloping algebra of a restricted Lie algebra.
        bool lie_origin = false;
        std::optional<int> degree_cap;
    };

    // Basis element 0 must be the unit in degree 0. products is dim*dim, row-major.
    // Validates connectedness, gradedness, unit and associativity.
    GradedAlgebra(PrimeField f, std::vector<int> degrees, std::vector<std::string> labels,
                  std::vector<std::vector<Term>> products, Meta meta);

    const PrimeField& field() const { return f_; }
    std::size_t dim() const { return degrees_.size(); }
    int degree(std::size_t i) const { return degrees_[i]; }
    const std::vector<int>& degrees() const { return degrees_; }
    const std::string& label(std::size_t i) const { return labels_[i]; }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::vector<Term>& product(std::size_t i, std::size_t j) const {
        return products_[i * dim() + j];
    }
    const Meta& meta() const { return meta_; }
    Meta& mutable_meta() { return meta_; }
    int max_degree() const { return max_degree_; }
    // Basis indices of a given degree, in basis order.
    std::vector<std::uint32_t> basis_of_degree(int d) const;
    // dims[d] for d = 0..max_degree
    std::vector<std::size_t> dims_by_degree() const;
    std::optional<std::uint32_t> index_of_label(const std::string& label) const;

    std::vector<Residue> multiply(const std::vector<Residue>& a, const std::vector<Residue>& b) const;
    std::vector<Residue> basis_vector(std::size_t i) const;
    // Σ over structure constants: coefficient of basis k in e_i e_j
    Residue coefficient(std::size_t i, std::size_t j, std::size_t k) const;

    bool is_commutative() const;

private:
    void validate() const;

    PrimeField f_;
    std::vector<int> degrees_;
    std::vector<std::string> labels_;
    std::vector<std::vector<Term>> products_;
    Meta meta_;
    int max_degree_ = 0;
};

using AlgebraPtr = std::shared_ptr<const GradedAlgebra>;

struct AlgebraSpec {
    struct Generator {
        std::string name;
        int degree;
    };
    struct Monomial {
        long long coef;
        Word word;
    };
    unsigned p = 3;
    // Listing order fixes the monomial order: earlier generators are larger letters;
    // words compare by degree, then lexicographically.
    std::vector<Generator> generators;
    std::vector<std::vector<Monomial>> relations;
    std::optional<int> degree_cap;
    bool lie_origin = false;
    std::string name;
};

struct RewriteError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Builds the algebra spanned by irreducible words after verifying confluence.
AlgebraPtr from_spec(const AlgebraSpec& spec);

AlgebraSpec truncated_polynomial_spec(unsigned p, int deg_x, int n);
AlgebraPtr truncated_polynomial(unsigned p, int deg_x, int n);
AlgebraPtr exterior_algebra(unsigned p, int deg_x);

AlgebraPtr tensor_product(const GradedAlgebra& a, const GradedAlgebra& b);

struct CentralQuotient {
    AlgebraPtr quotient;
    // section[i] = basis index in A lifting basis element i of the quotient
    std::vector<std::uint32_t> section;
    // image[j] = coordinates (over quotient basis) of A-basis element j
    std::vector<std::vector<Term>> projection;
};

// B = A/(A·z) for a homogeneous central z of positive degree with dim A = p·dim B.
CentralQuotient quotient_by_central(const GradedAlgebra& a, const std::vector<Residue>& z);

// Graded-central test: z e_i = (-1)^{deg z deg e_i} e_i z for every basis element.
bool is_central(const GradedAlgebra& a, const std::vector<Residue>& z);
std::optional<int> homogeneous_degree(const GradedAlgebra& a, const std::vector<Residue>& z);
std::vector<Residue> power(const GradedAlgebra& a, const std::vector<Residue>& z, int k);

// The explicit presentation of the restricted enveloping algebra of ℒG.
AlgebraSpec family_presentation(const GroupSpec& g);

// Parses a word given as whitespace separated generator names, or as a run of
// single-letter names; "^k" repeats the preceding letter.
Word parse_word(const AlgebraSpec& spec, const std::string& text);
std::string word_label(const std::vector<std::string>& names, const Word& w);

}  // namespace skz
