// Exact linear algebra over a prime field F_p.
#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace skz {

using Residue = std::uint8_t;

class PrimeField {
public:
    // Moduli up to 251 so that residues fit in a byte.
    explicit PrimeField(unsigned p);

    unsigned p() const { return p_; }
    Residue add(Residue a, Residue b) const {
        unsigned s = unsigned(a) + b;
        return Residue(s >= p_ ? s - p_ : s);
    }
    Residue sub(Residue a, Residue b) const {
        return Residue(a >= b ? a - b : a + p_ - b);
    }
    Residue neg(Residue a) const { return Residue(a == 0 ? 0 : p_ - a); }
    Residue mul(Residue a, Residue b) const { return Residue((unsigned(a) * b) % p_); }
    Residue inv(Residue a) const;
    Residue from_int(long long v) const {
        long long r = v % static_cast<long long>(p_);
        return Residue(r < 0 ? r + p_ : r);
    }
    // Symmetric lift to (-p/2, p/2], used for printing.
    int to_signed(Residue a) const { return a > p_ / 2 ? int(a) - int(p_) : int(a); }
    // (-1)^e
    Residue sign(long long e) const { return (e & 1) ? Residue(p_ - 1) : Residue(1); }

    bool operator==(const PrimeField& o) const { return p_ == o.p_; }

private:
    unsigned p_;
    std::vector<Residue> inv_;
};

bool is_prime(unsigned n);

class FpMatrix {
public:
    FpMatrix() = default;
    FpMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

    static FpMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Residue& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    Residue at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    Residue* row(std::size_t r) { return data_.data() + r * cols_; }
    const Residue* row(std::size_t r) const { return data_.data() + r * cols_; }
    std::vector<Residue> row_vector(std::size_t r) const {
        return {row(r), row(r) + cols_};
    }
    void append_row(std::span<const Residue> v);
    void resize_rows(std::size_t rows) {
        rows_ = rows;
        data_.resize(rows_ * cols_, 0);
    }

    std::vector<Residue> apply(const PrimeField& f, std::span<const Residue> v) const;
    FpMatrix multiply(const PrimeField& f, const FpMatrix& other) const;
    FpMatrix transpose() const;

    bool operator==(const FpMatrix& o) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Residue> data_;
};

struct Echelon {
    FpMatrix matrix;  // reduced row-echelon form, zero rows dropped
    std::size_t rank = 0;
    std::vector<std::size_t> pivots;
};

Echelon rref(const PrimeField& f, FpMatrix m);
std::size_t rank(const PrimeField& f, const FpMatrix& m);

class Subspace {
public:
    Subspace() = default;
    explicit Subspace(std::size_t ambient) : ambient_(ambient), basis_(0, ambient) {}
    // Span of the rows of m.
    static Subspace span(const PrimeField& f, const FpMatrix& m);
    static Subspace span(const PrimeField& f, std::size_t ambient,
                         const std::vector<std::vector<Residue>>& vectors);
    static Subspace whole(std::size_t ambient);

    std::size_t ambient_dim() const { return ambient_; }
    std::size_t dim() const { return basis_.rows(); }
    const FpMatrix& basis() const { return basis_; }
    const std::vector<std::size_t>& pivots() const { return pivots_; }
    std::vector<std::vector<Residue>> basis_vectors() const;

    bool contains(const PrimeField& f, std::span<const Residue> v) const;
    // Reduces v against the basis (pivot entries become zero).
    std::vector<Residue> reduce(const PrimeField& f, std::span<const Residue> v) const;

    Subspace sum(const PrimeField& f, const Subspace& o) const;
    Subspace intersection(const PrimeField& f, const Subspace& o) const;
    // Vectors of *this spanning a complement of (o ∩ *this) in *this.
    std::vector<std::vector<Residue>> complement_of(const PrimeField& f, const Subspace& o) const;

    bool operator==(const Subspace& o) const {
        return ambient_ == o.ambient_ && basis_ == o.basis_;
    }

private:
    std::size_t ambient_ = 0;
    FpMatrix basis_;
    std::vector<std::size_t> pivots_;
};

Subspace kernel(const PrimeField& f, const FpMatrix& m);

// Returns x with m x = b, free coordinates set to zero; nullopt if inconsistent.
std::optional<std::vector<Residue>> solve(const PrimeField& f, const FpMatrix& m,
                                          std::span<const Residue> b);

// Sparse vector with strictly increasing indices and nonzero values.
struct SparseVec {
    std::vector<std::uint32_t> idx;
    std::vector<Residue> val;

    std::size_t size() const { return idx.size(); }
    bool empty() const { return idx.empty(); }
    void push(std::uint32_t i, Residue v) {
        idx.push_back(i);
        val.push_back(v);
    }
    std::uint32_t lead() const { return idx.back(); }
    Residue lead_value() const { return val.back(); }
    bool operator==(const SparseVec& o) const = default;
};

// Sorts and merges an unsorted list of (index, value) terms.
SparseVec make_sparse(const PrimeField& f, std::vector<std::pair<std::uint32_t, Residue>> terms);
void scale(const PrimeField& f, SparseVec& v, Residue c);
// a + c*b
SparseVec axpy(const PrimeField& f, const SparseVec& a, Residue c, const SparseVec& b);

// Echelon set of sparse vectors keyed by their largest index. Reduction uses a
// dense scratch array and a max-heap of touched indices.
class SparseEchelon {
public:
    SparseEchelon(const PrimeField& f, std::size_t ambient);

    std::size_t ambient() const { return pivot_of_.size(); }
    std::size_t size() const { return vecs_.size(); }
    const SparseVec& vec(std::size_t i) const { return vecs_[i]; }
    int pivot_owner(std::uint32_t row) const { return pivot_of_[row]; }
    const PrimeField& field() const { return f_; }

    // Reduces v; returns the residual (empty iff v lies in the span). When
    // combo is given, records (vector id, coefficient c) with v = residual + Σ c·vec(id).
    SparseVec reduce(const SparseVec& v,
                     std::vector<std::pair<std::uint32_t, Residue>>* combo = nullptr,
                     const SparseEchelon* base = nullptr,
                     std::vector<std::pair<std::uint32_t, Residue>>* base_combo = nullptr) const;
    // Inserts a nonzero residual, normalized to lead value 1. Returns its id and the scale used.
    std::uint32_t insert(SparseVec residual, Residue* scale_used = nullptr);
    // Full reduction: also clears entries at non-leading pivot positions.
    SparseVec reduce_fully(const SparseVec& v, const SparseEchelon* base = nullptr) const;

private:
    PrimeField f_;
    std::vector<SparseVec> vecs_;
    std::vector<std::int32_t> pivot_of_;
};

}  // namespace skz
