#include "skz/fplin.hpp"

#include <algorithm>

namespace skz {

bool is_prime(unsigned n) {
    if (n < 2) return false;
    for (unsigned d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

PrimeField::PrimeField(unsigned p) : p_(p) {
    if (!is_prime(p)) throw std::invalid_argument("modulus " + std::to_string(p) + " is not prime");
    if (p > 251) throw std::invalid_argument("modulus " + std::to_string(p) + " exceeds 251");
    inv_.assign(p, 0);
    for (unsigned a = 1; a < p; ++a)
        for (unsigned b = 1; b < p; ++b)
            if (a * b % p == 1) inv_[a] = Residue(b);
}

Residue PrimeField::inv(Residue a) const {
    if (a == 0) throw std::domain_error("inverse of zero");
    return inv_[a];
}

FpMatrix FpMatrix::identity(std::size_t n) {
    FpMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

void FpMatrix::append_row(std::span<const Residue> v) {
    if (v.size() != cols_) throw std::invalid_argument("row length mismatch");
    data_.insert(data_.end(), v.begin(), v.end());
    ++rows_;
}

std::vector<Residue> FpMatrix::apply(const PrimeField& f, std::span<const Residue> v) const {
    if (v.size() != cols_) throw std::invalid_argument("vector length mismatch");
    std::vector<Residue> out(rows_, 0);
    for (std::size_t r = 0; r < rows_; ++r) {
        unsigned long acc = 0;
        const Residue* rw = row(r);
        for (std::size_t c = 0; c < cols_; ++c) acc += unsigned(rw[c]) * v[c];
        out[r] = Residue(acc % f.p());
    }
    return out;
}

FpMatrix FpMatrix::multiply(const PrimeField& f, const FpMatrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("matrix shape mismatch");
    FpMatrix out(rows_, o.cols_);
    std::vector<unsigned long> acc(o.cols_);
    for (std::size_t r = 0; r < rows_; ++r) {
        std::fill(acc.begin(), acc.end(), 0);
        for (std::size_t k = 0; k < cols_; ++k) {
            unsigned a = at(r, k);
            if (!a) continue;
            const Residue* orow = o.row(k);
            for (std::size_t c = 0; c < o.cols_; ++c) acc[c] += a * orow[c];
        }
        for (std::size_t c = 0; c < o.cols_; ++c) out.at(r, c) = Residue(acc[c] % f.p());
    }
    return out;
}

FpMatrix FpMatrix::transpose() const {
    FpMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
    return t;
}

namespace {

// row_dst -= c * row_src, on columns [from, cols)
void row_axpy(const PrimeField& f, Residue* dst, const Residue* src, Residue c, std::size_t from,
              std::size_t cols) {
    const unsigned p = f.p();
    const unsigned nc = p - c;  // dst + (p-c)*src
    for (std::size_t j = from; j < cols; ++j) {
        if (src[j]) dst[j] = Residue((dst[j] + nc * src[j]) % p);
    }
}

}  // namespace

Echelon rref(const PrimeField& f, FpMatrix m) {
    Echelon e;
    const std::size_t rows = m.rows(), cols = m.cols();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && m.at(piv, c) == 0) ++piv;
        if (piv == rows) continue;
        if (piv != r)
            for (std::size_t j = 0; j < cols; ++j) std::swap(m.at(piv, j), m.at(r, j));
        Residue inv = f.inv(m.at(r, c));
        Residue* rr = m.row(r);
        for (std::size_t j = c; j < cols; ++j) rr[j] = f.mul(rr[j], inv);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r) continue;
            Residue x = m.at(i, c);
            if (x) row_axpy(f, m.row(i), rr, x, c, cols);
        }
        e.pivots.push_back(c);
        ++r;
    }
    e.rank = r;
    m.resize_rows(r);
    e.matrix = std::move(m);
    return e;
}

std::size_t rank(const PrimeField& f, const FpMatrix& m) { return rref(f, m).rank; }

Subspace Subspace::span(const PrimeField& f, const FpMatrix& m) {
    Subspace s;
    s.ambient_ = m.cols();
    Echelon e = rref(f, m);
    s.basis_ = std::move(e.matrix);
    s.pivots_ = std::move(e.pivots);
    return s;
}

Subspace Subspace::span(const PrimeField& f, std::size_t ambient,
                        const std::vector<std::vector<Residue>>& vectors) {
    FpMatrix m(0, ambient);
    for (const auto& v : vectors) m.append_row(v);
    return span(f, m);
}

Subspace Subspace::whole(std::size_t ambient) {
    Subspace s;
    s.ambient_ = ambient;
    s.basis_ = FpMatrix::identity(ambient);
    for (std::size_t i = 0; i < ambient; ++i) s.pivots_.push_back(i);
    return s;
}

std::vector<std::vector<Residue>> Subspace::basis_vectors() const {
    std::vector<std::vector<Residue>> out;
    for (std::size_t r = 0; r < basis_.rows(); ++r) out.push_back(basis_.row_vector(r));
    return out;
}

std::vector<Residue> Subspace::reduce(const PrimeField& f, std::span<const Residue> v) const {
    if (v.size() != ambient_) throw std::invalid_argument("subspace dimension mismatch");
    std::vector<Residue> w(v.begin(), v.end());
    for (std::size_t r = 0; r < pivots_.size(); ++r) {
        Residue x = w[pivots_[r]];
        if (x) row_axpy(f, w.data(), basis_.row(r), x, 0, ambient_);
    }
    return w;
}

bool Subspace::contains(const PrimeField& f, std::span<const Residue> v) const {
    auto w = reduce(f, v);
    return std::all_of(w.begin(), w.end(), [](Residue x) { return x == 0; });
}

Subspace Subspace::sum(const PrimeField& f, const Subspace& o) const {
    if (ambient_ != o.ambient_) throw std::invalid_argument("subspace dimension mismatch");
    FpMatrix m = basis_;
    for (std::size_t r = 0; r < o.basis_.rows(); ++r) m.append_row(o.basis_.row_vector(r));
    return span(f, m);
}

Subspace Subspace::intersection(const PrimeField& f, const Subspace& o) const {
    if (ambient_ != o.ambient_) throw std::invalid_argument("subspace dimension mismatch");
    // Zassenhaus: rows [a | a] and [b | 0]; rows with zero left half give a∩b.
    const std::size_t n = ambient_;
    FpMatrix m(0, 2 * n);
    std::vector<Residue> row(2 * n);
    for (std::size_t r = 0; r < basis_.rows(); ++r) {
        for (std::size_t j = 0; j < n; ++j) row[j] = row[n + j] = basis_.at(r, j);
        m.append_row(row);
    }
    for (std::size_t r = 0; r < o.basis_.rows(); ++r) {
        for (std::size_t j = 0; j < n; ++j) {
            row[j] = o.basis_.at(r, j);
            row[n + j] = 0;
        }
        m.append_row(row);
    }
    Echelon e = rref(f, m);
    FpMatrix inter(0, n);
    for (std::size_t r = 0; r < e.rank; ++r) {
        if (e.pivots[r] < n) continue;
        inter.append_row(std::span<const Residue>(e.matrix.row(r) + n, n));
    }
    return span(f, inter);
}

std::vector<std::vector<Residue>> Subspace::complement_of(const PrimeField& f, const Subspace& o) const {
    Subspace acc = intersection(f, o);
    std::vector<std::vector<Residue>> out;
    for (std::size_t r = 0; r < basis_.rows(); ++r) {
        auto v = basis_.row_vector(r);
        if (acc.contains(f, v)) continue;
        out.push_back(v);
        FpMatrix m = acc.basis_;
        m.append_row(v);
        acc = span(f, m);
    }
    return out;
}

Subspace kernel(const PrimeField& f, const FpMatrix& m) {
    Echelon e = rref(f, m);
    const std::size_t n = m.cols();
    std::vector<char> is_pivot(n, 0);
    for (auto c : e.pivots) is_pivot[c] = 1;
    FpMatrix k(0, n);
    std::vector<Residue> v(n);
    for (std::size_t free = 0; free < n; ++free) {
        if (is_pivot[free]) continue;
        std::fill(v.begin(), v.end(), 0);
        v[free] = 1;
        for (std::size_t r = 0; r < e.rank; ++r) v[e.pivots[r]] = f.neg(e.matrix.at(r, free));
        k.append_row(v);
    }
    return Subspace::span(f, k);
}

std::optional<std::vector<Residue>> solve(const PrimeField& f, const FpMatrix& m,
                                          std::span<const Residue> b) {
    if (b.size() != m.rows()) throw std::invalid_argument("right-hand side length mismatch");
    const std::size_t n = m.cols();
    FpMatrix aug(m.rows(), n + 1);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < n; ++c) aug.at(r, c) = m.at(r, c);
        aug.at(r, n) = b[r];
    }
    Echelon e = rref(f, std::move(aug));
    std::vector<Residue> x(n, 0);
    for (std::size_t r = 0; r < e.rank; ++r) {
        if (e.pivots[r] == n) return std::nullopt;
        x[e.pivots[r]] = e.matrix.at(r, n);
    }
    return x;
}

SparseVec make_sparse(const PrimeField& f, std::vector<std::pair<std::uint32_t, Residue>> terms) {
    std::sort(terms.begin(), terms.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    SparseVec v;
    for (std::size_t i = 0; i < terms.size();) {
        std::uint32_t k = terms[i].first;
        Residue acc = 0;
        for (; i < terms.size() && terms[i].first == k; ++i) acc = f.add(acc, terms[i].second);
        if (acc) v.push(k, acc);
    }
    return v;
}

void scale(const PrimeField& f, SparseVec& v, Residue c) {
    if (c == 0) {
        v = SparseVec{};
        return;
    }
    for (auto& x : v.val) x = f.mul(x, c);
}

SparseVec axpy(const PrimeField& f, const SparseVec& a, Residue c, const SparseVec& b) {
    SparseVec out;
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a.idx[i] < b.idx[j])) {
            out.push(a.idx[i], a.val[i]);
            ++i;
        } else if (i == a.size() || b.idx[j] < a.idx[i]) {
            Residue v = f.mul(c, b.val[j]);
            if (v) out.push(b.idx[j], v);
            ++j;
        } else {
            Residue v = f.add(a.val[i], f.mul(c, b.val[j]));
            if (v) out.push(a.idx[i], v);
            ++i;
            ++j;
        }
    }
    return out;
}

SparseEchelon::SparseEchelon(const PrimeField& f, std::size_t ambient)
    : f_(f), pivot_of_(ambient, -1) {}

namespace {

struct Scratch {
    std::vector<Residue> dense;
    std::vector<char> in_heap;
    std::vector<std::uint32_t> heap;

    void ensure(std::size_t n) {
        if (dense.size() < n) {
            dense.resize(n, 0);
            in_heap.resize(n, 0);
        }
    }
    void push(std::uint32_t i) {
        if (!in_heap[i]) {
            in_heap[i] = 1;
            heap.push_back(i);
            std::push_heap(heap.begin(), heap.end());
        }
    }
    std::uint32_t pop() {
        std::pop_heap(heap.begin(), heap.end());
        std::uint32_t i = heap.back();
        heap.pop_back();
        in_heap[i] = 0;
        return i;
    }
    void load(const SparseVec& v) {
        for (std::size_t k = 0; k < v.size(); ++k) {
            dense[v.idx[k]] = v.val[k];
            push(v.idx[k]);
        }
    }
    // dense -= c * v
    void sub(const PrimeField& f, const SparseVec& v, Residue c) {
        const unsigned p = f.p();
        const unsigned nc = p - c;
        for (std::size_t k = 0; k < v.size(); ++k) {
            std::uint32_t i = v.idx[k];
            dense[i] = Residue((dense[i] + nc * v.val[k]) % p);
            push(i);
        }
    }
    // Drains the heap into a sorted sparse vector and clears scratch.
    void drain_into(SparseVec& out) {
        std::vector<std::pair<std::uint32_t, Residue>> rest;
        for (auto i : heap) {
            if (dense[i]) rest.emplace_back(i, dense[i]);
            dense[i] = 0;
            in_heap[i] = 0;
        }
        heap.clear();
        std::sort(rest.begin(), rest.end());
        SparseVec tail;
        for (auto& [i, v] : rest) tail.push(i, v);
        // out holds entries in decreasing order
        std::reverse(out.idx.begin(), out.idx.end());
        std::reverse(out.val.begin(), out.val.end());
        SparseVec merged;
        merged.idx.reserve(tail.size() + out.size());
        merged.val.reserve(tail.size() + out.size());
        for (std::size_t k = 0; k < tail.size(); ++k) merged.push(tail.idx[k], tail.val[k]);
        for (std::size_t k = 0; k < out.size(); ++k) merged.push(out.idx[k], out.val[k]);
        out = std::move(merged);
    }
};

thread_local Scratch tl_scratch;

}  // namespace

SparseVec SparseEchelon::reduce(const SparseVec& v, std::vector<std::pair<std::uint32_t, Residue>>* combo,
                                const SparseEchelon* base,
                                std::vector<std::pair<std::uint32_t, Residue>>* base_combo) const {
    Scratch& s = tl_scratch;
    s.ensure(ambient());
    s.load(v);
    SparseVec out;
    while (!s.heap.empty()) {
        std::uint32_t i = s.pop();
        Residue c = s.dense[i];
        if (!c) continue;
        int owner = base ? base->pivot_of_[i] : -1;
        if (owner >= 0) {
            s.sub(f_, base->vecs_[owner], c);
            if (base_combo) base_combo->emplace_back(std::uint32_t(owner), c);
            continue;
        }
        owner = pivot_of_[i];
        if (owner >= 0) {
            s.sub(f_, vecs_[owner], c);
            if (combo) combo->emplace_back(std::uint32_t(owner), c);
            continue;
        }
        s.dense[i] = 0;
        out.push(i, c);
        s.drain_into(out);
        return out;
    }
    return out;
}

SparseVec SparseEchelon::reduce_fully(const SparseVec& v, const SparseEchelon* base) const {
    Scratch& s = tl_scratch;
    s.ensure(ambient());
    s.load(v);
    SparseVec out;  // decreasing order
    while (!s.heap.empty()) {
        std::uint32_t i = s.pop();
        Residue c = s.dense[i];
        if (!c) continue;
        int owner = base ? base->pivot_of_[i] : -1;
        if (owner >= 0) {
            s.sub(f_, base->vecs_[owner], c);
            continue;
        }
        owner = pivot_of_[i];
        if (owner >= 0) {
            s.sub(f_, vecs_[owner], c);
            continue;
        }
        s.dense[i] = 0;
        out.push(i, c);
    }
    std::reverse(out.idx.begin(), out.idx.end());
    std::reverse(out.val.begin(), out.val.end());
    return out;
}

std::uint32_t SparseEchelon::insert(SparseVec residual, Residue* scale_used) {
    if (residual.empty()) throw std::invalid_argument("cannot insert zero vector");
    Residue inv = f_.inv(residual.lead_value());
    scale(f_, residual, inv);
    if (scale_used) *scale_used = inv;
    std::uint32_t id = std::uint32_t(vecs_.size());
    if (pivot_of_[residual.lead()] >= 0) throw std::logic_error("pivot already occupied");
    pivot_of_[residual.lead()] = std::int32_t(id);
    vecs_.push_back(std::move(residual));
    return id;
}

}  // namespace skz
