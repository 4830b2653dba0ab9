#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "skz/fplin.hpp"

using namespace skz;

namespace {

FpMatrix random_matrix(std::mt19937& rng, const PrimeField& f, std::size_t r, std::size_t c) {
    FpMatrix m(r, c);
    std::uniform_int_distribution<int> d(0, int(f.p()) - 1);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m.at(i, j) = Residue(d(rng));
    return m;
}

// Independent rank oracle: column-major elimination with explicit row swaps on int arithmetic.
std::size_t oracle_rank(std::vector<std::vector<long long>> a, long long p) {
    const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
    auto inv = [&](long long x) {
        for (long long y = 1; y < p; ++y)
            if (x * y % p == 1) return y;
        return 0LL;
    };
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = rows;
        for (std::size_t i = r; i < rows; ++i)
            if (a[i][c] % p) {
                piv = i;
                break;
            }
        if (piv == rows) continue;
        std::swap(a[piv], a[r]);
        long long iv = inv(((a[r][c] % p) + p) % p);
        for (std::size_t i = r + 1; i < rows; ++i) {
            long long fac = ((a[i][c] % p) + p) % p * iv % p;
            for (std::size_t j = c; j < cols; ++j) a[i][j] = ((a[i][j] - fac * a[r][j]) % p + p) % p;
        }
        ++r;
    }
    return r;
}

std::vector<std::vector<long long>> to_ll(const FpMatrix& m) {
    std::vector<std::vector<long long>> a(m.rows(), std::vector<long long>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) a[i][j] = m.at(i, j);
    return a;
}

}  // namespace

TEST_CASE("prime field arithmetic") {
    PrimeField f(7);
    CHECK(f.mul(3, 5) == 1);
    CHECK(f.inv(3) == 5);
    CHECK(f.from_int(-1) == 6);
    CHECK(f.to_signed(6) == -1);
    CHECK_THROWS(PrimeField(9));
    for (unsigned p : {2u, 3u, 5u, 251u}) {
        PrimeField g(p);
        for (unsigned a = 1; a < p; ++a) CHECK(g.mul(Residue(a), g.inv(Residue(a))) == 1);
    }
}

TEST_CASE("rref of identity and dependent rows") {
    PrimeField f3(3), f5(5);
    auto e = rref(f3, FpMatrix::identity(3));
    CHECK(e.rank == 3);
    CHECK(e.pivots == std::vector<std::size_t>{0, 1, 2});
    FpMatrix m(2, 2);
    m.at(0, 0) = 1;
    m.at(0, 1) = 2;
    m.at(1, 0) = 2;
    m.at(1, 1) = 4;
    CHECK(rank(f5, m) == 1);
}

TEST_CASE("rank agrees with an independent elimination") {
    std::mt19937 rng(12345);
    for (unsigned p : {2u, 3u, 5u}) {
        PrimeField f(p);
        for (int t = 0; t < 40; ++t) {
            std::size_t r = 1 + rng() % 20, c = 1 + rng() % 30;
            auto m = random_matrix(rng, f, r, c);
            // sprinkle dependent rows
            if (r > 2)
                for (std::size_t j = 0; j < c; ++j) m.at(r - 1, j) = f.add(m.at(0, j), f.mul(2 % p, m.at(1, j)));
            CHECK(rank(f, m) == oracle_rank(to_ll(m), p));
        }
        auto m = random_matrix(rng, f, 20, 30);
        CHECK(rank(f, m) == oracle_rank(to_ll(m), p));
    }
}

TEST_CASE("rref is idempotent and rank-nullity holds") {
    std::mt19937 rng(7);
    PrimeField f(3);
    for (int t = 0; t < 50; ++t) {
        auto m = random_matrix(rng, f, 1 + rng() % 12, 1 + rng() % 12);
        auto e1 = rref(f, m);
        auto e2 = rref(f, e1.matrix);
        CHECK(e1.matrix == e2.matrix);
        auto k = kernel(f, m);
        CHECK(e1.rank + k.dim() == m.cols());
        for (const auto& v : k.basis_vectors()) {
            auto w = m.apply(f, v);
            for (auto x : w) CHECK(x == 0);
        }
    }
}

TEST_CASE("kernel examples") {
    PrimeField f3(3), f5(5);
    CHECK(kernel(f3, FpMatrix(2, 2)).dim() == 2);
    CHECK(kernel(f5, FpMatrix::identity(4)).dim() == 0);
    FpMatrix ones(1, 3);
    for (int j = 0; j < 3; ++j) ones.at(0, j) = 1;
    auto k = kernel(f3, ones);
    CHECK(k.dim() == 2);
    // exhaustive: the kernel contains exactly the 9 annihilated vectors
    int annihilated = 0;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            for (int c = 0; c < 3; ++c) {
                std::vector<Residue> v{Residue(a), Residue(b), Residue(c)};
                bool zero = (a + b + c) % 3 == 0;
                annihilated += zero;
                CHECK(k.contains(f3, v) == zero);
            }
    CHECK(annihilated == 9);
}

TEST_CASE("solve") {
    PrimeField f(3);
    std::vector<Residue> b{2, 0, 1};
    auto x = solve(f, FpMatrix::identity(3), b);
    REQUIRE(x);
    CHECK(*x == b);
    FpMatrix m(1, 2);
    m.at(0, 0) = 1;
    m.at(0, 1) = 2;
    auto y = solve(f, m, std::vector<Residue>{0});
    REQUIRE(y);
    CHECK(f.add((*y)[0], f.mul(2, (*y)[1])) == 0);
    FpMatrix col(2, 1);
    col.at(0, 0) = 1;
    col.at(1, 0) = 1;
    CHECK_FALSE(solve(f, col, std::vector<Residue>{0, 1}));
    std::mt19937 rng(99);
    for (int t = 0; t < 50; ++t) {
        auto a = random_matrix(rng, f, 1 + rng() % 8, 1 + rng() % 8);
        std::vector<Residue> rhs(a.rows());
        for (auto& v : rhs) v = Residue(rng() % 3);
        if (auto s = solve(f, a, rhs)) CHECK(a.apply(f, *s) == rhs);
        else {
            // inconsistent: rank of [a|b] exceeds rank of a
            FpMatrix aug(a.rows(), a.cols() + 1);
            for (std::size_t i = 0; i < a.rows(); ++i) {
                for (std::size_t j = 0; j < a.cols(); ++j) aug.at(i, j) = a.at(i, j);
                aug.at(i, a.cols()) = rhs[i];
            }
            CHECK(rank(f, aug) == rank(f, a) + 1);
        }
    }
}

TEST_CASE("subspace arithmetic") {
    PrimeField f(3);
    auto a = Subspace::span(f, 3, {{1, 0, 0}});
    auto b = Subspace::span(f, 3, {{0, 1, 0}});
    CHECK(a.sum(f, b).dim() == 2);
    CHECK(a.intersection(f, b).dim() == 0);
    CHECK(a.sum(f, a) == a);
    CHECK(a.intersection(f, a) == a);
    CHECK_THROWS(a.sum(f, Subspace(4)));

    // Exhaustive check over all subspaces spanned by pairs of vectors of F_3^5 drawn from a fixed sample.
    std::mt19937 rng(2024);
    std::vector<Subspace> pool;
    for (int t = 0; t < 24; ++t) {
        std::vector<std::vector<Residue>> vs(1 + rng() % 3, std::vector<Residue>(5));
        for (auto& v : vs)
            for (auto& x : v) x = Residue(rng() % 3);
        pool.push_back(Subspace::span(f, 5, vs));
    }
    for (const auto& u : pool)
        for (const auto& w : pool) {
            auto s = u.sum(f, w), i = u.intersection(f, w);
            CHECK(s.dim() + i.dim() == u.dim() + w.dim());
            // brute-force membership of all 243 vectors
            int in_both = 0, in_i = 0;
            for (int code = 0; code < 243; ++code) {
                std::vector<Residue> v(5);
                int c = code;
                for (auto& x : v) {
                    x = Residue(c % 3);
                    c /= 3;
                }
                bool both = u.contains(f, v) && w.contains(f, v);
                in_both += both;
                in_i += i.contains(f, v);
                CHECK(both == i.contains(f, v));
            }
            CHECK(in_both == in_i);
            auto comp = u.complement_of(f, w);
            CHECK(comp.size() + i.dim() == u.dim());
        }
}

TEST_CASE("sparse echelon reduction") {
    PrimeField f(5);
    std::mt19937 rng(3);
    for (int t = 0; t < 30; ++t) {
        const std::size_t n = 40;
        SparseEchelon ech(f, n);
        std::vector<std::vector<Residue>> dense;
        for (int k = 0; k < 30; ++k) {
            std::vector<std::pair<std::uint32_t, Residue>> terms;
            for (int e = 0; e < 4; ++e) terms.emplace_back(std::uint32_t(rng() % n), Residue(1 + rng() % 4));
            SparseVec v = make_sparse(f, terms);
            std::vector<Residue> dv(n, 0);
            for (std::size_t i = 0; i < v.size(); ++i) dv[v.idx[i]] = v.val[i];
            std::size_t before = Subspace::span(f, n, dense).dim();
            dense.push_back(dv);
            std::size_t after = Subspace::span(f, n, dense).dim();
            std::vector<std::pair<std::uint32_t, Residue>> combo;
            SparseVec r = ech.reduce(v, &combo);
            CHECK(r.empty() == (before == after));
            // v = residual + Σ c·vec(id)
            SparseVec check = r;
            for (auto [id, c] : combo) check = axpy(f, check, c, ech.vec(id));
            CHECK(check == v);
            if (!r.empty()) ech.insert(r);
        }
    }
}
