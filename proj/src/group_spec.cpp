#include "skz/group_spec.hpp"

#include <stdexcept>

#include "skz/fplin.hpp"

namespace skz {

long long ipow(long long b, int e) {
    if (e < 0) throw std::invalid_argument("negative exponent");
    long long r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

GroupSpec GroupSpec::abelian(unsigned p, std::vector<int> exps) {
    GroupSpec s;
    s.family = Family::Abelian;
    s.p = p;
    s.exponents = std::move(exps);
    return s;
}

GroupSpec GroupSpec::c_group(unsigned p, int r) {
    GroupSpec s;
    s.family = Family::C;
    s.p = p;
    s.r = r;
    return s;
}

GroupSpec GroupSpec::g_group(unsigned p, int r, int e) {
    GroupSpec s;
    s.family = Family::G;
    s.p = p;
    s.r = r;
    s.e = e;
    return s;
}

GroupSpec GroupSpec::metacyclic(unsigned p, int m, int n, int q, int l) {
    GroupSpec s;
    s.family = Family::Metacyclic;
    s.p = p;
    s.m = m;
    s.n = n;
    s.q = q;
    s.l = l;
    return s;
}

GroupSpec GroupSpec::explicit_table(unsigned p, std::vector<std::vector<int>> table) {
    GroupSpec s;
    s.family = Family::Table;
    s.p = p;
    s.table = std::move(table);
    return s;
}

namespace {

bool is_quadratic_residue(long long e, long long p) {
    e %= p;
    if (e < 0) e += p;
    for (long long x = 1; x < p; ++x)
        if (x * x % p == e) return true;
    return false;
}

long long powmod(long long b, long long e, long long m) {
    long long r = 1 % m;
    b %= m;
    while (e > 0) {
        if (e & 1) r = r * b % m;
        b = b * b % m;
        e >>= 1;
    }
    return r;
}

}  // namespace

void GroupSpec::validate() const {
    if (!is_prime(p)) throw std::invalid_argument("p = " + std::to_string(p) + " is not prime");
    switch (family) {
    case Family::Abelian:
        for (int e_i : exponents)
            if (e_i < 1) throw std::invalid_argument("abelian exponents must be positive");
        break;
    case Family::C:
        if (r < 3) throw std::invalid_argument("C(r) requires r >= 3");
        break;
    case Family::G:
        if (r < 4) throw std::invalid_argument("G(r,e) requires r >= 4");
        if (p < 3) throw std::invalid_argument("G(r,e) requires an odd prime");
        if (e % static_cast<int>(p) == 0) throw std::invalid_argument("G(r,e) requires e prime to p");
        if (e != 1 && is_quadratic_residue(e, p))
            throw std::invalid_argument("G(r,e) requires e = 1 or a quadratic non-residue mod p");
        break;
    case Family::Metacyclic: {
        if (m < 1 || n < 1 || q < 0 || l < 1) throw std::invalid_argument("metacyclic parameters out of range");
        if (!(l <= m && q <= m && n + l >= m && q + l >= m))
            throw std::invalid_argument("metacyclic parameters violate l<=m, q<=m, n+l>=m, q+l>=m");
        const long long pm = ipow(p, m);
        const long long pl1 = ipow(p, l) + 1;
        if (powmod(pl1, ipow(p, n), pm) != 1)
            throw std::invalid_argument("metacyclic congruence (p^l+1)^{p^n} = 1 mod p^m fails");
        if ((pl1 % pm) * (ipow(p, q) % pm) % pm != ipow(p, q) % pm)
            throw std::invalid_argument("metacyclic congruence (p^l+1)p^q = p^q mod p^m fails");
        break;
    }
    case Family::Table:
        if (table.empty()) throw std::invalid_argument("explicit table is empty");
        for (const auto& row : table)
            if (row.size() != table.size()) throw std::invalid_argument("explicit table is not square");
        break;
    }
}

int GroupSpec::metacyclic_case() const {
    if (family != Family::Metacyclic) return 0;
    if (n < q) return 1;
    if (n > q) return 2;
    return 3;
}

std::string GroupSpec::name() const {
    switch (family) {
    case Family::Abelian: {
        std::string s = "Abelian(";
        for (std::size_t i = 0; i < exponents.size(); ++i) s += (i ? "," : "") + std::to_string(exponents[i]);
        return s + ")";
    }
    case Family::C:
        return "C(" + std::to_string(r) + ")";
    case Family::G:
        return "G(" + std::to_string(r) + "," + std::to_string(e) + ")";
    case Family::Metacyclic:
        return "P(" + std::to_string(m) + "," + std::to_string(n) + "," + std::to_string(q) + "," +
               std::to_string(l) + ")";
    case Family::Table:
        return "Table(" + std::to_string(table.size()) + ")";
    }
    return "?";
}

}  // namespace skz
