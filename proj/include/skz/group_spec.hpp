// Parameters of the p-group families handled by the library.
#pragma once

#include <string>
#include <vector>

namespace skz {

struct GroupSpec {
    enum class Family { Abelian, C, G, Metacyclic, Table };

    Family family = Family::Abelian;
    unsigned p = 3;
    std::vector<int> exponents;  // Abelian: ∏ Z/p^{e_i}
    int r = 0;                   // C(r), G(r,e)
    int e = 1;                   // G(r,e)
    int m = 0, n = 0, q = 0, l = 0;  // metacyclic P(m,n,q,l)
    std::vector<std::vector<int>> table;  // explicit multiplication table, identity = 0

    static GroupSpec abelian(unsigned p, std::vector<int> exps);
    static GroupSpec c_group(unsigned p, int r);
    static GroupSpec g_group(unsigned p, int r, int e = 1);
    static GroupSpec metacyclic(unsigned p, int m, int n, int q, int l);
    static GroupSpec explicit_table(unsigned p, std::vector<std::vector<int>> table);

    // Throws std::invalid_argument when the family invariants fail.
    void validate() const;
    std::string name() const;
    // Metacyclic case 1 (n<q), 2 (n>q) or 3 (n=q); 0 for other families.
    int metacyclic_case() const;
};

long long ipow(long long b, int e);

}  // namespace skz
