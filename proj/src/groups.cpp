#include "skz/groups.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace skz {

// ---------------------------------------------------------------- collection

PcPresentation::PcPresentation(std::vector<std::string> names, std::vector<long long> rel_orders)
    : names_(std::move(names)), orders_(std::move(rel_orders)) {
    const std::size_t n = names_.size();
    powers_.assign(n, Exps(n, 0));
    conj_.assign(n, std::vector<Exps>(n, Exps(n, 0)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) conj_[i][j][j] = 1;
}

void PcPresentation::set_power(std::size_t i, Exps word) {
    for (std::size_t k = 0; k <= i; ++k)
        if (word[k]) throw std::invalid_argument("power word must involve later generators only");
    powers_[i] = std::move(word);
}

void PcPresentation::set_conjugate(std::size_t i, std::size_t j, Exps word) {
    if (i >= j) throw std::invalid_argument("conjugate relation needs i < j");
    for (std::size_t k = 0; k <= i; ++k)
        if (word[k]) throw std::invalid_argument("conjugate word must involve later generators only");
    conj_[i][j] = std::move(word);
}

long long PcPresentation::order() const {
    long long o = 1;
    for (auto m : orders_) o *= m;
    return o;
}

PcPresentation::Exps PcPresentation::mul_gen(const Exps& u, std::size_t i, long long& budget) const {
    if (--budget < 0) throw std::runtime_error("collection exceeded its step bound; rule set is inconsistent");
    const std::size_t n = rank();
    Exps res(n, 0);
    for (std::size_t k = 0; k < i; ++k) res[k] = u[k];
    res[i] = u[i] + 1;
    Exps x(n, 0);
    if (res[i] == orders_[i]) {
        res[i] = 0;
        x = powers_[i];
    }
    // u·g_i = prefix · g_i^{e_i+1} · (tail)^{g_i}
    for (std::size_t j = i + 1; j < n; ++j)
        for (long long t = 0; t < u[j]; ++t) x = mul_word(std::move(x), conj_[i][j], budget);
    for (std::size_t k = i + 1; k < n; ++k) res[k] = x[k];
    return res;
}

PcPresentation::Exps PcPresentation::mul_word(Exps u, const Exps& w, long long& budget) const {
    for (std::size_t j = 0; j < rank(); ++j)
        for (long long t = 0; t < w[j]; ++t) u = mul_gen(u, j, budget);
    return u;
}

PcPresentation::Exps PcPresentation::multiply_generator(const Exps& u, std::size_t i) const {
    long long budget = 100'000'000;
    return mul_gen(u, i, budget);
}

PcPresentation::Exps PcPresentation::collect(const std::vector<std::size_t>& letters) const {
    long long budget = 100'000'000;
    Exps u(rank(), 0);
    for (auto g : letters) u = mul_gen(u, g, budget);
    return u;
}

PcPresentation::Exps PcPresentation::multiply(const Exps& u, const Exps& v) const {
    long long budget = 100'000'000;
    return mul_word(u, v, budget);
}

PcPresentation pc_presentation(const GroupSpec& spec) {
    spec.validate();
    const long long p = spec.p;
    using Exps = PcPresentation::Exps;
    auto mod = [](long long a, long long m) { return ((a % m) + m) % m; };
    switch (spec.family) {
    case GroupSpec::Family::Abelian: {
        std::vector<std::string> names;
        std::vector<long long> orders;
        for (std::size_t i = 0; i < spec.exponents.size(); ++i) {
            names.push_back(spec.exponents.size() == 1 ? "x" : "x" + std::to_string(i + 1));
            orders.push_back(ipow(p, spec.exponents[i]));
        }
        return PcPresentation(names, orders);
    }
    case GroupSpec::Family::C: {
        // a^p = b^p = c^{p^{r-2}} = 1, (a,b) = c^N with N = p^{r-3}, c central: b^a = b c^{-N}
        const long long oc = ipow(p, spec.r - 2), N = ipow(p, spec.r - 3);
        PcPresentation pc({"a", "b", "c"}, {p, p, oc});
        pc.set_conjugate(0, 1, Exps{0, 1, mod(-N, oc)});
        return pc;
    }
    case GroupSpec::Family::G: {
        // (f,g) = h gives g^f = g h^{-1}; (f,h^{-1}) = g^{eN} gives h^f = g^{eN} h; (g,h) = 1
        const long long og = ipow(p, spec.r - 2), N = ipow(p, spec.r - 3);
        PcPresentation pc({"f", "g", "h"}, {p, og, p});
        pc.set_conjugate(0, 1, Exps{0, 1, p - 1});
        pc.set_conjugate(0, 2, Exps{0, mod(spec.e * N, og), 1});
        return pc;
    }
    case GroupSpec::Family::Metacyclic: {
        // y^{p^n} = x^{p^q}, x^{p^m} = 1, (x,y) = x^{p^l} gives x^y = x^{1+p^l}
        const long long om = ipow(p, spec.m), on = ipow(p, spec.n);
        PcPresentation pc({"y", "x"}, {on, om});
        pc.set_power(0, Exps{0, mod(ipow(p, spec.q), om)});
        pc.set_conjugate(0, 1, Exps{0, mod(1 + ipow(p, spec.l), om)});
        return pc;
    }
    case GroupSpec::Family::Table:
        break;
    }
    throw std::invalid_argument("explicit tables have no power-conjugate presentation");
}

// ---------------------------------------------------------------- tables

int GroupTable::pow(int a, long long e) const {
    long long k = ((e % order) + order) % order;
    int r = identity;
    int base = a;
    while (k > 0) {
        if (k & 1) r = mul(r, base);
        base = mul(base, base);
        k >>= 1;
    }
    return r;
}

int GroupTable::element_order(int a) const {
    int k = 1;
    for (int x = a; x != identity; x = mul(x, a)) ++k;
    return k;
}

int GroupTable::index_of(const std::vector<long long>& exps) const {
    for (std::size_t i = 0; i < elements.size(); ++i)
        if (elements[i] == exps) return int(i);
    throw std::invalid_argument("exponent vector is not a normal form");
}

std::string GroupTable::describe(int a) const {
    if (elements.empty() || elements[a].empty()) return "#" + std::to_string(a);
    std::string s;
    for (std::size_t i = 0; i < elements[a].size(); ++i) {
        if (!elements[a][i]) continue;
        s += generator_names[i];
        if (elements[a][i] > 1) s += "^" + std::to_string(elements[a][i]);
    }
    return s.empty() ? "1" : s;
}

int GroupTable::generator(const std::string& nm) const {
    for (std::size_t i = 0; i < generator_names.size(); ++i)
        if (generator_names[i] == nm) return generators[i];
    throw std::invalid_argument("no generator named " + nm);
}

namespace {

void check_group_axioms(const GroupTable& g) {
    const int n = g.order;
    for (int a = 0; a < n; ++a)
        if (g.mul(g.identity, a) != a || g.mul(a, g.identity) != a)
            throw std::invalid_argument("identity is not two-sided");
    for (int a = 0; a < n; ++a)
        if (g.mul(a, g.inverse[a]) != g.identity || g.mul(g.inverse[a], a) != g.identity)
            throw std::invalid_argument("element without inverse");
    if (n <= 2000) {
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                int ab = g.mul(a, b);
                for (int c = 0; c < n; ++c)
                    if (g.mul(ab, c) != g.mul(a, g.mul(b, c))) throw std::invalid_argument("multiplication is not associative");
            }
    } else {
        std::uint64_t s = 0x9e3779b97f4a7c15ULL;
        for (int t = 0; t < 1'000'000; ++t) {
            s ^= s << 13;
            s ^= s >> 7;
            s ^= s << 17;
            int a = int(s % n), b = int((s >> 20) % n), c = int((s >> 40) % n);
            if (g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c)))
                throw std::invalid_argument("multiplication is not associative");
        }
    }
}

void fill_inverses(GroupTable& g) {
    g.inverse.assign(g.order, -1);
    for (int a = 0; a < g.order; ++a)
        for (int b = 0; b < g.order; ++b)
            if (g.mul(a, b) == g.identity) {
                g.inverse[a] = b;
                break;
            }
    for (int a = 0; a < g.order; ++a)
        if (g.inverse[a] < 0) throw std::invalid_argument("element without inverse");
}

void verify_relations(const GroupSpec& spec, const GroupTable& g) {
    const long long p = spec.p;
    auto require = [&](bool ok, const std::string& what) {
        if (!ok) throw std::logic_error(spec.name() + ": relation " + what + " fails");
    };
    auto central = [&](int z) {
        for (int x = 0; x < g.order; ++x)
            if (g.mul(x, z) != g.mul(z, x)) return false;
        return true;
    };
    const int e = g.identity;
    switch (spec.family) {
    case GroupSpec::Family::Abelian:
        for (std::size_t i = 0; i < g.generators.size(); ++i) {
            require(g.element_order(g.generators[i]) == ipow(p, spec.exponents[i]), "generator order");
            require(central(g.generators[i]), "commutativity");
        }
        break;
    case GroupSpec::Family::C: {
        int a = g.generator("a"), b = g.generator("b"), c = g.generator("c");
        require(g.pow(a, p) == e && g.pow(b, p) == e, "a^p = b^p = 1");
        require(g.pow(c, ipow(p, spec.r - 2)) == e, "c^{p^{r-2}} = 1");
        require(g.commutator(a, b) == g.pow(c, ipow(p, spec.r - 3)), "(a,b) = c^{p^{r-3}}");
        require(central(c), "c central");
        break;
    }
    case GroupSpec::Family::G: {
        int f = g.generator("f"), gg = g.generator("g"), h = g.generator("h");
        require(g.pow(f, p) == e && g.pow(h, p) == e, "f^p = h^p = 1");
        require(g.pow(gg, ipow(p, spec.r - 2)) == e, "g^{p^{r-2}} = 1");
        require(g.commutator(gg, h) == e, "(g,h) = 1");
        require(g.commutator(f, g.inverse[h]) == g.pow(gg, spec.e * ipow(p, spec.r - 3)), "(f,h^-1) = g^{e p^{r-3}}");
        require(g.commutator(f, gg) == h, "(f,g) = h");
        break;
    }
    case GroupSpec::Family::Metacyclic: {
        int x = g.generator("x"), y = g.generator("y");
        require(g.pow(x, ipow(p, spec.m)) == e, "x^{p^m} = 1");
        require(g.pow(y, ipow(p, spec.n)) == g.pow(x, ipow(p, spec.q)), "y^{p^n} = x^{p^q}");
        require(g.commutator(x, y) == g.pow(x, ipow(p, spec.l)), "(x,y) = x^{p^l}");
        break;
    }
    case GroupSpec::Family::Table:
        break;
    }
    long long o = 1;
    while (o < g.order) o *= p;
    require(o == g.order, "order is a power of p");
}

}  // namespace

GroupTable build_group(const GroupSpec& spec, const PrimeField& f) {
    spec.validate();
    if (spec.p != f.p()) throw std::invalid_argument("group prime and field prime differ");
    GroupTable g;
    g.p = spec.p;
    g.name = spec.name();
    if (spec.family == GroupSpec::Family::Table) {
        const int n = int(spec.table.size());
        g.order = n;
        g.mult.resize(std::size_t(n) * n);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                int v = spec.table[a][b];
                if (v < 0 || v >= n) throw std::invalid_argument("table entry out of range");
                g.mult[std::size_t(a) * n + b] = v;
            }
        g.identity = -1;
        for (int a = 0; a < n && g.identity < 0; ++a) {
            bool ok = true;
            for (int b = 0; b < n && ok; ++b) ok = g.mul(a, b) == b && g.mul(b, a) == b;
            if (ok) g.identity = a;
        }
        if (g.identity < 0) throw std::invalid_argument("table has no identity");
        g.elements.assign(n, {});
        fill_inverses(g);
        check_group_axioms(g);
        verify_relations(spec, g);
        // greedy generating set
        std::vector<int> gens;
        std::vector<int> sub{g.identity};
        for (int a = 0; a < n; ++a) {
            if (std::binary_search(sub.begin(), sub.end(), a)) continue;
            gens.push_back(a);
            sub = subgroup_closure(g, gens);
        }
        g.generators = gens;
        for (std::size_t i = 0; i < gens.size(); ++i) g.generator_names.push_back("g" + std::to_string(i + 1));
        return g;
    }

    PcPresentation pc = pc_presentation(spec);
    const std::size_t r = pc.rank();
    const long long order = pc.order();
    if (order > 100000) throw std::invalid_argument("group order too large for tabulation");
    g.order = int(order);
    const auto& ord = pc.relative_orders();
    std::vector<long long> weight(r, 1);
    for (std::size_t i = r; i-- > 1;) weight[i - 1] = weight[i] * ord[i];
    g.elements.resize(order);
    for (long long idx = 0; idx < order; ++idx) {
        std::vector<long long> ex(r);
        long long rem = idx;
        for (std::size_t i = 0; i < r; ++i) {
            ex[i] = rem / weight[i];
            rem %= weight[i];
        }
        g.elements[idx] = ex;
    }
    auto index = [&](const std::vector<long long>& ex) {
        long long s = 0;
        for (std::size_t i = 0; i < r; ++i) s += ex[i] * weight[i];
        return int(s);
    };
    std::vector<int> right(std::size_t(order) * r);
    for (long long u = 0; u < order; ++u)
        for (std::size_t i = 0; i < r; ++i) right[u * r + i] = index(pc.multiply_generator(g.elements[u], i));
    g.mult.resize(std::size_t(order) * order);
    g.identity = 0;
    for (long long h = 0; h < order; ++h) {
        const auto& ex = g.elements[h];
        std::size_t k = r;
        for (std::size_t i = r; i-- > 0;)
            if (ex[i]) {
                k = i;
                break;
            }
        for (long long u = 0; u < order; ++u) {
            if (k == r) {
                g.mult[u * order + h] = int(u);
            } else {
                int prev = g.mult[u * order + (h - weight[k])];
                g.mult[u * order + h] = right[std::size_t(prev) * r + k];
            }
        }
    }
    for (std::size_t i = 0; i < r; ++i) {
        std::vector<long long> ex(r, 0);
        ex[i] = 1;
        g.generators.push_back(index(ex));
        g.generator_names.push_back(pc.names()[i]);
    }
    fill_inverses(g);
    check_group_axioms(g);
    verify_relations(spec, g);
    return g;
}

std::vector<int> subgroup_closure(const GroupTable& g, const std::vector<int>& gens) {
    std::vector<char> in(g.order, 0);
    std::vector<int> elems{g.identity};
    in[g.identity] = 1;
    for (std::size_t k = 0; k < elems.size(); ++k)
        for (int x : gens) {
            int y = g.mul(elems[k], x);
            if (!in[y]) {
                in[y] = 1;
                elems.push_back(y);
            }
        }
    std::sort(elems.begin(), elems.end());
    return elems;
}

// ---------------------------------------------------------------- lower central series

namespace {

struct Closure {
    const GroupTable* g;
    std::vector<int> gens;
    std::vector<char> in;
    std::vector<int> elems;

    explicit Closure(const GroupTable& grp) : g(&grp), in(grp.order, 0), elems{grp.identity} {
        in[grp.identity] = 1;
    }
    void add(int x) {
        if (in[x]) return;
        gens.push_back(x);
        std::fill(in.begin(), in.end(), 0);
        elems = subgroup_closure(*g, gens);
        for (int e : elems) in[e] = 1;
    }
};

}  // namespace

std::vector<Residue> LCSReport::coordinates(int d, int x) const {
    auto it = coords_.find(d);
    if (it == coords_.end()) return {};
    auto jt = it->second.find(x);
    if (jt == it->second.end()) throw std::invalid_argument("element is not in the filtration level");
    return jt->second;
}

LCSReport lower_central_series(const GroupTable& g, const PrimeField& f) {
    const long long p = f.p();
    {
        long long o = 1;
        while (o < g.order) o *= p;
        if (o != g.order) throw std::invalid_argument("not a p-group for p = " + std::to_string(p));
    }
    // Iterated left-normed commutator values.
    std::vector<std::vector<int>> K(2);
    K[1].resize(g.order);
    std::iota(K[1].begin(), K[1].end(), 0);
    while (true) {
        std::set<int> next;
        for (int x = 0; x < g.order; ++x)
            for (int k : K.back()) next.insert(g.commutator(x, k));
        K.emplace_back(next.begin(), next.end());
        if (K.back().size() == 1) break;
    }
    int exponent = 1;
    for (int x = 0; x < g.order; ++x) exponent = std::max(exponent, g.element_order(x));

    LCSReport rep;
    auto& levels = rep.chain.levels;
    levels.push_back({});  // degree 0 unused
    for (int n = 1;; ++n) {
        Closure cl(g);
        for (std::size_t r = 1; r < K.size(); ++r)
            for (long long pu = 1;; pu *= p) {
                if (static_cast<long long>(r) * pu >= n)
                    for (int k : K[r]) cl.add(g.pow(k, pu));
                if (pu >= exponent) break;
            }
        levels.push_back(cl.elems);  // degree 2n-1
        levels.push_back(cl.elems);  // degree 2n
        if (cl.elems.size() == 1) break;
    }
    const int top = int(levels.size()) - 1;
    for (int d = 1; d < top; ++d) {
        long long ratio = static_cast<long long>(levels[d].size() / levels[d + 1].size());
        int k = 0;
        while (ratio > 1) {
            ratio /= p;
            ++k;
        }
        rep.chain.quotient_dims[d] = k;
    }
    // Graded pieces live in even degrees: Γ^d / Γ^{d+2}.
    for (int d = 2; d + 2 <= top; d += 2) {
        const auto& lower = levels[d + 2];
        Closure cl(g);
        for (int x : lower) cl.add(x);
        std::vector<int> basis;
        for (int x : levels[d]) {
            if (cl.in[x]) continue;
            basis.push_back(x);
            cl.add(x);
        }
        if (basis.empty()) continue;
        rep.graded_dims[d] = int(basis.size());
        rep.piece_basis[d] = basis;
        auto& coords = rep.coords_[d];
        const std::size_t k = basis.size();
        std::vector<Residue> c(k, 0);
        while (true) {
            int prod = g.identity;
            for (std::size_t i = 0; i < k; ++i) prod = g.mul(prod, g.pow(basis[i], c[i]));
            for (int y : lower) coords[g.mul(prod, y)] = c;
            std::size_t i = 0;
            while (i < k && ++c[i] == p) c[i++] = 0;
            if (i == k) break;
        }
    }
    auto coords_at = [&](int d, int x) -> std::vector<Residue> {
        auto it = rep.piece_basis.find(d);
        if (it == rep.piece_basis.end()) return {};
        return rep.coordinates(d, x);
    };
    for (const auto& [r, bx] : rep.piece_basis)
        for (const auto& [s, by] : rep.piece_basis)
            for (std::size_t i = 0; i < bx.size(); ++i)
                for (std::size_t j = 0; j < by.size(); ++j) {
                    int c = g.commutator(bx[i], by[j]);
                    LCSReport::Bracket b{r, int(i), s, int(j), r + s, {}};
                    if (r + s < int(levels.size())) {
                        if (!std::binary_search(levels[r + s].begin(), levels[r + s].end(), c))
                            throw std::logic_error("commutator leaves its filtration level");
                        b.value = coords_at(r + s, c);
                    }
                    rep.bracket.push_back(std::move(b));
                }
    for (const auto& [r, bx] : rep.piece_basis)
        for (std::size_t i = 0; i < bx.size(); ++i) {
            int c = g.pow(bx[i], p);
            int d = int(p) * r;
            LCSReport::Restriction res{r, int(i), d, {}};
            if (d < int(levels.size())) {
                if (!std::binary_search(levels[d].begin(), levels[d].end(), c))
                    throw std::logic_error("p-th power leaves its filtration level");
                res.value = coords_at(d, c);
            }
            rep.restriction.push_back(std::move(res));
        }
    return rep;
}

// ---------------------------------------------------------------- group algebra

std::vector<Residue> GroupAlgebra::element(int g) const {
    std::vector<Residue> v(dim(), 0);
    v.at(g) = 1;
    return v;
}

std::vector<Residue> GroupAlgebra::multiply(const std::vector<Residue>& a, const std::vector<Residue>& b) const {
    std::vector<unsigned> acc(dim(), 0);
    for (int x = 0; x < g_->order; ++x) {
        if (!a[x]) continue;
        for (int y = 0; y < g_->order; ++y) {
            if (!b[y]) continue;
            int z = g_->mul(x, y);
            acc[z] = (acc[z] + unsigned(a[x]) * b[y]) % f_.p();
        }
    }
    return {acc.begin(), acc.end()};
}

std::vector<Residue> GroupAlgebra::times_x_minus_one(const std::vector<Residue>& v, int x) const {
    std::vector<Residue> out(dim(), 0);
    for (int g = 0; g < g_->order; ++g) {
        if (!v[g]) continue;
        int gx = g_->mul(g, x);
        out[gx] = f_.add(out[gx], v[g]);
        out[g] = f_.sub(out[g], v[g]);
    }
    return out;
}

Residue GroupAlgebra::augmentation(const std::vector<Residue>& v) const {
    Residue s = 0;
    for (auto x : v) s = f_.add(s, x);
    return s;
}

namespace {

// Incremental dense echelon for selecting independent vectors.
class DenseEchelon {
public:
    DenseEchelon(const PrimeField& f, std::size_t n) : f_(f), n_(n) {}
    // true if v was independent (and is then added)
    bool add(std::vector<Residue> v) {
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            Residue x = v[piv_[r]];
            if (!x) continue;
            const auto& row = rows_[r];
            for (std::size_t j = 0; j < n_; ++j)
                if (row[j]) v[j] = f_.sub(v[j], f_.mul(x, row[j]));
        }
        std::size_t c = 0;
        while (c < n_ && !v[c]) ++c;
        if (c == n_) return false;
        Residue inv = f_.inv(v[c]);
        for (auto& x : v) x = f_.mul(x, inv);
        rows_.push_back(std::move(v));
        piv_.push_back(c);
        return true;
    }
    std::size_t rank() const { return rows_.size(); }

private:
    PrimeField f_;
    std::size_t n_;
    std::vector<std::vector<Residue>> rows_;
    std::vector<std::size_t> piv_;
};

}  // namespace

int AssociatedGraded::filtration(const std::vector<Residue>& v) const {
    if (std::all_of(v.begin(), v.end(), [](Residue x) { return x == 0; })) return -1;
    int n = 0;
    while (n + 1 < int(ideals.size()) && ideals[n + 1].contains(field, v)) ++n;
    return n;
}

std::vector<Residue> AssociatedGraded::leading_class(const std::vector<Residue>& v) const {
    int n = filtration(v);
    std::vector<Residue> out(algebra->dim(), 0);
    if (n < 0) return out;
    auto c = lifts_inverse.apply(field, v);
    for (std::size_t b = 0; b < algebra->dim(); ++b)
        if (algebra->degree(b) == 2 * n) out[b] = c[b];
    return out;
}

AssociatedGraded associated_graded_group_ring(const GroupTable& g, const PrimeField& f) {
    GroupAlgebra kg(g, f);
    const std::size_t N = kg.dim();
    AssociatedGraded out;
    out.field = f;

    // Powers of the augmentation ideal.
    out.ideals.push_back(Subspace::whole(N));
    {
        FpMatrix m(0, N);
        for (int x = 0; x < g.order; ++x) {
            if (x == g.identity) continue;
            auto v = kg.element(x);
            v[g.identity] = f.sub(v[g.identity], 1);
            m.append_row(v);
        }
        out.ideals.push_back(Subspace::span(f, m));
    }
    while (out.ideals.back().dim() > 0) {
        const Subspace& cur = out.ideals.back();
        FpMatrix m(0, N);
        for (const auto& v : cur.basis_vectors())
            for (int x : g.generators) m.append_row(kg.times_x_minus_one(v, x));
        out.ideals.push_back(Subspace::span(f, m));
        if (out.ideals.size() > N + 2) throw std::logic_error("augmentation ideal is not nilpotent");
    }
    for (const auto& s : out.ideals) out.ideal_dims.push_back(s.dim());

    // Lifts: words in the generator differences x_i - 1, chosen greedily by degree.
    struct Lift {
        std::vector<Residue> vec;
        int n;
        int parent;  // lift index, -1 for the unit
        int gen;     // generator position
    };
    std::vector<Lift> lifts;
    lifts.push_back({kg.element(g.identity), 0, -1, -1});
    std::vector<int> prev{0};
    for (std::size_t n = 1; n + 1 < out.ideals.size(); ++n) {
        DenseEchelon ech(f, N);
        for (const auto& v : out.ideals[n + 1].basis_vectors()) ech.add(v);
        const std::size_t want = out.ideals[n].dim() - out.ideals[n + 1].dim();
        std::vector<int> cur;
        for (int par : prev) {
            for (std::size_t gi = 0; gi < g.generators.size() && cur.size() < want; ++gi) {
                auto v = kg.times_x_minus_one(lifts[par].vec, g.generators[gi]);
                if (ech.add(v)) {
                    cur.push_back(int(lifts.size()));
                    lifts.push_back({std::move(v), int(n), par, int(gi)});
                }
            }
            if (cur.size() == want) break;
        }
        if (cur.size() != want) throw std::logic_error("associated graded is not generated in degree 2");
        prev = std::move(cur);
    }
    if (lifts.size() != N) throw std::logic_error("lift basis is incomplete");

    const std::size_t n = N;
    out.lifts = FpMatrix(n, n);
    for (std::size_t b = 0; b < n; ++b)
        for (std::size_t r = 0; r < n; ++r) out.lifts.at(r, b) = lifts[b].vec[r];
    {
        FpMatrix aug(n, 2 * n);
        for (std::size_t r = 0; r < n; ++r) {
            for (std::size_t c = 0; c < n; ++c) aug.at(r, c) = out.lifts.at(r, c);
            aug.at(r, n + r) = 1;
        }
        Echelon e = rref(f, aug);
        if (e.rank != n || e.pivots[n - 1] != n - 1) throw std::logic_error("lift matrix is singular");
        out.lifts_inverse = FpMatrix(n, n);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c) out.lifts_inverse.at(r, c) = e.matrix.at(r, n + c);
    }

    // Right multiplication by each generator class, projected to the next degree.
    const std::size_t ng = g.generators.size();
    std::vector<std::vector<std::vector<Term>>> R(ng, std::vector<std::vector<Term>>(n));
    for (std::size_t b = 0; b < n; ++b)
        for (std::size_t gi = 0; gi < ng; ++gi) {
            auto w = kg.times_x_minus_one(lifts[b].vec, g.generators[gi]);
            auto c = out.lifts_inverse.apply(f, w);
            for (std::size_t k = 0; k < n; ++k)
                if (c[k] && lifts[k].n == lifts[b].n + 1) R[gi][b].push_back({std::uint32_t(k), c[k]});
        }
    // products[a][b] = e_a · lift_b computed along the word of b
    std::vector<std::vector<Term>> products(n * n);
    for (std::size_t a = 0; a < n; ++a) {
        products[a * n + 0] = {{std::uint32_t(a), 1}};
        for (std::size_t b = 1; b < n; ++b) {
            const auto& prevp = products[a * n + lifts[b].parent];
            std::vector<std::pair<std::uint32_t, Residue>> terms;
            for (const Term& t : prevp)
                for (const Term& u : R[lifts[b].gen][t.index]) terms.emplace_back(u.index, f.mul(t.coef, u.coef));
            SparseVec sv = make_sparse(f, std::move(terms));
            for (std::size_t k = 0; k < sv.size(); ++k) products[a * n + b].push_back({sv.idx[k], sv.val[k]});
        }
    }
    std::vector<int> degrees;
    std::vector<std::string> labels;
    std::vector<Word> words;
    for (std::size_t b = 0; b < n; ++b) {
        degrees.push_back(2 * lifts[b].n);
        Word w;
        for (int c = int(b); lifts[c].parent >= 0; c = lifts[c].parent) w.push_back(std::uint32_t(lifts[c].gen));
        std::reverse(w.begin(), w.end());
        words.push_back(w);
        labels.push_back(word_label(g.generator_names, w));
    }
    GradedAlgebra::Meta meta;
    meta.name = "E0(F_" + std::to_string(f.p()) + " " + g.name + ")";
    meta.lie_origin = true;
    meta.words = words;
    for (std::size_t gi = 0; gi < ng; ++gi) meta.generator_names.push_back(g.generator_names[gi]);
    out.algebra = std::make_shared<GradedAlgebra>(f, std::move(degrees), std::move(labels), std::move(products),
                                                  std::move(meta));
    return out;
}

// ---------------------------------------------------------------- Quillen check

QuillenReport quillen_check(const GradedAlgebra& e0, const AlgebraSpec& presentation, const GradedAlgebra& presented,
                            const std::vector<std::vector<Residue>>& generator_map) {
    const PrimeField& f = e0.field();
    if (generator_map.size() != presentation.generators.size())
        throw std::invalid_argument("generator map has the wrong length");
    for (std::size_t i = 0; i < generator_map.size(); ++i) {
        auto d = homogeneous_degree(e0, generator_map[i]);
        if (!d || *d != presentation.generators[i].degree)
            throw std::invalid_argument("image of generator " + presentation.generators[i].name +
                                        " does not have degree " + std::to_string(presentation.generators[i].degree));
    }
    QuillenReport rep;
    rep.relations_hold = true;
    for (std::size_t r = 0; r < presentation.relations.size(); ++r) {
        std::vector<Residue> acc(e0.dim(), 0);
        for (const auto& m : presentation.relations[r]) {
            std::vector<Residue> v = e0.basis_vector(0);
            for (auto x : m.word) v = e0.multiply(v, generator_map[x]);
            Residue c = f.from_int(m.coef);
            for (std::size_t k = 0; k < acc.size(); ++k) acc[k] = f.add(acc[k], f.mul(c, v[k]));
        }
        if (std::any_of(acc.begin(), acc.end(), [](Residue x) { return x != 0; })) {
            rep.relations_hold = false;
            rep.detail += "relation " + std::to_string(r) + " does not vanish; ";
        }
    }
    // Span of words in the images, degree by degree.
    const int top = e0.max_degree();
    std::vector<std::vector<std::vector<Residue>>> span(top + 1);
    span[0].push_back(e0.basis_vector(0));
    bool gen_ok = true;
    for (int d = 1; d <= top; ++d) {
        DenseEchelon ech(f, e0.dim());
        for (std::size_t i = 0; i < generator_map.size(); ++i) {
            int pd = d - presentation.generators[i].degree;
            if (pd < 0) continue;
            for (const auto& v : span[pd]) {
                auto w = e0.multiply(generator_map[i], v);
                if (ech.add(w)) span[d].push_back(std::move(w));
            }
        }
        if (span[d].size() != e0.basis_of_degree(d).size()) {
            gen_ok = false;
            rep.detail += "images do not span degree " + std::to_string(d) + "; ";
        }
    }
    rep.generates = gen_ok;
    rep.dims_agree = e0.dims_by_degree() == presented.dims_by_degree();
    if (!rep.dims_agree) rep.detail += "graded dimensions differ; ";
    return rep;
}

std::vector<int> family_generator_elements(const GroupSpec& spec, const GroupTable& g) {
    switch (spec.family) {
    case GroupSpec::Family::Abelian:
        return g.generators;
    case GroupSpec::Family::C:
        return {g.generator("a"), g.generator("b"), g.generator("c")};
    case GroupSpec::Family::G:
        return {g.generator("f"), g.generator("g"), g.generator("h")};
    case GroupSpec::Family::Metacyclic: {
        int x = g.generator("x"), y = g.generator("y");
        if (spec.metacyclic_case() == 3) return {x, g.mul(y, g.pow(x, ipow(spec.p, spec.m - spec.n) - 1))};
        return {x, y};
    }
    case GroupSpec::Family::Table:
        break;
    }
    throw std::invalid_argument("explicit tables have no family generators");
}

QuillenReport quillen_check_family(const GroupSpec& spec) {
    PrimeField f(spec.p);
    GroupTable g = build_group(spec, f);
    AssociatedGraded e0 = associated_graded_group_ring(g, f);
    AlgebraSpec pres = family_presentation(spec);
    AlgebraPtr presented = from_spec(pres);
    GroupAlgebra kg(g, f);
    std::vector<std::vector<Residue>> images;
    for (int x : family_generator_elements(spec, g)) {
        auto v = kg.element(x);
        v[g.identity] = f.sub(v[g.identity], 1);
        images.push_back(e0.leading_class(v));
    }
    return quillen_check(*e0.algebra, pres, *presented, images);
}

}  // namespace skz
