#include "skz/verify.hpp"

#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>

#include "skz/groups.hpp"
#include "skz/massey.hpp"
#include "skz/named.hpp"
#include "skz/specseq.hpp"

namespace skz {

namespace {

struct Out {
    std::vector<std::string> failures;
    std::vector<std::pair<std::string, std::string>> facts;
    void expect(bool ok, const std::string& what) {
        if (!ok) failures.push_back(what);
    }
    void fact(const std::string& k, const std::string& v) { facts.emplace_back(k, v); }
    void fact(const std::string& k, std::size_t v) { facts.emplace_back(k, std::to_string(v)); }
};

std::string pw(const std::string& x, int i) { return i == 1 ? x : x + "^" + std::to_string(i); }

std::vector<std::pair<long long, std::string>> power_pairs(const std::string& x, int n) {
    std::vector<std::pair<long long, std::string>> terms;
    for (int i = 1; i < n; ++i) terms.push_back({1, pw(x, i) + "|" + pw(x, n - i)});
    return terms;
}

std::string bideg(int s, int t) { return "(" + std::to_string(s) + "," + std::to_string(t) + ")"; }

class Env {
public:
    explicit Env(const VerifyOptions& o) : opt_(o), cache_(o.cache ? o.cache : &own_) {}

    AlgebraPtr alg(const std::string& key, const std::function<AlgebraPtr()>& make) {
        auto it = algs_.find(key);
        if (it != algs_.end()) return it->second;
        return algs_[key] = make();
    }
    AlgebraPtr family(const GroupSpec& g) {
        return alg("fam " + g.name() + " p" + std::to_string(g.p), [&] { return from_spec(family_presentation(g)); });
    }
    AlgebraPtr c3(unsigned p) { return family(GroupSpec::c_group(p, 3)); }
    AlgebraPtr g4(unsigned p) { return family(GroupSpec::g_group(p, 4, 1)); }
    AlgebraPtr trunc(unsigned p, int d, int n) {
        return alg("trunc " + std::to_string(p) + " " + std::to_string(d) + " " + std::to_string(n),
                   [&] { return truncated_polynomial(p, d, n); });
    }
    RingPtr ring(AlgebraPtr a, int s, int t, int solve = 2) {
        CohomologyOptions o;
        o.s_max = s;
        o.t_max = t;
        o.solve_s_max = solve;
        o.threads = opt_.threads;
        o.progress = opt_.progress;
        return cache_->get(std::move(a), o);
    }
    // Extension data is cached so that the base algebra object is shared.
    const ExtensionData& ext(const std::string& key, AlgebraPtr a, const std::string& zlabel) {
        auto it = exts_.find(key);
        if (it != exts_.end()) return it->second;
        auto i = a->index_of_label(zlabel);
        if (!i) throw std::logic_error("no basis element " + zlabel);
        return exts_.emplace(key, split_extension(a, a->basis_vector(*i))).first->second;
    }
    RingCache& cache() { return *cache_; }
    const VerifyOptions& options() const { return opt_; }

private:
    VerifyOptions opt_;
    RingCache own_;
    RingCache* cache_;
    std::map<std::string, AlgebraPtr> algs_;
    std::map<std::string, ExtensionData> exts_;
};

CohomClass named(Out& out, const std::vector<NamedClass>& v, const std::string& n) {
    auto c = find_named(v, n);
    if (!c) throw std::runtime_error("named class " + n + " not resolvable");
    out.fact("class " + n, bideg(c->cls.s, c->cls.t) + " " + c->how + " " + c->representative);
    return c->cls;
}

CohomClass lin(const CohomologyRing& h, const std::vector<std::pair<long long, CohomClass>>& terms) {
    const PrimeField& f = h.field();
    CohomClass r = h.zero_class(terms.front().second.s, terms.front().second.t);
    for (const auto& [c, x] : terms) r = h.add(r, x, f.from_int(c));
    return r;
}

// ---------------------------------------------------------------- AC1, AC2, AC13

void trunc_dims(Env& env, Out& out, unsigned p, int n) {
    const int d = p == 2 ? 1 : 2;
    const int N = int(ipow(p, n));
    const int T = 2 * N * d + d;
    auto h = env.ring(env.trunc(p, d, n), 4, T);
    auto expected = [&](int s, int t) -> std::size_t {
        if (p == 2 && n == 1) return t == s ? 1 : 0;  // F_2[z]
        std::size_t c = 0;
        for (int i = 0; i <= 1; ++i)
            if ((s - i) >= 0 && (s - i) % 2 == 0 && t == i * d + (s - i) / 2 * N * d) ++c;
        return c;
    };
    std::size_t checked = 0;
    for (int s = 1; s <= 4; ++s)
        for (int t = 0; t <= T; ++t) {
            auto got = h->dim_or_throw(s, t);
            ++checked;
            out.expect(got == expected(s, t), "F_" + std::to_string(p) + "[x]/(x^" + std::to_string(N) + ") dim H" +
                                                  bideg(s, t) + " = " + std::to_string(got) + ", expected " +
                                                  std::to_string(expected(s, t)));
        }
    out.fact("trunc p=" + std::to_string(p) + " n=" + std::to_string(n) + " bidegrees checked", checked);
}

void trunc_massey(Env& env, Out& out, unsigned p, int n) {
    const int N = int(ipow(p, n));
    auto a = env.trunc(p, 2, n);
    auto h = env.ring(a, 2, 2 * N);
    auto names = truncated_named(*h, "x", N);
    auto z = named(out, names, "z");
    auto e = named(out, names, "e");
    auto m = massey_symmetric(*h, z, N);
    std::string tag = "<z>^" + std::to_string(N) + " (p=" + std::to_string(p) + ")";
    out.expect(m.defined, tag + " defined");
    if (!m.defined) return;
    out.expect(m.coset.exact && m.coset.basis.empty(), tag + " has zero indeterminacy");
    out.expect(m.representative == cochain_from_terms(*a, power_pairs("x", N)), tag + " related cocycle is the sum of [y_r|y_{N-r}]");
    out.expect(!e.is_zero() && m.coset.value == e, tag + " = e");
    out.fact(tag, format_cochain(*a, m.representative));
}

void kunneth(Env& env, Out& out) {
    auto a = env.trunc(3, 2, 1);
    auto ab = env.alg("trunc3 tensor trunc3", [&] { return tensor_product(*a, *a); });
    const int S = 3, T = 24;
    auto h1 = env.ring(a, S, T);
    auto h2 = env.ring(ab, S, T);
    auto d1 = [&](int s, int t) -> std::size_t {
        if (s == 0) return t == 0 ? 1 : 0;
        return h1->dim_or_throw(s, t);
    };
    for (int s = 1; s <= S; ++s)
        for (int t = 0; t <= T; ++t) {
            std::size_t conv = 0;
            for (int i = 0; i <= s; ++i)
                for (int u = 0; u <= t; ++u) conv += d1(i, u) * d1(s - i, t - u);
            auto got = h2->dim_or_throw(s, t);
            out.expect(got == conv, "Kunneth at " + bideg(s, t) + ": " + std::to_string(got) + " vs " + std::to_string(conv));
        }
}

// ---------------------------------------------------------------- AC3, AC4

void quillen(Env&, Out& out) {
    for (const auto& g : {GroupSpec::abelian(3, {2}), GroupSpec::abelian(3, {1, 1}), GroupSpec::c_group(3, 3),
                          GroupSpec::c_group(3, 4), GroupSpec::g_group(3, 4, 1), GroupSpec::metacyclic(3, 2, 1, 2, 1)}) {
        auto r = quillen_check_family(g);
        out.expect(r.ok(), "Quillen check for " + g.name() + ": " + r.detail);
        out.fact("quillen " + g.name(), r.ok() ? "ok" : r.detail);
    }
}

void lcs_tables(Env&, Out& out) {
    PrimeField f3(3);
    auto c3 = build_group(GroupSpec::c_group(3, 3), f3);
    auto l3 = lower_central_series(c3, f3);
    out.expect(l3.graded_dims == std::map<int, int>{{2, 2}, {4, 1}}, "C(3) graded dims {2:2, 4:1}");
    bool nonzero = false;
    for (const auto& b : l3.bracket)
        if (b.r == 2 && b.s == 2 && b.i != b.j && b.degree == 4)
            for (auto v : b.value) nonzero |= v != 0;
    out.expect(nonzero, "C(3) bracket [a,b] = c is nonzero");
    auto c4 = build_group(GroupSpec::c_group(3, 4), f3);
    auto l4 = lower_central_series(c4, f3);
    out.expect(l4.graded_dims == std::map<int, int>{{2, 3}, {6, 1}}, "C(4) graded dims {2:3, 6:1}");
    for (auto [d, n] : l4.graded_dims) out.fact("C(4) dim in degree " + std::to_string(d), std::size_t(n));
}

// ---------------------------------------------------------------- AC5, AC6, AC7

void c3_dims(Env& env, Out& out) {
    auto h = env.ring(env.c3(3), 5, 24);
    out.expect(h->dim_or_throw(1, 2) == 2, "dim H^{1,2} = 2");
    out.expect(h->dim_or_throw(2, 6) == 4, "dim H^{2,6} = 4");
    out.expect(h->dim_or_throw(2, 12) == 1, "dim H^{2,12} = 1");
    std::size_t total = 0;
    for (int t = 0; t <= 24; ++t) total += h->dim_or_throw(2, t);
    out.expect(total == 5, "dim H^2 = 5 (t <= 24)");
    out.fact("dim H^2 (t<=24)", total);
    auto ind = h->indecomposables();
    std::map<std::pair<int, int>, std::size_t> low;
    for (const auto& [st, d] : ind)
        if (st.first <= 2 && d.dim) {
            low[st] = d.dim;
            out.expect(d.exact, "indecomposables exact at " + bideg(st.first, st.second));
        }
    std::map<std::pair<int, int>, std::size_t> expect{{{1, 2}, 2}, {{2, 6}, 4}, {{2, 12}, 1}};
    out.expect(low == expect, "generators: alpha, beta in (1,2); u, v, x1, x2 in (2,6); e in (2,12)");
}

void c3_massey(Env& env, Out& out, unsigned p) {
    auto h = env.ring(env.c3(p), 5, 24);
    auto names = named_classes(*h, Roles{});
    auto al = named(out, names, "alpha"), be = named(out, names, "beta");
    auto x1 = named(out, names, "x1"), x2 = named(out, names, "x2");
    const PrimeField& f = h->field();
    const long long half = f.inv(2);
    auto check = [&](const CohomClass& a, const CohomClass& b, const CohomClass& c, const char* label,
                     const CohomClass& target, long long k) {
        auto m = massey_triple(*h, a, b, c);
        std::string tag = std::string(label) + " (p=" + std::to_string(p) + ")";
        out.expect(m.defined, tag + " defined");
        if (!m.defined) return;
        out.expect(m.coset.exact && m.coset.basis.empty(), tag + " has zero indeterminacy");
        out.expect(lin(*h, {{k, m.coset.value}}) == target, tag + " matches");
    };
    check(al, al, be, "x1 = <alpha,alpha,beta>", x1, 1);
    check(al, be, al, "x1 = -1/2 <alpha,beta,alpha>", x1, f.neg(Residue(half)));
    check(be, al, al, "x1 = <beta,alpha,alpha>", x1, 1);
    check(al, be, be, "x2 = -<alpha,beta,beta>", x2, -1);
    check(be, al, be, "x2 = 1/2 <beta,alpha,beta>", x2, half);
    check(be, be, al, "x2 = -<beta,beta,alpha>", x2, -1);
}

void c3_relations(Env& env, Out& out, unsigned p) {
    auto h = env.ring(env.c3(p), 5, 24);
    auto names = named_classes(*h, Roles{});
    auto al = named(out, names, "alpha"), be = named(out, names, "beta");
    auto x1 = named(out, names, "x1"), x2 = named(out, names, "x2");
    auto u = named(out, names, "u"), v = named(out, names, "v");
    auto m = [&](const CohomClass& x, const CohomClass& y) { return h->cup(x, y); };
    auto neg = [&](const CohomClass& x) { return lin(*h, {{-1, x}}); };
    out.expect(m(al, al).is_zero() && m(al, be).is_zero() && m(be, be).is_zero(), "alpha^2 = alpha beta = beta^2 = 0");
    out.expect(m(al, x2) == neg(m(be, x1)), "alpha x2 = -beta x1");
    if (p == 3) {
        out.expect(m(al, x1) == m(be, u), "alpha x1 = beta u");
        out.expect(m(be, x2) == neg(m(al, v)), "beta x2 = -alpha v");
        out.expect(m(x1, x1) == neg(m(u, x2)), "x1^2 = -u x2");
        out.expect(m(x1, x2) == neg(m(u, v)), "x1 x2 = -u v");
        out.expect(m(x2, x2) == m(v, x1), "x2^2 = v x1");
        out.expect(!m(al, x1).is_zero() && !m(x1, x1).is_zero(), "p=3 products are nonzero");
    } else {
        out.expect(m(al, x1).is_zero() && m(be, x2).is_zero(), "alpha x1 = beta x2 = 0");
        out.expect(m(x1, x1).is_zero() && m(x1, x2).is_zero() && m(x2, x2).is_zero(), "x_i x_j = 0");
    }
}

// ---------------------------------------------------------------- AC8, AC9

void c3_d2(Env& env, Out& out) {
    const auto& ext = env.ext("C3 c", env.c3(3), "c");
    auto hb = env.ring(ext.base, 6, 24);
    auto mu = extension_class(ext, *hb);
    auto sigma = hb->classify(cochain_from_terms(*ext.base, {{1, "a"}}));
    auto tau = hb->classify(cochain_from_terms(*ext.base, {{1, "b"}}));
    auto st = hb->cup(sigma, tau);
    auto c = proportional(hb->field(), mu.mu, st);
    out.expect(!st.is_zero() && c.has_value(), "mu is a nonzero multiple of sigma tau");
    out.fact("mu cocycle", format_cochain(*ext.base, mu.cocycle));
    if (c) out.fact("mu / (sigma tau)", std::to_string(hb->field().to_signed(*c)));
}

void g4_d2(Env& env, Out& out, unsigned p) {
    const int zpow = int(p);
    const auto& ext = env.ext("G4 p" + std::to_string(p), env.g4(p), "g^" + std::to_string(zpow));
    auto hb = p == 3 ? env.ring(ext.base, 6, 24) : env.ring(ext.base, 2, 2 * int(p));
    auto mu = extension_class(ext, *hb);
    auto names = named_classes(*hb, Roles{"f", "g", "h", false});
    auto v = named(out, names, "v");
    auto expect_cocycle = power_pairs("g", zpow);
    CohomClass target = v;
    if (p == 3) {
        expect_cocycle.push_back({-1, "f|h"});
        expect_cocycle.push_back({-1, "f^2|g"});
        target = lin(*hb, {{1, v}, {-1, named(out, names, "x1")}});
    }
    out.expect(mu.cocycle == cochain_from_terms(*ext.base, expect_cocycle), "mu cocycle is the restricted coboundary of [(g^p)*]");
    auto c = proportional(hb->field(), mu.mu, target);
    out.expect(!target.is_zero() && c.has_value(), p == 3 ? "mu is a nonzero multiple of v - x1" : "mu is a nonzero multiple of v");
    out.fact("mu cocycle", format_cochain(*ext.base, mu.cocycle));
}

void collapse(Env& env, Out& out, bool g4) {
    AlgebraPtr a = g4 ? env.g4(3) : env.c3(3);
    const auto& ext = g4 ? env.ext("G4 p3", a, "g^3") : env.ext("C3 c", a, "c");
    auto hb = env.ring(ext.base, 6, 24);
    auto ha = env.ring(a, 5, 24);
    auto mu = extension_class(ext, *hb).mu;
    auto ss = e2_to_e3(*hb, *ha, ext, mu, 5, 24);
    out.expect(ss.collapse, "sum of E3 dims equals dim H^n(A) for n <= 5, internal degree <= 24");
    for (auto [n, u] : ss.mismatches) out.fact("mismatch", bideg(n, u));
    out.expect(ss.d2_squared_zero, "d2 squares to zero");
    out.expect(ss.euler_ok && !ss.euler_checked.empty(), "Euler characteristic preserved");
    bool le = true;
    for (const auto& [k, d] : ss.e3_dims) le &= d <= ss.e2_dims.at(k);
    out.expect(le, "E3 <= E2 bidegree-wise");
    for (int n = 0; n <= 5; ++n)
        out.fact("H^" + std::to_string(n) + " total (E3 / cobar)",
                 std::to_string(ss.e3_totals[n]) + " / " + std::to_string(ss.h_totals[n]));
    if (!g4) {
        out.expect(ss.e3_totals[2] == 5, "E3 total degree 2 has dimension 5");
    } else {
        auto q = quotient_poly_dims(*hb, mu, ext.deg_z, 5, 24);
        bool same = true;
        for (int s = 1; s <= 5; ++s)
            for (int t = 0; t <= 24; ++t) {
                auto it = q.find({s, t});
                std::size_t qd = it == q.end() ? 0 : it->second;
                if (qd != ha->dim_or_throw(s, t)) {
                    same = false;
                    out.fact("quotient mismatch", bideg(s, t));
                }
            }
        out.expect(same, "H*(A) dims equal H*(B)/(v - x1) (x) F_p[w] dims");
    }
}

// ---------------------------------------------------------------- AC10, AC11

void ann_abelian(Env& env, Out& out) {
    const auto& ext = env.ext("C3 c", env.c3(3), "c");
    auto hb = env.ring(ext.base, 6, 24);
    auto mu = extension_class(ext, *hb).mu;
    auto rep = annihilator_report(CohomologyView(hb), mu);
    out.expect(rep.verdict == AnnVerdict::DimOneGenerated, "Ann(sigma tau) generated in dimension one (" + to_string(rep.verdict) + ")");
    auto it = rep.ann.find({1, 2});
    out.expect(it != rep.ann.end() && it->second.size() == 2, "sigma and tau annihilate sigma tau");
}

void ann_zero(Env& env, Out& out, bool p5) {
    if (p5) {
        auto h = env.ring(env.c3(5), 5, 24);
        auto v = named(out, named_classes(*h, Roles{}), "v");
        auto rep = annihilator_report(CohomologyView(h), v);
        out.expect(rep.verdict == AnnVerdict::Zero, "Ann(v) = 0 in H*(VL C(3)), p = 5");
    } else {
        const auto& ext = env.ext("G4 p3", env.g4(3), "g^3");
        auto hb = env.ring(ext.base, 6, 24);
        auto mu = extension_class(ext, *hb).mu;
        auto rep = annihilator_report(CohomologyView(hb), mu);
        out.expect(rep.verdict == AnnVerdict::Zero, "Ann(v - x1) = 0 in H*(VL C(3)), p = 3");
        out.fact("checked up to", bideg(rep.s_max, rep.t_max));
    }
}

void ann_synthetic(Env& env, Out& out) {
    auto h = env.ring(env.g4(3), 5, 24);
    auto names = named_classes(*h, Roles{"f", "g", "h", true});
    auto x2 = named(out, names, "x2");
    auto mu = lin(*h, {{1, x2}, {1, named(out, names, "u")}});
    out.expect(h->cup(x2, mu).is_zero(), "x2 (x2 + u) = 0");
    auto rep = annihilator_report(CohomologyView(h), mu);
    out.expect(rep.verdict == AnnVerdict::Violating, "x2 + u violates the annihilator condition");
    std::vector<std::vector<Residue>> ideal;
    for (const auto& [st, b] : rep.ann)
        if (st.first == 1 && st.second <= 6)
            for (const auto& x : b)
                for (std::size_t i = 0; i < h->dim_or_throw(1, 6 - st.second); ++i)
                    ideal.push_back(h->cup(CohomClass{1, st.second, x}, h->basis_class(1, 6 - st.second, i)).coords);
    bool outside = ideal.empty() || !Subspace::span(h->field(), x2.coords.size(), ideal).contains(h->field(), x2.coords);
    out.expect(outside, "witness x2 lies outside the ideal generated by one-dimensional annihilators");
}

void sk_check(Out& out, const std::string& name, RingPtr h, int s_max, int t_max) {
    auto rep = semi_koszul_check(CohomologyView(h), s_max, t_max);
    out.expect(rep.complete, name + ": data complete up to " + bideg(s_max, t_max));
    out.expect(rep.verdict, name + " is semi-Koszul up to " + bideg(s_max, t_max));
    for (const auto& w : rep.witnesses) out.fact(name + " witness", bideg(w.s, w.t));
}

void sk_abelian(Env& env, Out& out) {
    sk_check(out, "F_3[x]/(x^3)", env.ring(env.trunc(3, 2, 1), 4, 24), 4, 24);
    sk_check(out, "VL Z/9", env.ring(env.family(GroupSpec::abelian(3, {2})), 4, 24), 4, 24);
    sk_check(out, "VL Z/3 x Z/3", env.ring(env.family(GroupSpec::abelian(3, {1, 1})), 4, 24), 4, 24);
}

void sk_synthetic(Env& env, Out& out) {
    auto h = env.ring(env.g4(3), 5, 24);
    auto names = named_classes(*h, Roles{"f", "g", "h", true});
    auto x2 = named(out, names, "x2");
    auto mu = lin(*h, {{1, x2}, {1, named(out, names, "u")}});
    E3Ring e3(h, mu, 6);
    auto rep = semi_koszul_check(e3, 4, 24);
    out.expect(!rep.verdict, "synthetic E3 ring is not semi-Koszul");
    out.expect(!rep.witnesses.empty() && rep.witnesses.front().s == 3, "first witness in homological degree 3");
    auto x2z = e3.zeta_multiple(x2);
    bool found = false;
    for (const auto& w : rep.witnesses)
        if (w.s == 3 && w.t == 12 && x2z) {
            Subspace gen = Subspace::span(h->field(), x2z->size(), w.generated);
            found = !gen.contains(h->field(), *x2z);
        }
    out.expect(found, "x2 (x) zeta is not generated in degrees 1 and 2");
    for (const auto& w : rep.witnesses) out.fact("witness", bideg(w.s, w.t));
}

void main_theorem(Env& env, Out& out) {
    MainTheoremBounds b;
    b.s_max = 5;
    b.t_max = 24;
    b.threads = env.options().threads;
    b.progress = env.options().progress;
    for (auto [a, z, name] : std::vector<std::tuple<AlgebraPtr, std::string, std::string>>{
             {env.c3(3), "c", "C(3)"}, {env.g4(3), "g^3", "G(4)"}}) {
        auto rep = main_theorem_report(a, a->basis_vector(*a->index_of_label(z)), b, &env.cache());
        out.expect(rep.conditions_hold, name + ": conditions hold");
        out.expect(rep.ss.collapse, name + ": collapse at E3");
        out.expect(rep.conclusion_verified, name + ": semi-Koszul verified directly");
        out.fact(name + " bockstein", to_string(rep.bockstein.verdict));
        out.fact(name + " annihilator", rep.mu.mu.is_zero() ? "mu = 0" : to_string(rep.annihilator.verdict));
        out.fact(name + " verdict", rep.verdict);
    }
}

// ---------------------------------------------------------------- AC12

void g4_cohomology(Env& env, Out& out) {
    auto h = env.ring(env.g4(3), 5, 24);
    auto names = named_classes(*h, Roles{"f", "g", "h", true});
    auto al = named(out, names, "alpha"), be = named(out, names, "beta");
    auto x1 = named(out, names, "x1"), x2 = named(out, names, "x2");
    auto u = named(out, names, "u"), e = named(out, names, "e"), w = named(out, names, "w");
    std::map<std::pair<int, int>, std::size_t> ind;
    for (const auto& [st, d] : h->indecomposables())
        if (d.dim) {
            ind[st] = d.dim;
            out.expect(d.exact, "indecomposables exact at " + bideg(st.first, st.second));
        }
    std::map<std::pair<int, int>, std::size_t> expect{{{1, 2}, 2}, {{2, 6}, 3}, {{2, 12}, 1}, {{2, 18}, 1}};
    out.expect(ind == expect, "generators alpha, beta (1,2); x1, x2, u (2,6); e (2,12); w (2,18) and none else");
    out.expect(h->rank_mod_boundaries({h->cochain(x1), h->cochain(x2), h->cochain(u)}) == 3, "x1, x2, u independent");
    out.expect(!e.is_zero() && !w.is_zero(), "e and w nonzero");
    auto m = [&](const CohomClass& x, const CohomClass& y) { return h->cup(x, y); };
    auto neg = [&](const CohomClass& x) { return lin(*h, {{-1, x}}); };
    out.expect(m(al, al).is_zero() && m(al, be).is_zero() && m(be, be).is_zero(), "alpha^2 = alpha beta = beta^2 = 0");
    out.expect(m(al, x2) == neg(m(be, x1)), "alpha x2 = -beta x1");
    out.expect(m(al, x1) == m(be, u), "alpha x1 = beta u");
    out.expect(m(be, x2) == neg(m(be, u)), "beta x2 = -beta u");
    out.expect(m(x1, x1) == neg(m(u, x2)), "x1^2 = -u x2");
    out.expect(m(x1, x2) == neg(m(u, x1)), "x1 x2 = -u x1");
    out.expect(m(x2, x2) == neg(m(u, x2)), "x2^2 = -u x2");
    auto mb = massey_symmetric(*h, be, 3);
    out.expect(mb.defined && mb.coset.exact && mb.coset.basis.empty() && mb.coset.value == x1, "<beta>^3 = x1");
}

void g4_cohomology_p5(Env& env, Out& out) {
    auto a = env.g4(5);
    auto h = env.ring(a, 4, 24);
    auto names = named_classes(*h, Roles{"f", "g", "h", false});
    auto al = named(out, names, "alpha"), be = named(out, names, "beta");
    auto x1 = named(out, names, "x1"), x2 = named(out, names, "x2");
    auto u = named(out, names, "u"), e = named(out, names, "e");
    std::map<std::pair<int, int>, std::size_t> ind;
    for (const auto& [st, d] : h->indecomposables())
        if (d.dim) ind[st] = d.dim;
    std::map<std::pair<int, int>, std::size_t> expect{{{1, 2}, 2}, {{2, 6}, 2}, {{2, 10}, 1}, {{2, 20}, 1}};
    out.expect(ind == expect, "generators alpha, beta (1,2); x1, x2 (2,6); u (2,10); e (2,20) up to (4,24)");
    out.expect(!u.is_zero() && !e.is_zero(), "u and e nonzero");
    auto m = [&](const CohomClass& x, const CohomClass& y) { return h->cup(x, y); };
    out.expect(m(al, al).is_zero() && m(al, be).is_zero() && m(be, be).is_zero(), "alpha^2 = alpha beta = beta^2 = 0");
    out.expect(m(al, x2) == lin(*h, {{-1, m(be, x1)}}), "alpha x2 = -beta x1");
    out.expect(m(al, x1).is_zero() && m(be, x2).is_zero(), "alpha x1 = beta x2 = 0");
    out.expect(m(x1, x1).is_zero() && m(x1, x2).is_zero() && m(x2, x2).is_zero(), "x_i x_j = 0");
    auto b5 = massey_symmetric(*h, be, 5);
    out.expect(b5.defined && b5.coset.contains(h->field(), h->zero_class(2, 10)), "<beta>^5 = 0");

    auto hw = env.ring(a, 2, 50);
    auto wn = named_classes(*hw, Roles{"f", "g", "h", true});
    auto w = named(out, wn, "w");
    auto bw = named(out, wn, "beta");
    out.expect(hw->dim_or_throw(2, 50) == 1, "dim H^{2,50} = 1");
    auto b25 = massey_symmetric(*hw, bw, 25);
    out.expect(b25.defined && b25.coset.exact && b25.coset.basis.empty(), "<beta>^25 defined with zero indeterminacy");
    out.expect(b25.defined && proportional(hw->field(), b25.coset.value, w).has_value(), "<beta>^25 = w (up to scalar)");
    if (b25.defined && proportional(hw->field(), b25.coset.value, w))
        out.fact("<beta>^25 / w", std::to_string(hw->field().to_signed(*proportional(hw->field(), b25.coset.value, w))));
}

// ---------------------------------------------------------------- AC14

void properties(Env& env, Out& out) {
    std::mt19937_64 rng(20240607);
    // rank-nullity
    PrimeField f3(3);
    for (int trial = 0; trial < 30; ++trial) {
        std::size_t r = 1 + rng() % 12, c = 1 + rng() % 12;
        FpMatrix m(r, c);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j) m.at(i, j) = Residue(rng() % 3);
        out.expect(rank(f3, m) + kernel(f3, m).dim() == c, "rank-nullity");
    }
    // δ² = 0 and Leibniz on random cochains
    for (auto a : {env.c3(3), env.g4(3)}) {
        auto h = env.ring(a, 5, 24);
        const auto& cx = h->complex();
        const PrimeField& f = h->field();
        auto random_cochain = [&](int s, int t) {
            SparseVec v;
            for (std::size_t i = 0; i < h->cochain_dim(s, t); ++i)
                if (rng() % 3 == 0) v.push(std::uint32_t(i), Residue(1 + rng() % (f.p() - 1)));
            return h->from_sparse(s, t, v);
        };
        for (int trial = 0; trial < 40; ++trial) {
            int s1 = 1 + int(rng() % 2), s2 = 1 + int(rng() % 2);
            int t1 = 2 * s1 + 2 * int(rng() % 3), t2 = 2 * s2 + 2 * int(rng() % 3);
            auto x = random_cochain(s1, t1), y = random_cochain(s2, t2);
            out.expect(cx.delta(cx.delta(x)).is_zero(), "delta^2 = 0");
            auto lhs = cx.delta(concat(f, x, y));
            auto rhs = concat(f, cx.delta(x), y);
            rhs.add(f, concat(f, x, cx.delta(y)), f.sign(s1 + t1));
            rhs.s = lhs.s;
            rhs.t = lhs.t;
            out.expect(lhs == rhs, "Leibniz rule");
        }
    }
    // juggling and coset stability on C(3)
    auto h = env.ring(env.c3(3), 5, 24);
    auto names = named_classes(*h, Roles{});
    auto al = find_named(names, "alpha")->cls, be = find_named(names, "beta")->cls;
    const PrimeField& f = h->field();
    auto pick = [&] {
        long long x = rng() % 3, y = rng() % 3;
        if (!x && !y) x = 1;
        return lin(*h, {{x, al}, {y, be}});
    };
    auto bar_class = [&](const CohomClass& c) { return (c.s + c.t) % 2 ? c : lin(*h, {{-1, c}}); };
    for (int trial = 0; trial < 20; ++trial) {
        auto u1 = pick(), u2 = pick(), u3 = pick(), u4 = pick();
        auto r = massey_triple(*h, u2, u3, u4);
        auto l = massey_triple(*h, bar_class(u1), bar_class(u2), bar_class(u3));
        out.expect(r.defined && l.defined, "juggling triples defined");
        if (r.defined && l.defined)
            out.expect(cosets_intersect(f, left_multiply(*h, u1, r.coset), right_multiply(*h, l.coset, u4)),
                       "juggling cosets intersect");
        auto base = massey_triple(*h, u1, u2, u3);
        if (!base.defined) continue;
        Shifts sh{random_cocycle(*h, 1, u1.t + u2.t, rng()), random_cocycle(*h, 1, u2.t + u3.t, rng())};
        auto alt = massey_triple(*h, u1, u2, u3, sh);
        out.expect(alt.defined && base.coset.contains(f, alt.coset.value), "defining-system coset stability");
    }
    // determinism across thread counts
    CohomologyOptions o1;
    o1.s_max = 4;
    o1.t_max = 16;
    o1.threads = 1;
    auto o4 = o1;
    o4.threads = 4;
    std::ostringstream b1, b4;
    CohomologyRing::compute(env.g4(3), o1)->save(b1);
    CohomologyRing::compute(env.g4(3), o4)->save(b4);
    out.expect(b1.str() == b4.str(), "identical results with 1 and 4 threads");
}

struct Item {
    VerifyItemInfo info;
    std::function<void(Env&, Out&)> run;
};

const std::vector<Item>& items() {
    static const std::vector<Item> v = {
        {{"trunc-dims", 1, false, "truncated polynomial cohomology dims, p = 2, 3"},
         [](Env& e, Out& o) {
             trunc_dims(e, o, 3, 1);
             trunc_dims(e, o, 3, 2);
             trunc_dims(e, o, 2, 2);
             trunc_dims(e, o, 2, 1);
         }},
        {{"trunc-dims-p5", 1, true, "truncated polynomial cohomology dims, p = 5"},
         [](Env& e, Out& o) { trunc_dims(e, o, 5, 1); }},
        {{"trunc-massey", 2, false, "<z>^{p^n} = e, p = 3"},
         [](Env& e, Out& o) {
             trunc_massey(e, o, 3, 1);
             trunc_massey(e, o, 3, 2);
         }},
        {{"trunc-massey-p5", 2, true, "<z>^5 = e, p = 5"}, [](Env& e, Out& o) { trunc_massey(e, o, 5, 1); }},
        {{"quillen", 3, false, "Quillen isomorphism checks"}, quillen},
        {{"lcs-tables", 4, false, "lower central series tables for C(3), C(4)"}, lcs_tables},
        {{"C3-dims", 5, false, "H*(VL C(3)) low dimensions"}, c3_dims},
        {{"C3-massey", 6, false, "Massey identities for x1, x2, p = 3"}, [](Env& e, Out& o) { c3_massey(e, o, 3); }},
        {{"C3-massey-p5", 6, true, "Massey identities for x1, x2, p = 5"}, [](Env& e, Out& o) { c3_massey(e, o, 5); }},
        {{"C3-relations", 7, false, "product relations in H*(VL C(3)), p = 3"},
         [](Env& e, Out& o) { c3_relations(e, o, 3); }},
        {{"C3-relations-p5", 7, true, "product relations in H*(VL C(3)), p = 5"},
         [](Env& e, Out& o) { c3_relations(e, o, 5); }},
        {{"C3-d2", 8, false, "extension class for C(3)"}, c3_d2},
        {{"G4-d2", 8, false, "extension class for G(4), p = 3"}, [](Env& e, Out& o) { g4_d2(e, o, 3); }},
        {{"G4-d2-p5", 8, true, "extension class for G(4), p = 5"}, [](Env& e, Out& o) { g4_d2(e, o, 5); }},
        {{"C3-collapse", 9, false, "E3 collapse for C(3)"}, [](Env& e, Out& o) { collapse(e, o, false); }},
        {{"G4-collapse", 9, false, "E3 collapse for G(4) and the quotient description"},
         [](Env& e, Out& o) { collapse(e, o, true); }},
        {{"ann-abelian", 10, false, "Ann(sigma tau) generated in dimension one"}, ann_abelian},
        {{"ann-G4", 10, false, "v - x1 is not a zero divisor, p = 3"}, [](Env& e, Out& o) { ann_zero(e, o, false); }},
        {{"ann-C3-p5", 10, true, "v is not a zero divisor, p = 5"}, [](Env& e, Out& o) { ann_zero(e, o, true); }},
        {{"ann-synthetic", 10, false, "x2 + u is a zero divisor with witness x2"}, ann_synthetic},
        {{"sk-abelian", 11, false, "abelian examples are semi-Koszul"}, sk_abelian},
        {{"sk-C3", 11, false, "VL C(3) is semi-Koszul, p = 3"},
         [](Env& e, Out& o) { sk_check(o, "VL C(3)", e.ring(e.c3(3), 5, 24), 4, 24); }},
        {{"sk-C4", 11, false, "VL C(4) is semi-Koszul, p = 3"},
         [](Env& e, Out& o) { sk_check(o, "VL C(4)", e.ring(e.family(GroupSpec::c_group(3, 4)), 4, 24), 4, 24); }},
        {{"sk-G4", 11, false, "VL G(4,1) is semi-Koszul, p = 3"},
         [](Env& e, Out& o) { sk_check(o, "VL G(4)", e.ring(e.g4(3), 5, 24), 4, 24); }},
        {{"sk-C3-p5", 11, true, "VL C(3) is semi-Koszul, p = 5"},
         [](Env& e, Out& o) { sk_check(o, "VL C(3) p=5", e.ring(e.c3(5), 5, 24), 4, 24); }},
        {{"sk-synthetic", 11, false, "synthetic E3 ring with d2(z) = x2 + u is not semi-Koszul"}, sk_synthetic},
        {{"main-theorem", 11, false, "extension theorem conditions and conclusion for C(3), G(4)"}, main_theorem},
        {{"G4-cohomology", 12, false, "H*(VL G(4)) generators, relations and <beta>^3, p = 3"}, g4_cohomology},
        {{"G4-cohomology-p5", 12, true, "H*(VL G(4)) generators, relations and Massey powers, p = 5"},
         g4_cohomology_p5},
        {{"kunneth", 13, false, "Kunneth formula for F_3[x]/(x^3) tensor itself"}, kunneth},
        {{"properties", 14, false, "randomized property suites"}, properties},
    };
    return v;
}

}  // namespace

const std::vector<VerifyItemInfo>& verify_items() {
    static const std::vector<VerifyItemInfo> v = [] {
        std::vector<VerifyItemInfo> out;
        for (const auto& i : items()) out.push_back(i.info);
        return out;
    }();
    return v;
}

std::vector<VerifyResult> run_verification(const VerifyOptions& opt) {
    for (const auto& id : opt.items) {
        bool known = false;
        for (const auto& i : items()) known |= i.info.id == id;
        if (!known) throw std::invalid_argument("unknown verification item '" + id + "'");
    }
    Env env(opt);
    std::vector<VerifyResult> results;
    for (const auto& it : items()) {
        if (!opt.items.empty()) {
            bool wanted = false;
            for (const auto& id : opt.items) wanted |= id == it.info.id;
            if (!wanted) continue;
        } else if (it.info.p5 && !opt.include_p5) {
            continue;
        }
        if (opt.progress) std::cerr << "[verify] " << it.info.id << "\n";
        Out out;
        try {
            it.run(env, out);
        } catch (const std::exception& e) {
            out.failures.push_back(std::string("exception: ") + e.what());
        }
        VerifyResult r;
        r.id = it.info.id;
        r.ac = it.info.ac;
        r.p5 = it.info.p5;
        r.pass = out.failures.empty();
        r.failures = std::move(out.failures);
        r.facts = std::move(out.facts);
        results.push_back(std::move(r));
    }
    return results;
}

}  // namespace skz
