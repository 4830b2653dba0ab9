#include "skz/cobar.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <istream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace skz {

// ---------------------------------------------------------------- cochains

void Cochain::add(const PrimeField& f, const std::vector<std::uint32_t>& tuple, Residue c) {
    if (!c) return;
    auto [it, fresh] = terms.try_emplace(tuple, c);
    if (fresh) return;
    it->second = f.add(it->second, c);
    if (!it->second) terms.erase(it);
}

void Cochain::add(const PrimeField& f, const Cochain& o, Residue c) {
    if (o.is_zero() || !c) return;
    if (!is_zero() && (o.s != s || o.t != t)) throw std::invalid_argument("adding cochains of different bidegrees");
    if (is_zero()) {
        s = o.s;
        t = o.t;
    }
    for (const auto& [tu, v] : o.terms) add(f, tu, f.mul(c, v));
}

Cochain scaled(const PrimeField& f, const Cochain& c, Residue k) {
    Cochain out;
    out.s = c.s;
    out.t = c.t;
    if (!k) return out;
    for (const auto& [tu, v] : c.terms) out.terms.emplace(tu, f.mul(k, v));
    return out;
}

Cochain concat(const PrimeField& f, const Cochain& a, const Cochain& b) {
    Cochain out;
    out.s = a.s + b.s;
    out.t = a.t + b.t;
    for (const auto& [ta, va] : a.terms)
        for (const auto& [tb, vb] : b.terms) {
            std::vector<std::uint32_t> tu = ta;
            tu.insert(tu.end(), tb.begin(), tb.end());
            out.add(f, tu, f.mul(va, vb));
        }
    return out;
}

Cochain bar(const PrimeField& f, const Cochain& a) { return scaled(f, a, f.sign(a.s + a.t + 1)); }

namespace {

std::string dual_label(const GradedAlgebra& a, std::uint32_t i) {
    const std::string& l = a.label(i);
    return l.size() == 1 ? l + "*" : "(" + l + ")*";
}

}  // namespace

std::string format_cochain(const GradedAlgebra& a, const Cochain& c) {
    if (c.is_zero()) return "0";
    const PrimeField& f = a.field();
    std::string out;
    for (const auto& [tu, v] : c.terms) {
        int sv = f.to_signed(v);
        if (out.empty()) {
            if (sv < 0) out += "-";
        } else {
            out += sv < 0 ? " - " : " + ";
        }
        int mag = sv < 0 ? -sv : sv;
        if (mag != 1) out += std::to_string(mag);
        out += "[";
        for (std::size_t k = 0; k < tu.size(); ++k) {
            if (k) out += "|";
            out += dual_label(a, tu[k]);
        }
        out += "]";
    }
    return out;
}

std::vector<std::uint32_t> parse_tuple(const GradedAlgebra& a, const std::string& text) {
    std::string s;
    for (char ch : text)
        if (ch != '[' && ch != ']' && ch != ' ') s += ch;
    std::vector<std::uint32_t> out;
    std::size_t start = 0;
    while (start <= s.size()) {
        std::size_t bar_pos = s.find('|', start);
        std::string tok = s.substr(start, bar_pos == std::string::npos ? std::string::npos : bar_pos - start);
        if (!tok.empty() && tok.back() == '*') tok.pop_back();
        if (tok.size() >= 2 && tok.front() == '(' && tok.back() == ')') tok = tok.substr(1, tok.size() - 2);
        auto idx = a.index_of_label(tok);
        if (!idx || a.degree(*idx) <= 0)
            throw std::invalid_argument("unknown positive-degree basis label '" + tok + "' in '" + text + "'");
        out.push_back(*idx);
        if (bar_pos == std::string::npos) break;
        start = bar_pos + 1;
    }
    return out;
}

Cochain cochain_from_terms(const GradedAlgebra& a, const std::vector<std::pair<long long, std::string>>& terms) {
    Cochain c;
    const PrimeField& f = a.field();
    bool first = true;
    for (const auto& [coef, text] : terms) {
        auto tu = parse_tuple(a, text);
        int t = 0;
        for (auto i : tu) t += a.degree(i);
        if (first) {
            c.s = int(tu.size());
            c.t = t;
            first = false;
        } else if (c.s != int(tu.size()) || c.t != t) {
            throw std::invalid_argument("cochain terms of mixed bidegree");
        }
        c.add(f, tu, f.from_int(coef));
    }
    return c;
}

// ---------------------------------------------------------------- complex

CobarComplex::CobarComplex(AlgebraPtr a) : a_(std::move(a)) {
    const auto& A = *a_;
    const PrimeField& f = A.field();
    std::vector<std::uint32_t> pos;
    for (std::uint32_t i = 0; i < A.dim(); ++i)
        if (A.degree(i) > 0) pos.push_back(i);
    std::stable_sort(pos.begin(), pos.end(), [&](std::uint32_t x, std::uint32_t y) { return A.degree(x) > A.degree(y); });
    order_ = pos;
    internal_.assign(A.dim(), -1);
    for (std::size_t k = 0; k < order_.size(); ++k) {
        internal_[order_[k]] = std::int32_t(k);
        ideg_.push_back(A.degree(order_[k]));
    }
    min_deg_ = ideg_.empty() ? 0 : ideg_.back();
    splits_.resize(order_.size());
    for (std::uint32_t i : pos)
        for (std::uint32_t j : pos) {
            if (A.degree(i) + A.degree(j) > A.max_degree()) continue;
            Residue sg = f.sign(static_cast<long long>(A.degree(i)) * A.degree(j));
            for (const Term& tm : A.product(i, j)) {
                std::int32_t k = internal_[tm.index];
                if (k < 0) throw std::logic_error("product of positive-degree elements has a unit component");
                splits_[k].push_back({std::uint32_t(internal_[i]), std::uint32_t(internal_[j]), f.mul(sg, tm.coef)});
            }
        }
    for (auto& v : splits_)
        std::sort(v.begin(), v.end(), [](const Split& x, const Split& y) {
            return std::tie(x.left, x.right) < std::tie(y.left, y.right);
        });
    bits_ = 1;
    while (bits_ < 32 && (std::size_t(1) << bits_) < order_.size() + 1) ++bits_;
}

Cochain CobarComplex::delta(const Cochain& c) const {
    const PrimeField& f = field();
    Cochain out;
    out.s = c.s + 1;
    out.t = c.t;
    for (const auto& [tu, v] : c.terms) {
        long long prefix = 0;
        for (std::size_t r = 0; r < tu.size(); ++r) {
            std::int32_t k = internal_[tu[r]];
            if (k < 0) throw std::invalid_argument("cochain entry of degree zero");
            for (const Split& sp : splits_[k]) {
                long long e = 1 + static_cast<long long>(r + 1) + prefix + ideg_[sp.left];
                std::vector<std::uint32_t> nt;
                nt.reserve(tu.size() + 1);
                nt.insert(nt.end(), tu.begin(), tu.begin() + r);
                nt.push_back(order_[sp.left]);
                nt.push_back(order_[sp.right]);
                nt.insert(nt.end(), tu.begin() + r + 1, tu.end());
                out.add(f, nt, f.mul(f.mul(v, sp.coef), f.sign(e)));
            }
            prefix += a_->degree(tu[r]);
        }
    }
    return out;
}

// ---------------------------------------------------------------- ring

namespace {

std::size_t count_tuples(const CobarComplex& cx, int s, int t, std::size_t cap) {
    // N[s'][t'] with saturation at cap+1
    std::map<int, std::size_t> by_deg;
    for (std::size_t k = 0; k < cx.idim(); ++k) ++by_deg[cx.ideg(std::uint32_t(k))];
    std::vector<std::size_t> cur(t + 1, 0), nxt(t + 1, 0);
    cur[0] = 1;
    for (int i = 0; i < s; ++i) {
        std::fill(nxt.begin(), nxt.end(), 0);
        for (int u = 0; u <= t; ++u) {
            if (!cur[u]) continue;
            for (auto [d, n] : by_deg) {
                if (u + d > t) break;
                std::size_t add = cur[u] * n;
                nxt[u + d] = std::min(cap + 1, nxt[u + d] + add);
            }
        }
        std::swap(cur, nxt);
    }
    return cur[t];
}

}  // namespace

std::uint64_t CohomologyRing::key_of(const std::vector<std::uint32_t>& tu) const {
    std::uint64_t k = 0;
    for (auto e : tu) k = (k << cx_.key_bits()) | e;
    return k;
}

std::vector<std::uint32_t> CohomologyRing::tuple_of(std::uint64_t key, int s) const {
    std::vector<std::uint32_t> tu(s);
    const std::uint64_t mask = (std::uint64_t(1) << cx_.key_bits()) - 1;
    for (int r = s - 1; r >= 0; --r) {
        tu[r] = std::uint32_t(key & mask);
        key >>= cx_.key_bits();
    }
    return tu;
}

void CohomologyRing::build_keys(int s, int t) {
    Level& L = strata_[t][s];
    if (L.keys_ready) return;
    L.keys_ready = true;
    if (count_tuples(cx_, s, t, opt_.size_cap) > opt_.size_cap) {
        L.over_cap = true;
        return;
    }
    const std::size_t n = cx_.idim();
    const int dmin = cx_.min_degree();
    const int dmax = n ? cx_.ideg(0) : 0;
    std::vector<std::uint32_t> tu(s);
    const unsigned bits = cx_.key_bits();
    auto rec = [&](auto&& self, int r, int rem, std::uint64_t key) -> void {
        if (r == s) {
            if (rem == 0) L.keys.push_back(key);
            return;
        }
        const int left = s - r - 1;
        for (std::uint32_t e = 0; e < n; ++e) {
            int d = cx_.ideg(e);
            int after = rem - d;
            if (after < left * dmin) continue;
            if (after > left * dmax) break;  // degrees only decrease with e
            self(self, r + 1, after, (key << bits) | e);
        }
    };
    if (s > 0) rec(rec, 0, t, 0);
}

SparseVec CohomologyRing::delta_column(int s, int t, std::uint64_t key) const {
    const PrimeField& f = cx_.field();
    const auto& target = strata_[t][s + 1].keys;
    auto tu = tuple_of(key, s);
    std::vector<std::pair<std::uint32_t, Residue>> terms;
    const unsigned bits = cx_.key_bits();
    long long prefix = 0;
    for (int r = 0; r < s; ++r) {
        std::uint64_t pre = 0, suf = 0;
        for (int q = 0; q < r; ++q) pre = (pre << bits) | tu[q];
        int suf_len = s - r - 1;
        for (int q = r + 1; q < s; ++q) suf = (suf << bits) | tu[q];
        for (const auto& sp : cx_.splits(tu[r])) {
            std::uint64_t k = (((pre << bits) | sp.left) << bits) | sp.right;
            k = (k << (bits * suf_len)) | suf;
            auto it = std::lower_bound(target.begin(), target.end(), k);
            if (it == target.end() || *it != k) throw std::logic_error("differential leaves its stratum");
            long long e = 1 + (r + 1) + prefix + cx_.ideg(sp.left);
            terms.emplace_back(std::uint32_t(it - target.begin()), f.mul(sp.coef, f.sign(e)));
        }
        prefix += cx_.ideg(tu[r]);
    }
    return make_sparse(f, std::move(terms));
}

bool CohomologyRing::want_reps(int s, int t) const {
    int rs = opt_.rep_s_max < 0 ? opt_.s_max : opt_.rep_s_max;
    if (s > rs) return false;
    auto it = opt_.rep_t_max.find(s);
    int tm = it == opt_.rep_t_max.end() ? opt_.t_max : it->second;
    return t <= tm;
}

void CohomologyRing::compute_stratum(int t) {
    const PrimeField& f = cx_.field();
    auto& lv = strata_[t];
    for (int s = 1; s <= opt_.s_max; ++s) {
        build_keys(s, t);
        build_keys(s + 1, t);
        Level& L = lv[s];
        Level& N = lv[s + 1];
        if (L.over_cap || N.over_cap) {
            for (int q = s; q <= opt_.s_max; ++q) lv[q].over_cap = true;
            break;
        }
        const SparseEchelon* B = s >= 2 ? lv[s - 1].image.get() : nullptr;
        const bool reps = want_reps(s, t);
        const bool track = reps || s <= opt_.solve_s_max;
        L.image = std::make_unique<SparseEchelon>(f, N.keys.size());
        L.tracked = track;
        std::vector<SparseVec> cocycles;
        std::vector<std::pair<std::uint32_t, Residue>> combo;
        auto combine = [&](std::uint32_t j) {
            std::vector<std::pair<std::uint32_t, Residue>> terms{{j, 1}};
            for (auto [id, c] : combo) {
                const SparseVec& v = L.preimage[id];
                Residue nc = f.neg(c);
                for (std::size_t q = 0; q < v.size(); ++q) terms.emplace_back(v.idx[q], f.mul(nc, v.val[q]));
            }
            return make_sparse(f, std::move(terms));
        };
        for (std::size_t j = 0; j < L.keys.size(); ++j) {
            if (B && B->pivot_owner(std::uint32_t(j)) >= 0) continue;
            SparseVec col = delta_column(s, t, L.keys[j]);
            combo.clear();
            SparseVec r = L.image->reduce(col, track ? &combo : nullptr);
            if (!r.empty()) {
                Residue sc = 1;
                L.image->insert(std::move(r), &sc);
                if (track) {
                    SparseVec v = combine(std::uint32_t(j));
                    scale(f, v, sc);
                    L.preimage.push_back(std::move(v));
                }
                ++L.rank;
            } else {
                ++L.h;
                if (reps) cocycles.push_back(combine(std::uint32_t(j)));
            }
        }
        L.reduced = true;
        if (reps) {
            L.reps = std::make_unique<SparseEchelon>(f, L.keys.size());
            for (const auto& v : cocycles) L.reps->insert(L.reps->reduce_fully(v, B));
        }
        if (opt_.progress)
            std::fprintf(stderr, "[cobar] t=%d s=%d dim=%zu rank=%zu h=%zu\n", t, s, L.keys.size(), L.rank, L.h);
    }
}

std::shared_ptr<CohomologyRing> CohomologyRing::compute(AlgebraPtr a, const CohomologyOptions& opt) {
    if (opt.s_max < 1 || opt.t_max < 1) throw std::invalid_argument("cohomology bounds must be positive");
    std::shared_ptr<CohomologyRing> ring(new CohomologyRing(std::move(a), opt));
    if (ring->cx_.key_bits() * unsigned(opt.s_max + 1) > 64)
        throw std::invalid_argument("s_max too large for tuple key packing");
    ring->strata_.resize(opt.t_max + 1);
    for (auto& lv : ring->strata_) lv.resize(opt.s_max + 2);
    const int nthreads = std::max(1, opt.threads);
    std::atomic<int> next{opt.t_max};
    std::exception_ptr err;
    std::mutex err_mu;
    auto worker = [&]() {
        while (true) {
            int t = next.fetch_sub(1);
            if (t < 1) return;
            try {
                ring->compute_stratum(t);
            } catch (...) {
                std::lock_guard<std::mutex> g(err_mu);
                if (!err) err = std::current_exception();
                next = 0;
            }
        }
    };
    if (nthreads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < nthreads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (err) std::rethrow_exception(err);
    return ring;
}

const CohomologyRing::Level* CohomologyRing::level(int s, int t) const {
    if (t < 0 || t > opt_.t_max || s < 0 || s > opt_.s_max + 1) return nullptr;
    return &strata_[t][s];
}

std::size_t CohomologyRing::cochain_dim(int s, int t) const {
    const Level* L = level(s, t);
    if (!L || !L->keys_ready || L->over_cap) throw std::out_of_range("cochain group outside the computed range");
    return L->keys.size();
}

std::optional<std::size_t> CohomologyRing::dim(int s, int t) const {
    if (s == 0) return t == 0 ? 1 : 0;
    if (t == 0) return 0;
    const Level* L = level(s, t);
    if (!L || s > opt_.s_max || !L->reduced) return std::nullopt;
    return L->h;
}

std::size_t CohomologyRing::dim_or_throw(int s, int t) const {
    auto d = dim(s, t);
    if (!d)
        throw std::out_of_range("H^{" + std::to_string(s) + "," + std::to_string(t) + "} is outside the computed range");
    return *d;
}

bool CohomologyRing::has_reps(int s, int t) const {
    if (t == 0 || s == 0) return true;
    const Level* L = level(s, t);
    return L && L->reduced && L->reps;
}

bool CohomologyRing::has_boundaries(int s, int t) const {
    if (s <= 1) return level(s, t) != nullptr;
    const Level* P = level(s - 1, t);
    return P && P->reduced && level(s, t)->keys_ready && !level(s, t)->over_cap;
}

bool CohomologyRing::has_solver(int s, int t) const {
    const Level* L = level(s, t);
    return L && L->reduced && L->tracked;
}

std::optional<SparseVec> CohomologyRing::to_sparse(const Cochain& c) const {
    const Level* L = level(c.s, c.t);
    if (!L || !L->keys_ready || L->over_cap) return std::nullopt;
    std::vector<std::pair<std::uint32_t, Residue>> terms;
    std::vector<std::uint32_t> in(c.s);
    for (const auto& [tu, v] : c.terms) {
        if (int(tu.size()) != c.s) throw std::invalid_argument("cochain tuple length differs from s");
        int deg = 0;
        for (int r = 0; r < c.s; ++r) {
            std::int32_t k = cx_.internal_of(tu[r]);
            if (k < 0) throw std::invalid_argument("cochain entry of degree zero");
            in[r] = std::uint32_t(k);
            deg += cx_.ideg(in[r]);
        }
        if (deg != c.t) throw std::invalid_argument("cochain term has the wrong internal degree");
        std::uint64_t key = key_of(in);
        auto it = std::lower_bound(L->keys.begin(), L->keys.end(), key);
        if (it == L->keys.end() || *it != key) throw std::logic_error("tuple missing from stratum");
        terms.emplace_back(std::uint32_t(it - L->keys.begin()), v);
    }
    return make_sparse(field(), std::move(terms));
}

Cochain CohomologyRing::from_sparse(int s, int t, const SparseVec& v) const {
    const Level* L = level(s, t);
    Cochain c;
    c.s = s;
    c.t = t;
    for (std::size_t k = 0; k < v.size(); ++k) {
        auto in = tuple_of(L->keys[v.idx[k]], s);
        std::vector<std::uint32_t> tu(s);
        for (int r = 0; r < s; ++r) tu[r] = cx_.basis_of(in[r]);
        c.terms.emplace(std::move(tu), v.val[k]);
    }
    return c;
}

Cochain CohomologyRing::rep(int s, int t, std::size_t i) const {
    if (!has_reps(s, t)) throw std::out_of_range("no representatives stored at this bidegree");
    const Level* L = level(s, t);
    return from_sparse(s, t, L->reps->vec(i));
}

std::vector<Cochain> CohomologyRing::reps(int s, int t) const {
    std::vector<Cochain> out;
    std::size_t d = dim_or_throw(s, t);
    for (std::size_t i = 0; i < d; ++i) out.push_back(rep(s, t, i));
    return out;
}

Cochain CohomologyRing::cochain(const CohomClass& c) const {
    Cochain out;
    out.s = c.s;
    out.t = c.t;
    for (std::size_t i = 0; i < c.coords.size(); ++i)
        if (c.coords[i]) out.add(field(), rep(c.s, c.t, i), c.coords[i]);
    out.s = c.s;
    out.t = c.t;
    return out;
}

CohomClass CohomologyRing::basis_class(int s, int t, std::size_t i) const {
    CohomClass c = zero_class(s, t);
    c.coords.at(i) = 1;
    return c;
}

CohomClass CohomologyRing::zero_class(int s, int t) const {
    CohomClass c;
    c.s = s;
    c.t = t;
    c.coords.assign(dim_or_throw(s, t), 0);
    return c;
}

bool CohomologyRing::is_cocycle(const Cochain& c) const { return cx_.delta(c).is_zero(); }

bool CohomologyRing::is_coboundary(const Cochain& c) const {
    if (c.is_zero()) return true;
    if (c.s <= 1) return false;
    if (!has_boundaries(c.s, c.t)) throw std::out_of_range("coboundaries not available at this bidegree");
    auto v = to_sparse(c);
    return level(c.s - 1, c.t)->image->reduce(*v).empty();
}

CohomClass CohomologyRing::classify(const Cochain& c) const {
    CohomClass out = zero_class(c.s, c.t);
    if (c.is_zero()) return out;
    if (!has_reps(c.s, c.t)) throw std::out_of_range("no representatives stored at this bidegree");
    const Level* L = level(c.s, c.t);
    const SparseEchelon* B = c.s >= 2 ? level(c.s - 1, c.t)->image.get() : nullptr;
    std::vector<std::pair<std::uint32_t, Residue>> combo;
    SparseVec r = L->reps->reduce(*to_sparse(c), &combo, B, nullptr);
    if (!r.empty()) throw std::invalid_argument("cochain is not a cocycle");
    for (auto [id, v] : combo) out.coords[id] = field().add(out.coords[id], v);
    return out;
}

std::optional<Cochain> CohomologyRing::solve_delta(const Cochain& w) const {
    const int s = w.s - 1;
    if (w.is_zero()) {
        Cochain z;
        z.s = s;
        z.t = w.t;
        return z;
    }
    if (s < 1) return std::nullopt;
    if (!has_solver(s, w.t)) throw std::out_of_range("no preimage data for δ at this bidegree");
    const Level* L = level(s, w.t);
    std::vector<std::pair<std::uint32_t, Residue>> combo;
    SparseVec r = L->image->reduce(*to_sparse(w), &combo);
    if (!r.empty()) return std::nullopt;
    std::vector<std::pair<std::uint32_t, Residue>> terms;
    for (auto [id, c] : combo) {
        const SparseVec& v = L->preimage[id];
        for (std::size_t q = 0; q < v.size(); ++q) terms.emplace_back(v.idx[q], field().mul(c, v.val[q]));
    }
    return from_sparse(s, w.t, make_sparse(field(), std::move(terms)));
}

CohomClass CohomologyRing::cup(const CohomClass& x, const CohomClass& y) const {
    const int s = x.s + y.s, t = x.t + y.t;
    if (!dim(s, t)) throw std::out_of_range("product bidegree outside the computed range");
    if (x.is_zero() || y.is_zero()) return zero_class(s, t);
    return classify(concat(field(), cochain(x), cochain(y)));
}

CohomClass CohomologyRing::add(const CohomClass& x, const CohomClass& y, Residue c) const {
    if (x.s != y.s || x.t != y.t) throw std::invalid_argument("adding classes of different bidegrees");
    CohomClass out = x;
    for (std::size_t i = 0; i < out.coords.size(); ++i) out.coords[i] = field().add(out.coords[i], field().mul(c, y.coords[i]));
    return out;
}

std::size_t CohomologyRing::rank_mod_boundaries(const std::vector<Cochain>& v) const {
    if (v.empty()) return 0;
    int s = -1, t = -1;
    for (const auto& c : v)
        if (!c.is_zero()) {
            s = c.s;
            t = c.t;
            break;
        }
    if (s < 0) return 0;
    if (!has_boundaries(s, t)) throw std::out_of_range("coboundaries not available at this bidegree");
    const SparseEchelon* B = s >= 2 ? level(s - 1, t)->image.get() : nullptr;
    SparseEchelon E(field(), cochain_dim(s, t));
    for (const auto& c : v) {
        if (c.is_zero()) continue;
        if (c.s != s || c.t != t) throw std::invalid_argument("mixed bidegrees");
        SparseVec r = E.reduce(*to_sparse(c), nullptr, B);
        if (!r.empty()) E.insert(std::move(r));
    }
    return E.size();
}

std::vector<std::vector<Residue>> CohomologyRing::relations_mod_boundaries(const std::vector<Cochain>& v) const {
    const PrimeField& f = field();
    const std::size_t m = v.size();
    std::vector<std::vector<Residue>> rel;
    int s = -1, t = -1;
    for (const auto& c : v)
        if (!c.is_zero()) {
            s = c.s;
            t = c.t;
            break;
        }
    if (s < 0) {
        for (std::size_t i = 0; i < m; ++i) {
            std::vector<Residue> e(m, 0);
            e[i] = 1;
            rel.push_back(e);
        }
        return rel;
    }
    if (!has_boundaries(s, t)) throw std::out_of_range("coboundaries not available at this bidegree");
    const SparseEchelon* B = s >= 2 ? level(s - 1, t)->image.get() : nullptr;
    SparseEchelon E(f, cochain_dim(s, t));
    std::vector<std::vector<Residue>> expr;
    std::vector<std::pair<std::uint32_t, Residue>> combo;
    for (std::size_t i = 0; i < m; ++i) {
        std::vector<Residue> e(m, 0);
        e[i] = 1;
        if (v[i].is_zero()) {
            rel.push_back(e);
            continue;
        }
        combo.clear();
        SparseVec r = E.reduce(*to_sparse(v[i]), &combo, B);
        for (auto [id, c] : combo)
            for (std::size_t q = 0; q < m; ++q) e[q] = f.sub(e[q], f.mul(c, expr[id][q]));
        if (r.empty()) {
            rel.push_back(e);
        } else {
            Residue sc = 1;
            E.insert(std::move(r), &sc);
            for (auto& x : e) x = f.mul(x, sc);
            expr.push_back(std::move(e));
        }
    }
    return Subspace::span(f, m, rel).basis_vectors();
}

std::map<std::pair<int, int>, CohomologyRing::Indecomposable> CohomologyRing::indecomposables() const {
    std::map<std::pair<int, int>, Indecomposable> out;
    for (int s = 1; s <= opt_.s_max; ++s)
        for (int t = 1; t <= opt_.t_max; ++t) {
            auto h = dim(s, t);
            if (!h || *h == 0) continue;
            Indecomposable ind;
            std::vector<Cochain> prods;
            for (int s1 = 1; s1 < s; ++s1)
                for (int t1 = 1; t1 < t; ++t1) {
                    auto d1 = dim(s1, t1), d2 = dim(s - s1, t - t1);
                    if (!d1 || !d2) {
                        ind.exact = false;
                        continue;
                    }
                    if (*d1 == 0 || *d2 == 0) continue;
                    if (!has_reps(s1, t1) || !has_reps(s - s1, t - t1)) {
                        ind.exact = false;
                        continue;
                    }
                    for (std::size_t i = 0; i < *d1; ++i)
                        for (std::size_t j = 0; j < *d2; ++j)
                            prods.push_back(concat(field(), rep(s1, t1, i), rep(s - s1, t - t1, j)));
                }
            std::size_t r = has_boundaries(s, t) ? rank_mod_boundaries(prods) : 0;
            if (!has_boundaries(s, t)) ind.exact = false;
            ind.dim = *h - r;
            out[{s, t}] = ind;
        }
    return out;
}

bool CohomologyRing::partial() const { return !partial_bidegrees().empty(); }

std::vector<std::pair<int, int>> CohomologyRing::partial_bidegrees() const {
    std::vector<std::pair<int, int>> out;
    for (int t = 1; t <= opt_.t_max; ++t)
        for (int s = 1; s <= opt_.s_max; ++s)
            if (strata_[t][s].over_cap) out.emplace_back(s, t);
    return out;
}

// ---------------------------------------------------------------- persistence

namespace {

constexpr char kMagic[8] = {'S', 'K', 'Z', 'C', 'O', 'H', '\0', '\0'};
constexpr std::uint32_t kSchemaVersion = 1;

struct Hasher {
    std::uint64_t h = 1469598103934665603ULL;
    void byte(std::uint8_t b) {
        h ^= b;
        h *= 1099511628211ULL;
    }
    void u64(std::uint64_t v) {
        for (int i = 0; i < 8; ++i) byte(std::uint8_t(v >> (8 * i)));
    }
};

template <class T>
void put(std::ostream& o, T v) {
    o.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
T get(std::istream& in) {
    T v{};
    in.read(reinterpret_cast<char*>(&v), sizeof(T));
    if (!in) throw std::runtime_error("truncated cohomology cache");
    return v;
}

void put_vec(std::ostream& o, const SparseVec& v) {
    put<std::uint32_t>(o, std::uint32_t(v.size()));
    o.write(reinterpret_cast<const char*>(v.idx.data()), std::streamsize(v.size() * sizeof(std::uint32_t)));
    o.write(reinterpret_cast<const char*>(v.val.data()), std::streamsize(v.size()));
}

SparseVec get_vec(std::istream& in) {
    SparseVec v;
    auto n = get<std::uint32_t>(in);
    v.idx.resize(n);
    v.val.resize(n);
    in.read(reinterpret_cast<char*>(v.idx.data()), std::streamsize(n * sizeof(std::uint32_t)));
    in.read(reinterpret_cast<char*>(v.val.data()), std::streamsize(n));
    if (!in) throw std::runtime_error("truncated cohomology cache");
    return v;
}

}  // namespace

std::uint64_t CohomologyRing::content_hash(const GradedAlgebra& a, const CohomologyOptions& opt) {
    Hasher h;
    h.u64(kSchemaVersion);
    h.u64(a.field().p());
    h.u64(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) h.u64(std::uint64_t(a.degree(i)));
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j) {
            const auto& pr = a.product(i, j);
            h.u64(pr.size());
            for (const Term& tm : pr) {
                h.u64(tm.index);
                h.byte(tm.coef);
            }
        }
    h.u64(std::uint64_t(opt.s_max));
    h.u64(std::uint64_t(opt.t_max));
    h.u64(std::uint64_t(std::int64_t(opt.rep_s_max)));
    for (auto [s, t] : opt.rep_t_max) {
        h.u64(std::uint64_t(s));
        h.u64(std::uint64_t(t));
    }
    h.u64(std::uint64_t(opt.solve_s_max));
    h.u64(opt.size_cap);
    return h.h;
}

void CohomologyRing::save(std::ostream& o) const {
    o.write(kMagic, sizeof kMagic);
    put<std::uint32_t>(o, kSchemaVersion);
    put<std::uint64_t>(o, content_hash(algebra(), opt_));
    put<std::int32_t>(o, opt_.s_max);
    put<std::int32_t>(o, opt_.t_max);
    put<std::int32_t>(o, opt_.rep_s_max);
    put<std::uint32_t>(o, std::uint32_t(opt_.rep_t_max.size()));
    for (auto [s, t] : opt_.rep_t_max) {
        put<std::int32_t>(o, s);
        put<std::int32_t>(o, t);
    }
    put<std::int32_t>(o, opt_.solve_s_max);
    put<std::uint64_t>(o, opt_.size_cap);
    for (int t = 1; t <= opt_.t_max; ++t)
        for (int s = 1; s <= opt_.s_max; ++s) {
            const Level& L = strata_[t][s];
            std::uint8_t flags = std::uint8_t((L.reduced ? 1 : 0) | (L.over_cap ? 2 : 0) | (L.tracked ? 4 : 0) |
                                              (L.reps ? 8 : 0));
            put(o, flags);
            if (!L.reduced) continue;
            put<std::uint64_t>(o, L.rank);
            put<std::uint64_t>(o, L.h);
            put<std::uint64_t>(o, L.image->size());
            for (std::size_t k = 0; k < L.image->size(); ++k) put_vec(o, L.image->vec(k));
            if (L.tracked)
                for (const auto& v : L.preimage) put_vec(o, v);
            if (L.reps) {
                put<std::uint64_t>(o, L.reps->size());
                for (std::size_t k = 0; k < L.reps->size(); ++k) put_vec(o, L.reps->vec(k));
            }
        }
    if (!o) throw std::runtime_error("failed writing cohomology cache");
}

std::shared_ptr<CohomologyRing> CohomologyRing::load(std::istream& in, AlgebraPtr a) {
    char magic[8];
    in.read(magic, sizeof magic);
    if (!in || !std::equal(magic, magic + 8, kMagic)) throw std::runtime_error("not a cohomology cache file");
    if (get<std::uint32_t>(in) != kSchemaVersion) throw std::runtime_error("cohomology cache schema mismatch");
    auto stored_hash = get<std::uint64_t>(in);
    CohomologyOptions opt;
    opt.s_max = get<std::int32_t>(in);
    opt.t_max = get<std::int32_t>(in);
    opt.rep_s_max = get<std::int32_t>(in);
    auto nrt = get<std::uint32_t>(in);
    for (std::uint32_t i = 0; i < nrt; ++i) {
        int s = get<std::int32_t>(in);
        opt.rep_t_max[s] = get<std::int32_t>(in);
    }
    opt.solve_s_max = get<std::int32_t>(in);
    opt.size_cap = get<std::uint64_t>(in);
    if (opt.s_max < 1 || opt.t_max < 1 || opt.s_max > 64 || opt.t_max > 100000)
        throw std::runtime_error("corrupt cohomology cache header");
    if (content_hash(*a, opt) != stored_hash) throw std::runtime_error("cohomology cache belongs to a different algebra");
    std::shared_ptr<CohomologyRing> ring(new CohomologyRing(std::move(a), opt));
    const PrimeField& f = ring->field();
    ring->strata_.resize(opt.t_max + 1);
    for (auto& lv : ring->strata_) lv.resize(opt.s_max + 2);
    for (int t = 1; t <= opt.t_max; ++t)
        for (int s = 1; s <= opt.s_max; ++s) {
            Level& L = ring->strata_[t][s];
            auto flags = get<std::uint8_t>(in);
            L.over_cap = flags & 2;
            if (!(flags & 1)) continue;
            ring->build_keys(s, t);
            ring->build_keys(s + 1, t);
            L.reduced = true;
            L.tracked = flags & 4;
            L.rank = get<std::uint64_t>(in);
            L.h = get<std::uint64_t>(in);
            auto n = get<std::uint64_t>(in);
            L.image = std::make_unique<SparseEchelon>(f, ring->strata_[t][s + 1].keys.size());
            for (std::uint64_t k = 0; k < n; ++k) L.image->insert(get_vec(in));
            if (L.tracked)
                for (std::uint64_t k = 0; k < n; ++k) L.preimage.push_back(get_vec(in));
            if (flags & 8) {
                auto nr = get<std::uint64_t>(in);
                L.reps = std::make_unique<SparseEchelon>(f, L.keys.size());
                for (std::uint64_t k = 0; k < nr; ++k) L.reps->insert(get_vec(in));
            }
        }
    return ring;
}

}  // namespace skz
