#include "skz/algebra.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

namespace skz {

// ---------------------------------------------------------------- GradedAlgebra

GradedAlgebra::GradedAlgebra(PrimeField f, std::vector<int> degrees, std::vector<std::string> labels,
                             std::vector<std::vector<Term>> products, Meta meta)
    : f_(f), degrees_(std::move(degrees)), labels_(std::move(labels)), products_(std::move(products)),
      meta_(std::move(meta)) {
    if (degrees_.empty()) throw std::invalid_argument("algebra must contain the unit");
    if (labels_.size() != degrees_.size()) throw std::invalid_argument("label count mismatch");
    if (products_.size() != dim() * dim()) throw std::invalid_argument("structure table size mismatch");
    max_degree_ = *std::max_element(degrees_.begin(), degrees_.end());
    validate();
}

void GradedAlgebra::validate() const {
    const std::size_t n = dim();
    if (degrees_[0] != 0) throw std::invalid_argument("basis element 0 must be the unit in degree 0");
    for (std::size_t i = 1; i < n; ++i) {
        if (degrees_[i] <= 0)
            throw std::invalid_argument("algebra is not connected: basis element " + labels_[i] +
                                        " has degree " + std::to_string(degrees_[i]));
    }
    for (std::size_t i = 0; i < n; ++i) {
        const std::vector<Term> unit_term{{std::uint32_t(i), 1}};
        if (product(0, i) != unit_term || product(i, 0) != unit_term)
            throw std::invalid_argument("basis element 0 is not a two-sided unit");
        for (std::size_t j = 0; j < n; ++j) {
            for (const Term& t : product(i, j)) {
                if (t.index >= n || t.coef == 0 || t.coef >= f_.p())
                    throw std::invalid_argument("malformed structure constant");
                if (degrees_[t.index] != degrees_[i] + degrees_[j])
                    throw std::invalid_argument("product " + labels_[i] + "·" + labels_[j] +
                                                " is not homogeneous");
            }
        }
    }
    // Associativity over all basis triples whose degree sum can be nonzero.
    std::vector<unsigned> left(n, 0), right(n, 0);
    std::vector<std::uint32_t> touched;
    const unsigned p = f_.p();
    for (std::size_t i = 1; i < n; ++i) {
        for (std::size_t j = 1; j < n; ++j) {
            if (degrees_[i] + degrees_[j] > max_degree_) continue;
            const auto& ij = product(i, j);
            for (std::size_t k = 1; k < n; ++k) {
                if (degrees_[i] + degrees_[j] + degrees_[k] > max_degree_) continue;
                touched.clear();
                for (const Term& a : ij)
                    for (const Term& b : product(a.index, k)) {
                        left[b.index] = (left[b.index] + unsigned(a.coef) * b.coef) % p;
                        touched.push_back(b.index);
                    }
                for (const Term& a : product(j, k))
                    for (const Term& b : product(i, a.index)) {
                        right[b.index] = (right[b.index] + unsigned(a.coef) * b.coef) % p;
                        touched.push_back(b.index);
                    }
                bool ok = true;
                for (auto t : touched) {
                    if (left[t] != right[t]) ok = false;
                    left[t] = right[t] = 0;
                }
                if (!ok)
                    throw std::invalid_argument("associativity fails on (" + labels_[i] + ", " + labels_[j] +
                                                ", " + labels_[k] + ")");
            }
        }
    }
}

std::vector<std::uint32_t> GradedAlgebra::basis_of_degree(int d) const {
    std::vector<std::uint32_t> out;
    for (std::size_t i = 0; i < dim(); ++i)
        if (degrees_[i] == d) out.push_back(std::uint32_t(i));
    return out;
}

std::vector<std::size_t> GradedAlgebra::dims_by_degree() const {
    std::vector<std::size_t> d(max_degree_ + 1, 0);
    for (int deg : degrees_) ++d[deg];
    return d;
}

std::optional<std::uint32_t> GradedAlgebra::index_of_label(const std::string& label) const {
    for (std::size_t i = 0; i < dim(); ++i)
        if (labels_[i] == label) return std::uint32_t(i);
    return std::nullopt;
}

std::vector<Residue> GradedAlgebra::multiply(const std::vector<Residue>& a, const std::vector<Residue>& b) const {
    std::vector<unsigned> acc(dim(), 0);
    const unsigned p = f_.p();
    for (std::size_t i = 0; i < dim(); ++i) {
        if (!a[i]) continue;
        for (std::size_t j = 0; j < dim(); ++j) {
            if (!b[j]) continue;
            unsigned c = unsigned(a[i]) * b[j] % p;
            for (const Term& t : product(i, j)) acc[t.index] = (acc[t.index] + c * t.coef) % p;
        }
    }
    return {acc.begin(), acc.end()};
}

std::vector<Residue> GradedAlgebra::basis_vector(std::size_t i) const {
    std::vector<Residue> v(dim(), 0);
    v.at(i) = 1;
    return v;
}

Residue GradedAlgebra::coefficient(std::size_t i, std::size_t j, std::size_t k) const {
    for (const Term& t : product(i, j))
        if (t.index == k) return t.coef;
    return 0;
}

bool GradedAlgebra::is_commutative() const {
    for (std::size_t i = 0; i < dim(); ++i)
        for (std::size_t j = i + 1; j < dim(); ++j)
            if (product(i, j) != product(j, i)) return false;
    return true;
}

// ---------------------------------------------------------------- rewriting

namespace {

using Poly = std::map<Word, Residue>;

class RewriteSystem {
public:
    struct Rule {
        Word lhs;
        std::vector<std::pair<Residue, Word>> rhs;
    };

    RewriteSystem(const AlgebraSpec& spec) : f_(spec.p), cap_(spec.degree_cap) {
        for (const auto& g : spec.generators) {
            if (g.degree <= 0) throw std::invalid_argument("generator " + g.name + " must have positive degree");
            gen_deg_.push_back(g.degree);
            names_.push_back(g.name);
        }
        for (std::size_t r = 0; r < spec.relations.size(); ++r) add_relation(spec.relations[r], r);
    }

    int degree(const Word& w) const {
        int d = 0;
        for (auto x : w) d += gen_deg_[x];
        return d;
    }
    // Degree first, then lexicographic with earlier generators larger.
    bool greater(const Word& a, const Word& b) const {
        int da = degree(a), db = degree(b);
        if (da != db) return da > db;
        std::size_t n = std::min(a.size(), b.size());
        for (std::size_t i = 0; i < n; ++i)
            if (a[i] != b[i]) return a[i] < b[i];
        return a.size() > b.size();
    }
    bool beyond_cap(const Word& w) const { return cap_ && degree(w) > *cap_; }

    const std::vector<Rule>& rules() const { return rules_; }
    const PrimeField& field() const { return f_; }

    std::optional<std::pair<std::size_t, std::size_t>> find_redex(const Word& w) const {
        for (std::size_t pos = 0; pos < w.size(); ++pos)
            for (std::size_t r = 0; r < rules_.size(); ++r) {
                const Word& l = rules_[r].lhs;
                if (pos + l.size() <= w.size() && std::equal(l.begin(), l.end(), w.begin() + pos))
                    return std::make_pair(pos, r);
            }
        return std::nullopt;
    }

    bool irreducible(const Word& w) const { return !find_redex(w); }
    bool suffix_reducible(const Word& w) const {
        for (const auto& rule : rules_) {
            const Word& l = rule.lhs;
            if (l.size() <= w.size() && std::equal(l.begin(), l.end(), w.end() - l.size())) return true;
        }
        return false;
    }

    const Poly& normal_form(const Word& w) {
        auto it = memo_.find(w);
        if (it != memo_.end()) return it->second;
        if (++steps_ > 50'000'000) throw RewriteError("rewriting did not terminate");
        Poly out;
        if (!beyond_cap(w)) {
            auto redex = find_redex(w);
            if (!redex) {
                out[w] = 1;
            } else {
                out = apply_rule(w, redex->first, redex->second);
            }
        }
        return memo_.emplace(w, std::move(out)).first->second;
    }

    // Normal form of w after rewriting the occurrence of rule r at pos.
    Poly apply_rule(const Word& w, std::size_t pos, std::size_t r) {
        const Rule& rule = rules_[r];
        Poly out;
        for (const auto& [c, rw] : rule.rhs) {
            Word nw(w.begin(), w.begin() + pos);
            nw.insert(nw.end(), rw.begin(), rw.end());
            nw.insert(nw.end(), w.begin() + pos + rule.lhs.size(), w.end());
            Poly sub = normal_form(nw);
            for (const auto& [sw, sc] : sub) {
                Residue& acc = out[sw];
                acc = f_.add(acc, f_.mul(c, sc));
                if (!acc) out.erase(sw);
            }
        }
        return out;
    }

    std::string label(const Word& w) const { return word_label(names_, w); }

private:
    void add_relation(const std::vector<AlgebraSpec::Monomial>& rel, std::size_t idx) {
        Poly poly;
        std::optional<int> deg;
        for (const auto& m : rel) {
            for (auto x : m.word)
                if (x >= gen_deg_.size())
                    throw std::invalid_argument("relation " + std::to_string(idx) + " uses an unknown generator");
            Residue c = f_.from_int(m.coef);
            if (!c) continue;
            int d = degree(m.word);
            if (m.word.empty()) throw std::invalid_argument("relation " + std::to_string(idx) + " has a constant term");
            if (deg && *deg != d)
                throw std::invalid_argument("relation " + std::to_string(idx) + " is not homogeneous");
            deg = d;
            Residue& acc = poly[m.word];
            acc = f_.add(acc, c);
            if (!acc) poly.erase(m.word);
        }
        if (poly.empty()) return;
        const Word* lead = nullptr;
        for (const auto& [w, c] : poly)
            if (!lead || greater(w, *lead)) lead = &w;
        Rule rule;
        rule.lhs = *lead;
        Residue inv = f_.inv(poly.at(*lead));
        for (const auto& [w, c] : poly) {
            if (&w == lead) continue;
            rule.rhs.emplace_back(f_.neg(f_.mul(c, inv)), w);
        }
        rules_.push_back(std::move(rule));
    }

    PrimeField f_;
    std::optional<int> cap_;
    std::vector<int> gen_deg_;
    std::vector<std::string> names_;
    std::vector<Rule> rules_;
    std::map<Word, Poly> memo_;
    long long steps_ = 0;
};

Word concat(const Word& a, const Word& b) {
    Word w = a;
    w.insert(w.end(), b.begin(), b.end());
    return w;
}

void check_confluence(RewriteSystem& rs) {
    const auto& rules = rs.rules();
    auto fail = [&](const Word& w, const Poly& a, const Poly& b) {
        (void)a;
        (void)b;
        throw RewriteError("relations are not confluent: overlap ambiguity " + rs.label(w) +
                           " resolves to different normal forms");
    };
    for (std::size_t i = 0; i < rules.size(); ++i) {
        for (std::size_t j = 0; j < rules.size(); ++j) {
            const Word& l1 = rules[i].lhs;
            const Word& l2 = rules[j].lhs;
            // Overlaps: proper suffix of l1 equals proper prefix of l2.
            for (std::size_t k = 1; k < l1.size() && k < l2.size(); ++k) {
                if (!std::equal(l1.end() - k, l1.end(), l2.begin())) continue;
                Word w = concat(l1, Word(l2.begin() + k, l2.end()));
                if (rs.beyond_cap(w)) continue;
                Poly a = rs.apply_rule(w, 0, i);
                Poly b = rs.apply_rule(w, l1.size() - k, j);
                if (a != b) fail(w, a, b);
            }
            // Inclusions: l2 occurs inside l1.
            if (i == j) continue;
            if (l2.size() > l1.size()) continue;
            for (std::size_t pos = 0; pos + l2.size() <= l1.size(); ++pos) {
                if (!std::equal(l2.begin(), l2.end(), l1.begin() + pos)) continue;
                if (rs.beyond_cap(l1)) continue;
                Poly a = rs.apply_rule(l1, 0, i);
                Poly b = rs.apply_rule(l1, pos, j);
                if (a != b) fail(l1, a, b);
            }
        }
    }
}

}  // namespace

std::string word_label(const std::vector<std::string>& names, const Word& w) {
    if (w.empty()) return "1";
    bool single = std::all_of(names.begin(), names.end(), [](const std::string& s) { return s.size() == 1; });
    std::string out;
    for (std::size_t i = 0; i < w.size();) {
        std::size_t j = i;
        while (j < w.size() && w[j] == w[i]) ++j;
        if (!out.empty() && !single) out += "*";
        out += names[w[i]];
        if (j - i > 1) out += "^" + std::to_string(j - i);
        i = j;
    }
    return out;
}

Word parse_word(const AlgebraSpec& spec, const std::string& text) {
    auto find = [&](const std::string& name) -> std::uint32_t {
        for (std::size_t i = 0; i < spec.generators.size(); ++i)
            if (spec.generators[i].name == name) return std::uint32_t(i);
        throw std::invalid_argument("unknown generator '" + name + "' in word '" + text + "'");
    };
    bool single = std::all_of(spec.generators.begin(), spec.generators.end(),
                              [](const auto& g) { return g.name.size() == 1; });
    std::vector<std::string> tokens;
    {
        std::string cur;
        for (char ch : text) {
            if (ch == ' ' || ch == '*' || ch == '\t') {
                if (!cur.empty()) tokens.push_back(cur);
                cur.clear();
            } else {
                cur += ch;
            }
        }
        if (!cur.empty()) tokens.push_back(cur);
    }
    Word w;
    for (const auto& tok : tokens) {
        if (tok == "1") continue;
        // split "name^k" and, for single-letter alphabets, runs such as "ab^2c"
        std::size_t i = 0;
        while (i < tok.size()) {
            std::string name;
            if (single) {
                name = tok.substr(i, 1);
                ++i;
            } else {
                std::size_t caret = tok.find('^', i);
                name = tok.substr(i, caret == std::string::npos ? std::string::npos : caret - i);
                i = caret == std::string::npos ? tok.size() : caret;
            }
            std::size_t reps = 1;
            if (i < tok.size() && tok[i] == '^') {
                std::size_t j = i + 1;
                while (j < tok.size() && std::isdigit(static_cast<unsigned char>(tok[j]))) ++j;
                if (j == i + 1) throw std::invalid_argument("bad exponent in word '" + text + "'");
                reps = std::stoul(tok.substr(i + 1, j - i - 1));
                i = j;
            }
            auto g = find(name);
            w.insert(w.end(), reps, g);
        }
    }
    return w;
}

AlgebraPtr from_spec(const AlgebraSpec& spec) {
    PrimeField f(spec.p);
    if (spec.generators.empty()) {
        return std::make_shared<GradedAlgebra>(f, std::vector<int>{0}, std::vector<std::string>{"1"},
                                               std::vector<std::vector<Term>>{{{0, 1}}}, GradedAlgebra::Meta{});
    }
    RewriteSystem rs(spec);
    check_confluence(rs);

    int max_gen_deg = 0;
    for (const auto& g : spec.generators) max_gen_deg = std::max(max_gen_deg, g.degree);
    constexpr std::size_t kMaxDim = 20000;

    // Normal words by degree; a word is normal iff its prefix is normal and no
    // left-hand side is a suffix.
    std::map<int, std::vector<Word>> by_degree;
    by_degree[0].push_back({});
    std::size_t total = 1;
    int gap = 0;
    for (int d = 1;; ++d) {
        if (spec.degree_cap && d > *spec.degree_cap) break;
        std::vector<Word> here;
        for (std::size_t g = 0; g < spec.generators.size(); ++g) {
            int pd = d - spec.generators[g].degree;
            auto it = by_degree.find(pd);
            if (it == by_degree.end()) continue;
            for (const Word& w : it->second) {
                Word nw = w;
                nw.push_back(std::uint32_t(g));
                if (!rs.suffix_reducible(nw)) here.push_back(std::move(nw));
            }
        }
        if (here.empty()) {
            if (++gap >= max_gen_deg) break;
            continue;
        }
        gap = 0;
        std::sort(here.begin(), here.end(), [&](const Word& a, const Word& b) { return rs.greater(b, a); });
        total += here.size();
        if (total > kMaxDim)
            throw std::invalid_argument("algebra '" + spec.name +
                                        "' exceeds the dimension limit; declare a degree_cap");
        by_degree[d] = std::move(here);
    }

    std::vector<Word> words;
    std::vector<int> degrees;
    for (const auto& [d, ws] : by_degree)
        for (const auto& w : ws) {
            words.push_back(w);
            degrees.push_back(d);
        }
    std::map<Word, std::uint32_t> index;
    for (std::size_t i = 0; i < words.size(); ++i) index[words[i]] = std::uint32_t(i);
    std::vector<std::string> names;
    for (const auto& g : spec.generators) names.push_back(g.name);
    std::vector<std::string> labels;
    for (const auto& w : words) labels.push_back(word_label(names, w));

    const std::size_t n = words.size();
    const int top = degrees.back();
    std::vector<std::vector<Term>> products(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (degrees[i] + degrees[j] > top) continue;
            const Poly& nf = rs.normal_form(concat(words[i], words[j]));
            auto& out = products[i * n + j];
            for (const auto& [w, c] : nf) {
                auto it = index.find(w);
                if (it == index.end()) throw std::logic_error("normal form outside the enumerated basis");
                out.push_back({it->second, c});
            }
            std::sort(out.begin(), out.end(), [](const Term& a, const Term& b) { return a.index < b.index; });
        }

    GradedAlgebra::Meta meta;
    meta.name = spec.name;
    meta.lie_origin = spec.lie_origin;
    meta.degree_cap = spec.degree_cap;
    meta.words = words;
    for (std::size_t g = 0; g < spec.generators.size(); ++g) {
        meta.generator_names.push_back(spec.generators[g].name);
        meta.generator_degrees.push_back(spec.generators[g].degree);
        auto it = index.find(Word{std::uint32_t(g)});
        meta.generator_basis.push_back(it == index.end() ? UINT32_MAX : it->second);
    }
    return std::make_shared<GradedAlgebra>(f, std::move(degrees), std::move(labels), std::move(products),
                                           std::move(meta));
}

AlgebraSpec truncated_polynomial_spec(unsigned p, int deg_x, int n) {
    if (p % 2 == 1 && deg_x % 2 != 0)
        throw std::invalid_argument("truncated polynomial generator must have even degree for odd p");
    if (deg_x <= 0 || n <= 0) throw std::invalid_argument("truncated polynomial needs deg_x > 0 and n > 0");
    AlgebraSpec s;
    s.p = p;
    s.name = "F_" + std::to_string(p) + "[x]/(x^" + std::to_string(ipow(p, n)) + ")";
    s.generators = {{"x", deg_x}};
    s.relations = {{{1, Word(std::size_t(ipow(p, n)), 0u)}}};
    s.lie_origin = true;
    return s;
}

AlgebraPtr truncated_polynomial(unsigned p, int deg_x, int n) {
    return from_spec(truncated_polynomial_spec(p, deg_x, n));
}

AlgebraPtr exterior_algebra(unsigned p, int deg_x) {
    AlgebraSpec s;
    s.p = p;
    s.name = "Lambda[x]";
    s.generators = {{"x", deg_x}};
    s.relations = {{{1, Word{0, 0}}}};
    return from_spec(s);
}

// ---------------------------------------------------------------- tensor product

AlgebraPtr tensor_product(const GradedAlgebra& a, const GradedAlgebra& b) {
    if (!(a.field() == b.field())) throw std::invalid_argument("tensor factors over different fields");
    const PrimeField& f = a.field();
    struct Pair {
        std::uint32_t i, j;
        int deg;
    };
    std::vector<Pair> pairs;
    for (std::uint32_t i = 0; i < a.dim(); ++i)
        for (std::uint32_t j = 0; j < b.dim(); ++j) pairs.push_back({i, j, a.degree(i) + b.degree(j)});
    std::stable_sort(pairs.begin(), pairs.end(), [](const Pair& x, const Pair& y) { return x.deg < y.deg; });
    std::vector<std::uint32_t> pos(a.dim() * b.dim());
    for (std::size_t k = 0; k < pairs.size(); ++k) pos[pairs[k].i * b.dim() + pairs[k].j] = std::uint32_t(k);

    std::vector<int> degrees;
    std::vector<std::string> labels;
    for (const auto& pr : pairs) {
        degrees.push_back(pr.deg);
        if (pr.i == 0 && pr.j == 0)
            labels.push_back("1");
        else if (pr.j == 0)
            labels.push_back(a.label(pr.i) + "⊗1");
        else if (pr.i == 0)
            labels.push_back("1⊗" + b.label(pr.j));
        else
            labels.push_back(a.label(pr.i) + "⊗" + b.label(pr.j));
    }
    const std::size_t n = pairs.size();
    std::vector<std::vector<Term>> products(n * n);
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = 0; v < n; ++v) {
            const Pair& x = pairs[u];
            const Pair& y = pairs[v];
            Residue sgn = f.sign(static_cast<long long>(b.degree(x.j)) * a.degree(y.i));
            std::vector<std::pair<std::uint32_t, Residue>> terms;
            for (const Term& s : a.product(x.i, y.i))
                for (const Term& t : b.product(x.j, y.j))
                    terms.emplace_back(pos[s.index * b.dim() + t.index], f.mul(sgn, f.mul(s.coef, t.coef)));
            SparseVec sv = make_sparse(f, std::move(terms));
            for (std::size_t k = 0; k < sv.size(); ++k) products[u * n + v].push_back({sv.idx[k], sv.val[k]});
        }
    GradedAlgebra::Meta meta;
    meta.name = "(" + a.meta().name + ")⊗(" + b.meta().name + ")";
    meta.lie_origin = a.meta().lie_origin && b.meta().lie_origin;
    for (std::size_t g = 0; g < a.meta().generator_names.size(); ++g) {
        meta.generator_names.push_back(a.meta().generator_names[g] + "⊗1");
        meta.generator_degrees.push_back(a.meta().generator_degrees[g]);
        auto gb = a.meta().generator_basis[g];
        meta.generator_basis.push_back(gb == UINT32_MAX ? UINT32_MAX : pos[gb * b.dim()]);
    }
    for (std::size_t g = 0; g < b.meta().generator_names.size(); ++g) {
        meta.generator_names.push_back("1⊗" + b.meta().generator_names[g]);
        meta.generator_degrees.push_back(b.meta().generator_degrees[g]);
        auto gb = b.meta().generator_basis[g];
        meta.generator_basis.push_back(gb == UINT32_MAX ? UINT32_MAX : pos[gb]);
    }
    return std::make_shared<GradedAlgebra>(f, std::move(degrees), std::move(labels), std::move(products),
                                           std::move(meta));
}

// ---------------------------------------------------------------- central quotients

std::optional<int> homogeneous_degree(const GradedAlgebra& a, const std::vector<Residue>& z) {
    std::optional<int> d;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        if (!z[i]) continue;
        if (d && *d != a.degree(i)) return std::nullopt;
        d = a.degree(i);
    }
    return d;
}

bool is_central(const GradedAlgebra& a, const std::vector<Residue>& z) {
    auto d = homogeneous_degree(a, z);
    if (!d) return false;
    const PrimeField& f = a.field();
    for (std::size_t i = 0; i < a.dim(); ++i) {
        auto e = a.basis_vector(i);
        auto zl = a.multiply(z, e);
        auto zr = a.multiply(e, z);
        Residue s = f.sign(static_cast<long long>(*d) * a.degree(i));
        for (std::size_t k = 0; k < a.dim(); ++k)
            if (zl[k] != f.mul(s, zr[k])) return false;
    }
    return true;
}

std::vector<Residue> power(const GradedAlgebra& a, const std::vector<Residue>& z, int k) {
    std::vector<Residue> r = a.basis_vector(0);
    for (int i = 0; i < k; ++i) r = a.multiply(r, z);
    return r;
}

CentralQuotient quotient_by_central(const GradedAlgebra& a, const std::vector<Residue>& z) {
    const PrimeField& f = a.field();
    if (z.size() != a.dim()) throw std::invalid_argument("element length mismatch");
    auto d = homogeneous_degree(a, z);
    if (!d) throw std::invalid_argument("element is not homogeneous");
    if (*d <= 0) throw std::invalid_argument("central element must have positive degree");
    if (!is_central(a, z)) throw std::invalid_argument("element is not central");

    FpMatrix ideal(0, a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) ideal.append_row(a.multiply(z, a.basis_vector(i)));
    Echelon e = rref(f, ideal);
    if (e.rank * f.p() != a.dim() * (f.p() - 1))
        throw std::invalid_argument("A is not free over the subalgebra generated by z (dim A = " +
                                    std::to_string(a.dim()) + ", dim (z) = " + std::to_string(e.rank) + ")");
    std::vector<char> pivot(a.dim(), 0);
    for (auto c : e.pivots) pivot[c] = 1;
    CentralQuotient out;
    std::vector<std::int64_t> qindex(a.dim(), -1);
    for (std::size_t i = 0; i < a.dim(); ++i)
        if (!pivot[i]) {
            qindex[i] = std::int64_t(out.section.size());
            out.section.push_back(std::uint32_t(i));
        }
    Subspace J = Subspace::span(f, e.matrix);
    for (std::size_t j = 0; j < a.dim(); ++j) {
        auto r = J.reduce(f, a.basis_vector(j));
        std::vector<Term> img;
        for (std::size_t k = 0; k < a.dim(); ++k)
            if (r[k]) img.push_back({std::uint32_t(qindex[k]), r[k]});
        out.projection.push_back(std::move(img));
    }
    const std::size_t n = out.section.size();
    std::vector<int> degrees;
    std::vector<std::string> labels;
    for (auto s : out.section) {
        degrees.push_back(a.degree(s));
        labels.push_back(a.label(s));
    }
    std::vector<std::vector<Term>> products(n * n);
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = 0; v < n; ++v) {
            std::vector<std::pair<std::uint32_t, Residue>> terms;
            for (const Term& t : a.product(out.section[u], out.section[v]))
                for (const Term& q : out.projection[t.index]) terms.emplace_back(q.index, f.mul(t.coef, q.coef));
            SparseVec sv = make_sparse(f, std::move(terms));
            for (std::size_t k = 0; k < sv.size(); ++k) products[u * n + v].push_back({sv.idx[k], sv.val[k]});
        }
    GradedAlgebra::Meta meta;
    meta.name = a.meta().name + "//z";
    meta.lie_origin = a.meta().lie_origin;
    for (std::size_t g = 0; g < a.meta().generator_names.size(); ++g) {
        auto gb = a.meta().generator_basis[g];
        if (gb == UINT32_MAX || qindex[gb] < 0) continue;
        meta.generator_names.push_back(a.meta().generator_names[g]);
        meta.generator_degrees.push_back(a.meta().generator_degrees[g]);
        meta.generator_basis.push_back(std::uint32_t(qindex[gb]));
    }
    if (!a.meta().words.empty())
        for (auto s : out.section) meta.words.push_back(a.meta().words[s]);
    out.quotient = std::make_shared<GradedAlgebra>(f, std::move(degrees), std::move(labels), std::move(products),
                                                   std::move(meta));
    return out;
}

// ---------------------------------------------------------------- family presentations

namespace {

AlgebraSpec::Monomial mono(long long c, std::initializer_list<std::uint32_t> w) { return {c, Word(w)}; }
AlgebraSpec::Monomial mono_pow(long long c, std::uint32_t g, long long k) { return {c, Word(std::size_t(k), g)}; }

void add_commutators(AlgebraSpec& s) {
    for (std::uint32_t i = 0; i < s.generators.size(); ++i)
        for (std::uint32_t j = i + 1; j < s.generators.size(); ++j) s.relations.push_back({mono(1, {i, j}), mono(-1, {j, i})});
}

}  // namespace

AlgebraSpec family_presentation(const GroupSpec& g) {
    g.validate();
    const long long p = g.p;
    AlgebraSpec s;
    s.p = g.p;
    s.lie_origin = true;
    s.name = "VL " + g.name();
    switch (g.family) {
    case GroupSpec::Family::Abelian: {
        for (std::size_t i = 0; i < g.exponents.size(); ++i)
            s.generators.push_back({g.exponents.size() == 1 ? "x" : "x" + std::to_string(i + 1), 2});
        for (std::uint32_t i = 0; i < g.exponents.size(); ++i) s.relations.push_back({mono_pow(1, i, ipow(p, g.exponents[i]))});
        add_commutators(s);
        break;
    }
    case GroupSpec::Family::C: {
        if (g.r == 3) {
            // a, b in degree 2, c = (a,b) in degree 4; normal words c^i b^j a^k.
            s.generators = {{"a", 2}, {"b", 2}, {"c", 4}};
            s.relations = {{mono(1, {0, 1}), mono(-1, {1, 0}), mono(-1, {2})},
                           {mono(1, {0, 2}), mono(-1, {2, 0})},
                           {mono(1, {1, 2}), mono(-1, {2, 1})},
                           {mono_pow(1, 0, p)},
                           {mono_pow(1, 1, p)},
                           {mono_pow(1, 2, p)}};
        } else {
            s.generators = {{"x", 2}, {"y", 2}, {"z", 2}};
            s.relations = {{mono_pow(1, 0, p)}, {mono_pow(1, 1, p)}, {mono_pow(1, 2, ipow(p, g.r - 2))}};
            add_commutators(s);
        }
        break;
    }
    case GroupSpec::Family::G: {
        // f, g in degree 2, h = (f,g) in degree 4; normal words h^i g^j f^k.
        s.generators = {{"f", 2}, {"g", 2}, {"h", 4}};
        s.relations = {{mono_pow(1, 0, p)},
                       {mono_pow(1, 1, ipow(p, g.r - 2))},
                       {mono_pow(1, 2, p)},
                       {mono(1, {0, 1}), mono(-1, {1, 0}), mono(-1, {2})},
                       {mono(1, {1, 2}), mono(-1, {2, 1})}};
        Word fgp{0};
        fgp.insert(fgp.end(), std::size_t(p), 1u);
        Word gpf(std::size_t(p), 1u);
        gpf.push_back(0);
        s.relations.push_back({{1, fgp}, {-1, gpf}});
        if (g.p == 3 && g.r == 4)
            s.relations.push_back({mono(1, {0, 2}), mono(-1, {2, 0}), mono_pow(g.e, 1, p)});
        else
            s.relations.push_back({mono(1, {0, 2}), mono(-1, {2, 0})});
        break;
    }
    case GroupSpec::Family::Metacyclic: {
        int c = g.metacyclic_case();
        if (c == 1) {
            s.generators = {{"x", 2}, {"y", 2}};
            s.relations = {{mono_pow(1, 0, ipow(p, g.m))}, {mono_pow(1, 1, ipow(p, g.n))}};
        } else if (c == 2) {
            s.generators = {{"x", 2}, {"y", 2}};
            s.relations = {{mono_pow(1, 0, ipow(p, g.q))}, {mono_pow(1, 1, ipow(p, g.n + g.m - g.q))}};
        } else {
            s.generators = {{"x", 2}, {"z", 2}};
            s.relations = {{mono_pow(1, 0, ipow(p, g.m))}, {mono_pow(1, 1, ipow(p, g.n))}};
        }
        add_commutators(s);
        break;
    }
    case GroupSpec::Family::Table:
        throw std::invalid_argument("explicit tables have no built-in presentation");
    }
    return s;
}

}  // namespace skz
