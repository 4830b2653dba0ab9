// skz: command-line front end.
#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "skz/algebra.hpp"
#include "skz/cache.hpp"
#include "skz/cobar.hpp"
#include "skz/groups.hpp"
#include "skz/massey.hpp"
#include "skz/named.hpp"
#include "skz/specseq.hpp"
#include "skz/verify.hpp"

using json = nlohmann::ordered_json;
using namespace skz;

namespace {

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Config {
    std::string family;
    std::string spec_path;
    unsigned p = 3;
    int s_max = 3;
    int t_max = 14;
    std::string format = "json";
    int threads = 0;
    std::size_t size_cap = CohomologyOptions{}.size_cap;
    std::string cache_dir;
    bool quiet = false;
    // massey
    std::vector<std::string> classes;
    int power = 0;
    int samples = 4;
    // extension
    std::string z;
    // verify-paper
    std::vector<std::string> items;
    bool include_p5 = false;
};

// What the input describes: an algebra, possibly coming from a group.
struct Input {
    std::optional<GroupSpec> group;
    AlgebraPtr algebra;
    std::string z;  // default central element for `extension`
};

// ---------------------------------------------------------------- JSON spec parsing

class SpecReader {
public:
    explicit SpecReader(std::string source) : source_(std::move(source)) {}

    Input read(const json& j, const std::string& path) {
        if (!j.is_object()) fail(path, "expected an object");
        std::string kind = j.contains("kind") ? str(j, "kind", path) : (j.contains("family") ? "family" : "");
        if (kind == "family") return read_family(j, path);
        if (kind == "truncated") {
            unsigned p = prime(j, path);
            int deg = integer(j, "degree", path, p == 2 ? 1 : 2);
            int n = integer(j, "n", path, 1);
            if (deg <= 0) fail(path + ".degree", "must be positive");
            if (n <= 0) fail(path + ".n", "must be positive");
            Input in;
            in.algebra = truncated_polynomial(p, deg, n);
            return in;
        }
        if (kind == "presentation") return read_presentation(j, path);
        if (kind == "tensor") {
            if (!j.contains("factors") || !j["factors"].is_array() || j["factors"].size() != 2)
                fail(path + ".factors", "expected an array of two algebra specs");
            auto a = read(j["factors"][0], path + ".factors[0]");
            auto b = read(j["factors"][1], path + ".factors[1]");
            if (a.algebra->field().p() != b.algebra->field().p()) fail(path + ".factors", "factors over different primes");
            Input in;
            in.algebra = tensor_product(*a.algebra, *b.algebra);
            return in;
        }
        fail(path + ".kind", kind.empty() ? "missing (family | truncated | presentation | tensor)"
                                          : "unknown kind '" + kind + "'");
    }

private:
    [[noreturn]] void fail(const std::string& field, const std::string& msg) const {
        throw InputError(source_ + ": field '" + field + "': " + msg);
    }
    std::string str(const json& j, const char* key, const std::string& path) const {
        if (!j.contains(key)) fail(path + "." + key, "missing");
        if (!j[key].is_string()) fail(path + "." + key, "expected a string");
        return j[key].get<std::string>();
    }
    int integer(const json& j, const char* key, const std::string& path, std::optional<int> dflt = std::nullopt) const {
        if (!j.contains(key)) {
            if (dflt) return *dflt;
            fail(path + "." + key, "missing");
        }
        if (!j[key].is_number_integer()) fail(path + "." + key, "expected an integer");
        return j[key].get<int>();
    }
    std::vector<int> int_list(const json& j, const char* key, const std::string& path) const {
        if (!j.contains(key) || !j[key].is_array()) fail(path + "." + key, "expected an array of integers");
        std::vector<int> v;
        for (std::size_t i = 0; i < j[key].size(); ++i) {
            if (!j[key][i].is_number_integer())
                fail(path + "." + key + "[" + std::to_string(i) + "]", "expected an integer");
            v.push_back(j[key][i].get<int>());
        }
        return v;
    }
    unsigned prime(const json& j, const std::string& path) const {
        int p = integer(j, "p", path);
        if (p < 2 || !is_prime(unsigned(p))) fail(path + ".p", std::to_string(p) + " is not prime");
        return unsigned(p);
    }

    Input read_family(const json& j, const std::string& path) {
        unsigned p = prime(j, path);
        std::string fam = str(j, "family", path);
        GroupSpec g;
        try {
            if (fam == "C") {
                g = GroupSpec::c_group(p, integer(j, "r", path));
            } else if (fam == "G") {
                g = GroupSpec::g_group(p, integer(j, "r", path), integer(j, "e", path, 1));
            } else if (fam == "abelian") {
                g = GroupSpec::abelian(p, int_list(j, "exponents", path));
            } else if (fam == "metacyclic") {
                g = GroupSpec::metacyclic(p, integer(j, "m", path), integer(j, "n", path), integer(j, "q", path),
                                          integer(j, "l", path));
            } else if (fam == "table") {
                if (!j.contains("table") || !j["table"].is_array()) fail(path + ".table", "expected an array of rows");
                std::vector<std::vector<int>> t;
                for (std::size_t i = 0; i < j["table"].size(); ++i) {
                    const auto& row = j["table"][i];
                    if (!row.is_array()) fail(path + ".table[" + std::to_string(i) + "]", "expected an array");
                    std::vector<int> r;
                    for (const auto& x : row) {
                        if (!x.is_number_integer()) fail(path + ".table[" + std::to_string(i) + "]", "expected integers");
                        r.push_back(x.get<int>());
                    }
                    t.push_back(std::move(r));
                }
                g = GroupSpec::explicit_table(p, std::move(t));
            } else {
                fail(path + ".family", "unknown family '" + fam + "' (C | G | abelian | metacyclic | table)");
            }
            g.validate();
        } catch (const std::invalid_argument& e) {
            fail(path, e.what());
        }
        Input in = input_for_group(g);
        if (j.contains("z")) in.z = str(j, "z", path);
        return in;
    }

    Input read_presentation(const json& j, const std::string& path) {
        AlgebraSpec spec;
        spec.p = prime(j, path);
        if (j.contains("name")) spec.name = str(j, "name", path);
        if (!j.contains("generators") || !j["generators"].is_array() || j["generators"].empty())
            fail(path + ".generators", "expected a non-empty array");
        for (std::size_t i = 0; i < j["generators"].size(); ++i) {
            std::string gp = path + ".generators[" + std::to_string(i) + "]";
            const auto& g = j["generators"][i];
            if (!g.is_object()) fail(gp, "expected {\"name\", \"degree\"}");
            int d = integer(g, "degree", gp);
            if (d <= 0) fail(gp + ".degree", "must be positive");
            spec.generators.push_back({str(g, "name", gp), d});
        }
        if (j.contains("relations")) {
            if (!j["relations"].is_array()) fail(path + ".relations", "expected an array");
            for (std::size_t i = 0; i < j["relations"].size(); ++i) {
                std::string rp = path + ".relations[" + std::to_string(i) + "]";
                const auto& r = j["relations"][i];
                if (!r.is_array()) fail(rp, "expected an array of {\"coef\", \"word\"}");
                std::vector<AlgebraSpec::Monomial> rel;
                for (std::size_t k = 0; k < r.size(); ++k) {
                    std::string mp = rp + "[" + std::to_string(k) + "]";
                    if (!r[k].is_object()) fail(mp, "expected {\"coef\", \"word\"}");
                    long long c = r[k].contains("coef") ? integer(r[k], "coef", mp) : 1;
                    try {
                        rel.push_back({c, parse_word(spec, str(r[k], "word", mp))});
                    } catch (const std::invalid_argument& e) {
                        fail(mp + ".word", e.what());
                    }
                }
                spec.relations.push_back(std::move(rel));
            }
        }
        if (j.contains("degree_cap")) spec.degree_cap = integer(j, "degree_cap", path);
        if (j.contains("lie_origin")) {
            if (!j["lie_origin"].is_boolean()) fail(path + ".lie_origin", "expected a boolean");
            spec.lie_origin = j["lie_origin"].get<bool>();
        }
        Input in;
        try {
            in.algebra = from_spec(spec);
        } catch (const RewriteError& e) {
            fail(path + ".relations", e.what());
        } catch (const std::invalid_argument& e) {
            fail(path, e.what());
        }
        if (j.contains("z")) in.z = str(j, "z", path);
        return in;
    }

public:
    static Input input_for_group(const GroupSpec& g) {
        Input in;
        in.group = g;
        if (g.family == GroupSpec::Family::Table) {
            in.algebra = associated_graded_group_ring(build_group(g, PrimeField(g.p)), PrimeField(g.p)).algebra;
        } else {
            in.algebra = from_spec(family_presentation(g));
        }
        if (g.family == GroupSpec::Family::C) in.z = "c";
        if (g.family == GroupSpec::Family::G) in.z = "g^" + std::to_string(ipow(g.p, g.e));
        return in;
    }

private:
    std::string source_;
};

json parse_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    std::string text = ss.str();
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw InputError(path + ":" + std::to_string(line) + ":" + std::to_string(col) + ": malformed JSON (" +
                         std::string(e.what()) + ")");
    }
}

// C<r>, G<r>[e<e>], Z<order> / abelian:<e1>,<e2>,..., meta:<m>,<n>,<q>,<l>, trunc:<n>
Input input_from_family(const std::string& fam, unsigned p) {
    auto ints = [&](const std::string& s) {
        std::vector<int> v;
        std::stringstream ss(s);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            try {
                std::size_t used = 0;
                v.push_back(std::stoi(tok, &used));
                if (used != tok.size()) throw std::invalid_argument(tok);
            } catch (const std::exception&) {
                throw InputError("--family " + fam + ": bad integer '" + tok + "'");
            }
        }
        return v;
    };
    try {
        if (fam.rfind("trunc:", 0) == 0) {
            auto v = ints(fam.substr(6));
            if (v.size() != 1 || v[0] <= 0) throw InputError("--family trunc:<n> needs a positive n");
            Input in;
            in.algebra = truncated_polynomial(p, p == 2 ? 1 : 2, v[0]);
            return in;
        }
        GroupSpec g;
        if (fam.rfind("abelian:", 0) == 0) {
            g = GroupSpec::abelian(p, ints(fam.substr(8)));
        } else if (fam.rfind("meta:", 0) == 0) {
            auto v = ints(fam.substr(5));
            if (v.size() != 4) throw InputError("--family meta:<m>,<n>,<q>,<l>");
            g = GroupSpec::metacyclic(p, v[0], v[1], v[2], v[3]);
        } else if (fam.size() > 1 && fam[0] == 'C') {
            g = GroupSpec::c_group(p, ints(fam.substr(1))[0]);
        } else if (fam.size() > 1 && fam[0] == 'G') {
            auto rest = fam.substr(1);
            auto epos = rest.find('e');
            int r = ints(rest.substr(0, epos))[0];
            int e = epos == std::string::npos ? 1 : ints(rest.substr(epos + 1))[0];
            g = GroupSpec::g_group(p, r, e);
        } else if (fam.size() > 1 && fam[0] == 'Z') {
            long long order = ints(fam.substr(1))[0];
            int k = 0;
            long long q = 1;
            while (q < order) q *= p, ++k;
            if (q != order || k == 0) throw InputError("--family " + fam + ": order must be a power of p");
            g = GroupSpec::abelian(p, {k});
        } else {
            throw InputError("unknown family '" + fam + "' (C<r>, G<r>[e<e>], Z<p^k>, abelian:<e,..>, meta:<m,n,q,l>, trunc:<n>)");
        }
        g.validate();
        return SpecReader::input_for_group(g);
    } catch (const std::invalid_argument& e) {
        throw InputError("--family " + fam + ": " + e.what());
    }
}

Input load_input(const Config& c) {
    if (!c.spec_path.empty() && !c.family.empty()) throw InputError("give either --spec or --family, not both");
    if (!c.spec_path.empty()) {
        json j = parse_json_file(c.spec_path);
        if (j.is_null() || (j.is_object() && j.empty())) throw InputError(c.spec_path + ": empty specification");
        return SpecReader(c.spec_path).read(j, "$");
    }
    if (c.family.empty()) throw InputError("an input is required: --family NAME or --spec FILE");
    return input_from_family(c.family, c.p);
}

void check_config(const Config& c) {
    if (c.p < 2 || !is_prime(c.p)) throw InputError("--p " + std::to_string(c.p) + " is not prime");
    if (c.s_max <= 0 || c.t_max <= 0) throw InputError("bounds must be positive");
    if (c.threads < 0) throw InputError("--threads must be non-negative");
}

// ---------------------------------------------------------------- helpers

struct Runtime {
    Config cfg;
    RingCache cache;
    explicit Runtime(const Config& c)
        : cfg(c), cache(c.cache_dir.empty() ? RingCache::dir_from_env() : std::optional<std::filesystem::path>(c.cache_dir)) {}
    int threads() const {
        if (cfg.threads > 0) return cfg.threads;
        return int(std::max(1u, std::thread::hardware_concurrency()));
    }
    CohomologyOptions opts(int s, int t, int solve = 2) const {
        CohomologyOptions o;
        o.s_max = s;
        o.t_max = t;
        o.solve_s_max = std::min(solve, s);
        o.size_cap = cfg.size_cap;
        o.threads = threads();
        o.progress = !cfg.quiet;
        return o;
    }
    RingPtr ring(AlgebraPtr a, int s, int t, int solve = 2) {
        auto r = cache.get(std::move(a), opts(s, t, solve));
        if (!cfg.quiet && cache.dir())
            std::cerr << "[cache] " << cache.dir()->string() << ": " << cache.disk_hits() << " loaded, " << cache.computed()
                      << " computed\n";
        return r;
    }
};

json bideg(int s, int t) { return json::array({s, t}); }

json coords_json(const PrimeField& f, const std::vector<Residue>& v) {
    json a = json::array();
    for (auto x : v) a.push_back(f.to_signed(x));
    return a;
}

// Σ c_i name_i for a class in the span of the named classes of its bidegree, or "".
std::string express(const CohomologyRing& h, const std::vector<NamedClass>& names, const CohomClass& x) {
    if (x.is_zero()) return "0";
    const PrimeField& f = h.field();
    std::vector<const NamedClass*> use;
    for (const auto& n : names)
        if (n.cls.s == x.s && n.cls.t == x.t && !n.cls.is_zero()) use.push_back(&n);
    if (use.empty()) return "";
    FpMatrix m(x.coords.size(), use.size() + 1);
    for (std::size_t r = 0; r < x.coords.size(); ++r) {
        for (std::size_t k = 0; k < use.size(); ++k) m.at(r, k) = use[k]->cls.coords[r];
        m.at(r, use.size()) = x.coords[r];
    }
    auto ker = kernel(f, m).basis_vectors();
    for (const auto& v : ker) {
        if (!v.back()) continue;
        Residue scale = f.neg(f.inv(v.back()));
        std::string out;
        for (std::size_t k = 0; k < use.size(); ++k) {
            int c = f.to_signed(f.mul(scale, v[k]));
            if (!c) continue;
            std::string term = (c == 1 ? "" : c == -1 ? "-" : std::to_string(c) + "*") + use[k]->name;
            out += out.empty() ? term : (term[0] == '-' ? " - " + term.substr(1) : " + " + term);
        }
        return out;
    }
    return "";
}

json named_json(const std::vector<NamedClass>& names) {
    json a = json::array();
    for (const auto& n : names)
        a.push_back({{"name", n.name},
                     {"bidegree", bideg(n.cls.s, n.cls.t)},
                     {"how", n.how},
                     {"representative", n.representative}});
    return a;
}

std::vector<NamedClass> safe_named(const CohomologyRing& h) {
    try {
        return default_named(h);
    } catch (const std::exception&) {
        return {};
    }
}

json algebra_json(const GradedAlgebra& a) {
    json j;
    j["name"] = a.meta().name;
    j["p"] = a.field().p();
    j["dim"] = a.dim();
    json dims = json::object();
    auto d = a.dims_by_degree();
    for (std::size_t k = 0; k < d.size(); ++k)
        if (d[k]) dims[std::to_string(k)] = d[k];
    j["dims_by_degree"] = dims;
    json gens = json::array();
    for (std::size_t i = 0; i < a.meta().generator_names.size(); ++i)
        gens.push_back({{"name", a.meta().generator_names[i]}, {"degree", a.meta().generator_degrees[i]}});
    j["generators"] = gens;
    j["commutative"] = a.is_commutative();
    j["restricted_enveloping"] = a.meta().lie_origin;
    return j;
}

// ---------------------------------------------------------------- output

void flatten(const json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& out) {
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it) flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
    } else if (j.is_array() && std::any_of(j.begin(), j.end(), [](const json& x) { return x.is_structured(); })) {
        for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", out);
    } else {
        out.emplace_back(prefix, j.is_string() ? j.get<std::string>() : j.dump());
    }
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string r = "\"";
    for (char c : s) r += c == '"' ? std::string("\"\"") : std::string(1, c);
    return r + "\"";
}

// `table` (if given) is used for csv/text instead of the flattened report.
void emit(const Config& c, const json& report, const json* table = nullptr, const std::vector<std::string>& cols = {}) {
    if (c.format == "json") {
        std::cout << report.dump(2) << "\n";
        return;
    }
    if (table) {
        std::string sep = c.format == "csv" ? "," : "\t";
        for (std::size_t i = 0; i < cols.size(); ++i) std::cout << (i ? sep : "") << cols[i];
        std::cout << "\n";
        for (const auto& row : *table) {
            for (std::size_t i = 0; i < row.size(); ++i)
                std::cout << (i ? sep : "") << (row[i].is_string() ? row[i].get<std::string>() : row[i].dump());
            std::cout << "\n";
        }
        return;
    }
    std::vector<std::pair<std::string, std::string>> kv;
    flatten(report, "", kv);
    if (c.format == "csv") {
        std::cout << "key,value\n";
        for (const auto& [k, v] : kv) std::cout << csv_field(k) << "," << csv_field(v) << "\n";
    } else {
        for (const auto& [k, v] : kv) std::cout << k << ": " << v << "\n";
    }
}

// ---------------------------------------------------------------- commands

int cmd_group(Runtime& rt) {
    Input in = load_input(rt.cfg);
    if (!in.group) throw InputError("`group` needs a group family or a family spec");
    const GroupSpec& g = *in.group;
    PrimeField f(g.p);
    auto table = build_group(g, f);
    auto lcs = lower_central_series(table, f);
    json j;
    j["group"] = g.name();
    j["p"] = g.p;
    j["order"] = table.order;
    json dims = json::object();
    for (auto [d, n] : lcs.graded_dims) dims[std::to_string(d)] = n;
    j["lie_algebra_dims"] = dims;
    json br = json::array();
    for (const auto& b : lcs.bracket) {
        bool nz = std::any_of(b.value.begin(), b.value.end(), [](Residue r) { return r != 0; });
        if (nz) br.push_back({{"left", bideg(b.r, b.i)}, {"right", bideg(b.s, b.j)}, {"degree", b.degree}, {"value", coords_json(f, b.value)}});
    }
    j["brackets"] = br;
    json res = json::array();
    for (const auto& r : lcs.restriction) {
        bool nz = std::any_of(r.value.begin(), r.value.end(), [](Residue x) { return x != 0; });
        if (nz) res.push_back({{"element", bideg(r.r, r.i)}, {"degree", r.degree}, {"value", coords_json(f, r.value)}});
    }
    j["restrictions"] = res;
    if (g.family != GroupSpec::Family::Table) {
        auto q = quillen_check_family(g);
        j["quillen"] = {{"ok", q.ok()},
                        {"relations_hold", q.relations_hold},
                        {"generates", q.generates},
                        {"dims_agree", q.dims_agree},
                        {"detail", q.detail}};
        emit(rt.cfg, j);
        return q.ok() ? 0 : 1;
    }
    emit(rt.cfg, j);
    return 0;
}

int cmd_algebra(Runtime& rt) {
    Input in = load_input(rt.cfg);
    json j = algebra_json(*in.algebra);
    json basis = json::array();
    for (std::size_t i = 0; i < in.algebra->dim(); ++i)
        basis.push_back({{"label", in.algebra->label(i)}, {"degree", in.algebra->degree(i)}});
    j["basis"] = basis;
    emit(rt.cfg, j);
    return 0;
}

int cmd_cohomology(Runtime& rt) {
    Input in = load_input(rt.cfg);
    auto h = rt.ring(in.algebra, rt.cfg.s_max, rt.cfg.t_max);
    json j;
    j["algebra"] = in.algebra->meta().name;
    j["p"] = in.algebra->field().p();
    j["s_max"] = rt.cfg.s_max;
    j["t_max"] = rt.cfg.t_max;
    json table = json::array(), partial = json::array();
    for (int s = 1; s <= rt.cfg.s_max; ++s)
        for (int t = 0; t <= rt.cfg.t_max; ++t) {
            auto d = h->dim(s, t);
            if (!d) {
                partial.push_back(bideg(s, t));
            } else if (*d) {
                table.push_back(json::array({s, t, *d}));
            }
        }
    j["table"] = table;
    j["partial"] = partial;
    json ind = json::array();
    for (const auto& [st, d] : h->indecomposables())
        if (d.dim) ind.push_back({{"bidegree", bideg(st.first, st.second)}, {"dim", d.dim}, {"exact", d.exact}});
    j["indecomposables"] = ind;
    j["named"] = named_json(safe_named(*h));
    emit(rt.cfg, j, &table, {"s", "t", "dim"});
    return 0;
}

int cmd_massey(Runtime& rt) {
    const Config& c = rt.cfg;
    Input in = load_input(c);
    bool power = c.power != 0;
    if (power && c.classes.size() != 1) throw InputError("--power needs exactly one class (--classes NAME)");
    if (!power && c.classes.size() != 3) throw InputError("a triple product needs three classes (--classes a,b,c)");
    if (power && c.power < 2) throw InputError("--power must be at least 2");

    auto resolve = [&](const RingPtr& h) {
        auto names = safe_named(*h);
        std::vector<CohomClass> xs;
        for (const auto& n : c.classes) {
            auto f = find_named(names, n);
            if (!f) throw InputError("class '" + n + "' is not resolvable within (" + std::to_string(h->s_max()) + "," +
                                     std::to_string(h->t_max()) + ")");
            xs.push_back(f->cls);
        }
        return std::make_pair(names, xs);
    };
    auto h = rt.ring(in.algebra, c.s_max, c.t_max);
    auto [names, xs] = resolve(h);
    int rs, rt_;
    if (power) {
        rs = c.power * (xs[0].s - 1) + 2;
        rt_ = c.power * xs[0].t;
    } else {
        rs = xs[0].s + xs[1].s + xs[2].s - 1;
        rt_ = xs[0].t + xs[1].t + xs[2].t;
    }
    // enlarge the ring so that the product and its defining systems fit
    if (rs > h->s_max() || rt_ > h->t_max() || rs - 1 > h->options().solve_s_max) {
        h = rt.ring(in.algebra, std::max(rs, c.s_max), std::max(rt_, c.t_max), rs - 1);
        std::tie(names, xs) = resolve(h);
    }
    MasseyResult m = power ? massey_symmetric(*h, xs[0], c.power, {}, c.samples) : massey_triple(*h, xs[0], xs[1], xs[2]);

    json j;
    j["algebra"] = in.algebra->meta().name;
    j["kind"] = power ? "power" : "triple";
    j["classes"] = c.classes;
    if (power) j["k"] = c.power;
    j["defined"] = m.defined;
    j["bidegree"] = bideg(m.s, m.t);
    if (!m.defined) {
        j["failed_stage"] = m.failed_stage;
        j["reason"] = m.reason;
    } else {
        const PrimeField& f = h->field();
        j["representative"] = format_cochain(*in.algebra, m.representative);
        j["value"] = coords_json(f, m.coset.value.coords);
        j["value_named"] = express(*h, names, m.coset.value);
        j["contains_zero"] = m.coset.contains(f, h->zero_class(m.s, m.t));
        j["indeterminacy_dim"] = m.coset.basis.size();
        j["indeterminacy_exact"] = m.coset.exact;
        json basis = json::array();
        for (const auto& b : m.coset.basis) basis.push_back(coords_json(f, b));
        j["indeterminacy_basis"] = basis;
        json sample = json::array();
        for (const auto& x : m.coset_sample) sample.push_back(coords_json(f, x.coords));
        j["coset_members_sample"] = sample;
        json ds = json::array();
        for (const auto& a : m.defining_system) ds.push_back(format_cochain(*in.algebra, a));
        j["defining_system"] = ds;
    }
    j["named"] = named_json(names);
    emit(c, j);
    return 0;
}

json sk_json(const SemiKoszulReport& r) {
    json j;
    j["verdict"] = r.verdict;
    j["complete"] = r.complete;
    j["bounds"] = bideg(r.s_max, r.t_max);
    json w = json::array();
    for (const auto& x : r.witnesses)
        w.push_back({{"bidegree", bideg(x.s, x.t)}, {"generated_dim", x.generated.size()}, {"missing_dim", x.basis.size()}});
    j["witnesses"] = w;
    return j;
}

int cmd_semikoszul(Runtime& rt) {
    Input in = load_input(rt.cfg);
    auto h = rt.ring(in.algebra, rt.cfg.s_max, rt.cfg.t_max);
    auto r = semi_koszul_check(CohomologyView(h), rt.cfg.s_max, rt.cfg.t_max);
    json j;
    j["algebra"] = in.algebra->meta().name;
    j["semi_koszul"] = sk_json(r);
    json dims = json::array();
    for (const auto& [st, d] : r.full_dims)
        if (d) {
            auto it = r.generated_dims.find(st);
            dims.push_back(json::array({st.first, st.second, d, it == r.generated_dims.end() ? 0 : it->second}));
        }
    j["dims"] = dims;
    emit(rt.cfg, j, &dims, {"s", "t", "dim", "generated"});
    return 0;
}

int cmd_extension(Runtime& rt) {
    Input in = load_input(rt.cfg);
    std::string zl = rt.cfg.z.empty() ? in.z : rt.cfg.z;
    if (zl.empty()) throw InputError("no central element: pass --z LABEL (a basis label of the algebra)");
    auto zi = in.algebra->index_of_label(zl);
    if (!zi) throw InputError("--z '" + zl + "' is not a basis label of " + in.algebra->meta().name);
    MainTheoremBounds b;
    b.s_max = rt.cfg.s_max;
    b.t_max = rt.cfg.t_max;
    b.threads = rt.threads();
    b.progress = !rt.cfg.quiet;
    MainTheoremReport r;
    try {
        r = main_theorem_report(in.algebra, in.algebra->basis_vector(*zi), b, &rt.cache);
    } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
    }
    const PrimeField& f = in.algebra->field();
    auto base_names = safe_named(*r.h_base);
    json j;
    j["extension"] = {{"total", in.algebra->meta().name},
                      {"base", r.ext.base->meta().name},
                      {"z", zl},
                      {"deg_z", r.ext.deg_z}};
    j["mu"] = {{"bidegree", bideg(r.mu.mu.s, r.mu.mu.t)},
               {"cocycle", format_cochain(*r.ext.base, r.mu.cocycle)},
               {"class", coords_json(f, r.mu.mu.coords)},
               {"named", express(*r.h_base, base_names, r.mu.mu)}};
    json ann;
    if (r.mu.mu.is_zero()) {
        ann = {{"verdict", "skipped: mu is zero"}};
    } else {
        json w = json::array();
        for (const auto& x : r.annihilator.witnesses) w.push_back({{"bidegree", bideg(x.s, x.t)}, {"dim", x.basis.size()}});
        json pieces = json::array();
        for (const auto& [st, v] : r.annihilator.ann) pieces.push_back(json::array({st.first, st.second, v.size()}));
        ann = {{"verdict", to_string(r.annihilator.verdict)}, {"ann_dims", pieces}, {"witnesses", w}};
    }
    j["conditions"] = {
        {"bockstein", {{"verdict", to_string(r.bockstein.verdict)}, {"detail", r.bockstein.detail}}},
        {"annihilator", ann},
        {"base_semi_koszul", sk_json(r.base_semi_koszul)},
        {"all_hold", r.conditions_hold}};
    json totals = json::array();
    for (auto [n, d] : r.ss.e3_totals) totals.push_back({{"n", n}, {"e3", d}, {"cohomology", r.ss.h_totals[n]}});
    json mism = json::array();
    for (auto [n, u] : r.ss.mismatches) mism.push_back(bideg(n, u));
    j["collapse"] = {{"holds", r.ss.collapse},
                     {"d2_squared_zero", r.ss.d2_squared_zero},
                     {"euler_ok", r.ss.euler_ok},
                     {"totals", totals},
                     {"mismatches", mism}};
    j["semi_koszul"] = sk_json(r.total_semi_koszul);
    j["witnesses"] = j["semi_koszul"]["witnesses"];
    j["verdict"] = r.verdict;
    j["named_base"] = named_json(base_names);
    emit(rt.cfg, j);
    return r.ss.collapse && r.ss.d2_squared_zero && r.ss.euler_ok ? 0 : 1;
}

int cmd_verify(Runtime& rt) {
    VerifyOptions o;
    o.include_p5 = rt.cfg.include_p5;
    o.items = rt.cfg.items;
    o.threads = rt.threads();
    o.progress = !rt.cfg.quiet;
    o.cache = &rt.cache;
    std::vector<VerifyResult> res;
    try {
        res = run_verification(o);
    } catch (const std::invalid_argument& e) {
        std::string known;
        for (const auto& i : verify_items()) known += (known.empty() ? "" : ", ") + i.id;
        throw InputError(std::string(e.what()) + "; known items: " + known);
    }
    json items = json::array(), table = json::array();
    std::map<int, std::pair<int, bool>> per_ac;
    bool all = true;
    for (const auto& r : res) {
        json facts = json::array();
        for (const auto& [k, v] : r.facts) facts.push_back({{"key", k}, {"value", v}});
        items.push_back({{"id", r.id}, {"ac", r.ac}, {"p5", r.p5}, {"pass", r.pass}, {"failures", r.failures}, {"facts", facts}});
        table.push_back(json::array({r.id, "AC" + std::to_string(r.ac), r.pass ? "PASS" : "FAIL"}));
        auto& [n, ok] = per_ac[r.ac];
        ok = (n++ ? ok : true) && r.pass;
        all &= r.pass;
        if (!r.pass) std::cerr << "FAIL " << r.id << "\n";
    }
    json crit = json::object();
    for (auto [ac, v] : per_ac) crit["AC" + std::to_string(ac)] = v.second ? "PASS" : "FAIL";
    json j;
    j["include_p5"] = rt.cfg.include_p5;
    j["pass"] = all;
    j["criteria"] = crit;
    j["items"] = items;
    emit(rt.cfg, j, &table, {"item", "criterion", "result"});
    return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cohomology of restricted enveloping algebras of p-groups: Massey products, extensions, semi-Koszul checks"};
    app.require_subcommand(1);
    Config cfg;

    auto common = [&](CLI::App* s, bool input, bool bounds) {
        if (input) {
            s->add_option("--family", cfg.family, "C<r>, G<r>[e<e>], Z<p^k>, abelian:<e,..>, meta:<m,n,q,l>, trunc:<n>");
            s->add_option("--spec", cfg.spec_path, "JSON input file");
            s->add_option("--p", cfg.p, "prime (with --family)");
        }
        if (bounds) {
            s->add_option("--smax", cfg.s_max, "homological degree bound");
            s->add_option("--tmax", cfg.t_max, "internal degree bound");
            s->add_option("--size-cap", cfg.size_cap, "largest cochain space handled");
        }
        s->add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"json", "csv", "text"}));
        s->add_option("--threads", cfg.threads, "worker threads (0: all cores)");
        s->add_option("--cache-dir", cfg.cache_dir, std::string("ring cache directory (default $") + kCacheEnv + ")");
        s->add_flag("--quiet", cfg.quiet, "no progress on stderr");
    };

    auto* g = app.add_subcommand("group", "group order, mod-p Lie algebra and Quillen check");
    common(g, true, false);
    auto* a = app.add_subcommand("algebra", "restricted enveloping algebra / graded algebra summary");
    common(a, true, false);
    auto* c = app.add_subcommand("cohomology", "Poincare table, indecomposables and named classes");
    common(c, true, true);
    auto* m = app.add_subcommand("massey", "Massey triple products and symmetric Massey powers");
    common(m, true, true);
    m->add_option("--classes", cfg.classes, "class names (alpha, beta, x1, ...)")->delimiter(',');
    m->add_option("--power", cfg.power, "symmetric Massey power <x>^k");
    m->add_option("--samples", cfg.samples, "coset samples when indeterminacy is not exact");
    auto* e = app.add_subcommand("extension", "extension class, E3 page, collapse and semi-Koszul conditions");
    common(e, true, true);
    e->add_option("--z", cfg.z, "basis label of the central element");
    auto* k = app.add_subcommand("semikoszul", "semi-Koszul check of the cohomology ring");
    common(k, true, true);
    auto* v = app.add_subcommand("verify-paper", "run the acceptance matrix");
    common(v, false, false);
    v->add_option("--item", cfg.items, "run only these items");
    v->add_flag("--include-p5", cfg.include_p5, "include the p = 5 items");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        int rc = app.exit(err);
        return rc == 0 ? 0 : 2;
    }

    try {
        check_config(cfg);
        Runtime rt(cfg);
        if (g->parsed()) return cmd_group(rt);
        if (a->parsed()) return cmd_algebra(rt);
        if (c->parsed()) return cmd_cohomology(rt);
        if (m->parsed()) return cmd_massey(rt);
        if (e->parsed()) return cmd_extension(rt);
        if (k->parsed()) return cmd_semikoszul(rt);
        if (v->parsed()) return cmd_verify(rt);
    } catch (const InputError& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 2;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 1;
    }
    return 2;
}
