#include "twodd/canonical.hpp"

#include "twodd/error.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace twodd {

namespace {

struct Arcs {
    std::vector<int> tail, head, hp, tp, ac;
};

class Search {
public:
    Search(const Digraph& g, const Arcs& a, const std::vector<int>& colour) : g_(g), a_(a), colour_(colour) {}

    void run(const std::vector<int>& roots) {
        for (int r : roots) {
            State s;
            s.vlab.assign(static_cast<std::size_t>(g_.vertex_count()), -1);
            s.ac_done.assign(static_cast<std::size_t>(*std::max_element(a_.ac.begin(), a_.ac.end()) + 1), 0);
            process_ac(s, r);
            if (!pruned(s)) {
                explore(s);
            }
        }
    }

    std::string best;
    std::uint64_t count = 0;

private:
    struct State {
        std::vector<int> vlab;
        std::vector<char> ac_done;
        std::vector<int> order;
        std::string code;
        std::size_t ptr = 0;
        int phase = 0;
    };

    static void put(std::string& code, int x) {
        code.push_back(static_cast<char>((x >> 8) & 0xff));
        code.push_back(static_cast<char>(x & 0xff));
    }

    void label(State& s, int v) const {
        if (s.vlab[static_cast<std::size_t>(v)] == -1) {
            s.vlab[static_cast<std::size_t>(v)] = static_cast<int>(s.order.size());
            s.order.push_back(v);
        }
    }

    void process_ac(State& s, int start) const {
        int e = start;
        bool via_head = true;
        do {
            const int t = a_.tail[static_cast<std::size_t>(e)];
            const int h = a_.head[static_cast<std::size_t>(e)];
            label(s, t);
            label(s, h);
            put(s.code, s.vlab[static_cast<std::size_t>(t)]);
            put(s.code, s.vlab[static_cast<std::size_t>(h)]);
            e = via_head ? a_.hp[static_cast<std::size_t>(e)] : a_.tp[static_cast<std::size_t>(e)];
            via_head = !via_head;
        } while (e != start);
        s.ac_done[static_cast<std::size_t>(a_.ac[static_cast<std::size_t>(start)])] = 1;
    }

    bool pruned(const State& s) const {
        if (count == 0) {
            return false;
        }
        return s.code.compare(0, s.code.size(), best, 0, s.code.size()) > 0;
    }

    void leaf(const State& s) {
        if (count == 0 || s.code < best) {
            best = s.code;
            count = 1;
        } else if (s.code == best) {
            ++count;
        }
    }

    void explore(State& s) {
        while (s.ptr < s.order.size()) {
            const int v = s.order[s.ptr];
            while (s.phase < 2) {
                const auto arcs = s.phase == 0 ? g_.out_arcs(v) : g_.in_arcs(v);
                ++s.phase;
                if (arcs.empty() || s.ac_done[static_cast<std::size_t>(a_.ac[static_cast<std::size_t>(arcs[0])])]) {
                    continue;
                }
                const int x = arcs[0];
                const int y = arcs[1];
                const int cx = colour_[static_cast<std::size_t>(x)];
                const int cy = colour_[static_cast<std::size_t>(y)];
                if (cx != cy) {
                    process_ac(s, cx < cy ? x : y);
                    if (pruned(s)) {
                        return;
                    }
                    continue;
                }
                for (int start : {x, y}) {
                    State t = s;
                    process_ac(t, start);
                    if (!pruned(t)) {
                        explore(t);
                    }
                }
                return;
            }
            ++s.ptr;
            s.phase = 0;
        }
        leaf(s);
    }

    const Digraph& g_;
    const Arcs& a_;
    const std::vector<int>& colour_;
};

int kind_code(const Digraph& g, int v) {
    switch (vertex_kind(g, v)) {
    case VertexKind::Entry:
        return 0;
    case VertexKind::Exit:
        return 1;
    default:
        return 2;
    }
}

std::vector<int> refine(const Digraph& g, const Arcs& a) {
    const int m = g.arc_count();
    std::vector<int> c(static_cast<std::size_t>(m));
    for (int e = 0; e < m; ++e) {
        const int t = a.tail[static_cast<std::size_t>(e)];
        const int h = a.head[static_cast<std::size_t>(e)];
        c[static_cast<std::size_t>(e)] = kind_code(g, t) * 3 + kind_code(g, h) + (t == h ? 9 : 0);
    }
    int classes = 0;
    while (true) {
        std::vector<std::vector<int>> sig(static_cast<std::size_t>(m));
        for (int e = 0; e < m; ++e) {
            auto& s = sig[static_cast<std::size_t>(e)];
            s.push_back(c[static_cast<std::size_t>(e)]);
            s.push_back(c[static_cast<std::size_t>(a.hp[static_cast<std::size_t>(e)])]);
            s.push_back(c[static_cast<std::size_t>(a.tp[static_cast<std::size_t>(e)])]);
            std::vector<int> out;
            for (int f : g.out_arcs(a.head[static_cast<std::size_t>(e)])) {
                out.push_back(c[static_cast<std::size_t>(f)]);
            }
            std::sort(out.begin(), out.end());
            s.push_back(static_cast<int>(out.size()));
            s.insert(s.end(), out.begin(), out.end());
            std::vector<int> in;
            for (int f : g.in_arcs(a.tail[static_cast<std::size_t>(e)])) {
                in.push_back(c[static_cast<std::size_t>(f)]);
            }
            std::sort(in.begin(), in.end());
            s.push_back(static_cast<int>(in.size()));
            s.insert(s.end(), in.begin(), in.end());
        }
        std::vector<std::vector<int>> uniq = sig;
        std::sort(uniq.begin(), uniq.end());
        uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
        for (int e = 0; e < m; ++e) {
            c[static_cast<std::size_t>(e)] = static_cast<int>(
                std::lower_bound(uniq.begin(), uniq.end(), sig[static_cast<std::size_t>(e)]) - uniq.begin());
        }
        if (static_cast<int>(uniq.size()) == classes) {
            return c;
        }
        classes = static_cast<int>(uniq.size());
    }
}

CanonicalForm canonical_connected(const Digraph& g) {
    CanonicalForm f;
    if (g.arc_count() == 0) {
        f.code = std::string(2, '\0');
        return f;
    }
    Arcs a;
    const auto dec = ac_decompose(g);
    for (int e = 0; e < g.arc_count(); ++e) {
        const Arc& arc = g.arc(e);
        a.tail.push_back(arc.tail);
        a.head.push_back(arc.head);
        const auto in = g.in_arcs(arc.head);
        const auto out = g.out_arcs(arc.tail);
        a.hp.push_back(in[0] == e ? in[1] : in[0]);
        a.tp.push_back(out[0] == e ? out[1] : out[0]);
        a.ac.push_back(dec.ac_of_arc[static_cast<std::size_t>(e)]);
    }
    const auto colour = refine(g, a);
    std::map<int, std::vector<int>> classes;
    for (int e = 0; e < g.arc_count(); ++e) {
        classes[colour[static_cast<std::size_t>(e)]].push_back(e);
    }
    const std::vector<int>* roots = nullptr;
    for (const auto& [c, arcs] : classes) {
        if (roots == nullptr || arcs.size() < roots->size()) {
            roots = &arcs;
        }
    }
    Search s(g, a, colour);
    s.run(*roots);
    f.code = std::move(s.best);
    f.automorphism_count = s.count;
    return f;
}

} // namespace

CanonicalForm canonical_form(const Digraph& g) {
    require_valid(g);
    const auto comp = component_of_vertices(g);
    const int nc = comp.empty() ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;
    if (nc <= 1) {
        return canonical_connected(g);
    }
    std::vector<std::vector<int>> verts(static_cast<std::size_t>(nc));
    for (int v = 0; v < g.vertex_count(); ++v) {
        verts[static_cast<std::size_t>(comp[static_cast<std::size_t>(v)])].push_back(v);
    }
    std::vector<CanonicalForm> parts;
    for (const auto& vs : verts) {
        std::vector<int> id(static_cast<std::size_t>(g.vertex_count()), -1);
        for (std::size_t i = 0; i < vs.size(); ++i) {
            id[static_cast<std::size_t>(vs[i])] = static_cast<int>(i);
        }
        std::vector<Arc> arcs;
        for (const auto& e : g.arcs()) {
            if (id[static_cast<std::size_t>(e.tail)] != -1) {
                arcs.push_back({id[static_cast<std::size_t>(e.tail)], id[static_cast<std::size_t>(e.head)]});
            }
        }
        parts.push_back(canonical_connected(Digraph(static_cast<int>(vs.size()), std::move(arcs))));
    }
    std::sort(parts.begin(), parts.end(), [](const auto& x, const auto& y) { return x.code < y.code; });
    CanonicalForm f;
    f.code.push_back('\xff'); // distinguishes multi-component codes
    std::size_t run = 0;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        const auto len = parts[i].code.size();
        for (int shift = 24; shift >= 0; shift -= 8) {
            f.code.push_back(static_cast<char>((len >> shift) & 0xff));
        }
        f.code += parts[i].code;
        f.automorphism_count *= parts[i].automorphism_count;
        run = (i > 0 && parts[i].code == parts[i - 1].code) ? run + 1 : 1;
        f.automorphism_count *= run;
    }
    return f;
}

std::string to_hex(const std::string& code) {
    static const char* digits = "0123456789abcdef";
    std::string out;
    out.reserve(code.size() * 2);
    for (unsigned char c : code) {
        out.push_back(digits[c >> 4]);
        out.push_back(digits[c & 15]);
    }
    return out;
}

namespace {

struct BijectionSearch {
    int n;
    std::vector<std::vector<int>> ma, mb; // arc multiplicities
    std::vector<int> map, used;

    bool extend(int v) {
        if (v == n) {
            return true;
        }
        for (int w = 0; w < n; ++w) {
            if (used[static_cast<std::size_t>(w)]) {
                continue;
            }
            bool ok = true;
            for (int u = 0; u <= v && ok; ++u) {
                const int pu = u == v ? w : map[static_cast<std::size_t>(u)];
                ok = ma[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] ==
                         mb[static_cast<std::size_t>(pu)][static_cast<std::size_t>(w)] &&
                     ma[static_cast<std::size_t>(v)][static_cast<std::size_t>(u)] ==
                         mb[static_cast<std::size_t>(w)][static_cast<std::size_t>(pu)];
            }
            if (!ok) {
                continue;
            }
            map[static_cast<std::size_t>(v)] = w;
            used[static_cast<std::size_t>(w)] = 1;
            if (extend(v + 1)) {
                return true;
            }
            used[static_cast<std::size_t>(w)] = 0;
        }
        return false;
    }
};

std::vector<std::vector<int>> multiplicities(const Digraph& g) {
    const auto n = static_cast<std::size_t>(g.vertex_count());
    std::vector<std::vector<int>> m(n, std::vector<int>(n, 0));
    for (const auto& a : g.arcs()) {
        ++m[static_cast<std::size_t>(a.tail)][static_cast<std::size_t>(a.head)];
    }
    return m;
}

} // namespace

bool isomorphic_brute_force(const Digraph& a, const Digraph& b) {
    if (a.vertex_count() != b.vertex_count() || a.arc_count() != b.arc_count()) {
        return false;
    }
    const int n = a.vertex_count();
    if (n > 16) {
        throw ResourceError("isomorphic_brute_force: more than 16 vertices");
    }
    BijectionSearch s{n, multiplicities(a), multiplicities(b), std::vector<int>(static_cast<std::size_t>(n), -1),
                      std::vector<int>(static_cast<std::size_t>(n), 0)};
    return s.extend(0);
}

} // namespace twodd
