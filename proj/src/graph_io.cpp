#include "twodd/graph_io.hpp"

#include "twodd/error.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace twodd {

namespace {

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string_view strip_comment(std::string_view s) {
    const auto h = s.find('#');
    return trim(h == std::string_view::npos ? s : s.substr(0, h));
}

std::vector<std::string_view> words(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) {
            ++i;
        }
        const std::size_t j = i;
        while (i < s.size() && s[i] != ' ' && s[i] != '\t') {
            ++i;
        }
        if (j < i) {
            out.push_back(s.substr(j, i - j));
        }
    }
    return out;
}

int to_int(std::string_view w, int line) {
    int v = 0;
    const auto [p, ec] = std::from_chars(w.data(), w.data() + w.size(), v);
    if (ec != std::errc{} || p != w.data() + w.size()) {
        throw FormatError("line " + std::to_string(line) + ": expected an integer, got '" + std::string(w) + "'");
    }
    return v;
}

template <typename Fn>
void for_each_line(std::string_view text, Fn&& fn) {
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        const auto line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        ++line_no;
        const auto body = strip_comment(line);
        if (!body.empty()) {
            fn(body, line_no);
        }
        if (nl == std::string_view::npos) {
            break;
        }
        pos = nl + 1;
    }
}

} // namespace

Digraph parse_graph_text(std::string_view text) {
    int n = -1;
    std::vector<Arc> arcs;
    struct PendingLabel {
        int v;
        BoundaryLabel l;
        int line;
    };
    std::vector<PendingLabel> labels;
    for_each_line(text, [&](std::string_view body, int line) {
        const auto w = words(body);
        if (n < 0) {
            if (w.size() != 2 || w[0] != "vertices") {
                throw FormatError("line " + std::to_string(line) + ": expected 'vertices <n>'");
            }
            n = to_int(w[1], line);
            if (n < 0) {
                throw FormatError("line " + std::to_string(line) + ": negative vertex count");
            }
            return;
        }
        if (w[0] == "label") {
            if (w.size() != 4 || (w[2] != "entry" && w[2] != "exit")) {
                throw FormatError("line " + std::to_string(line) + ": expected 'label <v> <entry|exit> <k>'");
            }
            const int v = to_int(w[1], line);
            const int k = to_int(w[3], line);
            if (v < 1 || v > n || k < 1) {
                throw FormatError("line " + std::to_string(line) + ": label out of range");
            }
            labels.push_back({v - 1, BoundaryLabel{w[2] == "entry" ? VertexKind::Entry : VertexKind::Exit, k - 1}, line});
            return;
        }
        if (w.size() != 2) {
            throw FormatError("line " + std::to_string(line) + ": expected an arc 'u v'");
        }
        const int u = to_int(w[0], line);
        const int v = to_int(w[1], line);
        if (u < 1 || u > n || v < 1 || v > n) {
            throw FormatError("line " + std::to_string(line) + ": arc endpoint outside 1.." + std::to_string(n));
        }
        arcs.push_back({u - 1, v - 1});
    });
    if (n < 0) {
        throw FormatError("missing 'vertices <n>' header");
    }
    Digraph g(n, std::move(arcs));
    for (const auto& pl : labels) {
        if (g.label(pl.v)) {
            throw FormatError("line " + std::to_string(pl.line) + ": vertex labelled twice");
        }
        g.set_label(pl.v, pl.l);
    }
    return g;
}

std::string format_graph_text(const Digraph& g) {
    std::ostringstream os;
    os << "vertices " << g.vertex_count() << '\n';
    for (const auto& a : g.arcs()) {
        os << a.tail + 1 << ' ' << a.head + 1 << '\n';
    }
    for (int v = 0; v < g.vertex_count(); ++v) {
        if (const auto& l = g.label(v)) {
            os << "label " << v + 1 << ' ' << (l->kind == VertexKind::Entry ? "entry" : "exit") << ' '
               << l->index + 1 << '\n';
        }
    }
    return os.str();
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw FormatError("cannot open " + path.string());
    }
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw FormatError("cannot write " + path.string());
    }
    out << text;
}

Digraph read_graph_file(const std::filesystem::path& path) {
    const std::string text = read_text_file(path);
    if (path.extension() == ".json") {
        try {
            return graph_from_json(nlohmann::json::parse(text));
        } catch (const nlohmann::json::exception& e) {
            throw FormatError(path.string() + ": " + e.what());
        }
    }
    try {
        return parse_graph_text(text);
    } catch (const FormatError& e) {
        throw FormatError(path.string() + ": " + e.what());
    }
}

nlohmann::json graph_to_json(const Digraph& g) {
    nlohmann::json j;
    j["vertices"] = g.vertex_count();
    auto arcs = nlohmann::json::array();
    for (const auto& a : g.arcs()) {
        arcs.push_back({a.tail + 1, a.head + 1});
    }
    j["arcs"] = std::move(arcs);
    auto labels = nlohmann::json::array();
    for (int v = 0; v < g.vertex_count(); ++v) {
        if (const auto& l = g.label(v)) {
            labels.push_back({{"vertex", v + 1},
                              {"kind", l->kind == VertexKind::Entry ? "entry" : "exit"},
                              {"index", l->index + 1}});
        }
    }
    j["labels"] = std::move(labels);
    if (validate(g).ok()) {
        const auto dec = ac_decompose(g);
        auto acs = nlohmann::json::array();
        for (const auto& x : dec.cycles) {
            auto f = x.forward();
            auto b = x.backward();
            for (auto& a : f) {
                ++a;
            }
            for (auto& a : b) {
                ++a;
            }
            acs.push_back({{"forward", f}, {"backward", b}});
        }
        j["acs"] = std::move(acs);
    }
    return j;
}

Digraph graph_from_json(const nlohmann::json& j) {
    const int n = j.at("vertices").get<int>();
    std::vector<Arc> arcs;
    for (const auto& a : j.at("arcs")) {
        const int u = a.at(0).get<int>();
        const int v = a.at(1).get<int>();
        if (u < 1 || u > n || v < 1 || v > n) {
            throw FormatError("arc endpoint outside 1.." + std::to_string(n));
        }
        arcs.push_back({u - 1, v - 1});
    }
    Digraph g(n, std::move(arcs));
    if (j.contains("labels")) {
        for (const auto& l : j.at("labels")) {
            const int v = l.at("vertex").get<int>();
            const auto kind = l.at("kind").get<std::string>();
            const int k = l.at("index").get<int>();
            if (v < 1 || v > n || k < 1 || (kind != "entry" && kind != "exit")) {
                throw FormatError("bad label record");
            }
            g.set_label(v - 1, BoundaryLabel{kind == "entry" ? VertexKind::Entry : VertexKind::Exit, k - 1});
        }
    }
    return g;
}

PermSet parse_permset_text(std::string_view text) {
    int n = -1;
    std::vector<Perm> elems;
    for_each_line(text, [&](std::string_view body, int line) {
        if (n < 0) {
            if (body.substr(0, 2) != "n=") {
                throw FormatError("line " + std::to_string(line) + ": expected 'n=<degree>'");
            }
            n = to_int(trim(body.substr(2)), line);
            if (n < 1 || n > Perm::kMaxDegree) {
                throw FormatError("line " + std::to_string(line) + ": degree out of range");
            }
            return;
        }
        try {
            elems.push_back(parse_cycles(body, n));
        } catch (const FormatError& e) {
            throw FormatError("line " + std::to_string(line) + ": " + e.what());
        }
    });
    if (n < 0) {
        throw FormatError("missing 'n=<degree>' header");
    }
    return PermSet(n, std::move(elems));
}

std::string format_permset_text(const PermSet& p) {
    std::string out = "n=" + std::to_string(p.degree()) + "\n";
    for (const Perm& x : p) {
        out += format_cycles(x);
        out += '\n';
    }
    return out;
}

PermSet read_permset_file(const std::filesystem::path& path) {
    try {
        return parse_permset_text(read_text_file(path));
    } catch (const FormatError& e) {
        throw FormatError(path.string() + ": " + e.what());
    }
}

} // namespace twodd
