#include "asub/parser_io.hpp"

#include <cctype>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

namespace asub {

SyntaxError::SyntaxError(std::size_t l, std::size_t c, const std::string& msg)
    : std::runtime_error(std::to_string(l) + ":" + std::to_string(c) + ": " + msg), line(l), col(c), message(msg) {}

namespace {

struct Token {
    std::string text;
    std::size_t col;
};

bool is_ident(std::string_view s) {
    if (s.empty()) return false;
    for (char ch : s)
        if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '_') return false;
    return true;
}

std::vector<Token> tokenize(std::string_view line) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        if (line[i] == '#') break;
        if (std::isspace(static_cast<unsigned char>(line[i]))) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j])) && line[j] != '#') ++j;
        out.push_back({std::string(line.substr(i, j - i)), i + 1});
        i = j;
    }
    return out;
}

}  // namespace

std::vector<MachineDescription> parse_descriptions(std::string_view text) {
    std::vector<MachineDescription> out;
    std::size_t header_line = 0;
    auto finish = [&] {
        if (!out.empty() && out.back().initial.empty())
            throw SyntaxError(header_line, 1, "machine " + out.back().name + " has no initial line");
    };

    std::size_t lineno = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        pos = end + 1;
        ++lineno;

        const auto toks = tokenize(line);
        if (toks.empty()) continue;
        auto expect_ident = [&](const Token& t, const char* what) {
            if (!is_ident(t.text)) throw SyntaxError(lineno, t.col, std::string("invalid ") + what + " '" + t.text + "'");
        };
        const std::string& head = toks[0].text;
        if (head == "machine") {
            if (toks.size() != 2) throw SyntaxError(lineno, toks[0].col, "expected 'machine <name>'");
            expect_ident(toks[1], "machine name");
            finish();
            out.push_back({toks[1].text});
            header_line = lineno;
            continue;
        }
        if (out.empty()) throw SyntaxError(lineno, toks[0].col, "expected 'machine <name>' header");
        MachineDescription& m = out.back();
        if (head == "initial") {
            if (toks.size() != 2) throw SyntaxError(lineno, toks[0].col, "expected 'initial <state>'");
            expect_ident(toks[1], "state");
            if (!m.initial.empty()) throw SyntaxError(lineno, toks[0].col, "second initial line");
            m.initial = toks[1].text;
            continue;
        }
        if (toks.size() != 4)
            throw SyntaxError(lineno, toks[0].col, "expected '<state> ! <msg> <state>' or '<state> ? <msg> <state>'");
        expect_ident(toks[0], "state");
        if (toks[1].text != "!" && toks[1].text != "?")
            throw SyntaxError(lineno, toks[1].col, "expected '!' or '?', found '" + toks[1].text + "'");
        expect_ident(toks[2], "message");
        expect_ident(toks[3], "state");
        const Action a = toks[1].text == "!" ? Action::send(toks[2].text) : Action::recv(toks[2].text);
        m.edges.push_back({toks[0].text, a, toks[3].text});
    }
    finish();
    if (out.empty()) throw SyntaxError(lineno, 1, "no machine found");
    return out;
}

std::vector<Machine> parse_machines(std::string_view text) {
    std::vector<Machine> out;
    for (const auto& d : parse_descriptions(text)) out.push_back(Machine::validate(d));
    return out;
}

Machine parse_machine(std::string_view text) {
    auto ms = parse_machines(text);
    if (ms.size() != 1)
        throw SyntaxError(1, 1, "expected one machine, found " + std::to_string(ms.size()));
    return std::move(ms.front());
}

std::vector<Machine> load_machines(const std::filesystem::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + file.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    try {
        return parse_machines(ss.str());
    } catch (const SyntaxError& e) {
        throw SyntaxError(e.line, e.col, e.message + " in " + file.string());
    }
}

std::string serialize(const Machine& m) {
    std::string out = "machine " + (m.name().empty() ? std::string("m") : m.name()) + "\n";
    out += "initial " + m.state_name(m.initial()) + "\n";
    for (StateId q = 0; q < m.state_count(); ++q)
        for (const Transition& t : m.transitions(q))
            out += m.state_name(q) + (t.action.dir == Direction::Send ? " ! " : " ? ") +
                   t.action.msg.str() + " " + m.state_name(t.to) + "\n";
    return out;
}

// ---- DOT ----

namespace {

std::string quote(const std::string& s) {
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"' || ch == '\\') out += '\\';
        out += ch;
    }
    return out + "\"";
}

std::string node_attrs(const DirectionReport& r, NodeId n) {
    const SimNode& node = r.tree[n];
    std::string a = "label=" + quote(r.label(n)) + ", xlabel=" + quote("n" + std::to_string(n));
    if (n == 0) a += ", penwidth=2";
    switch (node.status) {
        case NodeStatus::LabelRepeat:
        case NodeStatus::Growth: a += ", peripheries=2"; break;
        case NodeStatus::FailureLeaf: a += ", color=red"; break;
        case NodeStatus::SuccessfulLeaf: a += ", color=darkgreen"; break;
        case NodeStatus::Unexpanded: a += ", style=dotted"; break;
        case NodeStatus::Interior: break;
    }
    return a;
}

void emit_nodes(std::ostringstream& out, const DirectionReport& r, const std::vector<NodeId>& nodes,
                const std::string& indent) {
    const std::set<NodeId> inside(nodes.begin(), nodes.end());
    for (NodeId n : nodes) out << indent << "n" << n << " [" << node_attrs(r, n) << "];\n";
    for (NodeId n : nodes)
        for (auto [a, child] : r.tree[n].children)
            if (inside.count(child))
                out << indent << "n" << n << " -> n" << child << " [label=" << quote(to_string(a)) << "];\n";
    for (NodeId n : nodes)
        if (auto it = r.anc.find(n); it != r.anc.end() && inside.count(it->second))
            out << indent << "n" << n << " -> n" << it->second << " [style=dashed, constraint=false];\n";
}

}  // namespace

std::string tree_to_dot(const DirectionReport& r) {
    std::ostringstream out;
    out << "digraph simulation_tree {\n  node [shape=ellipse, fontname=\"monospace\"];\n";
    std::vector<NodeId> all(r.tree.size());
    for (NodeId n = 0; n < all.size(); ++n) all[n] = n;
    emit_nodes(out, r, all, "  ");
    out << "}\n";
    return out.str();
}

std::string candidates_to_dot(const DirectionReport& r) {
    std::ostringstream out;
    out << "digraph candidates {\n";
    if (!r.extraction.candidates.empty()) out << "  node [shape=ellipse, fontname=\"monospace\"];\n";
    for (std::size_t i = 0; i < r.extraction.candidates.size(); ++i) {
        const auto& c = r.extraction.candidates[i];
        out << "  subgraph cluster_" << i << " {\n    label=" << quote("candidate rooted at n" + std::to_string(c.root))
            << ";\n";
        emit_nodes(out, r, c.nodes, "    ");
        out << "  }\n";
    }
    out << "}\n";
    return out.str();
}

std::string system_to_dot(const EquationSystem& s, const std::string& graph_name) {
    std::ostringstream out;
    out << "digraph " << quote(graph_name) << " {\n  node [fontname=\"monospace\"];\n";
    std::set<ExprId> emitted;
    auto shape = [&](ExprId e) {
        switch (s.expr(e).kind) {
            case ExprKind::SilentChoice: return "diamond";
            case ExprKind::InputChoice: return "box";
            case ExprKind::Var: return "ellipse";
        }
        return "ellipse";
    };
    // Emits the node standing for expression e (named `id`) and its edges.
    std::function<void(const std::string&, ExprId)> body;
    auto target = [&](ExprId e) -> std::string {
        const Expr& ex = s.expr(e);
        if (ex.kind == ExprKind::Var) return "v" + std::to_string(ex.var);
        const std::string id = "e" + std::to_string(e);
        if (emitted.insert(e).second) {
            out << "  " << id << " [label=\"\", shape=" << shape(e) << "];\n";
            body(id, e);
        }
        return id;
    };
    body = [&](const std::string& id, ExprId e) {
        const Expr& ex = s.expr(e);
        if (ex.kind == ExprKind::Var) {
            out << "  " << id << " -> v" << ex.var << " [style=dotted];\n";
        } else if (ex.kind == ExprKind::InputChoice) {
            for (auto [a, c] : ex.branches) {
                const std::string t = target(c);
                out << "  " << id << " -> " << t << " [label=" << quote(a.str()) << "];\n";
            }
        } else {
            for (ExprId c : ex.options) {
                const std::string t = target(c);
                out << "  " << id << " -> " << t << ";\n";
            }
        }
    };
    for (VarId x = 0; x < s.var_count(); ++x) {
        auto d = s.definition(x);
        out << "  v" << x << " [label=" << quote(s.name(x)) << ", shape=" << (d ? shape(*d) : "ellipse")
            << (x == s.start ? ", penwidth=2" : "") << "];\n";
    }
    for (VarId x = 0; x < s.var_count(); ++x)
        if (auto d = s.definition(x)) body("v" + std::to_string(x), *d);
    out << "}\n";
    return out.str();
}

}  // namespace asub
