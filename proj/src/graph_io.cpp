#include "mcs/graph_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace mcs {

namespace {

class ByteReader {
public:
    explicit ByteReader(const std::vector<std::uint8_t>& bytes) : bytes_(bytes) {}

    std::uint16_t u16() {
        if (pos_ + 2 > bytes_.size()) throw ParseError("truncated MIVIA stream");
        std::uint16_t lo = bytes_[pos_], hi = bytes_[pos_ + 1];
        pos_ += 2;
        return static_cast<std::uint16_t>(lo | (hi << 8));
    }
    bool exhausted() const { return pos_ == bytes_.size(); }

private:
    const std::vector<std::uint8_t>& bytes_;
    std::size_t pos_ = 0;
};

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
    out.push_back(static_cast<std::uint8_t>(v & 0xff));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
}

}  // namespace

Graph load_mivia(const std::vector<std::uint8_t>& bytes) {
    ByteReader r(bytes);
    int n = r.u16();
    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i) {
        int k = r.u16();
        for (int j = 0; j < k; ++j) {
            int t = r.u16();
            if (t >= n)
                throw ParseError("target id " + std::to_string(t) + " >= n=" + std::to_string(n));
            if (t == i) throw ParseError("self-loop on vertex " + std::to_string(i));
            if (i < t) edges.push_back({i, t});
            else edges.push_back({t, i});
        }
    }
    if (!r.exhausted()) throw ParseError("trailing bytes after MIVIA graph");
    return from_edge_list(n, edges, GraphKind::undirected);
}

std::vector<std::uint8_t> save_mivia(const Graph& g) {
    if (g.directed()) throw GraphError("MIVIA writer supports undirected graphs only");
    if (g.n() > 0xffff) throw GraphError("graph too large for 16-bit MIVIA format");
    std::vector<std::uint8_t> out;
    put_u16(out, static_cast<std::uint16_t>(g.n()));
    for (int i = 0; i < g.n(); ++i) {
        std::vector<int> targets;
        for (int t = 0; t < g.n(); ++t)
            if (g.adjacent(i, t)) targets.push_back(t);
        put_u16(out, static_cast<std::uint16_t>(targets.size()));
        for (int t : targets) put_u16(out, static_cast<std::uint16_t>(t));
    }
    return out;
}

Graph load_text(const std::string& text) {
    std::istringstream in(text);
    std::string header;
    while (std::getline(in, header)) {
        if (header.find_first_not_of(" \t\r") != std::string::npos) break;
    }
    std::istringstream hl(header);
    int n;
    if (!(hl >> n)) throw ParseError("text graph: missing vertex count");
    GraphKind kind = GraphKind::undirected;
    bool labeled = false;
    std::string word;
    while (hl >> word) {
        if (word == "directed") kind = GraphKind::directed;
        else if (word == "labeled") labeled = true;
        else throw ParseError("text graph: unknown header word '" + word + "'");
    }

    std::optional<std::vector<int>> labels;
    if (labeled) {
        labels.emplace(n, -1);
        for (int i = 0; i < n; ++i) {
            int v, lab;
            if (!(in >> v >> lab)) throw ParseError("text graph: missing label line");
            if (v < 0 || v >= n) throw ParseError("text graph: label vertex out of range");
            (*labels)[v] = lab;
        }
        for (int v = 0; v < n; ++v)
            if ((*labels)[v] < 0)
                throw ParseError("text graph: vertex " + std::to_string(v) + " has no label");
    }

    std::vector<Edge> edges;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream el(line);
        int u, v;
        if (!(el >> u)) {
            if (line.find_first_not_of(" \t\r") != std::string::npos)
                throw ParseError("text graph: malformed edge line '" + line + "'");
            continue;  // blank line
        }
        if (!(el >> v)) throw ParseError("text graph: malformed edge line '" + line + "'");
        int code = 1;
        el >> code;
        if (code < 1 || code > 3) throw ParseError("text graph: edge code out of range");
        edges.push_back({u, v, static_cast<EdgeCode>(code)});
    }
    return from_edge_list(n, edges, kind, std::move(labels));
}

std::string save_text(const Graph& g) {
    std::ostringstream out;
    out << g.n();
    if (g.directed()) out << " directed";
    if (g.labeled()) out << " labeled";
    out << "\n";
    if (g.labeled())
        for (int v = 0; v < g.n(); ++v) out << v << " " << g.label(v) << "\n";
    for (int u = 0; u < g.n(); ++u)
        for (int v = u + 1; v < g.n(); ++v) {
            std::uint8_t c = g.code(u, v);
            if (c == 0) continue;
            out << u << " " << v;
            if (g.directed()) out << " " << int(c);
            out << "\n";
        }
    return out.str();
}

Graph load_graph_file(const std::string& path, FileFormat format) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path + "'");
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    if (format == FileFormat::auto_detect) {
        // Text files start with an ASCII digit of the vertex count.
        bool ascii = !bytes.empty() && bytes[0] >= '0' && bytes[0] <= '9';
        format = ascii ? FileFormat::text : FileFormat::mivia;
    }
    if (format == FileFormat::text) return load_text(std::string(bytes.begin(), bytes.end()));
    return load_mivia(bytes);
}

void save_graph_file(const Graph& g, const std::string& path, FileFormat format) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw GraphError("cannot write '" + path + "'");
    if (format == FileFormat::text) {
        std::string s = save_text(g);
        out.write(s.data(), static_cast<std::streamsize>(s.size()));
    } else {
        auto bytes = save_mivia(g);
        out.write(reinterpret_cast<const char*>(bytes.data()),
                  static_cast<std::streamsize>(bytes.size()));
    }
}

}  // namespace mcs
