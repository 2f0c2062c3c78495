#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mcs/graph.hpp"

namespace mcs {

class ParseError : public GraphError {
public:
    explicit ParseError(const std::string& what) : GraphError(what) {}
};

// MIVIA ARG binary layout, all integers unsigned 16-bit little-endian:
// node count n, then for each node i: edge count k_i followed by k_i targets.
// The loader accepts any valid stream; the writer emits the canonical form
// (targets ascending, each undirected edge listed from both endpoints), so
// load(save(g)) and save(load(canonical bytes)) round-trip bit-exactly.
Graph load_mivia(const std::vector<std::uint8_t>& bytes);
std::vector<std::uint8_t> save_mivia(const Graph& g);

// Text format:
//   n [directed] [labeled]
//   v label            (n lines when labeled)
//   u v [code]         (code in 1..3, directed only; defaults to 1)
Graph load_text(const std::string& text);
std::string save_text(const Graph& g);

enum class FileFormat { mivia, text, auto_detect };

Graph load_graph_file(const std::string& path, FileFormat format = FileFormat::auto_detect);
void save_graph_file(const Graph& g, const std::string& path, FileFormat format);

}  // namespace mcs
