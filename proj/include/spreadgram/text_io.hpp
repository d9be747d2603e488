#pragma once

#include <iosfwd>
#include <string>

#include "spreadgram/embedding.hpp"
#include "spreadgram/graph.hpp"
#include "spreadgram/hetero.hpp"

namespace spreadgram {

// Embedding text format: first line `<node_count> <dimension>`, then one
// line per node: `label v1 ... vd` at full round-trip precision.
void write_embeddings(std::ostream& out, const Graph& g,
                      const EmbeddingTable& emb);
EmbeddingTable read_embeddings(std::istream& in, const Graph& g);

void write_embeddings_file(const std::string& path, const Graph& g,
                           const EmbeddingTable& emb);
EmbeddingTable read_embeddings_file(const std::string& path, const Graph& g);

// Matrix text format: header `<type_count> <dimension>`, then per type a
// name line followed by d rows of d values.
void write_matrices(std::ostream& out, const Graph& g,
                    const MappingMatrices& maps);
MappingMatrices read_matrices(std::istream& in, const Graph& g);

void write_matrices_file(const std::string& path, const Graph& g,
                         const MappingMatrices& maps);
MappingMatrices read_matrices_file(const std::string& path, const Graph& g);

// Shortest-round-trip decimal rendering of a double (printf %.17g with a
// check that fewer digits reparse exactly).
std::string format_double(double x);

}  // namespace spreadgram
