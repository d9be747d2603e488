#include "spreadgram/text_io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace spreadgram {

std::string format_double(double x) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

void write_embeddings(std::ostream& out, const Graph& g,
                      const EmbeddingTable& emb) {
  out << g.node_count << ' ' << emb.dimension << '\n';
  for (NodeId v = 0; v < g.node_count; ++v) {
    out << g.labels[v];
    for (double x : emb.row(v)) out << ' ' << format_double(x);
    out << '\n';
  }
}

EmbeddingTable read_embeddings(std::istream& in, const Graph& g) {
  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error("embedding file: missing header");
  std::istringstream header(line);
  std::uint32_t count = 0, dim = 0;
  if (!(header >> count >> dim))
    throw std::runtime_error("embedding file: bad header");
  if (count != g.node_count)
    throw std::runtime_error("embedding file holds " + std::to_string(count) +
                             " nodes but the graph has " +
                             std::to_string(g.node_count));
  EmbeddingTable emb = EmbeddingTable::zeros(count, dim);
  std::vector<std::uint8_t> seen(count, 0);
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string label;
    ss >> label;
    auto it = g.label_ids.find(label);
    if (it == g.label_ids.end())
      throw std::runtime_error("embedding file line " +
                               std::to_string(lineno) + ": unknown node '" +
                               label + "'");
    auto row = emb.row(it->second);
    for (std::uint32_t j = 0; j < dim; ++j) {
      if (!(ss >> row[j]))
        throw std::runtime_error("embedding file line " +
                                 std::to_string(lineno) + ": expected " +
                                 std::to_string(dim) + " values");
    }
    seen[it->second] = 1;
  }
  std::string missing;
  for (NodeId v = 0; v < count; ++v) {
    if (!seen[v]) missing += (missing.empty() ? "'" : ", '") + g.labels[v] + "'";
  }
  if (!missing.empty())
    throw std::runtime_error("embedding file: missing nodes " + missing);
  return emb;
}

void write_matrices(std::ostream& out, const Graph& g,
                    const MappingMatrices& maps) {
  out << maps.type_count << ' ' << maps.dimension << '\n';
  for (std::uint16_t t = 0; t < maps.type_count; ++t) {
    out << g.type_names[t] << '\n';
    auto mat = maps.matrix(t);
    for (std::uint32_t i = 0; i < maps.dimension; ++i) {
      for (std::uint32_t j = 0; j < maps.dimension; ++j)
        out << (j ? " " : "") << format_double(mat[i * maps.dimension + j]);
      out << '\n';
    }
  }
}

MappingMatrices read_matrices(std::istream& in, const Graph& g) {
  std::uint32_t types = 0, dim = 0;
  if (!(in >> types >> dim))
    throw std::runtime_error("matrix file: bad header");
  if (types != g.type_count)
    throw std::runtime_error("matrix file holds " + std::to_string(types) +
                             " types but the graph has " +
                             std::to_string(g.type_count));
  MappingMatrices maps;
  maps.dimension = dim;
  maps.type_count = static_cast<std::uint16_t>(types);
  maps.data.assign(static_cast<std::size_t>(types) * dim * dim, 0.0);
  std::string name;
  for (std::uint32_t t = 0; t < types; ++t) {
    if (!(in >> name))
      throw std::runtime_error("matrix file: missing type name");
    if (name != g.type_names[t])
      throw std::runtime_error("matrix file type '" + name +
                               "' does not match graph type '" +
                               g.type_names[t] + "'");
    auto mat = maps.matrix(static_cast<std::uint16_t>(t));
    for (std::size_t i = 0; i < static_cast<std::size_t>(dim) * dim; ++i) {
      if (!(in >> mat[i]))
        throw std::runtime_error("matrix file: truncated matrix for type '" +
                                 name + "'");
    }
  }
  return maps;
}

void write_embeddings_file(const std::string& path, const Graph& g,
                           const EmbeddingTable& emb) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  write_embeddings(out, g, emb);
  if (!out) throw std::runtime_error("write failed: " + path);
}

EmbeddingTable read_embeddings_file(const std::string& path, const Graph& g) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_embeddings(in, g);
}

void write_matrices_file(const std::string& path, const Graph& g,
                         const MappingMatrices& maps) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  write_matrices(out, g, maps);
  if (!out) throw std::runtime_error("write failed: " + path);
}

MappingMatrices read_matrices_file(const std::string& path, const Graph& g) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_matrices(in, g);
}

}  // namespace spreadgram
