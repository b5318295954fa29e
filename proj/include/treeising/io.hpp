#ifndef TREEISING_IO_HPP
#define TREEISING_IO_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "treeising/model.hpp"
#include "treeising/sampling.hpp"

namespace treeising {

// Text formats. Model file:
//   n
//   u v w        (n-1 lines)
//   b_i          (n lines)
//   q_i          (n lines, optional; present iff noise is bundled)
// Sample file: "m n" header, then m rows of n entries from {-1,1}.
// Edge list: n-1 lines "u v", u < v, sorted lexicographically.
// Floats are written with enough digits to round-trip bit-exactly.

struct ModelFile {
  IsingModel model;
  std::optional<NoiseSpec> noise;
};

void write_model(std::ostream& os, const IsingModel& model,
                 const std::optional<NoiseSpec>& noise = std::nullopt);
void write_model_file(const std::string& path, const IsingModel& model,
                      const std::optional<NoiseSpec>& noise = std::nullopt);
ModelFile read_model(std::istream& is);
ModelFile read_model_file(const std::string& path);

void write_samples(std::ostream& os, const SampleBatch& batch);
void write_samples_file(const std::string& path, const SampleBatch& batch);
SampleBatch read_samples(std::istream& is);
SampleBatch read_samples_file(const std::string& path);

void write_edges(std::ostream& os,
                 const std::vector<std::pair<int, int>>& edges);
void write_edges_file(const std::string& path,
                      const std::vector<std::pair<int, int>>& edges);
std::vector<std::pair<int, int>> read_edges(std::istream& is);
std::vector<std::pair<int, int>> read_edges_file(const std::string& path);

/// Shortest decimal form that parses back to the same double.
std::string format_double(double v);

}  // namespace treeising

#endif  // TREEISING_IO_HPP
