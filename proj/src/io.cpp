#include "treeising/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "treeising/errors.hpp"

namespace treeising {

std::string format_double(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

namespace {

std::ifstream open_in(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw parse_error("cannot open " + path);
  return f;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw parse_error("cannot write " + path);
  return f;
}

template <typename T>
T next(std::istream& is, const char* what) {
  T v;
  if (!(is >> v)) throw parse_error(std::string("expected ") + what);
  return v;
}

}  // namespace

void write_model(std::ostream& os, const IsingModel& model,
                 const std::optional<NoiseSpec>& noise) {
  os << model.n() << '\n';
  const auto& edges = model.tree().edges();
  for (std::size_t k = 0; k < edges.size(); ++k) {
    os << edges[k].first << ' ' << edges[k].second << ' '
       << format_double(model.weight(static_cast<int>(k))) << '\n';
  }
  for (int v = 0; v < model.n(); ++v) os << format_double(model.bias(v)) << '\n';
  if (noise) {
    for (int v = 0; v < model.n(); ++v)
      os << format_double(noise->q(v)) << '\n';
  }
}

void write_model_file(const std::string& path, const IsingModel& model,
                      const std::optional<NoiseSpec>& noise) {
  auto f = open_out(path);
  write_model(f, model, noise);
}

ModelFile read_model(std::istream& is) {
  const int n = next<int>(is, "node count");
  if (n < 1) throw parse_error("node count must be positive");
  std::vector<std::pair<int, int>> edges;
  std::vector<double> weights;
  for (int k = 0; k < n - 1; ++k) {
    int u = next<int>(is, "edge endpoint");
    int v = next<int>(is, "edge endpoint");
    weights.push_back(next<double>(is, "edge weight"));
    edges.emplace_back(u, v);
  }
  std::vector<double> biases;
  for (int v = 0; v < n; ++v) biases.push_back(next<double>(is, "bias"));

  std::vector<double> q;
  double value;
  while (is >> value) q.push_back(value);
  if (!q.empty() && static_cast<int>(q.size()) != n)
    throw parse_error("noise block must hold exactly n values");

  ModelFile out{IsingModel(TreeGraph(n, std::move(edges)), std::move(weights),
                           std::move(biases)),
                std::nullopt};
  if (!q.empty()) out.noise = NoiseSpec(std::move(q));
  return out;
}

ModelFile read_model_file(const std::string& path) {
  auto f = open_in(path);
  return read_model(f);
}

void write_samples(std::ostream& os, const SampleBatch& batch) {
  os << batch.m() << ' ' << batch.n() << '\n';
  for (int k = 0; k < batch.m(); ++k) {
    for (int v = 0; v < batch.n(); ++v) {
      if (v) os << ' ';
      os << int(batch.at(k, v));
    }
    os << '\n';
  }
}

void write_samples_file(const std::string& path, const SampleBatch& batch) {
  auto f = open_out(path);
  write_samples(f, batch);
}

SampleBatch read_samples(std::istream& is) {
  const int m = next<int>(is, "sample count");
  const int n = next<int>(is, "node count");
  if (m < 1 || n < 1) throw parse_error("bad sample header");
  std::vector<std::int8_t> values;
  values.reserve(static_cast<std::size_t>(m) * n);
  for (long long k = 0; k < static_cast<long long>(m) * n; ++k) {
    int v = next<int>(is, "sample entry");
    if (v != 1 && v != -1) throw parse_error("sample entries must be -1 or 1");
    values.push_back(static_cast<std::int8_t>(v));
  }
  return SampleBatch(m, n, std::move(values));
}

SampleBatch read_samples_file(const std::string& path) {
  auto f = open_in(path);
  return read_samples(f);
}

void write_edges(std::ostream& os,
                 const std::vector<std::pair<int, int>>& edges) {
  for (const auto& [u, v] : edges) os << u << ' ' << v << '\n';
}

void write_edges_file(const std::string& path,
                      const std::vector<std::pair<int, int>>& edges) {
  auto f = open_out(path);
  write_edges(f, edges);
}

std::vector<std::pair<int, int>> read_edges(std::istream& is) {
  std::vector<std::pair<int, int>> out;
  int u, v;
  while (is >> u >> v) out.emplace_back(u, v);
  return out;
}

std::vector<std::pair<int, int>> read_edges_file(const std::string& path) {
  auto f = open_in(path);
  return read_edges(f);
}

}  // namespace treeising
