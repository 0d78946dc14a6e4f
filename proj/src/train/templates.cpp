// Copyright 2026 The CCQG Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "common/error.hpp"
#include "common/hash.hpp"
#include "common/text.hpp"
#include "train/train.hpp"

namespace ccqg::train {

// ---- embeddings ---------------------------------------------------------------------------

QuestionEmbedder QuestionEmbedder::internal(std::size_t dim, std::uint64_t seed) {
  if (dim == 0) throw UsageError("question embedding dimension must be >= 1");
  QuestionEmbedder e;
  e.dim_ = dim;
  e.internal_ = true;
  e.seed_ = seed;
  return e;
}

QuestionEmbedder QuestionEmbedder::from_file(const std::filesystem::path& path, std::size_t dim) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open embedding file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str(), dim);
}

QuestionEmbedder QuestionEmbedder::parse(std::string_view text, std::size_t dim) {
  if (dim == 0) throw UsageError("question embedding dimension must be >= 1");
  QuestionEmbedder e;
  e.dim_ = dim;
  e.internal_ = false;

  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line)) throw DataError("embedding file: missing \"count dim\" header");
  auto header = split_whitespace(line);
  std::size_t count = 0;
  std::size_t file_dim = 0;
  try {
    if (header.size() != 2) throw std::invalid_argument("fields");
    std::size_t p1 = 0;
    std::size_t p2 = 0;
    count = std::stoul(header[0], &p1);
    file_dim = std::stoul(header[1], &p2);
    if (p1 != header[0].size() || p2 != header[1].size() || file_dim == 0) throw std::invalid_argument("value");
  } catch (const std::exception&) {
    throw DataError("embedding file: malformed header '" + line + "', expected \"count dim\"");
  }

  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    auto fields = split_whitespace(line);
    if (fields.empty()) continue;
    if (fields.size() != file_dim + 1) {
      throw DataError("embedding file line " + std::to_string(line_no) + ": expected " +
                      std::to_string(file_dim + 1) + " fields, found " + std::to_string(fields.size()));
    }
    std::vector<double> v(dim, 0.0);
    for (std::size_t i = 0; i < std::min(dim, file_dim); ++i) {
      try {
        v[i] = std::stod(fields[i + 1]);
      } catch (const std::exception&) {
        throw DataError("embedding file line " + std::to_string(line_no) + ": bad number '" +
                        fields[i + 1] + "'");
      }
    }
    e.table_.emplace(to_lower(fields[0]), std::move(v));
  }
  if (e.table_.size() > count) {
    throw DataError("embedding file: header announces " + std::to_string(count) + " vectors, found " +
                    std::to_string(e.table_.size()));
  }
  return e;
}

std::vector<double> QuestionEmbedder::token_vector(const std::string& token) const {
  if (internal_) {
    std::mt19937_64 rng(mix_seed(seed_, token));
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::vector<double> v(dim_);
    for (double& x : v) x = unit(rng);
    return v;
  }
  if (auto it = table_.find(token); it != table_.end()) return it->second;
  return std::vector<double>(dim_, 0.0);
}

std::vector<double> QuestionEmbedder::embed(const std::vector<std::string>& tokens) const {
  std::vector<double> mean(dim_, 0.0);
  if (tokens.empty()) return mean;
  for (const auto& t : tokens) {
    auto v = token_vector(t);
    for (std::size_t i = 0; i < dim_; ++i) mean[i] += v[i];
  }
  for (double& x : mean) x /= static_cast<double>(tokens.size());
  return mean;
}

std::vector<std::vector<double>> embed_questions(const std::vector<std::vector<std::string>>& questions,
                                                 const QuestionEmbedder& embedder) {
  std::vector<std::vector<double>> out;
  out.reserve(questions.size());
  for (const auto& q : questions) out.push_back(embedder.embed(q));
  return out;
}

QuestionEmbedder make_embedder(const TrainConfig& config, std::size_t dim) {
  if (config.embedding_source == EmbeddingSource::File) {
    if (config.embedding_file.empty()) throw UsageError("missing config key 'embeddings' for embedding_source=file");
    return QuestionEmbedder::from_file(config.embedding_file, dim);
  }
  return QuestionEmbedder::internal(dim, config.seed);
}

// ---- k-means ------------------------------------------------------------------------------------

double squared_distance(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d += (a[i] - b[i]) * (a[i] - b[i]);
  return d;
}

double wcss(const Points& points, const Points& centroids, const std::vector<std::size_t>& assignment) {
  double total = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) total += squared_distance(points[i], centroids[assignment[i]]);
  return total;
}

namespace {

std::size_t nearest(const std::vector<double>& point, const Points& centroids) {
  std::size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < centroids.size(); ++c) {
    const double d = squared_distance(point, centroids[c]);
    if (d < best_d) {
      best_d = d;
      best = c;
    }
  }
  return best;
}

void check_points(const Points& points, std::size_t k) {
  if (points.empty()) throw UsageError("kmeans: no points");
  if (k == 0) throw UsageError("kmeans: k must be >= 1");
  if (k > points.size()) {
    throw DataError("kmeans: k = " + std::to_string(k) + " exceeds " + std::to_string(points.size()) + " points");
  }
  for (const auto& p : points) {
    if (p.size() != points.front().size()) throw UsageError("kmeans: points differ in dimension");
  }
}

}  // namespace

Points kmeans_plus_plus(const Points& points, std::size_t k, std::mt19937_64& rng) {
  check_points(points, k);
  Points centroids;
  centroids.push_back(points[std::uniform_int_distribution<std::size_t>(0, points.size() - 1)(rng)]);
  std::vector<double> dist(points.size());
  while (centroids.size() < k) {
    double total = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& c : centroids) best = std::min(best, squared_distance(points[i], c));
      dist[i] = best;
      total += best;
    }
    std::size_t pick = 0;
    if (total > 0.0) {
      double r = std::uniform_real_distribution<double>(0.0, total)(rng);
      pick = points.size() - 1;
      for (std::size_t i = 0; i < points.size(); ++i) {
        if (r < dist[i]) {
          pick = i;
          break;
        }
        r -= dist[i];
      }
    } else {
      pick = std::uniform_int_distribution<std::size_t>(0, points.size() - 1)(rng);
    }
    centroids.push_back(points[pick]);
  }
  return centroids;
}

KMeansResult lloyd(const Points& points, Points centroids, std::size_t max_iter) {
  check_points(points, centroids.size());
  const std::size_t k = centroids.size();
  const std::size_t dim = points.front().size();
  KMeansResult r;
  r.assignment.assign(points.size(), k);

  for (std::size_t iter = 0; iter < max_iter; ++iter) {
    bool changed = false;
    for (std::size_t i = 0; i < points.size(); ++i) {
      const std::size_t c = nearest(points[i], centroids);
      if (c != r.assignment[i]) {
        r.assignment[i] = c;
        changed = true;
      }
    }
    r.iterations = iter + 1;
    if (!changed && iter > 0) break;

    std::vector<std::size_t> counts(k, 0);
    Points sums(k, std::vector<double>(dim, 0.0));
    for (std::size_t i = 0; i < points.size(); ++i) {
      ++counts[r.assignment[i]];
      for (std::size_t j = 0; j < dim; ++j) sums[r.assignment[i]][j] += points[i][j];
    }
    for (std::size_t c = 0; c < k; ++c) {
      if (counts[c] == 0) continue;
      for (std::size_t j = 0; j < dim; ++j) centroids[c][j] = sums[c][j] / static_cast<double>(counts[c]);
    }
    for (std::size_t c = 0; c < k; ++c) {
      if (counts[c] != 0) continue;
      std::size_t far = 0;
      double far_d = -1.0;
      for (std::size_t i = 0; i < points.size(); ++i) {
        const double d = squared_distance(points[i], centroids[r.assignment[i]]);
        if (d > far_d) {
          far_d = d;
          far = i;
        }
      }
      if (far_d <= 0.0) continue;  // every point already sits on a centroid
      --counts[r.assignment[far]];
      centroids[c] = points[far];
      r.assignment[far] = c;
      counts[c] = 1;
    }
    r.wcss_history.push_back(wcss(points, centroids, r.assignment));
  }
  for (std::size_t i = 0; i < points.size(); ++i) r.assignment[i] = nearest(points[i], centroids);
  r.centroids = std::move(centroids);
  r.wcss = wcss(points, r.centroids, r.assignment);
  return r;
}

KMeansResult kmeans(const Points& points, std::size_t k, std::uint64_t seed, std::size_t restarts,
                    std::size_t max_iter) {
  check_points(points, k);
  std::mt19937_64 rng(seed);
  KMeansResult best;
  bool have = false;
  for (std::size_t run = 0; run < std::max<std::size_t>(1, restarts); ++run) {
    KMeansResult r = lloyd(points, kmeans_plus_plus(points, k, rng), max_iter);
    if (!have || r.wcss < best.wcss) {
      best = std::move(r);
      have = true;
    }
  }
  return best;
}

// ---- template banks ---------------------------------------------------------------------

std::vector<std::vector<double>> init_template_bank(const std::vector<TrainingExample>& examples,
                                                    ComplexityLabel level, std::size_t n_pi,
                                                    const QuestionEmbedder& embedder,
                                                    const TrainConfig& config) {
  std::vector<std::vector<std::string>> questions;
  for (const auto& e : examples) {
    if (e.level == level) questions.push_back(e.question);
  }
  if (questions.empty()) {
    throw DataError("no " + std::string(label_name(level)) + " questions to initialize the template bank");
  }
  Points points = embed_questions(questions, embedder);
  std::mt19937_64 rng(mix_seed(config.seed, "template-padding:" + std::string(label_name(level))));
  std::normal_distribution<double> jitter(0.0, 1e-3);
  const std::size_t original = points.size();
  for (std::size_t i = 0; points.size() < n_pi; ++i) {
    auto copy = points[i % original];
    for (double& x : copy) x += jitter(rng);
    points.push_back(std::move(copy));
  }
  const std::uint64_t seed = mix_seed(config.seed, "kmeans:" + std::string(label_name(level)));
  return kmeans(points, n_pi, seed, config.kmeans_restarts, config.kmeans_max_iter).centroids;
}

void init_template_banks(model::CcqgModel& model, const std::vector<TrainingExample>& examples,
                         const TrainConfig& config) {
  const auto& mc = model.config();
  QuestionEmbedder embedder = make_embedder(config, mc.dim_template);
  for (ComplexityLabel level : {ComplexityLabel::Simple, ComplexityLabel::Complex}) {
    model.set_template_bank(level, init_template_bank(examples, level, mc.n_pi, embedder, config));
  }
}

}  // namespace ccqg::train
