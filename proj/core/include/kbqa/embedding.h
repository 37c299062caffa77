// Copyright 2026 The kbqa-eval Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef KBQA_EMBEDDING_H_
#define KBQA_EMBEDDING_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace kbqa {

// A dense or sparse vector. Similarity is the cosine of the two vectors,
// clamped to [0, 1]; identical vectors give exactly 1.
class Embedding {
 public:
  static Embedding Dense(std::vector<double> values);
  // Entries need not be sorted or unique; duplicates are summed.
  static Embedding Sparse(std::vector<std::pair<std::uint64_t, double>> entries);

  bool sparse() const { return sparse_; }
  double norm() const { return norm_; }
  std::size_t size() const { return sparse_ ? entries_.size() : dense_.size(); }
  const std::vector<double>& dense() const { return dense_; }

  friend double Similarity(const Embedding& a, const Embedding& b);

 private:
  bool sparse_ = false;
  std::vector<double> dense_;
  std::vector<std::pair<std::uint64_t, double>> entries_;  // sorted by key
  double norm_ = 0.0;
};

double Similarity(const Embedding& a, const Embedding& b);

class Embedder {
 public:
  virtual ~Embedder() = default;
  // Order preserving. Throws Error(kUnavailable) when the backend is down.
  virtual std::vector<Embedding> Embed(const std::vector<std::string>& texts,
                                       std::string_view lang) const = 0;
  virtual std::string id() const = 0;
};

// Hashed character-trigram term-frequency vectors over the normalized
// string padded with '#'. Deterministic and dependency free.
class TrigramEmbedder : public Embedder {
 public:
  std::vector<Embedding> Embed(const std::vector<std::string>& texts,
                               std::string_view lang) const override;
  std::string id() const override { return "trigram"; }
  Embedding EmbedOne(std::string_view text) const;
};

}  // namespace kbqa

#endif  // KBQA_EMBEDDING_H_
