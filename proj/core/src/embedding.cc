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

#include "kbqa/embedding.h"

#include <algorithm>
#include <cmath>

#include "kbqa/error.h"
#include "kbqa/hashing.h"
#include "kbqa/text.h"

namespace kbqa {

Embedding Embedding::Dense(std::vector<double> values) {
  Embedding e;
  e.dense_ = std::move(values);
  double sq = 0.0;
  for (double v : e.dense_) sq += v * v;
  e.norm_ = std::sqrt(sq);
  return e;
}

Embedding Embedding::Sparse(std::vector<std::pair<std::uint64_t, double>> entries) {
  Embedding e;
  e.sparse_ = true;
  std::sort(entries.begin(), entries.end());
  for (const auto& [k, v] : entries) {
    if (!e.entries_.empty() && e.entries_.back().first == k) {
      e.entries_.back().second += v;
    } else {
      e.entries_.emplace_back(k, v);
    }
  }
  double sq = 0.0;
  for (const auto& kv : e.entries_) sq += kv.second * kv.second;
  e.norm_ = std::sqrt(sq);
  return e;
}

double Similarity(const Embedding& a, const Embedding& b) {
  if (a.sparse_ != b.sparse_) {
    throw Error(ErrorCode::kInvalidArgument, "cannot compare dense and sparse embeddings");
  }
  if (a.norm_ == 0.0 || b.norm_ == 0.0) return 0.0;
  double dot = 0.0;
  if (a.sparse_) {
    if (a.entries_ == b.entries_) return 1.0;
    auto i = a.entries_.begin();
    auto j = b.entries_.begin();
    while (i != a.entries_.end() && j != b.entries_.end()) {
      if (i->first < j->first) {
        ++i;
      } else if (j->first < i->first) {
        ++j;
      } else {
        dot += i->second * j->second;
        ++i;
        ++j;
      }
    }
  } else {
    if (a.dense_.size() != b.dense_.size()) {
      throw Error(ErrorCode::kInvalidArgument, "embedding dimensions differ");
    }
    if (a.dense_ == b.dense_) return 1.0;
    for (std::size_t k = 0; k < a.dense_.size(); ++k) dot += a.dense_[k] * b.dense_[k];
  }
  return std::clamp(dot / (a.norm_ * b.norm_), 0.0, 1.0);
}

Embedding TrigramEmbedder::EmbedOne(std::string_view input) const {
  std::u32string s = text::DecodeUtf8(text::NormalizeAnswer(input));
  if (s.empty()) return Embedding::Sparse({});
  std::u32string padded = U"#" + s + U"#";
  std::vector<std::pair<std::uint64_t, double>> entries;
  entries.reserve(padded.size());
  for (std::size_t i = 0; i + 3 <= padded.size(); ++i) {
    entries.emplace_back(Fnv1a64(text::EncodeUtf8(padded.substr(i, 3))), 1.0);
  }
  return Embedding::Sparse(std::move(entries));
}

std::vector<Embedding> TrigramEmbedder::Embed(const std::vector<std::string>& texts,
                                              std::string_view) const {
  std::vector<Embedding> out;
  out.reserve(texts.size());
  for (const auto& t : texts) out.push_back(EmbedOne(t));
  return out;
}

}  // namespace kbqa
