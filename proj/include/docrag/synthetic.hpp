// Copyright 2026 The docrag Authors.
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

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "docrag/layout.hpp"
#include "json.hpp"

namespace docrag {

enum class ElementRole { kHeader, kFooter, kBody };

// Parameters of a generated test document. The on-disk spec file carries
// {pages, seed, header_y, footer_y, body_elements_per_page}; everything
// else is optional and defaults as below.
struct SyntheticSpec {
  std::string doc_id = "synthetic";
  std::size_t pages = 1;
  std::uint64_t seed = 0;
  // Normalized vertical centers of the furniture; absent means none.
  std::optional<double> header_y = 0.04;
  std::optional<double> footer_y = 0.96;
  std::size_t body_elements_per_page = 4;
  double page_width = 612;
  double page_height = 792;
  std::string header_text = "Technical Reference Manual";
  // Alternate header alignment on odd/even pages, as in bound books.
  bool mirrored_header = false;
  // Every n-th page (1-based count) receives one image / table; 0 disables.
  std::size_t image_every = 0;
  std::size_t table_every = 0;
};

struct SyntheticDocument {
  SourceDocument doc;
  // labels[p][e] is the role of doc.pages[p].elements[e].
  std::vector<std::vector<ElementRole>> labels;
};

SyntheticDocument build_synthetic_document(const SyntheticSpec& spec);

SyntheticSpec synthetic_spec_from_json(const nlohmann::json& j,
                                       const std::string& default_doc_id);
nlohmann::ordered_json to_json(const SyntheticSpec& spec);

}  // namespace docrag
