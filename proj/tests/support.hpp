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

// Shared fixtures and independent oracles for unit and acceptance tests.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "docrag/error.hpp"
#include "docrag/kernels.hpp"
#include "docrag/markdown.hpp"
#include "docrag/media.hpp"
#include "docrag/rng.hpp"
#include "docrag/synthetic.hpp"

namespace docrag::testing {

class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static std::uint64_t counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("docrag-" + tag + "-" + std::to_string(::getpid()) + "-" +
             std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::filesystem::path& p, const std::string& s) {
  std::ofstream out(p, std::ios::binary);
  out << s;
}

// Brute-force density-connectivity oracle. Clusters are connected components
// of the core graph, numbered by their smallest core index; a border point
// takes the smallest-numbered cluster among its core neighbours.
inline std::vector<int> dbscan_oracle(const std::vector<kernels::Point2>& pts, double eps,
                                      std::size_t min_samples) {
  const std::size_t n = pts.size();
  std::vector<std::vector<bool>> adj(n, std::vector<bool>(n));
  std::vector<std::size_t> degree(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double dx = pts[i].x - pts[j].x, dy = pts[i].y - pts[j].y;
      adj[i][j] = dx * dx + dy * dy <= eps * eps;
      degree[i] += adj[i][j];
    }
  }
  std::vector<bool> core(n);
  for (std::size_t i = 0; i < n; ++i) core[i] = degree[i] >= min_samples;

  std::vector<std::size_t> comp(n);
  std::iota(comp.begin(), comp.end(), 0);
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (core[i] && core[j] && adj[i][j] && comp[j] < comp[i]) {
          comp[i] = comp[j];
          changed = true;
        }
      }
    }
  }
  std::map<std::size_t, int> number;
  for (std::size_t i = 0; i < n; ++i) {
    if (core[i] && !number.count(comp[i])) {
      const int next = static_cast<int>(number.size());
      number[comp[i]] = next;
    }
  }
  std::vector<int> labels(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    if (core[i]) {
      labels[i] = number[comp[i]];
      continue;
    }
    int best = -1;
    for (std::size_t j = 0; j < n; ++j) {
      if (core[j] && adj[i][j]) {
        const int c = number[comp[j]];
        if (best < 0 || c < best) best = c;
      }
    }
    labels[i] = best;
  }
  return labels;
}

inline bool same_up_to_relabeling(const std::vector<int>& a, const std::vector<int>& b) {
  if (a.size() != b.size()) return false;
  std::map<int, int> fwd, bwd;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if ((a[i] < 0) != (b[i] < 0)) return false;
    if (a[i] < 0) continue;
    auto [f, fi] = fwd.emplace(a[i], b[i]);
    auto [r, ri] = bwd.emplace(b[i], a[i]);
    if (f->second != b[i] || r->second != a[i]) return false;
  }
  return true;
}

inline std::vector<kernels::Point2> random_point_set(Rng& rng, std::size_t n) {
  // A few dense blobs plus uniform background so every label kind occurs.
  std::vector<kernels::Point2> pts;
  const std::size_t blobs = 1 + rng.below(5);
  std::vector<kernels::Point2> centers(blobs);
  for (auto& c : centers) c = {rng.unit(), rng.unit()};
  for (std::size_t i = 0; i < n; ++i) {
    if (rng.below(3) == 0) {
      pts.push_back({rng.unit(), rng.unit()});
    } else {
      const auto& c = centers[rng.below(blobs)];
      const double spread = 0.005 + 0.05 * rng.unit();
      pts.push_back({c.x + rng.uniform(-spread, spread), c.y + rng.uniform(-spread, spread)});
    }
  }
  return pts;
}

inline constexpr const char* kCellPieces[] = {
    "alpha", "β-phase", "x|y", "naïve", "42", "3.14", "", "a||b", "日本語", "\"quoted\"",
    "back\\slash", "", "€/kWh", "emoji 🚀", "tab", "-", "---", "x", "long cell value here"};

inline std::string random_cell(Rng& rng) {
  std::string s = kCellPieces[rng.below(std::size(kCellPieces))];
  if (rng.below(4) == 0) {
    const std::string more = kCellPieces[rng.below(std::size(kCellPieces))];
    if (!s.empty() && !more.empty()) s += " " + more;
  }
  return s;
}

inline TableRecord random_table(Rng& rng, std::size_t id) {
  TableRecord t;
  t.id = table_id(id);
  const std::size_t cols = 1 + rng.below(6);
  const std::size_t rows = rng.below(7);
  for (std::size_t c = 0; c < cols; ++c) {
    std::string h = random_cell(rng);
    if (h.empty()) h = "col" + std::to_string(c);
    t.columns.push_back(h);
  }
  for (std::size_t r = 0; r < rows; ++r) {
    std::vector<std::string> row;
    const bool empty_row = rng.below(5) == 0;
    for (std::size_t c = 0; c < cols; ++c) row.push_back(empty_row ? "" : random_cell(rng));
    t.rows.push_back(row);
  }
  return t;
}

// Renders a table the loose way real converters do: irregular spacing and
// separator widths, so canonicalization is exercised rather than assumed.
inline std::string loose_markdown(const TableRecord& t, Rng& rng) {
  auto esc = [](const std::string& s) {
    std::string out;
    for (char ch : s) {
      if (ch == '|') out += '\\';
      out += ch;
    }
    return out;
  };
  auto line = [&](const std::vector<std::string>& cells) {
    std::string s = "|";
    for (const auto& c : cells) {
      s += std::string(rng.below(3), ' ') + esc(c) + std::string(rng.below(3), ' ') + "|";
    }
    return s;
  };
  std::string out = line(t.columns) + "\n|";
  for (std::size_t c = 0; c < t.columns.size(); ++c) {
    out += (rng.below(2) ? ":" : "") + std::string(3 + rng.below(4), '-') + "|";
  }
  for (const auto& r : t.rows) out += "\n" + line(r);
  return out;
}

inline constexpr const char* kWordPieces[] = {
    "pump", "valve", "größe", "naïve", "données", "热交换器", "sensor", "flow", "é", "🚀",
    "pressure", "[bracket]", "", "#", "control", "loop", "alarm"};

inline std::string random_words(Rng& rng, std::size_t target_chars) {
  std::string s;
  while (s.size() < target_chars) {
    if (!s.empty()) s += ' ';
    s += kWordPieces[rng.below(std::size(kWordPieces))];
  }
  return s;
}

// Markdown shaped like converter output: headings, paragraphs (some far over
// the chunk size), blank lines, image+caption pairs and dictionary tables.
inline std::string random_markdown(Rng& rng) {
  std::string md;
  const std::size_t blocks = rng.below(40);
  std::size_t images = 0, tables = 0;
  for (std::size_t b = 0; b < blocks; ++b) {
    switch (rng.below(7)) {
      case 0:
        md += "# " + random_words(rng, 5 + rng.below(40)) + "\n";
        break;
      case 1:
      case 2:
        md += random_words(rng, rng.below(400)) + "\n";
        break;
      case 3:
        md += random_words(rng, 900 + rng.below(2600)) + "\n";
        break;
      case 4: {
        const std::string id = image_id(++images);
        md += "![image_" + std::to_string(images) + "](" + id + ")\n";
        md += caption_line(id, random_words(rng, rng.below(1500))) + "\n";
        break;
      }
      case 5: {
        auto t = random_table(rng, ++tables);
        const std::size_t extra = rng.below(60);
        const std::vector<std::string> filler(t.columns.size(), "value");
        for (std::size_t r = 0; r < extra; ++r) t.rows.push_back(filler);
        md += to_dict_table_text(t) + "\n";
        break;
      }
      default:
        md += "\n";
    }
  }
  if (!md.empty() && rng.below(2)) md.pop_back();
  return md;
}

// Corpus with varied layouts: header heights, mirrored headers, missing
// footers, and different page sizes.
inline std::vector<SyntheticSpec> varied_corpus(std::size_t docs, std::uint64_t seed,
                                                std::size_t min_pages, std::size_t max_pages,
                                                std::size_t image_every = 0,
                                                std::size_t table_every = 0) {
  Rng rng(seed);
  std::vector<SyntheticSpec> specs;
  constexpr const char* kHeaders[] = {"Technical Reference Manual", "Service Guide",
                                      "Installation and Operation", "Field Maintenance Notes"};
  for (std::size_t d = 0; d < docs; ++d) {
    SyntheticSpec s;
    s.doc_id = "doc" + std::to_string(d);
    s.pages = min_pages + rng.below(max_pages - min_pages + 1);
    s.seed = rng.next();
    s.header_y = 0.02 + 0.06 * rng.unit();
    s.footer_y = rng.below(5) == 0 ? std::nullopt : std::optional<double>(0.9 + 0.08 * rng.unit());
    s.body_elements_per_page = 2 + rng.below(4);
    if (rng.below(3) == 0) {
      s.page_width = 595;
      s.page_height = 842;
    }
    s.header_text = kHeaders[rng.below(std::size(kHeaders))];
    s.mirrored_header = rng.below(3) == 0;
    s.image_every = image_every;
    s.table_every = table_every;
    specs.push_back(s);
  }
  return specs;
}

}  // namespace docrag::testing
