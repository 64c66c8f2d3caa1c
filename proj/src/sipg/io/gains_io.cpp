/*
 * Copyright 2026 The sipgains authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "sipg/io/gains_io.hpp"

#include <map>
#include <sstream>

#include "sipg/io/text_format.hpp"
#include "sipg/util/errors.hpp"

namespace sipg {

std::string GainsFile::write() const {
  std::ostringstream out;
  out << "format = sipgains-gains-v1\n";
  out << "lags = " << lags << "\n";
  out << "n_u = " << n_u << "\n";
  out << "n_y = " << n_y << "\n";
  out << "horizon = " << horizon << "\n";
  if (tau) out << "tau = " << format_g17(*tau) << "\n";
  for (int i = 0; i < lags; ++i) {
    const Mat& Ki = params.K[static_cast<std::size_t>(i)];
    out << "K." << (i + 1) << " =";
    for (int r = 0; r < n_u; ++r)
      for (int c = 0; c < n_y; ++c) out << " " << format_g17(Ki(r, c));
    out << "\n";
  }
  for (int j = 0; j < horizon; ++j) {
    out << "u_bar." << j << " =";
    const Vec& u = params.u_bar[static_cast<std::size_t>(j)];
    for (int r = 0; r < n_u; ++r) out << " " << format_g17(u[r]);
    out << "\n";
  }
  return out.str();
}

GainsFile GainsFile::parse(const std::string& text) {
  std::map<std::string, std::string> entries;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      if (b == std::string::npos) return std::string();
      const auto e = s.find_last_not_of(" \t\r");
      return s.substr(b, e - b + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) continue;
    if (!entries.emplace(key, value).second)
      throw Error(ErrorCode::parse_error, "gains file: duplicate key " + key);
  }

  auto require = [&](const std::string& key) -> const std::string& {
    auto it = entries.find(key);
    if (it == entries.end())
      throw Error(ErrorCode::parse_error, "gains file: missing key " + key);
    return it->second;
  };

  if (require("format") != "sipgains-gains-v1")
    throw Error(ErrorCode::parse_error, "gains file: unsupported format tag");

  GainsFile g;
  g.lags = static_cast<int>(parse_long_strict(require("lags")));
  g.n_u = static_cast<int>(parse_long_strict(require("n_u")));
  g.n_y = static_cast<int>(parse_long_strict(require("n_y")));
  g.horizon = static_cast<int>(parse_long_strict(require("horizon")));
  if (g.lags < 0 || g.n_u <= 0 || g.n_y <= 0 || g.horizon <= 0)
    throw Error(ErrorCode::parse_error, "gains file: bad dimensions");
  if (auto it = entries.find("tau"); it != entries.end())
    g.tau = parse_double_strict(it->second);

  g.params.K.resize(static_cast<std::size_t>(g.lags));
  for (int i = 0; i < g.lags; ++i) {
    const auto tokens = split_whitespace(require("K." + std::to_string(i + 1)));
    if (static_cast<int>(tokens.size()) != g.n_u * g.n_y)
      throw Error(ErrorCode::parse_error, "gains file: K." + std::to_string(i + 1) + " length");
    Mat Ki(g.n_u, g.n_y);
    int idx = 0;
    for (int r = 0; r < g.n_u; ++r)
      for (int c = 0; c < g.n_y; ++c) Ki(r, c) = parse_double_strict(tokens[static_cast<std::size_t>(idx++)]);
    g.params.K[static_cast<std::size_t>(i)] = std::move(Ki);
  }
  g.params.u_bar.resize(static_cast<std::size_t>(g.horizon));
  for (int j = 0; j < g.horizon; ++j) {
    const auto tokens = split_whitespace(require("u_bar." + std::to_string(j)));
    if (static_cast<int>(tokens.size()) != g.n_u)
      throw Error(ErrorCode::parse_error, "gains file: u_bar." + std::to_string(j) + " length");
    Vec u(g.n_u);
    for (int r = 0; r < g.n_u; ++r) u[r] = parse_double_strict(tokens[static_cast<std::size_t>(r)]);
    g.params.u_bar[static_cast<std::size_t>(j)] = std::move(u);
  }
  return g;
}

GainsFile GainsFile::load(const std::string& path) { return parse(read_file(path)); }

void GainsFile::save(const std::string& path) const {
  TextWriter writer(path);
  writer.raw(write());
  writer.close();
}

}  // namespace sipg
