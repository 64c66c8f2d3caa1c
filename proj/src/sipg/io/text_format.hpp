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

#pragma once

#include <fstream>
#include <string>
#include <vector>

namespace sipg {

/// Shortest decimal form at 17 significant digits; reads back bit-exactly.
std::string format_g17(double value);

/// Strict double parse of a whole token; throws parse_error otherwise.
double parse_double_strict(const std::string& token);
long parse_long_strict(const std::string& token);

std::vector<std::string> split_whitespace(const std::string& text);

/// Buffered text file writer that throws io_error on open/write failure.
class TextWriter {
 public:
  explicit TextWriter(const std::string& path);
  ~TextWriter();

  void raw(const std::string& text);
  void line(const std::string& text);
  void close();

 private:
  std::ofstream out_;
  std::string path_;
};

std::string read_file(const std::string& path);

/// Creates a directory (and parents) if missing; throws io_error on failure.
void ensure_directory(const std::string& path);

}  // namespace sipg
