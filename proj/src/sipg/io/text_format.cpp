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

#include "sipg/io/text_format.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "sipg/util/errors.hpp"

namespace sipg {

std::string format_g17(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

double parse_double_strict(const std::string& token) {
  if (token.empty()) throw Error(ErrorCode::parse_error, "expected a number, got empty token");
  char* end = nullptr;
  const double value = std::strtod(token.c_str(), &end);
  if (end != token.c_str() + token.size())
    throw Error(ErrorCode::parse_error, "malformed number: '" + token + "'");
  return value;
}

long parse_long_strict(const std::string& token) {
  if (token.empty()) throw Error(ErrorCode::parse_error, "expected an integer, got empty token");
  char* end = nullptr;
  const long value = std::strtol(token.c_str(), &end, 10);
  if (end != token.c_str() + token.size())
    throw Error(ErrorCode::parse_error, "malformed integer: '" + token + "'");
  return value;
}

std::vector<std::string> split_whitespace(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string token;
  while (in >> token) out.push_back(token);
  return out;
}

TextWriter::TextWriter(const std::string& path) : out_(path), path_(path) {
  if (!out_) throw Error(ErrorCode::io_error, "cannot open for writing: " + path);
}

TextWriter::~TextWriter() = default;

void TextWriter::raw(const std::string& text) {
  out_ << text;
  if (!out_) throw Error(ErrorCode::io_error, "write failed: " + path_);
}

void TextWriter::line(const std::string& text) {
  out_ << text << '\n';
  if (!out_) throw Error(ErrorCode::io_error, "write failed: " + path_);
}

void TextWriter::close() {
  out_.close();
  if (out_.fail()) throw Error(ErrorCode::io_error, "close failed: " + path_);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::io_error, "cannot open for reading: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void ensure_directory(const std::string& path) {
  std::error_code ec;
  std::filesystem::create_directories(path, ec);
  if (ec) throw Error(ErrorCode::io_error, "cannot create directory: " + path);
}

}  // namespace sipg
