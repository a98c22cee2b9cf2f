// Copyright 2026 The BanditBench Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "bandit/toml.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "bandit/errors.hpp"

namespace bandit::toml {
namespace {

[[noreturn]] void fail(std::size_t line, const std::string& what) {
  throw ConfigError("config line " + std::to_string(line) + ": " + what);
}

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

// Strips a trailing comment, respecting quoted strings.
std::string strip_comment(const std::string& s) {
  bool in_string = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '"') in_string = !in_string;
    if (s[i] == '#' && !in_string) return s.substr(0, i);
  }
  return s;
}

bool valid_key(const std::string& key) {
  if (key.empty()) return false;
  for (char c : key)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-')
      return false;
  return true;
}

Value parse_scalar(const std::string& raw, std::size_t line) {
  if (raw.size() >= 2 && raw.front() == '"' && raw.back() == '"') {
    // Basic string; handle the common escapes.
    std::string out;
    for (std::size_t i = 1; i + 1 < raw.size(); ++i) {
      if (raw[i] == '\\' && i + 2 < raw.size()) {
        ++i;
        switch (raw[i]) {
          case 'n': out += '\n'; break;
          case 't': out += '\t'; break;
          case '"': out += '"'; break;
          case '\\': out += '\\'; break;
          default: fail(line, std::string("unsupported escape \\") + raw[i]);
        }
      } else if (raw[i] == '"') {
        fail(line, "unexpected quote inside string");
      } else {
        out += raw[i];
      }
    }
    return Value{out};
  }
  if (raw == "true") return Value{true};
  if (raw == "false") return Value{false};

  const bool looks_float = raw.find_first_of(".eE") != std::string::npos &&
                           raw.find("0x") == std::string::npos;
  try {
    std::size_t used = 0;
    if (looks_float) {
      const double v = std::stod(raw, &used);
      if (used == raw.size()) return Value{v};
    } else {
      const std::int64_t v = std::stoll(raw, &used);
      if (used == raw.size()) return Value{v};
      const double v2 = std::stod(raw, &used);
      if (used == raw.size()) return Value{v2};
    }
  } catch (const std::exception&) {
  }
  fail(line, "cannot parse value: '" + raw + "'");
}

}  // namespace

Document parse(const std::string& text) {
  Document doc;
  Table* current = &doc.root;

  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string s = trim(strip_comment(line));
    if (s.empty()) continue;

    if (s.size() >= 4 && s.substr(0, 2) == "[[" &&
        s.substr(s.size() - 2) == "]]") {
      const std::string name = trim(s.substr(2, s.size() - 4));
      if (!valid_key(name)) fail(line_no, "bad table-array name");
      doc.table_arrays[name].emplace_back();
      current = &doc.table_arrays[name].back();
      continue;
    }
    if (s.front() == '[' && s.back() == ']') {
      const std::string name = trim(s.substr(1, s.size() - 2));
      if (!valid_key(name)) fail(line_no, "bad table name");
      if (doc.tables.count(name)) fail(line_no, "duplicate table " + name);
      current = &doc.tables[name];
      continue;
    }

    const std::size_t eq = s.find('=');
    if (eq == std::string::npos) fail(line_no, "expected key = value");
    const std::string key = trim(s.substr(0, eq));
    const std::string raw = trim(s.substr(eq + 1));
    if (!valid_key(key)) fail(line_no, "bad key '" + key + "'");
    if (raw.empty()) fail(line_no, "missing value for key '" + key + "'");
    if (current->values.count(key)) fail(line_no, "duplicate key '" + key + "'");
    current->values.emplace(key, parse_scalar(raw, line_no));
  }
  return doc;
}

Document parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str());
}

}  // namespace bandit::toml
