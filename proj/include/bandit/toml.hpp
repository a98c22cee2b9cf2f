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

#ifndef BANDIT_TOML_HPP
#define BANDIT_TOML_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace bandit::toml {

// Minimal TOML reader covering what experiment configs use: top-level
// key/value pairs, [table] sections, repeated [[array-of-table]] sections,
// and scalar values (strings, integers, floats, booleans). Errors carry the
// line number.

struct Value {
  std::variant<bool, std::int64_t, double, std::string> data;

  bool is_string() const { return std::holds_alternative<std::string>(data); }
  bool is_bool() const { return std::holds_alternative<bool>(data); }
  bool is_number() const {
    return std::holds_alternative<std::int64_t>(data) ||
           std::holds_alternative<double>(data);
  }

  const std::string& as_string() const { return std::get<std::string>(data); }
  bool as_bool() const { return std::get<bool>(data); }
  double as_double() const {
    if (auto* i = std::get_if<std::int64_t>(&data))
      return static_cast<double>(*i);
    return std::get<double>(data);
  }
  std::int64_t as_int() const {
    if (auto* d = std::get_if<double>(&data))
      return static_cast<std::int64_t>(*d);
    return std::get<std::int64_t>(data);
  }
};

struct Table {
  std::map<std::string, Value> values;

  bool has(const std::string& key) const { return values.count(key) > 0; }
  std::optional<Value> get(const std::string& key) const {
    auto it = values.find(key);
    if (it == values.end()) return std::nullopt;
    return it->second;
  }
};

struct Document {
  Table root;
  std::map<std::string, Table> tables;
  std::map<std::string, std::vector<Table>> table_arrays;
};

// Parses TOML text; throws ConfigError with a line reference on malformed
// input.
Document parse(const std::string& text);

// Reads and parses a file; throws IoError if unreadable.
Document parse_file(const std::string& path);

}  // namespace bandit::toml

#endif  // BANDIT_TOML_HPP
