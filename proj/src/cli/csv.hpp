// Copyright 2026 The qthermo Authors
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

#pragma once

#include <cstdio>
#include <initializer_list>
#include <ostream>
#include <string>
#include <type_traits>

namespace qthermo::cli {

/// Comma-separated rows with a fixed significant-digit count for doubles.
class CsvWriter {
 public:
  CsvWriter(std::ostream& os, int precision) : os_(os), precision_(precision) {}

  void comment(const std::string& text) { os_ << "# " << text << '\n'; }

  void header(std::initializer_list<const char*> names) {
    bool first = true;
    for (const char* n : names) {
      if (!first) os_ << ',';
      os_ << n;
      first = false;
    }
    os_ << '\n';
  }

  template <class T>
  CsvWriter& cell(const T& value) {
    if (!first_) os_ << ',';
    first_ = false;
    if constexpr (std::is_floating_point_v<T>) {
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.*g", precision_, static_cast<double>(value));
      os_ << buf;
    } else if constexpr (std::is_same_v<T, bool>) {
      os_ << (value ? 1 : 0);
    } else {
      os_ << value;
    }
    return *this;
  }

  void end_row() {
    os_ << '\n';
    first_ = true;
  }

 private:
  std::ostream& os_;
  int precision_;
  bool first_ = true;
};

}  // namespace qthermo::cli
