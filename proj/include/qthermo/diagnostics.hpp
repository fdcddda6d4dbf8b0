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

// Non-fatal warnings. The default sink writes to stderr; tests and the CLI
// may replace it.

#pragma once

#include <functional>
#include <string_view>

namespace qthermo {

using WarningSink = std::function<void(std::string_view)>;

/// Installs a sink and returns the previous one. An empty sink silences warnings.
WarningSink set_warning_sink(WarningSink sink);
void warn(std::string_view message);

}  // namespace qthermo
