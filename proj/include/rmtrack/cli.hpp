/*
 * Copyright (C) 2026 The rmtrack authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *
*/

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rmtrack {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int property_violation = 1;
inline constexpr int planning_failure = 2;
inline constexpr int timeout = 3;
inline constexpr int margin_violation = 4;
inline constexpr int guard_violation = 5;
} // namespace exit_code

/// Entry point of the `rmtrack` tool with subcommands plan, simulate, verify
/// and bench. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args,
            std::ostream& out, std::ostream& err);

} // namespace rmtrack
