// SPDX-License-Identifier: Apache-2.0
//
// dqa - data quality assessment for wireless air-interface datasets
// Copyright (C) 2026 The dqa authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dqa::cli
{
    inline constexpr int exit_ok = 0;
    inline constexpr int exit_failure = 1; // computation or I/O error
    inline constexpr int exit_usage = 2;

    /*!MD
    # dqa command line

    Subcommands: generate, features, similarity, diversity, select, sweep, replay.

    Machine-readable payload goes to `out` (or to the --out file), diagnostics to `err`.
    Every subcommand accepts --manifest-out FILE, which records the fully resolved options
    as JSON; `dqa replay FILE` runs it again. The manifest printed by `generate` can be
    replayed directly.

    `args` excludes the program name.
    */
    int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);
}
