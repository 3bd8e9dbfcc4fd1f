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

#include <cstdint>
#include <stdexcept>
#include <string>

namespace dqa
{
    // Base class of every error raised by the library.
    class Error : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    // Caller passed arguments that violate a precondition (shape, range, pairing).
    class InvalidArgument : public Error
    {
    public:
        using Error::Error;
    };

    // Input is well-formed but numerically degenerate (all-zero sample, rank deficient kernel, ...).
    class DegenerateInput : public Error
    {
    public:
        using Error::Error;
    };

    // CSID or JSON payload could not be decoded; carries the byte offset of the failure.
    class FormatError : public Error
    {
    public:
        FormatError(const std::string &what, std::uint64_t offset)
            : Error(what + " (at byte offset " + std::to_string(offset) + ")"), offset_(offset) {}

        std::uint64_t offset() const noexcept { return offset_; }

    private:
        std::uint64_t offset_;
    };

    // File system failures (unwritable path, missing file).
    class IoError : public Error
    {
    public:
        using Error::Error;
    };

    // Internal invariant broken (e.g. an LP that must be feasible was not).
    class InternalError : public Error
    {
    public:
        using Error::Error;
    };
}
