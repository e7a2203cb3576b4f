// Copyright 2026 The qcommit authors.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file params.hpp
 * Flat parameter-vector conventions shared by all trainable models.
 *
 * Every model stores its parameters in one contiguous vector and publishes
 * named ranges into it; gradients come back as a vector of the same shape.
 * Optimizers operate on (params, grads) pairs plus the group table, which
 * lets learning rates and update rules differ per group.
 */
#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace qcommit {

struct ParamRange {
    std::size_t offset = 0;
    std::size_t len = 0;

    std::span<double> view(std::vector<double>& v) const {
        return std::span<double>(v).subspan(offset, len);
    }
    std::span<const double> view(const std::vector<double>& v) const {
        return std::span<const double>(v).subspan(offset, len);
    }
};

enum class ParamGroupKind { theta, readout, encoder, log_std, dense };

inline const char* param_group_name(ParamGroupKind kind) {
    switch (kind) {
    case ParamGroupKind::theta:
        return "theta";
    case ParamGroupKind::readout:
        return "readout";
    case ParamGroupKind::encoder:
        return "encoder";
    case ParamGroupKind::log_std:
        return "log_std";
    case ParamGroupKind::dense:
        return "dense";
    }
    return "?";
}

struct ParamGroup {
    ParamGroupKind kind;
    ParamRange range;
};

} // namespace qcommit
