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
 * @file replay_buffer.hpp
 * FIFO experience replay with uniform without-replacement batch sampling.
 */
#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

#include "qcommit/errors.hpp"
#include "qcommit/rng.hpp"

namespace qcommit::rl {

template <class Action> struct Transition {
    std::vector<double> state;
    Action action;
    double reward = 0.0;
    std::vector<double> next_state;
    std::uint8_t done = 0;
};

template <class Action> class ReplayBuffer {
  public:
    explicit ReplayBuffer(std::size_t capacity) : capacity_(capacity) {
        if (capacity == 0) {
            throw SizeError("ReplayBuffer: capacity must be positive");
        }
        ring_.reserve(capacity);
    }

    std::size_t size() const { return ring_.size(); }
    std::size_t capacity() const { return capacity_; }

    void push(Transition<Action> t) {
        if (ring_.size() < capacity_) {
            ring_.push_back(std::move(t));
        } else {
            ring_[head_] = std::move(t);
            head_ = (head_ + 1) % capacity_;
        }
    }

    const Transition<Action>& at(std::size_t i) const { return ring_[i]; }

    /// Uniform sample of `batch` distinct items (partial Fisher-Yates).
    std::vector<const Transition<Action>*> sample(std::size_t batch,
                                                  Rng& rng) const {
        if (batch == 0 || batch > ring_.size()) {
            throw ContractError("ReplayBuffer::sample: bad batch size");
        }
        std::vector<std::uint32_t> idx(ring_.size());
        std::iota(idx.begin(), idx.end(), 0U);
        std::vector<const Transition<Action>*> out;
        out.reserve(batch);
        for (std::size_t i = 0; i < batch; ++i) {
            const std::size_t j =
                i + static_cast<std::size_t>(
                        rng.uniform_int(static_cast<int>(idx.size() - i)));
            std::swap(idx[i], idx[j]);
            out.push_back(&ring_[idx[i]]);
        }
        return out;
    }

  private:
    std::size_t capacity_;
    std::size_t head_ = 0;
    std::vector<Transition<Action>> ring_;
};

} // namespace qcommit::rl
