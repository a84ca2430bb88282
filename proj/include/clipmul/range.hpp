// Copyright 2026 The clip Authors
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

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace clipmul {

using index_t = std::int64_t;

/// Inclusive integer interval [lo..hi]. lo > hi denotes the empty range,
/// which is legal everywhere: clipping to it yields zero.
struct clip_range {
    index_t lo = 0;
    index_t hi = -1;

    constexpr clip_range() = default;
    constexpr clip_range(index_t lo_, index_t hi_) : lo(lo_), hi(hi_) {}

    constexpr bool empty() const { return lo > hi; }
    constexpr index_t width() const { return empty() ? 0 : hi - lo + 1; }
    constexpr bool contains(index_t k) const { return lo <= k && k <= hi; }

    constexpr clip_range intersect(clip_range other) const {
        return {std::max(lo, other.lo), std::min(hi, other.hi)};
    }

    friend constexpr bool operator==(const clip_range&, const clip_range&) = default;
};

/// Parses "a..b" (both bounds inclusive, nonnegative).
inline clip_range parse_range(const std::string& text) {
    auto dots = text.find("..");
    if (dots == std::string::npos)
        throw std::invalid_argument("range must be of the form a..b: " + text);
    std::size_t used_a = 0, used_b = 0;
    const std::string sa = text.substr(0, dots), sb = text.substr(dots + 2);
    index_t a = 0, b = 0;
    try {
        a = std::stoll(sa, &used_a);
        b = std::stoll(sb, &used_b);
    } catch (const std::exception&) {
        throw std::invalid_argument("bad range bounds: " + text);
    }
    if (used_a != sa.size() || used_b != sb.size() || sa.empty() || sb.empty())
        throw std::invalid_argument("bad range bounds: " + text);
    if (a < 0) throw std::invalid_argument("range lower bound must be nonnegative: " + text);
    return {a, b};
}

}  // namespace clipmul
