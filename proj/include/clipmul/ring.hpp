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

#include <concepts>
#include <cstdint>

namespace clipmul {

/// Totals of coefficient multiplications and additions (add and sub count
/// together) observed through a counting_ring.
struct op_count {
    std::uint64_t mul = 0;
    std::uint64_t add = 0;

    friend bool operator==(const op_count&, const op_count&) = default;
};

/// Commutative-ring contract every polynomial algorithm here is generic over.
/// Elements are regular value types; structural queries (is_zero, eq) are not
/// arithmetic and are never counted.
template <typename R>
concept coefficient_ring =
    requires(R r, const typename R::value_type& x, const typename R::value_type& y) {
        typename R::value_type;
        { r.zero() } -> std::same_as<typename R::value_type>;
        { r.add(x, y) } -> std::same_as<typename R::value_type>;
        { r.sub(x, y) } -> std::same_as<typename R::value_type>;
        { r.neg(x) } -> std::same_as<typename R::value_type>;
        { r.mul(x, y) } -> std::same_as<typename R::value_type>;
        { r.is_zero(x) } -> std::convertible_to<bool>;
        { r.eq(x, y) } -> std::convertible_to<bool>;
    };

/// Ring of any integer-like value type: built-in integers, __int128,
/// mpz_class. Exact as long as the value type is.
template <typename T>
struct basic_int_ring {
    using value_type = T;

    T zero() const { return T(0); }
    T add(const T& x, const T& y) const { return T(x + y); }
    T sub(const T& x, const T& y) const { return T(x - y); }
    T neg(const T& x) const { return T(-x); }
    T mul(const T& x, const T& y) const { return T(x * y); }
    bool is_zero(const T& x) const { return x == T(0); }
    bool eq(const T& x, const T& y) const { return x == y; }
};

using int_ring = basic_int_ring<long long>;

/// Counting wrapper: delegates to the inner ring and tallies mul/add/sub.
/// Single-threaded by contract; wrapped results are identical to unwrapped.
template <coefficient_ring R>
class counting_ring {
public:
    using value_type = typename R::value_type;

    explicit counting_ring(R& inner) : inner_(&inner) {}

    value_type zero() const { return inner_->zero(); }
    value_type add(const value_type& x, const value_type& y) {
        ++counts_.add;
        return inner_->add(x, y);
    }
    value_type sub(const value_type& x, const value_type& y) {
        ++counts_.add;
        return inner_->sub(x, y);
    }
    value_type neg(const value_type& x) const { return inner_->neg(x); }
    value_type mul(const value_type& x, const value_type& y) {
        ++counts_.mul;
        return inner_->mul(x, y);
    }
    bool is_zero(const value_type& x) const { return inner_->is_zero(x); }
    bool eq(const value_type& x, const value_type& y) const { return inner_->eq(x, y); }

    op_count snapshot() const { return counts_; }
    void reset() { counts_ = {}; }

private:
    R* inner_;
    op_count counts_;
};

template <coefficient_ring R>
counting_ring<R> counting_wrap(R& r) {
    return counting_ring<R>(r);
}

}  // namespace clipmul
