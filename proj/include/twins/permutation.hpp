#ifndef TWINS_PERMUTATION_HPP
#define TWINS_PERMUTATION_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace twins {

using Value = std::int64_t;
using Position = std::size_t;  // 1-based everywhere in the public API

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct LengthMismatch : Error {
    using Error::Error;
};

struct DuplicateValue : Error {
    using Error::Error;
};

struct InvalidPermutation : Error {
    using Error::Error;
};

/// A sequence of distinct values drawn from [1, ground_bound].
///
/// The values need not exhaust [1, ground_bound]: subpermutations keep the
/// ground bound of the permutation they were cut from.
class Permutation {
public:
    Permutation() = default;

    /// Validates distinctness, range and length. Throws InvalidPermutation.
    Permutation(std::vector<Value> values, Value ground_bound);

    /// Ground bound taken as the maximum value (0 for the empty sequence).
    static Permutation from_values(std::vector<Value> values);
    static Permutation identity(Value n);

    std::span<const Value> values() const { return values_; }
    Value ground_bound() const { return ground_bound_; }
    std::size_t size() const { return values_.size(); }
    bool empty() const { return values_.empty(); }

    /// 1-based access.
    Value at(Position pos) const;

    bool operator==(const Permutation&) const = default;

private:
    struct Unchecked {};
    Permutation(Unchecked, std::vector<Value> values, Value ground_bound)
        : values_(std::move(values)), ground_bound_(ground_bound) {}

    friend Permutation restrict_positions(const Permutation&, std::span<const Position>);
    friend Permutation restrict_values(const Permutation&, const std::function<bool(Value)>&);
    friend Permutation unchecked_permutation(std::vector<Value>, Value);

    std::vector<Value> values_;
    Value ground_bound_ = 0;
};

/// Internal constructor for algorithm outputs that are distinct by construction.
Permutation unchecked_permutation(std::vector<Value> values, Value ground_bound);

/// Strictly increasing 1-based positions into a host. Not validated on
/// construction: verify_twins reports malformed subsequences.
struct PositionSubsequence {
    std::vector<Position> positions;

    std::size_t size() const { return positions.size(); }
    bool empty() const { return positions.empty(); }
    bool operator==(const PositionSubsequence&) const = default;
};

struct TwinPair {
    Permutation host;
    PositionSubsequence first;
    PositionSubsequence second;
    std::optional<Value> closeness_bound;

    std::size_t length() const { return first.size(); }
};

struct TwinVerdict {
    bool valid = true;
    std::string diagnostic;  // empty when valid

    explicit operator bool() const { return valid; }
};

/// True iff (x_i < x_j) <=> (y_i < y_j) for all i < j. Compares rank
/// patterns, O(len log len). Throws LengthMismatch / DuplicateValue.
bool order_isomorphic(std::span<const Value> x, std::span<const Value> y);

/// Replaces every entry by its rank (1-based) among the entries.
std::vector<Value> pattern_of(std::span<const Value> x);

/// Values of the host at the given positions. Throws std::out_of_range.
std::vector<Value> values_at(const Permutation& host, const PositionSubsequence& sub);

/// Checks every TwinPair invariant; the diagnostic names the first one that
/// fails. Positions outside the host throw std::out_of_range.
TwinVerdict verify_twins(const TwinPair& t);

Permutation restrict_positions(const Permutation& p, std::span<const Position> keep);
Permutation restrict_values(const Permutation& p, const std::function<bool(Value)>& keep);

Permutation reversed(const Permutation& p);
/// v -> ground_bound + 1 - v
Permutation complemented(const Permutation& p);

}  // namespace twins

#endif
