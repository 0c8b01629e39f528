#ifndef TWINS_GRID_MATCHING_HPP
#define TWINS_GRID_MATCHING_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "twins/permutation.hpp"

namespace twins {

struct GridPoint {
    Position position;
    Value value;
};

/// Points of the host in position block `row` and value block `col`
/// (both 1-based), sorted by position.
struct GridCell {
    std::uint64_t row = 0;
    std::uint64_t col = 0;
    std::vector<GridPoint> points;
};

struct GridEdge {
    std::uint64_t row = 0;
    std::uint64_t col = 0;
    bool operator==(const GridEdge&) const = default;
    auto operator<=>(const GridEdge&) const = default;
};

/// r x r occupancy grid over a permutation. Only non-empty cells are stored.
class GridModel {
public:
    GridModel() = default;
    GridModel(std::uint64_t blocks, Permutation host, std::vector<GridCell> cells);

    std::uint64_t blocks() const { return blocks_; }
    const Permutation& host() const { return host_; }
    Value ground_bound() const { return host_.ground_bound(); }
    const std::vector<GridCell>& cells() const { return cells_; }

    /// Cells holding at least two points, sorted by (row, col).
    const std::vector<GridEdge>& edges() const { return edges_; }

    const GridCell* find(std::uint64_t row, std::uint64_t col) const;

private:
    std::uint64_t blocks_ = 0;
    Permutation host_;
    std::vector<GridCell> cells_;  // sorted by (row, col)
    std::vector<GridEdge> edges_;
};

/// ceil(n^(2/3)), at least 1.
std::uint64_t grid_blocks(std::uint64_t n);

/// ceil(t * r / n): the 1-based block holding coordinate t in [1, n].
std::uint64_t block_of(std::uint64_t t, std::uint64_t r, std::uint64_t n);

/// Point t goes to cell (block_of(t), block_of(p_t)). `forced_blocks`
/// overrides r for tests and experiments.
GridModel build_grid(const Permutation& p, std::optional<std::uint64_t> forced_blocks = std::nullopt);

struct Matching {
    std::vector<GridEdge> pairs;  // sorted by row
    std::size_t size() const { return pairs.size(); }
};

/// Processes left vertices in increasing order while both sides still have
/// at least r/2 live vertices; each takes its lowest live neighbour, or
/// else burns the lowest live right vertex.
Matching greedy_matching(const GridModel& g);

/// Maximum-cardinality matching (Hopcroft-Karp).
Matching max_matching(const GridModel& g);

/// For each matched cell, its two earliest points: the earlier joins the
/// first twin, the later the second. Throws Error if a cell has < 2 points.
TwinPair matching_to_twins(const GridModel& g, const Matching& m);

enum class Matcher { greedy, maximum };

TwinPair thm2_twins(const Permutation& p, Matcher matcher = Matcher::maximum);

/// ceil(n^(2/3) / 80)
std::size_t thm2_threshold(std::uint64_t n);

/// `i,j,count` per non-empty cell, with a header row.
void write_grid_csv(std::ostream& out, const GridModel& g);

// Poissonized model: N ~ Poisson(lambda) uniform points in the unit square,
// read left to right, y-ranks recorded.

struct PlanePoint {
    double x;
    double y;
};

struct PlanePointSet {
    std::vector<PlanePoint> points;  // in sampling order
};

/// Resamples coordinates until all x and all y are distinct.
PlanePointSet sample_poisson_points(double lambda, std::uint64_t seed);

/// Sort by x, replace y by its rank. Ground bound = number of points.
Permutation points_to_permutation(std::span<const PlanePoint> points);

Permutation sample_poisson_permutation(double lambda, std::uint64_t seed);

/// Exact twin length of every prefix p^(1), ..., p^(N) of the sampling
/// order is non-decreasing. Throws Error when N exceeds `max_points`.
bool prefix_monotonicity_check(const PlanePointSet& points, std::size_t max_points = 12);

}  // namespace twins

#endif
