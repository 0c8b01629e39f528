#include "twins/grid_matching.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <ostream>
#include <string>

#include "twins/introot.hpp"

namespace twins {

GridModel::GridModel(std::uint64_t blocks, Permutation host, std::vector<GridCell> cells)
    : blocks_(blocks), host_(std::move(host)), cells_(std::move(cells)) {
    std::sort(cells_.begin(), cells_.end(),
              [](const GridCell& a, const GridCell& b) { return std::tie(a.row, a.col) < std::tie(b.row, b.col); });
    for (const auto& c : cells_) {
        if (c.points.size() >= 2) {
            edges_.push_back({c.row, c.col});
        }
    }
}

const GridCell* GridModel::find(std::uint64_t row, std::uint64_t col) const {
    auto it = std::lower_bound(cells_.begin(), cells_.end(), std::pair{row, col},
                               [](const GridCell& c, const std::pair<std::uint64_t, std::uint64_t>& key) {
                                   return std::tie(c.row, c.col) < std::tie(key.first, key.second);
                               });
    if (it == cells_.end() || it->row != row || it->col != col) {
        return nullptr;
    }
    return &*it;
}

std::uint64_t grid_blocks(std::uint64_t n) {
    return std::max<std::uint64_t>(1, introot::ceil_root(introot::ipow(n, 2), 3));
}

std::uint64_t block_of(std::uint64_t t, std::uint64_t r, std::uint64_t n) {
    const introot::u128 num = introot::u128{t} * r;
    return static_cast<std::uint64_t>((num + n - 1) / n);
}

GridModel build_grid(const Permutation& p, std::optional<std::uint64_t> forced_blocks) {
    const auto n = static_cast<std::uint64_t>(p.ground_bound());
    const std::uint64_t r = forced_blocks ? *forced_blocks : grid_blocks(n);
    if (p.empty()) {
        return GridModel(r, p, {});
    }

    struct Keyed {
        std::uint64_t row, col;
        GridPoint point;
    };
    std::vector<Keyed> keyed;
    keyed.reserve(p.size());
    const auto vals = p.values();
    for (std::size_t i = 0; i < vals.size(); ++i) {
        const Position t = i + 1;
        keyed.push_back({block_of(t, r, n), block_of(static_cast<std::uint64_t>(vals[i]), r, n), {t, vals[i]}});
    }
    // Rows are already non-decreasing in t; stable sort on col keeps positions ascending.
    std::stable_sort(keyed.begin(), keyed.end(),
                     [](const Keyed& a, const Keyed& b) { return std::tie(a.row, a.col) < std::tie(b.row, b.col); });

    std::vector<GridCell> cells;
    for (const auto& k : keyed) {
        if (cells.empty() || cells.back().row != k.row || cells.back().col != k.col) {
            cells.push_back({k.row, k.col, {}});
        }
        cells.back().points.push_back(k.point);
    }
    return GridModel(r, p, std::move(cells));
}

namespace {

// adjacency[row] = sorted columns, 1-based rows/cols
std::vector<std::vector<std::uint64_t>> adjacency(const GridModel& g) {
    std::vector<std::vector<std::uint64_t>> adj(g.blocks() + 1);
    for (const auto& e : g.edges()) {
        adj[e.row].push_back(e.col);
    }
    return adj;
}

}  // namespace

Matching greedy_matching(const GridModel& g) {
    const std::uint64_t r = g.blocks();
    const auto adj = adjacency(g);
    std::vector<bool> right_live(r + 2, true);
    // next_live[u] points at or before the smallest live right vertex >= u
    std::vector<std::uint64_t> next_live(r + 2);
    for (std::uint64_t u = 0; u < next_live.size(); ++u) {
        next_live[u] = u;
    }
    auto lowest_live_from = [&](std::uint64_t u) {
        std::uint64_t root = u;
        while (next_live[root] != root) {
            root = next_live[root];
        }
        while (next_live[u] != root) {
            u = std::exchange(next_live[u], root);
        }
        return root;
    };

    Matching m;
    std::uint64_t live = r;
    for (std::uint64_t v = 1; v <= r && 2 * live >= r && live > 0; ++v, --live) {
        std::uint64_t u = 0;
        for (std::uint64_t c : adj[v]) {
            if (right_live[c]) {
                u = c;
                break;
            }
        }
        if (u != 0) {
            m.pairs.push_back({v, u});
        } else {
            u = lowest_live_from(1);
        }
        right_live[u] = false;
        next_live[u] = u + 1;
    }
    return m;
}

Matching max_matching(const GridModel& g) {
    const std::uint64_t r = g.blocks();
    const auto adj = adjacency(g);
    constexpr std::uint64_t free = 0;
    constexpr std::uint64_t inf = std::numeric_limits<std::uint64_t>::max();
    std::vector<std::uint64_t> match_left(r + 1, free), match_right(r + 1, free), dist(r + 1);

    // Layered BFS from free left vertices; true if some free right vertex is reachable.
    auto bfs = [&] {
        std::deque<std::uint64_t> queue;
        for (std::uint64_t v = 1; v <= r; ++v) {
            if (match_left[v] == free && !adj[v].empty()) {
                dist[v] = 0;
                queue.push_back(v);
            } else {
                dist[v] = inf;
            }
        }
        bool found = false;
        while (!queue.empty()) {
            auto v = queue.front();
            queue.pop_front();
            for (auto u : adj[v]) {
                auto w = match_right[u];
                if (w == free) {
                    found = true;
                } else if (dist[w] == inf) {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        return found;
    };

    // Iterative DFS along the layers, so deep augmenting paths cannot blow the stack.
    std::vector<std::size_t> edge_cursor(r + 1);
    auto augment = [&](std::uint64_t root) {
        std::vector<std::uint64_t> path{root};
        while (!path.empty()) {
            auto v = path.back();
            bool advanced = false;
            while (edge_cursor[v] < adj[v].size()) {
                auto u = adj[v][edge_cursor[v]++];
                auto w = match_right[u];
                if (w == free) {
                    // flip the path: path[k] takes the column it reached
                    std::uint64_t col = u;
                    for (std::size_t k = path.size(); k-- > 0;) {
                        auto left = path[k];
                        auto prev = match_left[left];
                        match_left[left] = col;
                        match_right[col] = left;
                        col = prev;
                    }
                    return true;
                }
                if (dist[w] == dist[v] + 1) {
                    path.push_back(w);
                    advanced = true;
                    break;
                }
            }
            if (!advanced) {
                dist[v] = inf;
                path.pop_back();
            }
        }
        return false;
    };

    while (bfs()) {
        std::fill(edge_cursor.begin(), edge_cursor.end(), 0);
        for (std::uint64_t v = 1; v <= r; ++v) {
            if (match_left[v] == free && dist[v] == 0) {
                augment(v);
            }
        }
    }

    Matching m;
    for (std::uint64_t v = 1; v <= r; ++v) {
        if (match_left[v] != free) {
            m.pairs.push_back({v, match_left[v]});
        }
    }
    return m;
}

TwinPair matching_to_twins(const GridModel& g, const Matching& m) {
    std::vector<GridEdge> pairs = m.pairs;
    std::sort(pairs.begin(), pairs.end());
    TwinPair t;
    t.host = g.host();
    for (const auto& e : pairs) {
        const GridCell* cell = g.find(e.row, e.col);
        if (cell == nullptr || cell->points.size() < 2) {
            throw Error("matched cell (" + std::to_string(e.row) + ", " + std::to_string(e.col) +
                        ") holds fewer than two points");
        }
        t.first.positions.push_back(cell->points[0].position);
        t.second.positions.push_back(cell->points[1].position);
    }
    return t;
}

TwinPair thm2_twins(const Permutation& p, Matcher matcher) {
    const auto g = build_grid(p);
    const auto m = matcher == Matcher::greedy ? greedy_matching(g) : max_matching(g);
    return matching_to_twins(g, m);
}

std::size_t thm2_threshold(std::uint64_t n) { return introot::ceil_power_over(n, 2, 3, 80); }

void write_grid_csv(std::ostream& out, const GridModel& g) {
    out << "i,j,count\n";
    for (const auto& c : g.cells()) {
        out << c.row << ',' << c.col << ',' << c.points.size() << '\n';
    }
}

}  // namespace twins
