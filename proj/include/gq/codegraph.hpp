#pragma once

// Codes in the point-line incidence graph of a W3(q) model.  Vertices are
// numbered canonically: point i is vertex i (0 <= i < N), line j is vertex
// N + j.  The graph is connected, bipartite and (q+1)-regular with diameter 4
// and girth 8; consequently every code has minimum distance and covering
// radius at most 4.

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "gq/geometry.hpp"

namespace gq {

enum class Side { Points, Lines, Mixed };

struct IncidenceGraph {
    std::shared_ptr<const GQModel> model;
    int n = 0;          // total vertices = 2N
    int num_points = 0; // N
    std::vector<std::vector<int>> adj; // sorted neighbour lists

    // factory: wraps the model, builds adjacency, caches all-pairs distances,
    // and (for q <= 5) verifies regularity, diameter 4 and girth 8
    static std::shared_ptr<const IncidenceGraph> build(GQModel model);

    bool is_point(int v) const { return v < num_points; }
    int distance(int u, int v) const {
        if (!dist_.empty()) return dist_[size_t(u) * n + v];
        return bfs_distance(u, v);
    }
    const std::vector<std::uint8_t>& distance_table() const { return dist_; }

    int diameter() const;
    int girth() const;

private:
    int bfs_distance(int u, int v) const;
    std::vector<std::uint8_t> dist_; // n*n, filled when n <= 8192
};

using GraphPtr = std::shared_ptr<const IncidenceGraph>;

struct Code {
    GraphPtr graph;
    std::vector<int> members; // sorted, unique vertex indices

    Code() = default;
    Code(GraphPtr g, std::vector<int> members_in);

    int size() const { return int(members.size()); }
    bool contains(int v) const {
        return (mask_[v >> 6] >> (v & 63)) & 1;
    }
    Side side() const;

private:
    std::vector<std::uint64_t> mask_;
};

// minimum pairwise graph distance; error if |C| < 2
int min_distance(const Code& c);

struct DistancePartition {
    // cells[i] = vertices at distance exactly i from the code, sorted;
    // cells[0] is the code itself; the last nonempty index is the covering
    // radius
    std::vector<std::vector<int>> cells;
    std::vector<int> cell_of; // distance to the code, per vertex
    int rho() const { return int(cells.size()) - 1; }
};

DistancePartition distance_partition(const Code& c); // error if empty
int covering_radius(const Code& c);

struct Classification {
    Side side = Side::Mixed;
    int delta = 0; // 0 when |C| < 2 (undefined)
    int rho = 0;
    bool partial = false;         // partial ovoid (points) / partial spread (lines)
    bool maximal = false;         // not extendable, equivalently rho <= 3
    bool ovoid_or_spread = false; // every opposite element covered once, equivalently rho = 2
    std::string describe() const;
};

// Classifies an unmixed code by the incidence-counting definitions and
// cross-checks every flag against the metric characterisations
// (partial <=> delta = 4, maximal <=> rho <= 3, ovoid/spread <=> rho = 2).
// Throws on mixed codes and on any disagreement between the two routes.
Classification classify(const Code& c);

struct CountingCheck {
    struct Identity {
        std::string label;
        long long expected = 0;
        long long actual = 0;
        bool pass = false;
    };
    std::vector<Identity> identities;
    bool all_pass = false;
};

// The three cell-size identities that hold for any unmixed code with
// delta = 4 in a geometry of order (s, t): the first co-cell has size
// (opposite degree) * |C|, and the even/odd cells partition the two sides.
// Errors unless delta = 4 and the code is unmixed.
CountingCheck counting_check(const Code& c);

// --- exact rational helpers for the size identity of a hypothetical
//     distance-3 perfect code in a self-dual geometry of order s ---

struct Rational {
    long long num = 0;
    long long den = 1; // > 0, reduced
    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num == b.num && a.den == b.den;
    }
};

Rational make_rational(long long num, long long den);
Rational rational_sub(const Rational& a, const Rational& b);

// 2(s^3+s^2+s+1)/(s+2), the size forced by sphere counting
Rational perfect_size_identity(long long s);
// 2(s^2-s+1) - 2/(s+2), a published rewriting of the same quantity; the two
// evaluations disagree (by 4s/(s+2)), which scan_perfect_size records
Rational perfect_size_printed_form(long long s);

struct PerfectSizeScan {
    long long max_s = 0;
    std::vector<long long> divisible_s; // s where (s+2) | 2(s^3+s^2+s+1)
    long long first_form_mismatch = 0;  // least s where the printed rewriting differs
    long long mismatch_count = 0;       // how many s <= max_s disagree
};

PerfectSizeScan scan_perfect_size(long long max_s);

} // namespace gq
