#pragma once

#include "elliptica/cubic.hpp"
#include "elliptica/divisor.hpp"
#include "elliptica/elliptic_function.hpp"

#include <cstdint>
#include <vector>

namespace elliptica {

// q . grad F; throws point_on_curve.
TernaryForm polar_conic(const Cubic &C, const ProjPoint &q);

struct FiberEntry {
    ProjPoint point;
    int multiplicity;
};

/// Tangency points over a base point q off the cubic.
struct Fiber {
    ProjPoint base;
    std::vector<FiberEntry> entries; // lexicographic order

    int total() const noexcept;
    std::vector<ProjPoint> points() const; // expanded by multiplicity
};

// Throws point_on_curve and numerical_failure.
Fiber lambda_fiber(const Cubic &C, const ProjPoint &q, std::uint64_t seed = 0);

// Tangent lines at the nine inflection points (table values for the Hesse family).
std::vector<ProjLine> inflectional_tangents(const Cubic &C, std::uint64_t seed = 0);

struct CriticalCheck {
    bool on_critical = false;
    std::vector<int> tangents;
};

inline constexpr double default_critical_tol = 1e-9;

CriticalCheck critical_locus_check(const Cubic &C, const ProjPoint &q, double tol = default_critical_tol);
CriticalCheck critical_locus_check(const Cubic &C, const std::vector<ProjLine> &tangents, const ProjPoint &q,
                                   double tol = default_critical_tol);

// Intersection points of pairs of inflectional tangents lying on at least three of them.
std::vector<ProjPoint> concurrent_tangent_points(const Cubic &C, double tol = default_critical_tol);

// Throws not_degree_3.
std::vector<Divisor> branch_divisors_via_tangents(const EllipticFunction &f, std::uint64_t seed = 0);

// Throws derivative_location_failure.
std::vector<Divisor> branch_divisors_direct(const EllipticFunction &f, const LocateOptions &opts = {});

// Sum over the divisors of sum (multiplicity - 1).
int branching_order(const std::vector<Divisor> &divisors);

// Multiset equality of divisor lists (each divisor compared with same_divisor).
bool same_divisor_list(const std::vector<Divisor> &a, const std::vector<Divisor> &b, const Lattice &L, double tol);

/// Closed path of base points (first sample equals last).
struct LoopPath {
    std::vector<ProjPoint> samples;
};

/// Bijection of {0..n-1}; images[i] is the image of i.
class Permutation {
public:
    Permutation() = default;
    explicit Permutation(std::vector<int> images); // throws invalid_argument unless bijective

    static Permutation identity(int n);

    const std::vector<int> &images() const noexcept { return m_images; }
    int size() const noexcept { return static_cast<int>(m_images.size()); }
    int operator()(int i) const { return m_images.at(static_cast<std::size_t>(i)); }

    // (this o other)(i) = this(other(i)).
    Permutation compose(const Permutation &other) const;
    Permutation inverse() const;

    bool is_identity() const noexcept;
    bool is_transposition() const noexcept;
    // Cycle lengths in decreasing order.
    std::vector<int> cycle_type() const;

    friend bool operator==(const Permutation &, const Permutation &) = default;
    friend auto operator<=>(const Permutation &, const Permutation &) = default;

private:
    std::vector<int> m_images;
};

struct ContinuationOptions {
    int halving_limit = 12;
    double collision_threshold = 1e-5;
};

// Tracks every entry of start (all simple) along the path; entries of the
// result correspond index by index. Throws collision_unresolved and halving_limit.
Fiber continue_fiber(const Cubic &C, const LoopPath &path, const Fiber &start, const ContinuationOptions &opts = {});

// Sheet permutation of a loop with sheets labelled by the order of start.entries.
Permutation loop_permutation(const Cubic &C, const LoopPath &loop, const Fiber &start,
                             const ContinuationOptions &opts = {});

struct LoopFamily {
    ProjPoint basepoint;
    std::vector<LoopPath> loops;   // loops[k] encircles the crossing with tangent k
    std::vector<complex> crossings;  // affine parameters of the tangent crossings
};

// Lassos in a random affine line through a random basepoint, one around the
// crossing with each inflectional tangent. density scales the sampling.
LoopFamily default_loops(const Cubic &C, std::uint64_t seed = 0, int density = 1);

struct MonodromyReport {
    ProjPoint basepoint;
    std::vector<Permutation> generators;
    bool transitive = false;
    int group_order = 0;
    bool order_capped = false; // closure stopped at 720 elements
};

MonodromyReport monodromy_group(const Cubic &C, const ProjPoint &basepoint, const std::vector<LoopPath> &loops,
                                const ContinuationOptions &opts = {}, std::uint64_t seed = 0);

} // namespace elliptica
