#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "boltzmann/sim.hpp"

namespace boltzmann {

enum class QuadratureKind { UniformMidpoint, GaussLegendre };

/// Tensor rule on the unit square: K x K nodes, weights summing to 1.
struct QuadratureRule {
  QuadratureKind kind = QuadratureKind::UniformMidpoint;
  std::size_t K = 5;
  std::vector<double> nodes;    // 1-D nodes in [0, 1]
  std::vector<double> weights;  // 1-D weights, sum 1

  std::size_t L() const { return K * K; }
};

/// Throws DomainError unless L is a positive perfect square.
QuadratureRule make_rule(QuadratureKind kind, std::size_t L);

/// The allowed cells of a region, numbered 0..N-1 in mask order.
struct Partition {
  AllowedRegion region;
  std::vector<std::size_t> cells;     // flat grid index of each allowed cell
  std::vector<double> areas;
  std::vector<long> index_of_cell;    // grid index -> partition index, -1 if masked

  std::size_t N() const { return cells.size(); }
  OrbitState lower_corner(std::size_t n) const;
  /// Partition index of a point, nullopt outside the allowed cells.
  std::optional<std::size_t> locate(OrbitState state) const;
};

Partition make_partition(const AllowedRegion& region);

/// Image of a point, nullopt when the map is undefined there.
using PointMap = std::function<std::optional<OrbitState>(OrbitState)>;

/// The billiard map on orbit space (map_state) as a PointMap.
PointMap billiard_point_map(const Params& params, const SearchOptions& options = {});

/// Test doubles: the identity, and a map sending every node of cell n to the
/// same relative position in cell n + 1 (mod N).
PointMap identity_point_map();
PointMap cyclic_permutation_map(const Partition& partition);

struct AssemblyStats {
  std::size_t nodes = 0;
  std::size_t escaped = 0;  // image outside the allowed cells
  std::size_t failed = 0;   // map undefined at the node (node outside the domain)
  std::size_t cells_mostly_failed = 0;   // more than half the nodes undefined
  std::size_t cells_outside_domain = 0;  // no node defined; M keeps the cell area
  std::vector<double> escape_fraction;   // per cell, escaped weight / defined weight; 1 outside the domain
};

/// A(m, n) = weight of the nodes of cell m whose image lies in cell n and
/// M(m) = weight of the nodes of cell m where the map is defined, so that
/// Galerkin coefficients satisfy A a = lambda M a and M^-1 A 1 = 1 on cells
/// without escapes.
struct KoopmanSystem {
  Partition partition;
  QuadratureRule rule;
  Eigen::MatrixXd A;
  Eigen::VectorXd M;  // diagonal
  AssemblyStats stats;

  Eigen::VectorXcd eigenvalues;  // sorted by |lambda - 1|
  Eigen::MatrixXcd eigenvectors; // columns for the leading eigenvalues
};

/// Escaping nodes contribute nothing to A; undefined nodes contribute to
/// neither A nor M. Threads: 0 uses the hardware concurrency. Throws
/// EmptyPartition, and MapFailureRate when more than half of all nodes fail.
KoopmanSystem assemble(const Partition& partition, const QuadratureRule& rule, const PointMap& map,
                       unsigned threads = 0);

/// All eigenvalues of M^-1 A, sorted by distance to 1, with eigenvectors for
/// the k_near_one closest. An exact constant eigenvector is reported first.
/// Throws ConvergenceFailure when a residual exceeds 1e-8 |v|.
void solve_spectrum(KoopmanSystem& system, std::size_t k_near_one);

struct ErgodicityDiagnostic {
  std::size_t count_near_one = 0;
  double gap = 0.0;  // |lambda_2 - 1|
};

ErgodicityDiagnostic ergodicity_diagnostic(const KoopmanSystem& system, double window);

/// Real part of eigenvector `index` after rotating its largest component to
/// the positive real axis, normalized to max |value| = 1, on the full grid
/// (nullopt on masked cells). Throws IndexOutOfRange.
std::vector<std::optional<double>> eigenfunction_levels(const KoopmanSystem& system, std::size_t index);

/// max |(M^-1 A 1) - 1|.
double constant_vector_defect(const KoopmanSystem& system);

/// Largest per-cell escape fraction.
double max_escape_fraction(const KoopmanSystem& system);

}  // namespace boltzmann
