#include "boltzmann/koopman.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <thread>

#include <Eigen/Eigenvalues>

#include "boltzmann/quadrature.hpp"

namespace boltzmann {

QuadratureRule make_rule(QuadratureKind kind, std::size_t L) {
  const auto K = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(L))));
  if (L == 0 || K * K != L) {
    std::ostringstream os;
    os << "node count L=" << L << " must be a positive perfect square (K x K tensor rule)";
    throw Error(ErrorCode::DomainError, os.str());
  }
  QuadratureRule rule;
  rule.kind = kind;
  rule.K = K;
  if (kind == QuadratureKind::UniformMidpoint) {
    for (std::size_t i = 0; i < K; ++i) {
      rule.nodes.push_back((static_cast<double>(i) + 0.5) / static_cast<double>(K));
      rule.weights.push_back(1.0 / static_cast<double>(K));
    }
  } else {
    const GaussLegendre gl = gauss_legendre(static_cast<int>(K));
    for (std::size_t i = 0; i < K; ++i) {
      rule.nodes.push_back(0.5 * (gl.nodes[i] + 1.0));
      rule.weights.push_back(0.5 * gl.weights[i]);
    }
  }
  return rule;
}

OrbitState Partition::lower_corner(std::size_t n) const {
  const std::size_t flat = cells[n];
  const std::size_t i_g = flat / region.n_C;
  const std::size_t i_C = flat % region.n_C;
  return {region.g_origin + static_cast<double>(i_g) * region.cell_width(),
          region.C_min + static_cast<double>(i_C) * region.cell_height()};
}

std::optional<std::size_t> Partition::locate(OrbitState state) const {
  const auto flat = region.cell_of(state);
  if (!flat || index_of_cell[*flat] < 0) return std::nullopt;
  return static_cast<std::size_t>(index_of_cell[*flat]);
}

Partition make_partition(const AllowedRegion& region) {
  Partition partition;
  partition.region = region;
  partition.index_of_cell.assign(region.mask.size(), -1);
  for (std::size_t flat = 0; flat < region.mask.size(); ++flat) {
    if (!region.mask[flat]) continue;
    partition.index_of_cell[flat] = static_cast<long>(partition.cells.size());
    partition.cells.push_back(flat);
    partition.areas.push_back(region.cell_area());
  }
  return partition;
}

PointMap billiard_point_map(const Params& params, const SearchOptions& options) {
  return [params, options](OrbitState x) -> std::optional<OrbitState> {
    try {
      return map_state(params, x, options).next_state;
    } catch (const Error&) {
      return std::nullopt;
    }
  };
}

PointMap identity_point_map() {
  return [](OrbitState x) -> std::optional<OrbitState> { return x; };
}

PointMap cyclic_permutation_map(const Partition& partition) {
  return [&partition](OrbitState x) -> std::optional<OrbitState> {
    const auto n = partition.locate(x);
    if (!n) return std::nullopt;
    const OrbitState from = partition.lower_corner(*n);
    const OrbitState to = partition.lower_corner((*n + 1) % partition.N());
    return OrbitState{to.g + (x.g - from.g), to.C + (x.C - from.C)};
  };
}

KoopmanSystem assemble(const Partition& partition, const QuadratureRule& rule, const PointMap& map, unsigned threads) {
  const std::size_t N = partition.N();
  if (N == 0) throw Error(ErrorCode::EmptyPartition, "no allowed cells to assemble over");

  KoopmanSystem system;
  system.partition = partition;
  system.rule = rule;
  system.A = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(N), static_cast<Eigen::Index>(N));
  system.M = Eigen::Map<const Eigen::VectorXd>(partition.areas.data(), static_cast<Eigen::Index>(N));

  std::vector<std::size_t> escaped(N, 0);
  std::vector<std::size_t> failed(N, 0);
  std::vector<double> defined_mass(N, 0.0);
  std::vector<double> escaped_mass(N, 0.0);
  const double w = partition.region.cell_width();
  const double h = partition.region.cell_height();

  // Each row belongs to exactly one cell, so workers write disjoint rows.
  auto work = [&](std::size_t first, std::size_t stride) {
    for (std::size_t m = first; m < N; m += stride) {
      const OrbitState corner = partition.lower_corner(m);
      const double area = partition.areas[m];
      for (std::size_t a = 0; a < rule.K; ++a) {
        for (std::size_t b = 0; b < rule.K; ++b) {
          const OrbitState node{corner.g + rule.nodes[a] * w, corner.C + rule.nodes[b] * h};
          const double weight = rule.weights[a] * rule.weights[b] * area;
          const auto image = map(node);
          if (!image) {
            ++failed[m];
            continue;
          }
          defined_mass[m] += weight;
          const auto n = partition.locate(*image);
          if (!n) {
            ++escaped[m];
            escaped_mass[m] += weight;
            continue;
          }
          system.A(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(*n)) += weight;
        }
      }
    }
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, N));
  if (threads <= 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t, threads);
    for (auto& th : pool) th.join();
  }

  const std::size_t L = rule.L();
  system.stats.nodes = N * L;
  system.stats.escape_fraction.assign(N, 0.0);
  for (std::size_t m = 0; m < N; ++m) {
    system.stats.escaped += escaped[m];
    system.stats.failed += failed[m];
    if (2 * failed[m] > L) ++system.stats.cells_mostly_failed;
    // Nodes where the map is undefined lie outside the billiard domain X, so
    // the basis function of cell m is the indicator of (cell m) n X and its
    // norm is the quadrature measure of that intersection.
    if (defined_mass[m] > 0.0) {
      system.M[static_cast<Eigen::Index>(m)] = defined_mass[m];
      system.stats.escape_fraction[m] = escaped_mass[m] / defined_mass[m];
    } else {
      // M keeps the area and the row stays empty: the whole cell leaks.
      ++system.stats.cells_outside_domain;
      system.stats.escape_fraction[m] = 1.0;
    }
  }
  if (2 * system.stats.failed > system.stats.nodes) {
    std::ostringstream os;
    os << "map undefined at " << system.stats.failed << " of " << system.stats.nodes
       << " nodes; the region mask does not match the map";
    throw Error(ErrorCode::MapFailureRate, os.str());
  }
  return system;
}

double constant_vector_defect(const KoopmanSystem& system) {
  const Eigen::VectorXd row_mass = system.A.rowwise().sum();
  return (row_mass.array() / system.M.array() - 1.0).abs().maxCoeff();
}

double max_escape_fraction(const KoopmanSystem& system) {
  const auto& f = system.stats.escape_fraction;
  return f.empty() ? 0.0 : *std::max_element(f.begin(), f.end());
}

void solve_spectrum(KoopmanSystem& system, std::size_t k_near_one) {
  const Eigen::Index N = system.A.rows();
  const Eigen::MatrixXd B = system.M.cwiseInverse().asDiagonal() * system.A;
  Eigen::EigenSolver<Eigen::MatrixXd> solver(B, true);
  if (solver.info() != Eigen::Success) throw Error(ErrorCode::ConvergenceFailure, "eigensolver did not converge");

  const Eigen::VectorXcd values = solver.eigenvalues();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(N));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    const double da = std::abs(values[a] - 1.0);
    const double db = std::abs(values[b] - 1.0);
    if (da != db) return da < db;
    return values[a].imag() > values[b].imag();
  });

  const Eigen::Index k = std::min<Eigen::Index>(static_cast<Eigen::Index>(k_near_one), N);
  system.eigenvalues.resize(N);
  system.eigenvectors.resize(N, k);
  const Eigen::MatrixXcd vectors = solver.eigenvectors();
  for (Eigen::Index i = 0; i < N; ++i) system.eigenvalues[i] = values[order[static_cast<std::size_t>(i)]];
  for (Eigen::Index i = 0; i < k; ++i) system.eigenvectors.col(i) = vectors.col(order[static_cast<std::size_t>(i)]);

  // Without escapes the constant function is invariant; report it as is
  // rather than as an arbitrary vector of a possibly degenerate eigenspace.
  if (k > 0 && constant_vector_defect(system) <= 1e-12 && std::abs(system.eigenvalues[0] - 1.0) <= 1e-10) {
    system.eigenvalues[0] = 1.0;
    system.eigenvectors.col(0).setConstant(std::complex<double>(1.0 / std::sqrt(static_cast<double>(N)), 0.0));
  }

  const Eigen::MatrixXcd A = system.A.cast<std::complex<double>>();
  for (Eigen::Index i = 0; i < k; ++i) {
    const Eigen::VectorXcd v = system.eigenvectors.col(i);
    const Eigen::VectorXcd r = A * v - system.eigenvalues[i] * (system.M.cast<std::complex<double>>().asDiagonal() * v);
    if (r.norm() > 1e-8 * v.norm()) {
      std::ostringstream os;
      os << "eigenpair " << i << " residual |Av - lambda Mv| = " << r.norm() << " exceeds 1e-8 |v|";
      throw Error(ErrorCode::ConvergenceFailure, os.str());
    }
  }
}

ErgodicityDiagnostic ergodicity_diagnostic(const KoopmanSystem& system, double window) {
  ErgodicityDiagnostic d;
  for (Eigen::Index i = 0; i < system.eigenvalues.size(); ++i) {
    if (std::abs(system.eigenvalues[i] - 1.0) <= window) ++d.count_near_one;
  }
  d.gap = system.eigenvalues.size() > 1 ? std::abs(system.eigenvalues[1] - 1.0) : 0.0;
  return d;
}

std::vector<std::optional<double>> eigenfunction_levels(const KoopmanSystem& system, std::size_t index) {
  if (index >= static_cast<std::size_t>(system.eigenvectors.cols())) {
    std::ostringstream os;
    os << "eigenvector " << index << " requested, " << system.eigenvectors.cols() << " available";
    throw Error(ErrorCode::IndexOutOfRange, os.str());
  }
  const Eigen::VectorXcd v = system.eigenvectors.col(static_cast<Eigen::Index>(index));
  Eigen::Index top = 0;
  v.cwiseAbs().maxCoeff(&top);
  const std::complex<double> phase = std::abs(v[top]) > 0.0 ? std::conj(v[top]) / std::abs(v[top]) : 1.0;
  const Eigen::VectorXd re = (v * phase).real();
  const double scale = re.cwiseAbs().maxCoeff();

  std::vector<std::optional<double>> levels(system.partition.region.mask.size());
  for (std::size_t n = 0; n < system.partition.N(); ++n) {
    const double value = re[static_cast<Eigen::Index>(n)];
    levels[system.partition.cells[n]] = scale > 0.0 ? value / scale : 0.0;
  }
  return levels;
}

}  // namespace boltzmann
