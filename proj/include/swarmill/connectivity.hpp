#pragma once

// Interaction graphs over a microstate: the directed vis-disk graph (who sees
// whom), the undirected r-disk graph (who is within range), Laplacian
// algebraic connectivity, and directed strong connectivity. The disk graph's
// lambda2 gives the sufficient disconnection test: lambda2(L_disk) = 0
// implies the vis-disk graph is disconnected too.

#include <cstdint>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "swarmill/core.hpp"

namespace swarmill {

/// a(i, j) = 1 iff edge (v_j, v_i) is present, i.e. agent i sees / is within
/// range of agent j. Zero diagonal. Disk graphs are symmetric.
struct InteractionGraph {
  int n = 0;
  bool directed = false;
  std::vector<std::uint8_t> adjacency;  // row-major n*n

  std::uint8_t at(int i, int j) const { return adjacency[static_cast<std::size_t>(i) * n + j]; }
  std::uint8_t& at(int i, int j) { return adjacency[static_cast<std::size_t>(i) * n + j]; }
};

/// Directed sight graph: a(i, j) = 1 iff agent j is inside agent i's FOV.
inline InteractionGraph vis_disk_graph(const Microstate& state, const SwarmParams& params) {
  const int n = state.size();
  InteractionGraph g{n, true, std::vector<std::uint8_t>(static_cast<std::size_t>(n) * n, 0)};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (j != i && in_fov(state.agents[i], state.agents[j].x, state.agents[j].y, params))
        g.at(i, j) = 1;
  return g;
}

/// Undirected range graph: a(i, j) = 1 iff ||p_j - p_i|| < gamma (strict).
inline InteractionGraph disk_graph(const Microstate& state, const SwarmParams& params) {
  const int n = state.size();
  InteractionGraph g{n, false, std::vector<std::uint8_t>(static_cast<std::size_t>(n) * n, 0)};
  const double g2 = params.gamma * params.gamma;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double dx = state.agents[j].x - state.agents[i].x;
      const double dy = state.agents[j].y - state.agents[i].y;
      if (dx * dx + dy * dy < g2) g.at(i, j) = g.at(j, i) = 1;
    }
  }
  return g;
}

namespace detail {

inline constexpr double kEigClamp = 1e-9;

inline Eigen::MatrixXd laplacian(const InteractionGraph& g) {
  Eigen::MatrixXd l = Eigen::MatrixXd::Zero(g.n, g.n);
  for (int i = 0; i < g.n; ++i) {
    double degree = 0.0;
    for (int j = 0; j < g.n; ++j) {
      if (g.at(i, j)) {
        l(i, j) = -1.0;
        degree += 1.0;
      }
    }
    l(i, i) = degree;
  }
  return l;
}

inline double clamp_eigen(double lambda) {
  return (lambda < 0.0 && lambda >= -kEigClamp) ? 0.0 : lambda;
}

}  // namespace detail

/// Second-smallest Laplacian eigenvalue by full symmetric eigensolve.
inline double algebraic_connectivity_dense(const InteractionGraph& g) {
  if (g.directed) throw std::invalid_argument("algebraic_connectivity: directed graph; use strong_connectivity");
  if (g.n < 2) throw std::invalid_argument("algebraic_connectivity: n >= 2 required");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(detail::laplacian(g), Eigen::EigenvaluesOnly);
  return detail::clamp_eigen(solver.eigenvalues()(1));
}

/// Smallest eigenvalue of L restricted to the complement of span{1}, by
/// Lanczos with full reorthogonalization. Exact once the Krylov space
/// exhausts, so it serves any n; used as the large-n path.
inline double algebraic_connectivity_lanczos(const InteractionGraph& g) {
  if (g.directed) throw std::invalid_argument("algebraic_connectivity: directed graph; use strong_connectivity");
  const int n = g.n;
  if (n < 2) throw std::invalid_argument("algebraic_connectivity: n >= 2 required");
  const Eigen::MatrixXd l = detail::laplacian(g);
  const Eigen::VectorXd ones = Eigen::VectorXd::Constant(n, 1.0 / std::sqrt(double(n)));

  // Deterministic start vector, deflated against the known null direction.
  Eigen::VectorXd v0(n);
  Rng rng(0x5EEDBA5Eull);
  for (int i = 0; i < n; ++i) v0(i) = rng.uniform(-1.0, 1.0);
  v0 -= ones.dot(v0) * ones;
  if (v0.norm() < 1e-12) {
    v0.setZero();
    v0(0) = 1.0;
    v0 -= ones.dot(v0) * ones;
  }
  v0.normalize();

  const int max_steps = n - 1;
  std::vector<Eigen::VectorXd> basis{v0};
  std::vector<double> alpha, beta;
  double best = 0.0;
  for (int m = 0; m < max_steps; ++m) {
    Eigen::VectorXd w = l * basis[m];
    const double a = basis[m].dot(w);
    alpha.push_back(a);
    w -= a * basis[m];
    if (m > 0) w -= beta[m - 1] * basis[m - 1];
    w -= ones.dot(w) * ones;
    for (const auto& q : basis) w -= q.dot(w) * q;

    const int k = m + 1;
    Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(k, k);
    for (int i = 0; i < k; ++i) {
      tri(i, i) = alpha[i];
      if (i + 1 < k) tri(i, i + 1) = tri(i + 1, i) = beta[i];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> small(tri);
    int idx = 0;
    small.eigenvalues().minCoeff(&idx);
    best = small.eigenvalues()(idx);

    const double b = w.norm();
    if (b < 1e-13) break;  // Krylov space exhausted; Ritz values exact
    const double residual = std::abs(b * small.eigenvectors()(k - 1, idx));
    if (residual < 1e-12 * std::max(1.0, std::abs(best))) break;
    beta.push_back(b);
    basis.push_back(w / b);
  }
  return detail::clamp_eigen(best);
}

/// lambda2 of an undirected graph; full spectrum for n <= 64, Lanczos above.
inline double algebraic_connectivity(const InteractionGraph& g) {
  return g.n <= 64 ? algebraic_connectivity_dense(g) : algebraic_connectivity_lanczos(g);
}

/// True iff every vertex reaches every other along directed edges.
inline bool strong_connectivity(const InteractionGraph& g) {
  const int n = g.n;
  if (n <= 1) return true;
  // Edge (v_j, v_i), i.e. a(i, j) = 1, is an arc j -> i. Strong connectivity
  // holds iff vertex 0 reaches all vertices forward and backward.
  const auto reach_all = [&](bool forward) {
    std::vector<char> seen(n, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      for (int w = 0; w < n; ++w) {
        const bool arc = forward ? g.at(w, u) != 0 : g.at(u, w) != 0;
        if (arc && !seen[w]) {
          seen[w] = 1;
          ++count;
          stack.push_back(w);
        }
      }
    }
    return count == n;
  };
  return reach_all(true) && reach_all(false);
}

/// Number of connected components of an undirected graph.
inline int connected_component_count(const InteractionGraph& g) {
  if (g.directed) throw std::invalid_argument("connected_component_count: undirected graph required");
  const int n = g.n;
  std::vector<char> seen(n, 0);
  int components = 0;
  for (int start = 0; start < n; ++start) {
    if (seen[start]) continue;
    ++components;
    std::vector<int> stack{start};
    seen[start] = 1;
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      for (int w = 0; w < n; ++w) {
        if (g.at(u, w) && !seen[w]) {
          seen[w] = 1;
          stack.push_back(w);
        }
      }
    }
  }
  return components;
}

inline constexpr double kLambdaEps = 1e-6;

/// Lemma-style single-swarm test: lambda2(L_disk) > eps. False certifies the
/// vis-disk graph is disconnected; true is NOT a connectivity certificate
/// for the vis-disk graph.
inline bool is_single_swarm(const Microstate& state, const SwarmParams& params,
                            double eps_lambda = kLambdaEps) {
  if (state.size() <= 1) return true;
  return algebraic_connectivity(disk_graph(state, params)) > eps_lambda;
}

}  // namespace swarmill
