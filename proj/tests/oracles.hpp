// Independent reference computations used by the tests. Nothing here calls
// into the library's numerical paths.
#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <random>
#include <vector>

#include "cournot/network.hpp"
#include "cournot/pd.hpp"

namespace oracle {

// Two-firm/two-market dynamics written out term by term, order (q11, q21, q22).
inline std::array<double, 3> two_by_two_field(double a1, double a2, double b1, double b2, double g1,
                                              double g2, double q11, double q21, double q22) {
  return {a1 - g1 * (q11 + q21) - 2.0 * b1 * q11,
          a2 - g1 * (q11 + q21) - b2 * (2.0 * q21 + q22),
          a2 - g2 * q22 - b2 * (2.0 * q22 + q21)};
}

// Dense market x firm quantity table; absent edges stay zero.
inline std::vector<std::vector<double>> dense(const cournot::NetworkSpec& spec,
                                              const cournot::FlowVector& q) {
  std::vector<std::vector<double>> table(spec.market_count,
                                         std::vector<double>(spec.firm_count, 0.0));
  auto order = spec.edges;
  std::sort(order.begin(), order.end());
  for (std::size_t k = 0; k < order.size(); ++k) {
    table[order[k].market][order[k].firm] = q(static_cast<Eigen::Index>(k));
  }
  return table;
}

// Profit of firm j from the dense table.
inline double profit(const cournot::NetworkSpec& spec, const cournot::FlowVector& q, int j) {
  const auto t = dense(spec, q);
  double s = 0.0;
  for (int i = 0; i < spec.market_count; ++i) s += t[i][j];
  double value = -spec.gamma[j] * s * s / 2.0;
  for (int i = 0; i < spec.market_count; ++i) {
    double c = 0.0;
    for (int l = 0; l < spec.firm_count; ++l) c += t[i][l];
    value += spec.alpha[i] * t[i][j] - spec.beta[i] * t[i][j] * c;
  }
  return value;
}

// Laplace expansion along the first row.
inline double determinant(const std::vector<std::vector<double>>& m) {
  const std::size_t n = m.size();
  if (n == 0) return 1.0;
  if (n == 1) return m[0][0];
  double det = 0.0;
  for (std::size_t col = 0; col < n; ++col) {
    std::vector<std::vector<double>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<double> row;
      for (std::size_t c = 0; c < n; ++c) {
        if (c != col) row.push_back(m[r][c]);
      }
      minor.push_back(row);
    }
    det += (col % 2 == 0 ? 1.0 : -1.0) * m[0][col] * determinant(minor);
  }
  return det;
}

// det(lambda I + A) = sum_k E_k(A) lambda^(n-k); E_k is the sum of k x k
// principal minors of A.
inline std::vector<double> char_poly_by_minors(const Eigen::MatrixXd& a) {
  const auto n = static_cast<int>(a.rows());
  std::vector<double> coeffs(n, 0.0);
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    std::vector<int> idx;
    for (int k = 0; k < n; ++k) {
      if (mask & (1u << k)) idx.push_back(k);
    }
    std::vector<std::vector<double>> sub(idx.size(), std::vector<double>(idx.size()));
    for (std::size_t r = 0; r < idx.size(); ++r) {
      for (std::size_t c = 0; c < idx.size(); ++c) sub[r][c] = a(idx[r], idx[c]);
    }
    coeffs[idx.size() - 1] += determinant(sub);
  }
  return coeffs;
}

inline double payoff(const cournot::pd::PayoffValues& m, bool self_c, bool other_c) {
  const double table[2][2] = {{m.R, m.S}, {m.T, m.U}};
  return table[self_c ? 0 : 1][other_c ? 0 : 1];
}

// 'C', 'D' or 'N' by checking both opponent strategies.
inline char dominance(const cournot::pd::PayoffValues& m) {
  bool c_dominates = true;
  bool d_dominates = true;
  for (bool other : {true, false}) {
    c_dominates = c_dominates && payoff(m, true, other) > payoff(m, false, other);
    d_dominates = d_dominates && payoff(m, false, other) > payoff(m, true, other);
  }
  return c_dominates ? 'C' : d_dominates ? 'D' : 'N';
}

// One synchronous imitation step on an explicit adjacency matrix.
inline std::vector<bool> imitation_step(const std::vector<std::vector<bool>>& adj,
                                        const std::vector<bool>& coop,
                                        const cournot::pd::PayoffValues& m) {
  const std::size_t n = coop.size();
  std::vector<double> score(n, 0.0);
  for (std::size_t p = 0; p < n; ++p) {
    int nc = 0;
    int nd = 0;
    for (std::size_t q = 0; q < n; ++q) {
      if (adj[p][q]) (coop[q] ? nc : nd)++;
    }
    score[p] = nc * payoff(m, coop[p], true) + nd * payoff(m, coop[p], false);
  }
  std::vector<bool> next = coop;
  for (std::size_t p = 0; p < n; ++p) {
    std::vector<std::size_t> closed{p};
    for (std::size_t q = 0; q < n; ++q) {
      if (adj[p][q]) closed.push_back(q);
    }
    double best = score[p];
    for (auto q : closed) best = std::max(best, score[q]);
    bool any_same = false;
    std::size_t lowest = n;
    for (auto q : closed) {
      if (score[q] == best) {
        any_same = any_same || coop[q] == coop[p];
        lowest = std::min(lowest, q);
      }
    }
    next[p] = any_same ? coop[p] : coop[lowest];
  }
  return next;
}

// Random valid network with up to `max_markets` x `max_firms` and random
// edges; every market and firm gets at least one edge.
inline cournot::NetworkSpec random_spec(std::mt19937_64& rng, int max_markets, int max_firms) {
  std::uniform_int_distribution<int> mk(1, max_markets);
  std::uniform_int_distribution<int> fk(1, max_firms);
  std::uniform_real_distribution<double> pos(0.1, 2.0);
  std::bernoulli_distribution coin(0.5);
  cournot::NetworkSpec spec;
  spec.market_count = mk(rng);
  spec.firm_count = fk(rng);
  std::vector<std::vector<bool>> has(spec.market_count, std::vector<bool>(spec.firm_count, false));
  for (int i = 0; i < spec.market_count; ++i) {
    for (int j = 0; j < spec.firm_count; ++j) has[i][j] = coin(rng);
  }
  for (int i = 0; i < spec.market_count; ++i) {
    has[i][std::uniform_int_distribution<int>(0, spec.firm_count - 1)(rng)] = true;
  }
  for (int j = 0; j < spec.firm_count; ++j) {
    has[std::uniform_int_distribution<int>(0, spec.market_count - 1)(rng)][j] = true;
  }
  for (int j = spec.firm_count - 1; j >= 0; --j) {
    for (int i = spec.market_count - 1; i >= 0; --i) {
      if (has[i][j]) spec.edges.push_back({i, j});
    }
  }
  for (int i = 0; i < spec.market_count; ++i) {
    spec.alpha.push_back(pos(rng));
    spec.beta.push_back(pos(rng));
  }
  for (int j = 0; j < spec.firm_count; ++j) {
    spec.gamma.push_back(pos(rng));
    spec.speed.push_back(pos(rng));
  }
  return spec;
}

inline cournot::FlowVector random_flow(std::mt19937_64& rng, std::size_t n, double lo = 0.0,
                                       double hi = 2.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  cournot::FlowVector q(static_cast<Eigen::Index>(n));
  for (Eigen::Index k = 0; k < q.size(); ++k) q(k) = u(rng);
  return q;
}

}  // namespace oracle
