#include "qot/classical_w1.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace qot {

int hamming_distance(long long x, long long y, int d, int n_sites) {
  int dist = 0;
  for (int k = 0; k < n_sites; ++k) {
    if (x % d != y % d) ++dist;
    x /= d;
    y /= d;
  }
  return dist;
}

namespace {

struct Support {
  std::vector<long long> src, dst;    // string indices
  std::vector<double> supply, demand; // positive masses, equal totals
};

long long pow_ll(int d, int n) {
  long long r = 1;
  for (int i = 0; i < n; ++i) r *= d;
  return r;
}

Support split_difference(const std::vector<double>& p, const std::vector<double>& q,
                         int d, int n_sites) {
  if (d < 2 || n_sites < 1)
    throw std::invalid_argument("classical_w1: need d >= 2 and n >= 1");
  const long long dim = pow_ll(d, n_sites);
  if (static_cast<long long>(p.size()) != dim || static_cast<long long>(q.size()) != dim)
    throw std::invalid_argument("classical_w1: distribution size must be d^n");
  double sp = 0, sq = 0;
  for (long long i = 0; i < dim; ++i) {
    if (p[i] < -1e-12 || q[i] < -1e-12)
      throw std::invalid_argument("classical_w1: negative probability");
    sp += p[i];
    sq += q[i];
  }
  if (std::abs(sp - 1.0) > 1e-8 || std::abs(sq - 1.0) > 1e-8)
    throw std::invalid_argument("classical_w1: distributions must sum to 1");
  Support s;
  for (long long i = 0; i < dim; ++i) {
    const double r = p[i] - q[i];
    if (r > 1e-15) {
      s.src.push_back(i);
      s.supply.push_back(r);
    } else if (r < -1e-15) {
      s.dst.push_back(i);
      s.demand.push_back(-r);
    }
  }
  return s;
}

double cell_cost(const Support& s, int i, int j, int d, int n_sites) {
  return static_cast<double>(hamming_distance(s.src[i], s.dst[j], d, n_sites));
}

// Transportation network simplex: northwest-corner start, potentials from the
// basis tree, Bland's rule on entering and leaving cells so degenerate pivots
// cannot cycle.
double network_simplex(const Support& sup, int d, int n_sites) {
  const int s = static_cast<int>(sup.src.size());
  const int t = static_cast<int>(sup.dst.size());
  if (s == 0 || t == 0) return 0.0;

  std::vector<char> basic(static_cast<size_t>(s) * t, 0);
  std::vector<double> flow(static_cast<size_t>(s) * t, 0.0);
  auto at = [t](int i, int j) { return static_cast<size_t>(i) * t + j; };

  {
    std::vector<double> ra = sup.supply, rb = sup.demand;
    int i = 0, j = 0;
    while (true) {
      const double f = std::min(ra[i], rb[j]);
      basic[at(i, j)] = 1;
      flow[at(i, j)] = f;
      ra[i] -= f;
      rb[j] -= f;
      if (i == s - 1 && j == t - 1) break;
      if (ra[i] <= rb[j] && i < s - 1)
        ++i;
      else if (j < t - 1)
        ++j;
      else
        ++i;
    }
  }

  const double tol = 1e-12;
  std::vector<double> u(s), v(t);
  std::vector<char> u_set(s), v_set(t);
  std::vector<int> parent_cell(s + t);  // tree edge toward the DFS root

  const long long max_pivots = 50000LL * (s + t);
  for (long long pivot = 0;; ++pivot) {
    if (pivot > max_pivots)
      throw std::logic_error("classical_w1: simplex pivot budget exceeded");

    // potentials u_i + v_j = c_ij on basic cells
    std::fill(u_set.begin(), u_set.end(), 0);
    std::fill(v_set.begin(), v_set.end(), 0);
    u[0] = 0.0;
    u_set[0] = 1;
    for (int round = 0; round < s + t; ++round) {
      bool changed = false;
      for (int i = 0; i < s; ++i)
        for (int j = 0; j < t; ++j) {
          if (!basic[at(i, j)]) continue;
          if (u_set[i] && !v_set[j]) {
            v[j] = cell_cost(sup, i, j, d, n_sites) - u[i];
            v_set[j] = 1;
            changed = true;
          } else if (!u_set[i] && v_set[j]) {
            u[i] = cell_cost(sup, i, j, d, n_sites) - v[j];
            u_set[i] = 1;
            changed = true;
          }
        }
      if (!changed) break;
    }

    // entering cell: first negative reduced cost in index order
    int ei = -1, ej = -1;
    for (int i = 0; i < s && ei < 0; ++i)
      for (int j = 0; j < t; ++j) {
        if (basic[at(i, j)]) continue;
        if (cell_cost(sup, i, j, d, n_sites) - u[i] - v[j] < -tol) {
          ei = i;
          ej = j;
          break;
        }
      }
    if (ei < 0) break;  // optimal

    // unique tree path from row node ei to column node s+ej
    std::fill(parent_cell.begin(), parent_cell.end(), -1);
    std::vector<int> stack = {ei};
    std::vector<char> seen(s + t, 0);
    seen[ei] = 1;
    while (!stack.empty()) {
      const int node = stack.back();
      stack.pop_back();
      if (node == s + ej) break;
      if (node < s) {
        for (int j = 0; j < t; ++j)
          if (basic[at(node, j)] && !seen[s + j]) {
            seen[s + j] = 1;
            parent_cell[s + j] = node * t + j;
            stack.push_back(s + j);
          }
      } else {
        const int j = node - s;
        for (int i = 0; i < s; ++i)
          if (basic[at(i, j)] && !seen[i]) {
            seen[i] = 1;
            parent_cell[i] = i * t + j;
            stack.push_back(i);
          }
      }
    }
    if (!seen[s + ej]) throw std::logic_error("classical_w1: basis lost tree structure");

    // walk back collecting the alternating cycle; cells at odd positions
    // (counting the entering cell as position 0) lose theta
    std::vector<int> minus_cells, plus_cells;
    int node = s + ej;
    int sign = -1;  // first path cell shares the column with the entering cell
    while (node != ei) {
      const int cell = parent_cell[node];
      (sign < 0 ? minus_cells : plus_cells).push_back(cell);
      sign = -sign;
      const int ci = cell / t, cj = cell % t;
      node = (node == ci) ? s + cj : ci;
    }

    double theta = std::numeric_limits<double>::infinity();
    for (int cell : minus_cells) theta = std::min(theta, flow[cell]);
    // smallest cell index among the minimizers leaves (Bland)
    int leave = -1;
    for (int cell : minus_cells)
      if (flow[cell] <= theta + tol * (1 + theta) && (leave < 0 || cell < leave)) leave = cell;

    for (int cell : minus_cells) flow[cell] -= theta;
    for (int cell : plus_cells) flow[cell] += theta;
    flow[at(ei, ej)] = theta;
    basic[at(ei, ej)] = 1;
    basic[leave] = 0;
    flow[leave] = 0.0;
  }

  double total = 0.0;
  for (int i = 0; i < s; ++i)
    for (int j = 0; j < t; ++j)
      if (basic[at(i, j)]) total += flow[at(i, j)] * cell_cost(sup, i, j, d, n_sites);
  return total;
}

}  // namespace

double classical_w1_hamming(const std::vector<double>& p, const std::vector<double>& q,
                            int d, int n_sites) {
  return network_simplex(split_difference(p, q, d, n_sites), d, n_sites);
}

double classical_w1_oracle(const std::vector<double>& p, const std::vector<double>& q, int d,
                           int n_sites) {
  const Support sup = split_difference(p, q, d, n_sites);
  if (sup.src.size() + sup.dst.size() <= 8)
    return classical_w1_hamming_bruteforce(p, q, d, n_sites);
  return network_simplex(sup, d, n_sites);
}

double classical_w1_hamming_bruteforce(const std::vector<double>& p,
                                       const std::vector<double>& q, int d, int n_sites) {
  const Support sup = split_difference(p, q, d, n_sites);
  const int s = static_cast<int>(sup.src.size());
  const int t = static_cast<int>(sup.dst.size());
  if (s == 0 || t == 0) return 0.0;
  if (s + t > 12)
    throw std::invalid_argument("classical_w1 bruteforce: support too large (" +
                                std::to_string(s + t) + " points)");

  const int cells = s * t;
  const int k = s + t - 1;
  std::vector<int> pick(k);
  for (int i = 0; i < k; ++i) pick[i] = i;

  double best = std::numeric_limits<double>::infinity();
  std::vector<int> degree(s + t);
  std::vector<double> residual(s + t);
  std::vector<char> done(k);

  while (true) {
    // spanning-tree test by leaf peeling, which also solves the flows
    std::fill(degree.begin(), degree.end(), 0);
    for (int e = 0; e < k; ++e) {
      degree[pick[e] / t]++;
      degree[s + pick[e] % t]++;
    }
    for (int i = 0; i < s; ++i) residual[i] = sup.supply[i];
    for (int j = 0; j < t; ++j) residual[s + j] = sup.demand[j];
    std::fill(done.begin(), done.end(), 0);

    bool feasible = true;
    double cost = 0.0;
    for (int solved = 0; solved < k && feasible; ++solved) {
      int e = -1, leaf = -1;
      for (int c = 0; c < k && e < 0; ++c) {
        if (done[c]) continue;
        const int i = pick[c] / t, j = s + pick[c] % t;
        if (degree[i] == 1) {
          e = c;
          leaf = i;
        } else if (degree[j] == 1) {
          e = c;
          leaf = j;
        }
      }
      if (e < 0) {
        feasible = false;  // a cycle remains, not a tree
        break;
      }
      const int i = pick[e] / t, j = s + pick[e] % t;
      const int other = (leaf == i) ? j : i;
      const double f = residual[leaf];
      if (f < -1e-12) {
        feasible = false;
        break;
      }
      residual[other] -= f;
      residual[leaf] = 0;
      degree[i]--;
      degree[j]--;
      done[e] = 1;
      cost += f * cell_cost(sup, pick[e] / t, pick[e] % t, d, n_sites);
    }
    if (feasible) best = std::min(best, cost);

    // next k-combination of cells
    int pos = k - 1;
    while (pos >= 0 && pick[pos] == cells - k + pos) --pos;
    if (pos < 0) break;
    ++pick[pos];
    for (int i = pos + 1; i < k; ++i) pick[i] = pick[i - 1] + 1;
  }

  if (!std::isfinite(best))
    throw std::logic_error("classical_w1 bruteforce: no feasible tree found");
  return best;
}

}  // namespace qot
