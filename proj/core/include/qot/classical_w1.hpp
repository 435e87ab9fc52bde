#pragma once
// Exact Wasserstein-1 distance between probability distributions on [d]^n
// strings with the Hamming ground metric, solved as a transportation LP on
// the positive/negative parts of p - q.

#include <vector>

namespace qot {

// Number of digit positions where the base-d expansions of x and y differ.
int hamming_distance(long long x, long long y, int d, int n_sites);

// Network-simplex solution; exact up to pivot tolerance 1e-12.
double classical_w1_hamming(const std::vector<double>& p, const std::vector<double>& q,
                            int d, int n_sites);

// Exhaustive enumeration of the transportation polytope's vertices
// (spanning trees of the bipartite support graph).  Only for tiny supports;
// used as an independent oracle for the simplex solver.
double classical_w1_hamming_bruteforce(const std::vector<double>& p,
                                       const std::vector<double>& q, int d, int n_sites);

// Dispatcher: exhaustive enumeration when the difference support has at most
// 8 points, network simplex otherwise.
double classical_w1_oracle(const std::vector<double>& p, const std::vector<double>& q, int d,
                           int n_sites);

}  // namespace qot
