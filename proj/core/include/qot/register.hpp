#pragma once
// A register is an ordered list of qudit sites with a common local dimension.
// The site at position 0 is the most significant digit of the computational
// basis index, so for qubits |x0 x1 ... x_{n-1}> maps to index
// x0*2^{n-1} + ... + x_{n-1}.

#include <vector>

namespace qot {

struct RegisterShape {
  int d = 2;                  // local dimension per site, >= 2
  std::vector<int> sites;     // ordered site labels, unique

  RegisterShape() = default;
  RegisterShape(int local_dim, std::vector<int> site_labels);

  int num_sites() const { return static_cast<int>(sites.size()); }
  long long dim() const;                 // d^n, guarded against overflow
  bool has_site(int label) const;
  int pos(int label) const;              // position of a label, throws if absent

  // Sub-register keeping this register's ordering, restricted to `labels`.
  RegisterShape subset(const std::vector<int>& labels) const;
  // Sub-register of all sites not in `labels`.
  RegisterShape complement(const std::vector<int>& labels) const;

  bool operator==(const RegisterShape& o) const { return d == o.d && sites == o.sites; }
};

// Single site register helper.
RegisterShape single_site(int d, int label);

}  // namespace qot
