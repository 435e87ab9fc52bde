#include "qot/register.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace qot {

RegisterShape::RegisterShape(int local_dim, std::vector<int> site_labels)
    : d(local_dim), sites(std::move(site_labels)) {
  if (d < 2) throw std::invalid_argument("RegisterShape: local dimension must be >= 2");
  std::vector<int> sorted = sites;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw std::invalid_argument("RegisterShape: duplicate site labels");
}

long long RegisterShape::dim() const {
  long long v = 1;
  for (size_t i = 0; i < sites.size(); ++i) {
    if (v > (1LL << 40) / d)
      throw std::overflow_error("RegisterShape: dimension overflow");
    v *= d;
  }
  return v;
}

bool RegisterShape::has_site(int label) const {
  return std::find(sites.begin(), sites.end(), label) != sites.end();
}

int RegisterShape::pos(int label) const {
  auto it = std::find(sites.begin(), sites.end(), label);
  if (it == sites.end())
    throw std::invalid_argument("RegisterShape: unknown site label " + std::to_string(label));
  return static_cast<int>(it - sites.begin());
}

RegisterShape RegisterShape::subset(const std::vector<int>& labels) const {
  for (int l : labels) (void)pos(l);
  std::vector<int> kept;
  for (int s : sites)
    if (std::find(labels.begin(), labels.end(), s) != labels.end()) kept.push_back(s);
  return RegisterShape(d, kept);
}

RegisterShape RegisterShape::complement(const std::vector<int>& labels) const {
  for (int l : labels) (void)pos(l);
  std::vector<int> kept;
  for (int s : sites)
    if (std::find(labels.begin(), labels.end(), s) == labels.end()) kept.push_back(s);
  return RegisterShape(d, kept);
}

RegisterShape single_site(int d, int label) { return RegisterShape(d, {label}); }

}  // namespace qot
