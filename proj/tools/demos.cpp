#include "harness.hpp"

namespace qot::harness {

// The same documents ship as files under configs/; a test pins the bytes to
// these embedded copies.
const std::map<std::string, std::string>& demo_configs() {
  static const std::map<std::string, std::string> demos = {
      {"product-qubits",
       R"demo({
  "system": {
    "d": 2,
    "sites": [0, 1],
    "edges": [
      {"sites": [0], "matrix": [[[1, 0], [0, 0]], [[0, 0], [-1, 0]]]},
      {"sites": [1], "matrix": [[[1, 0], [0, 0]], [[0, 0], [-1, 0]]]}
    ]
  },
  "beta": 0.3,
  "tasks": ["w1", "lipschitz", "tci", "concentration", "ensembles"],
  "trials": 6,
  "seed": 11,
  "tolerances": {"quadrature": 1e-8}
}
)demo"},
      {"ising-chain-3",
       R"demo({
  "system": {
    "d": 2,
    "sites": [0, 1, 2],
    "edges": [
      {
        "sites": [0, 1],
        "matrix": [
          [[1, 0], [0, 0], [0, 0], [0, 0]],
          [[0, 0], [-1, 0], [0, 0], [0, 0]],
          [[0, 0], [0, 0], [-1, 0], [0, 0]],
          [[0, 0], [0, 0], [0, 0], [1, 0]]
        ]
      },
      {
        "sites": [1, 2],
        "matrix": [
          [[1, 0], [0, 0], [0, 0], [0, 0]],
          [[0, 0], [-1, 0], [0, 0], [0, 0]],
          [[0, 0], [0, 0], [-1, 0], [0, 0]],
          [[0, 0], [0, 0], [0, 0], [1, 0]]
        ]
      }
    ]
  },
  "beta": 0.1,
  "tasks": ["w1", "recovery", "dobrushin", "tci", "concentration"],
  "trials": 5,
  "seed": 23,
  "tolerances": {"quadrature": 1e-8}
}
)demo"},
      {"ising-ring-3",
       R"demo({
  "system": {
    "d": 2,
    "sites": [0, 1, 2],
    "edges": [
      {
        "sites": [0, 1],
        "matrix": [
          [[1, 0], [0, 0], [0, 0], [0, 0]],
          [[0, 0], [-1, 0], [0, 0], [0, 0]],
          [[0, 0], [0, 0], [-1, 0], [0, 0]],
          [[0, 0], [0, 0], [0, 0], [1, 0]]
        ]
      },
      {
        "sites": [1, 2],
        "matrix": [
          [[1, 0], [0, 0], [0, 0], [0, 0]],
          [[0, 0], [-1, 0], [0, 0], [0, 0]],
          [[0, 0], [0, 0], [-1, 0], [0, 0]],
          [[0, 0], [0, 0], [0, 0], [1, 0]]
        ]
      },
      {
        "sites": [0, 2],
        "matrix": [
          [[1, 0], [0, 0], [0, 0], [0, 0]],
          [[0, 0], [-1, 0], [0, 0], [0, 0]],
          [[0, 0], [0, 0], [-1, 0], [0, 0]],
          [[0, 0], [0, 0], [0, 0], [1, 0]]
        ]
      }
    ]
  },
  "beta": 0.001,
  "tasks": ["lipschitz", "curvature", "tci"],
  "trials": 4,
  "seed": 31,
  "tolerances": {"quadrature": 1e-8}
}
)demo"},
  };
  return demos;
}

}  // namespace qot::harness
