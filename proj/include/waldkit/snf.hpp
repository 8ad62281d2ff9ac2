#pragma once

#include <cstdint>
#include <string>
#include <tuple>
#include <vector>

namespace waldkit {

struct SparseMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<std::tuple<int, int, std::int64_t>> entries;
};

struct SNFResult {
  int rank = 0;
  // Invariant factors greater than one, nondecreasing, each dividing the next.
  std::vector<std::int64_t> torsion;
};

// Exact Smith normal form. Runs in 64-bit arithmetic and redoes the
// elimination with arbitrary precision if an intermediate overflows.
SNFResult smith_normal_form(const SparseMatrix& m);

// Finitely generated abelian group Z^free + sum Z/t.
struct AbelianGroup {
  int free_rank = 0;
  std::vector<std::int64_t> torsion;

  bool operator==(const AbelianGroup&) const = default;
  std::string str() const;
};

// Cokernel of the relation matrix (rows are relations among cols generators).
AbelianGroup cokernel(const SparseMatrix& relations);

AbelianGroup direct_sum(const AbelianGroup& a, const AbelianGroup& b);

}  // namespace waldkit
