#pragma once

#include <memory>
#include <unordered_map>
#include <vector>

#include "epsilocal/tower.hpp"

namespace epsilocal {

using IntMatrix = std::vector<std::vector<i64>>;

/// U * A * V = D with D diagonal, d_i | d_{i+1}, U and V unimodular.
struct SmithForm {
  std::vector<i64> diagonal;
  IntMatrix U;
  IntMatrix V;
  IntMatrix V_inverse;
};

/// Smith normal form of a square integer matrix, tracking both transforms.
SmithForm smith_normal_form(IntMatrix A);

IntMatrix multiply(const IntMatrix& A, const IntMatrix& B);

/// The finite group U/U^m of units of a ResidueRing, as a product of cyclic
/// factors Z/d_1 x ... x Z/d_r with chosen generators.
class UnitQuotient {
 public:
  static std::shared_ptr<const UnitQuotient> build(const ResidueRing& ring);

  const ResidueRing& ring() const { return ring_; }
  int level() const { return ring_.level(); }
  const std::vector<i64>& orders() const { return orders_; }
  const std::vector<u64>& generators() const { return generators_; }
  /// All unit keys in ascending order.
  const std::vector<u64>& elements() const { return elements_; }
  /// Coordinates of a unit on generators(), each reduced mod its order.
  const std::vector<i64>& dlog(u64 key) const;
  u64 order() const { return elements_.size(); }
  /// lcm of the cyclic orders.
  i64 exponent() const { return exponent_; }
  /// Keys of 1 + pi^j eps_i spanning U^j/U^{j+1} for j >= 1; for j = 0, the
  /// residue generator.
  std::vector<u64> filtration_generators(int j) const;

 private:
  explicit UnitQuotient(ResidueRing ring) : ring_(std::move(ring)) {}

  ResidueRing ring_;
  std::vector<i64> orders_;
  std::vector<u64> generators_;
  std::vector<u64> elements_;
  std::unordered_map<u64, std::size_t> index_;
  std::vector<std::vector<i64>> coords_;
  i64 exponent_ = 1;
};

using UnitQuotientPtr = std::shared_ptr<const UnitQuotient>;

}  // namespace epsilocal
