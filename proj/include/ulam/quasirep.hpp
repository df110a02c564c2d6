#pragma once

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ulam/groups.hpp"
#include "ulam/linalg.hpp"

namespace ulam::rep {

using groups::FreeWord;

// Map from a finite group into U(d), one unitary per element, with the value
// at the identity pinned to Id exactly.
class FiniteQuasiRep {
 public:
  FiniteQuasiRep(groups::GroupPtr group, std::vector<linalg::CMatrix> values);

  const groups::FiniteGroup& group() const { return *group_; }
  const groups::GroupPtr& group_ptr() const { return group_; }
  int dim() const { return dim_; }
  const linalg::CMatrix& value(int g) const { return values_[g]; }
  const std::vector<linalg::CMatrix>& values() const { return values_; }

  FiniteQuasiRep conjugated(const linalg::CMatrix& u) const;  // u mu(.) u*
  bool is_homomorphism(double tol) const;

 private:
  groups::GroupPtr group_;
  int dim_;
  std::vector<linalg::CMatrix> values_;
};

// Map from reduced words into U(d) given by an evaluator with mu(e) = Id.
// Table-backed instances carry the radius beyond which they are undefined.
class FreeQuasiRep {
 public:
  using Evaluator = std::function<linalg::CMatrix(const FreeWord&)>;

  FreeQuasiRep(int generators, int dim, Evaluator eval,
               std::optional<int> max_radius = std::nullopt);

  int generators() const { return generators_; }
  int dim() const { return dim_; }
  std::optional<int> max_radius() const { return max_radius_; }
  linalg::CMatrix value(const FreeWord& w) const;

 private:
  int generators_;
  int dim_;
  Evaluator eval_;
  std::optional<int> max_radius_;
};

struct FiniteDefectReport {
  double value = 0.0;
  int witness_x = 0;
  int witness_y = 0;
};

struct FreeDefectReport {
  double value = 0.0;
  FreeWord witness_x;
  FreeWord witness_y;
  int truncation = 0;
};

// sup over all pairs of ||mu(xy) - mu(x) mu(y)||; witness is the first
// attaining pair in row-major enumeration order.
FiniteDefectReport defect(const FiniteQuasiRep& mu);

// Same over reduced pairs with |x|, |y|, |xy| <= L. Scans in ball order;
// parallelized internally with a deterministic reduction.
FreeDefectReport defect(const FreeQuasiRep& mu, int L);

double uniform_distance(const FiniteQuasiRep& mu, const FiniteQuasiRep& nu);
// max over |w| <= L
double uniform_distance(const FreeQuasiRep& mu, const FreeQuasiRep& nu, int L);

// mu o pi for a surjective homomorphism pi. When verify is set asserts
// defect(mu o pi) == defect(mu) to 1e-12.
FiniteQuasiRep pullback(const FiniteQuasiRep& mu, const groups::GroupHom& hom,
                        bool verify = true);

struct KernelVerdict {
  int element = 0;
  bool forced_trivial = false;
  int worst_power = 0;          // n attaining max ||nu(g)^n - Id||
  double worst_distance = 0.0;  // the attained max
};

// For each g in `kernel_set`, scans ||nu(g)^n - Id|| over n = 1..order(g).
// When the max stays <= bound (< sqrt(3)) the spectrum of nu(g) is checked
// to be {1} and the element is reported as forced trivial.
std::vector<KernelVerdict> kernel_triviality_check(
    const FiniteQuasiRep& nu, const std::vector<int>& kernel_set, double bound);

// One-dimensional witness: mu(gamma0) = e^{i theta} with
// |e^{i theta} - 1| = delta/2 (theta > 0), mu = 1 elsewhere.
FiniteQuasiRep one_dim_witness(const groups::GroupPtr& G, int gamma0,
                               double delta);

}  // namespace ulam::rep
