#include "ulam/quasirep.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <thread>
#include <unordered_map>

#include "ulam/errors.hpp"

namespace ulam::rep {

using linalg::CMatrix;
using linalg::operator_norm;

FiniteQuasiRep::FiniteQuasiRep(groups::GroupPtr group,
                               std::vector<linalg::CMatrix> values)
    : group_(std::move(group)), values_(std::move(values)) {
  if (!group_) throw UsageError("quasi-representation needs a group");
  if (static_cast<int>(values_.size()) != group_->order)
    throw UsageError(detail::concat("expected ", group_->order,
                                    " values, got ", values_.size()));
  dim_ = static_cast<int>(values_.front().rows());
  for (int g = 0; g < group_->order; ++g) {
    const auto& v = values_[g];
    if (v.rows() != dim_ || v.cols() != dim_)
      throw UsageError(detail::concat("value at element ", g,
                                      " has inconsistent shape"));
    linalg::UnitaryMatrix::checked(v);  // validates, result discarded
  }
  const double id_dist =
      operator_norm(values_[group_->identity] - linalg::identity(dim_));
  if (id_dist > linalg::kUnitaryTol)
    throw UsageError(detail::concat(
        "value at the identity must be Id (distance ", id_dist, ")"));
  values_[group_->identity] = linalg::identity(dim_);
}

FiniteQuasiRep FiniteQuasiRep::conjugated(const linalg::CMatrix& u) const {
  std::vector<CMatrix> vals(values_.size());
  const CMatrix uadj = u.adjoint();
  for (std::size_t g = 0; g < values_.size(); ++g) vals[g] = u * values_[g] * uadj;
  return FiniteQuasiRep(group_, std::move(vals));
}

bool FiniteQuasiRep::is_homomorphism(double tol) const {
  return defect(*this).value <= tol;
}

FreeQuasiRep::FreeQuasiRep(int generators, int dim, Evaluator eval,
                           std::optional<int> max_radius)
    : generators_(generators),
      dim_(dim),
      eval_(std::move(eval)),
      max_radius_(max_radius) {
  if (generators_ < 1) throw UsageError("need at least one generator");
  if (dim_ < 1) throw UsageError("dimension must be positive");
  const CMatrix at_e = eval_(FreeWord{});
  if (operator_norm(at_e - linalg::identity(dim_)) > linalg::kUnitaryTol)
    throw UsageError("evaluator must send the empty word to Id");
}

CMatrix FreeQuasiRep::value(const FreeWord& w) const {
  if (max_radius_ && w.length() > *max_radius_)
    throw UsageError(detail::concat("word of length ", w.length(),
                                    " outside table radius ", *max_radius_));
  return eval_(w);
}

FiniteDefectReport defect(const FiniteQuasiRep& mu) {
  const auto& G = mu.group();
  FiniteDefectReport report;
  for (int x = 0; x < G.order; ++x) {
    const CMatrix& mx = mu.value(x);
    for (int y = 0; y < G.order; ++y) {
      const double v =
          operator_norm(mu.value(G.mul(x, y)) - mx * mu.value(y));
      if (v > report.value) {
        report.value = v;
        report.witness_x = x;
        report.witness_y = y;
      }
    }
  }
  return report;
}

namespace {

struct BallTable {
  std::vector<FreeWord> words;
  std::unordered_map<std::uint64_t, int> index;
  int k;

  int find(const FreeWord& w) const {
    const auto it = index.find(groups::word_key(w, k));
    return it == index.end() ? -1 : it->second;
  }
};

BallTable make_ball(int k, int L) {
  BallTable t;
  t.k = k;
  t.words = groups::enumerate_ball(k, L);
  t.index.reserve(t.words.size());
  for (std::size_t i = 0; i < t.words.size(); ++i)
    t.index.emplace(groups::word_key(t.words[i], k), static_cast<int>(i));
  return t;
}

std::vector<CMatrix> evaluate_ball(const FreeQuasiRep& mu,
                                   const BallTable& ball) {
  std::vector<CMatrix> vals(ball.words.size());
  for (std::size_t i = 0; i < ball.words.size(); ++i)
    vals[i] = mu.value(ball.words[i]);
  return vals;
}

int scan_threads() {
  const unsigned hc = std::thread::hardware_concurrency();
  return static_cast<int>(std::min(hc == 0 ? 1u : hc, 8u));
}

}  // namespace

FreeDefectReport defect(const FreeQuasiRep& mu, int L) {
  if (L < 0) throw UsageError("truncation must be >= 0");
  if (mu.max_radius() && L > *mu.max_radius())
    throw UsageError(detail::concat("truncation ", L,
                                    " exceeds table radius ", *mu.max_radius()));
  const BallTable ball = make_ball(mu.generators(), L);
  const std::vector<CMatrix> vals = evaluate_ball(mu, ball);
  const int n = static_cast<int>(ball.words.size());

  struct Best {
    double value = -1.0;
    int x = 0, y = 0;
  };
  const int nthreads = scan_threads();
  const int chunk = (n + nthreads - 1) / nthreads;
  std::vector<std::future<Best>> futures;
  for (int t = 0; t < nthreads; ++t) {
    const int lo = t * chunk, hi = std::min(n, lo + chunk);
    futures.push_back(std::async(std::launch::async, [&, lo, hi] {
      Best best;
      for (int i = lo; i < hi; ++i) {
        const FreeWord& x = ball.words[i];
        for (int j = 0; j < n; ++j) {
          const FreeWord& y = ball.words[j];
          if (groups::product_length(x, y) > L) continue;
          const int p = ball.find(groups::multiply_words(x, y));
          const double v = operator_norm(vals[p] - vals[i] * vals[j]);
          if (v > best.value) best = {v, i, j};
        }
      }
      return best;
    }));
  }
  // Deterministic combine: strict improvement in chunk order reproduces the
  // serial first-witness tie-break.
  Best overall;
  for (auto& f : futures) {
    const Best b = f.get();
    if (b.value > overall.value) overall = b;
  }
  FreeDefectReport report;
  report.value = std::max(overall.value, 0.0);
  report.witness_x = ball.words[overall.x];
  report.witness_y = ball.words[overall.y];
  report.truncation = L;
  return report;
}

double uniform_distance(const FiniteQuasiRep& mu, const FiniteQuasiRep& nu) {
  if (mu.dim() != nu.dim())
    throw UsageError("uniform distance needs equal dimensions");
  if (mu.group_ptr() != nu.group_ptr() && !mu.group().same_table(nu.group()))
    throw UsageError("uniform distance needs the same domain group");
  double best = 0.0;
  for (int g = 0; g < mu.group().order; ++g)
    best = std::max(best, operator_norm(mu.value(g) - nu.value(g)));
  return best;
}

double uniform_distance(const FreeQuasiRep& mu, const FreeQuasiRep& nu, int L) {
  if (mu.dim() != nu.dim())
    throw UsageError("uniform distance needs equal dimensions");
  if (mu.generators() != nu.generators())
    throw UsageError("uniform distance needs the same generator count");
  int radius = L;
  if (mu.max_radius()) radius = std::min(radius, *mu.max_radius());
  if (nu.max_radius()) radius = std::min(radius, *nu.max_radius());
  double best = 0.0;
  for (const FreeWord& w : groups::enumerate_ball(mu.generators(), radius))
    best = std::max(best, operator_norm(mu.value(w) - nu.value(w)));
  return best;
}

FiniteQuasiRep pullback(const FiniteQuasiRep& mu, const groups::GroupHom& hom,
                        bool verify) {
  if (hom.target->order != mu.group().order ||
      !hom.target->same_table(mu.group()))
    throw UsageError("pullback: homomorphism target does not match the domain");
  if (!hom.is_surjective())
    throw UsageError("pullback requires a surjective homomorphism");
  std::vector<CMatrix> vals(hom.source->order);
  for (int g = 0; g < hom.source->order; ++g) vals[g] = mu.value(hom(g));
  FiniteQuasiRep out(hom.source, std::move(vals));
  if (verify) {
    const double d0 = defect(mu).value;
    const double d1 = defect(out).value;
    if (std::abs(d0 - d1) > 1e-12)
      throw NumericalError(
          detail::concat("pullback defect mismatch: ", d0, " vs ", d1),
          std::abs(d0 - d1));
  }
  return out;
}

std::vector<KernelVerdict> kernel_triviality_check(
    const FiniteQuasiRep& nu, const std::vector<int>& kernel_set,
    double bound) {
  constexpr double kSqrt3 = 1.7320508075688772;
  if (bound >= kSqrt3)
    throw UsageError("spectral mechanism requires bound < sqrt(3)");
  const double nu_defect = defect(nu).value;
  if (nu_defect > 1e-9)
    throw UsageError(detail::concat(
        "kernel check needs a homomorphism; measured defect ", nu_defect));
  std::vector<KernelVerdict> out;
  out.reserve(kernel_set.size());
  const CMatrix id = linalg::identity(nu.dim());
  for (int g : kernel_set) {
    KernelVerdict v;
    v.element = g;
    const int ord = nu.group().element_order(g);
    CMatrix p = id;
    for (int n = 1; n <= ord; ++n) {
      p = p * nu.value(g);
      const double dist = operator_norm(p - id);
      if (dist > v.worst_distance) {
        v.worst_distance = dist;
        v.worst_power = n;
      }
    }
    if (v.worst_distance <= bound) {
      // Every power stays well inside the ball of radius sqrt(3), which pins
      // each eigenvalue to 1; verify the spectrum numerically.
      for (const auto& z : linalg::spectrum_normal(nu.value(g))) {
        if (std::abs(z - std::complex<double>(1, 0)) > 1e-8)
          throw NumericalError(detail::concat(
              "power scan promised trivial spectrum but found eigenvalue ",
              z.real(), " + ", z.imag(), "i"));
      }
      v.forced_trivial = true;
    }
    out.push_back(v);
  }
  return out;
}

FiniteQuasiRep one_dim_witness(const groups::GroupPtr& G, int gamma0,
                               double delta) {
  if (gamma0 == G->identity)
    throw UsageError("witness element must differ from the identity");
  if (gamma0 < 0 || gamma0 >= G->order)
    throw UsageError("witness element out of range");
  if (delta < 0.0 || delta > 2.0)
    throw UsageError("delta must lie in [0, 2]");
  // |e^{i theta} - 1| = 2 sin(theta/2) = delta/2.
  const double theta = 2.0 * std::asin(delta / 4.0);
  std::vector<CMatrix> vals(G->order, linalg::identity(1));
  vals[gamma0](0, 0) = std::complex<double>(std::cos(theta), std::sin(theta));
  return FiniteQuasiRep(G, std::move(vals));
}

}  // namespace ulam::rep
