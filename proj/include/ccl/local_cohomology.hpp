#pragma once
// Top local cohomology H^d_m(R) as the direct limit of R/I_t along
// multiplication by the product of a system of parameters.

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "ccl/groebner.hpp"
#include "ccl/ring_spec.hpp"

namespace ccl {

struct SopData {
  RingSpec ring;
  std::vector<Polynomial> sop;
  /// Each f_i is a nonzerodivisor modulo (f_1..f_{i-1}) + J.
  bool regularity_checked = false;
  /// Product of the f_i, the transition multiplier.
  Polynomial product;

  /// (f_1^t, ..., f_d^t) + J, cached per level.
  Ideal level_ideal(std::uint64_t t) const;

 private:
  friend SopData make_sop(const RingSpec&, std::vector<Polynomial>);
  SopData(RingSpec r, std::vector<Polynomial> s, Polynomial prod);
  struct LevelCache {
    std::mutex mu;
    std::map<std::uint64_t, Ideal> ideals;
  };
  std::shared_ptr<LevelCache> cache_;
};

/// Validates a system of parameters: (sop) + J is zero-dimensional and no
/// shorter sublist is (DimensionError otherwise). Regularity is checked by
/// colons and recorded, not required.
SopData make_sop(const RingSpec& R, std::vector<Polynomial> sop);

/// Largest level frobenius_class may produce by default.
inline constexpr std::uint64_t kDefaultLevelCap = 1u << 12;

class LocalCohomClass {
 public:
  const Polynomial& representative() const { return rep_; }
  std::uint64_t level() const { return level_; }
  const SopData& sop() const { return *sop_; }
  std::shared_ptr<const SopData> sop_ptr() const { return sop_; }
  std::string to_string() const;

 private:
  friend LocalCohomClass make_class(const Polynomial&, std::uint64_t,
                                    std::shared_ptr<const SopData>);
  LocalCohomClass(Polynomial rep, std::uint64_t level, std::shared_ptr<const SopData> sop)
      : rep_(std::move(rep)), level_(level), sop_(std::move(sop)) {}
  Polynomial rep_;
  std::uint64_t level_;
  std::shared_ptr<const SopData> sop_;
};

/// Class of r in R/I_t, stored in normal form. Throws InvalidArgument when
/// t < 1.
LocalCohomClass make_class(const Polynomial& r, std::uint64_t t,
                           std::shared_ptr<const SopData> S);

/// r in I_t + J. Throws PreconditionFailed unless regularity was verified.
bool class_is_zero(const LocalCohomClass& eta);

/// Compares at the larger level after multiplying by the product of the sop
/// to the level difference. Throws PreconditionFailed unless regularity was
/// verified.
bool classes_equal(const LocalCohomClass& a, const LocalCohomClass& b);

/// (r^p, t p). Throws BudgetExceeded when t p exceeds level_cap.
LocalCohomClass frobenius_class(const LocalCohomClass& eta,
                                std::uint64_t level_cap = kDefaultLevelCap);

/// g r in I_t + J for every generator g of J.
bool annihilates(const Ideal& J, const LocalCohomClass& eta);

/// One checked assertion of a reproduction run.
struct AuditRecord {
  std::string assertion;
  std::vector<std::pair<std::string, std::string>> inputs;
  bool verdict = false;
  std::string paper_anchor;
};

struct CounterexampleReport {
  std::uint32_t prime = 0;
  std::vector<AuditRecord> records;

  bool all_hold() const;
  /// First record whose verdict is false, or nullptr.
  const AuditRecord* first_failure() const;
};

/// Largest prime fstability_counterexample accepts.
inline constexpr std::uint32_t kMaxCounterexamplePrime = 13;

/// The path ring F_p[x,y,z,w]/(xy, yz, zw) with sop (x-w, x-y-z):
/// tau = (y, z, xw), tau eta = 0, eta != 0 and tau F(eta) != 0 for
/// eta = [(xw)^(p-1), p]. Throws CounterexampleFailed naming the first failed
/// step when throw_on_failure is set; otherwise the report carries it.
CounterexampleReport fstability_counterexample(std::uint32_t p, bool throw_on_failure = true);

}  // namespace ccl
