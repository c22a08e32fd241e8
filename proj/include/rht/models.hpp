#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rht {

/// Raised when a model or scenario violates one of its invariants.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

enum class Hypothesis : std::uint8_t { kH0 = 0, kH1 = 1 };

inline int to_int(Hypothesis h) { return static_cast<int>(h); }
inline Hypothesis hypothesis_from_bit(bool bit) { return bit ? Hypothesis::kH1 : Hypothesis::kH0; }

/// Index into a TrustModel alphabet.
using Symbol = std::size_t;
/// Per-robot 0/1 vectors: measurements y, true legitimacy t, trust estimates t_hat.
using BitVector = std::vector<std::uint8_t>;
using SymbolVector = std::vector<Symbol>;

/// Conditional pmf of the trust observation for legitimate and malicious senders
/// over a finite ordered alphabet.
class TrustModel {
 public:
  TrustModel(std::vector<std::string> alphabet, std::vector<double> pmf_legit,
             std::vector<double> pmf_malicious);

  /// Alphabet {"0","1"} with Pr(a=1 | legit) and Pr(a=1 | malicious).
  static TrustModel binary(double p_one_given_legit, double p_one_given_malicious);

  std::size_t size() const { return alphabet_.size(); }
  const std::vector<std::string>& alphabet() const { return alphabet_; }
  const std::vector<double>& pmf_legit() const { return pmf_legit_; }
  const std::vector<double>& pmf_malicious() const { return pmf_malicious_; }
  double legit(Symbol a) const { return pmf_legit_.at(a); }
  double malicious(Symbol a) const { return pmf_malicious_.at(a); }

  /// Index of a symbol label; throws DomainError if absent.
  Symbol symbol_index(const std::string& label) const;

  friend bool operator==(const TrustModel&, const TrustModel&) = default;

 private:
  std::vector<std::string> alphabet_;
  std::vector<double> pmf_legit_;
  std::vector<double> pmf_malicious_;
};

struct LegitimateSensorModel {
  double p_fa_l = 0.0;
  double p_md_l = 0.0;

  void validate() const;
  friend bool operator==(const LegitimateSensorModel&, const LegitimateSensorModel&) = default;
};

/// Malicious reporting: raw false-alarm / missed-detection rates, then a flip with
/// probability p_f applied to the measured bit.
struct MaliciousStrategy {
  double p_fa_m_raw = 0.0;
  double p_md_m_raw = 0.0;
  double p_f = 0.0;

  void validate() const;
  friend bool operator==(const MaliciousStrategy&, const MaliciousStrategy&) = default;
};

struct EffectiveProbs {
  double p_fa_m;
  double p_md_m;
};

EffectiveProbs effective_malicious_probs(const MaliciousStrategy& strategy);

struct Priors {
  double h0 = 0.5;
  double h1 = 0.5;

  void validate() const;
  /// ln(Pr(H0)/Pr(H1)), the log threshold shared by every fusion rule.
  double log_ratio() const;
  friend bool operator==(const Priors&, const Priors&) = default;
};

struct Scenario {
  std::size_t n = 0;
  BitVector truth;  // 1 = legitimate
  Priors priors;
  LegitimateSensorModel sensors;
  MaliciousStrategy attack;
  TrustModel trust = TrustModel::binary(0.8, 0.2);

  void validate() const;
  std::size_t malicious_count() const;
};

struct Trial {
  Hypothesis xi = Hypothesis::kH0;
  BitVector y;
  SymbolVector a;
  BitVector truth;

  std::size_t size() const { return y.size(); }
};

struct DecisionOutcome {
  Hypothesis hypothesis = Hypothesis::kH0;
  std::optional<BitVector> t_hat;
  std::optional<double> adversary_estimate;
  std::map<std::string, double> diagnostics;
};

/// p(a|legit) / p(a|malicious); +inf when the malicious mass is zero.
double trust_lr(const TrustModel& model, Symbol a);

/// Distinct trust likelihood ratios, ascending.
std::vector<double> ratio_set(const TrustModel& model);

/// Malicious count implied by a proportion bound: ceil(m_bar * n), with a small
/// tolerance so that e.g. 0.3 * 10 resolves to 3.
std::size_t malicious_count_for(double fraction, std::size_t n);

}  // namespace rht
