#include "rht/models.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "rht/stats.hpp"

namespace rht {

namespace {

constexpr double kPmfTolerance = 1e-9;
constexpr double kPriorTolerance = 1e-12;

std::string fmt(double v) { return std::to_string(v); }

void check_pmf(const std::vector<double>& pmf, const char* name) {
  double sum = 0.0;
  for (double p : pmf) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw ValidationError(std::string("trust ") + name + " entry " + fmt(p) + " outside [0,1]");
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > kPmfTolerance) {
    throw ValidationError(std::string("trust ") + name + " sums to " + fmt(sum) + ", expected 1");
  }
}

}  // namespace

TrustModel::TrustModel(std::vector<std::string> alphabet, std::vector<double> pmf_legit,
                       std::vector<double> pmf_malicious)
    : alphabet_(std::move(alphabet)),
      pmf_legit_(std::move(pmf_legit)),
      pmf_malicious_(std::move(pmf_malicious)) {
  if (alphabet_.empty()) throw ValidationError("trust alphabet is empty");
  if (pmf_legit_.size() != alphabet_.size() || pmf_malicious_.size() != alphabet_.size()) {
    throw ValidationError("trust pmf lengths must match the alphabet size");
  }
  {
    auto sorted = alphabet_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw ValidationError("trust alphabet has duplicate symbols");
    }
  }
  check_pmf(pmf_legit_, "pmf_legit");
  check_pmf(pmf_malicious_, "pmf_malicious");
  bool informative = false;
  for (std::size_t i = 0; i < alphabet_.size(); ++i) {
    const double product = pmf_legit_[i] * pmf_malicious_[i];
    if (product == 0.0 || product == 1.0) {
      throw ValidationError("trust symbol '" + alphabet_[i] +
                            "' violates p(a|legit)*p(a|malicious) not in {0,1}");
    }
    if (pmf_legit_[i] != pmf_malicious_[i]) informative = true;
  }
  if (!informative) throw ValidationError("trust pmfs are identical (noninformative trust model)");
}

TrustModel TrustModel::binary(double p_one_given_legit, double p_one_given_malicious) {
  return TrustModel({"0", "1"}, {1.0 - p_one_given_legit, p_one_given_legit},
                    {1.0 - p_one_given_malicious, p_one_given_malicious});
}

Symbol TrustModel::symbol_index(const std::string& label) const {
  const auto it = std::find(alphabet_.begin(), alphabet_.end(), label);
  if (it == alphabet_.end()) throw DomainError("unknown trust symbol '" + label + "'");
  return static_cast<Symbol>(it - alphabet_.begin());
}

void LegitimateSensorModel::validate() const {
  if (!(p_fa_l > 0.0 && p_fa_l < 0.5)) {
    throw ValidationError("p_fa_l = " + fmt(p_fa_l) + " must lie in (0, 0.5)");
  }
  if (!(p_md_l > 0.0 && p_md_l < 0.5)) {
    throw ValidationError("p_md_l = " + fmt(p_md_l) + " must lie in (0, 0.5)");
  }
}

void MaliciousStrategy::validate() const {
  if (!(p_fa_m_raw >= 0.0 && p_fa_m_raw < 0.5)) {
    throw ValidationError("p_fa_m_raw = " + fmt(p_fa_m_raw) + " must lie in [0, 0.5)");
  }
  if (!(p_md_m_raw >= 0.0 && p_md_m_raw < 0.5)) {
    throw ValidationError("p_md_m_raw = " + fmt(p_md_m_raw) + " must lie in [0, 0.5)");
  }
  if (!(p_f >= 0.0 && p_f <= 1.0)) throw ValidationError("p_f = " + fmt(p_f) + " must lie in [0, 1]");
}

EffectiveProbs effective_malicious_probs(const MaliciousStrategy& s) {
  return {(1.0 - s.p_f) * s.p_fa_m_raw + s.p_f * (1.0 - s.p_fa_m_raw),
          (1.0 - s.p_f) * s.p_md_m_raw + s.p_f * (1.0 - s.p_md_m_raw)};
}

void Priors::validate() const {
  if (!(h0 > 0.0 && h0 < 1.0 && h1 > 0.0 && h1 < 1.0)) {
    throw ValidationError("priors must lie strictly inside (0, 1)");
  }
  if (std::abs(h0 + h1 - 1.0) > kPriorTolerance) {
    throw ValidationError("priors sum to " + fmt(h0 + h1) + ", expected 1");
  }
}

double Priors::log_ratio() const { return std::log(h0) - std::log(h1); }

void Scenario::validate() const {
  if (n == 0) throw ValidationError("scenario needs at least one robot");
  if (truth.size() != n) {
    throw ValidationError("truth vector has " + std::to_string(truth.size()) + " entries, n = " +
                          std::to_string(n));
  }
  for (auto t : truth) {
    if (t > 1) throw ValidationError("truth entries must be 0 or 1");
  }
  priors.validate();
  sensors.validate();
  attack.validate();
}

std::size_t Scenario::malicious_count() const {
  return static_cast<std::size_t>(std::count(truth.begin(), truth.end(), std::uint8_t{0}));
}

double trust_lr(const TrustModel& model, Symbol a) {
  if (a >= model.size()) throw DomainError("trust symbol index " + std::to_string(a) + " out of range");
  const double denom = model.malicious(a);
  if (denom == 0.0) return std::numeric_limits<double>::infinity();
  return model.legit(a) / denom;
}

std::vector<double> ratio_set(const TrustModel& model) {
  std::vector<double> ratios;
  ratios.reserve(model.size());
  for (Symbol a = 0; a < model.size(); ++a) ratios.push_back(trust_lr(model, a));
  std::sort(ratios.begin(), ratios.end());
  ratios.erase(std::unique(ratios.begin(), ratios.end()), ratios.end());
  return ratios;
}

std::size_t malicious_count_for(double fraction, std::size_t n) {
  if (!(fraction >= 0.0 && fraction <= 1.0)) {
    throw ValidationError("malicious fraction " + fmt(fraction) + " outside [0, 1]");
  }
  const double raw = fraction * static_cast<double>(n);
  const auto count = static_cast<std::size_t>(std::ceil(raw - 1e-9));
  return std::min(count, n);
}

}  // namespace rht
