#include "rht/presets.hpp"

#include <stdexcept>

namespace rht {

namespace {

constexpr std::string_view kNumericalStudy = R"json(
{
  // N = 10 robots, symmetric sensors, adversary reports the wrong bit w.p. 0.99.
  "n": 10,
  "priors": [0.5, 0.5],
  "p_fa_l": 0.15,
  "p_md_l": 0.15,
  "trust_alphabet": ["0", "1"],
  "trust_pmf_legit": [0.2, 0.8],
  "trust_pmf_malicious": [0.8, 0.2],
  "p_fa_m_raw": 0.0,
  "p_md_m_raw": 0.0,
  "p_f": 0.99,
  "trials": 1000,
  "seed": 42,
  "methods": ["2SA", "A-GLRT", "Oracle", "Oblivious", "Baseline:1:0.5", "Baseline:5:2.5"],
  "sweep": [0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0]
}
)json";

constexpr std::string_view kHardwareReplica = R"json(
{
  // 11 robots, 6 of them malicious (spoofed identities), wrong-report probability 0.99.
  "n": 11,
  "malicious": 6,
  "m_bar": 0.5454545454545454,
  "priors": [0.6432, 0.3568],
  "p_fa_l": 0.08,
  "p_md_l": 0.21,
  "trust_alphabet": ["0", "1"],
  "trust_pmf_legit": [0.165, 0.835],
  "trust_pmf_malicious": [0.8309, 0.1691],
  "p_fa_m_raw": 0.0,
  "p_md_m_raw": 0.0,
  "p_f": 0.99,
  "trials": 20000,
  "seed": 42,
  "methods": ["2SA", "A-GLRT", "Oracle", "Oblivious", "Baseline:1:0.5", "Baseline:5:2.5"]
}
)json";

}  // namespace

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names = {"numerical-study", "hardware-replica"};
  return names;
}

std::string_view preset_text(std::string_view name) {
  if (name == "numerical-study") return kNumericalStudy;
  if (name == "hardware-replica") return kHardwareReplica;
  throw std::out_of_range("unknown preset '" + std::string(name) + "'");
}

}  // namespace rht
