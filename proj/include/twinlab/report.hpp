#ifndef TWINLAB_REPORT_HPP
#define TWINLAB_REPORT_HPP

#include <map>
#include <string>

namespace twinlab {

// Outcome of a verification suite.  `counters` records how often each
// case/branch was exercised; a failing suite keeps running counters but
// pins the first counterexample.
struct CheckReport {
  std::string name;
  bool pass = true;
  std::map<std::string, long long> counters;
  std::string first_counterexample;

  void bump(const std::string& key, long long n = 1) { counters[key] += n; }
  void fail(const std::string& counterexample) {
    if (pass) first_counterexample = counterexample;
    pass = false;
  }
  void merge(const CheckReport& other) {
    for (const auto& [k, v] : other.counters) counters[k] += v;
    if (!other.pass && pass) first_counterexample = other.name + ": " + other.first_counterexample;
    pass = pass && other.pass;
  }
  std::string summary() const;
};

}  // namespace twinlab

#endif
