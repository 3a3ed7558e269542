#ifndef TWINLAB_ERROR_HPP
#define TWINLAB_ERROR_HPP

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace twinlab {

// Domain errors (bad arguments, size bounds, context mismatches) and
// budget overruns all surface as this exception; the CLI maps it to
// exit code 2 for usage problems and 1 for in-run failures.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Memory budget for enumerations, in MiB.  Overridable through the
// TWINLAB_BUDGET_MB environment variable.
inline std::size_t budget_mb() {
  if (const char* s = std::getenv("TWINLAB_BUDGET_MB")) {
    long v = std::atol(s);
    if (v > 0) return static_cast<std::size_t>(v);
  }
  return 512;
}

inline void check_budget(std::size_t bytes, const char* what) {
  if (bytes > budget_mb() * (std::size_t{1} << 20))
    throw Error(std::string("budget exceeded in ") + what +
                " (need " + std::to_string(bytes >> 20) + " MiB, cap " +
                std::to_string(budget_mb()) + " MiB; set TWINLAB_BUDGET_MB)");
}

}  // namespace twinlab

#endif
