#include "cusheaf/laws.hpp"

#include <cstdlib>

namespace cusheaf {

std::string LawReport::render() const {
  std::ostringstream os;
  os << "model " << model << " (basis " << basis_size << ", working set " << working_size << ")\n";
  for (const auto& r : laws) {
    os << (r.pass ? "  ok   " : "  FAIL ") << r.law << " [" << r.checked << " checks]";
    if (!r.pass) os << "\n       counterexample: " << r.counterexample;
    os << "\n";
  }
  return os.str();
}

std::size_t max_elements() {
  if (const char* env = std::getenv("CU_SECTIONS_MAX_ELEMENTS")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return 100000;
}

void check_enumeration_size(std::size_t n) {
  if (n > max_elements())
    throw Error(ErrorKind::EnumerationOverflow,
                "basis has " + std::to_string(n) + " elements, above the cap of " + std::to_string(max_elements()));
}

}  // namespace cusheaf
