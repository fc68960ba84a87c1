// Compares the serial reference prior sweep against the OpenMP one on a
// refinement check whose cost grows with the hidden range, and verifies the
// two verdicts are identical.

#include <chrono>
#include <iostream>

#include "hyperflow/lawcheck.hpp"

namespace hf = hyperflow;

namespace {

double seconds(std::chrono::steady_clock::time_point a,
               std::chrono::steady_clock::time_point b) {
  return std::chrono::duration<double>(b - a).count();
}

bool same_verdict(const hf::Verdict& a, const hf::Verdict& b) {
  if (a.holds != b.holds || a.results.size() != b.results.size()) return false;
  for (size_t i = 0; i < a.results.size(); ++i)
    if (a.results[i].holds != b.results[i].holds) return false;
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  long hid_max = argc > 1 ? std::atol(argv[1]) : 31;
  size_t num_random = argc > 2 ? static_cast<size_t>(std::atol(argv[2])) : 64;

  std::string space = "vis v:{0.." + std::to_string(hid_max / 2) + "}; hid h:{0.." +
                      std::to_string(hid_max) + "};";
  hf::ParsedProgram spec = hf::parse_program(space + " v := h div 2; v := v div 2");
  hf::StmtPtr impl = hf::parse_stmt_in(spec.space, "v := h div 4");

  hf::PriorSuite suite = hf::PriorSuite::make(spec.space, 0, num_random, /*vis_cross_limit=*/1);
  std::cout << "hidden range 0.." << hid_max << ", " << suite.priors.size() << " priors\n";

  auto t0 = std::chrono::steady_clock::now();
  hf::Verdict serial = hf::check_refine(spec.space, spec.body, impl, suite,
                                        hf::Relation::Refine, {}, hf::Parallelism::Serial);
  auto t1 = std::chrono::steady_clock::now();
  hf::Verdict omp = hf::check_refine(spec.space, spec.body, impl, suite, hf::Relation::Refine,
                                     {}, hf::Parallelism::OpenMP);
  auto t2 = std::chrono::steady_clock::now();

  double ts = seconds(t0, t1), tp = seconds(t1, t2);
  std::cout << "serial reference: " << ts << " s\n";
  std::cout << "openmp sweep:     " << tp << " s  (speedup " << (tp > 0 ? ts / tp : 0) << "x)\n";

  if (!same_verdict(serial, omp)) {
    std::cerr << "verdict mismatch between serial and parallel sweeps\n";
    return 1;
  }
  std::cout << "verdicts identical; relation " << (serial.holds ? "holds" : "fails") << "\n";
  return 0;
}
