// Compares the serial and OpenMP relation checkers on the lifted torsion
// automorphisms, which have the largest truncation windows in the project.
#include <chrono>
#include <iostream>

#include "gthom/morphisms.hpp"

using namespace gthom;

namespace {

double time_ms(bool (*checker)(GenAuto&), GenAuto a, int reps) {
  auto start = std::chrono::steady_clock::now();
  bool ok = true;
  for (int r = 0; r < reps; ++r) ok = ok && checker(a);
  auto stop = std::chrono::steady_clock::now();
  if (!ok) {
    std::cerr << "verification unexpectedly failed\n";
    std::exit(1);
  }
  return std::chrono::duration<double, std::milli>(stop - start).count() / reps;
}

}  // namespace

int main(int argc, char** argv) {
  int reps = argc > 1 ? std::atoi(argv[1]) : 5;
  std::cout << "n  serial_ms  parallel_ms\n";
  for (int n : {5, 7, 9, 12}) {
    TorsionExample ex = torsion_example(n);
    GenAuto gamma = ex.gamma;
    double serial = time_ms(&verify_serial, gamma, reps);
    double parallel = time_ms(&verify, gamma, reps);
    std::cout << n << "  " << serial << "  " << parallel << "\n";
  }
  return 0;
}
