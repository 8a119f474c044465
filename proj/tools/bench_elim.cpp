// Benchmark of the two elimination kernels: the serial streaming reference
// and the OpenMP Gauss-Jordan. Both must produce the same reduced form;
// the benchmark verifies that on every run.

#include <chrono>
#include <cstdio>
#include <random>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "gmalg/linalg.hpp"

using namespace gmalg;

namespace {

Mat random_mat(std::size_t r, std::size_t c, std::uint32_t p, std::mt19937& rng) {
  Mat m(r, c, p);
  std::uniform_int_distribution<std::uint32_t> dist(0, p - 1);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = dist(rng);
  return m;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
  std::size_t scale = argc > 1 ? std::stoul(argv[1]) : 1;
#ifdef _OPENMP
  std::printf("OpenMP enabled, max threads %d\n", omp_get_max_threads());
#else
  std::printf("built without OpenMP; both kernels run serially\n");
#endif
  std::mt19937 rng(12345);
  struct Case {
    std::size_t rows, cols;
    std::uint32_t p;
  };
  const Case cases[] = {{400, 600, 5}, {800, 1000, 5}, {600, 800, 65521}, {1500, 900, 5}};
  for (const auto& c : cases) {
    const std::size_t rows = c.rows * scale;
    const Mat m = random_mat(rows, c.cols, c.p, rng);

    auto t0 = std::chrono::steady_clock::now();
    const Echelon serial = rref_serial(m);
    const double ts = seconds_since(t0);

    t0 = std::chrono::steady_clock::now();
    const Echelon parallel = rref_openmp(m);
    const double tp = seconds_since(t0);

    const bool equal = serial.reduced == parallel.reduced && serial.pivots == parallel.pivots;
    std::printf("%5zu x %-5zu p=%-6u rank %-5zu serial %7.3fs  openmp %7.3fs  x%.2f  %s\n",
                rows, c.cols, c.p, serial.rank(), ts, tp, ts / tp,
                equal ? "outputs identical" : "OUTPUTS DIFFER");
    if (!equal) return 1;
  }
  return 0;
}
