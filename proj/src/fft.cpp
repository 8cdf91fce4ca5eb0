#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>

namespace biham::fft {
namespace {

// The planner is not thread-safe; plans are created once and executed with
// the new-array interface, which is.
std::mutex planner_mutex;

fftw_plan plan_for(int rows, int cols, bool along_columns, int sign) {
  using Key = std::tuple<int, int, bool, int>;
  static std::map<Key, fftw_plan> cache;
  std::lock_guard<std::mutex> lock(planner_mutex);
  const Key key{rows, cols, along_columns, sign};
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  ComplexMatrix scratch(rows, cols);
  auto* data = reinterpret_cast<fftw_complex*>(scratch.data());
  const int dir = sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD;
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  fftw_plan p;
  if (along_columns) {
    int n[] = {rows};
    p = fftw_plan_many_dft(1, n, cols, data, nullptr, 1, rows, data, nullptr, 1, rows, dir, flags);
  } else {
    int n[] = {cols};
    p = fftw_plan_many_dft(1, n, rows, data, nullptr, rows, 1, data, nullptr, rows, 1, dir, flags);
  }
  if (!p) fail(ErrorKind::Numerical, "FFTW could not build a plan");
  cache.emplace(key, p);
  return p;
}

}  // namespace

void columns(ComplexMatrix& m, int sign) {
  auto p = plan_for(static_cast<int>(m.rows()), static_cast<int>(m.cols()), true, sign);
  auto* d = reinterpret_cast<fftw_complex*>(m.data());
  fftw_execute_dft(p, d, d);
}

void rows(ComplexMatrix& m, int sign) {
  auto p = plan_for(static_cast<int>(m.rows()), static_cast<int>(m.cols()), false, sign);
  auto* d = reinterpret_cast<fftw_complex*>(m.data());
  fftw_execute_dft(p, d, d);
}

}  // namespace biham::fft
