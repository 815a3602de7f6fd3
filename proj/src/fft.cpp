#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <memory>
#include <mutex>
#include <tuple>
#include <vector>

namespace homog::detail {
namespace {

struct PlanDeleter {
  void operator()(fftw_plan_s* plan) const { fftw_destroy_plan(plan); }
};
using PlanHandle = std::unique_ptr<fftw_plan_s, PlanDeleter>;

using PlanKey = std::tuple<int, int, int, int, int>;

// FFTW's planner is not thread-safe; execution of an existing plan on new
// arrays is. Plans are built once per shape and reused.
class PlanCache {
 public:
  fftw_plan get(int n, int count, int stride, int dist, Direction direction) {
    const PlanKey key{n, count, stride, dist, static_cast<int>(direction)};
    std::lock_guard lock(mutex_);
    auto it = plans_.find(key);
    if (it != plans_.end()) return it->second.get();

    std::vector<Complex> scratch(static_cast<std::size_t>(count - 1) * dist +
                                 static_cast<std::size_t>(n - 1) * stride + 1);
    auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
    int dims[1] = {n};
    fftw_plan plan = fftw_plan_many_dft(
        1, dims, count, buf, nullptr, stride, dist, buf, nullptr, stride, dist,
        static_cast<int>(direction), FFTW_ESTIMATE | FFTW_UNALIGNED);
    return plans_.emplace(key, PlanHandle(plan)).first->second.get();
  }

 private:
  std::mutex mutex_;
  std::map<PlanKey, PlanHandle> plans_;
};

PlanCache& cache() {
  static PlanCache instance;
  return instance;
}

}  // namespace

void dft_lines(Complex* data, int n, int count, int stride, int dist,
               Direction direction) {
  if (n <= 1 || count <= 0) return;
  fftw_plan plan = cache().get(n, count, stride, dist, direction);
  auto* buf = reinterpret_cast<fftw_complex*>(data);
  fftw_execute_dft(plan, buf, buf);
}

}  // namespace homog::detail
