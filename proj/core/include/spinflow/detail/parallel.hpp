#ifndef SPINFLOW_DETAIL_PARALLEL_HPP
#define SPINFLOW_DETAIL_PARALLEL_HPP

#include <cstdint>
#include <thread>
#include <vector>

namespace spinflow::detail {

inline int resolve_threads(int requested) {
  if (requested > 0) return requested;
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

/// Runs fn(begin, end) over a partition of [0, n). Work items must write to
/// disjoint slots; reductions happen after the join, in index order, so the
/// result does not depend on the thread count.
template <typename Fn>
void parallel_chunks(std::int64_t n, int threads, Fn&& fn) {
  threads = resolve_threads(threads);
  if (threads <= 1 || n < 2) {
    fn(std::int64_t{0}, n);
    return;
  }
  const std::int64_t chunk = (n + threads - 1) / threads;
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (std::int64_t begin = 0; begin < n; begin += chunk) {
    const std::int64_t end = std::min(n, begin + chunk);
    pool.emplace_back([&fn, begin, end] { fn(begin, end); });
  }
  for (auto& t : pool) t.join();
}

/// Least-squares straight line through (x, y); returns {slope, intercept}.
struct LineFit {
  double slope;
  double intercept;
};

template <typename XView, typename YView>
LineFit linear_fit(const XView& x, const YView& y, std::size_t count) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < count; ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double n = static_cast<double>(count);
  const double denom = n * sxx - sx * sx;
  return {(n * sxy - sx * sy) / denom, (sy * sxx - sx * sxy) / denom};
}

}  // namespace spinflow::detail

#endif
