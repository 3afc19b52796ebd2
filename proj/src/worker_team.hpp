#pragma once

#include <algorithm>
#include <condition_variable>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <utility>
#include <vector>

namespace pbitsa::detail {

/// Persistent fork-join team. `run` executes task(w) for every worker index
/// w in [0, size()) with the caller acting as worker 0, and returns once all
/// of them finished. The first exception thrown by a task is rethrown.
class WorkerTeam {
 public:
  explicit WorkerTeam(unsigned workers);
  ~WorkerTeam();
  WorkerTeam(const WorkerTeam&) = delete;
  WorkerTeam& operator=(const WorkerTeam&) = delete;

  [[nodiscard]] unsigned size() const noexcept { return static_cast<unsigned>(threads_.size()) + 1; }
  void run(const std::function<void(unsigned)>& task);

 private:
  void loop(unsigned worker);

  std::vector<std::thread> threads_;
  std::mutex mutex_;
  std::condition_variable start_;
  std::condition_variable done_;
  const std::function<void(unsigned)>* task_ = nullptr;
  std::uint64_t generation_ = 0;
  unsigned pending_ = 0;
  bool stop_ = false;
  std::exception_ptr error_;
};

/// Contiguous share [begin, end) of `count` items for `worker` of `workers`.
inline std::pair<std::size_t, std::size_t> split_range(std::size_t count, unsigned worker, unsigned workers) {
  const std::size_t base = count / workers;
  const std::size_t extra = count % workers;
  const std::size_t begin = worker * base + std::min<std::size_t>(worker, extra);
  return {begin, begin + base + (worker < extra ? 1 : 0)};
}

}  // namespace pbitsa::detail
