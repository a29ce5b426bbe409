#include "kac/util.hpp"

#include <atomic>

namespace kac {

namespace {
std::atomic<int> g_max_threads{0};  // 0 = hardware default
}

int max_threads() {
  int n = g_max_threads.load();
  if (n > 0) return n;
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

void set_max_threads(int n) { g_max_threads.store(n); }

void parallel_for(std::int64_t begin, std::int64_t end,
                  const std::function<void(std::int64_t)>& body) {
  const std::int64_t count = end - begin;
  if (count <= 0) return;
  int workers = std::min<std::int64_t>(max_threads(), count);
  if (workers <= 1) {
    for (std::int64_t i = begin; i < end; ++i) body(i);
    return;
  }
  std::atomic<std::int64_t> next{begin};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int t = 0; t < workers; ++t) {
    pool.emplace_back([&] {
      for (;;) {
        std::int64_t i = next.fetch_add(1);
        if (i >= end) return;
        body(i);
      }
    });
  }
  for (auto& th : pool) th.join();
}

std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

}  // namespace kac
