#include "waldkit/common.hpp"

#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>

namespace waldkit {

std::string join_ints(const std::vector<int>& v, const char* sep) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += sep;
    s += std::to_string(v[i]);
  }
  return s;
}

std::vector<Key> monotone_maps(int n, int m) {
  std::vector<Key> out;
  if (n < 0) {
    out.push_back({});
    return out;
  }
  Key cur(n + 1, 0);
  std::function<void(int, int)> rec = [&](int pos, int lo) {
    if (pos > n) {
      out.push_back(cur);
      return;
    }
    for (int v = lo; v <= m; ++v) {
      cur[pos] = v;
      rec(pos + 1, v);
    }
  };
  rec(0, 0);
  return out;
}

int thread_count() {
  const char* env = std::getenv("WALDKIT_THREADS");
  if (!env) return 1;
  int v = std::atoi(env);
  return v < 1 ? 1 : (v > 64 ? 64 : v);
}

void parallel_for(int n, const std::function<void(int)>& body) {
  int workers = std::min(thread_count(), n);
  if (workers <= 1) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr err;
  std::mutex err_mu;
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        int i = next.fetch_add(1);
        if (i >= n) return;
        try {
          body(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(err_mu);
          if (!err) err = std::current_exception();
          next.store(n);
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);
}

}  // namespace waldkit
