// Copyright 2026 The scl Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "scl/common.hpp"

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>

namespace scl {

int dense_cap() {
  if (const char* env = std::getenv("SCL_DENSE_CAP")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  return kDefaultDenseCap;
}

void check_dense_cap(int n, const std::string& what) {
  if (n > dense_cap()) {
    throw Error(what + ": " + std::to_string(n) +
                " qubits exceeds the dense cap of " +
                std::to_string(dense_cap()) + " (set SCL_DENSE_CAP)");
  }
}

QubitSet normalized(QubitSet s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

QubitSet set_union(const QubitSet& a, const QubitSet& b) {
  QubitSet out = a;
  out.insert(out.end(), b.begin(), b.end());
  return normalized(std::move(out));
}

bool contains(const QubitSet& s, int q) {
  return std::find(s.begin(), s.end(), q) != s.end();
}

int index_in(const QubitSet& s, int q) {
  auto it = std::find(s.begin(), s.end(), q);
  if (it == s.end()) return -1;
  return static_cast<int>(it - s.begin());
}

void parallel_for(std::size_t count, int jobs, const std::function<void(std::size_t)>& fn) {
  const std::size_t workers =
      std::min<std::size_t>(count, static_cast<std::size_t>(std::max(1, jobs)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::exception_ptr failure;
  std::mutex mu;
  std::vector<std::thread> threads;
  for (std::size_t w = 0; w < workers; ++w) {
    threads.emplace_back([&, w] {
      const std::size_t lo = count * w / workers, hi = count * (w + 1) / workers;
      try {
        for (std::size_t i = lo; i < hi; ++i) fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace scl
