// Copyright 2026 The edgecert Authors.
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

#include <doctest.h>

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <thread>
#include <vector>

#include "edgecert/parallel.hpp"

using namespace edgecert;

TEST_CASE("parallel_for covers every index exactly once") {
  for (std::size_t threads : {1u, 2u, 3u, 8u}) {
    for (std::size_t n : {0u, 1u, 7u, 1000u}) {
      std::vector<std::atomic<int>> hits(n);
      parallel_for(n, [&](std::size_t i) { hits[i].fetch_add(1); }, threads);
      for (std::size_t i = 0; i < n; ++i) CHECK(hits[i].load() == 1);
    }
  }
}

TEST_CASE("parallel_for rethrows task exceptions") {
  std::atomic<int> ran{0};
  CHECK_THROWS_WITH_AS(parallel_for(
                           100,
                           [&](std::size_t i) {
                             ran.fetch_add(1);
                             if (i == 37) throw std::runtime_error("task 37");
                           },
                           4),
                       "task 37", std::runtime_error);
  CHECK(ran.load() >= 1);
}

TEST_CASE("EDGECERT_THREADS sets the default worker count") {
  ::setenv("EDGECERT_THREADS", "3", 1);
  CHECK(default_thread_count() == 3);
  ::setenv("EDGECERT_THREADS", "1", 1);
  CHECK(default_thread_count() == 1);
  ::setenv("EDGECERT_THREADS", "0", 1);
  const std::size_t all = default_thread_count();
  CHECK(all >= 1);
  CHECK(all == std::max(1u, std::thread::hardware_concurrency()));
  ::unsetenv("EDGECERT_THREADS");
  CHECK(default_thread_count() == all);
}
