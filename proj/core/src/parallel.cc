// Copyright 2026 The prefnet Authors.
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

#include "prefnet/parallel.h"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <cstring>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace prefnet {

int MaxWorkers() {
#ifdef _OPENMP
  int workers = omp_get_max_threads();
#else
  int workers = 1;
#endif
  if (const char* env = std::getenv("PREFNET_THREADS")) {
    int cap = 0;
    const char* end = env + std::strlen(env);
    auto [ptr, ec] = std::from_chars(env, end, cap);
    if (ec == std::errc() && ptr == end && cap > 0) {
      workers = std::min(workers, cap);
    }
  }
  return std::max(workers, 1);
}

}  // namespace prefnet
