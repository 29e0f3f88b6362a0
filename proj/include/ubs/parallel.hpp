/*
 * Copyright 2021 Budapest Quantum Computing Group
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstddef>
#include <functional>

namespace ubs {

/// Worker count: UBS_THREADS if set, else hardware concurrency.
unsigned thread_count();

/**
 * @brief Runs body(i) for i in [0, n) on a small pool of workers.
 *
 * Indices are handed out through an atomic counter; callers write results
 * into slot i so the outcome does not depend on scheduling. The first
 * exception thrown by any worker is rethrown after all workers join.
 */
void parallel_for(std::size_t n, const std::function<void(std::size_t)> &body, unsigned max_threads = 0);

}  // namespace ubs
