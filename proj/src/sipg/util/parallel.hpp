/*
 * Copyright 2026 The sipgains authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <exception>
#include <functional>

namespace sipg {

/// Worker count: SIPGAINS_THREADS caps it, 0 or unset means hardware concurrency.
int worker_count();

/// Runs fn(i) for i in [0, n). Tasks must write only to their own slots, which
/// makes the result independent of the thread count. Exceptions are rethrown
/// on the calling thread (the first one by task index).
void parallel_for(int n, const std::function<void(int)>& fn);

}  // namespace sipg
