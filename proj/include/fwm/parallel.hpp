// Copyright 2026 The fwm-biphoton Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <functional>

namespace fwm {

/// Process-wide worker count used by the tensor and map fills. 0 picks
/// hardware concurrency.
void set_thread_count(int threads);
[[nodiscard]] int thread_count();

/// Calls body(i) for i in [0, count). Each index is handled by exactly one
/// worker and writes only its own output slot, so results do not depend on
/// the thread count. The first exception thrown by a worker is rethrown.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace fwm
