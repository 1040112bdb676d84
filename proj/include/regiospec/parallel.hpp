#pragma once

#include <cstddef>
#include <functional>

namespace regiospec {

/// Worker count: hardware concurrency capped by REGIOSPEC_THREADS when set.
unsigned worker_count();

/// Runs body(i) for i in [0, count) across worker_count() threads. Each index
/// must write only its own output slot; callers merge in index order, so the
/// result does not depend on scheduling.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace regiospec
