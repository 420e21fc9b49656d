#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>

namespace conicstab {

// Independent RNG stream for draw `index` of a run seeded with `seed`.
// Serial and parallel runs therefore see identical draws.
std::mt19937_64 draw_stream(std::uint64_t seed, std::uint64_t index);

// Returns true when draw `index` disproves the property under test.
using DrawPredicate = std::function<bool(std::uint64_t index)>;

// Lowest failing index in [0, count), scanning in order.
std::optional<std::uint64_t> first_failing_draw_serial(std::uint64_t count, const DrawPredicate& fails);

// Same result as the serial kernel, evaluated with OpenMP. Draws above the
// best failure found so far are skipped. threads <= 0 uses the OpenMP
// default.
std::optional<std::uint64_t> first_failing_draw_parallel(std::uint64_t count, const DrawPredicate& fails,
                                                         int threads = 0);

// threads == 1 runs the serial kernel.
std::optional<std::uint64_t> first_failing_draw(std::uint64_t count, const DrawPredicate& fails,
                                                int threads = 0);

bool openmp_enabled();

}  // namespace conicstab
