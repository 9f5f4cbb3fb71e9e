#ifndef NICENSUS_PARALLEL_HPP
#define NICENSUS_PARALLEL_HPP

#include <algorithm>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace nicensus {

/// Worker count to use when the caller passes 0.
inline unsigned resolve_threads(unsigned requested)
{
    if (requested > 0)
        return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

/// Splits [0, total) into contiguous chunks, runs body(begin, end, acc) on
/// each chunk with its own accumulator, and folds the accumulators in chunk
/// order. Results depend only on total, never on the worker count, provided
/// merge is associative.
template <typename Acc, typename Body, typename Merge>
Acc parallel_reduce(std::uint64_t total, unsigned threads, Acc init, Body body, Merge merge)
{
    const unsigned workers =
        static_cast<unsigned>(std::min<std::uint64_t>(resolve_threads(threads), std::max<std::uint64_t>(total, 1)));
    if (workers <= 1) {
        Acc acc = init;
        body(std::uint64_t{0}, total, acc);
        return acc;
    }
    std::vector<Acc> partial(workers, init);
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::uint64_t chunk = (total + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        const std::uint64_t begin = std::min(total, chunk * w);
        const std::uint64_t end = std::min(total, begin + chunk);
        pool.emplace_back([&, w, begin, end] {
            try {
                body(begin, end, partial[w]);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool)
        t.join();
    for (auto& e : errors)
        if (e)
            std::rethrow_exception(e);
    Acc acc = init;
    for (auto& p : partial)
        merge(acc, p);
    return acc;
}

} // namespace nicensus

#endif
