#include "hatlab/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace hatlab {

unsigned default_threads()
{
    if (const char * env = std::getenv("HATLAB_THREADS")) {
        try {
            int value = std::stoi(env);
            if (value > 0)
                return static_cast<unsigned>(value);
        }
        catch (const std::exception &) {
        }
    }
    return 1;
}

void parallel_chunks(std::size_t count, unsigned threads,
                     const std::function<void(std::size_t, std::size_t, unsigned)> & body)
{
    threads = std::max(1u, threads);
    if (threads == 1 || count < 2) {
        body(0, count, 0);
        return;
    }

    std::vector<std::thread> workers;
    std::vector<std::exception_ptr> errors(threads);
    const std::size_t chunk = (count + threads - 1) / threads;
    for (unsigned w = 0; w < threads; ++w) {
        std::size_t begin = std::min(count, w * chunk);
        std::size_t end = std::min(count, begin + chunk);
        workers.emplace_back([&, begin, end, w] {
            try {
                body(begin, end, w);
            }
            catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto & t : workers)
        t.join();
    for (auto & e : errors)
        if (e)
            std::rethrow_exception(e);
}

} // namespace hatlab
