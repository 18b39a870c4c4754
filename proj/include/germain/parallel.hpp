#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace germain {

// Evaluates fn(i) for i in [0, count) on up to `threads` workers and returns
// the results in index order, so output never depends on scheduling.
// The first exception thrown by any task is rethrown on the caller.
template <typename Fn>
auto ordered_parallel_map(std::size_t count, unsigned threads, Fn fn)
{
	using Result = decltype(fn(std::size_t{0}));
	std::vector<Result> results(count);
	threads = std::max(1u, std::min<unsigned>(threads, unsigned(std::max<std::size_t>(count, 1))));

	if (threads == 1)
	{
		for (std::size_t i = 0; i < count; ++i) results[i] = fn(i);
		return results;
	}

	std::atomic<std::size_t> next{0};
	std::exception_ptr failure;
	std::mutex failure_mutex;
	auto worker = [&]() {
		for (std::size_t i = next++; i < count; i = next++)
		{
			try
			{
				results[i] = fn(i);
			}
			catch (...)
			{
				std::lock_guard lock(failure_mutex);
				if (!failure) failure = std::current_exception();
				next = count;
			}
		}
	};

	std::vector<std::jthread> pool;
	for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
	pool.clear();
	if (failure) std::rethrow_exception(failure);
	return results;
}

} // namespace germain
