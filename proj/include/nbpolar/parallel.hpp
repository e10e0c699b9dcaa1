/*
Deterministic task-parallel helper.

Work is split into indexed tasks; each worker builds its own state once
and pulls task indices from a shared counter. Callers make results
thread-count independent by writing into per-task slots and reducing in
task order afterwards.
*/

#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace nbpolar {

template <class MakeState, class Task>
void run_tasks(std::uint64_t n_tasks, int threads, MakeState&& make_state,
	Task&& task)
{
	if (threads < 1)
		threads = 1;
	std::uint64_t nw = std::min<std::uint64_t>(
		static_cast<std::uint64_t>(threads), n_tasks ? n_tasks : 1);
	if (nw <= 1) {
		auto st = make_state();
		for (std::uint64_t i = 0; i < n_tasks; ++i)
			task(st, i);
		return;
	}
	std::atomic<std::uint64_t> next{0};
	std::exception_ptr err;
	std::mutex err_mx;
	std::vector<std::thread> pool;
	pool.reserve(nw);
	for (std::uint64_t w = 0; w < nw; ++w) {
		pool.emplace_back([&] {
			try {
				auto st = make_state();
				for (;;) {
					std::uint64_t i = next.fetch_add(1, std::memory_order_relaxed);
					if (i >= n_tasks)
						break;
					task(st, i);
				}
			} catch (...) {
				std::lock_guard lk(err_mx);
				if (!err)
					err = std::current_exception();
			}
		});
	}
	for (auto& t : pool)
		t.join();
	if (err)
		std::rethrow_exception(err);
}

struct TrialRange {
	std::uint64_t begin = 0;
	std::uint64_t end = 0;
};

inline TrialRange trial_chunk(std::uint64_t chunk, std::uint64_t chunk_size,
	std::uint64_t total)
{
	TrialRange r;
	r.begin = chunk * chunk_size;
	r.end = r.begin + chunk_size;
	if (r.end > total)
		r.end = total;
	return r;
}

} // namespace nbpolar
