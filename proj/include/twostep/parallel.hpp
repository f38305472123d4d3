#pragma once

#include <cstddef>
#include <exception>
#include <vector>

#include <omp.h>

namespace twostep
{

enum class Exec
{
	serial,
	parallel,
};

/// Calls fn(k) for k in [0, n). The parallel path writes nothing shared, so
/// callers index their own result slots. If several calls throw, the
/// exception of the lowest index is rethrown.
template <class Fn>
void for_each_index(std::size_t n, Exec exec, Fn&& fn)
{
	if(exec == Exec::serial)
	{
		for(std::size_t k = 0; k < n; ++k)
			fn(k);
		return;
	}
	std::vector<std::exception_ptr> errors(n);
	const auto count = static_cast<long>(n);
#pragma omp parallel for schedule(dynamic)
	for(long k = 0; k < count; ++k)
	{
		try
		{
			fn(static_cast<std::size_t>(k));
		}
		catch(...)
		{
			errors[static_cast<std::size_t>(k)] = std::current_exception();
		}
	}
	for(auto& e : errors)
		if(e)
			std::rethrow_exception(e);
}

/// Applies TWOSTEP_THREADS if set; returns the worker count in effect.
int configure_threads_from_env();

} // namespace twostep
