#include "twostep/parallel.hpp"
#include "twostep/errors.hpp"

#include <cstdlib>
#include <string>

namespace twostep
{

int configure_threads_from_env()
{
	if(const char* v = std::getenv("TWOSTEP_THREADS"))
	{
		char* end = nullptr;
		const long n = std::strtol(v, &end, 10);
		if(end == v || *end != '\0' || n < 1)
			throw ValidationError(std::string("TWOSTEP_THREADS must be a positive integer, got \"") + v + "\"");
		omp_set_num_threads(static_cast<int>(n));
	}
	return omp_get_max_threads();
}

} // namespace twostep
