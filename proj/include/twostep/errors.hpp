#pragma once

#include <stdexcept>
#include <string>

namespace twostep
{

class Error : public std::runtime_error
{
public:
	using std::runtime_error::runtime_error;
};

/// Bad input: malformed spec, config, or parameter outside its domain.
class ValidationError : public Error
{
public:
	using Error::Error;
};

/// A numerical routine could not deliver its stated accuracy or hit a singular case.
class NumericError : public Error
{
public:
	using Error::Error;
};

} // namespace twostep
