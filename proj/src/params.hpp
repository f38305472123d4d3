#pragma once

#include "twostep/errors.hpp"

#include <json.hpp>

#include <set>
#include <string>

namespace twostep::detail
{

/// Reads keys out of a JSON object with defaults, remembering what was used
/// so leftovers can be rejected by name.
class Params
{
public:
	Params(const nlohmann::json& j, std::string context)
	    : j_(j.is_null() ? nlohmann::json::object() : j), context_(std::move(context))
	{
		if(!j_.is_object())
			throw ValidationError(context_ + ": parameters must be a JSON object");
	}

	bool has(const std::string& key) const { return j_.contains(key); }

	double number(const std::string& key, double def)
	{
		used_.insert(key);
		if(!j_.contains(key))
			return record(key, def);
		const auto& v = j_.at(key);
		if(!v.is_number())
			throw ValidationError(context_ + ": \"" + key + "\" must be a number");
		return record(key, v.get<double>());
	}

	int integer(const std::string& key, int def)
	{
		used_.insert(key);
		if(!j_.contains(key))
			return record(key, def);
		const auto& v = j_.at(key);
		if(!v.is_number_integer())
			throw ValidationError(context_ + ": \"" + key + "\" must be an integer");
		return record(key, v.get<int>());
	}

	bool boolean(const std::string& key, bool def)
	{
		used_.insert(key);
		if(!j_.contains(key))
			return record(key, def);
		const auto& v = j_.at(key);
		if(!v.is_boolean())
			throw ValidationError(context_ + ": \"" + key + "\" must be true or false");
		return record(key, v.get<bool>());
	}

	std::string text(const std::string& key, const std::string& def)
	{
		used_.insert(key);
		if(!j_.contains(key))
			return record(key, def);
		const auto& v = j_.at(key);
		if(!v.is_string())
			throw ValidationError(context_ + ": \"" + key + "\" must be a string");
		return record(key, v.get<std::string>());
	}

	/// Raw value or nullptr; the caller records what it resolves.
	const nlohmann::json* raw(const std::string& key)
	{
		used_.insert(key);
		return j_.contains(key) ? &j_.at(key) : nullptr;
	}

	void set_resolved(const std::string& key, nlohmann::json v) { resolved_[key] = std::move(v); }

	/// Throws on the first key that nothing asked for.
	void finish() const
	{
		for(const auto& [key, _] : j_.items())
			if(!used_.count(key))
				throw ValidationError(context_ + ": unknown key \"" + key + "\"");
	}

	const nlohmann::json& resolved() const { return resolved_; }
	const std::string& context() const { return context_; }

private:
	template <class T>
	T record(const std::string& key, T v)
	{
		resolved_[key] = v;
		return v;
	}

	nlohmann::json j_;
	std::string context_;
	std::set<std::string> used_;
	nlohmann::json resolved_ = nlohmann::json::object();
};

} // namespace twostep::detail
