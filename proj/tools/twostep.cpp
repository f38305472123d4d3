#include "twostep/errors.hpp"
#include "twostep/parallel.hpp"
#include "twostep/runner.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace
{

std::string read_file(const std::string& path)
{
	std::ifstream f(path, std::ios::binary);
	if(!f)
		throw twostep::ValidationError("cannot read config " + path);
	std::ostringstream ss;
	ss << f.rdbuf();
	return ss.str();
}

} // namespace

int main(int argc, char** argv)
{
	CLI::App app{"Two-step modulation simulator for multilevel systems"};
	app.require_subcommand(1);

	std::string config;
	std::string out_dir;
	auto* simulate = app.add_subcommand("simulate", "evolve a scenario and write trace.csv + run.json");
	simulate->add_option("--config", config, "JSON config")->required();
	simulate->add_option("--out", out_dir, "output directory")->required();
	auto* sweep = app.add_subcommand("sweep", "run a parameter sweep and write sweep.csv + run.json");
	sweep->add_option("--config", config, "JSON config")->required();
	sweep->add_option("--out", out_dir, "output directory")->required();
	auto* spectrum = app.add_subcommand("spectrum", "print dressed spectra and suggested intervals");
	spectrum->add_option("--config", config, "JSON config")->required();
	auto* effective = app.add_subcommand("effective", "print the effective Hamiltonian of one period");
	effective->add_option("--config", config, "JSON config")->required();

	CLI11_PARSE(app, argc, argv);

	const std::string name = app.get_subcommands().front()->get_name();
	try
	{
		twostep::configure_threads_from_env();
		twostep::RunPlan plan = twostep::parse_config(read_file(config));
		if(twostep::to_string(plan.command) != name)
			throw twostep::ValidationError("config command \"" + twostep::to_string(plan.command) +
			                               "\" does not match subcommand \"" + name + "\"");
		twostep::run(plan, out_dir, std::cout);
	}
	catch(const twostep::ValidationError& e)
	{
		std::cerr << "error: " << e.what() << '\n';
		return 2;
	}
	catch(const twostep::NumericError& e)
	{
		std::cerr << "numeric failure: " << e.what() << '\n';
		return 3;
	}
	catch(const std::exception& e)
	{
		std::cerr << "error: " << e.what() << '\n';
		return 1;
	}
	return 0;
}
