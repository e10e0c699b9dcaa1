/*
Command line harness: construct codes, simulate their word error rate,
and sweep achievable-rate estimates.

Output files are deterministic for a given (seed, flags) pair; the only
run-dependent content is the '# generated:' timestamp comment in CSV
files. Thread count changes scheduling only, never results.
*/

#include "nbpolar/code_spec.hpp"
#include "nbpolar/construct.hpp"
#include "nbpolar/rates.hpp"
#include "nbpolar/version.hpp"
#include "nbpolar/wer_sim.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

namespace {

using namespace nbpolar;

std::string fmt_double(const char* f, double v)
{
	char buf[64];
	std::snprintf(buf, sizeof buf, f, v);
	return buf;
}

std::string fmt_hex(std::uint32_t v)
{
	char buf[16];
	std::snprintf(buf, sizeof buf, "0x%X", v);
	return buf;
}

std::string utc_now()
{
	char buf[32];
	std::time_t t = std::time(nullptr);
	std::tm g{};
	gmtime_r(&t, &g);
	std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &g);
	return buf;
}

std::ofstream open_out(const std::string& path)
{
	std::ofstream out(path, std::ios::binary);
	if (!out)
		throw IoError("cannot open for writing: " + path);
	return out;
}

void finish_out(std::ofstream& out, const std::string& path)
{
	if (!out.flush())
		throw IoError("write failed: " + path);
}

struct SnrGrid {
	std::vector<double> points;
};

SnrGrid make_grid(bool single_set, double single, double start, double stop,
	double step)
{
	SnrGrid g;
	if (single_set) {
		g.points.push_back(single);
		return g;
	}
	if (step <= 0.0)
		throw CLI::ValidationError("--snr-step", "step must be positive");
	if (stop < start)
		throw CLI::ValidationError("--snr-stop", "stop must not precede start");
	auto count = static_cast<std::uint64_t>(
		std::floor((stop - start) / step + 1e-9)) + 1;
	for (std::uint64_t i = 0; i < count; ++i)
		g.points.push_back(start + static_cast<double>(i) * step);
	return g;
}

struct CommonOpts {
	std::uint64_t seed = 1;
	int threads = 1;
	std::string out;
};

void add_common(CLI::App* cmd, CommonOpts& c)
{
	cmd->add_option("--seed", c.seed, "RNG seed")->capture_default_str();
	cmd->add_option("--threads", c.threads, "worker threads")
		->check(CLI::Range(1, 256))
		->capture_default_str();
	cmd->add_option("--out", c.out, "output file")->required();
}

struct ConstructOpts {
	CommonOpts common;
	int p = 0;
	int n = 0;
	unsigned k = 0;
	double rate = -1.0;
	bool k_set = false, rate_set = false;
	double snr_db = 0.0;
	Budgets budgets;
	std::uint32_t gf_poly = 0, pn_poly = 0;
	std::string dump_candidates;
};

int run_construct(const ConstructOpts& o)
{
	unsigned N = 1u << o.n;
	unsigned K = o.k;
	if (o.rate_set) {
		if (o.rate < 0.0 || o.rate > 1.0)
			throw std::invalid_argument("rate must be in [0, 1]");
		K = static_cast<unsigned>(std::llround(o.rate * N));
	}

	ConstructParams params;
	params.p = o.p;
	params.n = o.n;
	params.k = K;
	params.snr_db = o.snr_db;
	params.seed = o.common.seed;
	params.budgets = o.budgets;
	params.gf_poly = o.gf_poly;
	params.pn_poly = o.pn_poly;

	Construction built = construct_code(params, o.common.threads,
		!o.dump_candidates.empty());
	CodeSpec spec = make_code_spec(built, params);
	save_code_spec(spec, o.common.out);

	if (!o.dump_candidates.empty()) {
		auto out = open_out(o.dump_candidates);
		out << "# nbpolar candidates v" << kVersion << "\n";
		out << "# generated: " << utc_now() << "\n";
		out << "node,level,h,p_bad,p_good,selected\n";
		for (const auto& r : built.candidates)
			out << r.node << ',' << r.level << ',' << r.h << ','
			    << fmt_double("%.9e", r.p_bad) << ','
			    << fmt_double("%.9e", r.p_good) << ','
			    << (r.selected ? 1 : 0) << "\n";
		finish_out(out, o.dump_candidates);
	}

	std::cout << "constructed p=" << o.p << " n=" << o.n << " K=" << K
		  << " at " << fmt_double("%.6g", o.snr_db)
		  << " dB: wer_bound=" << fmt_double("%.6e", built.wer_bound_value)
		  << "\nwrote " << o.common.out << "\n";
	return 0;
}

struct SimulateOpts {
	CommonOpts common;
	std::string code_path;
	double snr_db = 0.0;
	bool snr_set = false;
	double snr_start = 0.0, snr_stop = 0.0, snr_step = 1.0;
	std::uint64_t trials = 1000000;
	std::uint64_t max_errors = 100;
};

int run_simulate(const SimulateOpts& o)
{
	CodeSpec spec = load_code_spec(o.code_path);
	PolarCode code = code_from_spec(spec);
	CcskModem modem(pn_from_spec(spec));
	SnrGrid grid = make_grid(o.snr_set, o.snr_db, o.snr_start, o.snr_stop,
		o.snr_step);

	auto out = open_out(o.common.out);
	out << "# nbpolar simulate v" << kVersion << "\n";
	out << "# generated: " << utc_now() << "\n";
	out << "# code: p=" << spec.p << " n=" << spec.n
	    << " K=" << spec.info_set.size() << " gf_poly=" << fmt_hex(spec.gf_poly)
	    << " pn_poly=" << fmt_hex(spec.pn_poly)
	    << " design_snr_db=" << fmt_double("%.6g", spec.design_snr_db) << "\n";
	out << "# seed=" << o.common.seed << " max_trials=" << o.trials
	    << " max_errors=" << o.max_errors << "\n";
	out << "snr_db,trials,word_errors,wer_measured,wer_bound\n";

	for (std::size_t i = 0; i < grid.points.size(); ++i) {
		WerPoint pt = simulate_wer_point(code, modem, grid.points[i], o.trials,
			o.max_errors, o.common.seed, o.common.threads,
			static_cast<std::uint32_t>(i));
		out << fmt_double("%.6g", pt.snr_db) << ',' << pt.trials << ','
		    << pt.word_errors << ',' << fmt_double("%.6e", pt.wer()) << ','
		    << fmt_double("%.6e", spec.wer_bound) << "\n";
		std::cout << "snr " << fmt_double("%.6g", pt.snr_db) << " dB: "
			  << pt.word_errors << "/" << pt.trials
			  << " wer=" << fmt_double("%.6e", pt.wer()) << "\n";
	}
	finish_out(out, o.common.out);
	std::cout << "wrote " << o.common.out << "\n";
	return 0;
}

struct RatesOpts {
	CommonOpts common;
	int p = 0;
	double snr_db = 0.0;
	bool snr_set = false;
	double snr_start = 0.0, snr_stop = 0.0, snr_step = 1.0;
	double epsilon = 1e-4;
	std::uint64_t blocklength = 0;
	std::uint64_t trials = 100000;
	std::uint32_t pn_poly = 0;
};

int run_rates(const RatesOpts& o)
{
	std::uint32_t poly = o.pn_poly ? o.pn_poly : default_primitive_poly(o.p);
	CcskModem modem(pn_generate(o.p, poly));
	SnrGrid grid = make_grid(o.snr_set, o.snr_db, o.snr_start, o.snr_stop,
		o.snr_step);

	auto out = open_out(o.common.out);
	out << "# nbpolar rates v" << kVersion << "\n";
	out << "# generated: " << utc_now() << "\n";
	out << "# p=" << o.p << " pn_poly=" << fmt_hex(poly)
	    << " epsilon=" << fmt_double("%.6g", o.epsilon)
	    << " blocklength=" << o.blocklength << " trials=" << o.trials
	    << " seed=" << o.common.seed << "\n";
	out << "snr_db,R,V,R_star,R_eff,R_star_eff\n";

	for (std::size_t i = 0; i < grid.points.size(); ++i) {
		RatePoint pt = estimate_rate_point(modem, grid.points[i], o.trials,
			o.common.seed, o.common.threads, static_cast<std::uint32_t>(i));
		double r_star = normal_approximation(pt.rate, pt.dispersion,
			o.blocklength, o.epsilon);
		out << fmt_double("%.6g", pt.snr_db) << ','
		    << fmt_double("%.9e", pt.rate) << ','
		    << fmt_double("%.9e", pt.dispersion) << ','
		    << fmt_double("%.9e", r_star) << ','
		    << fmt_double("%.9e", effective_rate(pt.rate, o.p)) << ','
		    << fmt_double("%.9e", effective_rate(r_star, o.p)) << "\n";
		std::cout << "snr " << fmt_double("%.6g", pt.snr_db)
			  << " dB: R=" << fmt_double("%.6g", pt.rate)
			  << " R*=" << fmt_double("%.6g", r_star) << "\n";
	}
	finish_out(out, o.common.out);
	std::cout << "wrote " << o.common.out << "\n";
	return 0;
}

} // namespace

int main(int argc, char** argv)
{
	CLI::App app{"non-binary polar codes over cyclic code-shift keying"};
	app.set_version_flag("--version", std::string("nbpolar ") + kVersion);
	app.require_subcommand(1);

	ConstructOpts co;
	CLI::App* construct = app.add_subcommand("construct",
		"optimize kernel coefficients and select an info set");
	construct->add_option("--p", co.p, "field degree, q = 2^p")
		->check(CLI::Range(1, 12))->required();
	construct->add_option("--n", co.n, "tree depth, N = 2^n")
		->check(CLI::Range(1, 16))->required();
	auto* opt_k = construct->add_option("--k", co.k, "info symbols per block");
	auto* opt_rate = construct->add_option("--rate", co.rate,
		"code rate, K = round(rate * N)");
	opt_k->excludes(opt_rate);
	opt_rate->excludes(opt_k);
	construct->add_option("--snr-db", co.snr_db, "design SNR in dB")->required();
	construct->add_option("--opt-trials", co.budgets.opt_trials,
		"trials per candidate coefficient")->capture_default_str();
	construct->add_option("--rel-trials", co.budgets.rel_trials,
		"trials for the reliability pass")->capture_default_str();
	construct->add_option("--candidate-subsample", co.budgets.candidate_subsample,
		"cap on candidate coefficients per node, 0 = all")
		->capture_default_str();
	construct->add_option("--gf-poly", co.gf_poly,
		"field polynomial override, 0 = default");
	construct->add_option("--pn-poly", co.pn_poly,
		"spreading sequence polynomial override, 0 = default");
	construct->add_option("--dump-candidates", co.dump_candidates,
		"write the coefficient search audit table to this CSV");
	add_common(construct, co.common);

	SimulateOpts so;
	CLI::App* simulate = app.add_subcommand("simulate",
		"measure word error rate of a constructed code");
	simulate->add_option("--code", so.code_path, "code spec JSON")->required();
	auto* s_single = simulate->add_option("--snr-db", so.snr_db, "single SNR");
	simulate->add_option("--snr-start", so.snr_start, "grid start, dB");
	simulate->add_option("--snr-stop", so.snr_stop, "grid stop, dB");
	simulate->add_option("--snr-step", so.snr_step, "grid step, dB")
		->capture_default_str();
	simulate->add_option("--trials", so.trials, "max trials per point")
		->capture_default_str();
	simulate->add_option("--max-errors", so.max_errors,
		"stop a point after this many word errors, 0 = never")
		->capture_default_str();
	add_common(simulate, so.common);

	RatesOpts ro;
	CLI::App* rates = app.add_subcommand("rates",
		"achievable-rate sweep for the modulated channel");
	rates->add_option("--p", ro.p, "field degree, q = 2^p")
		->check(CLI::Range(1, 12))->required();
	auto* r_single = rates->add_option("--snr-db", ro.snr_db, "single SNR");
	rates->add_option("--snr-start", ro.snr_start, "grid start, dB");
	rates->add_option("--snr-stop", ro.snr_stop, "grid stop, dB");
	rates->add_option("--snr-step", ro.snr_step, "grid step, dB")
		->capture_default_str();
	rates->add_option("--epsilon", ro.epsilon, "target word error probability")
		->capture_default_str();
	rates->add_option("--blocklength", ro.blocklength,
		"block length N for the normal approximation")->required();
	rates->add_option("--trials", ro.trials, "trials per point")
		->capture_default_str();
	rates->add_option("--pn-poly", ro.pn_poly,
		"spreading sequence polynomial override, 0 = default");
	add_common(rates, ro.common);

	try {
		app.parse(argc, argv);
	} catch (const CLI::ParseError& e) {
		int r = app.exit(e);
		return r == 0 ? 0 : 2;
	}

	co.k_set = opt_k->count() > 0;
	co.rate_set = opt_rate->count() > 0;
	so.snr_set = s_single->count() > 0;
	ro.snr_set = r_single->count() > 0;

	try {
		if (construct->parsed()) {
			if (!co.k_set && !co.rate_set)
				throw std::invalid_argument(
					"construct requires --k or --rate");
			return run_construct(co);
		}
		if (simulate->parsed()) {
			if (!so.snr_set && simulate->count("--snr-start") == 0)
				throw std::invalid_argument(
					"simulate requires --snr-db or --snr-start/stop/step");
			return run_simulate(so);
		}
		if (rates->parsed()) {
			if (!ro.snr_set && rates->count("--snr-start") == 0)
				throw std::invalid_argument(
					"rates requires --snr-db or --snr-start/stop/step");
			return run_rates(ro);
		}
	} catch (const IoError& e) {
		std::cerr << "error: " << e.what() << "\n";
		return 3;
	} catch (const CLI::ValidationError& e) {
		std::cerr << "error: " << e.what() << "\n";
		return 2;
	} catch (const std::exception& e) {
		std::cerr << "error: " << e.what() << "\n";
		return 2;
	}
	return 0;
}
