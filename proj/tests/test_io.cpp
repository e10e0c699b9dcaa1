#include "nbpolar/code_spec.hpp"

#include "nbpolar/wer_sim.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <string>

using namespace nbpolar;

namespace {

CodeSpec sample_spec()
{
	ConstructParams params;
	params.p = 2;
	params.n = 2;
	params.k = 2;
	params.snr_db = -1.5;
	params.seed = 9;
	params.budgets.opt_trials = 100;
	params.budgets.rel_trials = 500;
	auto built = construct_code(params, 1);
	return make_code_spec(built, params);
}

} // namespace

TEST_SUITE("io") {

TEST_CASE("code spec json round trip preserves every field")
{
	CodeSpec spec = sample_spec();
	std::string text = code_spec_to_json(spec);
	CodeSpec back = code_spec_from_json(text);

	CHECK(back.p == spec.p);
	CHECK(back.n == spec.n);
	CHECK(back.gf_poly == spec.gf_poly);
	CHECK(back.pn_poly == spec.pn_poly);
	CHECK(back.design_snr_db == spec.design_snr_db);
	CHECK(back.seed == spec.seed);
	CHECK(back.budgets.opt_trials == spec.budgets.opt_trials);
	CHECK(back.budgets.rel_trials == spec.budgets.rel_trials);
	CHECK(back.budgets.candidate_subsample == spec.budgets.candidate_subsample);
	CHECK(back.coeffs == spec.coeffs);
	CHECK(back.info_set == spec.info_set);
	CHECK(back.error_probs == spec.error_probs);
	CHECK(back.wer_bound == spec.wer_bound);

	// serialization is stable
	CHECK(code_spec_to_json(back) == text);
}

TEST_CASE("code spec file round trip through disk")
{
	auto path = std::filesystem::temp_directory_path() / "nbpolar_test_spec.json";
	CodeSpec spec = sample_spec();
	save_code_spec(spec, path.string());
	CodeSpec back = load_code_spec(path.string());
	CHECK(back.coeffs == spec.coeffs);
	CHECK(back.error_probs == spec.error_probs);
	std::filesystem::remove(path);
}

TEST_CASE("reloaded spec reproduces code behavior")
{
	CodeSpec spec = sample_spec();
	CodeSpec back = code_spec_from_json(code_spec_to_json(spec));
	PolarCode c1 = code_from_spec(spec);
	PolarCode c2 = code_from_spec(back);
	std::vector<gf_elem> u{3, 1, 0, 2};
	CHECK(encode(c1, u) == encode(c2, u));
	CHECK(c1.info_set() == c2.info_set());

	CcskModem modem(pn_from_spec(back));
	auto w1 = simulate_wer_point(c1, modem, -1.0, 500, 0, 4, 1, 0);
	auto w2 = simulate_wer_point(c2, modem, -1.0, 500, 0, 4, 2, 0);
	CHECK(w1.word_errors == w2.word_errors);
	CHECK(w1.trials == w2.trials);
}

TEST_CASE("malformed specs are rejected as io errors")
{
	CHECK_THROWS_AS(code_spec_from_json("not json at all"), IoError);
	CHECK_THROWS_AS(code_spec_from_json("{}"), IoError);
	CHECK_THROWS_AS(code_spec_from_json("[1,2,3]"), IoError);

	CodeSpec spec = sample_spec();
	std::string good = code_spec_to_json(spec);

	{
		auto j = nlohmann::json::parse(good);
		j["format"] = "something-else";
		CHECK_THROWS_AS(code_spec_from_json(j.dump()), IoError);
	}
	{
		auto j = nlohmann::json::parse(good);
		j["coeffs"].erase(0);
		CHECK_THROWS_AS(code_spec_from_json(j.dump()), IoError);
	}
	{
		auto j = nlohmann::json::parse(good);
		j["coeffs"][0] = 0;
		CHECK_THROWS_AS(code_spec_from_json(j.dump()), IoError);
	}
	{
		auto j = nlohmann::json::parse(good);
		j["error_probs"][0] = 1.5;
		CHECK_THROWS_AS(code_spec_from_json(j.dump()), IoError);
	}
	{
		auto j = nlohmann::json::parse(good);
		j["info_set"][0] = 99;
		CHECK_THROWS_AS(code_spec_from_json(j.dump()), IoError);
	}
	{
		auto j = nlohmann::json::parse(good);
		j.erase("seed");
		CHECK_THROWS_AS(code_spec_from_json(j.dump()), IoError);
	}
}

TEST_CASE("missing file raises an io error")
{
	CHECK_THROWS_AS(load_code_spec("/nonexistent/dir/spec.json"), IoError);
}

TEST_CASE("wer simulation is reproducible and stops on the error budget")
{
	CodeSpec spec = sample_spec();
	PolarCode code = code_from_spec(spec);
	CcskModem modem(pn_from_spec(spec));

	// noisy enough that errors are common
	auto a = simulate_wer_point(code, modem, -8.0, 100000, 60, 13, 1, 0);
	auto b = simulate_wer_point(code, modem, -8.0, 100000, 60, 13, 3, 0);
	CHECK(a.trials == b.trials);
	CHECK(a.word_errors == b.word_errors);
	CHECK(a.word_errors >= 60);
	CHECK(a.trials < 100000);

	auto c = simulate_wer_point(code, modem, -8.0, 3000, 0, 13, 1, 0);
	CHECK(c.trials == 3000);
}

} // TEST_SUITE
