#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "revgen/errors.hpp"
#include "revgen/mock_providers.hpp"
#include "revgen/mt_gate.hpp"
#include "revgen/templates.hpp"

#include <bit>
#include <cmath>
#include <random>

using namespace revgen;
using namespace revgen::mt_gate;
using providers::QualityEstimate;

namespace {

corpus::TextFragment accepted(const std::string& text, const std::string& lang = "spa") {
    auto f = corpus::make_fragment(lang, text);
    f.advance(corpus::FragmentStatus::deduped);
    f.advance(corpus::FragmentStatus::accepted);
    return f;
}

// For non-negative doubles the IEEE bit pattern orders like the value.
bool oracle_pass(double score, double threshold) {
    return std::bit_cast<std::uint64_t>(score) >= std::bit_cast<std::uint64_t>(threshold);
}

}  // namespace

TEST_CASE("gate boundary at the default threshold") {
    CHECK(kDefaultQeThreshold == 0.7);
    CHECK(apply_qe_gate({0.700, "q"}, 0.7) == GateDecision::pass);
    CHECK(apply_qe_gate({std::nextafter(0.7, 0.0), "q"}, 0.7) == GateDecision::fail);
    CHECK(apply_qe_gate({0.6999999, "q"}, 0.7) == GateDecision::fail);
    CHECK(apply_qe_gate({1.0, "q"}, 0.7) == GateDecision::pass);
    CHECK(apply_qe_gate({0.0, "q"}, 0.0) == GateDecision::pass);
    CHECK_THROWS_AS(apply_qe_gate({0.5, "q"}, 1.2), PreconditionError);
    CHECK_THROWS_AS(apply_qe_gate({0.5, "q"}, -0.1), PreconditionError);
}

TEST_CASE("gate agrees with a bitwise comparison oracle") {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::uniform_int_distribution<int> near(-3, 3);
    int mismatches = 0;
    for (int i = 0; i < 10000; ++i) {
        double s = u(rng);
        if (i % 4 == 0) {
            s = 0.7;
            for (int k = near(rng); k != 0; k += k > 0 ? -1 : 1) s = std::nextafter(s, k > 0 ? 1.0 : 0.0);
        }
        const bool got = apply_qe_gate({s, "q"}, 0.7) == GateDecision::pass;
        if (got != oracle_pass(s, 0.7)) ++mismatches;
    }
    CHECK(mismatches == 0);
}

TEST_CASE("forward translation with fixture score at the threshold") {
    providers::MockOptions o;
    providers::MockTranslator mt;
    const auto f = accepted("El gato duerme sobre la alfombra roja del salón.");
    const auto en = mt.translate({f.text, "spa", "en"});
    o.qe_fixtures[{f.text, en}] = 0.70;
    providers::MockQualityEstimator qe(o);
    const auto g = forward_translate(f, {mt, qe, 0.7});
    CHECK(g.passed);
    CHECK(g.qe.score == 0.70);
    CHECK(g.text == en);
    CHECK(g.direction == Direction::x_to_en);
}

TEST_CASE("back translation round trip and convention") {
    providers::MockOptions o;
    providers::MockTranslator mt;
    o.qe_fixtures[{"Summarize the text.", mt.translate({"Summarize the text.", "en", "tel"})}] = 0.69;
    providers::MockQualityEstimator qe(o);
    const auto g = back_translate("Summarize the text.", "tel", {mt, qe, 0.7}, "r1");
    CHECK_FALSE(g.passed);
    CHECK(g.direction == Direction::en_to_x);
    CHECK(mt.translate({g.text, "tel", "en"}) == "Summarize the text.");
    CHECK_THROWS_AS(back_translate("", "tel", {mt, qe, 0.7}), PreconditionError);
}

TEST_CASE("forward translation preconditions and provider failures") {
    providers::MockTranslator mt;
    providers::MockQualityEstimator qe({});
    auto raw = corpus::make_fragment("spa", "texto sin filtrar todavía");
    CHECK_THROWS_AS(forward_translate(raw, {mt, qe, 0.7}), PreconditionError);

    providers::MockOptions o;
    const auto f = accepted("Un texto cualquiera para la prueba de rango.");
    o.qe_fixtures[{f.text, mt.translate({f.text, "spa", "en"})}] = 1.03;
    providers::MockQualityEstimator bad(o);
    try {
        forward_translate(f, {mt, bad, 0.7});
        FAIL("expected failure");
    } catch (const GateError& e) {
        CHECK(e.kind() == providers::ProviderErrorKind::range_violation);
        CHECK(e.record_id() == f.id);
    }
}

TEST_CASE("fixed-mode estimates at the boundary") {
    providers::MockOptions o;
    o.qe_mode = providers::MockOptions::QeMode::fixed;
    o.qe_fixed = 0.7;
    providers::MockTranslator mt;
    providers::MockQualityEstimator qe(o);
    const auto f = accepted("La lluvia cae despacio sobre los tejados de la ciudad.");
    CHECK(forward_translate(f, {mt, qe, 0.7}).passed);
    CHECK_FALSE(forward_translate(f, {mt, qe, std::nextafter(0.7, 1.0)}).passed);
}
