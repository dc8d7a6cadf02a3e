#include <doctest.h>

#include "qbattery/basis.hpp"
#include "qbattery/circuits.hpp"
#include "qbattery/fidelity.hpp"
#include "qbattery/operators.hpp"

using namespace qbattery;

TEST_CASE("stabilizer expectations on fixtures") {
    SystemConfig c4{4, 1.0, 6, -1};
    SUBCASE("|0000> has ZZII = +1") {
        CHECK(stabilizer_expectation(basis_state(c4, 0), "ZZII") == doctest::Approx(1.0));
    }
    SUBCASE("GHZ4 is the +1 eigenstate of all three generators") {
        QuantumState ghz = basis_state(c4, 0);
        ghz.amplitudes(0) = 1.0 / std::sqrt(2.0);
        ghz.amplitudes(15) = 1.0 / std::sqrt(2.0);
        CHECK(stabilizer_expectation(ghz, "XXXX") == doctest::Approx(1.0));
        CHECK(stabilizer_expectation(ghz, "ZZII") == doctest::Approx(1.0));
        CHECK(stabilizer_expectation(ghz, "IIZZ") == doctest::Approx(1.0));
        CHECK(stabilizer_expectation(ghz, "IZZI") == doctest::Approx(1.0));
    }
    SUBCASE("length mismatch rejected") {
        CHECK_THROWS_AS(stabilizer_expectation(basis_state(c4, 0), "ZZ"), std::invalid_argument);
    }
}

TEST_CASE("ideal logical states") {
    const SystemConfig c = qec_default_config();
    QuantumState ghz;
    ghz.config = c;
    ghz.basis = BasisTag::Dressed;
    ghz.amplitudes = ideal_ghz(c);
    CHECK(stabilizer_expectation(ghz, "XXXXI") == doctest::Approx(1.0));
    CHECK(stabilizer_expectation(ghz, "IZZII") == doctest::Approx(1.0));

    QuantumState plus = ghz;
    plus.amplitudes = ideal_logical_plus(c);
    CHECK(stabilizer_expectation(plus, "XXXXI") == doctest::Approx(1.0));
    CHECK(stabilizer_expectation(plus, "ZZIII") == doctest::Approx(1.0));
    CHECK(stabilizer_expectation(plus, "IIZZI") == doctest::Approx(1.0));
    CHECK(stabilizer_expectation(plus, "IIXXI") == doctest::Approx(1.0));
    // |+>_L is an equal superposition of the two IZZI sectors
    CHECK(std::abs(stabilizer_expectation(plus, "IZZII")) < 1e-12);
}

TEST_CASE("branch policy parsing") {
    CHECK(branch_policy_from_string("sample") == BranchPolicy::Sample);
    CHECK(branch_policy_from_string("both") == BranchPolicy::BothBranches);
    CHECK_THROWS_AS(branch_policy_from_string("nope"), std::invalid_argument);
}

// The full encoding runs live in the acceptance suite (they exercise the
// optimizer for minutes); here we pin the cheap structural pieces.
TEST_CASE("circuit records serialize") {
    CircuitRun run;
    run.seed = 7;
    run.label = "demo";
    GateRecord g;
    g.name = "x";
    g.schedule.segments.push_back({0.5, DetuningVector::Zero(2)});
    g.fidelity_to_target = 0.999;
    run.gates.push_back(g);
    run.measurements.push_back({1, 0, 0.5});
    run.stabilizers["XXXX"] = 1.0;
    run.logical_fidelity = 0.99;
    const auto j = run.to_json();
    CHECK(j["gates"].size() == 1);
    CHECK(j["measurements"][0]["qubit"] == 1);
    CHECK(j["stabilizers"]["XXXX"] == 1.0);
}
