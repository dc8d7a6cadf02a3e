#include <doctest.h>

#include <random>

#include "qbattery/fidelity.hpp"
#include "qbattery/operators.hpp"

using namespace qbattery;

TEST_CASE("state fidelity") {
    SystemConfig c{1, 1.0, 1, -1};
    QuantumState a = ground_state(c);
    CHECK(state_fidelity(a, a) == doctest::Approx(1.0));
    QuantumState b = a;
    b.amplitudes << 0.0, 1.0;
    CHECK(state_fidelity(a, b) == doctest::Approx(0.0));
    QuantumState phased = a;
    phased.amplitudes *= std::exp(Complex(0.0, 1.234));
    CHECK(state_fidelity(a, phased) == doctest::Approx(1.0));
    CHECK(state_fidelity(a, b) == state_fidelity(b, a));
}

TEST_CASE("state fidelity is invariant under a shared unitary") {
    std::mt19937 rng(3);
    std::normal_distribution<double> gauss;
    SystemConfig c{2, 1.0, 2, -1};
    Vector a(4), b(4);
    for (int i = 0; i < 4; ++i) {
        a(i) = Complex(gauss(rng), gauss(rng));
        b(i) = Complex(gauss(rng), gauss(rng));
    }
    a /= a.norm();
    b /= b.norm();
    const Matrix u = pauli_string_matrix(c, "XY");  // any unitary will do
    CHECK(state_fidelity(a, b) == doctest::Approx(state_fidelity(Vector(u * a), Vector(u * b))));
}

TEST_CASE("average gate fidelity trace formula") {
    SystemConfig c{1, 1.0, 1, -1};
    const Matrix i2 = Matrix::Identity(2, 2);
    const Matrix x = dressed_pauli(c, 0, 'X');
    CHECK(average_gate_fidelity(x, x) == doctest::Approx(1.0));
    CHECK(average_gate_fidelity(i2, x) == doctest::Approx(0.0));
    CHECK(average_gate_fidelity(i2, Matrix(std::exp(Complex(0, 0.77)) * i2)) == doctest::Approx(1.0));
    CHECK(average_gate_fidelity(i2, x) == average_gate_fidelity(x, i2));
    CHECK_THROWS_AS(average_gate_fidelity(i2, Matrix::Identity(4, 4)), std::invalid_argument);
}

TEST_CASE("subspace process fidelity") {
    SystemConfig c{1, 1.0, 1, -1};
    const Matrix x = dressed_pauli(c, 0, 'X');
    const Matrix z = dressed_pauli(c, 0, 'Z');
    const Matrix full = Matrix::Identity(2, 2);
    SUBCASE("full projector reduces to the average gate fidelity") {
        CHECK(subspace_process_fidelity(x, z, full) == doctest::Approx(average_gate_fidelity(x, z)));
    }
    SUBCASE("identical unitaries on any block give 1") {
        Matrix p = Matrix::Zero(2, 2);
        p(0, 0) = 1.0;
        CHECK(subspace_process_fidelity(z, z, p) == doctest::Approx(1.0));
    }
    SUBCASE("invalid projectors rejected") {
        CHECK_THROWS_AS(subspace_process_fidelity(x, z, x + z), std::invalid_argument);
        CHECK_THROWS_AS(subspace_process_fidelity(x, z, Matrix::Zero(2, 2)), std::invalid_argument);
    }
}

TEST_CASE("charging error oracle") {
    CHECK(charging_error_oracle(6.0) == doctest::Approx(8.5673e-3).epsilon(1e-4));
    CHECK(charging_error_oracle(1e6) < 1e-12);
    // finite-n refinement keeps the (1/r - 1/n) factor of the expansion
    CHECK(charging_error_oracle(100.0, 200) == doctest::Approx(0.5 * charging_error_oracle(100.0)));
    CHECK_THROWS_AS(charging_error_oracle(0.0), std::invalid_argument);
}
