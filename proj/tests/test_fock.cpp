#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cavbell/correlators.hpp"
#include "helpers.hpp"

using namespace cavbell;
using namespace test_util;

TEST_CASE("inner products of basis kets") {
  const auto gg0 = StateVector::basis_state(ket(G, G, 0));
  const auto eg0 = StateVector::basis_state(ket(E, G, 0));
  CHECK(inner_product(gg0, gg0) == Amplitude{1.0, 0.0});
  CHECK(inner_product(gg0, eg0) == Amplitude{0.0, 0.0});
}

TEST_CASE("inner product of a hand-built superposition") {
  StateVector s;
  s.add(ket(G, G, 0), {0.6, 0.0});
  s.add(ket(E, G, 1), {0.0, 0.8});
  const Amplitude ip = inner_product(s, s);
  CHECK(ip.real() == doctest::Approx(1.0).epsilon(1e-14));  // 0.36 + 0.64
  CHECK(std::abs(ip.imag()) < 1e-15);
}

TEST_CASE("inner product sesquilinearity") {
  Sampler sampler;
  StateVector a, b;
  a.add(ket(E, G, 2), {0.3, -0.4});
  a.add(ket(G, E, 1), {0.5, 0.1});
  b.add(ket(E, G, 2), {-0.2, 0.9});
  b.add(ket(G, G, 0), {0.1, 0.0});
  const Amplitude lhs = inner_product(a, b);
  CHECK(std::abs(lhs - std::conj(inner_product(b, a))) < 1e-15);
  const Amplitude c{0.7, -1.2};
  StateVector cb = b;
  cb.scale(c);
  CHECK(std::abs(inner_product(a, cb) - c * lhs) < 1e-14);
}

TEST_CASE("sigma_z acts on the designated atom only") {
  const auto eg0 = StateVector::basis_state(ket(E, G, 0));
  CHECK(state_distance(apply_atom_operator(sigma_z(1), eg0), eg0) < 1e-15);

  const auto ge3 = StateVector::basis_state(ket(G, E, 3));
  StateVector minus = ge3;
  minus.scale({-1.0, 0.0});
  CHECK(state_distance(apply_atom_operator(sigma_z(1), ge3), minus) < 1e-15);
}

TEST_CASE("sigma_x flips the designated atom") {
  const auto gg1 = StateVector::basis_state(ket(G, G, 1));
  const auto ge1 = StateVector::basis_state(ket(G, E, 1));
  CHECK(state_distance(apply_atom_operator(sigma_x(2), gg1), ge1) < 1e-15);
}

TEST_CASE("expectation on product and entangled states") {
  CHECK(expectation(sigma_z(1), sigma_z(2), StateVector::basis_state(ket(E, E, 0))) ==
        doctest::Approx(1.0));

  StateVector bell;
  const double r = 1.0 / std::sqrt(2.0);
  bell.add(ket(E, G, 0), {r, 0.0});
  bell.add(ket(G, E, 0), {r, 0.0});
  CHECK(expectation(sigma_z(1), sigma_z(2), bell) == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("phase observables on the post-cavity state reproduce the reported value") {
  const double eta = pi / std::sqrt(2.0);
  const Scenario sc(InitialCase::BothExcited, 0, eta, eta);
  const StateVector psi2 = after_second_pass(sc);
  for (double phi : {0.0, 0.9, 2.4}) {
    const double e = expectation(phase_operator(phi, 1), phase_operator(phi, 2), psi2);
    CHECK(std::abs(e - 0.766) <= 1e-3);  // 2*alpha at equal settings
  }
}

TEST_CASE("non-Hermitian operators are rejected") {
  const AtomOperator raising(1, {Amplitude{0, 0}, Amplitude{1, 0}, Amplitude{0, 0}, Amplitude{0, 0}});
  const auto s = StateVector::basis_state(ket(G, G, 0));
  CHECK_THROWS_AS(expectation(raising, sigma_z(2), s), std::invalid_argument);
  CHECK_THROWS_AS(expectation(sigma_z(1), raising, s), std::invalid_argument);
}

TEST_CASE("operators on the same atom are rejected in expectation") {
  const auto s = StateVector::basis_state(ket(G, G, 0));
  CHECK_THROWS_AS(expectation(sigma_z(1), sigma_x(1), s), std::invalid_argument);
}

TEST_CASE("negative photon kets cannot be constructed") {
  CHECK_THROWS_AS(BasisKet(E, G, -1), ConsistencyError);
}

TEST_CASE("property: norm positivity") {
  Sampler sampler;
  for (int i = 0; i < 200; ++i) {
    const StateVector s = after_second_pass(sampler.scenario());
    const Amplitude ip = inner_product(s, s);
    CHECK(ip.real() >= 0.0);
    CHECK(std::abs(ip.imag()) < 1e-14);
  }
}

TEST_CASE("property: operator linearity") {
  Sampler sampler;
  for (int i = 0; i < 100; ++i) {
    const StateVector a = after_second_pass(sampler.scenario());
    const StateVector b = after_second_pass(sampler.scenario());
    const Amplitude ca{sampler.uniform(-1, 1), sampler.uniform(-1, 1)};
    const Amplitude cb{sampler.uniform(-1, 1), sampler.uniform(-1, 1)};
    const AtomOperator op = bloch_operator(sampler.angle(), i % 2 + 1);
    const StateVector lhs = apply_atom_operator(op, combine(ca, a, cb, b));
    const StateVector rhs =
        combine(ca, apply_atom_operator(op, a), cb, apply_atom_operator(op, b));
    CHECK(state_distance(lhs, rhs) < 1e-12);
  }
}

TEST_CASE("property: operators on different atoms commute") {
  Sampler sampler;
  for (int i = 0; i < 100; ++i) {
    const StateVector s = after_second_pass(sampler.scenario());
    const AtomOperator op1 = phase_operator(sampler.angle(), 1);
    const AtomOperator op2 = bloch_operator(sampler.angle(), 2);
    const StateVector ab = apply_atom_operator(op1, apply_atom_operator(op2, s));
    const StateVector ba = apply_atom_operator(op2, apply_atom_operator(op1, s));
    CHECK(state_distance(ab, ba) < 1e-12);
  }
}

TEST_CASE("property: measurement observables are involutions") {
  Sampler sampler;
  for (int i = 0; i < 50; ++i) {
    for (const AtomOperator& op :
         {phase_operator(sampler.angle(), 1), bloch_operator(sampler.angle(), 2)}) {
      CHECK(op.is_hermitian());
      const AtomOperator sq = op * op;
      CHECK(std::abs(sq.at(0, 0) - Amplitude{1, 0}) < 1e-12);
      CHECK(std::abs(sq.at(1, 1) - Amplitude{1, 0}) < 1e-12);
      CHECK(std::abs(sq.at(0, 1)) < 1e-12);
      CHECK(std::abs(sq.at(1, 0)) < 1e-12);
    }
  }
}

TEST_CASE("property: expectations stay within [-1, 1]") {
  Sampler sampler;
  for (int i = 0; i < 300; ++i) {
    const Scenario sc = sampler.scenario();
    const double e = correlation(sc, BlochSettings{sampler.angle(), sampler.angle()});
    CHECK(std::abs(e) <= 1.0 + 1e-12);
    const double ep = correlation(sc, PhaseSettings{sampler.angle(), sampler.angle()});
    CHECK(std::abs(ep) <= 1.0 + 1e-12);
  }
}

TEST_CASE("pruning drops negligible amplitudes") {
  StateVector s;
  s.add(ket(G, G, 0), {1.0, 0.0});
  s.add(ket(E, E, 2), {1e-16, 0.0});
  s.prune();
  CHECK(s.term_count() == 1);
}
