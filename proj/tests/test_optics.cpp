#include "doctest.h"
#include "so3mes/error.hpp"
#include "so3mes/optics.hpp"
#include "test_support.hpp"

using namespace so3mes;
using namespace so3mes::testing;

namespace {
constexpr cplx kI{0.0, 1.0};
}

TEST_SUITE("optics") {

TEST_CASE("u1 reference values") {
    CHECK(max_entry_diff(u1_matrix(0.0), C2Matrix::identity()) < 1e-15);
    CHECK(max_entry_diff(u1_matrix(kPi), C2Matrix::diag(-kI, kI)) < 1e-15);
    CHECK(max_entry_diff(u1_matrix(2.0 * kPi), cplx(-1.0) * C2Matrix::identity()) < 1e-15);
}

TEST_CASE("u2 reference values") {
    const double phi = 1.234;
    CHECK(max_entry_diff(u2_matrix(phi, 0.0),
                         C2Matrix::diag(std::exp(kI * (phi / 2)), std::exp(-kI * (phi / 2)))) < 1e-15);
    const C2Matrix q = u2_matrix(phi, kPi / 4);
    CHECK(std::abs(q.m00 - std::cos(phi / 2)) < 1e-15);
    CHECK(std::abs(q.m01 - kI * std::sin(phi / 2)) < 1e-15);
    CHECK(max_entry_diff(u2_matrix(0.0, 0.77), C2Matrix::identity()) < 1e-15);
}

TEST_CASE("Jones matrices are special-unitary and U2 is symmetric") {
    for (int n = 0; n < 200; ++n) {
        const double phi = uniform(-10.0, 10.0);
        const double delta = uniform(-kPi, kPi);
        CHECK(is_special_unitary(u1_matrix(phi)));
        CHECK(is_special_unitary(u2_matrix(phi, delta)));
        CHECK(max_entry_diff(u2_matrix(phi, delta), u2_matrix(phi, delta).transpose()) < 1e-15);
    }
}

TEST_CASE("Kerr retardance") {
    CHECK(phase_from_field(0.6, 2.0, 1.5, 0.0) == 0.0);
    CHECK(phase_from_field(1.0, 1.0, 1.0, 1.0) == doctest::Approx(2.0 * kPi));
    const double p1 = phase_from_field(0.6, 2.0, 1.5, 0.3);
    CHECK(phase_from_field(0.6, 2.0, 1.5, 0.6) == doctest::Approx(4.0 * p1));
    CHECK(phase_from_field(0.6, 2.0, 3.0, 0.3) == doctest::Approx(2.0 * p1));
    CHECK(phase_from_field(0.6, 4.0, 1.5, 0.3) == doctest::Approx(2.0 * p1));
    double prev = -1.0;
    for (int i = 0; i <= 20; ++i) {
        const double p = phase_from_field(0.6, 2.0, 1.5, 0.1 * i);
        CHECK(p > prev);
        prev = p;
    }
    try {
        (void)phase_from_field(0.0, 1.0, 1.0, 1.0);
        FAIL("expected throw");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::InvalidGeometry);
    }
    CHECK_THROWS_AS((void)phase_from_field(1.0, 1.0, -1.0, 1.0), Error);
}

TEST_CASE("field_for_phase inverts phase_from_field") {
    CHECK(field_for_phase(0.0, 1.0, 1.0, 1.0) == 0.0);
    for (int n = 0; n < 50; ++n) {
        const double lambda = uniform(0.1, 2.0), k = uniform(0.1, 3.0), d = uniform(0.1, 5.0);
        const double e = uniform(0.0, 4.0);
        CHECK(field_for_phase(phase_from_field(lambda, k, d, e), lambda, k, d) ==
              doctest::Approx(e).epsilon(1e-12));
    }
    CHECK_THROWS_AS((void)field_for_phase(-1.0, 1.0, 1.0, 1.0), Error);
}

TEST_CASE("Kerr stages") {
    const KerrPhysical bench{0.8, 1.5, 2.0, 0.7};
    const KerrStage s = KerrStage::from_physical(KerrKind::Rotated, bench, 0.3);
    CHECK(s.phi == doctest::Approx(2.0 * kPi * 1.5 * 2.0 * 0.49 / 0.8).epsilon(1e-12));
    CHECK(max_entry_diff(s.jones(), u2_matrix(s.phi, 0.3)) < 1e-15);
    const KerrStage a = KerrStage::from_physical(KerrKind::AxisAligned, bench, 0.3);
    CHECK(a.delta == 0.0);
    CHECK(max_entry_diff(a.jones(), u1_matrix(a.phi)) < 1e-15);
    CHECK(max_entry_diff(KerrStage::axis_aligned(0.4).jones(), u1_matrix(0.4)) < 1e-15);
}

TEST_CASE("optics replays the rotating-field propagator") {
    double worst = 0.0;
    double worst_raw_beta = 0.0;
    for (int n = 0; n < 50; ++n) {
        FieldConfig cfg = random_config();
        cfg.hbar = uniform(0.5, 2.0);
        const double t = uniform(0.0, 10.0);
        const OpticsSettings s = map_dynamics_to_optics(cfg, t);
        CHECK(s.delta >= 0.0);
        CHECK(s.delta <= kPi / 2);
        const MesState optical = mes_from_matrix(arm_transform(s));
        const MesState expected = to_optical_basis(propagator(cfg, t));
        worst = std::max(worst, max_entry_diff(optical, expected));
        worst_raw_beta = std::max(worst_raw_beta, std::abs(optical.beta + propagator(cfg, t).beta));
    }
    CHECK(worst < 1e-10);
    // Without the basis identification beta comes out with the opposite sign.
    CHECK(worst_raw_beta < 1e-10);
}

TEST_CASE("parameter map at t = 0") {
    const FieldConfig cfg = random_config();
    const OpticsSettings s = map_dynamics_to_optics(cfg, 0.0);
    CHECK(s.phi1 == 0.0);
    CHECK(s.phi2 == 0.0);
    CHECK(max_entry_diff(arm_transform(s), C2Matrix::identity()) < 1e-15);
}

TEST_CASE("parameter map for the three-break configuration") {
    const FieldConfig cfg{solve_field_for_ratio(kPi / 5, 1.0, 1.0, 1.0), kPi / 5, 1.0, 1.0};
    const OpticsSettings s = map_dynamics_to_optics(cfg, kPi);
    CHECK(s.phi1 == doctest::Approx(2.0 * kPi).epsilon(1e-12));
    CHECK(s.phi2 == doctest::Approx(kPi).epsilon(1e-12));
    const double cos2d = (1.0 - 2.0 * cfg.b * std::cos(cfg.theta)) / 2.0;
    CHECK(std::cos(2.0 * s.delta) == doctest::Approx(cos2d).epsilon(1e-12));
    const auto stages = two_photon_stages(s);
    CHECK(mach_zehnder_intensity(stages, 0.0) < 1e-12);
}

TEST_CASE("static field has no optical counterpart") {
    try {
        (void)map_dynamics_to_optics({0.5, 0.0, 1.0, 1.0}, 1.0);  // omega0 = 0
        FAIL("expected throw");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::InconsistentParameters);
    }
}

TEST_CASE("two-photon stages reproduce the dual evolution") {
    for (int n = 0; n < 20; ++n) {
        const FieldConfig cfg = random_config();
        const double t = uniform(0.0, 10.0);
        const auto stages = two_photon_stages(map_dynamics_to_optics(cfg, t));
        C2Matrix product = C2Matrix::identity();
        for (const auto& st : stages) product = st * product;
        const MesState optical = mes_from_matrix(product);
        const MesState dual = from_two_qubit(dual_evolution(cfg, t));
        CHECK(max_entry_diff(optical, to_optical_basis(dual)) < 1e-10);
    }
}

TEST_CASE("Mach-Zehnder readout") {
    const C2Matrix id = C2Matrix::identity();
    const C2Matrix minus = cplx(-1.0) * id;
    CHECK(mach_zehnder_intensity(std::span(&id, 1), 0.0) == doctest::Approx(1.0));
    CHECK(mach_zehnder_intensity(std::span(&minus, 1), 0.0) == doctest::Approx(0.0));
    CHECK(mach_zehnder_intensity({}, 0.0) == doctest::Approx(1.0));
    const C2Matrix bad = sigma_x();
    CHECK_THROWS_AS((void)mach_zehnder_intensity(std::span(&bad, 1), 0.0), Error);
}

TEST_CASE("complementary ports conserve intensity") {
    for (int n = 0; n < 100; ++n) {
        const double chi = uniform(0.0, 2.0 * kPi);
        for (const C2Matrix& m : {C2Matrix::identity(), cplx(-1.0) * C2Matrix::identity(), random_su2()}) {
            const double sum = mach_zehnder_intensity(std::span(&m, 1), chi) +
                               mach_zehnder_intensity(std::span(&m, 1), chi + kPi);
            // |v| = 1 only for +-I; otherwise the missing weight went to other modes.
            if (max_entry_diff(m, C2Matrix::identity()) < 1e-15 ||
                max_entry_diff(m, cplx(-1.0) * C2Matrix::identity()) < 1e-15) {
                CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
            } else {
                CHECK(sum <= 1.0 + 1e-12);
            }
        }
    }
}

TEST_CASE("bright port swaps between integer and half-integer resonances") {
    for (int n = 1; n <= 3; ++n) {
        for (double theta : {kPi / 8, kPi / 5, kPi / 3}) {
            const FieldConfig dark{solve_field_for_ratio(theta, 1.0, 1.0, n), theta, 1.0, 1.0};
            const FieldConfig bright{solve_field_for_ratio(theta, 1.0, 1.0, n + 0.5), theta, 1.0, 1.0};
            CHECK(mach_zehnder_intensity(two_photon_stages(map_dynamics_to_optics(dark, kPi)), 0.0) < 1e-6);
            CHECK(mach_zehnder_intensity(two_photon_stages(map_dynamics_to_optics(bright, kPi)), 0.0) >
                  1.0 - 1e-6);
        }
    }
}

TEST_CASE("interference scan") {
    const auto scan = bright_port_scan(kPi, 0.4, 0.0, 4.0, 9);
    REQUIRE(scan.size() == 9);
    // phi1 = 2n phi2 -> pi phase, phi1 = (2n+1) phi2 -> none, whatever delta is.
    CHECK(scan[0].intensity < 1e-12);
    CHECK(scan[2].intensity == doctest::Approx(1.0));
    CHECK(scan[4].intensity < 1e-12);
    CHECK(scan[6].intensity == doctest::Approx(1.0));
    CHECK(scan[8].intensity < 1e-12);
}

}
