//! Cross-checks of every production formula against an independent route:
//! series exponential vs closed-form rotation, eigenvalue vs invariant
//! route to ν̃, cofactor vs LU determinants, closed-form vs block
//! determinant fidelities.

use nalgebra::Matrix4;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use cvmem::verify::{
    det4_cofactor, expm_series, fidelity_a_closed_form, fidelity_b_closed_form, nu_tilde_eigen,
    nu_tilde_quadratic, random_physical_cm, symplectic_form,
};
use cvmem::{
    beam_splitter, input_cm, nu_tilde, sigma_a, sigma_b, teleportation_fidelity, CovMat4,
    InputStateParams, MemoryChannel,
};

#[test]
fn beam_splitter_matches_series_exponential() {
    // generator of e^{θJ}
    let j = Matrix4::new(
        0.0, 0.0, 1.0, 0.0, //
        0.0, 0.0, 0.0, 1.0, //
        -1.0, 0.0, 0.0, 0.0, //
        0.0, -1.0, 0.0, 0.0,
    );
    // the half-rotation singled out as a worked value
    let direct = beam_splitter(std::f64::consts::FRAC_PI_2);
    let series = expm_series(&(j * std::f64::consts::FRAC_PI_2), 40);
    assert!((direct - series).abs().max() < 1e-13);

    let mut rng = ChaCha8Rng::seed_from_u64(101);
    for _ in 0..100 {
        let theta = rng.gen_range(-std::f64::consts::TAU..=std::f64::consts::TAU);
        let direct = beam_splitter(theta);
        let series = expm_series(&(j * theta), 60);
        assert!(
            (direct - series).abs().max() < 1e-12,
            "series mismatch at theta = {theta}"
        );
    }
}

#[test]
fn beam_splitter_is_symplectic_and_orthogonal() {
    let omega = symplectic_form();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..100 {
        let theta = rng.gen_range(-10.0..=10.0);
        let r = beam_splitter(theta);
        assert!(
            (r * omega * r.transpose() - omega).abs().max() < 1e-10,
            "symplectic condition failed at theta = {theta}"
        );
        assert!(
            (r * r.transpose() - Matrix4::identity()).abs().max() < 1e-10,
            "orthogonality failed at theta = {theta}"
        );
    }
}

#[test]
fn beam_splitter_composition() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..100 {
        let t1 = rng.gen_range(-5.0..=5.0);
        let t2 = rng.gen_range(-5.0..=5.0);
        let lhs = beam_splitter(t1) * beam_splitter(t2);
        let rhs = beam_splitter(t1 + t2);
        assert!((lhs - rhs).abs().max() < 1e-10);
    }
}

#[test]
fn nu_tilde_agrees_with_eigenvalue_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for i in 0..1000 {
        let cm = random_physical_cm(&mut rng);
        let inv = cm.pt_invariants();
        let nu = nu_tilde(&inv).unwrap();
        let oracle = nu_tilde_eigen(&cm);
        assert!(
            (nu - oracle).abs() < 1e-8,
            "sample {i}: invariant route {nu} vs eigenvalue route {oracle}"
        );
        let quad = nu_tilde_quadratic(&inv);
        assert!((nu - quad).abs() < 1e-10, "quadratic route disagrees");
    }
}

#[test]
fn determinant_matches_cofactor_expansion() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for _ in 0..300 {
        let cm = random_physical_cm(&mut rng);
        let lu = cm.pt_invariants().det_sigma;
        let cof = det4_cofactor(cm.matrix());
        assert!((lu - cof).abs() / cof.abs().max(1.0) < 1e-11);
    }
}

#[test]
fn mixed_squeezed_states_have_known_invariants() {
    // two pure s-squeezed modes through a 50:50 splitter: det = 1,
    // Δ̃ = s² + 1/s², built here by explicit matrix products
    let s: f64 = 4.0;
    let s0 = Matrix4::from_diagonal(&[s, 1.0 / s, 1.0 / s, s].into());
    let r = beam_splitter(-std::f64::consts::FRAC_PI_4);
    let mixed = CovMat4::new(r * s0 * r.transpose()).unwrap();
    let inv = mixed.pt_invariants();
    assert!((inv.det_sigma - 1.0).abs() < 1e-12);
    assert!((inv.delta_tilde - (s * s + 1.0 / (s * s))).abs() < 1e-12);
    assert!((inv.delta_tilde - 16.0625).abs() < 1e-12);
    assert!((nu_tilde(&inv).unwrap() - 0.25).abs() < 1e-12);
}

#[test]
fn fidelity_matches_closed_forms_on_both_scenarios() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for i in 0..500 {
        let params = InputStateParams::new(
            rng.gen_range(1.0..=8.0),
            rng.gen_range(1.0..=2.0),
            rng.gen_range(1.0..=2.0),
        )
        .unwrap();
        let ch = MemoryChannel::new(
            rng.gen_range(0.5..=1.2),
            rng.gen_range(0.5..=1.2),
            rng.gen_range(0.0..=1.0),
            rng.gen_range(0.0..=1.0),
            rng.gen_range(0.0..=1.0),
            rng.gen_range(0.0..=1.0),
        )
        .unwrap();
        let fa = teleportation_fidelity(&sigma_a(&params, &ch)).unwrap();
        let fb = teleportation_fidelity(&sigma_b(&params, &ch)).unwrap();
        let fa_closed = fidelity_a_closed_form(&params, &ch);
        let fb_closed = fidelity_b_closed_form(&params, &ch);
        assert!(
            (fa - fa_closed).abs() < 1e-10,
            "sample {i}: F_a determinant {fa} vs closed form {fa_closed}"
        );
        assert!(
            (fb - fb_closed).abs() < 1e-10,
            "sample {i}: F_b determinant {fb} vs closed form {fb_closed}"
        );
    }
}

#[test]
fn ideal_lossless_fidelity_closed_value() {
    // ξ = 1, Y = 0, s = 4, N = 1: 1/F² = (1 + 1/s)² so F = 0.8
    let params = InputStateParams::pure(4.0).unwrap();
    let f = teleportation_fidelity(&sigma_a(&params, &MemoryChannel::identity())).unwrap();
    assert!((f - 0.8).abs() < 1e-12);
}

#[test]
fn channel_action_matches_matrix_product_route() {
    // entrywise channel application against the generic X·σ·Xᵀ + Y product
    let mut rng = ChaCha8Rng::seed_from_u64(47);
    for _ in 0..200 {
        let cm = random_physical_cm(&mut rng);
        let ch = MemoryChannel::new(
            rng.gen_range(0.5..=1.2),
            rng.gen_range(0.5..=1.2),
            rng.gen_range(0.0..=1.0),
            rng.gen_range(0.0..=1.0),
            rng.gen_range(0.0..=1.0),
            rng.gen_range(0.0..=1.0),
        )
        .unwrap();
        let x = Matrix4::from_diagonal(&[ch.xi1(), ch.xi1(), ch.xi2(), ch.xi2()].into());
        let y = Matrix4::from_diagonal(&[ch.y_q1(), ch.y_p1(), ch.y_q2(), ch.y_p2()].into());
        let product = x * cm.matrix() * x.transpose() + y;
        let entrywise = cvmem::apply_channel(&cm, &ch);
        assert!((entrywise.matrix() - product).abs().max() < 1e-13);
    }
}

#[test]
fn input_cm_determinant_is_thermal_product() {
    // det σ₀ = (N₁N₂)²
    let params = InputStateParams::new(3.0, 1.5, 1.25).unwrap();
    let det = input_cm(&params).pt_invariants().det_sigma;
    assert!((det - (1.5f64 * 1.25).powi(2)).abs() < 1e-12);
}
