use std::collections::BTreeMap;

use spgraph_core::asymptotics::*;
use spgraph_core::ring::{Analytic, BigFloat};
use spgraph_core::systems::*;

fn radius(spec: &SystemSpec, u: f64) -> f64 {
    char_multi_det(spec, 1.0, u, JetParam::None).unwrap().r.value().value_f64()
}

#[test]
fn pair_and_full_network_give_same_radius_jet() {
    let pair = char_pair(&triangle_reduced_pair(), 1.0, 1.0, JetParam::U).unwrap();
    let full = char_multi_det(&triangle_network_system(), 1.0, 1.0, JetParam::U).unwrap();
    for k in 0..=2 {
        let (a, b) = (pair.r.derivative(k), full.r.derivative(k));
        assert!((a.clone() - &b).abs().value_f64() < 1e-25, "order {k}: {a:?} vs {b:?}");
    }
}

#[test]
fn single_equation_matches_full_system_without_triangles() {
    let single = char_single(&triangle_free_single(), 1.0, 0.0, JetParam::None).unwrap();
    let r = single.r.value().value_f64();
    assert!((r - radius(&triangle_network_system(), 0.0)).abs() < 1e-13);
    assert!((1.0 / r - 5.09289).abs() < 1e-4);
}

#[test]
fn marked_systems_collapse_at_u_one() {
    let tri = radius(&triangle_network_system(), 1.0);
    let c4 = radius(&c4_network_system(), 1.0);
    assert!((tri - c4).abs() < 1e-13, "{tri} vs {c4}");
    assert!((tri - 0.128003817736).abs() < 1e-11);
}

#[test]
fn girth_four_radius_is_triangle_free_radius() {
    let g = radius(&girth_network_system(4).unwrap(), 1.0);
    let t = radius(&triangle_network_system(), 0.0);
    assert!((g - t).abs() < 1e-13, "{g} vs {t}");
}

#[test]
fn pointwise_solution_exists_below_radius_only() {
    let spec = triangle_network_system();
    let r = radius(&spec, 1.0);
    let opts = NewtonOptions::for_ring::<f64>();
    let inside = pointwise_solve(&spec, &(0.9 * r), &1.0, &1.0, None, &opts).unwrap();
    assert!(inside.residual < 1e-12);
    assert!(inside.det > 0.0);
    assert!(pointwise_solve(&spec, &(1.05 * r), &1.0, &1.0, None, &opts).is_err());
}

#[test]
fn network_values_increase_towards_singularity() {
    let spec = triangle_network_system();
    let r = radius(&spec, 1.0);
    let opts = NewtonOptions::for_ring::<f64>();
    let mut prev: Option<Vec<f64>> = None;
    for t in [0.2, 0.5, 0.8, 0.95] {
        let sol = pointwise_solve(&spec, &(t * r), &1.0, &1.0, prev.as_deref(), &opts).unwrap();
        if let Some(p) = &prev {
            assert!(sol.values.iter().zip(p).all(|(a, b)| a >= b));
        }
        prev = Some(sol.values);
    }
}

#[test]
fn moment_routes_agree_for_connected_graphs() {
    let spec = triangle_network_system();
    let r = radius(&spec, 1.0);
    let a = connected_moments_radius(&spec, 1.0, r).unwrap();
    let b = connected_moments_quasi_powers(&spec, 1.0, r).unwrap();
    assert!((a.mu.clone() - &b.mu).abs().value_f64() < 1e-20);
    assert!((a.sigma2.clone() - &b.sigma2).abs().value_f64() < 1e-20);
    assert!(a.sigma2.value_f64() > 0.0);
}

#[test]
fn expansion_starts_at_characteristic_point() {
    let cp = char_single(&triangle_free_single(), 1.0, 0.0, JetParam::None).unwrap();
    let exp = singular_expansion(&triangle_free_single(), 1.0, 0.0, 3, &["B"]).unwrap();
    assert!((exp.radius.clone() - cp.r.value()).abs().value_f64() < 1e-25);
    // Square-root singularity: the X^1 term of B vanishes, the X^3 term does not.
    let b = exp.get("B").unwrap();
    assert!(b[1].abs().value_f64() < 1e-30);
    assert!(b[3].abs().value_f64() > 1e-3);
}

#[test]
fn expansion_agrees_between_single_and_full_system() {
    let a = singular_expansion(&triangle_free_single(), 1.0, 0.0, 3, &["B"]).unwrap();
    let b = singular_expansion(&triangle_network_system(), 1.0, 0.0, 3, &["B"]).unwrap();
    for (x, y) in a.get("B").unwrap().iter().zip(b.get("B").unwrap()) {
        assert!((x.clone() - y).abs().value_f64() < 1e-20);
    }
}

#[test]
fn deeper_expansion_keeps_lower_coefficients() {
    let a = singular_expansion(&triangle_free_single(), 1.0, 0.0, 3, &["B"]).unwrap();
    let b = singular_expansion(&triangle_free_single(), 1.0, 0.0, 5, &["B"]).unwrap();
    let (a, b) = (a.get("B").unwrap(), b.get("B").unwrap());
    assert_eq!(b.len(), 6);
    for k in 0..=3 {
        assert!((a[k].clone() - &b[k]).abs().value_f64() < 1e-20, "k = {k}");
    }
}

#[test]
fn expansion_depth_is_bounded() {
    assert!(singular_expansion(&triangle_free_single(), 1.0, 0.0, MAX_DEPTH + 1, &["B"]).is_err());
    assert!(singular_expansion(&triangle_free_single(), 1.0, 0.0, 0, &["B"]).is_err());
}

fn hand_expansion(b: [f64; 4]) -> SingularExpansion {
    let mut coefficients = BTreeMap::new();
    coefficients.insert("B".to_string(), b.iter().map(|&v| BigFloat::from_f64(v)).collect());
    SingularExpansion {
        radius: BigFloat::from_f64(0.25),
        depth: 3,
        coefficients,
        residual: 0.0,
    }
}

#[test]
fn transfer_of_hand_built_expansion() {
    let exp = hand_expansion([1.0, -2.0, 0.5, 4.0]);
    let sqrt_pi = std::f64::consts::PI.sqrt();
    let five = transfer_constant(&exp, "B", PolyExponent::MinusFiveHalves).unwrap();
    assert!((five.c.value_f64() - 3.0 / sqrt_pi).abs() < 1e-14);
    assert!((five.growth_inv.value_f64() - 4.0).abs() < 1e-14);
    let three = transfer_constant(&exp, "B", PolyExponent::MinusThreeHalves).unwrap();
    assert!((three.c.value_f64() - 1.0 / sqrt_pi).abs() < 1e-14);
}

#[test]
fn transfer_rejects_missing_singular_term() {
    let exp = hand_expansion([1.0, 0.0, 0.5, 0.0]);
    assert!(transfer_constant(&exp, "B", PolyExponent::MinusFiveHalves).is_err());
    assert!(transfer_constant(&exp, "B", PolyExponent::MinusThreeHalves).is_err());
    assert!(transfer_constant(&exp, "C", PolyExponent::MinusFiveHalves).is_err());
}

#[test]
fn closed_form_and_quadrature_agree_on_connected_value() {
    let spec = triangle_network_system();
    let r = radius(&spec, 0.0);
    let cc = connected_constants(&spec, 1.0, 0.0, r).unwrap();
    assert!((cc.c_at_rho.value_f64() - cc.c_at_rho_quadrature).abs() < 1e-10);
    assert!((cc.connectivity.value_f64() - 0.83962).abs() < 1e-5);
    let g_over_c = cc.general.c.value_f64() / cc.connected.c.value_f64();
    assert!((g_over_c - cc.c_at_rho.value_f64().exp()).abs() < 1e-12);
}

#[test]
fn connected_constant_matches_coefficient_extrapolation() {
    // n^(5/2) rho^n [x^n] C approaches c with a 1/n correction; two orders
    // are enough to extrapolate.
    let spec = triangle_network_system();
    let r = radius(&spec, 0.0);
    let cc = connected_constants(&spec, 1.0, 0.0, r).unwrap();
    let rho = cc.rho.value_f64();
    let zero = num_rational::BigRational::from_integer(0.into());
    let tri = spec.substitute(spgraph_core::series::Var::U, &zero);
    let dom = SeriesDomain::<f64>::new(0).with_y(1.0);
    let (_, s) = solve_class(&tri, &dom, 120).unwrap();
    let scaled = |n: usize| s.c.coeff(n, 0, 0) * (n as f64).powf(2.5) * rho.powi(n as i32);
    let extrapolated = 2.0 * scaled(120) - scaled(60);
    let c = cc.connected.c.value_f64();
    assert!((extrapolated - c).abs() / c < 0.01, "{extrapolated} vs {c}");
}
