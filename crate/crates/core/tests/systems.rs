use num_rational::BigRational;
use spgraph_core::series::TruncatedSeries;
use spgraph_core::systems::*;

type Q = BigRational;

fn q(n: i64, d: i64) -> Q {
    Q::new(n.into(), d.into())
}

fn solve_triangle(order: usize) -> SolvedNetworks<Q> {
    solve_fixed_point(&triangle_network_system(), &SeriesDomain::new(order)).unwrap()
}

/// `(x-power, y-power, u-power, count)` with count = n! times the coefficient.
fn from_counts(order: usize, terms: &[(usize, u32, u32, i64)]) -> TruncatedSeries<Q> {
    TruncatedSeries::from_terms(
        order,
        terms.iter().map(|&(i, j, k, c)| {
            let fact: i64 = (1..=i as i64).product();
            (i, j, k, q(c, fact))
        }),
    )
}

#[test]
fn triangle_d_through_x3() {
    let nets = solve_triangle(3);
    let want = from_counts(
        3,
        &[
            (0, 1, 0, 1),
            (1, 2, 0, 1),
            (1, 3, 1, 1),
            (2, 3, 0, 2),
            (2, 4, 0, 3),
            (2, 4, 1, 4),
            (2, 5, 2, 5),
            (3, 4, 0, 6),
            (3, 5, 0, 30),
            (3, 6, 0, 7),
            (3, 5, 1, 18),
            (3, 6, 1, 48),
            (3, 6, 2, 36),
            (3, 7, 3, 49),
        ],
    );
    assert_eq!(nets.get("D").unwrap(), &want);
}

fn one() -> Q {
    q(1, 1)
}

fn zero() -> Q {
    q(0, 1)
}

#[test]
fn triangle_residuals_vanish() {
    let spec = triangle_network_system();
    let dom = SeriesDomain::<Q>::new(5);
    let nets = solve_fixed_point(&spec, &dom).unwrap();
    for r in residuals(&spec, &dom, &nets).unwrap() {
        assert!(r.is_zero());
    }
}

#[test]
fn c4_residuals_vanish() {
    let spec = c4_network_system();
    let dom = SeriesDomain::<Q>::new(4);
    let nets = solve_fixed_point(&spec, &dom).unwrap();
    for r in residuals(&spec, &dom, &nets).unwrap() {
        assert!(r.is_zero());
    }
}

#[test]
fn triangle_small_block_and_connected_counts() {
    let dom = SeriesDomain::<Q>::new(0).with_y(one());
    let (_, class) = solve_class(&triangle_network_system(), &dom, 4).unwrap();
    let b3 = class.blocks.b.egf_count(3);
    assert_eq!(b3, spgraph_core::series::Poly::monomial(one(), 0, 1));
    // Connected graphs on three labelled vertices: three paths and one triangle.
    let c3 = class.c.egf_count(3);
    assert_eq!(c3.get(0, 0), Some(&q(3, 1)));
    assert_eq!(c3.get(0, 1), Some(&one()));
}

#[test]
fn u_one_collapses_markings() {
    let order = 6;
    let dom = SeriesDomain::<Q>::new(0).with_u(one());
    let (tn, tri) = solve_class(&triangle_network_system(), &dom, order).unwrap();
    let (cn, c4) = solve_class(&c4_network_system(), &dom, order).unwrap();
    assert_eq!(tn.get("D").unwrap(), cn.get("D").unwrap());
    assert_eq!(tri.blocks.b, c4.blocks.b);
    assert_eq!(tri.c, c4.c);
    assert_eq!(tri.g, c4.g);
    for (plain, barred) in [("S2", "S2bar"), ("S3", "S3bar"), ("P1", "P1bar"), ("P2", "P2bar")] {
        assert_eq!(cn.get(plain).unwrap(), cn.get(barred).unwrap());
    }
}

#[test]
fn c4_pole_network_starts_with_single_edge() {
    let nets = solve_fixed_point(&c4_network_system(), &SeriesDomain::new(3)).unwrap();
    let p1 = nets.get("P1").unwrap();
    assert_eq!(p1.x_coeff(0), &spgraph_core::series::Poly::monomial(one(), 1, 0));
}

#[test]
fn girth_four_is_triangle_free() {
    let order = 12;
    let tri = SeriesDomain::<Q>::new(order).with_u(zero());
    let tn = solve_fixed_point(&triangle_network_system(), &tri).unwrap();
    let gn = solve_fixed_point(&girth_network_system(4).unwrap(), &SeriesDomain::new(order)).unwrap();
    assert_eq!(tn.get("D").unwrap(), &evaluate_output(
        &girth_network_system(4).unwrap(),
        &SeriesDomain::new(order),
        &gn,
        "D",
    )
    .unwrap());
}

#[test]
fn girth_four_blocks_match_triangle_free_blocks() {
    let order = 8;
    let (_, tri) = solve_class(
        &triangle_network_system(),
        &SeriesDomain::<Q>::new(0).with_u(zero()),
        order,
    )
    .unwrap();
    let (_, gir) = solve_class(&girth_network_system(4).unwrap(), &SeriesDomain::new(0), order).unwrap();
    assert_eq!(tri.blocks.b.truncate(order), gir.blocks.b.truncate(order));
    assert_eq!(tri.c, gir.c);
}

#[test]
fn edge_rooting_identity_at_u_one() {
    // 2y dB/dy = x^2 P1 holds for the unmarked series.
    let order = 7;
    let dom = SeriesDomain::<Q>::new(order).with_u(one());
    let spec = triangle_network_system();
    let nets = solve_fixed_point(&spec, &dom).unwrap();
    let b = assemble_b_triangle(&spec, &dom, &nets).unwrap().b;
    let p1 = nets.get("P1").unwrap();
    let lhs = b.diff(spgraph_core::series::Var::Y).unwrap().truncate(order);
    let lhs = lhs_times_2y(&lhs);
    let rhs = p1.mul_x().mul_x().truncate(order);
    assert_eq!(lhs, rhs);
}

fn lhs_times_2y(s: &TruncatedSeries<Q>) -> TruncatedSeries<Q> {
    TruncatedSeries::from_terms(
        s.order_x(),
        s.terms().map(|((i, j, k), c)| (i, j + 1, k, c * q(2, 1))),
    )
}

#[test]
fn system_json_round_trip_solves_identically() {
    let spec = c4_network_system();
    let back = SystemSpec::from_json(&spec.to_json()).unwrap();
    let dom = SeriesDomain::<Q>::new(3);
    assert_eq!(
        solve_fixed_point(&spec, &dom).unwrap().series,
        solve_fixed_point(&back, &dom).unwrap().series
    );
}

#[test]
fn edge_rooting_identity_with_marks() {
    // Triangles through the root edge come from S2 parts in parallel with it,
    // and those already carry their mark inside P1.
    let order = 8;
    let dom = SeriesDomain::<Q>::new(order);
    let spec = triangle_network_system();
    let nets = solve_fixed_point(&spec, &dom).unwrap();
    let b = assemble_b_triangle(&spec, &dom, &nets).unwrap().b;
    let lhs = lhs_times_2y(&b.diff(spgraph_core::series::Var::Y).unwrap());
    let rhs = nets.get("P1").unwrap().mul_x().mul_x().truncate(order);
    assert_eq!(lhs, rhs);
}
