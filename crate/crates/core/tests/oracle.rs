use num_rational::BigRational;
use spgraph_core::oracle::*;
use spgraph_core::series::{Poly, TruncatedSeries};
use spgraph_core::systems::*;

type Q = BigRational;

fn int(v: i64) -> Q {
    Q::from_integer(v.into())
}

/// `sum_k count_k u^k` as a polynomial in u (y already set to 1).
fn census_poly(c: &Census) -> Poly<Q> {
    c.u_polynomial()
        .iter()
        .enumerate()
        .fold(Poly::default(), |p, (k, &count)| {
            p.add(&Poly::monomial(int(count as i64), 0, k as u32))
        })
}

fn check_class(spec: &SystemSpec, u: Option<i64>, family: Family, pattern: &LabeledGraph) {
    let mut dom = SeriesDomain::<Q>::new(0).with_y(int(1));
    if let Some(u) = u {
        dom = dom.with_u(int(u));
    }
    let (_, series) = solve_class(spec, &dom, 6).unwrap();
    let pick: [(&TruncatedSeries<Q>, Connectivity); 3] = [
        (&series.blocks.b, Connectivity::TwoConnected),
        (&series.c, Connectivity::Connected),
        (&series.g, Connectivity::Any),
    ];
    for n in 1..=6 {
        for (s, conn) in pick {
            let c = census(n, GraphClass::new(conn, family), pattern, 6).unwrap();
            let want = census_poly(&c);
            let got = s.egf_count(n);
            assert_eq!(got, want, "n = {n}, class {}", c.class);
        }
    }
}

#[test]
fn triangle_marks_match_census() {
    check_class(&triangle_network_system(), None, Family::Sp, &LabeledGraph::complete(3).unwrap());
}

#[test]
fn four_cycle_marks_match_census() {
    check_class(&c4_network_system(), None, Family::Sp, &LabeledGraph::cycle(4).unwrap());
}

#[test]
fn triangle_free_matches_census() {
    check_class(
        &triangle_network_system(),
        Some(0),
        Family::SpTriangleFree,
        &LabeledGraph::complete(3).unwrap(),
    );
}

#[test]
fn quadrangle_free_matches_census() {
    check_class(
        &c4_network_system(),
        Some(0),
        Family::SpQuadrangleFree,
        &LabeledGraph::cycle(4).unwrap(),
    );
}

#[test]
fn girth_five_matches_census() {
    let spec = girth_network_system(5).unwrap();
    let (_, series) = solve_class(&spec, &SeriesDomain::<Q>::new(0), 6).unwrap();
    let edge = LabeledGraph::path(2).unwrap();
    for n in 1..=6 {
        for (s, conn) in [
            (&series.blocks.b, Connectivity::TwoConnected),
            (&series.c, Connectivity::Connected),
            (&series.g, Connectivity::Any),
        ] {
            let total = census(n, GraphClass::new(conn, Family::SpGirth(5)), &edge, 6)
                .unwrap()
                .total;
            let got = s.specialize(spgraph_core::series::Var::Y, &int(1)).unwrap().egf_count(n);
            assert_eq!(got, census_poly_total(total), "n = {n}, {conn}");
        }
    }
}

fn census_poly_total(total: u64) -> Poly<Q> {
    Poly::default().add(&Poly::monomial(int(total as i64), 0, 0))
}

#[test]
fn recognizers_agree() {
    for n in 1..=6 {
        for g in enumerate(n, Connectivity::Any, 6).unwrap() {
            assert_eq!(is_series_parallel(&g), !has_k4_minor(&g), "{g}");
        }
    }
}

#[test]
fn girth_four_filter_is_triangle_free() {
    let edge = LabeledGraph::path(2).unwrap();
    for n in 1..=6 {
        for conn in [Connectivity::Any, Connectivity::Connected, Connectivity::TwoConnected] {
            let a = census(n, GraphClass::new(conn, Family::SpGirth(4)), &edge, 6).unwrap();
            let b = census(n, GraphClass::new(conn, Family::SpTriangleFree), &edge, 6).unwrap();
            assert_eq!(a.total, b.total);
        }
    }
}
