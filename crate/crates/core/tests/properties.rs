use num_rational::BigRational as Q;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

use spgraph_core::oracle::{count_copies, LabeledGraph};
use spgraph_core::ring::{Jet, UJet2};
use spgraph_core::series::TruncatedSeries;
use spgraph_core::systems::{cyc_numeric, solve_fixed_point, triangle_network_system, SeriesDomain};
use spgraph_core::verify::properties::*;

fn q(n: i64, d: i64) -> Q {
    Q::new(n.into(), d.into())
}

fn graph(n: usize, mask: u64) -> LabeledGraph {
    LabeledGraph::from_mask(n, mask & ((1u64 << (n * (n - 1) / 2)) - 1))
}

fn triangles_by_hand(g: &LabeledGraph) -> u64 {
    let n = g.n();
    let mut t = 0;
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                if g.has_edge(a, b) && g.has_edge(b, c) && g.has_edge(a, c) {
                    t += 1;
                }
            }
        }
    }
    t
}

fn four_cycles_by_hand(g: &LabeledGraph) -> u64 {
    let n = g.n();
    let cyc = |p: [usize; 4]| (0..4).all(|i| g.has_edge(p[i], p[(i + 1) % 4]));
    let mut t = 0;
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    // The three distinct 4-cycles on {a, b, c, d}.
                    t += [[a, b, c, d], [a, b, d, c], [a, c, b, d]]
                        .into_iter()
                        .filter(|&p| cyc(p))
                        .count() as u64;
                }
            }
        }
    }
    t
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn series_ring_laws_hold(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let (a, b, c) = (random_series(&mut rng, 4, 0), random_series(&mut rng, 4, 0), random_series(&mut rng, 4, 0));
        prop_assert!(series_ring_laws(&a, &b, &c).unwrap());
    }

    #[test]
    fn jet_ring_laws_hold(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let (a, b, c) = (random_jet::<4>(&mut rng), random_jet::<4>(&mut rng), random_jet::<4>(&mut rng));
        prop_assert!(jet_ring_laws(&a, &b, &c));
    }

    #[test]
    fn exp_and_log_are_inverse(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        prop_assert!(exp_log_inverse(&random_series(&mut rng, 5, 1)).unwrap());
    }

    #[test]
    fn pointing_and_unpointing_are_inverse(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        prop_assert!(pointing_inverse(&random_series(&mut rng, 5, 1)).unwrap());
    }

    #[test]
    fn copy_counts_are_integral_and_match_hand_counts(n in 3usize..=7, mask in any::<u64>()) {
        let g = graph(n, mask);
        prop_assert_eq!(count_copies(&g, &LabeledGraph::complete(3).unwrap()).unwrap(), triangles_by_hand(&g));
        prop_assert_eq!(count_copies(&g, &LabeledGraph::cycle(4).unwrap()).unwrap(), four_cycles_by_hand(&g));
    }

    #[test]
    fn cyc_series_has_expected_coefficients(num in -5i64..=5, den in 1i64..=5) {
        let a = q(num, den);
        let s = TruncatedSeries::from_terms(7, [(1, 0, 0, a.clone())]);
        let c = s.cyc().unwrap();
        for k in 0..=7usize {
            let want = if k < 3 {
                q(0, 1)
            } else {
                num_traits::pow(a.clone(), k) / Q::from_integer((2 * k as i64).into())
            };
            prop_assert_eq!(c.coeff(k, 0, 0), want);
        }
    }

    #[test]
    fn cyc_numeric_matches_partial_sum(a in -0.6f64..0.6) {
        let sum: f64 = (3..400).map(|k| a.powi(k) / (2.0 * k as f64)).sum();
        prop_assert!((cyc_numeric(&a).unwrap() - sum).abs() < 1e-14);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    /// Solving with `u` as a second-order jet projects onto the value and
    /// the first two u-derivatives of the symbolic solution.
    #[test]
    fn u_jet_solution_projects_symbolic_solution(num in -4i64..=4, den in 1i64..=3) {
        let order = 5;
        let u0 = q(num, den);
        let spec = triangle_network_system();
        let sym = solve_fixed_point(&spec, &SeriesDomain::<Q>::new(order).with_y(q(1, 1))).unwrap();
        let dom = SeriesDomain::<UJet2<Q>>::new(order)
            .with_y(Jet::constant(q(1, 1)))
            .with_u(Jet::variable(u0.clone()));
        let jet = solve_fixed_point(&spec, &dom).unwrap();
        let (s, j) = (sym.get("D").unwrap(), jet.get("D").unwrap());
        for i in 0..=order {
            let mut d = [q(0, 1), q(0, 1), q(0, 1)];
            for k in 0..=12u32 {
                let c = s.coeff(i, 0, k);
                let kk = Q::from_integer(k.into());
                d[0] += c.clone() * num_traits::pow(u0.clone(), k as usize);
                if k >= 1 {
                    d[1] += c.clone() * kk.clone() * num_traits::pow(u0.clone(), k as usize - 1);
                }
                if k >= 2 {
                    d[2] += c * kk.clone() * (kk - q(1, 1)) * num_traits::pow(u0.clone(), k as usize - 2);
                }
            }
            let got = j.coeff(i, 0, 0);
            for (m, want) in d.iter().enumerate() {
                prop_assert_eq!(&got.derivative(m), want, "x^{} derivative {}", i, m);
            }
        }
    }
}
