use std::time::{Duration, Instant};

use num_rational::BigRational;
use rand::rngs::StdRng;
use rand::SeedableRng;

use crate::asymptotics::{
    block_jet, branch_point, char_multi_det, char_pair, connected_constants,
    connected_moments_quasi_powers, connected_moments_radius, moments_from_radius,
    singular_expansion, transfer_constant, JetParam, PolyExponent,
};
use crate::error::Result;
use crate::oracle::{census, Census, Connectivity, Family, GraphClass, LabeledGraph};
use crate::ring::{Analytic, BigFloat, Ring};
use crate::series::{Poly, TruncatedSeries, Var};
use crate::systems::{
    c4_network_system, evaluate_output, girth_network_system, solve_class, solve_fixed_point,
    triangle_free_single, triangle_network_system, triangle_reduced_pair, GraphClassSeries,
    SeriesDomain, SystemSpec,
};

use super::properties::{
    exp_log_inverse, jet_ring_laws, pointing_inverse, random_jet, random_series, series_ring_laws,
};
use super::{Check, CriterionOutput, VerifyConfig};

type Q = BigRational;

fn q(v: i64) -> Q {
    Q::from_integer(v.into())
}

/// Printed expansion of the triangle-marked network series `D` through
/// `x^3`, as `(x-power, y-power, u-power, n! * coefficient)`.
pub const TRIANGLE_D_THROUGH_X3: [(usize, u32, u32, i64); 14] = [
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
];

/// Runs `f`, turning an error into a single failed check.
fn guarded(criterion: &str, name: &str, f: impl FnOnce() -> Result<Vec<Check>>) -> Vec<Check> {
    f().unwrap_or_else(|e| vec![Check::error(criterion, name, &e)])
}

fn network_radius(spec: &SystemSpec, y: f64, u: f64) -> Result<f64> {
    Ok(char_multi_det(spec, y, u, JetParam::None)?.r.value().value_f64())
}

fn first_mismatch(a: &TruncatedSeries<Q>, b: &TruncatedSeries<Q>) -> String {
    if a.order_x() != b.order_x() {
        return format!("orders differ: {} vs {}", a.order_x(), b.order_x());
    }
    for i in 0..=a.order_x() {
        if a.x_coeff(i) != b.x_coeff(i) {
            return format!("differs at x^{i}");
        }
    }
    "equal".into()
}

fn series_check(criterion: &str, name: &str, got: &TruncatedSeries<Q>, want: &TruncatedSeries<Q>) -> Check {
    let ok = got == want;
    let detail = if ok {
        format!("equal through x^{}", got.order_x())
    } else {
        first_mismatch(got, want)
    };
    Check::exact(criterion, name, ok, detail)
}

/// Exact `D` of the triangle system through `x^3`.
pub fn criterion_1(cfg: &VerifyConfig) -> CriterionOutput {
    let spec = cfg.triangle_system.clone().unwrap_or_else(triangle_network_system);
    guarded("1", "triangle D through x^3", || {
        let t = Instant::now();
        let nets = solve_fixed_point(&spec, &SeriesDomain::<Q>::new(3))?;
        let elapsed = t.elapsed();
        let want = TruncatedSeries::from_terms(
            3,
            TRIANGLE_D_THROUGH_X3.iter().map(|&(i, j, k, c)| {
                let fact: i64 = (1..=i as i64).product();
                (i, j, k, Q::new(c.into(), fact.into()))
            }),
        );
        let got = nets
            .get("D")
            .ok_or_else(|| crate::Error::System("triangle system has no unknown D".into()))?;
        Ok(vec![
            series_check("1", "triangle D through x^3", got, &want),
            Check::runtime("1", "triangle D runtime", elapsed, Duration::from_secs(1)),
        ])
    })
    .into()
}

fn census_poly(c: &Census) -> Poly<Q> {
    c.u_polynomial()
        .iter()
        .enumerate()
        .fold(Poly::default(), |p, (k, &count)| {
            p.add(&Poly::monomial(q(count as i64), 0, k as u32))
        })
}

fn levels(s: &GraphClassSeries<Q>) -> [(&'static str, &TruncatedSeries<Q>, Connectivity); 3] {
    [
        ("B", &s.blocks.b, Connectivity::TwoConnected),
        ("C", &s.c, Connectivity::Connected),
        ("G", &s.g, Connectivity::Any),
    ]
}

fn census_match(
    name: &str,
    spec: &SystemSpec,
    u: Option<i64>,
    family: Family,
    pattern: &LabeledGraph,
    cap: usize,
) -> Result<Check> {
    let mut dom = SeriesDomain::<Q>::new(0).with_y(q(1));
    if let Some(u) = u {
        dom = dom.with_u(q(u));
    }
    let (_, series) = solve_class(spec, &dom, cap)?;
    let mut compared = 0;
    for n in 1..=cap {
        for (level, s, conn) in levels(&series) {
            let c = census(n, GraphClass::new(conn, family), pattern, cap)?;
            if s.egf_count(n) != census_poly(&c) {
                return Ok(Check::exact("2", name, false, format!("{level} differs at n = {n}")));
            }
            compared += 1;
        }
    }
    Ok(Check::exact(
        "2",
        name,
        true,
        format!("{compared} u-polynomials equal for n <= {cap}"),
    ))
}

/// Series counts against the brute-force census.
pub fn criterion_2(cfg: &VerifyConfig) -> CriterionOutput {
    let t = Instant::now();
    let cap = cfg.oracle_n_cap;
    let k3 = LabeledGraph::complete(3).expect("K3");
    let c4 = LabeledGraph::cycle(4).expect("C4");
    let cases: [(&str, SystemSpec, Option<i64>, Family, &LabeledGraph); 4] = [
        ("triangle copies vs census", triangle_network_system(), None, Family::Sp, &k3),
        ("4-cycle copies vs census", c4_network_system(), None, Family::Sp, &c4),
        ("triangle-free vs census", triangle_network_system(), Some(0), Family::SpTriangleFree, &k3),
        ("quadrangle-free vs census", c4_network_system(), Some(0), Family::SpQuadrangleFree, &c4),
    ];
    let mut checks: Vec<Check> = cases
        .iter()
        .map(|(name, spec, u, family, h)| {
            census_match(name, spec, *u, *family, h, cap).unwrap_or_else(|e| Check::error("2", name, &e))
        })
        .collect();
    checks.push(Check::runtime("2", "census comparison runtime", t.elapsed(), Duration::from_secs(180)));
    checks.into()
}

/// Girth 4 against the triangle system at `u = 0`, and girth-5 totals
/// against the census.
pub fn criterion_3(cfg: &VerifyConfig) -> CriterionOutput {
    let order = cfg.girth_order;
    let mut checks = guarded("3", "girth 4 vs triangle-free", || {
        let girth = girth_network_system(4)?;
        let dom = SeriesDomain::<Q>::new(0);
        let (gn, gs) = solve_class(&girth, &dom, order)?;
        let (tn, ts) = solve_class(&triangle_network_system(), &dom.clone().with_u(q(0)), order)?;
        let big = dom.with_order(order + 1);
        let gd = evaluate_output(&girth, &big, &gn, "D")?;
        let td = tn
            .get("D")
            .ok_or_else(|| crate::Error::System("triangle system has no unknown D".into()))?;
        Ok(vec![
            series_check("3", "girth 4 vs triangle-free: D", &gd, td),
            series_check("3", "girth 4 vs triangle-free: B", &gs.blocks.b, &ts.blocks.b),
            series_check("3", "girth 4 vs triangle-free: C", &gs.c, &ts.c),
            series_check("3", "girth 4 vs triangle-free: G", &gs.g, &ts.g),
        ])
    });
    checks.extend(guarded("3", "girth 5 totals vs census", || {
        let cap = cfg.oracle_n_cap;
        let (_, series) = solve_class(&girth_network_system(5)?, &SeriesDomain::<Q>::new(0), cap)?;
        let edge = LabeledGraph::path(2)?;
        for n in 1..=cap {
            for (level, s, conn) in levels(&series) {
                let total = census(n, GraphClass::new(conn, Family::SpGirth(5)), &edge, cap)?.total;
                let got = s.specialize(Var::Y, &q(1))?.egf_count(n);
                let want = Poly::monomial(q(total as i64), 0, 0);
                if got != want && !(total == 0 && got.is_zero()) {
                    return Ok(vec![Check::exact(
                        "3",
                        "girth 5 totals vs census",
                        false,
                        format!("{level} differs at n = {n}"),
                    )]);
                }
            }
        }
        Ok(vec![Check::exact(
            "3",
            "girth 5 totals vs census",
            true,
            format!("B, C, G totals equal for n <= {cap}"),
        )])
    }));
    checks.into()
}

/// 2-connected triangle moments from the characteristic pair.
pub fn criterion_4(cfg: &VerifyConfig) -> CriterionOutput {
    let tol = |n: &str, d: f64| cfg.tolerances.get(n, d);
    guarded("4", "2-connected triangle moments", || {
        let t = Instant::now();
        let cp = char_pair(&triangle_reduced_pair(), 1.0, 1.0, JetParam::U)?;
        let (mu, s2) = moments_from_radius(&cp.r)?;
        let elapsed = t.elapsed();
        let full = char_multi_det(&triangle_network_system(), 1.0, 1.0, JetParam::U)?;
        let agree = (cp.r.clone() - full.r.clone()).magnitude();
        Ok(vec![
            Check::close("4", "mu_triangle_2", 0.45242, mu.value_f64(), tol("mu_triangle_2", 1e-4)),
            Check::close("4", "sigma2_triangle_2", 0.45997, s2.value_f64(), tol("sigma2_triangle_2", 1e-4)),
            Check::close("4", "R(1)", 0.12800, cp.r.value().value_f64(), tol("R(1)", 1e-4)),
            Check::bound("4", "pair vs full system radius jets", agree, tol("pair vs full system radius jets", 1e-20)),
            Check::runtime("4", "2-connected triangle runtime", elapsed, Duration::from_secs(10)),
        ])
    })
    .into()
}

/// Connected triangle moments by two independent routes.
pub fn criterion_5(cfg: &VerifyConfig) -> CriterionOutput {
    let tol = |n: &str, d: f64| cfg.tolerances.get(n, d);
    guarded("5", "connected triangle moments", || {
        let spec = triangle_network_system();
        let r = network_radius(&spec, 1.0, 1.0)?;
        let a = connected_moments_radius(&spec, 1.0, r)?;
        let b = connected_moments_quasi_powers(&spec, 1.0, r)?;
        let dmu = (a.mu.clone() - b.mu.clone()).abs().value_f64();
        let ds2 = (a.sigma2.clone() - b.sigma2.clone()).abs().value_f64();
        Ok(vec![
            Check::close("5", "mu_triangle (radius jets)", 0.39481, a.mu.value_f64(), tol("mu_triangle", 1e-3)),
            Check::close("5", "sigma2_triangle (radius jets)", 0.41450, a.sigma2.value_f64(), tol("sigma2_triangle", 1e-3)),
            Check::close("5", "mu_triangle (quasi-powers)", 0.39481, b.mu.value_f64(), tol("mu_triangle", 1e-3)),
            Check::close("5", "sigma2_triangle (quasi-powers)", 0.41450, b.sigma2.value_f64(), tol("sigma2_triangle", 1e-3)),
            Check::bound("5", "routes agree: mu", dmu, tol("routes agree", 1e-6)),
            Check::bound("5", "routes agree: sigma2", ds2, tol("routes agree", 1e-6)),
        ])
    })
    .into()
}

/// 2-connected 4-cycle moments from the full 4-cycle system.
pub fn criterion_6(cfg: &VerifyConfig) -> CriterionOutput {
    let tol = |n: &str, d: f64| cfg.tolerances.get(n, d);
    guarded("6", "2-connected 4-cycle moments", || {
        let t = Instant::now();
        let cp = char_multi_det(&c4_network_system(), 1.0, 1.0, JetParam::U)?;
        let (mu, s2) = moments_from_radius(&cp.r)?;
        let elapsed = t.elapsed();
        Ok(vec![
            Check::close("6", "mu_c4_2", 0.51235, mu.value_f64(), tol("mu_c4_2", 1e-4)),
            Check::close("6", "sigma2_c4_2", 0.25418, s2.value_f64(), tol("sigma2_c4_2", 1e-4)),
            Check::runtime("6", "4-cycle runtime", elapsed, Duration::from_secs(300)),
        ])
    })
    .into()
}

const TRIANGLE_FREE_DATA: [(&str, &str, [f64; 4]); 5] = [
    ("S3", "a", [0.15545, -0.34792, 0.27799, -0.16276]),
    ("P0", "p", [0.10374, -0.28169, 0.33606, -0.31761]),
    ("P1", "q", [1.16818, -0.40643, 0.39544, -0.31132]),
    ("D", "d", [1.69532, -1.22249, 0.95538, -0.81117]),
    ("S2", "s", [0.26795, -0.18645, -0.05411, -0.01948]),
];

/// Triangle-free singular expansions.
pub fn criterion_7(cfg: &VerifyConfig) -> CriterionOutput {
    let tol = |n: &str| cfg.tolerances.get(n, 1e-4);
    guarded("7", "triangle-free singular data", || {
        let e = singular_expansion(&triangle_free_single(), 1.0, 0.0, 3, &["P0", "P1", "S2", "D", "B"])?;
        let mut checks = Vec::new();
        for (unknown, letter, want) in TRIANGLE_FREE_DATA {
            for (k, &w) in want.iter().enumerate() {
                let name = format!("{letter}{k}");
                let got = e.coefficient(unknown, k)?.value_f64();
                checks.push(Check::close("7", &name, w, got, tol(&name)));
            }
        }
        for (k, w) in [(0, 0.01964), (2, -0.04123), (3, 0.00359)] {
            let name = format!("b{k}");
            checks.push(Check::close("7", &name, w, e.coefficient("B", k)?.value_f64(), tol(&name)));
        }
        checks.push(Check::bound("7", "b1", e.coefficient("B", 1)?.value_f64(), cfg.tolerances.get("b1", 1e-10)));
        // The same B expansion from the full triangle system at u = 0.
        let full = singular_expansion(&triangle_network_system(), 1.0, 0.0, 3, &["B"])?;
        let gap = (0..=3)
            .map(|k| Ok((e.coefficient("B", k)?.clone() - full.coefficient("B", k)?).abs().value_f64()))
            .collect::<Result<Vec<f64>>>()?
            .into_iter()
            .fold(0.0, f64::max);
        checks.push(Check::bound("7", "single equation vs full system B", gap, 1e-20));
        Ok(checks)
    })
    .into()
}

/// Enumeration constants for the triangle-free, quadrangle-free and full
/// classes.
pub fn criterion_8(cfg: &VerifyConfig) -> CriterionOutput {
    let tol = |n: &str, d: f64| cfg.tolerances.get(n, d);
    let mut checks = guarded("8", "triangle-free constants", || {
        let e = singular_expansion(&triangle_free_single(), 1.0, 0.0, 3, &["B"])?;
        let b = transfer_constant(&e, "B", PolyExponent::MinusFiveHalves)?;
        let cc = connected_constants(&triangle_network_system(), 1.0, 0.0, e.radius.value_f64())?;
        Ok(vec![
            Check::close("8", "b_triangle_free", 0.00152, b.c.value_f64(), tol("b_triangle_free", 2e-5)),
            Check::close("8", "R_triangle_free^-1", 5.09289, b.growth_inv.value_f64(), tol("R_triangle_free^-1", 1e-4)),
            Check::close("8", "c_triangle_free", 0.00473, cc.connected.c.value_f64(), tol("c_triangle_free", 2e-4)),
            Check::close("8", "g_triangle_free", 0.00563, cc.general.c.value_f64(), tol("g_triangle_free", 2e-4)),
            Check::close("8", "rho_triangle_free^-1", 6.28155, cc.connected.growth_inv.value_f64(), tol("rho_triangle_free^-1", 1e-3)),
            Check::close("8", "exp(-C(rho)) triangle-free", 0.83962, cc.connectivity.value_f64(), tol("exp(-C(rho))", 1e-3)),
            Check::close(
                "8",
                "C(rho) quadrature vs closed form (triangle-free)",
                cc.c_at_rho.value_f64(),
                cc.c_at_rho_quadrature,
                1e-9,
            ),
        ])
    });
    checks.extend(guarded("8", "quadrangle-free constants", || {
        let spec = c4_network_system();
        let e = singular_expansion(&spec, 1.0, 0.0, 3, &["B"])?;
        let b = transfer_constant(&e, "B", PolyExponent::MinusFiveHalves)?;
        let cc = connected_constants(&spec, 1.0, 0.0, e.radius.value_f64())?;
        Ok(vec![
            Check::close("8", "b_quadrangle_free", 0.00145, b.c.value_f64(), tol("b_quadrangle_free", 2e-5)),
            Check::close("8", "R_quadrangle_free^-1", 5.13738, b.growth_inv.value_f64(), tol("R_quadrangle_free^-1", 1e-3)),
            Check::close("8", "c_quadrangle_free", 0.00233, cc.connected.c.value_f64(), tol("c_quadrangle_free", 2e-4)),
            Check::close("8", "g_quadrangle_free", 0.00276, cc.general.c.value_f64(), tol("g_quadrangle_free", 2e-4)),
            Check::close("8", "rho_quadrangle_free^-1", 6.41498, cc.connected.growth_inv.value_f64(), tol("rho_quadrangle_free^-1", 1e-3)),
            Check::close(
                "8",
                "C(rho) quadrature vs closed form (quadrangle-free)",
                cc.c_at_rho.value_f64(),
                cc.c_at_rho_quadrature,
                1e-9,
            ),
        ])
    }));
    checks.extend(guarded("8", "SP growth constant", || {
        let spec = triangle_network_system();
        let r = network_radius(&spec, 1.0, 1.0)?;
        let bp = branch_point(&spec, 1.0, 1.0, r)?;
        let inv = bp.rho.inv().ok_or(crate::Error::NotInvertible)?;
        Ok(vec![Check::close("8", "SP growth", 9.07359, inv.value_f64(), tol("SP growth", 1e-3))])
    }));
    checks.into()
}

/// Normalised coefficients of the triangle-free block series against the
/// transfer constant.
pub fn criterion_9(cfg: &VerifyConfig) -> CriterionOutput {
    let rel = cfg.tolerances.get("coefficient ratio", 0.10);
    let target = 0.00152;
    guarded("9", "direct coefficients", || {
        let r = singular_expansion(&triangle_free_single(), 1.0, 0.0, 1, &[])?
            .radius
            .value_f64();
        let dom = SeriesDomain::<f64>::new(0).with_y(1.0).with_u(0.0);
        let (_, s) = solve_class(&triangle_network_system(), &dom, 60)?;
        let norm = |n: usize| s.blocks.b.coeff(n, 0, 0) * (n as f64).powf(2.5) * r.powi(n as i32);
        let (a, b) = (norm(40), norm(60));
        let mut toward = Check::exact(
            "9",
            "n = 60 closer than n = 40",
            (b - target).abs() < (a - target).abs(),
            format!("{} -> {}", super::fmt_num(a), super::fmt_num(b)),
        );
        toward.expected = "decreasing gap".into();
        Ok(vec![
            Check::relative("9", "normalised [x^40] B", target, a, rel),
            Check::relative("9", "normalised [x^60] B", target, b, rel),
            toward,
        ])
    })
    .into()
}

/// Algebraic properties on random inputs, the `u = 1` collapse and jets
/// against finite differences.
pub fn criterion_10(cfg: &VerifyConfig) -> CriterionOutput {
    let mut rng = StdRng::seed_from_u64(cfg.seed);
    let mut checks = Vec::new();
    let n = cfg.samples;
    let mut count = |name: &str, f: &mut dyn FnMut(&mut StdRng) -> Result<bool>| {
        let mut bad = 0;
        for _ in 0..n {
            match f(&mut rng) {
                Ok(true) => {}
                Ok(false) => bad += 1,
                Err(e) => {
                    checks.push(Check::error("10", name, &e));
                    return;
                }
            }
        }
        checks.push(Check::exact("10", name, bad == 0, format!("{} of {n} samples hold", n - bad)));
    };
    count("series ring laws", &mut |r| {
        series_ring_laws(&random_series(r, 4, 0), &random_series(r, 4, 0), &random_series(r, 4, 0))
    });
    count("jet ring laws", &mut |r| {
        Ok(jet_ring_laws(&random_jet::<4>(r), &random_jet::<4>(r), &random_jet::<4>(r)))
    });
    count("exp/log inverse", &mut |r| exp_log_inverse(&random_series(r, 5, 1)));
    count("pointing/unpointing inverse", &mut |r| pointing_inverse(&random_series(r, 5, 1)));
    checks.extend(guarded("10", "u = 1 collapse", u_one_collapse));
    checks.extend(guarded("10", "radius jets vs finite differences", radius_jets_vs_fd));
    checks.extend(guarded("10", "x-jets vs finite differences", x_jets_vs_fd));
    checks.into()
}

fn u_one_collapse() -> Result<Vec<Check>> {
    let order = 6;
    let dom = SeriesDomain::<Q>::new(0).with_u(q(1));
    let (tn, tri) = solve_class(&triangle_network_system(), &dom, order)?;
    let (cn, c4) = solve_class(&c4_network_system(), &dom, order)?;
    let mut ok = tri.blocks.b == c4.blocks.b && tri.c == c4.c && tri.g == c4.g;
    ok &= tn.get("D").is_some() && tn.get("D") == cn.get("D");
    for (plain, barred) in [("S2", "S2bar"), ("S3", "S3bar"), ("P1", "P1bar"), ("P2", "P2bar")] {
        ok &= cn.get(plain).is_some() && cn.get(plain) == cn.get(barred);
    }
    Ok(vec![Check::exact(
        "10",
        "u = 1 collapse across systems",
        ok,
        if ok {
            format!("triangle and 4-cycle systems agree through x^{order}")
        } else {
            "systems differ at u = 1".into()
        },
    )])
}

fn radius_jets_vs_fd() -> Result<Vec<Check>> {
    let spec = triangle_reduced_pair();
    let jet = char_pair(&spec, 1.0, 1.0, JetParam::U)?.r;
    // Power of two, so 1 - h and 1 + h are exact in f64.
    let h = 2f64.powi(-20);
    let at = |u: f64| -> Result<BigFloat> { Ok(char_pair(&spec, 1.0, u, JetParam::None)?.r.value().clone()) };
    let (rm, r0, rp) = (at(1.0 - h)?, at(1.0)?, at(1.0 + h)?);
    let hb = BigFloat::from_f64(h);
    let d1 = (rp.clone() - &rm) * (hb.mul_int(2)).inv().expect("h > 0");
    let d2 = (rp + rm - r0.mul_int(2)) * (hb.clone() * &hb).inv().expect("h > 0");
    Ok(vec![
        Check::close("10", "R'(1) jet vs central difference", d1.value_f64(), jet.derivative(1).value_f64(), 1e-8),
        Check::close("10", "R''(1) jet vs central difference", d2.value_f64(), jet.derivative(2).value_f64(), 1e-6),
    ])
}

fn x_jets_vs_fd() -> Result<Vec<Check>> {
    let spec = triangle_network_system();
    let (y, u) = (BigFloat::one(), BigFloat::one());
    let x = BigFloat::from_f64(0.1);
    let (b, _) = block_jet::<BigFloat, 3>(&spec, &x, &y, &u, None)?;
    let h = BigFloat::from_f64(1e-8);
    let at = |x: BigFloat| -> Result<BigFloat> {
        Ok(block_jet::<BigFloat, 2>(&spec, &x, &y, &u, None)?.0.value().clone())
    };
    let d1 = (at(x.clone() + &h)? - at(x.clone() - &h)?) * h.mul_int(2).inv().expect("h > 0");
    let d1j = b.derivative(1);
    Ok(vec![Check::close(
        "10",
        "B'(x) jet vs central difference",
        d1.value_f64(),
        d1j.value_f64(),
        1e-10,
    )])
}

/// Census mean of triangle copies over connected graphs on six vertices
/// against the linear mean constant.
pub fn clt_mean(cfg: &VerifyConfig) -> CriterionOutput {
    let n = 6;
    let rel = cfg.tolerances.get("census mean", 0.15);
    match census(
        n,
        GraphClass::new(Connectivity::Connected, Family::Sp),
        &LabeledGraph::complete(3).expect("K3"),
        cfg.oracle_n_cap.max(n),
    ) {
        Ok(c) => CriterionOutput {
            checks: vec![Check::relative(
                "clt",
                "census mean of triangles, connected n = 6, vs mu_triangle n",
                0.39481 * n as f64,
                c.mean(),
                rel,
            )],
            archived: vec![c],
        },
        Err(e) => vec![Check::error("clt", "census mean", &e)].into(),
    }
}

