//! `constants` and `moments`: computed values next to their printed targets.

use clap::ValueEnum;
use serde::Serialize;
use spgraph_core::asymptotics::{
    branch_point, char_multi_det, char_pair, connected_constants, connected_moments_quasi_powers,
    connected_moments_radius, moments_from_radius, singular_expansion, transfer_constant,
    JetParam, MomentReport, PolyExponent,
};
use spgraph_core::ring::{precision_digits, Analytic, BigFloat, Ring};
use spgraph_core::systems::{c4_network_system, triangle_free_single, triangle_network_system, SystemSpec};
use spgraph_core::verify::Tolerances;
use spgraph_core::Result;

use crate::output::Document;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[value(rename_all = "snake_case")]
#[serde(rename_all = "snake_case")]
pub enum FamilyArg {
    TriangleFree,
    QuadrangleFree,
    Sp,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[value(rename_all = "snake_case")]
#[serde(rename_all = "snake_case")]
pub enum LevelArg {
    TwoConnected,
    Connected,
    General,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[value(rename_all = "snake_case")]
#[serde(rename_all = "snake_case")]
pub enum SubgraphArg {
    Triangle,
    C4,
}

#[derive(Debug, Clone, Serialize)]
pub struct Row {
    pub quantity: String,
    /// Decimal string at the working precision.
    pub value: String,
    pub target: Option<f64>,
    pub difference: Option<f64>,
    pub tolerance: Option<f64>,
    pub passed: Option<bool>,
}

#[derive(Debug, Clone, Serialize)]
pub struct TableReport {
    pub command: &'static str,
    pub subject: String,
    pub precision_digits: u32,
    pub note: Option<String>,
    pub rows: Vec<Row>,
    pub passed: bool,
}

impl TableReport {
    pub fn failed(&self) -> usize {
        self.rows.iter().filter(|r| r.passed == Some(false)).count()
    }

    pub fn document(&self) -> Document {
        let opt = |v: Option<f64>| v.map(|v| v.to_string()).unwrap_or_default();
        let rows = self
            .rows
            .iter()
            .map(|r| {
                vec![
                    r.quantity.clone(),
                    r.value.clone(),
                    opt(r.target),
                    opt(r.difference),
                    opt(r.tolerance),
                    r.passed.map(|p| p.to_string()).unwrap_or_default(),
                ]
            })
            .collect();
        Document::new(
            self,
            vec!["quantity", "value", "target", "difference", "tolerance", "passed"],
            rows,
        )
    }
}

struct Rows<'a> {
    tol: &'a Tolerances,
    rows: Vec<Row>,
}

impl<'a> Rows<'a> {
    fn new(tol: &'a Tolerances) -> Self {
        Rows { tol, rows: Vec::new() }
    }

    fn value(&mut self, quantity: &str, v: &BigFloat) {
        self.rows.push(Row {
            quantity: quantity.into(),
            value: v.to_decimal_string(precision_digits() as usize),
            target: None,
            difference: None,
            tolerance: None,
            passed: None,
        });
    }

    /// A value with a printed target; `key` names the tolerance override.
    fn target(&mut self, quantity: &str, v: &BigFloat, target: f64, key: &str, default_tol: f64) {
        let tol = self.tol.get(key, default_tol);
        let diff = (v.value_f64() - target).abs();
        self.value(quantity, v);
        let row = self.rows.last_mut().expect("just pushed");
        row.target = Some(target);
        row.difference = Some(diff);
        row.tolerance = Some(tol);
        row.passed = Some(diff <= tol);
    }
}

fn radius(spec: &SystemSpec, u: f64) -> Result<f64> {
    Ok(char_multi_det(spec, 1.0, u, JetParam::None)?.r.value().value_f64())
}

pub fn constants(family: FamilyArg, tol: &Tolerances) -> Result<TableReport> {
    let mut t = Rows::new(tol);
    match family {
        FamilyArg::TriangleFree => {
            let e = singular_expansion(&triangle_free_single(), 1.0, 0.0, 3, &["B"])?;
            let b = transfer_constant(&e, "B", PolyExponent::MinusFiveHalves)?;
            let cc = connected_constants(&triangle_network_system(), 1.0, 0.0, e.radius.value_f64())?;
            t.target("b_triangle_free", &b.c, 0.00152, "b_triangle_free", 2e-5);
            t.target("R_triangle_free^-1", &b.growth_inv, 5.09289, "R_triangle_free^-1", 1e-4);
            t.target("c_triangle_free", &cc.connected.c, 0.00473, "c_triangle_free", 2e-4);
            t.target("g_triangle_free", &cc.general.c, 0.00563, "g_triangle_free", 2e-4);
            t.target("rho_triangle_free^-1", &cc.connected.growth_inv, 6.28155, "rho_triangle_free^-1", 1e-3);
            t.target("connectivity_triangle_free", &cc.connectivity, 0.83962, "exp(-C(rho))", 1e-3);
            t.value("C(rho)_triangle_free", &cc.c_at_rho);
        }
        FamilyArg::QuadrangleFree => {
            let spec = c4_network_system();
            let e = singular_expansion(&spec, 1.0, 0.0, 3, &["B"])?;
            let b = transfer_constant(&e, "B", PolyExponent::MinusFiveHalves)?;
            let cc = connected_constants(&spec, 1.0, 0.0, e.radius.value_f64())?;
            t.target("b_quadrangle_free", &b.c, 0.00145, "b_quadrangle_free", 2e-5);
            t.target("R_quadrangle_free^-1", &b.growth_inv, 5.13738, "R_quadrangle_free^-1", 1e-3);
            t.target("c_quadrangle_free", &cc.connected.c, 0.00233, "c_quadrangle_free", 2e-4);
            t.target("g_quadrangle_free", &cc.general.c, 0.00276, "g_quadrangle_free", 2e-4);
            t.target("rho_quadrangle_free^-1", &cc.connected.growth_inv, 6.41498, "rho_quadrangle_free^-1", 1e-3);
            t.value("connectivity_quadrangle_free", &cc.connectivity);
            t.value("C(rho)_quadrangle_free", &cc.c_at_rho);
        }
        FamilyArg::Sp => {
            let spec = triangle_network_system();
            let e = singular_expansion(&spec, 1.0, 1.0, 3, &["B"])?;
            let b = transfer_constant(&e, "B", PolyExponent::MinusFiveHalves)?;
            let cc = connected_constants(&spec, 1.0, 1.0, e.radius.value_f64())?;
            let bp = branch_point(&spec, 1.0, 1.0, e.radius.value_f64())?;
            let growth = bp.rho.inv().ok_or(spgraph_core::Error::NotInvertible)?;
            t.value("b_sp", &b.c);
            t.value("R_sp^-1", &b.growth_inv);
            t.value("c_sp", &cc.connected.c);
            t.value("g_sp", &cc.general.c);
            t.target("rho_sp^-1", &growth, 9.07359, "SP growth", 1e-3);
            t.value("connectivity_sp", &cc.connectivity);
        }
    }
    let subject = serde_json::to_value(family).expect("tag serializes");
    Ok(finish("constants", subject.as_str().unwrap_or_default().into(), None, t.rows))
}

fn moment_rows(t: &mut Rows, m: &MomentReport, suffix: &str, targets: Option<(&str, f64, f64, f64)>) {
    match targets {
        Some((name, mu, s2, tol)) => {
            t.target(&format!("mu_{name}{suffix}"), &m.mu, mu, &format!("mu_{name}"), tol);
            t.target(&format!("sigma2_{name}{suffix}"), &m.sigma2, s2, &format!("sigma2_{name}"), tol);
        }
        None => {
            t.value(&format!("mu{suffix}"), &m.mu);
            t.value(&format!("sigma2{suffix}"), &m.sigma2);
        }
    }
}

pub fn moments(level: LevelArg, subgraph: SubgraphArg, tol: &Tolerances) -> Result<TableReport> {
    let mut t = Rows::new(tol);
    let mut note = None;
    match (level, subgraph) {
        (LevelArg::TwoConnected, SubgraphArg::Triangle) => {
            let cp = char_pair(&spgraph_core::systems::triangle_reduced_pair(), 1.0, 1.0, JetParam::U)?;
            let (mu, s2) = moments_from_radius(&cp.r)?;
            t.target("mu_triangle_2", &mu, 0.45242, "mu_triangle_2", 1e-4);
            t.target("sigma2_triangle_2", &s2, 0.45997, "sigma2_triangle_2", 1e-4);
            t.target("R(1)", cp.r.value(), 0.12800, "R(1)", 1e-4);
        }
        (LevelArg::TwoConnected, SubgraphArg::C4) => {
            let cp = char_multi_det(&c4_network_system(), 1.0, 1.0, JetParam::U)?;
            let (mu, s2) = moments_from_radius(&cp.r)?;
            t.target("mu_c4_2", &mu, 0.51235, "mu_c4_2", 1e-4);
            t.target("sigma2_c4_2", &s2, 0.25418, "sigma2_c4_2", 1e-4);
            t.target("R(1)", cp.r.value(), 0.12800, "R(1)", 1e-4);
        }
        (LevelArg::Connected | LevelArg::General, sub) => {
            if level == LevelArg::General {
                note = Some(
                    "general graphs share the connected singularity rho(u), so the constants coincide".into(),
                );
            }
            let (spec, targets) = match sub {
                SubgraphArg::Triangle => (triangle_network_system(), Some(("triangle", 0.39481, 0.41450, 1e-3))),
                SubgraphArg::C4 => (c4_network_system(), None),
            };
            let r = radius(&spec, 1.0)?;
            let a = connected_moments_radius(&spec, 1.0, r)?;
            let b = connected_moments_quasi_powers(&spec, 1.0, r)?;
            moment_rows(&mut t, &a, " (radius jets)", targets);
            moment_rows(&mut t, &b, " (quasi-powers)", targets);
            let dmu = (a.mu.clone() - &b.mu).abs();
            let ds2 = (a.sigma2.clone() - &b.sigma2).abs();
            t.target("routes agree: mu", &dmu, 0.0, "routes agree", 1e-6);
            t.target("routes agree: sigma2", &ds2, 0.0, "routes agree", 1e-6);
        }
    }
    let tag = |v: serde_json::Value| v.as_str().unwrap_or_default().to_string();
    let subject = format!(
        "{}/{}",
        tag(serde_json::to_value(level).expect("tag serializes")),
        tag(serde_json::to_value(subgraph).expect("tag serializes"))
    );
    Ok(finish("moments", subject, note, t.rows))
}

fn finish(command: &'static str, subject: String, note: Option<String>, rows: Vec<Row>) -> TableReport {
    let passed = rows.iter().all(|r| r.passed != Some(false));
    TableReport {
        command,
        subject,
        precision_digits: precision_digits(),
        note,
        rows,
        passed,
    }
}
