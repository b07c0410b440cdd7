//! Serializable reports, one per subcommand.

use mahvol_core::apoly::{self, IdentitySolution};
use mahvol_core::mahler::{self, EndpointKind, MeasureReport};
use mahvol_core::polygons::{self, SignedPolygon};
use mahvol_core::spectrum::{self, RootSet, Threshold, ThresholdKind, UnitRoot};
use mahvol_core::FamilyParams;
use serde::Serialize;

use crate::error::CliError;
use crate::output::{float, Table};

pub const SCHEMA_VERSION: u32 = 1;

/// Smallest tolerance the quadrature accepts.
const QUAD_FLOOR: f64 = mahler::MIN_ABS_TOL;
/// Agreement allowed when `t` sits on a threshold.
const THRESHOLD_TOL: f64 = 1e-6;

#[derive(Serialize)]
pub struct Params {
    pub m: u32,
    pub n: u32,
    pub t: f64,
}

impl From<&FamilyParams> for Params {
    fn from(p: &FamilyParams) -> Self {
        Params {
            m: p.m(),
            n: p.n(),
            t: p.t(),
        }
    }
}

#[derive(Serialize)]
pub struct Root {
    pub index: usize,
    pub sigma: f64,
    pub alpha: [f64; 2],
}

impl From<&UnitRoot> for Root {
    fn from(r: &UnitRoot) -> Self {
        Root {
            index: r.index,
            sigma: r.sigma(),
            alpha: [r.alpha.re, r.alpha.im],
        }
    }
}

#[derive(Serialize)]
pub struct Arc {
    pub start: f64,
    pub end: f64,
    pub start_kind: String,
    pub end_kind: String,
}

fn kind_name(k: EndpointKind) -> String {
    match k {
        EndpointKind::Origin => "origin".into(),
        EndpointKind::Pi => "pi".into(),
        EndpointKind::Root(i) => format!("root{i}"),
    }
}

#[derive(Serialize)]
pub struct ClosedForm {
    pub total: f64,
    pub log_term: f64,
    pub dilog_term: f64,
    pub arg_term: f64,
    pub roots: Vec<Root>,
    pub tangents: Vec<f64>,
    pub at_threshold: bool,
    pub arcs: Vec<Arc>,
}

impl From<&MeasureReport> for ClosedForm {
    fn from(r: &MeasureReport) -> Self {
        ClosedForm {
            total: r.total,
            log_term: r.log_term,
            dilog_term: r.dilog_term,
            arg_term: r.arg_term,
            roots: r.roots.iter().map(Root::from).collect(),
            tangents: r.tangents.clone(),
            at_threshold: r.at_threshold(),
            arcs: r
                .arcs
                .arcs
                .iter()
                .map(|a| Arc {
                    start: a.start,
                    end: a.end,
                    start_kind: kind_name(a.start_kind),
                    end_kind: kind_name(a.end_kind),
                })
                .collect(),
        }
    }
}

#[derive(Serialize)]
pub struct Measure {
    pub schema_version: u32,
    pub command: &'static str,
    pub params: Params,
    pub closed_form: ClosedForm,
    pub quadrature: f64,
    pub quadrature_tol: f64,
    pub residual: f64,
}

fn quad_tol(tol: f64) -> f64 {
    (0.1 * tol).max(QUAD_FLOOR)
}

pub fn measure(p: &FamilyParams, tol: f64) -> Result<Measure, CliError> {
    let cf = mahler::closed_form_measure(p)?;
    let qt = quad_tol(tol);
    let q = mahler::quadrature_measure(p, qt)?;
    Ok(Measure {
        schema_version: SCHEMA_VERSION,
        command: "measure",
        params: p.into(),
        residual: (cf.total - q).abs(),
        closed_form: (&cf).into(),
        quadrature: q,
        quadrature_tol: qt,
    })
}

impl Measure {
    pub fn table(&self) -> Table {
        let c = &self.closed_form;
        let mut t = Table::new(vec!["m", "n", "t", "total", "log_term", "dilog_term", "arg_term", "quadrature", "residual", "roots"]);
        t.push(vec![
            self.params.m.to_string(),
            self.params.n.to_string(),
            float(self.params.t),
            float(c.total),
            float(c.log_term),
            float(c.dilog_term),
            float(c.arg_term),
            float(self.quadrature),
            float(self.residual),
            c.roots.len().to_string(),
        ]);
        t
    }
}

#[derive(Serialize)]
pub struct Roots {
    pub schema_version: u32,
    pub command: &'static str,
    pub params: Params,
    pub roots: Vec<Root>,
    pub tangents: Vec<f64>,
    pub at_threshold: bool,
}

pub fn roots(p: &FamilyParams) -> Roots {
    let set: RootSet = spectrum::find_unit_roots(p);
    Roots {
        schema_version: SCHEMA_VERSION,
        command: "roots",
        params: p.into(),
        at_threshold: set.at_threshold(),
        roots: set.roots.iter().map(Root::from).collect(),
        tangents: set.tangents,
    }
}

impl Roots {
    pub fn table(&self) -> Table {
        let mut t = Table::new(vec!["index", "sigma", "alpha_re", "alpha_im"]);
        for r in &self.roots {
            t.push(vec![r.index.to_string(), float(r.sigma), float(r.alpha[0]), float(r.alpha[1])]);
        }
        t
    }
}

#[derive(Serialize)]
pub struct Polygon {
    pub index: usize,
    pub sigma: f64,
    pub k: u32,
    pub l: u32,
    pub eta: f64,
    pub tau: f64,
    pub winding_h: i64,
    pub same_direction: bool,
    pub radius: f64,
    pub volume: f64,
    pub epsilon: i8,
    pub vertices: Vec<[f64; 2]>,
}

impl From<&SignedPolygon> for Polygon {
    fn from(s: &SignedPolygon) -> Self {
        let p = &s.polygon;
        Polygon {
            index: s.root.index,
            sigma: s.root.sigma(),
            k: s.case.k,
            l: s.case.l,
            eta: p.eta.radians(),
            tau: p.tau.radians(),
            winding_h: p.winding_h,
            same_direction: p.same_direction,
            radius: p.radius,
            volume: s.volume,
            epsilon: s.epsilon,
            vertices: p.vertices.iter().map(|v| [v.re, v.im]).collect(),
        }
    }
}

#[derive(Serialize)]
pub struct Polygons {
    pub schema_version: u32,
    pub command: &'static str,
    pub params: Params,
    pub polygons: Vec<Polygon>,
    /// `(2/mn) Σ ε_k Vol(P_k)`.
    pub signed_volume_sum: f64,
}

pub fn polygons(p: &FamilyParams) -> Result<Polygons, CliError> {
    let list = polygons::enumerate_polygons(p)?;
    Ok(Polygons {
        schema_version: SCHEMA_VERSION,
        command: "polygons",
        params: p.into(),
        signed_volume_sum: polygons::signed_volume_sum(p, &list),
        polygons: list.iter().map(Polygon::from).collect(),
    })
}

impl Polygons {
    pub fn table(&self) -> Table {
        let mut t = Table::new(vec![
            "index", "sigma", "k", "l", "eta", "tau", "winding_h", "same_direction", "radius", "volume", "epsilon",
        ]);
        for p in &self.polygons {
            t.push(vec![
                p.index.to_string(),
                float(p.sigma),
                p.k.to_string(),
                p.l.to_string(),
                float(p.eta),
                float(p.tau),
                p.winding_h.to_string(),
                p.same_direction.to_string(),
                float(p.radius),
                float(p.volume),
                p.epsilon.to_string(),
            ]);
        }
        t
    }
}

#[derive(Serialize)]
pub struct Verify {
    pub schema_version: u32,
    pub command: &'static str,
    pub params: Params,
    /// `"log t"` when no roots remain, else `"dilogarithm"`.
    pub branch: &'static str,
    pub closed_form: f64,
    pub quadrature: f64,
    pub polygon_route: f64,
    pub measure_residual: f64,
    pub polygon_residual: f64,
    pub theorem_residual: f64,
    pub polygon_count: usize,
    pub at_threshold: bool,
    pub tol: f64,
    pub pass: bool,
}

pub fn verify(p: &FamilyParams, tol: f64) -> Result<Verify, CliError> {
    let cf = mahler::closed_form_measure(p)?;
    let q = mahler::quadrature_measure(p, quad_tol(tol))?;
    let list = polygons::enumerate_polygons(p)?;
    let theorem = polygons::verify_main_theorem(p)?;
    let via_polygons = cf.log_term + cf.arg_term + polygons::signed_volume_sum(p, &list) / std::f64::consts::PI;
    let agreement_tol = if cf.at_threshold() { tol.max(THRESHOLD_TOL) } else { tol };
    let measure_residual = (cf.total - q).abs();
    let polygon_residual = (cf.total - via_polygons).abs();
    let pass = measure_residual <= agreement_tol && polygon_residual <= agreement_tol && theorem <= tol;
    Ok(Verify {
        schema_version: SCHEMA_VERSION,
        command: "verify",
        params: p.into(),
        branch: if cf.roots.is_empty() { "log t" } else { "dilogarithm" },
        closed_form: cf.total,
        quadrature: q,
        polygon_route: via_polygons,
        measure_residual,
        polygon_residual,
        theorem_residual: theorem,
        polygon_count: list.len(),
        at_threshold: cf.at_threshold(),
        tol,
        pass,
    })
}

impl Verify {
    pub fn table(&self) -> Table {
        let mut t = Table::new(vec![
            "m", "n", "t", "branch", "closed_form", "quadrature", "polygon_route", "measure_residual",
            "polygon_residual", "theorem_residual", "polygon_count", "pass",
        ]);
        t.push(vec![
            self.params.m.to_string(),
            self.params.n.to_string(),
            float(self.params.t),
            self.branch.to_string(),
            float(self.closed_form),
            float(self.quadrature),
            float(self.polygon_route),
            float(self.measure_residual),
            float(self.polygon_residual),
            float(self.theorem_residual),
            self.polygon_count.to_string(),
            self.pass.to_string(),
        ]);
        t
    }
}

#[derive(Serialize)]
pub struct Transition {
    pub t: f64,
    pub kind: &'static str,
    pub roots_before: usize,
    pub roots_after: usize,
    /// `(k, l)` per root, sorted.
    pub cases_before: Vec<[u32; 2]>,
    pub cases_after: Vec<[u32; 2]>,
}

impl From<&Threshold> for Transition {
    fn from(th: &Threshold) -> Self {
        match &th.kind {
            ThresholdKind::RootCount { before, after } => Transition {
                t: th.t,
                kind: "root_count",
                roots_before: *before,
                roots_after: *after,
                cases_before: Vec::new(),
                cases_after: Vec::new(),
            },
            ThresholdKind::Shape { before, after } => Transition {
                t: th.t,
                kind: "shape",
                roots_before: before.len(),
                roots_after: after.len(),
                cases_before: before.iter().map(|c| [c.k, c.l]).collect(),
                cases_after: after.iter().map(|c| [c.k, c.l]).collect(),
            },
        }
    }
}

#[derive(Serialize)]
pub struct Sweep {
    pub schema_version: u32,
    pub command: &'static str,
    pub m: u32,
    pub n: u32,
    pub t_lo: f64,
    pub t_hi: f64,
    pub steps: usize,
    pub thresholds: Vec<Transition>,
}

pub fn sweep(m: u32, n: u32, t_lo: f64, t_hi: f64, steps: usize) -> Result<Sweep, CliError> {
    let list = spectrum::threshold_scan(m, n, t_lo, t_hi, steps)?;
    Ok(Sweep {
        schema_version: SCHEMA_VERSION,
        command: "sweep",
        m,
        n,
        t_lo,
        t_hi,
        steps,
        thresholds: list.iter().map(Transition::from).collect(),
    })
}

fn cases_string(cases: &[[u32; 2]]) -> String {
    cases
        .iter()
        .map(|[k, l]| format!("{k}:{l}"))
        .collect::<Vec<_>>()
        .join(" ")
}

impl Sweep {
    pub fn table(&self) -> Table {
        let mut t = Table::new(vec!["t", "kind", "roots_before", "roots_after", "cases_before", "cases_after"]);
        for th in &self.thresholds {
            t.push(vec![
                float(th.t),
                th.kind.to_string(),
                th.roots_before.to_string(),
                th.roots_after.to_string(),
                cases_string(&th.cases_before),
                cases_string(&th.cases_after),
            ]);
        }
        t
    }
}

#[derive(Serialize)]
pub struct Solution {
    pub j: u64,
    pub u: [f64; 2],
    pub w: [f64; 2],
    pub z: [f64; 2],
    pub degenerate: bool,
}

impl From<&IdentitySolution> for Solution {
    fn from(s: &IdentitySolution) -> Self {
        Solution {
            j: s.j,
            u: [s.u.re, s.u.im],
            w: [s.w.re, s.w.im],
            z: [s.z.re, s.z.im],
            degenerate: s.degenerate,
        }
    }
}

#[derive(Serialize)]
pub struct Apoly {
    pub schema_version: u32,
    pub command: &'static str,
    pub m: u32,
    pub n: u32,
    pub alpha: i64,
    pub beta: i64,
    pub matrix: Vec<Vec<i64>>,
    pub neumann_zagier: bool,
    /// Solutions are `u = exp(2πi j / modulus)`.
    pub modulus: u64,
    pub identity_solutions: Vec<Solution>,
    pub tilde_residual: f64,
}

pub fn apoly(m: u32, n: u32, tol: f64) -> Result<Apoly, CliError> {
    let sys = apoly::build_system(m, n)?;
    let nz = apoly::check_neumann_zagier(&sys)?;
    let sols = apoly::identity_solutions(m, n)?;
    let tilde = apoly::tilde_measure_check(m, n, quad_tol(tol))?;
    Ok(Apoly {
        schema_version: SCHEMA_VERSION,
        command: "apoly",
        m,
        n,
        alpha: sys.alpha,
        beta: sys.beta,
        neumann_zagier: nz,
        modulus: (m as u64).abs_diff(n as u64) * (m + n) as u64,
        identity_solutions: sols.iter().map(Solution::from).collect(),
        tilde_residual: tilde,
        matrix: sys.matrix,
    })
}

impl Apoly {
    pub fn table(&self) -> Table {
        let mut t = Table::new(vec!["j", "u_re", "u_im", "w_re", "w_im", "z_re", "z_im", "degenerate"]);
        for s in &self.identity_solutions {
            t.push(vec![
                s.j.to_string(),
                float(s.u[0]),
                float(s.u[1]),
                float(s.w[0]),
                float(s.w[1]),
                float(s.z[0]),
                float(s.z[1]),
                s.degenerate.to_string(),
            ]);
        }
        t
    }
}
