//! The logarithmic Mahler measure of `R_t(x, y) = t(x^m - 1) y - (x^n - 1)`.
//!
//! Jensen's formula in `y` reduces the measure to
//!
//! ```text
//! m(R_t) = log t + (1/π) ∫_0^π max(0, log|1 - e^{inθ}| - log|1 - e^{imθ}| - log t) dθ
//! ```
//!
//! The integrand is positive exactly on the arcs where `F(θ) > 0`. On each
//! arc it has the antiderivative
//!
//! ```text
//! Φ(θ) = -D(e^{inθ})/n + D(e^{imθ})/m - θ log t
//! ```
//!
//! so the closed form needs only the arc endpoints. The sign each root
//! carries follows from whether it opens or closes an arc.

use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

use crate::dilog::bloch_wigner_finite;
use crate::error::{Error, Result};
use crate::math;
use crate::quadrature::{self, DEFAULT_MAX_PANELS};
use crate::spectrum::{find_unit_roots, FamilyParams, UnitRoot};
use crate::sum::Compensated;

/// Smallest tolerance `quadrature_measure` accepts.
pub const MIN_ABS_TOL: f64 = 1e-12;

/// What sits at the end of an arc.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EndpointKind {
    /// `θ = 0`.
    Origin,
    /// The root with this 1-based index.
    Root(usize),
    /// `θ = π`.
    Pi,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Arc {
    pub start: f64,
    pub end: f64,
    pub start_kind: EndpointKind,
    pub end_kind: EndpointKind,
}

/// Disjoint sub-arcs of `(0, π)` on which `|y| > t`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ArcDecomposition {
    pub arcs: Vec<Arc>,
}

impl ArcDecomposition {
    /// `+1` if the root closes an arc, `-1` if it opens one.
    pub fn role_of(&self, index: usize) -> Option<i8> {
        self.arcs.iter().find_map(|arc| {
            if arc.end_kind == EndpointKind::Root(index) {
                Some(1)
            } else if arc.start_kind == EndpointKind::Root(index) {
                Some(-1)
            } else {
                None
            }
        })
    }

    pub fn total_length(&self) -> f64 {
        self.arcs.iter().map(|a| a.end - a.start).sum()
    }
}

/// Sign of `F` inside `(a, b)`, probing three interior points and trusting
/// the one farthest from zero.
fn cell_sign(params: &FamilyParams, a: f64, b: f64) -> i8 {
    let f = params.boundary();
    let best = [0.5, 0.25, 0.75]
        .iter()
        .map(|&w| f.value(a + w * (b - a)))
        .fold(0.0_f64, |acc, v| if math::abs(v) > math::abs(acc) { v } else { acc });
    if best > 0.0 {
        1
    } else if best < 0.0 {
        -1
    } else {
        0
    }
}

/// Partition `(0, π)` at the roots and keep the cells where `F > 0`.
pub fn arc_decomposition(params: &FamilyParams, roots: &[UnitRoot]) -> Result<ArcDecomposition> {
    let mut cuts: Vec<(f64, EndpointKind)> = Vec::with_capacity(roots.len() + 2);
    cuts.push((0.0, EndpointKind::Origin));
    for r in roots {
        let s = r.sigma();
        if !(s > 0.0 && s < PI) {
            return Err(Error::InconsistentRoots { theta: s });
        }
        cuts.push((s, EndpointKind::Root(r.index)));
    }
    cuts.push((PI, EndpointKind::Pi));
    if cuts.windows(2).any(|w| !(w[1].0 > w[0].0)) {
        return Err(Error::Internal("roots must be strictly increasing"));
    }

    let signs: Vec<i8> = cuts
        .windows(2)
        .map(|w| cell_sign(params, w[0].0, w[1].0))
        .collect();
    for (i, pair) in signs.windows(2).enumerate() {
        if pair[0] == 0 || pair[1] == 0 || pair[0] == pair[1] {
            return Err(Error::InconsistentRoots { theta: cuts[i + 1].0 });
        }
    }
    let boundary = params.boundary();
    if signs.first() != Some(&boundary.sign_near_zero().0) {
        return Err(Error::InconsistentRoots { theta: 0.0 });
    }
    if signs.last() != Some(&boundary.sign_near_pi().0) {
        return Err(Error::InconsistentRoots { theta: PI });
    }

    let arcs = cuts
        .windows(2)
        .zip(&signs)
        .filter(|(_, &s)| s > 0)
        .map(|(w, _)| Arc {
            start: w[0].0,
            end: w[1].0,
            start_kind: w[0].1,
            end_kind: w[1].1,
        })
        .collect();
    Ok(ArcDecomposition { arcs })
}

/// The measure split as `total = log_term + dilog_term + arg_term`.
#[derive(Clone, Debug, PartialEq)]
pub struct MeasureReport {
    pub params: FamilyParams,
    pub total: f64,
    /// `log t`.
    pub log_term: f64,
    /// Bloch-Wigner endpoint contributions, divided by `π`.
    pub dilog_term: f64,
    /// `-θ log t` endpoint contributions, divided by `π`.
    pub arg_term: f64,
    pub roots: Vec<UnitRoot>,
    /// Touch points excluded from the roots; non-empty at thresholds.
    pub tangents: Vec<f64>,
    pub arcs: ArcDecomposition,
}

impl MeasureReport {
    pub fn at_threshold(&self) -> bool {
        !self.tangents.is_empty()
    }
}

fn cis(theta: f64) -> Complex64 {
    Complex64::new(math::cos(theta), math::sin(theta))
}

/// Dilogarithm part of the antiderivative at a root, `-D(α^n)/n + D(α^m)/m`.
pub(crate) fn dilog_antiderivative(params: &FamilyParams, sigma: f64) -> f64 {
    let (m, n) = (params.m() as f64, params.n() as f64);
    -bloch_wigner_finite(cis(n * sigma)) / n + bloch_wigner_finite(cis(m * sigma)) / m
}

pub fn closed_form_measure(params: &FamilyParams) -> Result<MeasureReport> {
    let root_set = find_unit_roots(params);
    let arcs = arc_decomposition(params, &root_set.roots)?;
    let log_t = math::ln(params.t());

    let endpoint = |theta: f64, kind: EndpointKind| -> (f64, f64) {
        let d = match kind {
            EndpointKind::Root(_) => dilog_antiderivative(params, theta),
            EndpointKind::Origin | EndpointKind::Pi => 0.0,
        };
        let a = match kind {
            EndpointKind::Origin => 0.0,
            EndpointKind::Pi => -PI * log_t,
            EndpointKind::Root(_) => -theta * log_t,
        };
        (d, a)
    };

    let mut dilog = Compensated::default();
    let mut arg = Compensated::default();
    for arc in &arcs.arcs {
        let (d1, a1) = endpoint(arc.end, arc.end_kind);
        let (d0, a0) = endpoint(arc.start, arc.start_kind);
        dilog.add(d1);
        dilog.add(-d0);
        arg.add(a1);
        arg.add(-a0);
    }
    let dilog_term = dilog.value() / PI;
    let arg_term = arg.value() / PI;
    Ok(MeasureReport {
        params: *params,
        total: log_t + dilog_term + arg_term,
        log_term: log_t,
        dilog_term,
        arg_term,
        roots: root_set.roots,
        tangents: root_set.tangents,
        arcs,
    })
}

/// `max(0, log|1 - e^{inθ}| - log|1 - e^{imθ}| - log t)`.
pub fn jensen_integrand(params: &FamilyParams, theta: f64) -> f64 {
    let a = math::abs(math::sin(0.5 * params.n() as f64 * theta));
    let b = math::abs(math::sin(0.5 * params.m() as f64 * theta));
    let g = math::ln(a) - math::ln(b) - math::ln(params.t());
    if g > 0.0 {
        g
    } else {
        0.0
    }
}

/// Breakpoints in `[0, period]` where `|sin(kθ/2)|` vanishes, for `k ∈ {m, n}`.
pub(crate) fn singular_points(m: u32, n: u32, upper: f64) -> Vec<f64> {
    let mut pts = Vec::new();
    for k in [m, n] {
        let step = 2.0 * PI / k as f64;
        let mut j = 1;
        while (j as f64) * step < upper {
            pts.push(j as f64 * step);
            j += 1;
        }
    }
    pts
}

/// Jensen integral by adaptive quadrature; kinks at the roots and the
/// logarithmic singularities at `θ = 2πj/m` sit on panel boundaries.
pub fn quadrature_measure(params: &FamilyParams, abs_tol: f64) -> Result<f64> {
    if !(abs_tol >= MIN_ABS_TOL) {
        return Err(Error::Domain("quadrature tolerance must be at least 1e-12"));
    }
    let root_set = find_unit_roots(params);
    let mut breaks = Vec::with_capacity(root_set.roots.len() + 2 * (params.m() + params.n()) as usize);
    breaks.push(0.0);
    breaks.push(PI);
    breaks.extend(root_set.roots.iter().map(UnitRoot::sigma));
    breaks.extend(root_set.tangents.iter().copied());
    breaks.extend(singular_points(params.m(), params.n(), PI));
    breaks.sort_by(f64::total_cmp);
    breaks.dedup();

    let result = quadrature::integrate(
        |theta| jensen_integrand(params, theta),
        &breaks,
        abs_tol * PI,
        DEFAULT_MAX_PANELS,
    )
    .map_err(|e| match e {
        Error::Accuracy {
            estimate,
            error_bound,
        } => Error::Accuracy {
            estimate: math::ln(params.t()) + estimate / PI,
            error_bound: error_bound / PI,
        },
        other => other,
    })?;
    Ok(math::ln(params.t()) + result.value / PI)
}

/// Mahler measure of `a + bx + cy` for positive `a, b, c`.
///
/// When the three lengths form a triangle with opposite angles `α, β, γ`:
/// `π m = D(|a/b| e^{iγ}) + α log a + β log b + γ log c`; otherwise
/// `m = log max(a, b, c)`.
pub fn cassaigne_maillot(a: f64, b: f64, c: f64) -> Result<f64> {
    if !(a > 0.0 && b > 0.0 && c > 0.0) || !(a.is_finite() && b.is_finite() && c.is_finite()) {
        return Err(Error::Domain("side lengths must be positive and finite"));
    }
    let is_triangle = a < b + c && b < a + c && c < a + b;
    if !is_triangle {
        return Ok(math::ln(a.max(b).max(c)));
    }
    let angle = |opp: f64, x: f64, y: f64| {
        let cos = ((x * x + y * y - opp * opp) / (2.0 * x * y)).clamp(-1.0, 1.0);
        math::acos(cos)
    };
    let alpha = angle(a, b, c);
    let beta = angle(b, a, c);
    let gamma = angle(c, a, b);
    let d = bloch_wigner_finite(Complex64::from_polar(a / b, gamma));
    Ok((d + alpha * math::ln(a) + beta * math::ln(b) + gamma * math::ln(c)) / PI)
}
