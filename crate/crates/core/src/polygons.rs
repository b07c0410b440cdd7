//! Admissible cyclic polygons and the ideal polyhedra over them.
//!
//! A root `α = e^{iσ}` of `Q` gives central angles `η ≡ ±mσ` and
//! `τ ≡ ±nσ (mod 2π)` folded into `(0, π]`. The `n` unit chords subtend `η`
//! and the `m` chords of length `t` subtend `τ`, so both families fit on the
//! circle of radius `1 / (2 sin(η/2))`, and `nη ± mτ = 2πh` closes the walk.

use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

use crate::dilog::{bloch_wigner_finite, clausen, AngleRadians, ComplexValue};
use crate::error::{Error, Result};
use crate::mahler::{arc_decomposition, closed_form_measure};
use crate::math;
use crate::spectrum::{find_unit_roots, FamilyParams, UnitRoot};
use crate::sum::Compensated;

/// Relative tolerance for the chord law when certifying a root.
pub const CHORD_TOL: f64 = 1e-10;
/// Tolerance on `nη ± mτ - 2πh` for hand-built polygons.
const WINDING_TOL: f64 = 1e-9;
/// Distance within which a recovered angle is matched to a computed root.
const MATCH_TOL: f64 = 1e-9;

/// Which half-open slots `(kπ/m, (k+1)π/m]` and `(lπ/n, (l+1)π/n]` hold `σ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CaseIndices {
    pub k: u32,
    pub l: u32,
}

fn slot(q: u32, sigma: f64) -> u32 {
    let raw = math::ceil(q as f64 * sigma / PI) - 1.0;
    if raw <= 0.0 {
        0
    } else {
        (raw as u32).min(q - 1)
    }
}

/// `q σ` folded into `(0, π]` given its slot.
fn fold(q: u32, slot: u32, sigma: f64) -> f64 {
    let x = q as f64 * sigma;
    if slot % 2 == 0 {
        x - slot as f64 * PI
    } else {
        (slot + 1) as f64 * PI - x
    }
}

impl CaseIndices {
    pub fn for_sigma(m: u32, n: u32, sigma: f64) -> Self {
        CaseIndices {
            k: slot(m, sigma),
            l: slot(n, sigma),
        }
    }

    /// Both families wind the same way exactly when `k + l` is odd.
    pub fn same_direction(&self) -> bool {
        (self.k + self.l) % 2 == 1
    }
}

/// A cyclic polygon with `n` sides of length 1 and `m` sides of length `t`.
#[derive(Clone, Debug, PartialEq)]
pub struct AdmissiblePolygon {
    pub params: FamilyParams,
    /// Central angle of a unit chord.
    pub eta: AngleRadians,
    /// Central angle of a `t` chord.
    pub tau: AngleRadians,
    /// `nη + mτ = 2πh` when `same_direction`, else `nη - mτ = 2πh`.
    pub winding_h: i64,
    pub same_direction: bool,
    pub radius: f64,
    /// The `m + n` corners, unit chords first.
    pub vertices: Vec<ComplexValue>,
    /// The root this polygon was built from, if any.
    pub source_sigma: Option<AngleRadians>,
}

impl AdmissiblePolygon {
    /// Build a polygon from its central angles, checking the chord law and
    /// the winding relation.
    pub fn from_angles(params: FamilyParams, eta: f64, tau: f64, same_direction: bool) -> Result<Self> {
        if !(eta > 0.0 && eta <= PI && tau > 0.0 && tau <= PI) {
            return Err(Error::MalformedPolygon("central angles must lie in (0, pi]"));
        }
        if eta == PI && tau == PI {
            return Err(Error::MalformedPolygon("both central angles equal pi"));
        }
        let radius = 0.5 / math::sin(0.5 * eta);
        if chord_residual(radius, tau, params.t()) > CHORD_TOL {
            return Err(Error::MalformedPolygon("chord lengths do not fit one circle"));
        }
        let winding = winding(&params, eta, tau, same_direction);
        let h = math::round(winding);
        if math::abs(winding - h) > WINDING_TOL {
            return Err(Error::MalformedPolygon("sides do not close up"));
        }
        Ok(Self::assemble(params, eta, tau, h as i64, same_direction, radius, None))
    }

    fn assemble(
        params: FamilyParams,
        eta: f64,
        tau: f64,
        winding_h: i64,
        same_direction: bool,
        radius: f64,
        source_sigma: Option<f64>,
    ) -> Self {
        let mut poly = AdmissiblePolygon {
            params,
            eta: AngleRadians(eta),
            tau: AngleRadians(tau),
            winding_h,
            same_direction,
            radius,
            vertices: Vec::new(),
            source_sigma: source_sigma.map(AngleRadians),
        };
        let mut path = polygon_vertices(&poly);
        path.pop();
        poly.vertices = path;
        poly
    }

    /// `(η, τ, h, same_direction)`, the data that pins the polygon down.
    pub fn signature(&self) -> (f64, f64, i64, bool) {
        (self.eta.radians(), self.tau.radians(), self.winding_h, self.same_direction)
    }

    /// `+1` for the same winding direction, `-1` otherwise.
    pub fn orientation(&self) -> f64 {
        if self.same_direction {
            1.0
        } else {
            -1.0
        }
    }
}

fn chord_residual(radius: f64, tau: f64, t: f64) -> f64 {
    math::abs(2.0 * radius * math::sin(0.5 * tau) - t) / t
}

/// `(nη ± mτ) / 2π`.
fn winding(params: &FamilyParams, eta: f64, tau: f64, same_direction: bool) -> f64 {
    let s = if same_direction { 1.0 } else { -1.0 };
    (params.n() as f64 * eta + s * params.m() as f64 * tau) / (2.0 * PI)
}

/// The polygon attached to a certified root.
pub fn alpha_to_polygon(params: &FamilyParams, root: &UnitRoot) -> Result<AdmissiblePolygon> {
    let sigma = root.sigma();
    if !(sigma > 0.0 && sigma < PI) {
        return Err(Error::Domain("root angle must lie in (0, pi)"));
    }
    let (m, n) = (params.m(), params.n());
    let case = CaseIndices::for_sigma(m, n, sigma);
    let eta = fold(m, case.k, sigma);
    let tau = fold(n, case.l, sigma);
    if !(eta > 0.0 && tau > 0.0) {
        return Err(Error::Certification { residual: 1.0 });
    }
    let radius = 0.5 / math::sin(0.5 * eta);
    let residual = chord_residual(radius, tau, params.t());
    if !(residual <= CHORD_TOL) {
        return Err(Error::Certification { residual });
    }
    let same = case.same_direction();
    let h = math::round(winding(params, eta, tau, same)) as i64;
    Ok(AdmissiblePolygon::assemble(*params, eta, tau, h, same, radius, Some(sigma)))
}

/// Volume of the ideal polyhedron over the polygon: one orthoscheme pair per
/// side, with the `t` family counted negatively when it winds backwards.
pub fn polygon_volume(p: &AdmissiblePolygon) -> f64 {
    let (m, n) = (p.params.m() as f64, p.params.n() as f64);
    0.5 * (n * clausen(p.eta.radians()) + p.orientation() * m * clausen(p.tau.radians()))
}

/// Closed vertex path: the `m + n` corners followed by the first corner
/// again, as reached by walking the chords.
pub fn polygon_vertices(p: &AdmissiblePolygon) -> Vec<ComplexValue> {
    let (m, n) = (p.params.m() as usize, p.params.n() as usize);
    let (eta, tau) = (p.eta.radians(), p.tau.radians());
    let step = p.orientation() * tau;
    let mut out = Vec::with_capacity(m + n + 1);
    for j in 0..=n {
        out.push(Complex64::from_polar(p.radius, j as f64 * eta));
    }
    let base = n as f64 * eta;
    for j in 1..=m {
        out.push(Complex64::from_polar(p.radius, base + j as f64 * step));
    }
    out
}

/// Solve `s·q ≡ h (mod p)` with `s ∈ (-p, 0]` and place `σ` from the angle
/// `x ≡ ±pσ`.
fn invert_one(p: u32, q: u32, h: i64, x: f64) -> f64 {
    let pm = p as i64;
    let s = (0..pm)
        .map(|j| -j)
        .find(|s| (s * q as i64 - h).rem_euclid(pm) == 0)
        .unwrap_or(0);
    let y = x - 2.0 * PI * s as f64;
    if y < p as f64 * PI {
        y / p as f64
    } else {
        (2.0 * PI * (s + pm) as f64 - x) / p as f64
    }
}

/// Recover the root a polygon came from.
pub fn polygon_to_alpha(p: &AdmissiblePolygon) -> Result<UnitRoot> {
    let params = &p.params;
    let (m, n) = (params.m(), params.n());
    let (eta, tau) = (p.eta.radians(), p.tau.radians());
    if math::abs(winding(params, eta, tau, p.same_direction) - p.winding_h as f64) > WINDING_TOL {
        return Err(Error::MalformedPolygon("winding number does not match the angles"));
    }
    let sigma = if eta <= tau {
        invert_one(m, n, p.winding_h, eta)
    } else {
        let h = if p.same_direction { p.winding_h } else { -p.winding_h };
        invert_one(n, m, h, tau)
    };
    if !(sigma > 0.0 && sigma < PI) {
        return Err(Error::MalformedPolygon("no root angle in (0, pi) fits the winding"));
    }
    let case = CaseIndices::for_sigma(m, n, sigma);
    let tol = 1e-9;
    if math::abs(fold(m, case.k, sigma) - eta) > tol
        || math::abs(fold(n, case.l, sigma) - tau) > tol
        || case.same_direction() != p.same_direction
    {
        return Err(Error::MalformedPolygon("recovered angle does not reproduce the polygon"));
    }
    let index = find_unit_roots(params)
        .roots
        .iter()
        .find(|r| math::abs(r.sigma() - sigma) <= MATCH_TOL)
        .map(|r| r.index)
        .ok_or(Error::MalformedPolygon("recovered angle is not a root"))?;
    Ok(UnitRoot::from_sigma(index, sigma))
}

/// One admissible polygon with its sign in the volume sum.
#[derive(Clone, Debug, PartialEq)]
pub struct SignedPolygon {
    pub polygon: AdmissiblePolygon,
    pub root: UnitRoot,
    pub case: CaseIndices,
    /// `±1`: arc role of the root times `(-1)^k`.
    pub epsilon: i8,
    pub volume: f64,
}

/// All admissible polygons for `params`, ordered by root angle.
pub fn enumerate_polygons(params: &FamilyParams) -> Result<Vec<SignedPolygon>> {
    let roots = find_unit_roots(params).roots;
    let arcs = arc_decomposition(params, &roots)?;
    roots
        .iter()
        .map(|root| {
            let polygon = alpha_to_polygon(params, root)?;
            let case = CaseIndices::for_sigma(params.m(), params.n(), root.sigma());
            let role = arcs
                .role_of(root.index)
                .ok_or(Error::Internal("root missing from arc decomposition"))?;
            let epsilon = if case.k % 2 == 0 { role } else { -role };
            let volume = polygon_volume(&polygon);
            Ok(SignedPolygon {
                polygon,
                root: *root,
                case,
                epsilon,
                volume,
            })
        })
        .collect()
}

/// `(2/mn) Σ ε_k Vol(P_k)`.
pub fn signed_volume_sum(params: &FamilyParams, polygons: &[SignedPolygon]) -> f64 {
    let mn = params.m() as f64 * params.n() as f64;
    let sum: Compensated = polygons.iter().map(|p| p.epsilon as f64 * p.volume).collect();
    2.0 * sum.value() / mn
}

/// `|π · dilog_term - (2/mn) Σ ε_k Vol(P_k)|`.
pub fn verify_main_theorem(params: &FamilyParams) -> Result<f64> {
    let report = closed_form_measure(params)?;
    let polygons = enumerate_polygons(params)?;
    Ok(math::abs(PI * report.dilog_term - signed_volume_sum(params, &polygons)))
}

/// `m D(α^n) - n D(α^m)` for the source root.
pub fn root_volume_form(params: &FamilyParams, sigma: f64) -> f64 {
    let (m, n) = (params.m() as f64, params.n() as f64);
    let d = |x: f64| bloch_wigner_finite(Complex64::new(math::cos(x), math::sin(x)));
    m * d(n * sigma) - n * d(m * sigma)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slots_are_right_closed() {
        assert_eq!(CaseIndices::for_sigma(2, 3, PI / 2.0), CaseIndices { k: 0, l: 1 });
        assert_eq!(CaseIndices::for_sigma(2, 3, PI / 3.0), CaseIndices { k: 0, l: 0 });
        assert_eq!(CaseIndices::for_sigma(2, 3, PI), CaseIndices { k: 1, l: 2 });
        assert_eq!(CaseIndices::for_sigma(1, 4, 1e-3), CaseIndices { k: 0, l: 0 });
    }

    #[test]
    fn folding_lands_in_range() {
        for q in 1..8 {
            for i in 1..200 {
                let sigma = PI * i as f64 / 200.0;
                let x = fold(q, slot(q, sigma), sigma);
                assert!(x >= 0.0 && x <= PI + 1e-15, "q={q} sigma={sigma} x={x}");
            }
        }
    }

    #[test]
    fn from_angles_rejects_bad_input() {
        let p = FamilyParams::new(2, 3, 1.0).unwrap();
        assert!(AdmissiblePolygon::from_angles(p, PI, PI, true).is_err());
        assert!(AdmissiblePolygon::from_angles(p, 0.0, 1.0, true).is_err());
        assert!(AdmissiblePolygon::from_angles(p, 1.0, 2.0, true).is_err());
        let eta = 2.0 * PI / 5.0;
        let ok = AdmissiblePolygon::from_angles(p, eta, eta, true).unwrap();
        assert_eq!(ok.winding_h, 1);
        assert_eq!(ok.vertices.len(), 5);
        // unit chords and t chords at t = 1 with mismatched winding
        assert!(AdmissiblePolygon::from_angles(p, eta, eta, false).is_err());
    }

    #[test]
    fn certification_failure_on_a_non_root() {
        let p = FamilyParams::new(2, 3, 1.0).unwrap();
        let bogus = UnitRoot::from_sigma(1, 1.0);
        assert!(matches!(
            alpha_to_polygon(&p, &bogus),
            Err(Error::Certification { .. })
        ));
    }

    #[test]
    fn diameter_side_contributes_nothing() {
        let p = FamilyParams::new(1, 4, 2.0).unwrap();
        let eta = 1.0;
        let poly = AdmissiblePolygon {
            params: p,
            eta: AngleRadians(eta),
            tau: AngleRadians(PI),
            winding_h: 0,
            same_direction: true,
            radius: 1.0,
            vertices: Vec::new(),
            source_sigma: None,
        };
        assert_eq!(polygon_volume(&poly), 2.0 * clausen(eta));
    }
}
