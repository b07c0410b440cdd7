//! Unit-circle roots of `Q(x) = |x^n - 1|² / |x^m - 1|² - t²`.
//!
//! On `x = e^{iθ}` the sign of `Q` is the sign of the boundary function
//! `F(θ) = |1 - e^{inθ}|² - t² |1 - e^{imθ}|²`, which is smooth, even and has
//! at most `m + n` oscillations on `(0, π)`. Roots of odd multiplicity are
//! exactly the sign changes of `F`; touch points without a sign change are
//! reported separately as tangencies.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

use crate::dilog::{AngleRadians, ComplexValue};
use crate::error::{Error, Result};
use crate::math;
use crate::polygons::CaseIndices;

/// `|F|` below which a touch point without sign change counts as a tangency.
pub const TANGENT_EPS: f64 = 1e-9;
/// Half-width of the window in `θ` used by the tangency test.
pub const TANGENT_WINDOW: f64 = 1e-6;
/// Bisection stops once the bracket is this narrow.
pub const ROOT_TOL: f64 = 1e-14;
/// Thresholds in `t` are bracketed to this width.
pub const THRESHOLD_TOL: f64 = 1e-10;

const SAMPLES_PER_TERM: usize = 64;
const MAX_DOUBLINGS: u32 = 6;
const MAX_EVENTS_PER_STEP: usize = 16;

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// A member `(m, n, t)` of the polynomial family.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FamilyParams {
    m: u32,
    n: u32,
    t: f64,
}

impl FamilyParams {
    /// Negative `t` is replaced by `|t|`; rotating `y` by a unit scalar does
    /// not change the measure.
    pub fn new(m: u32, n: u32, t: f64) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::Domain("m and n must be positive"));
        }
        if m == n {
            return Err(Error::Domain("m and n must differ"));
        }
        if gcd(m as u64, n as u64) != 1 {
            return Err(Error::Domain("m and n must be coprime"));
        }
        if !t.is_finite() || t == 0.0 {
            return Err(Error::Domain("t must be finite and nonzero"));
        }
        Ok(FamilyParams { m, n, t: math::abs(t) })
    }

    /// Accepts a complex coefficient and keeps its modulus.
    pub fn from_complex_t(m: u32, n: u32, t: ComplexValue) -> Result<Self> {
        if !(t.re.is_finite() && t.im.is_finite()) {
            return Err(Error::Domain("t must be finite and nonzero"));
        }
        Self::new(m, n, t.norm())
    }

    pub fn with_t(&self, t: f64) -> Result<Self> {
        Self::new(self.m, self.n, t)
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn boundary(&self) -> BoundaryFunction {
        BoundaryFunction { params: *self }
    }
}

/// A root `α = e^{iσ}` of `Q` on the upper half of the unit circle.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UnitRoot {
    /// 1-based, counterclockwise from 1.
    pub index: usize,
    pub sigma: AngleRadians,
    pub alpha: ComplexValue,
}

impl UnitRoot {
    pub(crate) fn from_sigma(index: usize, sigma: f64) -> Self {
        UnitRoot {
            index,
            sigma: AngleRadians(sigma),
            alpha: Complex64::new(math::cos(sigma), math::sin(sigma)),
        }
    }

    pub fn sigma(&self) -> f64 {
        self.sigma.radians()
    }
}

/// `F(θ) = (2 - 2cos nθ) - t²(2 - 2cos mθ)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundaryFunction {
    params: FamilyParams,
}

impl BoundaryFunction {
    pub fn value(&self, theta: f64) -> f64 {
        let p = &self.params;
        let a = math::sin(0.5 * p.n as f64 * theta);
        let b = math::sin(0.5 * p.m as f64 * theta);
        4.0 * (a * a - p.t * p.t * (b * b))
    }

    /// Sign of `F` on `(0, ε)` for small `ε`, and whether `θ = 0` is a
    /// tangency (`t = n/m`).
    pub(crate) fn sign_near_zero(&self) -> (i8, bool) {
        let (m, n, t) = (self.params.m as f64, self.params.n as f64, self.params.t);
        let lead = (n - t * m) * (n + t * m);
        if math::abs(n - t * m) <= 4.0 * f64::EPSILON * n {
            // F ≈ -θ⁴ n²(n² - m²)/12
            (sign(m * m - n * n), true)
        } else {
            (sign(lead), false)
        }
    }

    /// Sign of `F` on `(π - ε, π)`, and whether `θ = π` is a tangency.
    pub(crate) fn sign_near_pi(&self) -> (i8, bool) {
        let (m, n, t) = (self.params.m, self.params.n, self.params.t);
        match (m % 2 == 1, n % 2 == 1) {
            (true, true) => {
                if math::abs(1.0 - t) <= 4.0 * f64::EPSILON {
                    // F(π - ε) ≈ (m² - n²) ε²
                    (sign(m as f64 * m as f64 - n as f64 * n as f64), true)
                } else {
                    (sign(1.0 - t * t), false)
                }
            }
            (false, true) => (1, false),
            _ => (-1, false),
        }
    }
}

fn sign(x: f64) -> i8 {
    if x > 0.0 {
        1
    } else if x < 0.0 {
        -1
    } else {
        0
    }
}

pub fn boundary_value(params: &FamilyParams, theta: AngleRadians) -> f64 {
    params.boundary().value(theta.radians())
}

/// Sign-change roots on `(0, π)` plus touch points without a sign change.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct RootSet {
    pub roots: Vec<UnitRoot>,
    /// Tangency locations in `[0, π]`, ascending.
    pub tangents: Vec<f64>,
}

impl RootSet {
    /// True when `t` sits on a threshold and the root count is about to
    /// change.
    pub fn at_threshold(&self) -> bool {
        !self.tangents.is_empty()
    }

    pub fn sigmas(&self) -> Vec<f64> {
        self.roots.iter().map(UnitRoot::sigma).collect()
    }
}

pub fn find_unit_roots(params: &FamilyParams) -> RootSet {
    let f = params.boundary();
    let base = SAMPLES_PER_TERM * (params.m + params.n) as usize;
    let mut previous = scan(&f, base);
    let mut stable = 0;
    let mut samples = base;
    for _ in 0..MAX_DOUBLINGS {
        samples *= 2;
        let next = scan(&f, samples);
        let same = next.0.len() == previous.0.len() && next.1.len() == previous.1.len();
        previous = next;
        if same {
            stable += 1;
            if stable == 2 {
                break;
            }
        } else {
            stable = 0;
        }
    }
    let (sigmas, tangents) = previous;
    RootSet {
        roots: sigmas
            .into_iter()
            .enumerate()
            .map(|(i, s)| UnitRoot::from_sigma(i + 1, s))
            .collect(),
        tangents,
    }
}

fn bisect(f: &BoundaryFunction, mut lo: f64, mut hi: f64, sign_lo: i8) -> f64 {
    while hi - lo > ROOT_TOL {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let s = sign(f.value(mid));
        if s == 0 {
            return mid;
        }
        if s == sign_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Extremum of `F` on `[lo, hi]` in the direction of `s` (minimum of `s F`).
fn golden_extremum(f: &BoundaryFunction, mut lo: f64, mut hi: f64, s: i8) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let g = |x: f64| s as f64 * f.value(x);
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut g1 = g(x1);
    let mut g2 = g(x2);
    for _ in 0..80 {
        if hi - lo <= 1e-15 {
            break;
        }
        if g1 < g2 {
            hi = x2;
            x2 = x1;
            g2 = g1;
            x1 = hi - INV_PHI * (hi - lo);
            g1 = g(x1);
        } else {
            lo = x1;
            x1 = x2;
            g1 = g2;
            x2 = lo + INV_PHI * (hi - lo);
            g2 = g(x2);
        }
    }
    let x = 0.5 * (lo + hi);
    (x, f.value(x))
}

fn scan(f: &BoundaryFunction, samples: usize) -> (Vec<f64>, Vec<f64>) {
    let h = PI / samples as f64;
    let theta = |i: usize| i as f64 * h;
    let values: Vec<f64> = (0..=samples)
        .map(|i| if i == 0 || i == samples { 0.0 } else { f.value(theta(i)) })
        .collect();
    let mut signs: Vec<i8> = values.iter().map(|&v| sign(v)).collect();
    let (s0, tangent0) = f.sign_near_zero();
    let (s_pi, tangent_pi) = f.sign_near_pi();
    signs[0] = s0;
    signs[samples] = s_pi;

    let mut roots = Vec::new();
    let mut tangents = Vec::new();
    if tangent0 {
        tangents.push(0.0);
    }

    for i in 0..samples {
        let (a, b) = (signs[i], signs[i + 1]);
        if a != 0 && b != 0 && a != b {
            roots.push(bisect(f, theta(i), theta(i + 1), a));
        }
    }
    for i in 1..samples {
        if signs[i] != 0 {
            continue;
        }
        let (a, b) = (signs[i - 1], signs[i + 1]);
        if a != 0 && b != 0 && a != b {
            roots.push(theta(i));
        } else {
            tangents.push(theta(i));
        }
    }
    for i in 2..samples - 1 {
        let s = signs[i];
        if s == 0 || signs[i - 1] != s || signs[i + 1] != s {
            continue;
        }
        let (prev, cur, next) = (values[i - 1].abs(), values[i].abs(), values[i + 1].abs());
        if !(cur <= prev && cur <= next) {
            continue;
        }
        let (x, v) = golden_extremum(f, theta(i - 1), theta(i + 1), s);
        if sign(v) == -s {
            roots.push(bisect(f, theta(i - 1), x, s));
            roots.push(bisect(f, x, theta(i + 1), -s));
        } else if v.abs() < TANGENT_EPS {
            tangents.push(x);
        }
    }

    roots.sort_by(f64::total_cmp);
    roots.dedup();

    // Two crossings squeezed into the tangency window around a near-zero
    // extremum are one touch point blurred by rounding.
    let mut kept = Vec::with_capacity(roots.len());
    let mut i = 0;
    while i < roots.len() {
        if i + 1 < roots.len() {
            let (r0, r1) = (roots[i], roots[i + 1]);
            let mid = 0.5 * (r0 + r1);
            if r1 - r0 < 2.0 * TANGENT_WINDOW && f.value(mid).abs() < TANGENT_EPS {
                tangents.push(mid);
                i += 2;
                continue;
            }
        }
        kept.push(roots[i]);
        i += 1;
    }

    if tangent_pi {
        tangents.push(PI);
    }
    tangents.sort_by(f64::total_cmp);
    tangents.dedup();
    (kept, tangents)
}

/// Real polynomial, coefficients in ascending order.
#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<f64>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<f64>) -> Self {
        while coeffs.len() > 1 && coeffs.last() == Some(&0.0) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(0.0);
        }
        Polynomial { coeffs }
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    pub fn derivative(&self) -> Polynomial {
        if self.coeffs.len() <= 1 {
            return Polynomial::new(vec![0.0]);
        }
        Polynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| k as f64 * c)
                .collect(),
        )
    }

    /// Roots of odd multiplicity in the open interval `(lo, hi)`, ascending.
    ///
    /// The interval is cut at the critical points (found recursively from
    /// the derivative) so that each piece is monotone, then every piece
    /// with a sign change is bisected.
    pub fn real_roots_in(&self, lo: f64, hi: f64) -> Vec<f64> {
        if self.degree() == 0 {
            return Vec::new();
        }
        let mut cuts = vec![lo];
        cuts.extend(self.derivative().real_roots_in(lo, hi));
        cuts.push(hi);
        let mut roots = Vec::new();
        for w in cuts.windows(2) {
            let (mut a, mut b) = (w[0], w[1]);
            let (fa, fb) = (self.eval(a), self.eval(b));
            let (sa, sb) = (sign(fa), sign(fb));
            if sa == 0 || sb == 0 || sa == sb {
                continue;
            }
            loop {
                let mid = 0.5 * (a + b);
                if mid <= a || mid >= b {
                    break;
                }
                let s = sign(self.eval(mid));
                if s == 0 {
                    a = mid;
                    b = mid;
                    break;
                }
                if s == sa {
                    a = mid;
                } else {
                    b = mid;
                }
            }
            roots.push(0.5 * (a + b));
        }
        roots
    }
}

/// `2cos(kθ)` as a polynomial in `M = 2cos θ`.
fn lucas_polynomial(k: u32) -> Vec<f64> {
    let mut prev = vec![2.0];
    let mut cur = vec![0.0, 1.0];
    if k == 0 {
        return prev;
    }
    for _ in 1..k {
        let mut next = vec![0.0; cur.len() + 1];
        for (i, &c) in cur.iter().enumerate() {
            next[i + 1] += c;
        }
        for (i, &c) in prev.iter().enumerate() {
            next[i] -= c;
        }
        prev = cur;
        cur = next;
    }
    cur
}

/// `S(M)` with `F(θ) = (2 - M) S(M)` at `M = 2cos θ`.
///
/// The factor `2 - M = |1 - x|²` is the cyclotomic factor common to
/// `x^n - 1` and `x^m - 1`; unit-circle roots `e^{iσ}` of `Q` correspond to
/// roots `M = 2cos σ ∈ (-2, 2)` of `S`.
pub fn reciprocal_reduction(params: &FamilyParams) -> Polynomial {
    let t2 = params.t * params.t;
    let vn = lucas_polynomial(params.n);
    let vm = lucas_polynomial(params.m);
    let len = vn.len().max(vm.len());
    let mut p = vec![0.0; len];
    p[0] = 2.0 - 2.0 * t2;
    for (i, &c) in vn.iter().enumerate() {
        p[i] -= c;
    }
    for (i, &c) in vm.iter().enumerate() {
        p[i] += t2 * c;
    }
    // p(M) = (M - 2) q(M); synthetic division from the top.
    let deg = p.len() - 1;
    let mut q = vec![0.0; deg];
    let mut carry = 0.0;
    for i in (1..=deg).rev() {
        carry = p[i] + 2.0 * carry;
        q[i - 1] = carry;
    }
    Polynomial::new(q.into_iter().map(|c| -c).collect())
}

/// What changes at a threshold.
#[derive(Clone, Debug, PartialEq)]
pub enum ThresholdKind {
    /// The number of unit roots changes.
    RootCount { before: usize, after: usize },
    /// A root crosses a boundary `jπ/m` or `jπ/n`, so its polygon changes
    /// shape (`η = π` or `τ = π` at the crossing).
    Shape {
        before: Vec<CaseIndices>,
        after: Vec<CaseIndices>,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Threshold {
    pub t: f64,
    pub kind: ThresholdKind,
}

#[derive(Clone, Debug, PartialEq)]
struct Signature {
    count: usize,
    cases: Vec<CaseIndices>,
}

fn signature(m: u32, n: u32, t: f64) -> Result<Signature> {
    let params = FamilyParams::new(m, n, t)?;
    let roots = find_unit_roots(&params);
    let mut cases: Vec<CaseIndices> = roots
        .roots
        .iter()
        .map(|r| CaseIndices::for_sigma(m, n, r.sigma()))
        .collect();
    cases.sort();
    Ok(Signature {
        count: roots.roots.len(),
        cases,
    })
}

/// Sweep `t` over `steps` uniform intervals of `[t_lo, t_hi]` and bracket
/// every value where the root count or a polygon case changes.
pub fn threshold_scan(m: u32, n: u32, t_lo: f64, t_hi: f64, steps: usize) -> Result<Vec<Threshold>> {
    FamilyParams::new(m, n, 1.0)?;
    if !(t_lo > 0.0 && t_hi > t_lo && t_hi.is_finite()) {
        return Err(Error::Domain("sweep bounds must satisfy 0 < t_lo < t_hi"));
    }
    if steps < 2 {
        return Err(Error::Domain("sweep needs at least two steps"));
    }
    let dt = (t_hi - t_lo) / steps as f64;
    let grid = |i: usize| if i == steps { t_hi } else { t_lo + i as f64 * dt };

    let mut out = Vec::new();
    let mut left = signature(m, n, grid(0))?;
    for i in 0..steps {
        let right = signature(m, n, grid(i + 1))?;
        if left != right {
            let mut events = Vec::new();
            bracket(m, n, (grid(i), &left), (grid(i + 1), &right), &mut events)?;
            if events.len() > MAX_EVENTS_PER_STEP {
                return Err(Error::SweepResolution {
                    t_lo: grid(i),
                    t_hi: grid(i + 1),
                });
            }
            out.extend(events);
        }
        left = right;
    }
    Ok(out)
}

fn bracket(
    m: u32,
    n: u32,
    lo: (f64, &Signature),
    hi: (f64, &Signature),
    out: &mut Vec<Threshold>,
) -> Result<()> {
    let (mut a, sig_a) = lo;
    let (mut b, sig_b) = hi;
    while b - a > THRESHOLD_TOL {
        if out.len() > MAX_EVENTS_PER_STEP {
            return Ok(());
        }
        let mid = 0.5 * (a + b);
        let sig_mid = signature(m, n, mid)?;
        if sig_mid == *sig_a {
            a = mid;
        } else if sig_mid == *sig_b {
            b = mid;
        } else {
            bracket(m, n, (a, sig_a), (mid, &sig_mid), out)?;
            return bracket(m, n, (mid, &sig_mid), (b, sig_b), out);
        }
    }
    let kind = if sig_a.count != sig_b.count {
        ThresholdKind::RootCount {
            before: sig_a.count,
            after: sig_b.count,
        }
    } else {
        ThresholdKind::Shape {
            before: sig_a.cases.clone(),
            after: sig_b.cases.clone(),
        }
    };
    out.push(Threshold {
        t: 0.5 * (a + b),
        kind,
    });
    Ok(())
}
