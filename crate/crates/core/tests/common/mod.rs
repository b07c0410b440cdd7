//! Reference computations that share no code with the library.

#![allow(dead_code)]

use std::f64::consts::PI;

use num_complex::Complex64;

/// Kahan-Babuska summation.
#[derive(Default)]
pub struct Sum {
    s: f64,
    c: f64,
}

impl Sum {
    pub fn add(&mut self, x: f64) {
        let t = self.s + x;
        if self.s.abs() >= x.abs() {
            self.c += (self.s - t) + x;
        } else {
            self.c += (x - t) + self.s;
        }
        self.s = t;
    }

    pub fn value(&self) -> f64 {
        self.s + self.c
    }
}

/// `Σ_{k≥1} sin(kθ)/k²`, truncated at `terms` with the leading Abel tail
/// `cos((N + 1/2)θ) / (2 sin(θ/2) (N+1)²)`.
pub fn clausen_sine_series(theta: f64, terms: usize) -> f64 {
    let theta = theta.rem_euclid(2.0 * PI);
    if theta == 0.0 {
        return 0.0;
    }
    let mut s = Sum::default();
    for k in 1..=terms {
        let k = k as f64;
        s.add((k * theta).sin() / (k * k));
    }
    let n = terms as f64;
    s.add(((n + 0.5) * theta).cos() / (2.0 * (theta / 2.0).sin() * (n + 1.0) * (n + 1.0)));
    s.value()
}

fn simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, tol: f64, depth: u32) -> f64 {
    let m = 0.5 * (a + b);
    let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
    let (flm, frm) = (f(lm), f(rm));
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let diff = left + right - whole;
    if depth == 0 || diff.abs() <= 15.0 * tol {
        left + right + diff / 15.0
    } else {
        simpson(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1)
            + simpson(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
    }
}

/// Adaptive Simpson on `[a, b]`.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> f64 {
    let (fa, fm, fb) = (f(a), f(0.5 * (a + b)), f(b));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    simpson(&f, a, b, fa, fm, fb, whole, tol, 40)
}

/// `D(z) = Im Li₂(z) + log|z| arg(1 - z)` with
/// `Im Li₂(z) = -∫_0^1 arg(1 - zs)/s ds`.
pub fn bloch_wigner_by_integral(z: Complex64) -> f64 {
    let integrand = |s: f64| {
        if s == 0.0 {
            -z.im
        } else {
            (Complex64::new(1.0, 0.0) - z * s).arg() / s
        }
    };
    let im_li2 = -adaptive_simpson(integrand, 0.0, 1.0, 1e-14);
    im_li2 + z.norm().ln() * (Complex64::new(1.0, 0.0) - z).arg()
}

/// `D(z)` from the power series of `Li₂`, for `|z| ≤ 0.8`.
pub fn bloch_wigner_by_series(z: Complex64) -> f64 {
    assert!(z.norm() <= 0.8);
    let mut im = Sum::default();
    let mut p = z;
    for k in 1..400 {
        im.add(p.im / (k * k) as f64);
        p *= z;
    }
    im.value() + z.norm().ln() * (Complex64::new(1.0, 0.0) - z).arg()
}

/// Adaptive Simpson summed over consecutive breakpoints.
pub fn piecewise_integral<F: Fn(f64) -> f64 + Copy>(f: F, breaks: &[f64], tol: f64) -> f64 {
    let mut s = Sum::default();
    for w in breaks.windows(2) {
        s.add(adaptive_simpson(f, w[0], w[1], tol));
    }
    s.value()
}

/// Plain bisection of a continuous function with a sign change.
pub fn bisect<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64) -> f64 {
    let flo = f(lo);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if (f(mid) > 0.0) == (flo > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

pub fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Coprime `(m, n)` with `m ≠ n` and `m + n ≤ max_sum`.
pub fn coprime_pairs(max_sum: u32) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    for s in 3..=max_sum {
        for m in 1..s {
            let n = s - m;
            if m != n && gcd(m, n) == 1 {
                out.push((m, n));
            }
        }
    }
    out
}

// Reference values computed to 30 digits with arbitrary-precision arithmetic.
pub const D_I: f64 = 0.915965594177219015054603514932;
pub const D_SIXTH: f64 = 1.01494160640965362502120255427;
pub const D_ZETA5: f64 = 0.997354691398414778667283575322;
pub const D_ZETA5_SQ: f64 = 0.425077822401327919378344242132;
pub const D_THIRD: f64 = 0.676627737606435750014135036183;
pub const SMYTH: f64 = 0.323065947219450514093636510724;
