//! Gluing and deformation equations for the ideal polyhedra, in exponent
//! form.
//!
//! With shapes `w_1..w_m` (the `t` chords) and `z_1..z_n` (the unit chords),
//! the system is
//!
//! ```text
//! w_1^α z_1^β = x²
//! w_1^{-Nα} z_1^{-Nβ} Π(1 - w_i)^{2n} Π(1 - z_j)^{-2m} = y²,   N = mn(m+n)
//! w_1 ⋯ w_m z_1 ⋯ z_n = 1,   w_1 = w_j,   z_1 = z_j
//! ```
//!
//! with `nα - mβ = 1`. Rows of `U` list the exponents of
//! `w_1..w_m, z_1..z_n` followed by those of `(1 - w_1)..(1 - z_n)`.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::mahler::{quadrature_measure, singular_points};
use crate::math;
use crate::quadrature::{integrate, DEFAULT_MAX_PANELS};
use crate::spectrum::{gcd, FamilyParams};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExponentSystem {
    pub m: u32,
    pub n: u32,
    pub alpha: i64,
    pub beta: i64,
    /// `(k + 1) × 2k` with `k = m + n`.
    pub matrix: Vec<Vec<i64>>,
}

impl ExponentSystem {
    pub fn k(&self) -> usize {
        (self.m + self.n) as usize
    }

    pub fn rows(&self) -> usize {
        self.matrix.len()
    }

    pub fn cols(&self) -> usize {
        self.matrix.first().map_or(0, Vec::len)
    }
}

fn check_pair(m: u32, n: u32) -> Result<()> {
    if m == 0 || n == 0 {
        return Err(Error::Domain("m and n must be positive"));
    }
    if m == n {
        return Err(Error::Domain("m and n must differ"));
    }
    if gcd(m as u64, n as u64) != 1 {
        return Err(Error::Domain("m and n must be coprime"));
    }
    Ok(())
}

/// Extended Euclid: `(g, x, y)` with `ax + by = g`.
fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = ext_gcd(b, a.rem_euclid(b));
        (g, y, x - a.div_euclid(b) * y)
    }
}

/// The representative of `nα - mβ = 1` with `0 ≤ α < m`, or `α = 1` when
/// `m = 1`.
pub fn canonical_representative(m: u32, n: u32) -> Result<(i64, i64)> {
    check_pair(m, n)?;
    let (m, n) = (m as i64, n as i64);
    if m == 1 {
        return Ok((1, n - 1));
    }
    let (_, x, _) = ext_gcd(n, m);
    let alpha = x.rem_euclid(m);
    Ok((alpha, (n * alpha - 1) / m))
}

pub fn build_system(m: u32, n: u32) -> Result<ExponentSystem> {
    let (alpha, beta) = canonical_representative(m, n)?;
    Ok(with_representative(m, n, alpha, beta))
}

/// Build `U` for any `(α, β)` without checking `nα - mβ = 1`.
pub fn with_representative(m: u32, n: u32, alpha: i64, beta: i64) -> ExponentSystem {
    let (mu, nu) = (m as usize, n as usize);
    let k = mu + nu;
    let big_n = (m as i64) * (n as i64) * (m as i64 + n as i64);
    let mut matrix = Vec::with_capacity(k + 1);

    let mut x_row = vec![0; 2 * k];
    x_row[0] = alpha;
    x_row[mu] = beta;
    matrix.push(x_row);

    let mut y_row = vec![0; 2 * k];
    y_row[0] = -big_n * alpha;
    y_row[mu] = -big_n * beta;
    for i in 0..mu {
        y_row[k + i] = 2 * n as i64;
    }
    for j in 0..nu {
        y_row[k + mu + j] = -2 * m as i64;
    }
    matrix.push(y_row);

    let mut product = vec![0; 2 * k];
    product[..k].iter_mut().for_each(|e| *e = 1);
    matrix.push(product);

    for (first, len) in [(0, mu), (mu, nu)] {
        for j in 1..len {
            let mut row = vec![0; 2 * k];
            row[first] = 1;
            row[first + j] = -1;
            matrix.push(row);
        }
    }

    ExponentSystem {
        m,
        n,
        alpha,
        beta,
        matrix,
    }
}

/// `U J Uᵗ` with `J = [[0, I], [-I, 0]]`, exactly.
pub fn symplectic_gram(sys: &ExponentSystem) -> Result<Vec<Vec<i128>>> {
    let k = sys.k();
    if sys.matrix.iter().any(|row| row.len() != 2 * k) {
        return Err(Error::Internal("exponent rows must have 2k entries"));
    }
    let omega = |a: &[i64], b: &[i64]| -> i128 {
        (0..k)
            .map(|i| a[i] as i128 * b[k + i] as i128 - a[k + i] as i128 * b[i] as i128)
            .sum()
    };
    Ok(sys
        .matrix
        .iter()
        .map(|a| sys.matrix.iter().map(|b| omega(a, b)).collect())
        .collect())
}

/// True iff `U J Uᵗ = 2 · diag(J₂, 0)`.
pub fn check_neumann_zagier(sys: &ExponentSystem) -> Result<bool> {
    let gram = symplectic_gram(sys)?;
    if gram.len() < 2 {
        return Err(Error::Internal("system needs the two deformation rows"));
    }
    Ok(gram.iter().enumerate().all(|(i, row)| {
        row.iter().enumerate().all(|(j, &v)| {
            let want = match (i, j) {
                (0, 1) => 2,
                (1, 0) => -2,
                _ => 0,
            };
            v == want
        })
    }))
}

/// A solution of the `x = y = 1` system: `w = u^n`, `z = u^{-m}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IdentitySolution {
    /// `u = e^{2πi j / |n² - m²|}`.
    pub j: u64,
    pub u: Complex64,
    pub w: Complex64,
    pub z: Complex64,
    /// `w = 1` or `z = 1`: the `(1 - ·)` factors vanish.
    pub degenerate: bool,
}

impl IdentitySolution {
    pub fn order(&self, modulus: u64) -> u64 {
        modulus / gcd(self.j, modulus)
    }
}

fn root_of_unity(j: u64, modulus: u64) -> Complex64 {
    let theta = 2.0 * PI * (j % modulus) as f64 / modulus as f64;
    Complex64::new(math::cos(theta), math::sin(theta))
}

/// All `u` with `u^{n²-m²} = 1` and `|1 - u^n| = |1 - u^m|`.
///
/// These are exactly the `(m+n)`-th and `|n-m|`-th roots of unity; the test
/// below is the exact congruence `j(n ∓ m) ≡ 0`. The solution `u = 1` is
/// kept and flagged as degenerate.
pub fn identity_solutions(m: u32, n: u32) -> Result<Vec<IdentitySolution>> {
    check_pair(m, n)?;
    let (m, n) = (m as u64, n as u64);
    let big = n.abs_diff(m) * (n + m);
    let (plus, minus) = (n + m, n.abs_diff(m));
    Ok((0..big)
        .filter(|j| (j * minus) % big == 0 || (j * plus) % big == 0)
        .map(|j| {
            let w_turns = (j * n) % big;
            let z_turns = (big - (j * m) % big) % big;
            IdentitySolution {
                j,
                u: root_of_unity(j, big),
                w: root_of_unity(w_turns, big),
                z: root_of_unity(z_turns, big),
                degenerate: w_turns == 0 || z_turns == 0,
            }
        })
        .collect())
}

/// `m(R̃) = (mn/2π) ∫_0^{2π} log⁺|sin nθ / sin mθ| dθ` by quadrature.
pub fn tilde_measure(m: u32, n: u32, abs_tol: f64) -> Result<f64> {
    check_pair(m, n)?;
    let mn = (m * n) as f64;
    let upper = 2.0 * PI;
    let mut breaks = vec![0.0, upper];
    // zeros of sin(qθ) are the zeros of sin(2qθ/2)
    breaks.extend(singular_points(2 * m, 2 * n, upper));
    breaks.sort_by(f64::total_cmp);
    breaks.dedup();
    let f = |theta: f64| {
        let g = math::ln(math::abs(math::sin(n as f64 * theta)))
            - math::ln(math::abs(math::sin(m as f64 * theta)));
        if g > 0.0 {
            g
        } else {
            0.0
        }
    };
    let scale = mn / (2.0 * PI);
    let r = integrate(f, &breaks, abs_tol / scale, DEFAULT_MAX_PANELS)?;
    Ok(scale * r.value)
}

/// `|mn · m(R_1) - m(R̃)|`.
pub fn tilde_measure_check(m: u32, n: u32, abs_tol: f64) -> Result<f64> {
    let params = FamilyParams::new(m, n, 1.0)?;
    let lhs = (m * n) as f64 * quadrature_measure(&params, abs_tol)?;
    let rhs = tilde_measure(m, n, abs_tol)?;
    Ok(math::abs(lhs - rhs))
}
