//! Bloch-Wigner dilogarithm and the Clausen function.
//!
//! `D(z) = Im Li2(z) + log|z| arg(1 - z)` is evaluated by mapping `z` into
//! the region `|z| <= 1, Re z <= 1/2` with the inversion `D(1/z) = -D(z)` and
//! reflection `D(1 - z) = -D(z)`. Inside that region the power series of
//! `Li2` is used for `|z| <= 1/2` and the Bernoulli expansion in
//! `-log(1 - z)` otherwise.
//!
//! On the unit circle `D(e^{iθ}) = Cl2(θ) = Σ sin(kθ)/k²`, computed by
//! [`clausen_volume`] from the Bernoulli expansion of `Cl2` about zero. The
//! two routes share no code beyond the float primitives.

use core::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::math;

/// Complex argument of the dilogarithm.
pub type ComplexValue = Complex64;

/// Largest value of `D`, attained at `e^{iπ/3}`.
pub const D_MAX: f64 = 1.014_941_606_409_653_6;

/// An angle reduced to the canonical range `(-π, π]`.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct AngleRadians(pub(crate) f64);

impl AngleRadians {
    pub fn new(theta: f64) -> Result<Self> {
        if !theta.is_finite() {
            return Err(Error::Domain("angle must be finite"));
        }
        Ok(AngleRadians(normalize(theta)))
    }

    pub fn radians(self) -> f64 {
        self.0
    }
}

/// Reduce a finite angle to `(-π, π]`.
pub(crate) fn normalize(theta: f64) -> f64 {
    if theta > -PI && theta <= PI {
        return theta;
    }
    let turns = math::round(theta / (2.0 * PI));
    let mut r = theta - turns * (2.0 * PI);
    if r <= -PI {
        r += 2.0 * PI;
    } else if r > PI {
        r -= 2.0 * PI;
    }
    r
}

/// `B_{2j} / (2j+1)!` for `j = 1, 2, ...`.
const LI2_BERNOULLI: [f64; 22] = [
    2.777_777_777_777_777_8e-2,
    -2.777_777_777_777_777_8e-4,
    4.724_111_866_969_009_8e-6,
    -9.185_773_074_661_963_6e-8,
    1.897_886_998_897_099_9e-9,
    -4.064_761_645_144_225_5e-11,
    8.921_691_020_456_452_6e-13,
    -1.993_929_586_072_107_6e-14,
    4.518_980_029_619_918_2e-16,
    -1.035_651_761_218_124_7e-17,
    2.395_218_621_026_186_7e-19,
    -5.581_785_874_325_009_3e-21,
    1.309_150_755_418_321_3e-22,
    -3.087_419_802_426_740_3e-24,
    7.315_975_652_702_203_4e-26,
    -1.740_845_657_234_000_7e-27,
    4.157_635_644_613_899_7e-29,
    -9.962_148_488_284_622_1e-31,
    2.394_034_424_896_165_3e-32,
    -5.768_347_355_367_390_1e-34,
    1.393_179_479_647_008e-35,
    -3.372_121_965_485_089_5e-37,
];

/// `|B_{2j}| / (2j (2j+1)!)` for `j = 1, 2, ...`.
const CL2_BERNOULLI: [f64; 29] = [
    1.388_888_888_888_888_9e-2,
    6.944_444_444_444_444_4e-5,
    7.873_519_778_281_683e-7,
    1.148_221_634_332_745_4e-8,
    1.897_886_998_897_099_9e-10,
    3.387_301_370_953_521_3e-12,
    6.372_636_443_183_180_4e-14,
    1.246_205_991_295_067_2e-15,
    2.510_544_460_899_954_6e-17,
    5.178_258_806_090_623_5e-19,
    1.088_735_736_830_084_9e-20,
    2.325_744_114_302_087_2e-22,
    5.035_195_213_147_389_6e-24,
    1.102_649_929_438_121_5e-25,
    2.438_658_550_900_734_5e-27,
    5.440_142_678_856_252_3e-29,
    1.222_834_013_121_735_2e-30,
    2.767_263_468_967_950_6e-32,
    6.300_090_591_832_013_9e-34,
    1.442_086_838_841_847_5e-35,
    3.317_093_999_159_542_8e-37,
    7.663_913_557_920_657_9e-39,
    1.777_871_473_383_065_8e-40,
    4.139_605_898_234_137_3e-42,
    9.671_557_036_081_101_8e-44,
    2.266_718_701_676_612_4e-45,
    5.327_956_311_328_254e-47,
    1.255_724_838_956_433_6e-48,
    2.967_000_542_247_094_2e-50,
];

/// The Bloch-Wigner dilogarithm `D(z)`.
///
/// Real arguments (including the branch points 0 and 1) return exactly zero.
pub fn bloch_wigner(z: ComplexValue) -> Result<f64> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::Domain("dilogarithm argument must be finite"));
    }
    Ok(bloch_wigner_finite(z))
}

pub(crate) fn bloch_wigner_finite(z: ComplexValue) -> f64 {
    if z.im == 0.0 {
        return 0.0;
    }
    if z.norm_sqr() > 1.0 {
        -in_unit_disk(z.inv())
    } else {
        in_unit_disk(z)
    }
}

// |z| <= 1
fn in_unit_disk(z: ComplexValue) -> f64 {
    if z.re > 0.5 {
        -in_left_region(Complex64::new(1.0, 0.0) - z)
    } else {
        in_left_region(z)
    }
}

// |z| <= 1 and Re z <= 1/2
fn in_left_region(z: ComplexValue) -> f64 {
    let one_minus = Complex64::new(1.0 - z.re, -z.im);
    let log_term = 0.5 * math::ln(z.norm_sqr()) * one_minus.arg();
    let li2_im = if z.norm_sqr() <= 0.25 {
        li2_power_series(z).im
    } else {
        li2_bernoulli(-one_minus.ln()).im
    };
    li2_im + log_term
}

fn li2_power_series(z: ComplexValue) -> ComplexValue {
    let mut acc = Complex64::new(0.0, 0.0);
    let mut power = z;
    let mut k = 1.0_f64;
    loop {
        let term = power / (k * k);
        acc += term;
        if term.norm_sqr() <= 1e-36 * acc.norm_sqr() || k > 200.0 {
            break;
        }
        power *= z;
        k += 1.0;
    }
    acc
}

// Li2(z) = u - u²/4 + Σ_j B_{2j} u^{2j+1} / (2j+1)!,  u = -log(1 - z)
fn li2_bernoulli(u: ComplexValue) -> ComplexValue {
    let w = u * u;
    let mut p = Complex64::new(0.0, 0.0);
    for &c in LI2_BERNOULLI.iter().rev() {
        p = p * w + c;
    }
    u - w * 0.25 + u * w * p
}

/// `D(e^{iθ})`, the Clausen function `Cl2(θ) = Σ sin(kθ)/k²`.
pub fn clausen_volume(theta: AngleRadians) -> f64 {
    clausen(theta.radians())
}

/// Clausen function for any finite angle.
pub(crate) fn clausen(theta: f64) -> f64 {
    let theta = normalize(theta);
    if theta == 0.0 || theta == PI {
        return 0.0;
    }
    let x = math::abs(theta);
    let w = x * x;
    let mut p = 0.0;
    for &c in CL2_BERNOULLI.iter().rev() {
        p = p * w + c;
    }
    let value = x - x * math::ln(x) + x * w * p;
    if theta < 0.0 {
        -value
    } else {
        value
    }
}

/// Volume `D(e^{iω})/2` of the orthoscheme over an isosceles triangle with
/// central angle `ω ∈ (0, π]`.
pub fn orthoscheme_volume(central_angle: AngleRadians) -> Result<f64> {
    let omega = central_angle.radians();
    if omega <= 0.0 {
        return Err(Error::Domain("central angle must lie in (0, π]"));
    }
    Ok(0.5 * clausen(omega))
}
