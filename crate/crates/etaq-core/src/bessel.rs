//! Modified Bessel functions I₁ and I_{3/2} with the rigorous elementary
//! bounds the certification layer leans on.
//!
//! Only these two orders appear in the exact formulas, so each gets a
//! specialized evaluator: I_{3/2} has an elementary closed form, and I₁
//! combines the ascending series with a Chebyshev expansion for large
//! arguments. Exp-scaled variants keep very large arguments inside f64 range.

use crate::error::EtaqError;
use crate::Result;
use std::f64::consts::PI;

/// The two Bessel orders used by the exact formulas.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BesselOrder {
    One,
    ThreeHalves,
}

impl BesselOrder {
    pub fn as_f64(self) -> f64 {
        match self {
            BesselOrder::One => 1.0,
            BesselOrder::ThreeHalves => 1.5,
        }
    }
}

/// Chebyshev coefficients for e^{−x} I₁(x) √x on x ∈ (8, ∞), evaluated at
/// 32/x − 2 (the classic Cephes interval map).
const I1_CHEB_LARGE: [f64; 25] = [
    7.517_296_310_842_104_8e-18,
    4.414_348_323_071_707_9e-18,
    -4.650_305_368_489_358_3e-17,
    -3.209_525_921_993_424_0e-17,
    2.962_628_997_645_950_1e-16,
    3.308_202_310_920_928_3e-16,
    -1.880_354_775_510_782_4e-15,
    -3.814_403_072_437_007_8e-15,
    1.042_027_698_412_880_3e-14,
    4.272_440_016_711_951_4e-14,
    -2.101_541_842_772_664_3e-14,
    -4.083_551_111_092_197_3e-13,
    -7.198_551_776_245_908_5e-13,
    2.035_628_544_147_089_5e-12,
    1.412_580_743_661_378_1e-11,
    3.252_603_583_015_488_2e-11,
    -1.897_495_812_350_541_2e-11,
    -5.589_743_462_196_583_8e-10,
    -3.835_380_385_964_237_0e-9,
    -2.631_468_846_889_519_5e-8,
    -2.512_236_237_870_208_9e-7,
    -3.882_564_808_877_690_4e-6,
    -1.105_889_387_626_237_2e-4,
    -9.761_097_491_361_468_4e-3,
    7.785_762_350_182_801_2e-1,
];

/// Clenshaw recurrence for a Chebyshev series.
fn chbevl(x: f64, coeffs: &[f64]) -> f64 {
    let mut b0 = coeffs[0];
    let mut b1 = 0.0;
    let mut b2 = 0.0;
    for &c in &coeffs[1..] {
        b2 = b1;
        b1 = b0;
        b0 = x * b1 + c - b2;
    }
    0.5 * (b0 - b2)
}

/// Ascending series for I₁, accurate through the x ≈ 15 seam.
fn i1_series(x: f64) -> f64 {
    let mut total = 0.0;
    let mut term = x / 2.0;
    let q = x * x / 4.0;
    let mut m = 0u32;
    loop {
        total += term;
        m += 1;
        term *= q / (m as f64 * (m as f64 + 1.0));
        if term < 1e-20 * total.max(1e-300) {
            return total;
        }
    }
}

/// e^{−x} I₁(x) for x > 8 via the Chebyshev expansion.
fn i1_scaled_large(x: f64) -> f64 {
    chbevl(32.0 / x - 2.0, &I1_CHEB_LARGE) / x.sqrt()
}

const I1_SEAM: f64 = 15.0;

/// Closed form I_{3/2}(x) = √(2/(πx)) (cosh x − sinh x / x), stable for
/// x not too small.
pub fn i32_closed(x: f64) -> f64 {
    (2.0 / (PI * x)).sqrt() * (x.cosh() - x.sinh() / x)
}

/// I_{3/2}(x) with the bracket evaluated as the series
/// cosh x − sinh x/x = Σ_{m≥1} x^{2m}·2m/(2m+1)!, immune to the cancellation
/// that degrades the closed form at small x.
pub fn i32_series(x: f64) -> f64 {
    let x2 = x * x;
    let mut total = 0.0;
    // term_m = x^{2m} * 2m / (2m+1)!
    let mut m = 1u32;
    let mut pow = x2; // x^{2m}
    let mut fact = 6.0; // (2m+1)! at m=1
    loop {
        let term = pow * (2.0 * m as f64) / fact;
        total += term;
        if term < 1e-22 * total.max(1e-300) {
            break;
        }
        m += 1;
        pow *= x2;
        fact *= (2.0 * m as f64) * (2.0 * m as f64 + 1.0);
    }
    (2.0 / (PI * x)).sqrt() * total
}

const I32_SEAM: f64 = 0.5;

/// Modified Bessel function I_ν(x) for ν ∈ {1, 3/2}, x ≥ 0.
pub fn bessel_i(order: BesselOrder, x: f64) -> f64 {
    assert!(x >= 0.0 && x.is_finite(), "bessel_i needs finite x >= 0");
    if x == 0.0 {
        return 0.0;
    }
    match order {
        BesselOrder::One => {
            if x <= I1_SEAM {
                i1_series(x)
            } else {
                x.exp() * i1_scaled_large(x)
            }
        }
        BesselOrder::ThreeHalves => {
            if x >= I32_SEAM {
                i32_closed(x)
            } else {
                i32_series(x)
            }
        }
    }
}

/// Exp-scaled e^{−x} I_ν(x); finite for arguments far beyond f64's e^x range.
pub fn bessel_i_scaled(order: BesselOrder, x: f64) -> f64 {
    assert!(x >= 0.0 && x.is_finite(), "bessel_i_scaled needs finite x >= 0");
    if x == 0.0 {
        return 0.0;
    }
    match order {
        BesselOrder::One => {
            if x <= I1_SEAM {
                i1_series(x) * (-x).exp()
            } else {
                i1_scaled_large(x)
            }
        }
        BesselOrder::ThreeHalves => {
            if x >= I32_SEAM {
                // √(2/(πx)) ((1 + e^{−2x})/2 − (1 − e^{−2x})/(2x))
                let e = (-2.0 * x).exp();
                (2.0 / (PI * x)).sqrt() * ((1.0 + e) / 2.0 - (1.0 - e) / (2.0 * x))
            } else {
                i32_series(x) * (-x).exp()
            }
        }
    }
}

/// Upper bound for 0 ≤ x < 1: I_κ(x) ≤ 2^{1−κ} x^κ / Γ(κ+1).
pub fn bound_small(order: BesselOrder, x: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&x) {
        return Err(EtaqError::Domain(format!(
            "small-argument bound needs 0 <= x < 1, got {x}"
        )));
    }
    Ok(match order {
        // 2^0 · x / Γ(2) = x
        BesselOrder::One => x,
        // 2^{−1/2} x^{3/2} / Γ(5/2), Γ(5/2) = (3/4)√π
        BesselOrder::ThreeHalves => {
            x.powf(1.5) / (2.0f64.sqrt() * 0.75 * PI.sqrt())
        }
    })
}

/// Upper bound for x ≥ 1: I_κ(x) ≤ √(2/(πx)) e^x. Returned exp-scaled
/// (multiply by e^x), so it stays finite for any argument.
pub fn bound_large_scaled(order: BesselOrder, x: f64) -> Result<f64> {
    let _ = order; // holds for both orders
    if x < 1.0 {
        return Err(EtaqError::Domain(format!(
            "large-argument bound needs x >= 1, got {x}"
        )));
    }
    Ok((2.0 / (PI * x)).sqrt())
}

/// Unscaled version of [`bound_large_scaled`]; overflows to ∞ past e^x range.
pub fn bound_large(order: BesselOrder, x: f64) -> Result<f64> {
    Ok(bound_large_scaled(order, x)? * x.exp())
}

/// Lower bound for x ≥ 3 (orders 1 and 3/2): I_κ(x) ≥ e^x/(4√x). Returned
/// exp-scaled.
pub fn bound_lower_scaled(order: BesselOrder, x: f64) -> Result<f64> {
    let _ = order;
    if x < 3.0 {
        return Err(EtaqError::Domain(format!(
            "lower bound needs x >= 3, got {x}"
        )));
    }
    Ok(1.0 / (4.0 * x.sqrt()))
}

/// Unscaled version of [`bound_lower_scaled`].
pub fn bound_lower(order: BesselOrder, x: f64) -> Result<f64> {
    Ok(bound_lower_scaled(order, x)? * x.exp())
}
