//! The eta multiplier system: the 24th-root-of-unity factor ω_{h,k} attached
//! to modular inversion, the derived quotient characters χ₁, χ₂, χ₃, and the
//! Kloosterman-type complete exponential sums they reduce to.
//!
//! All characters are computed in exact rational "turns" (see
//! [`RootOfUnity`]), so identities between them can be tested with equality
//! rather than floating-point tolerance.

use crate::arith::{divisor_count, h_prime, kronecker};
use crate::error::EtaqError;
use crate::roots::RootOfUnity;
use crate::Result;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::Ratio;
use rayon::prelude::*;
use std::f64::consts::PI;

/// ω_{h,k} for gcd(h,k) = 1, using the literal value of h (h ≥ k is allowed
/// and is not reduced; the characters below rely on that convention).
pub fn omega(h: u64, k: u64) -> Result<RootOfUnity> {
    if k == 0 {
        return Err(EtaqError::Domain("omega needs k >= 1".into()));
    }
    if h.gcd(&k) != 1 {
        return Err(EtaqError::NotCoprime { a: h as i128, b: k as i128 });
    }
    omega_with_hp(h, k, h_prime(h, k, 1)?)
}

/// ω_{h,k} with a caller-chosen h′ (any representative with h·h′ ≡ −1 mod k
/// gives the same root of unity).
pub fn omega_with_hp(h: u64, k: u64, hp: u64) -> Result<RootOfUnity> {
    let (hi, ki, hpi) = (h as i128, k as i128, hp as i128);
    if k > 1 && (hi * hpi + 1) % ki != 0 {
        return Err(EtaqError::Domain(format!(
            "h'={hp} is not a negative inverse of {h} mod {k}"
        )));
    }
    let common = Ratio::new(ki * ki - 1, 12 * ki) * Ratio::from_integer(2 * hi - hpi + hi * hi * hpi);
    let (x, kr) = if h % 2 == 1 {
        (Ratio::new(2 - hi * ki - hi, 4) + common, kronecker(-(k as i64), h as i64))
    } else {
        // coprimality forces k odd here
        (Ratio::new(ki - 1, 4) + common, kronecker(-(h as i64), k as i64))
    };
    let mut turns = -x / 2;
    if kr == -1 {
        turns += Ratio::new(1, 2);
    }
    Ok(RootOfUnity::from_turns(turns))
}

/// Relative residual of the modular transformation that defines ω: with
/// q = e^{2πi(h+iz)/k} and q₁ = e^{2πi(h′+i/z)/k},
///   P(q) = ω_{h,k} √z · e^{(π/12k)(1/z − z)} · P(q₁)
/// where P is the partition generating function. Near-zero residual pins the
/// exact-arithmetic ω to the analytic object it represents.
pub fn omega_numeric_residual(h: u64, k: u64, z: Complex64) -> Result<f64> {
    let hp = h_prime(h, k, 1)?;
    let om = omega(h, k)?;
    // partition numbers as f64; 400 terms is plenty for |q| well below 1
    const N: usize = 400;
    let mut p = [0f64; N + 1];
    p[0] = 1.0;
    let mut pi_exact = vec![0u128; N + 1];
    pi_exact[0] = 1;
    for part in 1..=N {
        for n in part..=N {
            pi_exact[n] += pi_exact[n - part];
        }
    }
    for (dst, &src) in p.iter_mut().zip(pi_exact.iter()) {
        *dst = src as f64;
    }
    let p_of = |q: Complex64| -> Complex64 {
        let mut s = Complex64::new(0.0, 0.0);
        let mut qn = Complex64::new(1.0, 0.0);
        for &pn in p.iter() {
            s += pn * qn;
            qn *= q;
        }
        s
    };
    let i = Complex64::new(0.0, 1.0);
    let kf = k as f64;
    let q = ((2.0 * PI * i / kf) * (Complex64::new(h as f64, 0.0) + i * z)).exp();
    let q1 = ((2.0 * PI * i / kf) * (Complex64::new(hp as f64, 0.0) + i / z)).exp();
    let lhs = p_of(q);
    let rhs = om.value() * z.sqrt() * ((PI / (12.0 * kf)) * (1.0 / z - z)).exp() * p_of(q1);
    Ok((lhs - rhs).norm() / lhs.norm())
}

/// χ₁(h,k) = ω²_{h,k/5} / ω_{h,k}, defined for 5 | k.
pub fn chi1(h: u64, k: u64) -> Result<RootOfUnity> {
    if k % 5 != 0 {
        return Err(EtaqError::Domain(format!("chi1 needs 5 | k, got k={k}")));
    }
    Ok(omega(h, k / 5)?.pow(2) / omega(h, k)?)
}

/// χ₂(h,k) = ω³_{h,k/4} / (ω_{h,k} ω²_{h,k/2}), defined for 4 | k, computed
/// literally from the definition.
pub fn chi2_definition(h: u64, k: u64) -> Result<RootOfUnity> {
    if k % 4 != 0 {
        return Err(EtaqError::Domain(format!("chi2 needs 4 | k, got k={k}")));
    }
    Ok(omega(h, k / 4)?.pow(3) / (omega(h, k)? * omega(h, k / 2)?.pow(2)))
}

/// χ₂(h,k) in closed form: e(((−5k²/2 + 7)h − (5k²/4 + 7)h′) / 24k) with
/// h·h′ ≡ −1 (mod 8·gcd(k,3)·k). Equal to [`chi2_definition`] for every 4 | k.
pub fn chi2(h: u64, k: u64) -> Result<RootOfUnity> {
    if k % 4 != 0 {
        return Err(EtaqError::Domain(format!("chi2 needs 4 | k, got k={k}")));
    }
    if h.gcd(&k) != 1 {
        return Err(EtaqError::NotCoprime { a: h as i128, b: k as i128 });
    }
    let m = 8 * k.gcd(&3); // 8·gcd(k,3)
    let hp = h_prime(h, k, m)? as i128;
    let (hi, ki) = (h as i128, k as i128);
    let num = (-5 * ki * ki / 2 + 7) * hi - (5 * ki * ki / 4 + 7) * hp;
    Ok(RootOfUnity::from_frac(num, 24 * ki))
}

/// χ₃(h,k) = ω⁵_{h,k/3} / ω⁹_{h,k}, defined for 3 | k.
pub fn chi3(h: u64, k: u64) -> Result<RootOfUnity> {
    if k % 3 != 0 {
        return Err(EtaqError::Domain(format!("chi3 needs 3 | k, got k={k}")));
    }
    Ok(omega(h, k / 3)?.pow(5) / omega(h, k)?.pow(9))
}

/// A real Kloosterman-type sum value together with a rigorous bound on the
/// floating-point evaluation error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KloostermanValue {
    pub value: f64,
    pub abs_error: f64,
}

/// K_k(n, m) = Σ_{h mod k, gcd(h,k)=1} cos(2π(nh + mh′)/k), with
/// h·h′ ≡ −1 (mod k). Real by the h ↔ k−h symmetry.
pub fn kloosterman_k(k: u64, n: i64, m: i64) -> KloostermanValue {
    assert!(k >= 1, "kloosterman_k needs k >= 1");
    let ki = k as i128;
    let mut sum = 0.0f64;
    let mut comp = 0.0f64; // Kahan compensation
    let mut terms = 0u64;
    for h in 0..k {
        if h.gcd(&k) != 1 {
            continue;
        }
        let hp = h_prime(h, k, 1).expect("coprime by construction");
        let r = ((n as i128) * (h as i128) + (m as i128) * (hp as i128)).rem_euclid(ki);
        let x = (2.0 * PI * r as f64 / k as f64).cos();
        // Kahan step
        let y = x - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        terms += 1;
    }
    KloostermanValue { value: sum, abs_error: 5e-15 * terms as f64 + 1e-16 }
}

/// Weil-type bound: |K_k(n,m)| ≤ √gcd(n,m,k) · d(k) · √k.
pub fn weil_bound(k: u64, n: i64, m: i64) -> f64 {
    let g = n.unsigned_abs().gcd(&m.unsigned_abs()).gcd(&k);
    (g as f64).sqrt() * divisor_count(k) as f64 * (k as f64).sqrt()
}

/// Outcome of sweeping the Weil-type bound over a (k, n, m) box.
#[derive(Debug, Clone)]
pub struct WeilSweepReport {
    pub checked: u64,
    pub max_ratio: f64,
    pub violations: Vec<(u64, i64, i64)>,
}

/// Checks |K_k(n,m)| ≤ √gcd(n,m,k)·d(k)·√k for all 1 ≤ k ≤ k_max and
/// |n|, |m| ≤ nm_max. Builds each K via a shared cosine table per k and
/// incremental index stepping, parallel over k.
pub fn weil_sweep(k_max: u64, nm_max: i64) -> WeilSweepReport {
    let per_k: Vec<(u64, f64, Vec<(u64, i64, i64)>)> = (1..=k_max)
        .into_par_iter()
        .map(|k| {
            let w = (2 * nm_max + 1) as usize;
            let cos_table: Vec<f64> =
                (0..k).map(|r| (2.0 * PI * r as f64 / k as f64).cos()).collect();
            let mut acc = vec![0.0f64; w * w];
            let ki = k as i128;
            for h in 0..k {
                if h.gcd(&k) != 1 {
                    continue;
                }
                let hp = h_prime(h, k, 1).expect("coprime");
                let h_step = (h % k) as usize;
                let hp_step = (hp % k) as usize;
                // index of (n, m) = (−nm_max, −nm_max)
                let base = ((-nm_max as i128) * (h as i128)
                    + (-nm_max as i128) * (hp as i128))
                    .rem_euclid(ki) as usize;
                let mut row_idx = base;
                for row in 0..w {
                    let mut idx = row_idx;
                    let acc_row = &mut acc[row * w..(row + 1) * w];
                    for cell in acc_row.iter_mut() {
                        *cell += cos_table[idx];
                        idx += hp_step;
                        if idx >= k as usize {
                            idx -= k as usize;
                        }
                    }
                    row_idx += h_step;
                    if row_idx >= k as usize {
                        row_idx -= k as usize;
                    }
                }
            }
            let mut max_ratio = 0.0f64;
            let mut violations = Vec::new();
            let mut checked = 0u64;
            for (row, n) in (-nm_max..=nm_max).enumerate() {
                for (col, m) in (-nm_max..=nm_max).enumerate() {
                    let kv = acc[row * w + col];
                    let bound = weil_bound(k, n, m);
                    let ratio = kv.abs() / bound;
                    if ratio > max_ratio {
                        max_ratio = ratio;
                    }
                    if kv.abs() > bound * (1.0 + 1e-12) + 1e-9 {
                        violations.push((k, n, m));
                    }
                    checked += 1;
                }
            }
            (checked, max_ratio, violations)
        })
        .collect();
    let mut report =
        WeilSweepReport { checked: 0, max_ratio: 0.0, violations: Vec::new() };
    for (c, r, v) in per_k {
        report.checked += c;
        report.max_ratio = report.max_ratio.max(r);
        report.violations.extend(v);
    }
    report
}

/// The χ₂ character sum A_k(n) = Σ_{h mod k, gcd=1} χ₂(h,k) e(−nh/k),
/// summed literally (complex; imaginary part vanishes identically).
pub fn a_k_direct(k: u64, n: u64) -> Result<Complex64> {
    if k % 4 != 0 {
        return Err(EtaqError::Domain(format!("a_k needs 4 | k, got k={k}")));
    }
    let mut s = Complex64::new(0.0, 0.0);
    for h in 0..k {
        if h.gcd(&k) != 1 {
            continue;
        }
        let phase = chi2(h, k)?
            * RootOfUnity::from_frac(-((n as i128) * (h as i128)), k as i128);
        s += phase.value();
    }
    Ok(s)
}

/// A_k(n) through its Kloosterman reduction:
///   3 | k:  K_{24k}(−5k²/2 + 7 − 24n, −5k²/4 − 7) / 24
///   3 ∤ k:  K_{8k}((−5k²/2 + 7)/3 − 8n, (−5k²/4 − 7)/3) / 8
/// (for 3 ∤ k both shifted arguments are exactly divisible by 3).
pub fn a_k_reduced(k: u64, n: u64) -> Result<f64> {
    if k % 4 != 0 {
        return Err(EtaqError::Domain(format!("a_k needs 4 | k, got k={k}")));
    }
    let ki = k as i128;
    let ni = n as i128;
    let a_raw = -5 * ki * ki / 2 + 7;
    let b_raw = -5 * ki * ki / 4 - 7;
    let value = if k % 3 == 0 {
        kloosterman_k(24 * k, (a_raw - 24 * ni) as i64, b_raw as i64).value / 24.0
    } else {
        assert_eq!(a_raw.rem_euclid(3), 0, "argument must be divisible by 3");
        assert_eq!(b_raw.rem_euclid(3), 0, "argument must be divisible by 3");
        kloosterman_k(8 * k, (a_raw / 3 - 8 * ni) as i64, (b_raw / 3) as i64).value / 8.0
    };
    Ok(value)
}

/// Uniform bound |A_k(n)| ≤ ½ √(7k/2) d(24k).
pub fn a_k_bound(k: u64) -> f64 {
    0.5 * (7.0 * k as f64 / 2.0).sqrt() * divisor_count(24 * k) as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Ratio;

    fn turns(h: u64, k: u64) -> Ratio<i128> {
        omega(h, k).unwrap().turns()
    }

    #[test]
    fn omega_frozen_turns() {
        assert_eq!(turns(0, 1), Ratio::new(0, 1));
        assert_eq!(turns(1, 2), Ratio::new(0, 1));
        assert_eq!(turns(1, 3), Ratio::new(1, 36));
        assert_eq!(turns(2, 3), Ratio::new(35, 36));
        assert_eq!(turns(1, 4), Ratio::new(1, 16));
        assert_eq!(turns(3, 4), Ratio::new(15, 16));
        assert_eq!(turns(1, 5), Ratio::new(1, 10));
        assert_eq!(turns(2, 5), Ratio::new(0, 1));
        assert_eq!(turns(3, 5), Ratio::new(0, 1));
        assert_eq!(turns(4, 5), Ratio::new(9, 10));
        assert_eq!(turns(1, 6), Ratio::new(5, 36));
        assert_eq!(turns(5, 6), Ratio::new(31, 36));
        assert_eq!(turns(3, 10), Ratio::new(0, 1));
        assert_eq!(turns(7, 12), Ratio::new(1, 144));
        assert_eq!(turns(5, 24), Ratio::new(53, 288));
        assert_eq!(turns(11, 20), Ratio::new(7, 80));
    }

    #[test]
    fn omega_rejects_non_coprime() {
        assert!(omega(2, 4).is_err());
        assert!(omega(3, 9).is_err());
        assert!(omega(1, 0).is_err());
    }

    #[test]
    fn omega_branches_agree_when_both_odd() {
        // when h and k are both odd either branch formula may be used
        for k in (1..=51u64).step_by(2) {
            for h in (1..k.max(2)).step_by(2) {
                if h.gcd(&k) != 1 {
                    continue;
                }
                let hp = h_prime(h, k, 1).unwrap();
                let (hi, ki, hpi) = (h as i128, k as i128, hp as i128);
                let common = Ratio::new(ki * ki - 1, 12 * ki)
                    * Ratio::from_integer(2 * hi - hpi + hi * hi * hpi);
                let x1 = Ratio::new(2 - hi * ki - hi, 4) + common;
                let k1 = kronecker(-(k as i64), h as i64);
                let x2 = Ratio::new(ki - 1, 4) + common;
                let k2 = kronecker(-(h as i64), k as i64);
                let mut t1 = -x1 / 2;
                if k1 == -1 {
                    t1 += Ratio::new(1, 2);
                }
                let mut t2 = -x2 / 2;
                if k2 == -1 {
                    t2 += Ratio::new(1, 2);
                }
                assert_eq!(
                    RootOfUnity::from_turns(t1),
                    RootOfUnity::from_turns(t2),
                    "h={h} k={k}"
                );
            }
        }
    }

    #[test]
    fn omega_independent_of_hp_representative() {
        for k in 1..=40u64 {
            for h in 0..k.max(1) {
                if h.gcd(&k) != 1 {
                    continue;
                }
                let hp = h_prime(h, k, 1).unwrap();
                let base = omega_with_hp(h, k, hp).unwrap();
                for j in 1..=3u64 {
                    assert_eq!(omega_with_hp(h, k, hp + j * k).unwrap(), base, "h={h} k={k}");
                }
            }
        }
    }

    #[test]
    fn omega_transformation_residual_small() {
        let mut worst = 0.0f64;
        for k in 1..=12u64 {
            for h in 0..k {
                if h.gcd(&k) != 1 || (h == 0 && k > 1) {
                    continue;
                }
                for z in [Complex64::new(1.0, 0.0), Complex64::new(0.8, 0.3)] {
                    let r = omega_numeric_residual(h, k, z).unwrap();
                    worst = worst.max(r);
                }
            }
        }
        assert!(worst < 1e-10, "worst residual {worst:e}");
    }

    #[test]
    fn chi_frozen_turns() {
        assert_eq!(chi1(1, 5).unwrap().turns(), Ratio::new(9, 10));
        assert_eq!(chi1(2, 5).unwrap().turns(), Ratio::new(0, 1));
        assert_eq!(chi1(3, 5).unwrap().turns(), Ratio::new(0, 1));
        assert_eq!(chi1(4, 5).unwrap().turns(), Ratio::new(1, 10));
        assert_eq!(chi1(1, 10).unwrap().turns(), Ratio::new(7, 10));
        assert_eq!(chi1(9, 10).unwrap().turns(), Ratio::new(3, 10));
        assert_eq!(chi1(2, 15).unwrap().turns(), Ratio::new(3, 4));
        assert_eq!(chi1(4, 15).unwrap().turns(), Ratio::new(19, 20));

        assert_eq!(chi2(1, 4).unwrap().turns(), Ratio::new(15, 16));
        assert_eq!(chi2(3, 4).unwrap().turns(), Ratio::new(1, 16));
        assert_eq!(chi2(1, 8).unwrap().turns(), Ratio::new(21, 32));
        assert_eq!(chi2(1, 12).unwrap().turns(), Ratio::new(61, 144));
        assert_eq!(chi2(5, 12).unwrap().turns(), Ratio::new(29, 144));
        assert_eq!(chi2(7, 12).unwrap().turns(), Ratio::new(115, 144));
        assert_eq!(chi2(1, 24).unwrap().turns(), Ratio::new(223, 288));

        assert_eq!(chi3(1, 3).unwrap().turns(), Ratio::new(3, 4));
        assert_eq!(chi3(2, 3).unwrap().turns(), Ratio::new(1, 4));
        assert_eq!(chi3(1, 6).unwrap().turns(), Ratio::new(3, 4));
        assert_eq!(chi3(5, 6).unwrap().turns(), Ratio::new(1, 4));
        assert_eq!(chi3(1, 9).unwrap().turns(), Ratio::new(29, 36));
        assert_eq!(chi3(2, 9).unwrap().turns(), Ratio::new(7, 36));
        assert_eq!(chi3(1, 12).unwrap().turns(), Ratio::new(7, 8));
        assert_eq!(chi3(5, 12).unwrap().turns(), Ratio::new(3, 8));
    }

    #[test]
    fn chi_divisibility_preconditions() {
        assert!(chi1(1, 6).is_err());
        assert!(chi2(1, 6).is_err());
        assert!(chi2_definition(1, 6).is_err());
        assert!(chi3(1, 4).is_err());
    }

    #[test]
    fn chi2_closed_form_matches_definition() {
        for k in (4..=60u64).step_by(4) {
            for h in 0..k {
                if h.gcd(&k) != 1 {
                    continue;
                }
                assert_eq!(chi2(h, k).unwrap(), chi2_definition(h, k).unwrap(), "h={h} k={k}");
            }
        }
    }

    #[test]
    fn chi_values_are_h_periodic_mod_k() {
        for (f, ks) in [
            (chi1 as fn(u64, u64) -> crate::Result<RootOfUnity>, vec![5u64, 10, 15, 20]),
            (chi2, vec![4, 8, 12, 20]),
            (chi3, vec![3, 6, 9, 12]),
        ] {
            for &k in &ks {
                for h in 1..k {
                    if h.gcd(&k) != 1 {
                        continue;
                    }
                    assert_eq!(f(h, k).unwrap(), f(h + k, k).unwrap(), "k={k} h={h}");
                }
            }
        }
    }

    #[test]
    fn kloosterman_frozen_values() {
        let one = kloosterman_k(1, 3, 5);
        assert_eq!(one.value, 1.0);
        let two = kloosterman_k(2, 1, 1);
        assert!((two.value - 1.0).abs() <= two.abs_error);
        let five = kloosterman_k(5, 1, 2);
        assert!((five.value - 1.2360679774997894).abs() < 1e-12);
        let seven = kloosterman_k(7, 3, 4);
        assert!((seven.value - -2.3568958678922094).abs() < 1e-12);
        let twelve = kloosterman_k(12, 5, 7);
        assert!((twelve.value - 2.0).abs() < 1e-12);
        let nine = kloosterman_k(9, -3, 11);
        assert!(nine.value.abs() < 1e-12);
    }

    #[test]
    fn kloosterman_symmetric_in_n_m() {
        // h ↔ h′ swaps the roles of n and m
        for k in 1..=30u64 {
            for (n, m) in [(1i64, 2i64), (3, 7), (-4, 9), (0, 5)] {
                let a = kloosterman_k(k, n, m).value;
                let b = kloosterman_k(k, m, n).value;
                assert!((a - b).abs() < 1e-10, "k={k} n={n} m={m}");
            }
        }
    }

    #[test]
    fn weil_bound_holds_on_small_box() {
        let report = weil_sweep(60, 10);
        assert!(report.violations.is_empty(), "violations: {:?}", report.violations);
        assert!(report.max_ratio <= 1.0 + 1e-12);
        assert_eq!(report.checked, 60 * 21 * 21);
    }

    #[test]
    fn weil_sweep_matches_direct_sums() {
        // the accumulator trick must agree with the plain definition
        for k in [7u64, 12, 25] {
            for (n, m) in [(0i64, 0i64), (3, -5), (-10, 10)] {
                let direct = kloosterman_k(k, n, m).value;
                let bound = weil_bound(k, n, m);
                assert!(direct.abs() <= bound + 1e-9, "k={k} n={n} m={m}");
            }
        }
    }

    #[test]
    fn a_k_two_paths_agree() {
        for k in (4..=40u64).step_by(4) {
            for n in 0..12u64 {
                let d = a_k_direct(k, n).unwrap();
                let r = a_k_reduced(k, n).unwrap();
                assert!(d.im.abs() < 1e-10, "imag part k={k} n={n}");
                assert!((d.re - r).abs() < 1e-9, "k={k} n={n}: {} vs {}", d.re, r);
                assert!(d.re.abs() <= a_k_bound(k) + 1e-9);
            }
        }
    }

    #[test]
    fn a_k_frozen_values() {
        assert!((a_k_direct(4, 0).unwrap().re - 1.847759065022573).abs() < 1e-12);
        assert!((a_k_direct(4, 1).unwrap().re - -0.765366864730180).abs() < 1e-12);
        assert!((a_k_direct(8, 5).unwrap().re - 2.351751204838717).abs() < 1e-12);
        assert!((a_k_direct(12, 7).unwrap().re - 0.641719988817442).abs() < 1e-12);
        assert!((a_k_direct(20, 3).unwrap().re - 1.847759065022573).abs() < 1e-12);
    }

    #[test]
    fn a_4_closed_trig_form() {
        // Σ_h χ₂(h,4) e(−nh/4) = 2 cos(π/2 (n + 1/4))
        for n in 0..8u64 {
            let direct = a_k_direct(4, n).unwrap().re;
            let closed = 2.0 * (PI / 2.0 * (n as f64 + 0.25)).cos();
            assert!((direct - closed).abs() < 1e-12, "n={n}");
        }
    }

    #[test]
    fn a_4_eighth_root_display() {
        // Σ_{h∈{1,3}} e((−11h − 9h′)/32) e^{−πi hn/2} with h·h′ ≡ −1 (mod 32)
        for n in 0..12u64 {
            let mut s = Complex64::new(0.0, 0.0);
            for h in [1u64, 3] {
                let hp = h_prime(h, 4, 8).unwrap();
                let phase = RootOfUnity::from_frac(-11 * h as i128 - 9 * hp as i128, 32);
                let twist = RootOfUnity::from_frac(-(h as i128) * (n as i128), 4);
                s += (phase * twist).value();
            }
            let direct = a_k_direct(4, n).unwrap();
            assert!((s - direct).norm() < 1e-12, "n={n}");
        }
    }

    #[test]
    fn chi1_k5_sum_closed_trig_form() {
        // Σ_{h=1..4} χ₁(h,5) e(−nh/5) = 2(cos(4πn/5) − cos(2π(n−2)/5))
        for n in 0..10i64 {
            let mut s = Complex64::new(0.0, 0.0);
            for h in 1..5u64 {
                let phase =
                    chi1(h, 5).unwrap() * RootOfUnity::from_frac(-(n as i128) * h as i128, 5);
                s += phase.value();
            }
            let closed = 2.0
                * ((4.0 * PI * n as f64 / 5.0).cos()
                    - (2.0 * PI * (n as f64 - 2.0) / 5.0).cos());
            assert!(s.im.abs() < 1e-12);
            assert!((s.re - closed).abs() < 1e-12, "n={n}");
        }
    }

    #[test]
    fn chi3_small_k_sums_are_sines() {
        // k=3: Σ_h χ₃ e(−nh/3) = −2 sin(2πn/3); k=6: −2 sin(πn/3)
        for n in 0..10i64 {
            let s3: Complex64 = [1u64, 2]
                .iter()
                .map(|&h| {
                    (chi3(h, 3).unwrap() * RootOfUnity::from_frac(-(n as i128) * h as i128, 3))
                        .value()
                })
                .sum();
            let t3 = -2.0 * (2.0 * PI * n as f64 / 3.0).sin();
            assert!((s3.re - t3).abs() < 1e-12 && s3.im.abs() < 1e-12, "k=3 n={n}");
            let s6: Complex64 = [1u64, 5]
                .iter()
                .map(|&h| {
                    (chi3(h, 6).unwrap() * RootOfUnity::from_frac(-(n as i128) * h as i128, 6))
                        .value()
                })
                .sum();
            let t6 = -2.0 * (PI * n as f64 / 3.0).sin();
            assert!((s6.re - t6).abs() < 1e-12 && s6.im.abs() < 1e-12, "k=6 n={n}");
        }
    }
}
