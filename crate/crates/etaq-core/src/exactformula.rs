//! Evaluation of the three coefficient formulas: convergent
//! Bessel–Kloosterman series for the first two quotient families, and the
//! main-term/error-bound decomposition for the third, together with the
//! elementary threshold inequalities used by certification.
//!
//! Everything here works in f64 with a uniform safety slack
//! ([`FLOAT_SLACK`]): certification comparisons never ride on the last few
//! bits. Summation order is fixed (ascending k, ascending h within k), so
//! results are bit-reproducible run to run; parallel callers may fan out over
//! distinct n freely.

use crate::arith::{divisor_count, farey_arc};
use crate::bessel::{bessel_i, bound_lower_scaled, BesselOrder};
use crate::error::EtaqError;
use crate::multiplier::{chi1, chi2, chi3};
use crate::Result;
use num_complex::Complex64;
use num_integer::Integer;
use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, Mutex, OnceLock};

/// Uniform slack for floating-point certification comparisons: a margin is
/// accepted only when it exceeds this, so f64 rounding can never flip a
/// verdict.
pub const FLOAT_SLACK: f64 = 1e-9;

/// Hard cap on the truncation index K for the self-tuning evaluators.
pub const TRUNCATION_CAP: u64 = 10_000;

/// Coefficient of n^{3/2}/k² bounding the error of replacing the arc integral
/// by the Bessel main term.
pub const CONTOUR_SWAP_COEFF: f64 = 4_588_024.0;

/// Coefficient of π²n^{3/2}/27 bounding the expansion remainder in the third
/// decomposition.
pub const EXPANSION_TAIL_COEFF: f64 = 2_294_012.0;

/// Coefficient of n^{3/2} bounding the short-arc remainder.
pub const SHORT_ARC_COEFF: f64 = 757_137.0;

/// Coefficient of n^{3/2} bounding the mid-range (k ∈ (√n/2, √n], 3|k) part.
pub const MID_RANGE_COEFF: f64 = 131.0;

/// Ceiling of SHORT_ARC + MID_RANGE + EXPANSION·π²/27: the single n^{3/2}
/// coefficient used by the third threshold inequality.
pub const COMBINED_TAIL_COEFF: f64 = 1_595_824.0;

/// Cap on |P(w)⁵/P(q₁)⁹| over cube roots w of admissible q₁ (|q₁| < e^{−π}).
pub const CUBE_BRANCH_CAP: f64 = 72.0;

/// Cap on the normalized deviation |f₃(q₁) − 1|·|q₁|^{−1/24} on the same disc
/// (f₃ the level-3 quotient of partition generating functions).
pub const UNIT_DEVIATION_CAP: f64 = 2.0 / 3.0;

/// ζ(3/2) and its square (appearing in divisor-sum tail estimates).
pub const ZETA_THREE_HALVES: f64 = 2.612_375_348_685_488_3;
pub const ZETA_THREE_HALVES_SQ: f64 = 6.824_504_962_419_626;

/// cos(3π/8), the trigonometric floor of the second case's main term.
pub const COS_3PI_8: f64 = 0.382_683_432_365_089_78;

/// d(96k) ≤ 12·d(k): divisor-count inflation factor used by the second
/// case's tail estimates.
pub const DIVISOR_INFLATION: u64 = 12;

/// The per-case fixed data: discriminant a·n − b, Bessel order, and the
/// arithmetic modulus of the character/k-support.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CaseConstants {
    pub case_id: u8,
    /// (a, b) with discriminant a·n − b.
    pub discriminant: (u64, u64),
    pub bessel_order: BesselOrder,
    pub modulus: u64,
}

impl CaseConstants {
    pub fn discriminant_of(&self, n: u64) -> f64 {
        (self.discriminant.0 * n) as f64 - self.discriminant.1 as f64
    }
}

pub const CASE1: CaseConstants = CaseConstants {
    case_id: 1,
    discriminant: (8, 3),
    bessel_order: BesselOrder::ThreeHalves,
    modulus: 5,
};

pub const CASE2: CaseConstants = CaseConstants {
    case_id: 2,
    discriminant: (24, 7),
    bessel_order: BesselOrder::One,
    modulus: 4,
};

pub const CASE3: CaseConstants = CaseConstants {
    case_id: 3,
    discriminant: (4, 1),
    bessel_order: BesselOrder::One,
    modulus: 3,
};

/// A truncated series evaluation with a certified truncation error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FormulaResult {
    pub n: u64,
    /// Partial sum over the first `terms_used` admissible k.
    pub value: f64,
    /// Certified bound on |true coefficient − value|; rounding is valid only
    /// when this is < 1/2.
    pub tail_bound: f64,
    /// Count of k-values summed.
    pub terms_used: u64,
    /// Whether the self-tuning target (tail_bound < 1/4) was reached.
    pub converged: bool,
}

impl FormulaResult {
    /// Nearest integer, when the tail bound certifies rounding.
    pub fn rounded(&self) -> Option<i64> {
        (self.tail_bound < 0.5).then(|| self.value.round() as i64)
    }
}

// ---------------------------------------------------------------------------
// character phase caches
// ---------------------------------------------------------------------------

type PhaseTable = Arc<Vec<(u64, Complex64)>>;
type PhaseCache = Mutex<HashMap<u64, PhaseTable>>;

fn cache_lookup(
    cache: &'static OnceLock<PhaseCache>,
    k: u64,
    build: impl Fn(u64) -> Vec<(u64, Complex64)>,
) -> PhaseTable {
    let cache = cache.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(t) = cache.lock().expect("phase cache poisoned").get(&k) {
        return Arc::clone(t);
    }
    // Build outside the lock; duplicate work on a race is harmless since the
    // table is a pure function of k.
    let table = Arc::new(build(k));
    cache
        .lock()
        .expect("phase cache poisoned")
        .entry(k)
        .or_insert_with(|| Arc::clone(&table))
        .clone()
}

static CHI1_PHASES: OnceLock<PhaseCache> = OnceLock::new();
static CHI2_PHASES: OnceLock<PhaseCache> = OnceLock::new();

fn chi1_phases(k: u64) -> PhaseTable {
    cache_lookup(&CHI1_PHASES, k, |k| {
        (0..k)
            .filter(|h| h.gcd(&k) == 1)
            .map(|h| (h, chi1(h, k).expect("coprime, 5|k").value()))
            .collect()
    })
}

fn chi2_phases(k: u64) -> PhaseTable {
    cache_lookup(&CHI2_PHASES, k, |k| {
        (0..k)
            .filter(|h| h.gcd(&k) == 1)
            .map(|h| (h, chi2(h, k).expect("coprime, 4|k").value()))
            .collect()
    })
}

/// Σ_h Re(χ(h,k) · e(−nh/k)) over the cached coprime phase table.
fn twisted_h_sum(table: &[(u64, Complex64)], n: u64, k: u64) -> f64 {
    let mut s = 0.0;
    for &(h, chi) in table {
        let r = ((n as u128 * h as u128) % k as u128) as f64;
        let theta = 2.0 * PI * r / k as f64;
        // Re(chi · e^{−iθ})
        s += chi.re * theta.cos() + chi.im * theta.sin();
    }
    s
}

// ---------------------------------------------------------------------------
// case 1: modulus-5 series
// ---------------------------------------------------------------------------

/// Truncated exact series for the first coefficient family:
///   (2·3^{3/4}π/X^{3/4}) Σ_{5|k≤K} (1/k) Σ_h χ₁(h,k) e(−nh/k) I_{3/2}(π√(3X)/(2k)),
/// X = 8n−3, plus a certified tail bound for the omitted k > K.
pub fn c1_exact(n: u64, k_cap: u64) -> Result<FormulaResult> {
    if n == 0 {
        return Err(EtaqError::Domain("c1_exact needs n >= 1".into()));
    }
    if k_cap < 5 {
        return Err(EtaqError::Domain("c1_exact needs K >= 5".into()));
    }
    let x = CASE1.discriminant_of(n);
    let pre = 2.0 * 3f64.powf(0.75) * PI / x.powf(0.75);
    let j = k_cap / 5;
    let mut total = 0.0;
    for kp in 1..=j {
        let k = 5 * kp;
        let arg = PI * (3.0 * x).sqrt() / (2.0 * k as f64);
        let bes = bessel_i(BesselOrder::ThreeHalves, arg);
        let hs = twisted_h_sum(&chi1_phases(k), n, k);
        total += hs / k as f64 * bes;
    }
    let tail_bound = c1_tail_bound(n, j);
    Ok(FormulaResult {
        n,
        value: pre * total,
        tail_bound,
        terms_used: j,
        converged: tail_bound < 0.25,
    })
}

/// Tail bound for the case-1 series truncated after j terms (k = 5j).
///
/// Two regimes for the omitted k' > j (Bessel argument a' / k'):
/// arguments ≥ 1 (finitely many k' ≤ a') are each bounded by the first
/// omitted term; arguments < 1 get the small-argument bound, and the
/// resulting Σ k'^{−3/2}-type sum is compared with an integral.
fn c1_tail_bound(n: u64, j: u64) -> f64 {
    let x = CASE1.discriminant_of(n);
    let pre = 2.0 * 3f64.powf(0.75) * PI / x.powf(0.75);
    let a = (PI / 10.0) * (3.0 * x).sqrt();
    let count_large = (a.floor() as i64 - j as i64).max(0) as f64;
    let m = (j as f64).max(a.floor());
    let large = count_large * bessel_i(BesselOrder::ThreeHalves, a / (j as f64 + 1.0));
    let small = (8.0 / (3.0 * (2.0 * PI).sqrt())) * a.powf(1.5) / m.sqrt();
    pre * (large + small)
}

/// [`c1_exact`] with K chosen as the least multiple of 5 reaching
/// tail_bound < 1/4 (hard cap [`TRUNCATION_CAP`], reported via `converged`).
pub fn c1_exact_auto(n: u64) -> Result<FormulaResult> {
    if n == 0 {
        return Err(EtaqError::Domain("c1_exact needs n >= 1".into()));
    }
    let j_cap = TRUNCATION_CAP / 5;
    let mut j = j_cap;
    for cand in 1..=j_cap {
        if c1_tail_bound(n, cand) < 0.25 {
            j = cand;
            break;
        }
    }
    c1_exact(n, 5 * j)
}

/// The k=5 term of the case-1 series in closed trigonometric form:
///   (4·3^{3/4}π/(5X^{3/4})) I_{3/2}(π√(3X)/10) (cos(4πn/5) − cos(2π(n−2)/5)).
pub fn m1(n: u64) -> f64 {
    debug_assert!(n >= 1);
    let x = CASE1.discriminant_of(n);
    let trig = (4.0 * PI * n as f64 / 5.0).cos() - (2.0 * PI * (n as f64 - 2.0) / 5.0).cos();
    (4.0 * 3f64.powf(0.75) * PI / (5.0 * x.powf(0.75)))
        * bessel_i(BesselOrder::ThreeHalves, (PI / 10.0) * (3.0 * x).sqrt())
        * trig
}

/// Lower bound on |m1(n)| for the residue classes where the main term is
/// nonzero (n ≡ 0,1,2 mod 5): the trig factor is at least 1 − cos(2π/5) and
/// the Bessel factor at least e^x/(4√x) (valid once the argument is ≥ 3,
/// i.e. n ≥ 5).
pub fn m1_lower(n: u64) -> Result<f64> {
    if n % 5 >= 3 {
        return Err(EtaqError::Unsatisfiable(format!(
            "main term vanishes identically for n ≡ 3,4 (mod 5); n={n}"
        )));
    }
    let x = CASE1.discriminant_of(n);
    let arg = (PI / 10.0) * (3.0 * x).sqrt();
    let bes_lower = bound_lower_scaled(BesselOrder::ThreeHalves, arg)? * arg.exp();
    let trig_floor = 1.0 - (2.0 * PI / 5.0).cos();
    Ok((4.0 * 3f64.powf(0.75) * PI / (5.0 * x.powf(0.75))) * bes_lower * trig_floor)
}

/// Upper bound on the case-1 error term (everything except the k=5 term):
///   4√6 π^{3/2}/(5X^{1/4}) + (3^{5/4}π²/(5X^{1/4})) I_{3/2}(π√X/20).
pub fn e1_upper(n: u64) -> f64 {
    debug_assert!(n >= 1);
    let x = CASE1.discriminant_of(n);
    4.0 * 6f64.sqrt() * PI.powf(1.5) / (5.0 * x.powf(0.25))
        + (3f64.powf(1.25) * PI * PI / (5.0 * x.powf(0.25)))
            * bessel_i(BesselOrder::ThreeHalves, (PI / 20.0) * x.sqrt())
}

/// Margin 1 − LHS of the elementary case-1 domination inequality
/// (|E₁| < |M₁| reduced to explicit exponentials). Positive margin certifies
/// the sign at n for n ≡ 0,1,2 (mod 5); meaningful for n ≥ 6.
///
/// Terms are evaluated in log space so very large n cannot overflow.
pub fn thm1_inequality(n: u64) -> f64 {
    debug_assert!(n >= 1);
    let x = CASE1.discriminant_of(n);
    let c = 1.0 - (2.0 * PI / 5.0).cos();
    let t1 = ((4.0 * PI / c).ln() + 0.75 * x.ln() - (PI / 10.0) * (3.0 * x).sqrt()).exp();
    let t2 = ((2.0 * (2.0 * PI).sqrt() * 3f64.powf(0.25) * 7.5f64.sqrt() / c).ln()
        + 0.5 * x.ln()
        - (PI / 10.0) * (3.0 * x).sqrt()
        + (PI / 20.0) * x.sqrt())
    .exp();
    1.0 - (t1 + t2)
}

// ---------------------------------------------------------------------------
// case 2: modulus-4 series
// ---------------------------------------------------------------------------

/// Truncated exact series for the second coefficient family:
///   (2√7π/√Y) Σ_{4|k≤K} (1/k) Σ_h χ₂(h,k) e(−nh/k) I₁(π√(7Y)/(6k)),
/// Y = 24n−7, plus a certified tail bound for the omitted k > K.
pub fn c2_exact(n: u64, k_cap: u64) -> Result<FormulaResult> {
    if n == 0 {
        return Err(EtaqError::Domain("c2_exact needs n >= 1".into()));
    }
    if k_cap < 4 {
        return Err(EtaqError::Domain("c2_exact needs K >= 4".into()));
    }
    let y = CASE2.discriminant_of(n);
    let pre = 2.0 * 7f64.sqrt() * PI / y.sqrt();
    let j = k_cap / 4;
    let mut total = 0.0;
    for kp in 1..=j {
        let k = 4 * kp;
        let arg = PI * (7.0 * y).sqrt() / (6.0 * k as f64);
        let bes = bessel_i(BesselOrder::One, arg);
        let hs = twisted_h_sum(&chi2_phases(k), n, k);
        total += hs / k as f64 * bes;
    }
    let tail_bound = c2_tail_bound(n, j);
    Ok(FormulaResult {
        n,
        value: pre * total,
        tail_bound,
        terms_used: j,
        converged: tail_bound < 0.25,
    })
}

/// Tail bound for the case-2 series truncated after j terms (k = 4j).
///
/// The inner h-sum is bounded through its Kloosterman reduction by the Weil
/// bound, |A_k| ≤ ½√(7k/2)·d(24k) ≤ 6√(14k')·d(k') for k = 4k'. Large-argument
/// omitted terms (k' ≤ a₂) are bounded against the first omitted Bessel
/// value; the rest reduce to the divisor sum S(M) = Σ_{k'>M} d(k')k'^{−3/2},
/// bounded by 2(ln M + 1 + ζ(3/2))/√M.
///
/// Unlike the case-1 tail, the divisor-weighted constant here is large: the
/// bound only dips below 1/4 around j ≈ 7·10⁶, far past [`TRUNCATION_CAP`],
/// so the self-tuning evaluator reports `converged: false` even though the
/// computed value itself has long stabilized.
fn c2_tail_bound(n: u64, j: u64) -> f64 {
    let y = CASE2.discriminant_of(n);
    let pre = 2.0 * 7f64.sqrt() * PI / y.sqrt();
    let a2 = (PI / 24.0) * (7.0 * y).sqrt();
    let m = (j as f64).max(a2.floor());
    let mut reg_b = 0.0;
    if a2.floor() as u64 > j {
        let bes_b = bessel_i(BesselOrder::One, a2 / (j as f64 + 1.0));
        for kp in (j + 1)..=(a2.floor() as u64) {
            let d = divisor_count(kp) as f64;
            reg_b += pre * (6.0 * (14.0 * kp as f64).sqrt() * d / (4.0 * kp as f64)) * bes_b;
        }
    }
    let c_a = (7.0 / 8.0) * 14f64.sqrt() * PI * PI;
    let s_m = 2.0 * (m.ln() + 1.0 + ZETA_THREE_HALVES) / m.sqrt();
    reg_b + c_a * s_m
}

/// [`c2_exact`] with the same self-tuning policy as [`c1_exact_auto`]. The
/// certified tail bound cannot reach 1/4 under the cap (see
/// [`c2_tail_bound`]), so this evaluates at the cap and reports
/// `converged: false`.
pub fn c2_exact_auto(n: u64) -> Result<FormulaResult> {
    if n == 0 {
        return Err(EtaqError::Domain("c2_exact needs n >= 1".into()));
    }
    let j_cap = TRUNCATION_CAP / 4;
    let mut j = j_cap;
    for cand in 1..=j_cap {
        if c2_tail_bound(n, cand) < 0.25 {
            j = cand;
            break;
        }
    }
    c2_exact(n, 4 * j)
}

/// The k=4 term of the case-2 series in closed trigonometric form:
///   √7 π cos(π/2 (n + 1/4))/√Y · I₁(π√(7Y)/24).
pub fn m2(n: u64) -> f64 {
    debug_assert!(n >= 1);
    let y = CASE2.discriminant_of(n);
    7f64.sqrt() * PI * (PI / 2.0 * (n as f64 + 0.25)).cos() / y.sqrt()
        * bessel_i(BesselOrder::One, (PI / 24.0) * (7.0 * y).sqrt())
}

/// Margin 1 − LHS of the elementary case-2 domination inequality; positive
/// margin certifies the sign at n (all residue classes mod 4 are nonzero).
pub fn thm2_inequality(n: u64) -> f64 {
    debug_assert!(n >= 1);
    let y = CASE2.discriminant_of(n);
    let t1 = ((7f64.powf(1.25) * PI.powf(1.5) * ZETA_THREE_HALVES_SQ
        / (4.0 * 3f64.sqrt() * COS_3PI_8))
        .ln()
        + 0.75 * y.ln()
        - (PI / 24.0) * (7.0 * y).sqrt())
    .exp();
    let t2 = ((14.0 * (2.0 * PI).sqrt() / COS_3PI_8).ln() + 0.5 * y.ln()
        - (PI / 48.0) * (7.0 * y).sqrt())
    .exp();
    1.0 - (t1 + t2)
}

// ---------------------------------------------------------------------------
// case 3: modulus-3 decomposition
// ---------------------------------------------------------------------------

/// The trigonometric factor α_n of the case-3 main term: the closed form of
/// the dominant twisted character sum (k=3 for 3∤n, k=9 for 3|n).
pub fn alpha_factor(n: u64) -> f64 {
    if n % 3 != 0 {
        -2.0 * (2.0 * PI * n as f64 / 3.0).sin()
    } else {
        2.0 * ((2.0 * PI / 9.0 * (4.0 - 2.0 * n as f64)).sin()
            - (2.0 * PI / 9.0 * (5.0 - n as f64)).sin()
            - (2.0 * PI / 9.0 * (5.0 - 4.0 * n as f64)).sin())
    }
}

/// ℓ_n: the smallest admissible k'/3 in the E₃ remainder — 2 when 3∤n,
/// 4 when 3|n.
pub fn ell_n(n: u64) -> u64 {
    if n % 3 != 0 {
        2
    } else {
        4
    }
}

/// The five-component decomposition of the third coefficient family:
/// coefficient = main + (four remainders, given here as absolute bounds).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct C3Decomposition {
    pub n: u64,
    /// M₃(n) = (2π/(3g)) α_n √(4n−1) I₁(π√(4n−1)/(3g)), g = gcd(n,3).
    pub main: f64,
    /// |E₃| ≤ (4πn/3) I₁(π√(4n−1)/(3ℓ_n)).
    pub e3_bound: f64,
    /// |E| ≤ 2294012 π² n^{3/2}/27.
    pub en_bound: f64,
    /// |Σ₁| ≤ 757137 n^{3/2}.
    pub sum1_bound: f64,
    /// |Σ₃,₂| ≤ 131 n^{3/2}.
    pub sum32_bound: f64,
}

impl C3Decomposition {
    pub fn total_error_bound(&self) -> f64 {
        self.e3_bound + self.en_bound + self.sum1_bound + self.sum32_bound
    }

    /// True when the main term dominates every remainder with slack, which
    /// pins the coefficient's sign to sgn(main).
    pub fn certifies_sign(&self) -> bool {
        self.main.abs() > self.total_error_bound() * (1.0 + FLOAT_SLACK)
    }

    pub fn main_sign(&self) -> i8 {
        if self.main > 0.0 {
            1
        } else if self.main < 0.0 {
            -1
        } else {
            0
        }
    }
}

/// Computes the case-3 decomposition at n ≥ 1.
pub fn c3_decomposition(n: u64) -> Result<C3Decomposition> {
    if n == 0 {
        return Err(EtaqError::Domain("c3_decomposition needs n >= 1".into()));
    }
    let x = CASE3.discriminant_of(n);
    let g = if n % 3 == 0 { 3.0 } else { 1.0 };
    let nf = n as f64;
    let main = (2.0 * PI / (3.0 * g))
        * alpha_factor(n)
        * x.sqrt()
        * bessel_i(BesselOrder::One, PI * x.sqrt() / (3.0 * g));
    let e3_bound =
        (4.0 * PI * nf / 3.0) * bessel_i(BesselOrder::One, PI * x.sqrt() / (3.0 * ell_n(n) as f64));
    let n32 = nf.powf(1.5);
    Ok(C3Decomposition {
        n,
        main,
        e3_bound,
        en_bound: EXPANSION_TAIL_COEFF * PI * PI * n32 / 27.0,
        sum1_bound: SHORT_ARC_COEFF * n32,
        sum32_bound: MID_RANGE_COEFF * n32,
    })
}

/// Lower bound on |M₃(n)| via the e^x/(4√x) Bessel floor (argument ≥ 3).
pub fn m3_lower(n: u64) -> Result<f64> {
    if n == 0 {
        return Err(EtaqError::Domain("m3_lower needs n >= 1".into()));
    }
    let x = CASE3.discriminant_of(n);
    let g = if n % 3 == 0 { 3.0 } else { 1.0 };
    let arg = PI * x.sqrt() / (3.0 * g);
    let bes_lower = bound_lower_scaled(BesselOrder::One, arg)? * arg.exp();
    Ok((2.0 * PI / (3.0 * g)) * alpha_factor(n).abs() * x.sqrt() * bes_lower)
}

/// Margin 1 − LHS of the branch-appropriate elementary case-3 inequality.
/// The 3∤n branch is valid for n ≥ 6, the 3|n branch for n ≥ 19; below the
/// floor the derivation's Bessel replacements do not apply and certification
/// must fall back to direct expansion.
pub fn thm3_inequality(n: u64) -> Result<f64> {
    let x = CASE3.discriminant_of(n);
    let nf = n as f64;
    if n % 3 != 0 {
        if n < 6 {
            return Err(EtaqError::Domain(format!(
                "case-3 inequality (3 ∤ n branch) needs n >= 6, got {n}"
            )));
        }
        let s = (2.0 * PI / 3.0).sin();
        let t1 = ((8.0 * nf / (PI.sqrt() * s)).ln() - 0.5 * x.ln() - (PI / 6.0) * x.sqrt()).exp();
        let t2 = ((3f64.sqrt() * COMBINED_TAIL_COEFF / (PI.sqrt() * s)).ln() + 1.5 * nf.ln()
            - 0.25 * x.ln()
            - (PI / 3.0) * x.sqrt())
        .exp();
        Ok(1.0 - (t1 + t2))
    } else {
        if n < 19 {
            return Err(EtaqError::Domain(format!(
                "case-3 inequality (3 | n branch) needs n >= 19, got {n}"
            )));
        }
        let s = (PI / 9.0).sin();
        let t1 = ((8.0 * 2f64.sqrt() * nf / (3f64.sqrt() * PI.sqrt() * s)).ln() - 0.5 * x.ln()
            - (PI / 36.0) * x.sqrt())
        .exp();
        let t2 = ((COMBINED_TAIL_COEFF / (PI.sqrt() * s)).ln() + 1.5 * nf.ln() - 0.25 * x.ln()
            - (PI / 9.0) * x.sqrt())
        .exp();
        Ok(1.0 - (t1 + t2))
    }
}

/// The twisted χ₃ sum Σ_h χ₃(h,k) e(−nh/k) for 3|k — the k=3 and k=6 sums
/// vanish when 3|n, which is why the 3|n main term sits at k=9.
pub fn chi3_inner_sum(k: u64, n: u64) -> Result<Complex64> {
    let mut s = Complex64::new(0.0, 0.0);
    for h in 0..k {
        if h.gcd(&k) != 1 {
            continue;
        }
        let phase =
            chi3(h, k)? * crate::roots::RootOfUnity::from_frac(-((n as i128) * (h as i128)), k as i128);
        s += phase.value();
    }
    Ok(s)
}

// ---------------------------------------------------------------------------
// arc-integral error (certified constant + quadrature diagnostic)
// ---------------------------------------------------------------------------

/// Certified bound on the error of replacing one arc integral by its Bessel
/// main term: 4588024 n^{3/2}/k², valid for 1 ≤ k ≤ √n.
pub fn bessel_integral_error(n: u64, k: u64) -> Result<f64> {
    if k == 0 || k * k > n {
        return Err(EtaqError::Domain(format!(
            "arc-integral bound needs 1 <= k <= sqrt(n), got k={k}, n={n}"
        )));
    }
    Ok(CONTOUR_SWAP_COEFF * (n as f64).powf(1.5) / (k as f64 * k as f64))
}

/// Result of the diagnostic contour quadrature: the measured discrepancy
/// between the arc integral and its Bessel main term, and the certified
/// bound it must stay under.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureDiagnostic {
    pub discrepancy: f64,
    pub bound: f64,
}

/// Directly integrates z^{−2} e^{π/(2kz) + πz(4n−1)/(2k)} over the Farey arc
/// of h/k at order ⌊√n⌋ (composite Simpson, fixed 10⁴ panels) and compares
/// with 2πi√(4n−1) I₁(π√(4n−1)/k).
///
/// Diagnostic only: certification always uses [`bessel_integral_error`].
pub fn contour_quadrature_diagnostic(n: u64, k: u64, h: u64) -> Result<QuadratureDiagnostic> {
    let order = (n as f64).sqrt().floor() as u64;
    if k == 0 || k > order {
        return Err(EtaqError::Domain(format!(
            "quadrature diagnostic needs 1 <= k <= sqrt(n), got k={k}, n={n}"
        )));
    }
    let arc = farey_arc(h, k, order).ok_or_else(|| {
        EtaqError::Domain(format!("{h}/{k} is not in the order-{order} dissection"))
    })?;
    let ratio_f64 =
        |r: num_rational::Ratio<i128>| *r.numer() as f64 / *r.denom() as f64;
    let y_lo = -(k as f64) * ratio_f64(arc.theta_left);
    let y_hi = (k as f64) * ratio_f64(arc.theta_right);
    let a = PI * (4.0 * n as f64 - 1.0) / (2.0 * k as f64);
    let b = PI / (2.0 * k as f64);
    let re_z = k as f64 / n as f64;
    let f = |y: f64| -> Complex64 {
        let z = Complex64::new(re_z, y);
        1.0 / (z * z) * (b / z + a * z).exp() * Complex64::new(0.0, 1.0)
    };
    let simpson = |lo: f64, hi: f64, panels: usize| -> Complex64 {
        let h_step = (hi - lo) / panels as f64;
        let mut acc = f(lo) + f(hi);
        for i in 1..panels {
            let w = if i % 2 == 1 { 4.0 } else { 2.0 };
            acc += w * f(lo + i as f64 * h_step);
        }
        acc * h_step / 3.0
    };
    // split at y = 0 where the integrand peaks
    let integral = simpson(y_lo, 0.0, 5000) + simpson(0.0, y_hi, 5000);
    let x = 4.0 * n as f64 - 1.0;
    let target = Complex64::new(0.0, 2.0 * PI * x.sqrt())
        * bessel_i(BesselOrder::One, PI * x.sqrt() / k as f64);
    Ok(QuadratureDiagnostic {
        discrepancy: (integral - target).norm(),
        bound: bessel_integral_error(n, k)?,
    })
}
