//! Exact integer power series for eta-quotients.
//!
//! An eta-quotient is a finite product ∏_ℓ (q^ℓ; q^ℓ)_∞^{δ_ℓ}. Expansion works
//! coefficient-exactly over BigInt: each Euler factor is a sparse ±1 series
//! supported on scaled generalized pentagonal numbers, so multiplying or
//! dividing by one factor is a single in-place sweep.

use crate::arith::{pent, triangular};
use crate::error::EtaqError;
use crate::Result;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::fmt;
use std::str::FromStr;

/// A formal product ∏ (q^ℓ; q^ℓ)^{δ_ℓ}, stored as sorted (level, exponent)
/// pairs with distinct levels and nonzero exponents.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EtaQuotientSpec {
    factors: Vec<(u32, i32)>,
}

impl EtaQuotientSpec {
    /// Builds a spec from raw (level, exponent) pairs. Duplicate levels are
    /// merged; zero exponents are dropped; at least one factor must survive
    /// and every level must be ≥ 1.
    pub fn new(factors: &[(u32, i32)]) -> Result<Self> {
        let mut merged: Vec<(u32, i32)> = Vec::new();
        for &(level, exp) in factors {
            if level == 0 {
                return Err(EtaqError::InvalidSpec("level must be >= 1".into()));
            }
            match merged.iter_mut().find(|(l, _)| *l == level) {
                Some((_, e)) => *e += exp,
                None => merged.push((level, exp)),
            }
        }
        merged.retain(|&(_, e)| e != 0);
        if merged.is_empty() {
            return Err(EtaqError::InvalidSpec(
                "spec must contain at least one nonzero exponent".into(),
            ));
        }
        merged.sort_by_key(|&(l, _)| l);
        Ok(Self { factors: merged })
    }

    pub fn factors(&self) -> &[(u32, i32)] {
        &self.factors
    }

    /// Largest level appearing in the product.
    pub fn max_level(&self) -> u32 {
        self.factors.iter().map(|&(l, _)| l).max().unwrap_or(1)
    }

    /// Sum of exponents weighted by level, Σ ℓ·δ_ℓ (the eta-prefactor order
    /// numerator: the quotient starts as q^{Σ ℓ δ_ℓ / 24}·(1 + …)).
    pub fn level_weighted_exponent_sum(&self) -> i64 {
        self.factors
            .iter()
            .map(|&(l, e)| l as i64 * e as i64)
            .sum()
    }
}

impl fmt::Display for EtaQuotientSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|(l, e)| format!("{l}^{e}"))
            .collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for EtaQuotientSpec {
    type Err = EtaqError;

    /// Parses `"1^1,5^-2"` style strings: comma-separated `level^exponent`.
    fn from_str(s: &str) -> Result<Self> {
        let mut factors = Vec::new();
        for part in s.split(',') {
            let part = part.trim();
            let (l, e) = part
                .split_once('^')
                .ok_or_else(|| EtaqError::InvalidSpec(format!("missing '^' in `{part}`")))?;
            let level: u32 = l
                .trim()
                .parse()
                .map_err(|_| EtaqError::InvalidSpec(format!("bad level `{l}`")))?;
            let exp: i32 = e
                .trim()
                .parse()
                .map_err(|_| EtaqError::InvalidSpec(format!("bad exponent `{e}`")))?;
            factors.push((level, exp));
        }
        Self::new(&factors)
    }
}

/// A truncated integer power series: coefficient of q^n at index n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntSeries {
    coeffs: Vec<BigInt>,
}

impl IntSeries {
    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        Self { coeffs }
    }

    /// The series 1 + 0·q + … truncated at degree `n_max`.
    pub fn one(n_max: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); n_max + 1];
        coeffs[0] = BigInt::one();
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> &BigInt {
        &self.coeffs[n]
    }

    /// Truncation degree (highest stored index).
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Sign of coefficient n: −1, 0, or +1.
    pub fn sign(&self, n: usize) -> i8 {
        match self.coeffs[n].sign() {
            num_bigint::Sign::Minus => -1,
            num_bigint::Sign::NoSign => 0,
            num_bigint::Sign::Plus => 1,
        }
    }
}

/// Exponent/sign support of (q^ℓ; q^ℓ)_∞ = Σ_m (−1)^m q^{ℓ·pent(m)} up to
/// `n_max`, with the constant term (exponent 0, sign +) excluded, ascending.
fn pentagonal_support(level: u32, n_max: usize) -> Vec<(usize, i8)> {
    let mut terms: Vec<(usize, i8)> = Vec::new();
    let mut m: i64 = 1;
    loop {
        let mut any = false;
        for mm in [m, -m] {
            let e = level as u64 * pent(mm);
            if e as usize <= n_max {
                terms.push((e as usize, if m % 2 == 0 { 1 } else { -1 }));
                any = true;
            }
        }
        if !any {
            break;
        }
        m += 1;
    }
    terms.sort_unstable_by_key(|&(e, _)| e);
    terms
}

/// The Euler factor (q^ℓ; q^ℓ)_∞ as a series truncated at `n_max`.
pub fn pochhammer_series(level: u32, n_max: usize) -> IntSeries {
    assert!(level >= 1, "level must be >= 1");
    let mut coeffs = vec![BigInt::zero(); n_max + 1];
    coeffs[0] = BigInt::one();
    for (e, s) in pentagonal_support(level, n_max) {
        coeffs[e] += s as i32;
    }
    IntSeries::from_coeffs(coeffs)
}

/// In-place multiply `c` by the sparse factor (1 + Σ s_e q^e): descending
/// sweep so each read sees the pre-pass value.
fn mul_sparse_inplace(c: &mut [BigInt], support: &[(usize, i8)]) {
    for i in (1..c.len()).rev() {
        for &(e, s) in support {
            if e > i {
                break;
            }
            let (lo, hi) = c.split_at_mut(i);
            if s == 1 {
                hi[0] += &lo[i - e];
            } else {
                hi[0] -= &lo[i - e];
            }
        }
    }
}

/// In-place divide `c` by the sparse factor (1 + Σ s_e q^e): ascending sweep
/// (the quotient overwrites `c` as it is produced).
fn div_sparse_inplace(c: &mut [BigInt], support: &[(usize, i8)]) {
    for i in 1..c.len() {
        for &(e, s) in support {
            if e > i {
                break;
            }
            let (lo, hi) = c.split_at_mut(i);
            if s == 1 {
                hi[0] -= &lo[i - e];
            } else {
                hi[0] += &lo[i - e];
            }
        }
    }
}

/// Expands an eta-quotient (without the q^{Σℓδ/24} prefactor) to degree
/// `n_max`: the exact integer coefficients of ∏ (q^ℓ; q^ℓ)^{δ_ℓ}.
pub fn expand(spec: &EtaQuotientSpec, n_max: usize) -> IntSeries {
    let mut c = vec![BigInt::zero(); n_max + 1];
    c[0] = BigInt::one();
    for &(level, exp) in spec.factors() {
        let support = pentagonal_support(level, n_max);
        if exp > 0 {
            for _ in 0..exp {
                mul_sparse_inplace(&mut c, &support);
            }
        } else {
            for _ in 0..(-exp) {
                div_sparse_inplace(&mut c, &support);
            }
        }
    }
    IntSeries::from_coeffs(c)
}

/// Full product of two truncated series, truncated at `n_max`.
pub fn series_mul(a: &IntSeries, b: &IntSeries, n_max: usize) -> IntSeries {
    let mut c = vec![BigInt::zero(); n_max + 1];
    for (i, ai) in a.coeffs().iter().enumerate().take(n_max + 1) {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.coeffs().iter().enumerate() {
            if i + j > n_max {
                break;
            }
            if !bj.is_zero() {
                c[i + j] += ai * bj;
            }
        }
    }
    IntSeries::from_coeffs(c)
}

/// Multiplicative inverse of a series whose constant term is ±1 (the only
/// units with integer inverses), truncated at `n_max`.
pub fn series_inverse(a: &IntSeries, n_max: usize) -> Result<IntSeries> {
    let a0 = a.coeff(0);
    if !(a0.is_one() || (-a0).is_one()) {
        return Err(EtaqError::NonUnitConstant);
    }
    let unit_is_one = a0.is_one();
    let mut f = vec![BigInt::zero(); n_max + 1];
    f[0] = a0.clone();
    for i in 1..=n_max {
        let mut s = BigInt::zero();
        for e in 1..=i.min(a.degree()) {
            let ae = a.coeff(e);
            if !ae.is_zero() {
                s += ae * &f[i - e];
            }
        }
        f[i] = if unit_is_one { -s } else { s };
    }
    Ok(IntSeries::from_coeffs(f))
}

/// Integer power of a series (negative powers require unit constant term).
pub fn series_pow(a: &IntSeries, e: i32, n_max: usize) -> Result<IntSeries> {
    let base = if e < 0 { series_inverse(a, n_max)? } else { a.clone() };
    let mut out = IntSeries::one(n_max);
    for _ in 0..e.unsigned_abs() {
        out = series_mul(&out, &base, n_max);
    }
    Ok(out)
}

/// The sign (−1/0/+1) of every coefficient, in order.
pub fn sign_sequence(series: &IntSeries) -> Vec<i8> {
    (0..=series.degree()).map(|n| series.sign(n)).collect()
}

/// A purely periodic sign pattern over residue classes: entry r prescribes the
/// sign of every coefficient with index ≡ r (mod len).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignPattern {
    signs: Vec<i8>,
}

impl SignPattern {
    pub fn new(signs: Vec<i8>) -> Result<Self> {
        if signs.is_empty() {
            return Err(EtaqError::InvalidSpec("empty sign pattern".into()));
        }
        if signs.iter().any(|&s| !(-1..=1).contains(&s)) {
            return Err(EtaqError::InvalidSpec("signs must be -1, 0, or +1".into()));
        }
        Ok(Self { signs })
    }

    pub fn period(&self) -> usize {
        self.signs.len()
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    /// Expected sign for coefficient index n.
    pub fn expected(&self, n: usize) -> i8 {
        self.signs[n % self.signs.len()]
    }
}

impl fmt::Display for SignPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &s in &self.signs {
            f.write_str(match s {
                1 => "+",
                -1 => "-",
                _ => "0",
            })?;
        }
        Ok(())
    }
}

impl FromStr for SignPattern {
    type Err = EtaqError;

    /// Parses a string over {+, -, 0}, one character per residue class.
    fn from_str(s: &str) -> Result<Self> {
        let signs = s
            .chars()
            .map(|c| match c {
                '+' => Ok(1),
                '-' => Ok(-1),
                '0' => Ok(0),
                other => Err(EtaqError::InvalidSpec(format!(
                    "pattern characters must be one of + - 0, got `{other}`"
                ))),
            })
            .collect::<Result<Vec<i8>>>()?;
        Self::new(signs)
    }
}

/// Outcome of checking a sign pattern against a coefficient series.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PatternCheck {
    /// Every index in [n_start, checked_to] matched.
    Confirmed { checked_to: usize },
    /// First index at which the actual sign differs from the pattern.
    Violation { index: usize, expected: i8, actual: i8 },
}

/// Checks that `series` follows `pattern` for every index ≥ `n_start` (up to
/// the series truncation).
pub fn check_pattern(series: &IntSeries, pattern: &SignPattern, n_start: usize) -> PatternCheck {
    for n in n_start..=series.degree() {
        let actual = series.sign(n);
        let expected = pattern.expected(n);
        if actual != expected {
            return PatternCheck::Violation { index: n, expected, actual };
        }
    }
    PatternCheck::Confirmed { checked_to: series.degree() }
}

/// Two-color partition counts: coefficients of (q;q)_∞^{−2}.
pub fn two_color_partition_series(n_max: usize) -> IntSeries {
    let spec = EtaQuotientSpec::new(&[(1, -2)]).expect("static spec");
    expand(&spec, n_max)
}

/// Alternating pentagonal-shifted sum Σ_m (−1)^m p₂((n − pent(m))/5), taken
/// over the integers m with pent(m) ≤ n and 5 | (n − pent(m)); `p2` must hold
/// two-color partition counts at least to ⌊n/5⌋.
pub fn p2_pentagonal_sum(n: u64, p2: &IntSeries) -> BigInt {
    let mut total = BigInt::zero();
    let mut m: i64 = 0;
    loop {
        let mut any = false;
        let candidates: &[i64] = if m == 0 { &[0] } else { &[m, -m] };
        for &mm in candidates {
            let e = pent(mm);
            if e <= n {
                any = true;
                if (n - e) % 5 == 0 {
                    let term = p2.coeff(((n - e) / 5) as usize);
                    if m % 2 == 0 {
                        total += term;
                    } else {
                        total -= term;
                    }
                }
            }
        }
        if !any {
            break;
        }
        m += 1;
    }
    total
}

/// Signed theta series Σ_{j∈ℤ} (−1)^j q^{2j²} truncated at `n_max`.
fn signed_square_theta(n_max: usize) -> IntSeries {
    let mut c = vec![BigInt::zero(); n_max + 1];
    let mut j: u64 = 0;
    while (2 * j * j) as usize <= n_max {
        let s: i32 = if j % 2 == 0 { 1 } else { -1 };
        let mult = if j == 0 { 1 } else { 2 };
        c[(2 * j * j) as usize] += s * mult;
        j += 1;
    }
    IntSeries::from_coeffs(c)
}

/// 1 + Σ_{a≥1} q^{T_a} (triangular-number indicator plus constant 1).
fn one_plus_triangular(n_max: usize) -> IntSeries {
    let mut c = vec![BigInt::zero(); n_max + 1];
    c[0] = BigInt::one();
    let mut a: u64 = 1;
    while (triangular(a) as usize) <= n_max {
        c[triangular(a) as usize] += 1;
        a += 1;
    }
    IntSeries::from_coeffs(c)
}

/// 1 + Σ_{c≠0} (−1)^c q^{pent(c)} (signed pentagonal indicator plus 1).
fn one_plus_signed_pentagonal(n_max: usize) -> IntSeries {
    let mut c = vec![BigInt::zero(); n_max + 1];
    c[0] = BigInt::one();
    let mut m: i64 = 1;
    loop {
        let mut any = false;
        for mm in [m, -m] {
            let e = pent(mm) as usize;
            if e <= n_max {
                c[e] += if m % 2 == 0 { 1 } else { -1 };
                any = true;
            }
        }
        if !any {
            break;
        }
        m += 1;
    }
    IntSeries::from_coeffs(c)
}

/// Signed weighted tuple counts: coefficients of
/// θ³ · (1 + Σ q^{T_a})^{−2} · (1 + Σ (−1)^c q^{pent(c)})^{−1}
/// with θ = Σ (−1)^j q^{2j²}. Intermediate inverse coefficients grow
/// geometrically, hence BigInt throughout.
pub fn weighted_tuple_count_series(n_max: usize) -> IntSeries {
    let theta = signed_square_theta(n_max);
    let theta3 = series_mul(&series_mul(&theta, &theta, n_max), &theta, n_max);
    let inv_u = series_inverse(&one_plus_triangular(n_max), n_max).expect("unit constant");
    let inv_v =
        series_inverse(&one_plus_signed_pentagonal(n_max), n_max).expect("unit constant");
    let inv_u2 = series_mul(&inv_u, &inv_u, n_max);
    series_mul(&theta3, &series_mul(&inv_u2, &inv_v, n_max), n_max)
}

/// Reference implementation of [`weighted_tuple_count_series`] by direct
/// recursion with no shared tables; exponential, for cross-checking small n.
pub fn weighted_tuple_count_bruteforce(n: u64) -> BigInt {
    fn inv_u(rem: u64) -> i64 {
        let mut s: i64 = if rem == 0 { 1 } else { 0 };
        let mut a = 1u64;
        while triangular(a) <= rem {
            s -= inv_u(rem - triangular(a));
            a += 1;
        }
        if rem == 0 {
            1
        } else {
            s
        }
    }
    fn inv_v(rem: u64) -> i64 {
        if rem == 0 {
            return 1;
        }
        let mut s: i64 = 0;
        let mut m = 1i64;
        loop {
            let mut any = false;
            for mm in [m, -m] {
                let e = pent(mm);
                if e <= rem {
                    any = true;
                    let sign = if m % 2 == 0 { 1 } else { -1 };
                    s -= sign * inv_v(rem - e);
                }
            }
            if !any {
                break;
            }
            m += 1;
        }
        s
    }
    fn theta3(t: u64) -> i64 {
        // direct triple sum over (j1, j2, j3) with 2(j1²+j2²+j3²) = t
        let mut s = 0i64;
        let lim = ((t / 2) as f64).sqrt() as i64 + 1;
        for j1 in -lim..=lim {
            for j2 in -lim..=lim {
                let rest = t as i64 - 2 * (j1 * j1 + j2 * j2);
                if rest < 0 || rest % 2 != 0 {
                    continue;
                }
                let half = rest / 2;
                let j3 = (half as f64).sqrt().round() as i64;
                if j3 * j3 == half {
                    let parity = (j1 + j2 + j3).rem_euclid(2);
                    let sign = if parity == 0 { 1 } else { -1 };
                    s += sign * if j3 == 0 { 1 } else { 2 };
                }
            }
        }
        s
    }
    let mut total = BigInt::zero();
    for t in 0..=n {
        let th = theta3(t);
        if th == 0 {
            continue;
        }
        for r1 in 0..=(n - t) {
            let g1 = inv_u(r1);
            if g1 == 0 {
                continue;
            }
            for r2 in 0..=(n - t - r1) {
                let g2 = inv_u(r2);
                if g2 == 0 {
                    continue;
                }
                let v = inv_v(n - t - r1 - r2);
                total += BigInt::from(th) * BigInt::from(g1) * BigInt::from(g2) * BigInt::from(v);
            }
        }
    }
    total
}
