//! Number-theoretic primitives: modular inverses, Kronecker symbol, divisor
//! counts, Farey arcs, and the pentagonal/triangular index maps.
//!
//! Everything here is a pure function of its arguments and safe to call from
//! any thread.

use crate::error::EtaqError;
use crate::roots::RootOfUnity;
use crate::Result;
use num_rational::Ratio;

/// A residue class `value` modulo `modulus`, kept normalized.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Residue {
    value: u64,
    modulus: u64,
}

impl Residue {
    /// Normalizes any integer into the class `0 ≤ value < modulus`.
    pub fn new(value: i64, modulus: u64) -> Result<Self> {
        if modulus == 0 {
            return Err(EtaqError::Domain("modulus must be positive".into()));
        }
        Ok(Self { value: value.rem_euclid(modulus as i64) as u64, modulus })
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }
}

/// Extended gcd on i128: returns (g, x, y) with a·x + b·y = g.
fn egcd(a: i128, b: i128) -> (i128, i128, i128) {
    if a == 0 {
        (b, 0, 1)
    } else {
        let (g, x, y) = egcd(b.rem_euclid(a), a);
        (g, y - (b / a) * x, x)
    }
}

/// The inverse of `a` modulo `b`: the unique `x` in [0, b) with a·x ≡ 1 (mod b).
///
/// Errors when gcd(a, b) ≠ 1.
pub fn mod_inverse(a: i64, b: u64) -> Result<u64> {
    if b == 0 {
        return Err(EtaqError::Domain("modulus must be positive".into()));
    }
    if b == 1 {
        return Ok(0);
    }
    let am = (a as i128).rem_euclid(b as i128);
    let (g, x, _) = egcd(am, b as i128);
    if g != 1 {
        return Err(EtaqError::NotCoprime { a: a as i128, b: b as i128 });
    }
    Ok(x.rem_euclid(b as i128) as u64)
}

/// The "negative inverse" h′ of h: the least h′ ≥ 0 with
/// h·h′ ≡ −1 (mod `modulus_multiplier`·k).
///
/// `modulus_multiplier = 1` gives the plain companion residue; larger
/// multipliers select the representative modulo a multiple of k (the closed
/// multiplier formulas need modulus 8·gcd(k,3)·k).
pub fn h_prime(h: u64, k: u64, modulus_multiplier: u64) -> Result<u64> {
    let m = k
        .checked_mul(modulus_multiplier)
        .ok_or_else(|| EtaqError::Domain("modulus overflow".into()))?;
    if m == 0 {
        return Err(EtaqError::Domain("modulus must be positive".into()));
    }
    if m == 1 {
        return Ok(0);
    }
    let inv = mod_inverse(h as i64, m)?;
    Ok((m - inv) % m)
}

/// Like [`h_prime`] with multiplier 1, but constrained to 3 | h′.
///
/// Possible exactly when 3 ∤ k (choose the representative ≡ 0 mod 3 by the
/// Chinese remainder theorem); errors when 3 | k since then h·h′ ≡ −1 (mod 3)
/// forces 3 ∤ h′.
pub fn h_prime_div3(h: u64, k: u64) -> Result<u64> {
    if k % 3 == 0 {
        return Err(EtaqError::Unsatisfiable(
            "3 | h' is incompatible with 3 | k".into(),
        ));
    }
    let base = h_prime(h, k, 1)?;
    // Step by k within the class mod k until divisible by 3; k is invertible
    // mod 3 so at most two steps are needed.
    let mut c = base;
    while c % 3 != 0 {
        c += k;
    }
    Ok(c)
}

/// Kronecker symbol (a/n), the fully extended Legendre symbol.
pub fn kronecker(a: i64, n: i64) -> i32 {
    let mut a = a as i128;
    let mut n = n as i128;
    if n == 0 {
        return if a.unsigned_abs() == 1 { 1 } else { 0 };
    }
    let mut res = 1i32;
    if n < 0 {
        n = -n;
        if a < 0 {
            res = -res;
        }
    }
    while n % 2 == 0 {
        n /= 2;
        if a % 2 == 0 {
            return 0;
        }
        // (a/2) depends on a mod 8
        let am = a.rem_euclid(8);
        if am == 3 || am == 5 {
            res = -res;
        }
    }
    a = a.rem_euclid(n);
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            let nm = n.rem_euclid(8);
            if nm == 3 || nm == 5 {
                res = -res;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a.rem_euclid(4) == 3 && n.rem_euclid(4) == 3 {
            res = -res;
        }
        a = a.rem_euclid(n);
    }
    if n == 1 {
        res
    } else {
        0
    }
}

/// ε_d for odd d: 1 when d ≡ 1 (mod 4), i when d ≡ 3 (mod 4).
pub fn epsilon_d(d: i64) -> Result<RootOfUnity> {
    if d.rem_euclid(2) == 0 {
        return Err(EtaqError::EvenArgument(d as i128));
    }
    Ok(if d.rem_euclid(4) == 1 {
        RootOfUnity::one()
    } else {
        RootOfUnity::quarter_turn()
    })
}

/// Number of divisors d(k), by trial division (inputs are desk scale).
pub fn divisor_count(k: u64) -> u64 {
    assert!(k >= 1, "divisor_count needs k >= 1");
    let mut n = k;
    let mut count = 1u64;
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            count *= e + 1;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        count *= 2;
    }
    count
}

/// The m-th generalized pentagonal number (3m² − m)/2, for any integer m.
pub fn pent(m: i64) -> u64 {
    let m = m as i128;
    ((3 * m * m - m) / 2) as u64
}

/// The n-th triangular number n(n+1)/2.
pub fn triangular(n: u64) -> u64 {
    n * (n + 1) / 2
}

/// One arc of the Farey dissection of order `order`: the fraction h/k together
/// with its mediant distances θ_left, θ_right to the neighboring fractions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FareyArc {
    pub h: u64,
    pub k: u64,
    /// Distance to the left mediant: 1/(k(k + k_left)).
    pub theta_left: Ratio<i128>,
    /// Distance to the right mediant: 1/(k(k + k_right)).
    pub theta_right: Ratio<i128>,
    /// The Farey order the dissection was built for.
    pub order: u64,
}

/// The Farey dissection of order N ≥ 1: one arc per fraction 0 ≤ h/k < 1 with
/// gcd(h,k)=1, k ≤ N. Arc widths tile the unit interval (Σ(θ′+θ″) = 1) and
/// each satisfies θ ≤ 1/(k(N+1)).
pub fn farey_arcs(order: u64) -> Vec<FareyArc> {
    assert!(order >= 1, "farey_arcs needs order >= 1");
    let n = order as i128;
    // Stern–Brocot next-term recurrence over [0/1, 1/1].
    let mut seq: Vec<(i128, i128)> = Vec::new();
    let (mut a, mut b, mut c, mut d) = (0i128, 1i128, 1i128, n);
    seq.push((a, b));
    while c <= n {
        let step = (n + b) / d;
        let (c2, d2) = (step * c - a, step * d - b);
        seq.push((c, d));
        a = c;
        b = d;
        c = c2;
        d = d2;
    }
    // seq now covers 0/1 … 1/1; drop the final 1/1 (same circle point as 0/1).
    debug_assert_eq!(*seq.last().unwrap(), (1, 1));
    seq.pop();
    let len = seq.len();
    let mut arcs = Vec::with_capacity(len);
    for (i, &(h, k)) in seq.iter().enumerate() {
        // Left neighbor: previous entry, or the last fraction shifted by −1
        // (the dissection wraps around the circle at 0/1).
        let (_, kl) = if i > 0 { seq[i - 1] } else { (seq[len - 1].0 - seq[len - 1].1, seq[len - 1].1) };
        let (_, kr) = if i + 1 < len { seq[i + 1] } else { (1, 1) };
        arcs.push(FareyArc {
            h: h as u64,
            k: k as u64,
            theta_left: Ratio::new(1, k * (k + kl)),
            theta_right: Ratio::new(1, k * (k + kr)),
            order,
        });
    }
    arcs
}

/// Looks up the arc for a specific fraction h/k in the order-N dissection.
pub fn farey_arc(h: u64, k: u64, order: u64) -> Option<FareyArc> {
    farey_arcs(order).into_iter().find(|a| a.h == h && a.k == k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::Integer;
    use num_traits::One;

    #[test]
    fn mod_inverse_examples() {
        assert_eq!(mod_inverse(1, 7).unwrap(), 1);
        assert_eq!(mod_inverse(3, 7).unwrap(), 5);
        assert_eq!(mod_inverse(5, 24).unwrap(), 5);
        assert!(mod_inverse(2, 24).is_err());
    }

    #[test]
    fn mod_inverse_exhaustive_small() {
        for b in 1..=1000u64 {
            for a in 1..b {
                if (a as i64).gcd(&(b as i64)) == 1 {
                    let x = mod_inverse(a as i64, b).unwrap();
                    assert_eq!((a as u128 * x as u128) % b as u128, 1 % b as u128);
                }
            }
        }
    }

    #[test]
    fn h_prime_examples() {
        assert_eq!(h_prime(1, 5, 1).unwrap(), 4);
        assert_eq!(h_prime(1, 2, 1).unwrap(), 1);
        assert_eq!(h_prime(3, 4, 8).unwrap(), 21); // 3·21 = 63 ≡ −1 (mod 32)
        assert_eq!(h_prime(0, 1, 1).unwrap(), 0);
    }

    #[test]
    fn h_prime_negative_inverse_property() {
        for k in 1..=500u64 {
            for h in 0..k.max(1) {
                if h.gcd(&k) == 1 || (h == 0 && k == 1) {
                    let hp = h_prime(h, k, 1).unwrap();
                    assert_eq!((h as u128 * hp as u128 + 1) % k as u128, 0, "h={h} k={k}");
                }
            }
        }
    }

    #[test]
    fn h_prime_div3_constraint() {
        for k in [1u64, 2, 4, 5, 7, 8, 10, 11, 13] {
            for h in 0..k.max(1) {
                if h.gcd(&k) == 1 || (h == 0 && k == 1) {
                    let hp = h_prime_div3(h, k).unwrap();
                    assert_eq!(hp % 3, 0);
                    assert_eq!((h as u128 * hp as u128 + 1) % k as u128, 0);
                }
            }
        }
        assert!(h_prime_div3(1, 3).is_err());
        assert!(h_prime_div3(1, 6).is_err());
    }

    #[test]
    fn kronecker_examples() {
        assert_eq!(kronecker(1, 3), 1);
        assert_eq!(kronecker(2, 3), -1);
        assert_eq!(kronecker(-1, 5), 1);
        assert_eq!(kronecker(-1, 3), -1);
        assert_eq!(kronecker(2, 0), 0);
        assert_eq!(kronecker(1, 0), 1);
        assert_eq!(kronecker(-1, -1), -1);
    }

    #[test]
    fn kronecker_matches_quadratic_residues_for_odd_primes() {
        let primes: Vec<i64> = (3..=199)
            .filter(|&p: &i64| (2..p).all(|d| p % d != 0))
            .collect();
        for &p in &primes {
            for a in 0..p {
                let is_qr = (1..p).any(|x| (x * x) % p == a);
                let expect = if a == 0 {
                    0
                } else if is_qr {
                    1
                } else {
                    -1
                };
                assert_eq!(kronecker(a, p), expect, "a={a} p={p}");
            }
        }
    }

    #[test]
    fn kronecker_multiplicative_in_top_argument() {
        for n in 1..60i64 {
            for a in -20..20i64 {
                for b in -20..20i64 {
                    assert_eq!(
                        kronecker(a * b, n),
                        kronecker(a, n) * kronecker(b, n),
                        "a={a} b={b} n={n}"
                    );
                }
            }
        }
    }

    #[test]
    fn epsilon_examples() {
        assert!(epsilon_d(1).unwrap().is_one());
        assert_eq!(epsilon_d(3).unwrap(), RootOfUnity::quarter_turn());
        assert_eq!(epsilon_d(7).unwrap(), RootOfUnity::quarter_turn());
        assert!(epsilon_d(5).unwrap().is_one());
        assert!(epsilon_d(4).is_err());
    }

    #[test]
    fn divisor_count_examples() {
        assert_eq!(divisor_count(1), 1);
        assert_eq!(divisor_count(96), 12);
        assert_eq!(divisor_count(24), 8);
        // d(k) ≤ 2√k and d(96k) ≤ 12 d(k) on a range
        for k in 1..=2000u64 {
            assert!(divisor_count(k) as f64 <= 2.0 * (k as f64).sqrt() + 1e-9);
            assert!(divisor_count(96 * k) <= 12 * divisor_count(k));
        }
    }

    #[test]
    fn pent_and_triangular() {
        assert_eq!(pent(0), 0);
        assert_eq!(pent(1), 1);
        assert_eq!(pent(-1), 2);
        assert_eq!(pent(2), 5);
        assert_eq!(pent(-2), 7);
        assert_eq!(triangular(2), 3);
        assert_eq!(triangular(0), 0);
    }

    #[test]
    fn farey_order_one() {
        let arcs = farey_arcs(1);
        assert_eq!(arcs.len(), 1);
        assert_eq!((arcs[0].h, arcs[0].k), (0, 1));
        assert_eq!(arcs[0].theta_left, Ratio::new(1, 2));
        assert_eq!(arcs[0].theta_right, Ratio::new(1, 2));
    }

    #[test]
    fn farey_order_two_and_three() {
        let arcs = farey_arcs(2);
        let fracs: Vec<_> = arcs.iter().map(|a| (a.h, a.k)).collect();
        assert_eq!(fracs, vec![(0, 1), (1, 2)]);
        assert_eq!(arcs[0].theta_left, Ratio::new(1, 3));
        assert_eq!(arcs[1].theta_left, Ratio::new(1, 6));

        let arcs3 = farey_arcs(3);
        let fracs3: Vec<_> = arcs3.iter().map(|a| (a.h, a.k)).collect();
        assert_eq!(fracs3, vec![(0, 1), (1, 3), (1, 2), (2, 3)]);
        assert_eq!(arcs3[1].theta_left, Ratio::new(1, 12));
        assert_eq!(arcs3[1].theta_right, Ratio::new(1, 15));
        assert_eq!(arcs3[3].theta_left, Ratio::new(1, 15));
        assert_eq!(arcs3[3].theta_right, Ratio::new(1, 12));
    }

    #[test]
    fn farey_tiling_and_width_bounds() {
        for order in 1..=100u64 {
            let arcs = farey_arcs(order);
            let total: Ratio<i128> = arcs
                .iter()
                .map(|a| a.theta_left + a.theta_right)
                .sum();
            assert!(total.is_one(), "order {order}: widths sum to {total}");
            for a in &arcs {
                let cap = Ratio::new(1i128, (a.k as i128) * (order as i128 + 1));
                assert!(a.theta_left <= cap && a.theta_right <= cap);
            }
        }
    }

    #[test]
    fn residue_normalization() {
        let r = Residue::new(-3, 5).unwrap();
        assert_eq!(r.value(), 2);
        assert_eq!(r.modulus(), 5);
        assert!(Residue::new(1, 0).is_err());
    }
}
