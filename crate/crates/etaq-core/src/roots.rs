//! Exact roots of unity represented as rational turns.
//!
//! A value `r` (with 0 ≤ r < 1) stands for the complex number e^{2πi·r}.
//! Multiplier-system arithmetic stays in this exact form until the final
//! conversion to floating point, so identities like h-periodicity can be
//! tested as rational equalities rather than approximate ones.

use num_complex::Complex64;
use num_rational::Ratio;
use num_traits::Zero;
use std::fmt;
use std::ops::{Div, Mul, Neg};

/// A unit complex number e^{2πi·turns} with `turns` an exact rational in [0, 1).
///
/// Denominators arising in this crate divide 24·8·3·k for a modulus k, which
/// keeps every intermediate product comfortably inside `i128`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RootOfUnity {
    turns: Ratio<i128>,
}

impl RootOfUnity {
    /// Builds the root e^{2πi·r}, reducing `r` modulo 1 into [0, 1).
    pub fn from_turns(r: Ratio<i128>) -> Self {
        Self { turns: r - r.floor() }
    }

    /// Convenience constructor from a numerator/denominator pair of turns.
    pub fn from_frac(num: i128, den: i128) -> Self {
        assert!(den != 0, "zero denominator");
        Self::from_turns(Ratio::new(num, den))
    }

    /// The multiplicative identity (zero turns).
    pub fn one() -> Self {
        Self { turns: Ratio::zero() }
    }

    /// i, the quarter turn.
    pub fn quarter_turn() -> Self {
        Self::from_frac(1, 4)
    }

    /// −1, the half turn.
    pub fn half_turn() -> Self {
        Self::from_frac(1, 2)
    }

    /// The exact turn count in [0, 1).
    pub fn turns(&self) -> Ratio<i128> {
        self.turns
    }

    /// Complex conjugate (negated turns).
    pub fn conj(&self) -> Self {
        Self::from_turns(-self.turns)
    }

    /// Integer power, exact.
    pub fn pow(&self, e: i64) -> Self {
        Self::from_turns(self.turns * Ratio::from_integer(e as i128))
    }

    /// Converts to a floating-point complex number on the unit circle.
    pub fn value(&self) -> Complex64 {
        let angle = 2.0 * std::f64::consts::PI * ratio_to_f64(self.turns);
        Complex64::new(angle.cos(), angle.sin())
    }

    /// True when the value is exactly 1.
    pub fn is_one(&self) -> bool {
        self.turns.is_zero()
    }

    /// True when the value is real (turns 0 or 1/2).
    pub fn is_real(&self) -> bool {
        (self.turns * Ratio::from_integer(2)).is_integer()
    }
}

/// Lossless-enough conversion for the denominators used here (≪ 2^53).
fn ratio_to_f64(r: Ratio<i128>) -> f64 {
    let num = *r.numer();
    let den = *r.denom();
    debug_assert!(num.abs() < (1i128 << 53) && den.abs() < (1i128 << 53));
    num as f64 / den as f64
}

impl Mul for RootOfUnity {
    type Output = RootOfUnity;
    fn mul(self, rhs: Self) -> Self {
        Self::from_turns(self.turns + rhs.turns)
    }
}

impl Div for RootOfUnity {
    type Output = RootOfUnity;
    fn div(self, rhs: Self) -> Self {
        Self::from_turns(self.turns - rhs.turns)
    }
}

impl Neg for RootOfUnity {
    type Output = RootOfUnity;
    /// Multiplication by −1 (adds a half turn).
    fn neg(self) -> Self {
        self * Self::half_turn()
    }
}

impl fmt::Display for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.turns.is_zero() {
            write!(f, "1")
        } else if *self.turns.numer() == 1 && *self.turns.denom() == 2 {
            write!(f, "-1")
        } else if *self.turns.numer() == 1 && *self.turns.denom() == 4 {
            write!(f, "i")
        } else if *self.turns.numer() == 3 && *self.turns.denom() == 4 {
            write!(f, "-i")
        } else {
            write!(f, "e(2\u{3c0}i\u{b7}{}/{})", self.turns.numer(), self.turns.denom())
        }
    }
}
