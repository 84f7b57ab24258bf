//! Exact univariate polynomials over the rationals.
//!
//! Used for restriction divisors of hyperplanes on rational normal curves
//! and for the degeneration cubic of conic pencils. The perfect-square test
//! runs a coefficient recursion; it never extracts roots.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::exactlin::Scalar;

/// Polynomial with exact rational coefficients, stored by ascending degree
/// with the leading coefficient nonzero (empty vector = zero polynomial).
#[derive(Clone, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<Scalar>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: Scalar) -> Self {
        Self::new(vec![c])
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&n| Scalar::from(BigInt::from(n))).collect())
    }

    /// `x - root`
    pub fn linear_root(root: &Scalar) -> Self {
        Self::new(vec![-root.clone(), Scalar::one()])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Scalar {
        self.coeffs.get(k).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn leading(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let mut acc = Scalar::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        Self::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c * Scalar::from(BigInt::from(i as u64 + 1)))
                .collect(),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Scalar::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(self.coeff(k) + other.coeff(k));
        }
        Self::new(out)
    }

    /// Exact division by `x - root`; `None` if `root` is not a root.
    pub fn deflate(&self, root: &Scalar) -> Option<Self> {
        if self.is_zero() || !self.eval(root).is_zero() {
            return None;
        }
        let n = self.coeffs.len();
        let mut out = vec![Scalar::zero(); n - 1];
        let mut carry = Scalar::zero();
        for k in (0..n - 1).rev() {
            carry = self.coeffs[k + 1].clone() + carry * root;
            out[k] = carry.clone();
        }
        Some(Self::new(out))
    }

    /// Equality up to a nonzero scalar factor.
    pub fn proportional_to(&self, other: &Self) -> bool {
        match (self.leading(), other.leading()) {
            (None, None) => true,
            (Some(a), Some(b)) => {
                self.coeffs.len() == other.coeffs.len()
                    && self.scale(b) == other.scale(a)
            }
            _ => false,
        }
    }

    /// Monic square root via the top-down coefficient recursion, if one
    /// exists. Requires `self` monic of even degree.
    fn monic_sqrt(&self) -> Option<Self> {
        let deg = self.degree()?;
        if deg % 2 != 0 || !self.leading().unwrap().is_one() {
            return None;
        }
        let m = deg / 2;
        let mut q = vec![Scalar::zero(); m + 1];
        q[m] = Scalar::one();
        for k in (0..m).rev() {
            // Coefficient of x^{m+k} in q^2 is 2 q_k + sum over the already
            // determined middle terms.
            let mut middle = Scalar::zero();
            for a in (k + 1)..m {
                let b = m + k - a;
                if b > a {
                    continue;
                }
                let prod = &q[a] * &q[b];
                if a == b {
                    middle += prod;
                } else {
                    middle += prod * Scalar::from(BigInt::from(2));
                }
            }
            q[k] = (self.coeff(m + k) - middle) / Scalar::from(BigInt::from(2));
        }
        let q = Self::new(q);
        (q.mul(&q) == *self).then_some(q)
    }

    /// True iff `self = c * q^2` for some nonzero rational `c` and rational
    /// polynomial `q`.
    pub fn is_square_up_to_constant(&self) -> bool {
        let Some(lead) = self.leading() else {
            return false;
        };
        let monic = self.scale(&lead.recip());
        monic.monic_sqrt().is_some()
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("{c}"),
                1 => format!("{c}*t"),
                _ => format!("{c}*t^{i}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn square_detection_on_hand_cases() {
        // t^2
        assert!(UniPoly::from_ints(&[0, 0, 1]).is_square_up_to_constant());
        // 1 - t^2 is squarefree
        assert!(!UniPoly::from_ints(&[1, 0, -1]).is_square_up_to_constant());
        // 4(t-1)^2(t+2)^2 = 4(t^2+t-2)^2
        let p = UniPoly::from_ints(&[16, -16, -12, 8, 4]);
        assert!(p.is_square_up_to_constant());
        // constant nonzero is a square of a constant
        assert!(UniPoly::from_ints(&[7]).is_square_up_to_constant());
        // zero polynomial is not accepted
        assert!(!UniPoly::zero().is_square_up_to_constant());
        // odd degree never is
        assert!(!UniPoly::from_ints(&[0, 0, 0, 2]).is_square_up_to_constant());
    }

    #[test]
    fn deflate_divides_out_roots() {
        // (t - 2)(t + 3) = t^2 + t - 6
        let p = UniPoly::from_ints(&[-6, 1, 1]);
        let d = p.deflate(&q(2, 1)).unwrap();
        assert_eq!(d, UniPoly::from_ints(&[3, 1]));
        assert!(p.deflate(&q(5, 1)).is_none());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn squares_of_random_polys_are_squares(
            coeffs in prop::collection::vec(-9i64..9, 1..5),
            scale_num in prop::sample::select(vec![-3i64, -1, 2, 5]),
        ) {
            let base = UniPoly::new(
                coeffs.iter().map(|&n| Scalar::from(BigInt::from(n))).collect(),
            );
            prop_assume!(!base.is_zero());
            let sq = base.mul(&base).scale(&q(scale_num, 1));
            prop_assert!(sq.is_square_up_to_constant());
            // Multiplying by a fresh simple root breaks squareness.
            let spoiled = sq.mul(&UniPoly::from_ints(&[1, 1, 1]));
            // t^2 + t + 1 is squarefree and coprime to everything rational
            // squared, so the product cannot be a square times a constant.
            prop_assert!(!spoiled.is_square_up_to_constant());
        }
    }
}
