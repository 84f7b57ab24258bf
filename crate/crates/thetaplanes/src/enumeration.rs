//! Closed-form counts of theta-hyperplanes by type, for the three curve
//! models handled by the library, together with the consistency identities
//! used as cross-checks.
//!
//! A theta-hyperplane of type `i` contains exactly `i` singular points of
//! the curve and occurs with multiplicity `2^i` in the degree-`N_g` theta
//! hypersurface of a nodal model; the identity `Σ 2^i t_i = N_g` holds for
//! every nodal model and is enforced by tests.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Curve models with closed-form theta-hyperplane counts.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CurveModel {
    /// Irreducible canonical curve of the given genus with `nodes` nodes.
    IrreducibleNodal { genus: u32, nodes: u32 },
    /// Union of two rational normal curves meeting transversally at
    /// `genus + 1` points.
    Split { genus: u32 },
    /// Integral curve with `cusps` ordinary cusps and no other singularity.
    Cuspidal { genus: u32, cusps: u32 },
}

impl CurveModel {
    pub fn genus(&self) -> u32 {
        match *self {
            CurveModel::IrreducibleNodal { genus, .. }
            | CurveModel::Split { genus }
            | CurveModel::Cuspidal { genus, .. } => genus,
        }
    }

    fn validate(&self) -> Result<()> {
        match *self {
            CurveModel::IrreducibleNodal { genus, nodes } => {
                if genus < 3 {
                    return Err(Error::InvalidModel(format!("genus {genus} < 3")));
                }
                if nodes > genus {
                    return Err(Error::InvalidModel(format!(
                        "irreducible model allows at most {genus} nodes, got {nodes}"
                    )));
                }
            }
            CurveModel::Split { genus } => {
                if genus < 3 {
                    return Err(Error::InvalidModel(format!("genus {genus} < 3")));
                }
            }
            CurveModel::Cuspidal { genus, cusps } => {
                if genus < 3 {
                    return Err(Error::InvalidModel(format!("genus {genus} < 3")));
                }
                if cusps == 0 || cusps > genus {
                    return Err(Error::InvalidModel(format!(
                        "cusp count must lie in 1..={genus}, got {cusps}"
                    )));
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for CurveModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            CurveModel::IrreducibleNodal { genus, nodes } => {
                write!(f, "irreducible genus {genus} nodes {nodes}")
            }
            CurveModel::Split { genus } => write!(f, "split genus {genus}"),
            CurveModel::Cuspidal { genus, cusps } => {
                write!(f, "cuspidal genus {genus} cusps {cusps}")
            }
        }
    }
}

/// The count vector `t_0, ..., t_{g-1}` of a model, plus its per-type
/// multiplicities when those are defined (nodal models only).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaTable {
    pub model: CurveModel,
    pub counts: Vec<BigInt>,
    /// `2^i` per type for nodal models; `None` for cuspidal models, whose
    /// multiplicities are not determined by the counting arguments here.
    pub multiplicities: Option<Vec<BigInt>>,
}

impl ThetaTable {
    /// Sum of all counts, ignoring multiplicities.
    pub fn total(&self) -> BigInt {
        self.counts.iter().sum()
    }
}

pub fn pow2(e: u32) -> BigInt {
    BigInt::one() << e
}

pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k.min(n - k) {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Number of odd theta-characteristics of a smooth genus-`g` curve:
/// `2^{g-1} (2^g - 1)`.
pub fn n_odd(genus: u32) -> BigInt {
    if genus == 0 {
        return BigInt::zero();
    }
    pow2(genus - 1) * (pow2(genus) - BigInt::one())
}

/// Number of even theta-characteristics: `2^{g-1} (2^g + 1)`. Together with
/// [`n_odd`] this sums to `2^{2g}`.
pub fn n_even(genus: u32) -> BigInt {
    if genus == 0 {
        return BigInt::one();
    }
    pow2(genus - 1) * (pow2(genus) + BigInt::one())
}

/// Multiplicity of a type-`i` theta-hyperplane in the theta hypersurface of
/// a nodal model: `2^i`.
pub fn multiplicity(type_index: u32) -> BigInt {
    pow2(type_index)
}

/// Count vector of the given model.
///
/// For the irreducible model the type `g-2` count follows the same binomial
/// pattern as every lower type; this is the only choice consistent with the
/// degree identity `Σ 2^i t_i = N_g` and with the projection recursion
/// `t_i(g, δ) = C(δ, i) t_0(g-i, δ-i)`, both of which are enforced by the
/// test suite.
pub fn theta_table(model: CurveModel) -> Result<ThetaTable> {
    model.validate()?;
    let genus = model.genus();
    let g = genus as usize;
    let mut counts = vec![BigInt::zero(); g];
    match model {
        CurveModel::IrreducibleNodal { nodes, .. } => {
            if nodes == 0 {
                counts[0] = n_odd(genus);
            } else {
                for i in 0..g as u32 {
                    if i < nodes {
                        counts[i as usize] =
                            binomial(nodes, i) * pow2(2 * genus - nodes - i - 1);
                    } else if i == nodes {
                        counts[i as usize] = n_odd(genus - nodes);
                    }
                }
            }
        }
        CurveModel::Split { .. } => {
            for j in 0..g as u32 {
                if j % 2 != genus % 2 {
                    counts[j as usize] = binomial(genus + 1, j) * pow2(genus - j - 1);
                }
            }
        }
        CurveModel::Cuspidal { cusps, .. } => {
            let h = genus - cusps;
            for i in 0..g as u32 {
                if i <= cusps && i < genus - 1 {
                    let base = if i % 2 == cusps % 2 { n_odd(h) } else { n_even(h) };
                    counts[i as usize] = binomial(cusps, i) * base;
                }
            }
            if cusps == genus - 1 {
                counts[g - 1] = BigInt::one();
            } else if cusps == genus {
                counts[g - 1] = BigInt::from(genus);
            }
        }
    }
    let multiplicities = match model {
        CurveModel::Cuspidal { .. } => None,
        _ => Some((0..g as u32).map(multiplicity).collect()),
    };
    Ok(ThetaTable { model, counts, multiplicities })
}

/// Weighted degree `Σ 2^i t_i` of a nodal table; equals `n_odd(g)` for every
/// valid model. Cuspidal tables are rejected because their multiplicities
/// are unspecified.
pub fn weighted_degree(table: &ThetaTable) -> Result<BigInt> {
    let Some(mults) = &table.multiplicities else {
        return Err(Error::UnsupportedModel(
            "weighted degree is undefined for cuspidal models".into(),
        ));
    };
    Ok(table
        .counts
        .iter()
        .zip(mults)
        .map(|(t, m)| t * m)
        .sum())
}

/// Total number of theta-hyperplanes of the cuspidal model in the formula
/// regime `1 <= cusps <= g - 2`: equals `2^{2g - γ - 1}`. The exponent is
/// the one forced by the fiber count of the characteristic-to-hyperplane
/// correspondence, and it matches the tabulated counts exactly.
pub fn cuspidal_total(genus: u32, cusps: u32) -> Result<BigInt> {
    if genus < 3 || cusps == 0 || cusps > genus.saturating_sub(2) {
        return Err(Error::InvalidModel(format!(
            "cuspidal total requires 1 <= cusps <= genus-2, got genus {genus} cusps {cusps}"
        )));
    }
    Ok(pow2(2 * genus - cusps - 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    fn counts(model: CurveModel) -> Vec<BigInt> {
        theta_table(model).unwrap().counts
    }

    #[test]
    fn odd_and_even_characteristic_counts() {
        assert_eq!(n_odd(1), big(1));
        assert_eq!(n_odd(3), big(28));
        assert_eq!(n_odd(4), big(120));
        assert_eq!(n_even(2), big(10));
        assert_eq!(n_even(3), big(36));
        for g in 1..=16u32 {
            assert_eq!(n_odd(g) + n_even(g), pow2(2 * g));
        }
    }

    #[test]
    fn irreducible_tables() {
        assert_eq!(
            counts(CurveModel::IrreducibleNodal { genus: 3, nodes: 1 }),
            vec![big(16), big(6), big(0)]
        );
        // Cross-checked by the weighted degree below equalling 120.
        assert_eq!(
            counts(CurveModel::IrreducibleNodal { genus: 4, nodes: 4 }),
            vec![big(8), big(16), big(12), big(4)]
        );
        assert_eq!(
            counts(CurveModel::IrreducibleNodal { genus: 4, nodes: 3 }),
            vec![big(16), big(24), big(12), big(1)]
        );
        // Smooth model: a single type-0 stratum.
        let smooth = counts(CurveModel::IrreducibleNodal { genus: 5, nodes: 0 });
        assert_eq!(smooth[0], n_odd(5));
        assert!(smooth[1..].iter().all(Zero::is_zero));
    }

    #[test]
    fn maximal_type_counts() {
        // One node short of the maximum: a single hyperplane through all of
        // them; at the maximum: genus-many.
        for g in 3..=9u32 {
            let t = counts(CurveModel::IrreducibleNodal { genus: g, nodes: g - 1 });
            assert_eq!(t[g as usize - 1], big(1));
            let t = counts(CurveModel::IrreducibleNodal { genus: g, nodes: g });
            assert_eq!(t[g as usize - 1], big(g as i64));
        }
    }

    #[test]
    fn split_tables() {
        assert_eq!(counts(CurveModel::Split { genus: 3 }), vec![big(4), big(0), big(6)]);
        assert_eq!(
            counts(CurveModel::Split { genus: 4 }),
            vec![big(0), big(20), big(0), big(10)]
        );
        for g in 3..=12u32 {
            let t = counts(CurveModel::Split { genus: g });
            assert_eq!(t[g as usize - 1], binomial(g + 1, 2));
            for (j, tj) in t.iter().enumerate() {
                if j as u32 % 2 == g % 2 {
                    assert!(tj.is_zero(), "split parity vanishing at g={g}, j={j}");
                } else {
                    assert!(!tj.is_zero());
                }
            }
        }
    }

    #[test]
    fn cuspidal_tables() {
        assert_eq!(
            counts(CurveModel::Cuspidal { genus: 3, cusps: 1 }),
            vec![big(10), big(6), big(0)]
        );
        // Totals agree with the closed form across the formula regime.
        for g in 3..=12u32 {
            for cusps in 1..=g - 2 {
                let table = theta_table(CurveModel::Cuspidal { genus: g, cusps }).unwrap();
                assert_eq!(table.total(), cuspidal_total(g, cusps).unwrap());
            }
        }
        // Derived by summing the genus-5, two-cusp table.
        assert_eq!(cuspidal_total(5, 2).unwrap(), big(128));
        assert_eq!(
            theta_table(CurveModel::Cuspidal { genus: 5, cusps: 2 }).unwrap().total(),
            big(128)
        );
    }

    #[test]
    fn cuspidal_tables_have_no_multiplicities() {
        let table = theta_table(CurveModel::Cuspidal { genus: 4, cusps: 2 }).unwrap();
        assert!(table.multiplicities.is_none());
        assert!(matches!(
            weighted_degree(&table),
            Err(Error::UnsupportedModel(_))
        ));
    }

    #[test]
    fn multiplicity_is_a_power_of_two() {
        assert_eq!(multiplicity(0), big(1));
        assert_eq!(multiplicity(2), big(4));
        assert_eq!(multiplicity(3), big(8));
    }

    #[test]
    fn weighted_degree_identity() {
        // Hand check of the split genus-3 table: 4*1 + 6*4 = 28.
        let split3 = theta_table(CurveModel::Split { genus: 3 }).unwrap();
        assert_eq!(weighted_degree(&split3).unwrap(), big(28));
        let irr42 = theta_table(CurveModel::IrreducibleNodal { genus: 4, nodes: 2 }).unwrap();
        assert_eq!(irr42.counts, vec![big(32), big(32), big(6), big(0)]);
        assert_eq!(weighted_degree(&irr42).unwrap(), big(120));
        for g in 3..=12u32 {
            for nodes in 0..=g {
                let t = theta_table(CurveModel::IrreducibleNodal { genus: g, nodes }).unwrap();
                assert_eq!(weighted_degree(&t).unwrap(), n_odd(g), "g={g} nodes={nodes}");
            }
            let t = theta_table(CurveModel::Split { genus: g }).unwrap();
            assert_eq!(weighted_degree(&t).unwrap(), n_odd(g), "split g={g}");
        }
    }

    #[test]
    fn projection_recursion() {
        for g in 3..=12u32 {
            for nodes in 1..=g {
                let table = counts(CurveModel::IrreducibleNodal { genus: g, nodes });
                for i in 0..nodes.min(g - 1) {
                    if g - i < 3 {
                        continue;
                    }
                    let t0 = counts(CurveModel::IrreducibleNodal {
                        genus: g - i,
                        nodes: nodes - i,
                    })[0]
                        .clone();
                    assert_eq!(
                        table[i as usize],
                        binomial(nodes, i) * t0,
                        "recursion fails at g={g} nodes={nodes} i={i}"
                    );
                }
            }
        }
    }

    #[test]
    fn model_validation() {
        assert!(theta_table(CurveModel::IrreducibleNodal { genus: 2, nodes: 0 }).is_err());
        assert!(theta_table(CurveModel::IrreducibleNodal { genus: 4, nodes: 5 }).is_err());
        assert!(theta_table(CurveModel::Cuspidal { genus: 4, cusps: 0 }).is_err());
        assert!(theta_table(CurveModel::Cuspidal { genus: 4, cusps: 5 }).is_err());
        assert!(cuspidal_total(4, 3).is_err());
    }
}
