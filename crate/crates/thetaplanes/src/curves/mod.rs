//! Exact geometry of rational normal curves and plane conics.
//!
//! A hyperplane meets the standard rational normal curve `[1, t, ..., t^r]`
//! in the divisor cut out by its restriction polynomial; tangency at every
//! intersection point is a perfect-square condition on that polynomial.
//! Conics appear in the genus-3 split model, where a curve is a pair of
//! conics: common tangents and intersection points are computed by pencil
//! degeneration (see [`pencil`]).

pub mod pencil;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::configuration::{NodeSet, Provenance, WeightedConfig};
use crate::error::{Error, Result};
use crate::exactlin::{self, matrix, Hyperplane, ProjPoint, Scalar};
use crate::poly::UniPoly;

pub use pencil::{CertifiedSolution, DEFAULT_PRECISION, RESIDUAL_THRESHOLD};

/// A parameter value on the standard rational normal curve, including the
/// point at infinity `[0, ..., 0, 1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RncParam {
    Finite(Scalar),
    Infinity,
}

impl RncParam {
    pub fn from_int(n: i64) -> Self {
        RncParam::Finite(Scalar::from(BigInt::from(n)))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        RncParam::Finite(Scalar::new(BigInt::from(n), BigInt::from(d)))
    }
}

/// Point `[1, t, t^2, ..., t^r]` of the standard rational normal curve in
/// `P^r`, with the infinity parameter mapping to `[0, ..., 0, 1]`.
pub fn rnc_point(r: usize, t: &RncParam) -> ProjPoint {
    match t {
        RncParam::Infinity => {
            let mut coords = vec![Scalar::zero(); r + 1];
            coords[r] = Scalar::one();
            ProjPoint::new(coords).expect("nonzero by construction")
        }
        RncParam::Finite(t) => {
            let mut coords = Vec::with_capacity(r + 1);
            let mut power = Scalar::one();
            for _ in 0..=r {
                coords.push(power.clone());
                power *= t;
            }
            ProjPoint::new(coords).expect("leading 1 makes this nonzero")
        }
    }
}

/// Restriction of a hyperplane to the standard rational normal curve:
/// `p(t) = Σ_j H_j t^j`. Its roots (with multiplicity, plus a degree drop
/// for infinity) form the intersection divisor.
pub fn restriction_poly(h: &Hyperplane) -> UniPoly {
    UniPoly::new(h.to_scalars())
}

/// The unique hyperplane tangent to the standard rational normal curve of
/// even degree `r` at `r/2` prescribed distinct parameters. Its restriction
/// polynomial is `Π (t - t_i)^2` over the finite parameters; an infinity
/// parameter appears as a degree drop of two.
pub fn rnc_tangent_hyperplane(r: usize, params: &[RncParam]) -> Result<Hyperplane> {
    if r < 2 || r % 2 != 0 {
        return Err(Error::InvalidInput(format!(
            "tangent hyperplanes need even ambient dimension >= 2, got {r}"
        )));
    }
    if params.len() != r / 2 {
        return Err(Error::InvalidInput(format!(
            "need exactly {} tangency parameters for dimension {r}, got {}",
            r / 2,
            params.len()
        )));
    }
    for (i, a) in params.iter().enumerate() {
        for b in &params[i + 1..] {
            if a == b {
                return Err(Error::InvalidInput("repeated tangency parameter".into()));
            }
        }
    }
    let mut square = UniPoly::constant(Scalar::one());
    for p in params {
        if let RncParam::Finite(t) = p {
            let factor = UniPoly::linear_root(t);
            square = square.mul(&factor).mul(&factor);
        }
    }
    let mut coeffs = vec![Scalar::zero(); r + 1];
    for (k, c) in square.coeffs().iter().enumerate() {
        coeffs[k] = c.clone();
    }
    Hyperplane::new(coeffs)
}

/// Tangency test on the rational normal curve of degree `h.ambient_dim()`:
/// the intersection divisor is everywhere non-reduced iff the restriction
/// polynomial is a nonzero square up to a constant and the degree drop at
/// infinity is even. Decided by exact coefficient recursion, without any
/// root extraction.
pub fn is_square_restriction(h: &Hyperplane) -> bool {
    let r = h.ambient_dim();
    let p = restriction_poly(h);
    let Some(deg) = p.degree() else {
        return false;
    };
    (r - deg) % 2 == 0 && p.is_square_up_to_constant()
}

pub(crate) type Mat3 = [[Scalar; 3]; 3];

pub(crate) fn mat3_zero() -> Mat3 {
    std::array::from_fn(|_| std::array::from_fn(|_| Scalar::zero()))
}

pub(crate) fn mat3_det(m: &Mat3) -> Scalar {
    let mut det = Scalar::zero();
    det += &m[0][0] * (&m[1][1] * &m[2][2] - &m[1][2] * &m[2][1]);
    det -= &m[0][1] * (&m[1][0] * &m[2][2] - &m[1][2] * &m[2][0]);
    det += &m[0][2] * (&m[1][0] * &m[2][1] - &m[1][1] * &m[2][0]);
    det
}

pub(crate) fn mat3_adjugate(m: &Mat3) -> Mat3 {
    let minor = |r0: usize, r1: usize, c0: usize, c1: usize| -> Scalar {
        &m[r0][c0] * &m[r1][c1] - &m[r0][c1] * &m[r1][c0]
    };
    // adj[i][j] = cofactor_{j,i}
    let mut adj = mat3_zero();
    let rows = [(1usize, 2usize), (0, 2), (0, 1)];
    for j in 0..3 {
        for i in 0..3 {
            let (r0, r1) = rows[j];
            let (c0, c1) = rows[i];
            let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
            let val = minor(r0, r1, c0, c1);
            adj[i][j] = val * Scalar::from(BigInt::from(sign));
        }
    }
    adj
}

pub(crate) fn mat3_rank(m: &Mat3) -> usize {
    matrix::rank(m.iter().map(|row| row.to_vec()).collect())
}

pub(crate) fn mat3_bilinear(m: &Mat3, u: &[Scalar], v: &[Scalar]) -> Scalar {
    let mut acc = Scalar::zero();
    for i in 0..3 {
        for j in 0..3 {
            acc += &u[i] * &m[i][j] * &v[j];
        }
    }
    acc
}

fn mat3_proportional(a: &Mat3, b: &Mat3) -> bool {
    let pairs: Vec<(&Scalar, &Scalar)> = a
        .iter()
        .flatten()
        .zip(b.iter().flatten())
        .collect();
    let Some((x0, y0)) = pairs
        .iter()
        .find(|(x, y)| !x.is_zero() || !y.is_zero())
        .copied()
    else {
        return true;
    };
    pairs.iter().all(|(x, y)| *x * y0 == *y * x0)
}

/// A plane conic, stored as an exact symmetric 3x3 matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Conic {
    m: Mat3,
}

impl Conic {
    pub fn new(m: Mat3) -> Result<Self> {
        for i in 0..3 {
            for j in (i + 1)..3 {
                if m[i][j] != m[j][i] {
                    return Err(Error::InvalidInput("conic matrix is not symmetric".into()));
                }
            }
        }
        if m.iter().flatten().all(Zero::is_zero) {
            return Err(Error::InvalidInput("zero conic matrix".into()));
        }
        Ok(Self { m })
    }

    /// Conic `a x^2 + b xy + c y^2 + d xz + e yz + f z^2 = 0`, given as
    /// `[a, b, c, d, e, f]`. The stored matrix is doubled to stay integral.
    pub fn from_coeffs(coeffs: &[Scalar; 6]) -> Result<Self> {
        let [a, b, c, d, e, f] = coeffs.clone();
        let two = Scalar::from(BigInt::from(2));
        Self::new([
            [&a * &two, b.clone(), d.clone()],
            [b, &c * &two, e.clone()],
            [d, e, &f * &two],
        ])
    }

    pub fn from_int_coeffs(coeffs: &[i64; 6]) -> Result<Self> {
        let s: Vec<Scalar> = coeffs.iter().map(|&n| Scalar::from(BigInt::from(n))).collect();
        Self::from_coeffs(&s.try_into().expect("six coefficients"))
    }

    pub fn matrix(&self) -> &Mat3 {
        &self.m
    }

    pub fn det(&self) -> Scalar {
        mat3_det(&self.m)
    }

    pub fn rank(&self) -> usize {
        mat3_rank(&self.m)
    }

    pub fn is_nondegenerate(&self) -> bool {
        !self.det().is_zero()
    }

    /// Value of the quadratic form at a point; zero iff the point lies on
    /// the conic.
    pub fn eval_point(&self, p: &ProjPoint) -> Scalar {
        let v = p.to_scalars();
        mat3_bilinear(&self.m, &v, &v)
    }

    /// The adjugate matrix as a conic of the dual plane. For a
    /// nondegenerate conic, a line `L` is tangent iff `L . adj . L = 0`.
    pub fn adjugate(&self) -> Conic {
        Conic { m: mat3_adjugate(&self.m) }
    }

    /// Exact tangency residual of a line against this conic's dual form.
    pub fn dual_eval_line(&self, line: &Hyperplane) -> Scalar {
        let v = line.to_scalars();
        mat3_bilinear(&mat3_adjugate(&self.m), &v, &v)
    }

    /// Projective equality (matrices proportional).
    pub fn same_conic(&self, other: &Conic) -> bool {
        mat3_proportional(&self.m, &other.m)
    }
}

/// Exact basis of the pencil of conics through four points. The basis
/// members may be degenerate; combine them to taste.
pub fn pencil_basis_through(points: &[ProjPoint; 4]) -> Result<(Conic, Conic)> {
    let mut rows = Vec::with_capacity(4);
    for p in points {
        if p.ambient_dim() != 2 {
            return Err(Error::InvalidInput("pencil points must lie in P^2".into()));
        }
        let v = p.to_scalars();
        rows.push(vec![
            &v[0] * &v[0],
            &v[0] * &v[1],
            &v[1] * &v[1],
            &v[0] * &v[2],
            &v[1] * &v[2],
            &v[2] * &v[2],
        ]);
    }
    let basis = matrix::nullspace(&rows, 6);
    if basis.len() != 2 {
        return Err(Error::InvalidInput(
            "points do not impose independent conditions on conics".into(),
        ));
    }
    let to_conic = |v: &Vec<Scalar>| -> Result<Conic> {
        Conic::from_coeffs(&v.clone().try_into().expect("six coefficients"))
    };
    Ok((to_conic(&basis[0])?, to_conic(&basis[1])?))
}

/// The four common tangent lines of two nondegenerate conics, counted with
/// multiplicity, via degeneration of the dual pencil. Each returned line
/// carries residuals against both dual forms; rational tangents come out
/// exact.
pub fn common_tangents(
    c1: &Conic,
    c2: &Conic,
    precision: f64,
) -> Result<Vec<CertifiedSolution>> {
    if !c1.is_nondegenerate() || !c2.is_nondegenerate() {
        return Err(Error::InvalidInput(
            "common tangents require nondegenerate conics".into(),
        ));
    }
    let a = mat3_adjugate(&c1.m);
    let b = mat3_adjugate(&c2.m);
    pencil::pencil_solutions(&a, &b, precision)
}

/// The four intersection points of two conics without a common component,
/// counted with multiplicity, via degeneration of the pencil they span.
/// Rational intersections come out exact.
pub fn conic_intersections(
    c1: &Conic,
    c2: &Conic,
    precision: f64,
) -> Result<Vec<CertifiedSolution>> {
    pencil::pencil_solutions(&c1.m, &c2.m, precision)
}

/// The full weighted theta-hyperplane data of a genus-3 split curve given
/// as a pair of conics meeting transversally at four rational points: the
/// six chords through node pairs (exact, multiplicity 4) and the four
/// common tangents (multiplicity 1, numeric with certificates when not
/// rational). Total weighted degree 28.
#[derive(Debug)]
pub struct SplitQuartic {
    /// The four nodes, exact.
    pub nodes: Vec<ProjPoint>,
    /// The six node chords with multiplicity 4 each.
    pub chords: WeightedConfig,
    /// The four common tangents with multiplicity 1 each.
    pub tangents: Vec<CertifiedSolution>,
}

impl SplitQuartic {
    pub fn weighted_degree(&self) -> BigInt {
        let tangent_weight: u32 = self.tangents.iter().map(|t| t.multiplicity).sum();
        self.chords.weighted_degree() + BigInt::from(tangent_weight)
    }
}

pub fn split_quartic_config(c1: &Conic, c2: &Conic, precision: f64) -> Result<SplitQuartic> {
    let intersections = conic_intersections(c1, c2, precision)?;
    let mut nodes = Vec::new();
    for sol in &intersections {
        if sol.multiplicity != 1 {
            return Err(Error::InvalidInput(
                "conics do not meet transversally".into(),
            ));
        }
        let Some(exact) = &sol.exact else {
            return Err(Error::InvalidInput(
                "intersection points are not rational; no exact configuration exists".into(),
            ));
        };
        nodes.push(ProjPoint::from_bigints(exact.clone())?);
    }
    nodes.sort();
    nodes.dedup();
    if nodes.len() != 4 {
        return Err(Error::InvalidInput(
            "conics do not meet in four distinct points".into(),
        ));
    }
    let node_set = NodeSet::new(nodes.clone(), 2)?;
    let mut chords = WeightedConfig::new(2);
    for i in 0..4 {
        for j in (i + 1)..4 {
            let chord =
                exactlin::hyperplane_through(&[nodes[i].clone(), nodes[j].clone()])?;
            chords.insert(chord, 4, Provenance::NodeSpan);
        }
    }
    debug_assert_eq!(node_set.points().len(), 4);
    if chords.len() != 6 {
        return Err(Error::GenericityFailure(
            "node chords are not pairwise distinct".into(),
        ));
    }
    let tangents = common_tangents(c1, c2, precision)?;
    Ok(SplitQuartic { nodes, chords, tangents })
}

#[cfg(test)]
mod tests;
