//! Exact projective linear algebra over the rationals.
//!
//! Points, hyperplanes and linear subspaces of `P^r` are stored in a
//! canonical form (coprime integer coordinates, first nonzero entry
//! positive) so that projective equality is structural equality and all of
//! them can be used as map keys. Every operation is exact; there is no
//! floating point anywhere in this module.

pub(crate) mod matrix;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact scalar: an arbitrary-precision rational number.
pub type Scalar = BigRational;

fn to_scalar_vec(ints: &[BigInt]) -> Vec<Scalar> {
    ints.iter().map(|n| Scalar::from(n.clone())).collect()
}

/// Canonical representative of the projective class of `v`: coprime integer
/// coordinates with the first nonzero entry positive.
pub fn normalize(v: &[Scalar]) -> Result<Vec<BigInt>> {
    if v.iter().all(Zero::is_zero) {
        return Err(Error::InvalidInput(
            "cannot normalize the zero vector".into(),
        ));
    }
    // Clear denominators, then divide by the common content.
    let mut lcm = BigInt::one();
    for x in v {
        lcm = lcm.lcm(x.denom());
    }
    let mut ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    let mut gcd = BigInt::zero();
    for n in &ints {
        gcd = gcd.gcd(n);
    }
    for n in ints.iter_mut() {
        *n /= &gcd;
    }
    if ints.iter().find(|n| !n.is_zero()).is_some_and(|n| n.is_negative()) {
        for n in ints.iter_mut() {
            *n = -(n.clone());
        }
    }
    Ok(ints)
}

fn normalize_exact(v: &[BigInt]) -> Result<Vec<BigInt>> {
    normalize(&to_scalar_vec(v))
}

/// A point of `P^r`, stored in canonical form.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProjPoint {
    coords: Vec<BigInt>,
}

impl ProjPoint {
    pub fn new(coords: Vec<Scalar>) -> Result<Self> {
        Ok(Self { coords: normalize(&coords)? })
    }

    pub fn from_ints(coords: &[i64]) -> Result<Self> {
        let v: Vec<Scalar> = coords.iter().map(|&n| Scalar::from(BigInt::from(n))).collect();
        Self::new(v)
    }

    pub fn from_bigints(coords: Vec<BigInt>) -> Result<Self> {
        Ok(Self { coords: normalize_exact(&coords)? })
    }

    /// Ambient projective dimension `r` (one less than the coordinate count).
    pub fn ambient_dim(&self) -> usize {
        self.coords.len() - 1
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn to_scalars(&self) -> Vec<Scalar> {
        to_scalar_vec(&self.coords)
    }
}

impl fmt::Debug for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Pt[{}]", join_ints(&self.coords))
    }
}

/// A hyperplane of `P^r`, stored by its dual coordinate vector in the same
/// canonical form as points.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Hyperplane {
    coeffs: Vec<BigInt>,
}

impl Hyperplane {
    pub fn new(coeffs: Vec<Scalar>) -> Result<Self> {
        Ok(Self { coeffs: normalize(&coeffs)? })
    }

    pub fn from_ints(coeffs: &[i64]) -> Result<Self> {
        let v: Vec<Scalar> = coeffs.iter().map(|&n| Scalar::from(BigInt::from(n))).collect();
        Self::new(v)
    }

    pub fn from_bigints(coeffs: Vec<BigInt>) -> Result<Self> {
        Ok(Self { coeffs: normalize_exact(&coeffs)? })
    }

    pub fn ambient_dim(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn to_scalars(&self) -> Vec<Scalar> {
        to_scalar_vec(&self.coeffs)
    }

    /// Exact incidence test: `Σ_j coeffs[j] · p[j] = 0`.
    pub fn contains(&self, p: &ProjPoint) -> bool {
        debug_assert_eq!(self.ambient_dim(), p.ambient_dim());
        dot(&self.coeffs, p.coords()).is_zero()
    }

    /// The hyperplane viewed as a subspace of dimension `r - 1`.
    pub fn as_subspace(&self) -> LinSubspace {
        let basis = matrix::nullspace(&[self.to_scalars()], self.coeffs.len());
        LinSubspace::from_scalar_rows(basis, self.ambient_dim())
            .expect("a hyperplane has a nonempty solution space")
    }
}

impl fmt::Debug for Hyperplane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Hyp[{}]", join_ints(&self.coeffs))
    }
}

pub(crate) fn join_ints(v: &[BigInt]) -> String {
    v.iter().map(BigInt::to_string).collect::<Vec<_>>().join(" ")
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// A linear subspace of `P^r`, stored by a canonical spanning basis: the
/// reduced row echelon form of any spanning set, with each row scaled to
/// coprime integers. Two subspaces are equal iff their stored bases are
/// identical, which happens iff they contain each other.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LinSubspace {
    ambient_dim: usize,
    rows: Vec<Vec<BigInt>>,
}

impl LinSubspace {
    fn from_scalar_rows(mut rows: Vec<Vec<Scalar>>, ambient_dim: usize) -> Result<Self> {
        matrix::rref(&mut rows);
        if rows.is_empty() {
            return Err(Error::InvalidInput("empty subspace basis".into()));
        }
        let rows = rows
            .iter()
            .map(|row| normalize(row))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { ambient_dim, rows })
    }

    /// Projective dimension (number of basis rows minus one).
    pub fn dim(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Canonical basis rows (independent homogeneous representatives).
    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    fn scalar_rows(&self) -> Vec<Vec<Scalar>> {
        self.rows.iter().map(|r| to_scalar_vec(r)).collect()
    }

    /// The subspace seen as a single point; only valid when `dim() == 0`.
    pub fn as_point(&self) -> Result<ProjPoint> {
        if self.dim() != 0 {
            return Err(Error::InvalidInput(format!(
                "subspace of dimension {} is not a point",
                self.dim()
            )));
        }
        ProjPoint::from_bigints(self.rows[0].clone())
    }

    /// Exact membership test.
    pub fn contains_point(&self, p: &ProjPoint) -> bool {
        if p.ambient_dim() != self.ambient_dim {
            return false;
        }
        let mut rows = self.scalar_rows();
        rows.push(p.to_scalars());
        matrix::rank(rows) == self.rows.len()
    }

    pub fn contains_subspace(&self, other: &LinSubspace) -> bool {
        if other.ambient_dim != self.ambient_dim {
            return false;
        }
        let mut rows = self.scalar_rows();
        rows.extend(other.scalar_rows());
        matrix::rank(rows) == self.rows.len()
    }

    /// The annihilator: the subspace of the dual `P^r` consisting of all
    /// hyperplanes containing `self`. Taking it twice gives back `self`.
    pub fn annihilator(&self) -> LinSubspace {
        let basis = matrix::nullspace(&self.scalar_rows(), self.ambient_dim + 1);
        LinSubspace::from_scalar_rows(basis, self.ambient_dim)
            .expect("a proper subspace has a nonzero annihilator")
    }

    /// Exact intersection. `None` means the projective intersection is empty,
    /// which is a legitimate outcome (e.g. skew lines), not an error.
    pub fn meet(&self, other: &LinSubspace) -> Result<Option<LinSubspace>> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::InvalidInput(
                "meet of subspaces in different ambient spaces".into(),
            ));
        }
        // Intersection = joint solution space of both annihilator systems.
        let mut ann = self.annihilator().scalar_rows();
        ann.extend(other.annihilator().scalar_rows());
        let basis = matrix::nullspace(&ann, self.ambient_dim + 1);
        if basis.is_empty() {
            return Ok(None);
        }
        Ok(Some(LinSubspace::from_scalar_rows(basis, self.ambient_dim)?))
    }
}

impl fmt::Debug for LinSubspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Sub(dim {} in P^{})", self.dim(), self.ambient_dim)
    }
}

/// Smallest linear subspace containing all of `points`.
pub fn span(points: &[ProjPoint], ambient_dim: usize) -> Result<LinSubspace> {
    if points.is_empty() {
        return Err(Error::InvalidInput("span of an empty point list".into()));
    }
    for p in points {
        if p.ambient_dim() != ambient_dim {
            return Err(Error::InvalidInput(format!(
                "point in P^{} passed to span in P^{}",
                p.ambient_dim(),
                ambient_dim
            )));
        }
    }
    let rows: Vec<Vec<Scalar>> = points.iter().map(ProjPoint::to_scalars).collect();
    LinSubspace::from_scalar_rows(rows, ambient_dim)
}

/// Common solution space of a set of hyperplanes; `None` when it is empty.
pub fn meet_hyperplanes(planes: &[&Hyperplane], ambient_dim: usize) -> Result<Option<LinSubspace>> {
    if planes.is_empty() {
        return Err(Error::InvalidInput("meet of no hyperplanes".into()));
    }
    for h in planes {
        if h.ambient_dim() != ambient_dim {
            return Err(Error::InvalidInput("hyperplane dimension mismatch".into()));
        }
    }
    let rows: Vec<Vec<Scalar>> = planes.iter().map(|h| h.to_scalars()).collect();
    let basis = matrix::nullspace(&rows, ambient_dim + 1);
    if basis.is_empty() {
        return Ok(None);
    }
    Ok(Some(LinSubspace::from_scalar_rows(basis, ambient_dim)?))
}

/// The unique hyperplane through `r` points spanning dimension `r - 1` in
/// `P^r`. Degenerate inputs report how many dimensions are missing.
pub fn hyperplane_through(points: &[ProjPoint]) -> Result<Hyperplane> {
    let Some(first) = points.first() else {
        return Err(Error::InvalidInput("hyperplane through no points".into()));
    };
    let r = first.ambient_dim();
    if points.len() != r {
        return Err(Error::InvalidInput(format!(
            "need exactly {} points to span a hyperplane of P^{}, got {}",
            r,
            r,
            points.len()
        )));
    }
    for p in points {
        if p.ambient_dim() != r {
            return Err(Error::InvalidInput("point dimension mismatch".into()));
        }
    }
    let rows: Vec<Vec<Scalar>> = points.iter().map(ProjPoint::to_scalars).collect();
    let basis = matrix::nullspace(&rows, r + 1);
    if basis.len() != 1 {
        // rank = (r + 1) - |nullspace|; the span misses r - rank dimensions.
        let defect = basis.len() - 1;
        return Err(Error::DegenerateSpan { defect });
    }
    Hyperplane::new(basis.into_iter().next().unwrap())
}

/// Standard-basis indices completing `center` to a basis of the ambient
/// space, chosen greedily in increasing index order. The resulting chart
/// makes projection from `center` deterministic.
pub fn projection_chart(center: &ProjPoint) -> Vec<usize> {
    let r = center.ambient_dim();
    let mut rows: Vec<Vec<Scalar>> = vec![center.to_scalars()];
    let mut chart = Vec::with_capacity(r);
    for idx in 0..=r {
        if chart.len() == r {
            break;
        }
        let mut e = vec![Scalar::zero(); r + 1];
        e[idx] = Scalar::one();
        let mut candidate = rows.clone();
        candidate.push(e.clone());
        if matrix::rank(candidate) > rows.len() {
            rows.push(e);
            chart.push(idx);
        }
    }
    debug_assert_eq!(chart.len(), r);
    chart
}

/// Linear projection of `p` from `center` to `P^{r-1}`, computed in the
/// deterministic chart of [`projection_chart`].
pub fn project_from_point(center: &ProjPoint, p: &ProjPoint) -> Result<ProjPoint> {
    let r = center.ambient_dim();
    if p.ambient_dim() != r {
        return Err(Error::InvalidInput("projection dimension mismatch".into()));
    }
    let chart = projection_chart(center);
    // Exactly one coordinate index is not in the chart, and the center is
    // nonzero there; it carries the center's coefficient when expressing p
    // in the basis (center, e_{chart[0]}, ..., e_{chart[r-1]}).
    let excluded = (0..=r)
        .find(|i| !chart.contains(i))
        .expect("chart omits exactly one index");
    let c = center.to_scalars();
    let pv = p.to_scalars();
    let center_coeff = &pv[excluded] / &c[excluded];
    let image: Vec<Scalar> = chart
        .iter()
        .map(|&i| &pv[i] - &center_coeff * &c[i])
        .collect();
    if image.iter().all(Zero::is_zero) {
        return Err(Error::InvalidInput(
            "cannot project the center of projection".into(),
        ));
    }
    ProjPoint::new(image)
}

/// Image of a hyperplane through `center` under projection from `center`:
/// in the chart of [`projection_chart`] this is coordinate selection.
pub fn project_hyperplane(center: &ProjPoint, h: &Hyperplane) -> Result<Hyperplane> {
    let r = center.ambient_dim();
    if h.ambient_dim() != r {
        return Err(Error::InvalidInput("projection dimension mismatch".into()));
    }
    if !dot(h.coeffs(), center.coords()).is_zero() {
        return Err(Error::InvalidInput(
            "hyperplane does not pass through the projection center".into(),
        ));
    }
    let chart = projection_chart(center);
    let coeffs: Vec<BigInt> = chart.iter().map(|&i| h.coeffs[i].clone()).collect();
    Hyperplane::from_bigints(coeffs)
}

/// General linear position: every subset of size `k <= r + 1` spans a
/// subspace of dimension `k - 1`. It suffices to test subsets of size
/// `min(t, r + 1)`: any smaller dependent subset extends to a dependent
/// subset of that size.
pub fn in_general_position(points: &[ProjPoint], ambient_dim: usize) -> bool {
    if points.iter().any(|p| p.ambient_dim() != ambient_dim) {
        return false;
    }
    let t = points.len();
    if t <= 1 {
        return true;
    }
    let k = t.min(ambient_dim + 1);
    for subset in itertools::Itertools::combinations(0..t, k) {
        let rows: Vec<Vec<Scalar>> = subset.iter().map(|&i| points[i].to_scalars()).collect();
        if matrix::rank(rows) != k {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests;
