//! Intersection of two conics by pencil degeneration.
//!
//! A degenerate member of the pencil spanned by two symmetric 3x3 forms
//! splits into two linear forms; intersecting those with one of the conics
//! yields the four common solutions, counted with multiplicity. The
//! degeneration cubic is solved exactly where its roots are rational and
//! numerically otherwise; every numeric output is Newton-refined and
//! carries residual certificates, and every exact output has residual zero
//! by construction.
//!
//! Complex arithmetic lives only here, as pairs of floats; precision is an
//! explicit parameter, never ambient state.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exactlin::{matrix, normalize, Scalar};
use crate::poly::UniPoly;

use super::{mat3_bilinear, mat3_rank, Mat3};

/// Default relative precision for Newton refinement of numeric outputs.
pub const DEFAULT_PRECISION: f64 = 1e-12;

/// Residual certificate threshold: numeric solutions whose scaled residual
/// exceeds this are considered failures by the verification suites.
pub const RESIDUAL_THRESHOLD: f64 = 1e-9;

type C64 = Complex64;
type CMat3 = [[C64; 3]; 3];

/// One solution of a conic-pair system: a projective point (or, in the dual
/// plane, a line) with residual certificates against both input forms.
#[derive(Clone, Debug)]
pub struct CertifiedSolution {
    /// Normalized complex coordinates (largest coordinate scaled to 1).
    pub approx: [C64; 3],
    /// `|v . M_i . v|` with both the vector and the two input matrices
    /// scaled to unit sup norm. Exactly 0.0 on the rational path.
    pub residuals: [f64; 2],
    /// Canonical integer coordinates when the solution is rational.
    pub exact: Option<Vec<BigInt>>,
    pub multiplicity: u32,
}

impl CertifiedSolution {
    pub fn max_residual(&self) -> f64 {
        self.residuals[0].max(self.residuals[1])
    }
}

fn scalar_f64(s: &Scalar) -> f64 {
    s.to_f64().unwrap_or(f64::NAN)
}

fn mat_f64(m: &Mat3) -> CMat3 {
    std::array::from_fn(|i| std::array::from_fn(|j| C64::new(scalar_f64(&m[i][j]), 0.0)))
}

fn cmat_scale_unit(m: &CMat3) -> CMat3 {
    let max = m.iter().flatten().map(|z| z.norm()).fold(0.0f64, f64::max);
    if max == 0.0 {
        return *m;
    }
    std::array::from_fn(|i| std::array::from_fn(|j| m[i][j] / max))
}

fn cmat_vec(m: &CMat3, v: &[C64; 3]) -> [C64; 3] {
    std::array::from_fn(|i| m[i][0] * v[0] + m[i][1] * v[1] + m[i][2] * v[2])
}

fn cbilinear(m: &CMat3, u: &[C64; 3], v: &[C64; 3]) -> C64 {
    let mv = cmat_vec(m, v);
    u[0] * mv[0] + u[1] * mv[1] + u[2] * mv[2]
}

/// Scale so the coordinate of largest modulus becomes exactly 1. This fixes
/// the projective scale and phase, making outputs directly comparable.
fn cvec_normalize(v: &[C64; 3]) -> [C64; 3] {
    let Some(pivot) = (0..3).max_by(|&i, &j| v[i].norm().total_cmp(&v[j].norm())) else {
        return *v;
    };
    if v[pivot].norm() == 0.0 {
        return *v;
    }
    let d = v[pivot];
    std::array::from_fn(|i| v[i] / d)
}

/// A linear form in the plane, either exact or numeric.
#[derive(Clone, Debug)]
enum Form {
    Exact(Vec<BigInt>),
    Numeric([C64; 3]),
}

/// A candidate solution before certification.
#[derive(Clone, Debug)]
enum Sol {
    Exact(Vec<Scalar>),
    Numeric([C64; 3]),
}

fn mats_proportional(a: &Mat3, b: &Mat3) -> bool {
    let flat_a: Vec<&Scalar> = a.iter().flatten().collect();
    let flat_b: Vec<&Scalar> = b.iter().flatten().collect();
    let Some(k) = (0..9).find(|&k| !flat_a[k].is_zero() || !flat_b[k].is_zero()) else {
        return true;
    };
    (0..9).all(|i| flat_a[i] * flat_b[k] == flat_b[i] * flat_a[k])
}

/// `det(A + λ B)` as an exact polynomial in λ.
fn degeneration_poly(a: &Mat3, b: &Mat3) -> UniPoly {
    let entry = |i: usize, j: usize| UniPoly::new(vec![a[i][j].clone(), b[i][j].clone()]);
    let term = |i: usize, j: usize, k: usize| -> UniPoly {
        entry(0, i).mul(&entry(1, j)).mul(&entry(2, k))
    };
    let neg = |p: UniPoly| p.scale(&-Scalar::one());
    term(0, 1, 2)
        .add(&neg(term(0, 2, 1)))
        .add(&neg(term(1, 0, 2)))
        .add(&term(1, 2, 0))
        .add(&term(2, 0, 1))
        .add(&neg(term(2, 1, 0)))
}

fn member_at(a: &Mat3, b: &Mat3, lambda: &Scalar) -> Mat3 {
    std::array::from_fn(|i| std::array::from_fn(|j| &a[i][j] + lambda * &b[i][j]))
}

/// Rational roots of a low-degree polynomial with multiplicity, found by
/// rational reconstruction of polished numeric roots and verified by exact
/// evaluation, so every returned root is certain.
fn certified_rational_roots(p: &UniPoly) -> Vec<(Scalar, usize)> {
    let mut work = p.clone();
    let mut found: Vec<(Scalar, usize)> = Vec::new();
    // Zero roots come out exactly.
    let mut zero_mult = 0;
    while !work.is_zero() && work.coeff(0).is_zero() && work.degree() != Some(0) {
        work = work.deflate(&Scalar::zero()).expect("zero is a root");
        zero_mult += 1;
    }
    if zero_mult > 0 {
        found.push((Scalar::zero(), zero_mult));
    }
    let coeffs_f64: Vec<f64> = work.coeffs().iter().map(scalar_f64).collect();
    for root in numeric_roots_real_coeffs(&coeffs_f64) {
        if root.im.abs() > 1e-6 * (1.0 + root.re.abs()) {
            continue;
        }
        for cand in rational_candidates(root.re) {
            if work.eval(&cand).is_zero() {
                let mut mult = 0;
                while let Some(d) = work.deflate(&cand) {
                    work = d;
                    mult += 1;
                }
                found.push((cand, mult));
                break;
            }
        }
    }
    found.sort_by(|x, y| x.0.cmp(&y.0));
    found.dedup_by(|x, y| x.0 == y.0);
    found
}

/// Continued-fraction convergents of `x`, best first, with denominators up
/// to 10^12. The caller verifies candidates exactly.
fn rational_candidates(x: f64) -> Vec<Scalar> {
    if !x.is_finite() {
        return Vec::new();
    }
    let mut out = Vec::new();
    let (mut p0, mut q0) = (BigInt::one(), BigInt::zero());
    let (mut p1, mut q1) = (BigInt::from(x.floor() as i64), BigInt::one());
    let mut frac = x - x.floor();
    out.push(Scalar::new(p1.clone(), q1.clone()));
    for _ in 0..48 {
        if frac.abs() < 1e-14 {
            break;
        }
        let inv = 1.0 / frac;
        let a = inv.floor();
        if !a.is_finite() || a.abs() > 1e15 {
            break;
        }
        frac = inv - a;
        let a = BigInt::from(a as i64);
        let p2 = &a * &p1 + &p0;
        let q2 = &a * &q1 + &q0;
        if q2 > BigInt::from(1_000_000_000_000u64) {
            break;
        }
        out.push(Scalar::new(p2.clone(), q2.clone()));
        (p0, q0) = (p1, q1);
        (p1, q1) = (p2, q2);
    }
    // Convergents come out crude first, so low-height candidates are tried
    // first; that keeps reconstruction stable near double roots.
    out
}

/// All complex roots of a real-coefficient polynomial of degree <= 3, with
/// a Newton polish against the input coefficients.
fn numeric_roots_real_coeffs(coeffs: &[f64]) -> Vec<C64> {
    let n = coeffs.len();
    let mut roots = match n {
        0 | 1 => Vec::new(),
        2 => vec![C64::new(-coeffs[0] / coeffs[1], 0.0)],
        3 => {
            let (c, b, a) = (coeffs[0], coeffs[1], coeffs[2]);
            let disc = C64::new(b * b - 4.0 * a * c, 0.0).sqrt();
            vec![(-b + disc) / (2.0 * a), (-b - disc) / (2.0 * a)]
                .into_iter()
                .map(|z| C64::new(z.re, z.im))
                .collect()
        }
        4 => {
            // Depressed cubic + Cardano in complex arithmetic.
            let a2 = coeffs[2] / coeffs[3];
            let a1 = coeffs[1] / coeffs[3];
            let a0 = coeffs[0] / coeffs[3];
            let p = a1 - a2 * a2 / 3.0;
            let q = 2.0 * a2.powi(3) / 27.0 - a2 * a1 / 3.0 + a0;
            let d = C64::new((q / 2.0).powi(2) + (p / 3.0).powi(3), 0.0).sqrt();
            let half_q = C64::new(-q / 2.0, 0.0);
            let mut u = (half_q + d).powf(1.0 / 3.0);
            if u.norm() < 1e-30 {
                u = (half_q - d).powf(1.0 / 3.0);
            }
            let omega = C64::new(-0.5, 3f64.sqrt() / 2.0);
            let shift = C64::new(a2 / 3.0, 0.0);
            (0u32..3)
                .map(|k| {
                    let uk = u * omega.powu(k);
                    let w = if uk.norm() < 1e-30 {
                        uk
                    } else {
                        uk - C64::new(p / 3.0, 0.0) / uk
                    };
                    w - shift
                })
                .collect()
        }
        _ => unreachable!("pencil polynomials have degree <= 3"),
    };
    let eval = |z: C64| -> C64 {
        coeffs.iter().rev().fold(C64::new(0.0, 0.0), |acc, &c| acc * z + c)
    };
    let deriv = |z: C64| -> C64 {
        coeffs
            .iter()
            .enumerate()
            .skip(1)
            .rev()
            .fold(C64::new(0.0, 0.0), |acc, (k, &c)| acc * z + c * k as f64)
    };
    for z in roots.iter_mut() {
        for _ in 0..40 {
            let f = eval(*z);
            let df = deriv(*z);
            if df.norm() < 1e-300 {
                break;
            }
            let step = f / df;
            *z -= step;
            if step.norm() <= 1e-15 * (1.0 + z.norm()) {
                break;
            }
        }
    }
    roots.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    roots
}

/// Split an exact symmetric rank-2 form into two linear factors. Rational
/// factors are produced whenever they exist; otherwise the conjugate pair
/// is returned numerically.
fn split_exact_member(m: &Mat3) -> Result<(Form, Form)> {
    let rows: Vec<Vec<Scalar>> = m.iter().map(|r| r.to_vec()).collect();
    if let Some(i) = (0..3).find(|&i| !m[i][i].is_zero()) {
        // Complete the square on coordinate i, leaving a rank-1 remainder.
        let a = m[i][i].clone();
        let l1 = rows[i].clone();
        let mut rem = super::mat3_zero();
        for r in 0..3 {
            for c in 0..3 {
                rem[r][c] = &m[r][c] - &l1[r] * &l1[c] / &a;
            }
        }
        let Some(j) = (0..3).find(|&j| !rem[j][j].is_zero()) else {
            return Err(Error::DegeneratePencil(
                "degenerate member has rank 1".into(),
            ));
        };
        let b = rem[j][j].clone();
        let l2 = rem[j].to_vec();
        // Q = (1/a) L1^2 + (1/b) L2^2 = (1/a)(L1 - mu L2)(L1 + mu L2),
        // mu^2 = -a/b.
        let mu2 = -(&a / &b);
        if let Some(mu) = rational_sqrt(&mu2) {
            let minus: Vec<Scalar> = l1.iter().zip(&l2).map(|(x, y)| x - &mu * y).collect();
            let plus: Vec<Scalar> = l1.iter().zip(&l2).map(|(x, y)| x + &mu * y).collect();
            Ok((exact_form(&minus)?, exact_form(&plus)?))
        } else {
            let mu = C64::new(scalar_f64(&mu2), 0.0).sqrt();
            let l1c: [C64; 3] = std::array::from_fn(|k| C64::new(scalar_f64(&l1[k]), 0.0));
            let l2c: [C64; 3] = std::array::from_fn(|k| C64::new(scalar_f64(&l2[k]), 0.0));
            let minus = std::array::from_fn(|k| l1c[k] - mu * l2c[k]);
            let plus = std::array::from_fn(|k| l1c[k] + mu * l2c[k]);
            Ok((Form::Numeric(minus), Form::Numeric(plus)))
        }
    } else {
        // Zero diagonal: the form is a sum of products of coordinates and
        // always splits rationally.
        let Some((i, j)) = (0..3)
            .flat_map(|i| ((i + 1)..3).map(move |j| (i, j)))
            .find(|&(i, j)| !m[i][j].is_zero())
        else {
            return Err(Error::DegeneratePencil("zero pencil member".into()));
        };
        let k = 3 - i - j;
        let (mm, p, q) = (m[i][j].clone(), m[i][k].clone(), m[j][k].clone());
        let unit = |idx: usize| -> Vec<Scalar> {
            let mut v = vec![Scalar::zero(); 3];
            v[idx] = Scalar::one();
            v
        };
        let combo = |idx: usize, ci: &Scalar, jdx: usize, cj: &Scalar| -> Vec<Scalar> {
            let mut v = vec![Scalar::zero(); 3];
            v[idx] = ci.clone();
            v[jdx] = cj.clone();
            v
        };
        let (f1, f2) = if p.is_zero() && q.is_zero() {
            (unit(i), unit(j))
        } else if q.is_zero() {
            (unit(i), combo(j, &mm, k, &p))
        } else if p.is_zero() {
            (unit(j), combo(i, &mm, k, &q))
        } else {
            // det = 2 m p q != 0 would contradict rank 2.
            return Err(Error::DegeneratePencil(
                "member is not rank deficient".into(),
            ));
        };
        Ok((exact_form(&f1)?, exact_form(&f2)?))
    }
}

fn exact_form(v: &[Scalar]) -> Result<Form> {
    Ok(Form::Exact(normalize(v)?))
}

/// `sqrt` of a nonnegative rational if it is itself rational.
fn rational_sqrt(x: &Scalar) -> Option<Scalar> {
    if x.is_negative() {
        return None;
    }
    if x.is_zero() {
        return Some(Scalar::zero());
    }
    let num = x.numer().sqrt();
    let den = x.denom().sqrt();
    (&num * &num == *x.numer() && &den * &den == *x.denom())
        .then(|| Scalar::new(num, den))
}

fn cross_mat(s: &[C64; 3]) -> CMat3 {
    let z = C64::new(0.0, 0.0);
    [
        [z, -s[2], s[1]],
        [s[2], z, -s[0]],
        [-s[1], s[0], z],
    ]
}

fn cmat_adjugate(m: &CMat3) -> CMat3 {
    let minor = |r0: usize, r1: usize, c0: usize, c1: usize| -> C64 {
        m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0]
    };
    let idx = [(1usize, 2usize), (0, 2), (0, 1)];
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let (r0, r1) = idx[j];
            let (c0, c1) = idx[i];
            let sign = if (i + j) % 2 == 0 { 1.0 } else { -1.0 };
            minor(r0, r1, c0, c1) * sign
        })
    })
}

/// Split a numeric rank-2 symmetric form into two linear factors, using the
/// singular point recovered from the adjugate.
fn split_numeric_member(m: &CMat3) -> Result<([C64; 3], [C64; 3])> {
    let scale = m.iter().flatten().map(|z| z.norm()).fold(0.0f64, f64::max);
    let adj = cmat_adjugate(m);
    let diag_best = (0..3).max_by(|&i, &j| adj[i][i].norm().total_cmp(&adj[j][j].norm()));
    let i = diag_best.expect("three diagonal entries");
    // adj = -s s^T for a rank-2 member; a vanishing adjugate means rank <= 1.
    if adj[i][i].norm() < 1e-20 * scale * scale {
        return Err(Error::DegeneratePencil(
            "degenerate member has numeric rank <= 1".into(),
        ));
    }
    let beta = (-adj[i][i]).sqrt();
    let s: [C64; 3] = std::array::from_fn(|k| -adj[k][i] / beta);
    let c = {
        let cm = cross_mat(&s);
        let mut out = *m;
        for r in 0..3 {
            for col in 0..3 {
                out[r][col] += cm[r][col];
            }
        }
        out
    };
    let mut best = (0usize, 0usize, -1.0f64);
    for r in 0..3 {
        for col in 0..3 {
            let n = c[r][col].norm();
            if n > best.2 {
                best = (r, col, n);
            }
        }
    }
    if best.2 <= 1e-14 * scale {
        return Err(Error::DegeneratePencil(
            "numeric splitting produced no factors".into(),
        ));
    }
    let row: [C64; 3] = std::array::from_fn(|k| c[best.0][k]);
    let col: [C64; 3] = std::array::from_fn(|k| c[k][best.1]);
    Ok((cvec_normalize(&row), cvec_normalize(&col)))
}

/// Basis of the solution plane of a linear form.
fn exact_form_basis(f: &[BigInt]) -> Vec<Vec<Scalar>> {
    let row: Vec<Scalar> = f.iter().map(|n| Scalar::from(n.clone())).collect();
    matrix::nullspace(&[row], 3)
}

fn numeric_form_basis(f: &[C64; 3]) -> ([C64; 3], [C64; 3]) {
    let pivot = (0..3)
        .max_by(|&i, &j| f[i].norm().total_cmp(&f[j].norm()))
        .expect("three coordinates");
    let others: Vec<usize> = (0..3).filter(|&k| k != pivot).collect();
    let make = |j: usize| -> [C64; 3] {
        let mut v = [C64::new(0.0, 0.0); 3];
        v[j] = C64::new(1.0, 0.0);
        v[pivot] = -f[j] / f[pivot];
        v
    };
    (make(others[0]), make(others[1]))
}

/// Projective roots `(s : t)` of `alpha s^2 + 2 beta s t + gamma t^2`,
/// exact where possible.
fn quadratic_roots_exact(
    alpha: &Scalar,
    beta: &Scalar,
    gamma: &Scalar,
) -> Result<Vec<(Sol2, u32)>> {
    if alpha.is_zero() && beta.is_zero() && gamma.is_zero() {
        return Err(Error::DegeneratePencil(
            "a splitting line lies entirely in the conic".into(),
        ));
    }
    let one = Scalar::one();
    if alpha.is_zero() {
        if beta.is_zero() {
            // gamma t^2: double root at (1 : 0)
            return Ok(vec![(Sol2::Exact(one, Scalar::zero()), 2)]);
        }
        let two_beta = Scalar::from(BigInt::from(2)) * beta;
        return Ok(vec![
            (Sol2::Exact(one.clone(), Scalar::zero()), 1),
            (Sol2::Exact(-gamma.clone(), two_beta), 1),
        ]);
    }
    let disc = beta * beta - alpha * gamma;
    if disc.is_zero() {
        return Ok(vec![(Sol2::Exact(-beta.clone(), alpha.clone()), 2)]);
    }
    if let Some(d) = rational_sqrt(&disc) {
        return Ok(vec![
            (Sol2::Exact(-beta + &d, alpha.clone()), 1),
            (Sol2::Exact(-beta - &d, alpha.clone()), 1),
        ]);
    }
    // Irrational pair: hand off to floating point.
    let d = C64::new(scalar_f64(&disc), 0.0).sqrt();
    let (af, bf) = (scalar_f64(alpha), scalar_f64(beta));
    Ok(vec![
        (Sol2::Numeric((-bf + d) / af, C64::new(1.0, 0.0)), 1),
        (Sol2::Numeric((-bf - d) / af, C64::new(1.0, 0.0)), 1),
    ])
}

enum Sol2 {
    Exact(Scalar, Scalar),
    Numeric(C64, C64),
}

fn quadratic_roots_numeric(alpha: C64, beta: C64, gamma: C64) -> Result<Vec<(Sol2, u32)>> {
    let scale = alpha.norm().max(beta.norm()).max(gamma.norm());
    if scale == 0.0 {
        return Err(Error::DegeneratePencil(
            "a splitting line lies numerically in the conic".into(),
        ));
    }
    let one = C64::new(1.0, 0.0);
    if alpha.norm() <= 1e-14 * scale {
        if beta.norm() <= 1e-14 * scale {
            return Ok(vec![(Sol2::Numeric(one, C64::new(0.0, 0.0)), 2)]);
        }
        return Ok(vec![
            (Sol2::Numeric(one, C64::new(0.0, 0.0)), 1),
            (Sol2::Numeric(-gamma, 2.0 * beta), 1),
        ]);
    }
    let d = (beta * beta - alpha * gamma).sqrt();
    // Pick the sign that avoids cancellation.
    let q = if (beta + d).norm() >= (beta - d).norm() { -(beta + d) } else { -(beta - d) };
    if q.norm() <= 1e-300 {
        return Ok(vec![(Sol2::Numeric(-beta / alpha, one), 2)]);
    }
    Ok(vec![
        (Sol2::Numeric(q / alpha, one), 1),
        (Sol2::Numeric(gamma / q, one), 1),
    ])
}

/// Solutions on one splitting line against the conic `a`.
fn line_solutions(form: &Form, a: &Mat3, af: &CMat3) -> Result<Vec<(Sol, u32)>> {
    let mut out = Vec::new();
    match form {
        Form::Exact(f) => {
            let basis = exact_form_basis(f);
            debug_assert_eq!(basis.len(), 2);
            let (u, v) = (&basis[0], &basis[1]);
            let alpha = mat3_bilinear(a, u, u);
            let beta = mat3_bilinear(a, u, v);
            let gamma = mat3_bilinear(a, v, v);
            for (root, mult) in quadratic_roots_exact(&alpha, &beta, &gamma)? {
                match root {
                    Sol2::Exact(s, t) => {
                        let x: Vec<Scalar> =
                            (0..3).map(|k| &s * &u[k] + &t * &v[k]).collect();
                        out.push((Sol::Exact(x), mult));
                    }
                    Sol2::Numeric(s, t) => {
                        let uc: [C64; 3] =
                            std::array::from_fn(|k| C64::new(scalar_f64(&u[k]), 0.0));
                        let vc: [C64; 3] =
                            std::array::from_fn(|k| C64::new(scalar_f64(&v[k]), 0.0));
                        let x = std::array::from_fn(|k| s * uc[k] + t * vc[k]);
                        out.push((Sol::Numeric(x), mult));
                    }
                }
            }
        }
        Form::Numeric(f) => {
            let (u, v) = numeric_form_basis(f);
            let alpha = cbilinear(af, &u, &u);
            let beta = cbilinear(af, &u, &v);
            let gamma = cbilinear(af, &v, &v);
            for (root, mult) in quadratic_roots_numeric(alpha, beta, gamma)? {
                let Sol2::Numeric(s, t) = root else { unreachable!() };
                let x = std::array::from_fn(|k| s * u[k] + t * v[k]);
                out.push((Sol::Numeric(x), mult));
            }
        }
    }
    Ok(out)
}

/// Newton refinement of a numeric solution against both quadric equations,
/// in the affine chart of its largest coordinate.
fn refine(x: &mut [C64; 3], am: &CMat3, bm: &CMat3, precision: f64) {
    *x = cvec_normalize(x);
    let pivot = (0..3)
        .max_by(|&i, &j| x[i].norm().total_cmp(&x[j].norm()))
        .expect("three coordinates");
    let free: Vec<usize> = (0..3).filter(|&k| k != pivot).collect();
    for _ in 0..64 {
        let fa = cbilinear(am, x, x);
        let fb = cbilinear(bm, x, x);
        let ga = cmat_vec(am, x);
        let gb = cmat_vec(bm, x);
        let j = [
            [2.0 * ga[free[0]], 2.0 * ga[free[1]]],
            [2.0 * gb[free[0]], 2.0 * gb[free[1]]],
        ];
        let det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
        if det.norm() < 1e-30 {
            break;
        }
        let dx0 = (fa * j[1][1] - fb * j[0][1]) / det;
        let dx1 = (fb * j[0][0] - fa * j[1][0]) / det;
        x[free[0]] -= dx0;
        x[free[1]] -= dx1;
        if dx0.norm().max(dx1.norm()) <= precision {
            break;
        }
    }
    *x = cvec_normalize(x);
}

/// All solutions of the pair of quadric equations given by two symmetric
/// matrices, counted with multiplicity (total four), by degenerating their
/// pencil.
pub(crate) fn pencil_solutions(
    a: &Mat3,
    b: &Mat3,
    precision: f64,
) -> Result<Vec<CertifiedSolution>> {
    if !(precision > 0.0) {
        return Err(Error::InvalidInput("precision must be positive".into()));
    }
    if mats_proportional(a, b) {
        return Err(Error::DegeneratePencil(
            "the two forms span a single conic, not a pencil".into(),
        ));
    }
    let cubic = degeneration_poly(a, b);
    if cubic.is_zero() {
        return Err(Error::DegeneratePencil(
            "every member of the pencil is singular".into(),
        ));
    }

    // Exact degenerate members first: rational roots, plus the member at
    // infinity (b itself) when the degeneration polynomial drops degree.
    let mut exact_members: Vec<Mat3> = certified_rational_roots(&cubic)
        .iter()
        .map(|(lambda, _)| member_at(a, b, lambda))
        .collect();
    if cubic.degree() != Some(3) {
        exact_members.push(b.clone());
    }
    // A rank-1 member is a doubled line: the conics have even contact
    // everywhere along it, which is outside the transverse regime.
    if exact_members.iter().any(|m| mat3_rank(m) <= 1) {
        return Err(Error::DegeneratePencil(
            "a pencil member has rank <= 1".into(),
        ));
    }
    let chosen = exact_members.into_iter().find(|m| mat3_rank(m) == 2);

    let am = mat_f64(a);
    let bm = mat_f64(b);
    let am_unit = cmat_scale_unit(&am);
    let bm_unit = cmat_scale_unit(&bm);

    let forms: (Form, Form) = match chosen {
        Some(member) => split_exact_member(&member)?,
        None => {
            // No rational degeneration: pick the numerically smallest root.
            let coeffs: Vec<f64> = cubic.coeffs().iter().map(scalar_f64).collect();
            let roots = numeric_roots_real_coeffs(&coeffs);
            let lambda = *roots.first().ok_or_else(|| {
                Error::DegeneratePencil("degeneration polynomial has no roots".into())
            })?;
            let member: CMat3 =
                std::array::from_fn(|i| std::array::from_fn(|j| am[i][j] + lambda * bm[i][j]));
            let (f, g) = split_numeric_member(&member)?;
            (Form::Numeric(f), Form::Numeric(g))
        }
    };

    let mut raw: Vec<(Sol, u32)> = Vec::new();
    raw.extend(line_solutions(&forms.0, a, &am)?);
    raw.extend(line_solutions(&forms.1, a, &am)?);
    let total: u32 = raw.iter().map(|(_, m)| m).sum();
    debug_assert_eq!(total, 4, "pencil degeneration must yield four solutions");

    let mut out = Vec::new();
    for (sol, mult) in raw {
        let certified = match sol {
            Sol::Exact(x) => {
                debug_assert!(mat3_bilinear(a, &x, &x).is_zero());
                debug_assert!(mat3_bilinear(b, &x, &x).is_zero());
                let ints = normalize(&x)?;
                let approx: [C64; 3] =
                    std::array::from_fn(|k| C64::new(ints[k].to_f64().unwrap_or(f64::NAN), 0.0));
                CertifiedSolution {
                    approx: cvec_normalize(&approx),
                    residuals: [0.0, 0.0],
                    exact: Some(ints),
                    multiplicity: mult,
                }
            }
            Sol::Numeric(mut x) => {
                refine(&mut x, &am, &bm, precision);
                let ra = cbilinear(&am_unit, &x, &x).norm();
                let rb = cbilinear(&bm_unit, &x, &x).norm();
                CertifiedSolution {
                    approx: x,
                    residuals: [ra, rb],
                    exact: None,
                    multiplicity: mult,
                }
            }
        };
        out.push(certified);
    }
    out.sort_by(|p, q| {
        let key = |s: &CertifiedSolution| {
            [s.approx[0].re, s.approx[0].im, s.approx[1].re, s.approx[1].im, s.approx[2].re, s.approx[2].im]
        };
        key(p)
            .iter()
            .zip(key(q).iter())
            .map(|(x, y)| x.total_cmp(y))
            .find(|o| o.is_ne())
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    Ok(out)
}
