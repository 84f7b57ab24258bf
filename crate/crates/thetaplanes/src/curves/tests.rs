use super::*;
use num_complex::Complex64;

use crate::exactlin::Hyperplane;

fn hyp(coeffs: &[i64]) -> Hyperplane {
    Hyperplane::from_ints(coeffs).unwrap()
}

fn q(n: i64, d: i64) -> Scalar {
    Scalar::new(BigInt::from(n), BigInt::from(d))
}

#[test]
fn rnc_points() {
    assert_eq!(rnc_point(2, &RncParam::from_int(0)), ProjPoint::from_ints(&[1, 0, 0]).unwrap());
    assert_eq!(rnc_point(3, &RncParam::from_int(1)), ProjPoint::from_ints(&[1, 1, 1, 1]).unwrap());
    assert_eq!(rnc_point(2, &RncParam::Infinity), ProjPoint::from_ints(&[0, 0, 1]).unwrap());
    assert_eq!(
        rnc_point(2, &RncParam::from_ratio(1, 2)),
        ProjPoint::from_ints(&[4, 2, 1]).unwrap()
    );
}

#[test]
fn restriction_polys() {
    assert_eq!(restriction_poly(&hyp(&[0, 0, 1])), UniPoly::from_ints(&[0, 0, 1]));
    assert_eq!(restriction_poly(&hyp(&[1, 0, -1])), UniPoly::from_ints(&[1, 0, -1]));
    let mut tail = vec![0i64; 5];
    tail[4] = 1;
    assert_eq!(restriction_poly(&hyp(&tail)), UniPoly::from_ints(&tail));
}

#[test]
fn tangent_hyperplane_examples() {
    assert_eq!(rnc_tangent_hyperplane(2, &[RncParam::from_int(0)]).unwrap(), hyp(&[0, 0, 1]));
    // (t^2)(t-1)^2 = t^4 - 2t^3 + t^2, expanded by hand.
    assert_eq!(
        rnc_tangent_hyperplane(4, &[RncParam::from_int(0), RncParam::from_int(1)]).unwrap(),
        hyp(&[0, 0, 1, -2, 1])
    );
    assert_eq!(rnc_tangent_hyperplane(2, &[RncParam::Infinity]).unwrap(), hyp(&[1, 0, 0]));
}

#[test]
fn tangent_hyperplane_rejects_bad_input() {
    assert!(rnc_tangent_hyperplane(3, &[RncParam::from_int(0)]).is_err());
    assert!(
        rnc_tangent_hyperplane(4, &[RncParam::from_int(2), RncParam::from_int(2)]).is_err()
    );
    assert!(rnc_tangent_hyperplane(4, &[RncParam::from_int(2)]).is_err());
}

#[test]
fn square_restriction_examples() {
    assert!(is_square_restriction(&hyp(&[0, 0, 1])));
    assert!(!is_square_restriction(&hyp(&[1, 0, -1])));
    // Double contact at infinity: constant restriction with even drop.
    assert!(is_square_restriction(&hyp(&[1, 0, 0])));
    // Odd degree drop: simple point at infinity plus a simple finite root.
    assert!(!is_square_restriction(&hyp(&[0, 1, 0])));
    // Stability under rescaling: any representative of the projective
    // class canonicalizes to the same hyperplane.
    let scaled =
        Hyperplane::new(vec![q(0, 1), q(0, 1), q(-7, 3)]).unwrap();
    assert_eq!(scaled, hyp(&[0, 0, 1]));
    assert!(is_square_restriction(&scaled));
}

#[test]
fn exact_tangents_satisfy_duality_exactly() {
    let tangents = common_tangents(&unit_circle(), &shifted_circle(), DEFAULT_PRECISION).unwrap();
    let mut exact_seen = 0;
    for t in &tangents {
        if let Some(coeffs) = &t.exact {
            let line = Hyperplane::from_bigints(coeffs.clone()).unwrap();
            assert!(unit_circle().dual_eval_line(&line).is_zero());
            assert!(shifted_circle().dual_eval_line(&line).is_zero());
            exact_seen += 1;
        }
    }
    assert_eq!(exact_seen, 2);
}

#[test]
fn tangent_hyperplanes_restrict_to_squares() {
    let cases: Vec<(usize, Vec<RncParam>)> = vec![
        (2, vec![RncParam::from_ratio(3, 7)]),
        (4, vec![RncParam::from_int(-1), RncParam::from_ratio(2, 3)]),
        (6, vec![RncParam::from_int(0), RncParam::from_int(5), RncParam::Infinity]),
        (
            8,
            vec![
                RncParam::from_ratio(-5, 2),
                RncParam::from_int(1),
                RncParam::from_int(2),
                RncParam::from_int(9),
            ],
        ),
    ];
    for (r, params) in cases {
        let h = rnc_tangent_hyperplane(r, &params).unwrap();
        assert!(is_square_restriction(&h), "r={r}");
        // The restriction equals the expected squared product up to scale.
        let mut product = UniPoly::constant(Scalar::one());
        for p in &params {
            if let RncParam::Finite(t) = p {
                product = product.mul(&UniPoly::linear_root(t));
            }
        }
        let square = product.mul(&product);
        assert!(restriction_poly(&h).proportional_to(&square));
        // Tangency at each finite parameter is exact.
        for p in &params {
            let pt = rnc_point(r, p);
            assert!(h.contains(&pt));
        }
    }
}

#[test]
fn adjugate_of_identity_and_diag() {
    let identity = Conic::new([
        [q(1, 1), q(0, 1), q(0, 1)],
        [q(0, 1), q(1, 1), q(0, 1)],
        [q(0, 1), q(0, 1), q(1, 1)],
    ])
    .unwrap();
    assert!(identity.adjugate().same_conic(&identity));

    let circle = Conic::new([
        [q(1, 1), q(0, 1), q(0, 1)],
        [q(0, 1), q(1, 1), q(0, 1)],
        [q(0, 1), q(0, 1), q(-1, 1)],
    ])
    .unwrap();
    // diag(-1, -1, 1) is the same conic as diag(1, 1, -1).
    assert!(circle.adjugate().same_conic(&circle));
}

#[test]
fn adjugate_of_rank_2_conic_has_rank_1() {
    // xy = 0, a pair of lines.
    let pair = Conic::from_int_coeffs(&[0, 1, 0, 0, 0, 0]).unwrap();
    assert_eq!(pair.rank(), 2);
    assert_eq!(pair.adjugate().rank(), 1);
}

fn unit_circle() -> Conic {
    Conic::from_int_coeffs(&[1, 0, 1, 0, 0, -1]).unwrap()
}

fn shifted_circle() -> Conic {
    // (x - 3z)^2 + y^2 = z^2
    Conic::from_int_coeffs(&[1, 0, 1, -6, 0, 8]).unwrap()
}

fn approx_line_eq(a: &[Complex64; 3], b: &[Complex64; 3], tol: f64) -> bool {
    a.iter().zip(b).all(|(x, y)| (x - y).norm() < tol)
}

#[test]
fn common_tangents_of_two_circles() {
    let tangents = common_tangents(&unit_circle(), &shifted_circle(), DEFAULT_PRECISION).unwrap();
    let total: u32 = tangents.iter().map(|t| t.multiplicity).sum();
    assert_eq!(total, 4);
    for t in &tangents {
        assert!(t.max_residual() < RESIDUAL_THRESHOLD);
    }
    // Elementary oracle: circles of radius 1 centered at (0,0) and (3,0).
    // Outer tangents: y = z and y = -z. Inner tangents pass through
    // (3/2, 0) with slope m where |3m/2| / sqrt(m^2+1) = 1, so m^2 = 4/5:
    // the line m x - y - (3/2) m z = 0.
    let m = (4.0f64 / 5.0).sqrt();
    let expected: Vec<[Complex64; 3]> = vec![
        [0.0, 1.0, -1.0],
        [0.0, 1.0, 1.0],
        [m, -1.0, -1.5 * m],
        [-m, -1.0, 1.5 * m],
    ]
    .into_iter()
    .map(|v: [f64; 3]| {
        let c: [Complex64; 3] = std::array::from_fn(|i| Complex64::new(v[i], 0.0));
        // Same canonicalization the solver uses.
        let pivot = (0..3)
            .max_by(|&i, &j| c[i].norm().total_cmp(&c[j].norm()))
            .unwrap();
        std::array::from_fn(|i| c[i] / c[pivot])
    })
    .collect();
    for want in &expected {
        assert!(
            tangents.iter().any(|t| approx_line_eq(&t.approx, want, 1e-7)),
            "missing tangent {want:?}"
        );
    }
    // The two horizontal tangents are rational and must come out exact.
    let exact_count = tangents.iter().filter(|t| t.exact.is_some()).count();
    assert_eq!(exact_count, 2);
}

#[test]
fn identical_conics_are_a_degenerate_pencil() {
    let c = unit_circle();
    assert!(matches!(
        common_tangents(&c, &c, DEFAULT_PRECISION),
        Err(Error::DegeneratePencil(_))
    ));
    assert!(matches!(
        conic_intersections(&c, &c, DEFAULT_PRECISION),
        Err(Error::DegeneratePencil(_))
    ));
}

#[test]
fn degenerate_input_conics_are_rejected_for_tangents() {
    let pair = Conic::from_int_coeffs(&[0, 1, 0, 0, 0, 0]).unwrap();
    assert!(matches!(
        common_tangents(&pair, &unit_circle(), DEFAULT_PRECISION),
        Err(Error::InvalidInput(_))
    ));
}

#[test]
fn residuals_shrink_with_precision() {
    let coarse = common_tangents(&unit_circle(), &shifted_circle(), 1e-4).unwrap();
    let fine = common_tangents(&unit_circle(), &shifted_circle(), 1e-12).unwrap();
    let max_res = |ts: &[CertifiedSolution]| {
        ts.iter()
            .filter(|t| t.exact.is_none())
            .map(|t| t.max_residual())
            .fold(0.0f64, f64::max)
    };
    assert!(max_res(&fine) <= max_res(&coarse));
    assert!(max_res(&fine) < RESIDUAL_THRESHOLD);
}

#[test]
fn rational_conic_intersections_are_exact() {
    // x^2 + y^2 = 2z^2 and 2x^2 + y^2 = 3z^2 meet at (±1, ±1, 1);
    // substitution confirms both forms vanish there.
    let c1 = Conic::from_int_coeffs(&[1, 0, 1, 0, 0, -2]).unwrap();
    let c2 = Conic::from_int_coeffs(&[2, 0, 1, 0, 0, -3]).unwrap();
    let sols = conic_intersections(&c1, &c2, DEFAULT_PRECISION).unwrap();
    assert_eq!(sols.len(), 4);
    let mut got: Vec<Vec<BigInt>> = sols
        .iter()
        .map(|s| {
            assert_eq!(s.multiplicity, 1);
            assert_eq!(s.residuals, [0.0, 0.0]);
            s.exact.clone().expect("rational path must be exact")
        })
        .collect();
    got.sort();
    let mut want: Vec<Vec<BigInt>> = [[1i64, 1, 1], [1, -1, 1], [1, 1, -1], [1, -1, -1]]
        .iter()
        .map(|c| {
            let p = ProjPoint::from_ints(c).unwrap();
            for conic in [&c1, &c2] {
                assert!(conic.eval_point(&p).is_zero());
            }
            p.coords().to_vec()
        })
        .collect();
    want.sort();
    assert_eq!(got, want);
}

#[test]
fn tangent_conics_report_a_doubled_intersection() {
    // Both pass through (0, ±1, 1) and touch the line x = z at (1, 0, 1).
    let c1 = unit_circle();
    let c2 = Conic::from_int_coeffs(&[2, 0, 1, -1, 0, -1]).unwrap();
    let p = ProjPoint::from_ints(&[1, 0, 1]).unwrap();
    assert!(c1.eval_point(&p).is_zero() && c2.eval_point(&p).is_zero());
    let sols = conic_intersections(&c1, &c2, DEFAULT_PRECISION).unwrap();
    let total: u32 = sols.iter().map(|s| s.multiplicity).sum();
    assert_eq!(total, 4);
    let doubled: Vec<_> = sols.iter().filter(|s| s.multiplicity == 2).collect();
    assert_eq!(doubled.len(), 1);
    assert_eq!(doubled[0].exact.as_deref(), Some(p.coords()));
}

#[test]
fn pencil_basis_gives_conics_through_the_points() {
    let points: [ProjPoint; 4] = [
        ProjPoint::from_ints(&[1, 0, 1]).unwrap(),
        ProjPoint::from_ints(&[0, 1, 1]).unwrap(),
        ProjPoint::from_ints(&[-1, 0, 1]).unwrap(),
        ProjPoint::from_ints(&[2, 3, 1]).unwrap(),
    ];
    let (b1, b2) = pencil_basis_through(&points).unwrap();
    for p in &points {
        assert!(b1.eval_point(p).is_zero());
        assert!(b2.eval_point(p).is_zero());
    }
}

#[test]
fn split_quartic_has_weighted_degree_28() {
    let c1 = Conic::from_int_coeffs(&[1, 0, 1, 0, 0, -2]).unwrap();
    let c2 = Conic::from_int_coeffs(&[2, 0, 1, 0, 0, -3]).unwrap();
    let sq = split_quartic_config(&c1, &c2, DEFAULT_PRECISION).unwrap();
    assert_eq!(sq.nodes.len(), 4);
    assert_eq!(sq.chords.len(), 6);
    assert!(sq.chords.iter().all(|(_, m, _)| m == 4));
    let tangent_total: u32 = sq.tangents.iter().map(|t| t.multiplicity).sum();
    assert_eq!(tangent_total, 4);
    assert_eq!(sq.weighted_degree(), BigInt::from(28));
    // Chords are exact spans of node pairs.
    for chord in sq.chords.hyperplanes() {
        let on = sq.nodes.iter().filter(|n| chord.contains(n)).count();
        assert_eq!(on, 2);
    }
}

#[test]
fn split_quartic_rejects_tangent_pairs() {
    let c1 = unit_circle();
    let c2 = Conic::from_int_coeffs(&[2, 0, 1, -1, 0, -1]).unwrap();
    assert!(matches!(
        split_quartic_config(&c1, &c2, DEFAULT_PRECISION),
        Err(Error::InvalidInput(_))
    ));
}
