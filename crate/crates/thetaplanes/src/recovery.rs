//! Recovery of singular points from a weighted hyperplane configuration.
//!
//! The core primitive recovers a general-position point set from the
//! configuration of hyperplanes its subsets span, by classifying pairwise
//! intersections through their exact containment counts. On top of it sit
//! the split-curve node recovery (filter the top-multiplicity stratum
//! first) and the genus-4 case analysis, one case per node count. All
//! recovery is exact: candidate points are compared by canonical form and
//! there is no tolerance anywhere.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use num_traits::ToPrimitive;

use crate::configuration::{spans_config, NodeSet, WeightedConfig};
use crate::enumeration::{self, CurveModel};
use crate::error::{Error, Result};
use crate::exactlin::{matrix, meet_hyperplanes, normalize, Hyperplane, LinSubspace, ProjPoint};

fn binomial_usize(n: usize, k: usize) -> usize {
    enumeration::binomial(n as u32, k as u32)
        .to_usize()
        .expect("configuration sizes fit in usize")
}

/// Canonical form of the 2-dimensional span of two distinct hyperplanes,
/// used as a grouping key for their intersection.
fn pair_span_key(a: &Hyperplane, b: &Hyperplane) -> Result<Vec<Vec<num_bigint::BigInt>>> {
    let mut rows = vec![a.to_scalars(), b.to_scalars()];
    matrix::rref(&mut rows);
    rows.iter().map(|row| normalize(row)).collect()
}

/// Recover the `t` general-position points whose `r`-subset spans make up
/// `cfg`. Works hyperplane by hyperplane in canonical order: inside a fixed
/// `H`, the intersections `H ∩ H'` contained in exactly `t - r + 1`
/// configuration elements are the spans of `(r-1)`-subsets of `H`'s
/// generating points, and meeting any `r - 1` of those cuts out one
/// generator. The result is verified by re-synthesis before returning.
pub fn recover_from_spans(cfg: &WeightedConfig, t: usize) -> Result<Vec<ProjPoint>> {
    let r = cfg.ambient_dim();
    if t <= r {
        return Err(Error::InvalidInput(format!(
            "need t >= r + 1 = {} points, got t = {t}",
            r + 1
        )));
    }
    let mults: BTreeSet<u64> = cfg.iter().map(|(_, m, _)| m).collect();
    if mults.len() > 1 {
        return Err(Error::NotASpanConfiguration(
            "entries do not all have the same multiplicity".into(),
        ));
    }
    let expected = binomial_usize(t, r);
    if cfg.len() != expected {
        return Err(Error::NotASpanConfiguration(format!(
            "configuration has {} hyperplanes, a span configuration of {t} points in P^{r} has {expected}",
            cfg.len()
        )));
    }

    let planes: Vec<&Hyperplane> = cfg.hyperplanes().collect();
    let mut points: BTreeSet<ProjPoint> = BTreeSet::new();

    if t == r + 1 {
        // Simplex case: every point is the meet of the r hyperplanes
        // omitting it.
        for subset in planes.iter().combinations(r) {
            let chosen: Vec<&Hyperplane> = subset.into_iter().copied().collect();
            let meet = meet_hyperplanes(&chosen, r)?;
            let point = match meet {
                Some(s) if s.dim() == 0 => s.as_point()?,
                _ => {
                    return Err(Error::NotASpanConfiguration(
                        "hyperplane subsets do not meet in points".into(),
                    ))
                }
            };
            points.insert(point);
        }
    } else {
        let s = t - r;
        for (idx, h) in planes.iter().enumerate() {
            // Group codimension-2 intersections; an element containing
            // J = H ∩ H' meets H exactly in J, so the number of elements
            // containing J is the number of times J occurs here, plus one
            // for H itself. J is keyed by the span of {H, H'}, which is its
            // annihilator and much cheaper to canonicalize than J itself.
            let mut groups: BTreeMap<Vec<Vec<num_bigint::BigInt>>, Vec<usize>> = BTreeMap::new();
            for (jdx, other) in planes.iter().enumerate() {
                if jdx == idx {
                    continue;
                }
                let key = pair_span_key(h, other)?;
                groups.entry(key).or_default().push(jdx);
            }
            let type_a: Vec<&Vec<usize>> = groups
                .values()
                .filter(|witnesses| witnesses.len() + 1 == s + 1)
                .collect();
            if type_a.len() != r {
                return Err(Error::NotASpanConfiguration(format!(
                    "expected {r} type-(a) intersections inside a hyperplane, found {}",
                    type_a.len()
                )));
            }
            // Meet of any r-1 of the type-(a) subspaces: stack H with one
            // witness per chosen subspace (H and the witness span the
            // subspace's annihilator).
            for omit in 0..r {
                let mut stack: Vec<&Hyperplane> = vec![h];
                for (k, witnesses) in type_a.iter().enumerate() {
                    if k != omit {
                        stack.push(planes[witnesses[0]]);
                    }
                }
                let meet = meet_hyperplanes(&stack, r)?;
                match meet {
                    Some(sub) if sub.dim() == 0 => {
                        points.insert(sub.as_point()?);
                    }
                    _ => {
                        return Err(Error::NotASpanConfiguration(
                            "type-(a) intersections do not meet in a point".into(),
                        ))
                    }
                }
            }
            if points.len() == t {
                break;
            }
        }
    }

    if points.len() != t {
        return Err(Error::NotASpanConfiguration(format!(
            "recovered {} distinct points, expected {t}",
            points.len()
        )));
    }
    let recovered: Vec<ProjPoint> = points.into_iter().collect();

    // Re-synthesize and compare against the input.
    let nodes = NodeSet::new(recovered.clone(), r).map_err(|_| {
        Error::InconsistentConfiguration(
            "recovered points are not in general position".into(),
        )
    })?;
    let resynth = spans_config(&nodes)?;
    let original: BTreeSet<&Hyperplane> = cfg.hyperplanes().collect();
    let rebuilt: BTreeSet<&Hyperplane> = resynth.hyperplanes().collect();
    if original != rebuilt {
        return Err(Error::InconsistentConfiguration(
            "re-synthesized span configuration differs from the input".into(),
        ));
    }
    Ok(recovered)
}

/// Recover the `g + 1` nodes of a split curve of genus `g` from a
/// configuration containing its type-`(g-1)` stratum, possibly mixed with
/// entries of other multiplicities (which are ignored).
pub fn recover_split_nodes(cfg: &WeightedConfig, genus: u32) -> Result<Vec<ProjPoint>> {
    if genus < 3 || genus > 63 {
        return Err(Error::InvalidInput(format!(
            "split recovery needs 3 <= genus <= 63, got {genus}"
        )));
    }
    let g = genus as usize;
    if cfg.ambient_dim() != g - 1 {
        return Err(Error::NotASplitConfiguration(format!(
            "genus {genus} lives in P^{}, configuration is in P^{}",
            g - 1,
            cfg.ambient_dim()
        )));
    }
    let mult = 1u64 << (genus - 1);
    let stratum = cfg.stratum(mult);
    let expected = binomial_usize(g + 1, 2);
    if stratum.len() != expected {
        return Err(Error::NotASplitConfiguration(format!(
            "multiplicity-{mult} stratum has {} hyperplanes, expected C({}, 2) = {expected}",
            stratum.len(),
            g + 1
        )));
    }
    let mut top = WeightedConfig::new(g - 1);
    for h in stratum {
        top.insert(h.clone(), mult, crate::configuration::Provenance::NodeSpan);
    }
    recover_from_spans(&top, g + 1)
}

/// Recover the nodes of a genus-4 configuration with `delta` nodes by the
/// per-case analysis on the multiplicity strata.
pub fn recover_nodes_g4(cfg: &WeightedConfig, delta: u32) -> Result<Vec<ProjPoint>> {
    if !(1..=4).contains(&delta) {
        return Err(Error::InvalidInput(format!(
            "genus-4 recovery needs 1 <= delta <= 4, got {delta}"
        )));
    }
    if cfg.ambient_dim() != 3 {
        return Err(Error::WrongStratification(format!(
            "genus-4 configurations live in P^3, got P^{}",
            cfg.ambient_dim()
        )));
    }
    // The multiplicity histogram must match the count table exactly.
    let table =
        enumeration::theta_table(CurveModel::IrreducibleNodal { genus: 4, nodes: delta })?;
    let hist = cfg.multiplicity_histogram();
    for (i, want) in table.counts.iter().enumerate() {
        let want = want.to_usize().expect("small counts");
        let got = hist.get(&(1u64 << i)).copied().unwrap_or(0);
        if got != want {
            return Err(Error::WrongStratification(format!(
                "type-{i} stratum (multiplicity {}) has {got} hyperplanes, expected {want}",
                1u64 << i
            )));
        }
    }
    for m in hist.keys() {
        if !m.is_power_of_two() || *m > 8 {
            return Err(Error::WrongStratification(format!(
                "unexpected multiplicity {m} in a genus-4 configuration"
            )));
        }
    }

    let nodes: BTreeSet<ProjPoint> = match delta {
        1 => {
            // All multiplicity-2 planes pass through the node and nothing
            // else.
            let planes = cfg.stratum(2);
            let meet = meet_hyperplanes(&planes, 3)?;
            match meet {
                Some(s) if s.dim() == 0 => BTreeSet::from([s.as_point()?]),
                _ => {
                    return Err(Error::GenericityFailure(
                        "multiplicity-2 planes do not meet in a single point".into(),
                    ))
                }
            }
        }
        2 => {
            // Any two multiplicity-4 planes meet in the line through the
            // two nodes; check that the line is the same for every pair.
            let quads = cfg.stratum(4);
            let line = meet_hyperplanes(&[quads[0], quads[1]], 3)?
                .expect("distinct planes in P^3 always meet");
            if line.dim() != 1 {
                return Err(Error::GenericityFailure(
                    "multiplicity-4 planes do not meet in a line".into(),
                ));
            }
            for pair in quads.iter().combinations(2) {
                let other = meet_hyperplanes(&[pair[0], pair[1]], 3)?;
                if other.as_ref() != Some(&line) {
                    return Err(Error::GenericityFailure(
                        "multiplicity-4 planes disagree about the node line".into(),
                    ));
                }
            }
            // The node line meets each type-1 plane in the node it contains.
            let mut found = BTreeSet::new();
            for h in cfg.stratum(2) {
                let cut = line.meet(&h.as_subspace())?;
                match cut {
                    Some(s) if s.dim() == 0 => {
                        found.insert(s.as_point()?);
                    }
                    _ => {
                        return Err(Error::GenericityFailure(
                            "the node line does not cut a type-1 plane in one point".into(),
                        ))
                    }
                }
            }
            if found.len() != 2 {
                return Err(Error::GenericityFailure(format!(
                    "node line cuts the type-1 planes in {} points, expected 2",
                    found.len()
                )));
            }
            found
        }
        3 => {
            // The unique multiplicity-8 plane contains all three nodes; the
            // multiplicity-4 planes cut it in the three triangle sides.
            let top = cfg.stratum(8);
            let h8 = top[0];
            let mut sides: BTreeSet<LinSubspace> = BTreeSet::new();
            for q in cfg.stratum(4) {
                let cut = meet_hyperplanes(&[h8, q], 3)?
                    .expect("distinct planes in P^3 always meet");
                if cut.dim() != 1 {
                    return Err(Error::GenericityFailure(
                        "a multiplicity-4 plane does not cut the top plane in a line".into(),
                    ));
                }
                sides.insert(cut);
            }
            if sides.len() != 3 {
                return Err(Error::GenericityFailure(format!(
                    "multiplicity-4 planes cut {} distinct lines on the top plane, expected 3",
                    sides.len()
                )));
            }
            let sides: Vec<LinSubspace> = sides.into_iter().collect();
            let mut vertices = BTreeSet::new();
            for pair in sides.iter().combinations(2) {
                let v = pair[0].meet(pair[1])?;
                match v {
                    Some(s) if s.dim() == 0 => {
                        vertices.insert(s.as_point()?);
                    }
                    _ => {
                        return Err(Error::GenericityFailure(
                            "triangle sides do not meet in points".into(),
                        ))
                    }
                }
            }
            if vertices.len() != 3 {
                return Err(Error::GenericityFailure(format!(
                    "triangle has {} distinct vertices, expected 3",
                    vertices.len()
                )));
            }
            vertices
        }
        4 => {
            // Each multiplicity-8 plane spans three of the four nodes; any
            // three of the planes meet exactly in the node they share.
            let top = cfg.stratum(8);
            let mut found = BTreeSet::new();
            for triple in top.iter().combinations(3) {
                let chosen: Vec<&Hyperplane> = triple.into_iter().copied().collect();
                let meet = meet_hyperplanes(&chosen, 3)?;
                match meet {
                    Some(s) if s.dim() == 0 => {
                        found.insert(s.as_point()?);
                    }
                    _ => {
                        return Err(Error::GenericityFailure(
                            "three multiplicity-8 planes do not meet in a point".into(),
                        ))
                    }
                }
            }
            if found.len() != 4 {
                return Err(Error::GenericityFailure(format!(
                    "multiplicity-8 triples meet in {} distinct points, expected 4",
                    found.len()
                )));
            }
            found
        }
        _ => unreachable!(),
    };
    Ok(nodes.into_iter().collect())
}

/// Diagnostic: all points arising as zero-dimensional meets of hyperplanes
/// of multiplicity at least `min_weight` that lie on at least `min_count`
/// such hyperplanes, with their exact incidence counts.
pub fn cluster_points(
    cfg: &WeightedConfig,
    min_weight: u64,
    min_count: usize,
) -> Result<Vec<(ProjPoint, usize)>> {
    let r = cfg.ambient_dim();
    let planes: Vec<&Hyperplane> = cfg
        .iter()
        .filter(|(_, m, _)| *m >= min_weight)
        .map(|(h, _, _)| h)
        .collect();
    if planes.len() < r {
        return Ok(Vec::new());
    }
    let mut candidates: BTreeSet<ProjPoint> = BTreeSet::new();
    for subset in planes.iter().combinations(r) {
        let chosen: Vec<&Hyperplane> = subset.into_iter().copied().collect();
        if let Some(s) = meet_hyperplanes(&chosen, r)? {
            if s.dim() == 0 {
                candidates.insert(s.as_point()?);
            }
        }
    }
    let mut out = Vec::new();
    for p in candidates {
        let incidence = planes.iter().filter(|h| h.contains(&p)).count();
        if incidence >= min_count {
            out.push((p, incidence));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::configuration::{
        mock_nodal_config_g4, split_config, Provenance,
    };

    fn pt(coords: &[i64]) -> ProjPoint {
        ProjPoint::from_ints(coords).unwrap()
    }

    fn frame_plus_unit(r: usize) -> NodeSet {
        let mut points: Vec<ProjPoint> = (0..=r)
            .map(|i| {
                let mut c = vec![0i64; r + 1];
                c[i] = 1;
                pt(&c)
            })
            .collect();
        points.push(pt(&vec![1i64; r + 1]));
        NodeSet::new(points, r).unwrap()
    }

    fn sorted(points: &[ProjPoint]) -> Vec<ProjPoint> {
        let mut v = points.to_vec();
        v.sort();
        v
    }

    #[test]
    fn recovers_frame_plus_unit_in_p2() {
        let nodes = frame_plus_unit(2);
        let cfg = spans_config(&nodes).unwrap();
        let recovered = recover_from_spans(&cfg, 4).unwrap();
        assert_eq!(recovered, sorted(nodes.points()));
    }

    #[test]
    fn recovers_simplex_case() {
        let points = vec![pt(&[1, 0, 0]), pt(&[0, 1, 0]), pt(&[0, 0, 1])];
        let nodes = NodeSet::new(points.clone(), 2).unwrap();
        let cfg = spans_config(&nodes).unwrap();
        let recovered = recover_from_spans(&cfg, 3).unwrap();
        assert_eq!(recovered, sorted(&points));
    }

    #[test]
    fn recovers_larger_random_style_set() {
        let points = vec![
            pt(&[1, 2, 3, 5]),
            pt(&[7, 1, 0, 2]),
            pt(&[0, 3, 1, 1]),
            pt(&[2, 0, 5, 1]),
            pt(&[1, 1, 4, 0]),
            pt(&[3, 5, 1, 2]),
        ];
        let nodes = NodeSet::new(points.clone(), 3).unwrap();
        let cfg = spans_config(&nodes).unwrap();
        let recovered = recover_from_spans(&cfg, 6).unwrap();
        assert_eq!(recovered, sorted(&points));
    }

    #[test]
    fn rejects_wrong_cardinality() {
        let nodes = frame_plus_unit(2);
        let cfg = spans_config(&nodes).unwrap();
        assert!(matches!(
            recover_from_spans(&cfg, 5),
            Err(Error::NotASpanConfiguration(_))
        ));
    }

    #[test]
    fn rejects_mixed_multiplicities() {
        let nodes = frame_plus_unit(2);
        let mut cfg = spans_config(&nodes).unwrap();
        let h = cfg.hyperplanes().next().unwrap().clone();
        cfg.insert(h, 1, Provenance::Mock);
        assert!(matches!(
            recover_from_spans(&cfg, 4),
            Err(Error::NotASpanConfiguration(_))
        ));
    }

    #[test]
    fn split_recovery_ignores_noise() {
        let nodes = frame_plus_unit(2);
        let mut cfg = split_config(3, &nodes).unwrap();
        for noise in [[1i64, 2, 4], [5, 1, 1], [3, 7, 2], [2, 9, 5]] {
            cfg.insert(Hyperplane::from_ints(&noise).unwrap(), 1, Provenance::Mock);
        }
        let recovered = recover_split_nodes(&cfg, 3).unwrap();
        assert_eq!(recovered, sorted(nodes.points()));
    }

    #[test]
    fn split_recovery_commutes_with_projection() {
        // Recover a node, project the configuration from it, recover again:
        // the second recovery yields the projections of the other nodes.
        // Projection keeps the source multiplicities, so the projected
        // stratum is recovered as a plain span configuration.
        let nodes = frame_plus_unit(3);
        let cfg = split_config(4, &nodes).unwrap();
        let recovered = recover_split_nodes(&cfg, 4).unwrap();
        assert_eq!(recovered, sorted(nodes.points()));
        let center = &recovered[0];
        let projected = crate::configuration::project_config(&cfg, center).unwrap();
        let downstairs = recover_from_spans(&projected, 4).unwrap();
        let expected: Vec<ProjPoint> = recovered[1..]
            .iter()
            .map(|p| crate::exactlin::project_from_point(center, p).unwrap())
            .collect();
        assert_eq!(downstairs, sorted(&expected));
    }

    #[test]
    fn split_recovery_rejects_wrong_stratum_size() {
        let nodes = frame_plus_unit(2);
        let mut cfg = split_config(3, &nodes).unwrap();
        cfg.insert(Hyperplane::from_ints(&[1, 2, 4]).unwrap(), 4, Provenance::Mock);
        assert!(matches!(
            recover_split_nodes(&cfg, 3),
            Err(Error::NotASplitConfiguration(_))
        ));
    }

    fn g4_nodes(delta: u32) -> NodeSet {
        let all = frame_plus_unit(3);
        NodeSet::new(all.points()[..delta as usize].to_vec(), 3).unwrap()
    }

    #[test]
    fn g4_recovery_round_trips() {
        for delta in 1..=4u32 {
            for seed in [0u64, 1, 2] {
                let nodes = g4_nodes(delta);
                let cfg = mock_nodal_config_g4(delta, &nodes, seed).unwrap();
                let recovered = recover_nodes_g4(&cfg, delta).unwrap();
                assert_eq!(recovered, sorted(nodes.points()), "delta={delta} seed={seed}");
            }
        }
    }

    #[test]
    fn g4_recovery_rejects_wrong_stratification() {
        let cfg = mock_nodal_config_g4(2, &g4_nodes(2), 5).unwrap();
        let err = recover_nodes_g4(&cfg, 3).unwrap_err();
        match err {
            Error::WrongStratification(msg) => {
                assert!(msg.contains("expected"), "diagnostic should name the count: {msg}")
            }
            other => panic!("expected WrongStratification, got {other:?}"),
        }
    }

    #[test]
    fn g4_delta_1_with_second_common_point_fails_genericity() {
        // All 28 multiplicity-2 planes contain the line through two points,
        // so their meet is 1-dimensional.
        let mut cfg = WeightedConfig::new(3);
        for k in 0..27i64 {
            cfg.insert(Hyperplane::from_ints(&[0, 0, 1, k]).unwrap(), 2, Provenance::Mock);
        }
        cfg.insert(Hyperplane::from_ints(&[0, 0, 0, 1]).unwrap(), 2, Provenance::Mock);
        let mut k = 0i64;
        'outer: for i in 0..8i64 {
            for j in 0..8i64 {
                cfg.insert(Hyperplane::from_ints(&[1, i, j, 0]).unwrap(), 1, Provenance::Mock);
                k += 1;
                if k == 64 {
                    break 'outer;
                }
            }
        }
        assert!(matches!(
            recover_nodes_g4(&cfg, 1),
            Err(Error::GenericityFailure(_))
        ));
    }

    #[test]
    fn cluster_points_on_split_config() {
        let nodes = frame_plus_unit(2);
        let cfg = split_config(3, &nodes).unwrap();
        let clusters = cluster_points(&cfg, 4, 3).unwrap();
        assert_eq!(clusters.len(), 4);
        let cluster_points_only: Vec<ProjPoint> =
            clusters.iter().map(|(p, _)| p.clone()).collect();
        assert_eq!(cluster_points_only, sorted(nodes.points()));
        assert!(clusters.iter().all(|(_, c)| *c == 3));
    }

    #[test]
    fn type_a_and_type_b_containment_counts() {
        // t = 6 points in P^3, so s = 3: inside a fixed H there are exactly
        // r = 3 codimension-2 subspaces contained in s + 1 = 4 elements,
        // and every other intersection lies in at most floor(s/2) + 1 = 2.
        let points = vec![
            pt(&[1, 0, 0, 0]),
            pt(&[0, 1, 0, 0]),
            pt(&[0, 0, 1, 0]),
            pt(&[0, 0, 0, 1]),
            pt(&[1, 1, 1, 1]),
            pt(&[1, 2, 4, 8]),
        ];
        let nodes = NodeSet::new(points, 3).unwrap();
        let cfg = spans_config(&nodes).unwrap();
        let planes: Vec<&Hyperplane> = cfg.hyperplanes().collect();
        let h = planes[0];
        // Containment counts computed the slow, direct way: meet as an
        // explicit subspace, then scan every element for containment.
        let mut counts: BTreeMap<LinSubspace, usize> = BTreeMap::new();
        for other in &planes[1..] {
            let j = meet_hyperplanes(&[h, other], 3).unwrap().unwrap();
            counts.entry(j).or_default();
        }
        for (j, count) in counts.iter_mut() {
            *count = planes
                .iter()
                .filter(|e| e.as_subspace().contains_subspace(j))
                .count();
        }
        let type_a = counts.values().filter(|&&c| c == 4).count();
        assert_eq!(type_a, 3);
        assert!(counts.values().all(|&c| c == 4 || c <= 2));
    }

    #[test]
    fn cluster_points_of_empty_config_is_empty() {
        let cfg = WeightedConfig::new(3);
        assert!(cluster_points(&cfg, 1, 1).unwrap().is_empty());
    }

    #[test]
    fn cluster_points_finds_g4_nodes() {
        let nodes = g4_nodes(4);
        let cfg = mock_nodal_config_g4(4, &nodes, 17).unwrap();
        let clusters = cluster_points(&cfg, 8, 3).unwrap();
        let found: Vec<ProjPoint> = clusters.iter().map(|(p, _)| p.clone()).collect();
        assert_eq!(found, sorted(nodes.points()));
    }
}
