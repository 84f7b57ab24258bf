//! Weighted hyperplane configurations: synthesis from point data and
//! projection from a node.
//!
//! A weighted configuration is the artifact's representation of the theta
//! hypersurface of a curve: a multiset of hyperplanes in canonical form
//! with positive integer multiplicities. The synthesizers here build the
//! exactly realizable strata (spans of node subsets) and, for genus 4,
//! complete mock configurations with the correct counts and incidence
//! structure for exercising the recovery algorithms.

use std::collections::BTreeMap;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::enumeration::{self, CurveModel};
use crate::error::{Error, Result};
use crate::exactlin::{self, matrix, Hyperplane, ProjPoint, Scalar};

/// How an entry of a configuration was produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    /// Span of a subset of the singular points.
    NodeSpan,
    /// Tangency construction on a curve component.
    Tangent,
    /// Pseudo-random synthesis subject to incidence constraints.
    Mock,
}

impl Provenance {
    pub fn as_str(&self) -> &'static str {
        match self {
            Provenance::NodeSpan => "node-span",
            Provenance::Tangent => "tangent",
            Provenance::Mock => "mock",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "node-span" => Ok(Provenance::NodeSpan),
            "tangent" => Ok(Provenance::Tangent),
            "mock" => Ok(Provenance::Mock),
            other => Err(Error::Parse(format!("unknown provenance tag {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct EntryData {
    multiplicity: u64,
    provenance: Provenance,
}

/// Multiset of hyperplanes with positive integer multiplicities. Entries
/// are keyed by canonical form, so duplicate inserts merge, and iteration
/// order is the canonical lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedConfig {
    ambient_dim: usize,
    entries: BTreeMap<Hyperplane, EntryData>,
}

impl WeightedConfig {
    pub fn new(ambient_dim: usize) -> Self {
        Self { ambient_dim, entries: BTreeMap::new() }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Add `multiplicity` to the entry for `h`, creating it if new.
    pub fn insert(&mut self, h: Hyperplane, multiplicity: u64, provenance: Provenance) {
        debug_assert_eq!(h.ambient_dim(), self.ambient_dim);
        debug_assert!(multiplicity > 0);
        self.entries
            .entry(h)
            .and_modify(|e| e.multiplicity += multiplicity)
            .or_insert(EntryData { multiplicity, provenance });
    }

    pub fn contains(&self, h: &Hyperplane) -> bool {
        self.entries.contains_key(h)
    }

    pub fn multiplicity_of(&self, h: &Hyperplane) -> Option<u64> {
        self.entries.get(h).map(|e| e.multiplicity)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Hyperplane, u64, Provenance)> {
        self.entries.iter().map(|(h, e)| (h, e.multiplicity, e.provenance))
    }

    pub fn hyperplanes(&self) -> impl Iterator<Item = &Hyperplane> {
        self.entries.keys()
    }

    pub fn weighted_degree(&self) -> BigInt {
        self.entries.values().map(|e| BigInt::from(e.multiplicity)).sum()
    }

    /// Entries with the exact multiplicity `m`, in canonical order.
    pub fn stratum(&self, m: u64) -> Vec<&Hyperplane> {
        self.entries
            .iter()
            .filter(|(_, e)| e.multiplicity == m)
            .map(|(h, _)| h)
            .collect()
    }

    /// Distinct-hyperplane count per multiplicity.
    pub fn multiplicity_histogram(&self) -> BTreeMap<u64, usize> {
        let mut hist = BTreeMap::new();
        for e in self.entries.values() {
            *hist.entry(e.multiplicity).or_insert(0) += 1;
        }
        hist
    }

    /// Union of entries; multiplicities of shared hyperplanes add up.
    pub fn merged_with(&self, other: &WeightedConfig) -> WeightedConfig {
        let mut out = self.clone();
        for (h, m, p) in other.iter() {
            out.insert(h.clone(), m, p);
        }
        out
    }
}

/// A set of points verified to be in general linear position at
/// construction time.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NodeSet {
    points: Vec<ProjPoint>,
    ambient_dim: usize,
}

impl NodeSet {
    pub fn new(points: Vec<ProjPoint>, ambient_dim: usize) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidInput("empty node set".into()));
        }
        for p in &points {
            if p.ambient_dim() != ambient_dim {
                return Err(Error::InvalidInput(format!(
                    "node in P^{} passed to a node set in P^{}",
                    p.ambient_dim(),
                    ambient_dim
                )));
            }
        }
        if !exactlin::in_general_position(&points, ambient_dim) {
            return Err(Error::InvalidInput(
                "nodes are not in general linear position".into(),
            ));
        }
        Ok(Self { points, ambient_dim })
    }

    pub fn points(&self) -> &[ProjPoint] {
        &self.points
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

fn binomial_usize(n: usize, k: usize) -> usize {
    enumeration::binomial(n as u32, k as u32)
        .to_usize()
        .expect("configuration sizes fit in usize")
}

fn spans_with_multiplicity(
    nodes: &NodeSet,
    multiplicity: u64,
    provenance: Provenance,
) -> Result<WeightedConfig> {
    let r = nodes.ambient_dim();
    let t = nodes.len();
    let mut cfg = WeightedConfig::new(r);
    for subset in nodes.points().iter().combinations(r) {
        let subset: Vec<ProjPoint> = subset.into_iter().cloned().collect();
        let h = exactlin::hyperplane_through(&subset)?;
        cfg.insert(h, multiplicity, provenance);
    }
    // General position makes all these spans distinct.
    debug_assert_eq!(cfg.len(), binomial_usize(t, r));
    Ok(cfg)
}

/// The configuration of all `C(t, r)` hyperplanes spanned by `r`-subsets of
/// `t >= r + 1` points in general position, each with multiplicity 1. Every
/// point lies on exactly `C(t-1, r-1)` of them.
pub fn spans_config(nodes: &NodeSet) -> Result<WeightedConfig> {
    if nodes.len() <= nodes.ambient_dim() {
        return Err(Error::InvalidInput(format!(
            "need at least {} points in P^{} to span a configuration, got {}",
            nodes.ambient_dim() + 1,
            nodes.ambient_dim(),
            nodes.len()
        )));
    }
    spans_with_multiplicity(nodes, 1, Provenance::NodeSpan)
}

/// The type-`(g-1)` stratum of a split curve of genus `g` with the given
/// `g + 1` nodes in `P^{g-1}`: the `C(g+1, 2)` hyperplanes spanned by
/// `(g-1)`-subsets of the nodes, each with multiplicity `2^{g-1}`.
pub fn split_config(genus: u32, nodes: &NodeSet) -> Result<WeightedConfig> {
    if genus < 3 {
        return Err(Error::InvalidInput(format!(
            "split model needs genus >= 3, got {genus}"
        )));
    }
    if genus > 63 {
        return Err(Error::InvalidInput(
            "genus too large for u64 multiplicities".into(),
        ));
    }
    let g = genus as usize;
    if nodes.ambient_dim() != g - 1 || nodes.len() != g + 1 {
        return Err(Error::InvalidInput(format!(
            "split model of genus {genus} needs {} nodes in P^{}, got {} in P^{}",
            g + 1,
            g - 1,
            nodes.len(),
            nodes.ambient_dim()
        )));
    }
    spans_with_multiplicity(nodes, 1u64 << (genus - 1), Provenance::NodeSpan)
}

/// Default coefficient height for mock synthesis.
pub const DEFAULT_COEFF_HEIGHT: i64 = 20;

const MAX_SAMPLING_RETRIES: usize = 1000;

/// A synthetic genus-4 configuration with the exact per-type counts of an
/// irreducible `delta`-nodal model: each type-`i` hyperplane has
/// multiplicity `2^i`, contains exactly `i` of the given nodes (spread
/// evenly over the `i`-subsets), avoids every other node, and is otherwise
/// pseudo-random from the seed. The output is audited against the count
/// table, the weighted degree 120, the per-entry incidence, and the
/// genericity the recovery case analysis relies on, before being returned.
pub fn mock_nodal_config_g4(delta: u32, nodes: &NodeSet, seed: u64) -> Result<WeightedConfig> {
    mock_nodal_config_g4_with_height(delta, nodes, seed, DEFAULT_COEFF_HEIGHT)
}

pub fn mock_nodal_config_g4_with_height(
    delta: u32,
    nodes: &NodeSet,
    seed: u64,
    height: i64,
) -> Result<WeightedConfig> {
    if !(1..=4).contains(&delta) {
        return Err(Error::InvalidInput(format!(
            "genus-4 mock synthesis needs 1 <= delta <= 4, got {delta}"
        )));
    }
    if nodes.len() != delta as usize || nodes.ambient_dim() != 3 {
        return Err(Error::InvalidInput(format!(
            "need {delta} nodes in P^3, got {} in P^{}",
            nodes.len(),
            nodes.ambient_dim()
        )));
    }
    if height < 1 {
        return Err(Error::InvalidInput("coefficient height must be positive".into()));
    }
    let table =
        enumeration::theta_table(CurveModel::IrreducibleNodal { genus: 4, nodes: delta })?;
    let counts: Vec<usize> = table
        .counts
        .iter()
        .map(|c| c.to_usize().expect("genus-4 counts are small"))
        .collect();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cfg = WeightedConfig::new(3);

    for type_index in 0..4usize {
        let total = counts[type_index];
        if total == 0 {
            continue;
        }
        let subsets: Vec<Vec<usize>> = (0..delta as usize).combinations(type_index).collect();
        debug_assert_eq!(total % subsets.len(), 0);
        let per_subset = total / subsets.len();
        let mult = 1u64 << type_index;
        for subset in &subsets {
            let chosen: Vec<ProjPoint> =
                subset.iter().map(|&k| nodes.points()[k].clone()).collect();
            if type_index == 3 {
                // The span of three general-position points is the unique
                // plane through them; nothing to sample.
                debug_assert_eq!(per_subset, 1);
                let h = exactlin::hyperplane_through(&chosen)?;
                if node_incidence(&h, nodes) != subset.len() {
                    return Err(Error::SynthesisFailed(
                        "a node span contains an extra node".into(),
                    ));
                }
                cfg.insert(h, mult, Provenance::Mock);
                continue;
            }
            let basis = through_subset_basis(&chosen);
            for _ in 0..per_subset {
                let h =
                    sample_constrained_plane(&mut rng, &basis, nodes, subset, &cfg, height)?;
                cfg.insert(h, mult, Provenance::Mock);
            }
        }
    }
    audit_mock(&cfg, delta, nodes, &counts)?;
    Ok(cfg)
}

/// Basis of the space of planes through the given points (all of the dual
/// space when the subset is empty).
fn through_subset_basis(points: &[ProjPoint]) -> Vec<Vec<Scalar>> {
    let rows: Vec<Vec<Scalar>> = points.iter().map(ProjPoint::to_scalars).collect();
    matrix::nullspace(&rows, 4)
}

fn node_incidence(h: &Hyperplane, nodes: &NodeSet) -> usize {
    nodes.points().iter().filter(|p| h.contains(p)).count()
}

fn sample_constrained_plane(
    rng: &mut ChaCha8Rng,
    basis: &[Vec<Scalar>],
    nodes: &NodeSet,
    subset: &[usize],
    cfg: &WeightedConfig,
    height: i64,
) -> Result<Hyperplane> {
    for _ in 0..MAX_SAMPLING_RETRIES {
        let coeffs: Vec<i64> = (0..basis.len())
            .map(|_| rng.random_range(-height..=height))
            .collect();
        if coeffs.iter().all(|&c| c == 0) {
            continue;
        }
        let mut v = vec![Scalar::from(BigInt::from(0)); 4];
        for (c, row) in coeffs.iter().zip(basis) {
            let c = Scalar::from(BigInt::from(*c));
            for (acc, x) in v.iter_mut().zip(row) {
                *acc += &c * x;
            }
        }
        let Ok(h) = Hyperplane::new(v) else {
            continue;
        };
        // Must contain exactly the prescribed nodes and be new.
        let hits: Vec<usize> = (0..nodes.len())
            .filter(|&k| h.contains(&nodes.points()[k]))
            .collect();
        if hits != subset || cfg.contains(&h) {
            continue;
        }
        return Ok(h);
    }
    Err(Error::SynthesisFailed(format!(
        "no admissible plane found in {MAX_SAMPLING_RETRIES} samples"
    )))
}

/// Checks run on every synthesized configuration before returning it.
fn audit_mock(
    cfg: &WeightedConfig,
    delta: u32,
    nodes: &NodeSet,
    counts: &[usize],
) -> Result<()> {
    let hist = cfg.multiplicity_histogram();
    for (i, &expected) in counts.iter().enumerate() {
        let got = hist.get(&(1u64 << i)).copied().unwrap_or(0);
        if got != expected {
            return Err(Error::SynthesisFailed(format!(
                "type-{i} count is {got}, expected {expected}"
            )));
        }
    }
    if cfg.weighted_degree() != enumeration::n_odd(4) {
        return Err(Error::SynthesisFailed("weighted degree is not 120".into()));
    }
    for (h, m, _) in cfg.iter() {
        let incidence = node_incidence(h, nodes) as u32;
        if 1u64 << incidence != m {
            return Err(Error::SynthesisFailed(format!(
                "plane with multiplicity {m} contains {incidence} nodes"
            )));
        }
    }
    if delta == 1 {
        // The type-1 planes must meet exactly in the node: their dual
        // vectors then span the node's annihilator, which has rank 3.
        let duals: Vec<Vec<Scalar>> = cfg.stratum(2).iter().map(|h| h.to_scalars()).collect();
        if matrix::rank(duals) != 3 {
            return Err(Error::SynthesisFailed(
                "type-1 planes share more than the node".into(),
            ));
        }
    }
    if delta == 3 {
        // Four planes through each pair of nodes.
        for pair in (0..3usize).combinations(2) {
            let through_pair = cfg
                .stratum(4)
                .iter()
                .filter(|h| pair.iter().all(|&k| h.contains(&nodes.points()[k])))
                .count();
            if through_pair != 4 {
                return Err(Error::SynthesisFailed(format!(
                    "pair {pair:?} lies on {through_pair} multiplicity-4 planes, expected 4"
                )));
            }
        }
    }
    Ok(())
}

/// Projection of a configuration from a point: keeps exactly the
/// hyperplanes through the center and maps each to the unique hyperplane
/// downstairs, preserving multiplicities. Distinct hyperplanes through the
/// center stay distinct under this map, so nothing merges.
pub fn project_config(cfg: &WeightedConfig, center: &ProjPoint) -> Result<WeightedConfig> {
    let r = cfg.ambient_dim();
    if center.ambient_dim() != r {
        return Err(Error::InvalidInput(
            "projection center dimension mismatch".into(),
        ));
    }
    if r == 0 {
        return Err(Error::InvalidInput("cannot project from P^0".into()));
    }
    let mut out = WeightedConfig::new(r - 1);
    for (h, m, p) in cfg.iter() {
        if h.contains(center) {
            let image = exactlin::project_hyperplane(center, h)?;
            out.insert(image, m, p);
        }
    }
    Ok(out)
}
