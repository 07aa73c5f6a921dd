//! Invariant measures on branched surfaces.
//!
//! A measure assigns a non-negative integer weight to each section. It is
//! invariant when every branch curve admits an exact pairing resolution:
//! non-negative counts on the curve's allowed pairs such that each incident
//! port is consumed exactly `weight(owner)` times.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::branched::{BranchCurve, BranchedSurface, CurveId, PortId, SectionId};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct InvariantMeasure {
    weights: Vec<u64>,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum MeasureError {
    #[error("weight count {got} does not match section count {want}")]
    WrongLength { got: usize, want: usize },
    #[error("no weight for section {0:?}")]
    MissingWeight(String),
    #[error("unknown section {0:?} in measure")]
    UnknownSection(String),
    #[error("no exact pairing resolution at curve {curve}")]
    Infeasible { curve: String },
}

impl InvariantMeasure {
    /// Wraps raw weights; callers pair it with a surface of matching size.
    pub fn from_weights(weights: Vec<u64>) -> InvariantMeasure {
        InvariantMeasure { weights }
    }

    pub fn for_surface(bs: &BranchedSurface, weights: Vec<u64>) -> Result<InvariantMeasure, MeasureError> {
        if weights.len() != bs.sections().len() {
            return Err(MeasureError::WrongLength { got: weights.len(), want: bs.sections().len() });
        }
        Ok(InvariantMeasure { weights })
    }

    /// Builds a measure from a name-keyed table, requiring totality.
    pub fn from_named(bs: &BranchedSurface, table: &BTreeMap<String, u64>) -> Result<InvariantMeasure, MeasureError> {
        for name in table.keys() {
            if bs.section_by_name(name).is_none() {
                return Err(MeasureError::UnknownSection(name.clone()));
            }
        }
        let mut weights = Vec::with_capacity(bs.sections().len());
        for s in bs.sections() {
            match table.get(&s.name) {
                Some(w) => weights.push(*w),
                None => return Err(MeasureError::MissingWeight(s.name.clone())),
            }
        }
        Ok(InvariantMeasure { weights })
    }

    pub fn zero(bs: &BranchedSurface) -> InvariantMeasure {
        InvariantMeasure { weights: vec![0; bs.sections().len()] }
    }

    pub fn weight(&self, s: SectionId) -> u64 {
        self.weights[s.0]
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn is_zero(&self) -> bool {
        self.weights.iter().all(|w| *w == 0)
    }

    pub fn add(&self, other: &InvariantMeasure) -> InvariantMeasure {
        assert_eq!(self.weights.len(), other.weights.len());
        InvariantMeasure { weights: self.weights.iter().zip(&other.weights).map(|(a, b)| a + b).collect() }
    }

    pub fn to_named(&self, bs: &BranchedSurface) -> BTreeMap<String, u64> {
        bs.sections().iter().map(|s| (s.name.clone(), self.weights[s.id.0])).collect()
    }
}

/// Exact resolution of one curve: a count per allowed pair, in pair order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveResolution {
    pub counts: Vec<u64>,
    /// False when the priority-greedy pass failed and an exhaustive search
    /// found the resolution instead.
    pub greedy: bool,
}

fn port_index(curve: &BranchCurve, port: PortId) -> usize {
    curve.incident.iter().position(|p| *p == port).expect("pair end is incident")
}

fn capacities(bs: &BranchedSurface, curve: &BranchCurve, w: &InvariantMeasure) -> Vec<u64> {
    curve.incident.iter().map(|p| w.weight(bs.port(*p).owner)).collect()
}

fn is_exact(curve: &BranchCurve, caps: &[u64], counts: &[u64]) -> bool {
    let mut used = vec![0u64; caps.len()];
    for (pair, count) in curve.pairs.iter().zip(counts) {
        used[port_index(curve, pair.ends.0)] += count;
        used[port_index(curve, pair.ends.1)] += count;
    }
    used == caps
}

fn greedy_counts(curve: &BranchCurve, caps: &[u64]) -> Vec<u64> {
    let mut rem = caps.to_vec();
    let mut counts = Vec::with_capacity(curve.pairs.len());
    for pair in &curve.pairs {
        let a = port_index(curve, pair.ends.0);
        let b = port_index(curve, pair.ends.1);
        let take = rem[a].min(rem[b]);
        rem[a] -= take;
        rem[b] -= take;
        counts.push(take);
    }
    counts
}

/// Depth-first search over pair counts in priority order, largest counts
/// first so the greedy resolution is revisited first when it exists.
fn search_counts(curve: &BranchCurve, caps: &[u64]) -> Option<Vec<u64>> {
    fn rec(curve: &BranchCurve, rem: &mut Vec<u64>, counts: &mut Vec<u64>, k: usize) -> bool {
        if k == curve.pairs.len() {
            return rem.iter().all(|r| *r == 0);
        }
        let a = port_index(curve, curve.pairs[k].ends.0);
        let b = port_index(curve, curve.pairs[k].ends.1);
        let max = rem[a].min(rem[b]);
        for take in (0..=max).rev() {
            rem[a] -= take;
            rem[b] -= take;
            counts.push(take);
            if rec(curve, rem, counts, k + 1) {
                return true;
            }
            counts.pop();
            rem[a] += take;
            rem[b] += take;
        }
        false
    }
    let mut rem = caps.to_vec();
    let mut counts = Vec::new();
    if rec(curve, &mut rem, &mut counts, 0) { Some(counts) } else { None }
}

/// Tries to resolve one curve under the measure. Returns the priority-greedy
/// resolution when it is exact, otherwise any exact resolution flagged as
/// non-greedy, otherwise None.
pub fn branch_feasible(bs: &BranchedSurface, curve: CurveId, w: &InvariantMeasure) -> Option<CurveResolution> {
    let c = bs.curve(curve);
    let caps = capacities(bs, c, w);
    let counts = greedy_counts(c, &caps);
    if is_exact(c, &caps, &counts) {
        return Some(CurveResolution { counts, greedy: true });
    }
    search_counts(c, &caps).map(|counts| CurveResolution { counts, greedy: false })
}

pub fn is_invariant_measure(bs: &BranchedSurface, w: &InvariantMeasure) -> bool {
    bs.curves().iter().all(|c| branch_feasible(bs, c.id, w).is_some())
}

/// First infeasible curve under the measure, if any.
pub fn first_infeasible_curve(bs: &BranchedSurface, w: &InvariantMeasure) -> Option<CurveId> {
    bs.curves().iter().find(|c| branch_feasible(bs, c.id, w).is_none()).map(|c| c.id)
}

/// The Euler characteristic as a linear functional on measures.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EulerFunctional {
    pub coefficients: Vec<i64>,
}

impl EulerFunctional {
    pub fn evaluate(&self, w: &InvariantMeasure) -> i64 {
        self.coefficients.iter().zip(w.weights()).map(|(c, w)| c * *w as i64).sum()
    }
}

pub fn euler_functional(bs: &BranchedSurface) -> EulerFunctional {
    EulerFunctional { coefficients: bs.sections().iter().map(|s| s.euler_char()).collect() }
}

/// All invariant measures with every weight <= bound that satisfy the fixed
/// weights in `constraints`, in lexicographic order of the weight vector
/// (sections in declaration order).
///
/// The search assigns weights section by section and prunes through any
/// curve whose incident sections are all assigned; agreement with plain
/// brute force is property-tested.
pub fn enumerate_measures(
    bs: &BranchedSurface,
    bound: u64,
    constraints: &[(SectionId, u64)],
) -> Vec<InvariantMeasure> {
    let n = bs.sections().len();
    let fixed: BTreeMap<usize, u64> = constraints.iter().map(|(s, v)| (s.0, *v)).collect();

    // For each section index, curves that become fully assigned there.
    let mut ready: Vec<Vec<CurveId>> = vec![Vec::new(); n + 1];
    for c in bs.curves() {
        let last = c.incident.iter().map(|p| bs.port(*p).owner.0).max();
        if let Some(last) = last {
            ready[last + 1].push(c.id);
        }
    }

    fn curve_ok(bs: &BranchedSurface, curve: CurveId, prefix: &[u64]) -> bool {
        let c = bs.curve(curve);
        let caps: Vec<u64> = c.incident.iter().map(|p| prefix[bs.port(*p).owner.0]).collect();
        let counts = greedy_counts(c, &caps);
        is_exact(c, &caps, &counts) || search_counts(c, &caps).is_some()
    }

    let mut out = Vec::new();
    let mut prefix: Vec<u64> = Vec::with_capacity(n);
    fn rec(
        bs: &BranchedSurface,
        bound: u64,
        fixed: &BTreeMap<usize, u64>,
        ready: &[Vec<CurveId>],
        prefix: &mut Vec<u64>,
        out: &mut Vec<InvariantMeasure>,
    ) {
        let k = prefix.len();
        if k == bs.sections().len() {
            out.push(InvariantMeasure::from_weights(prefix.clone()));
            return;
        }
        let range: Vec<u64> = match fixed.get(&k) {
            Some(v) if *v <= bound => vec![*v],
            Some(_) => vec![],
            None => (0..=bound).collect(),
        };
        for v in range {
            prefix.push(v);
            if ready[k + 1].iter().all(|c| curve_ok(bs, *c, prefix)) {
                rec(bs, bound, fixed, ready, prefix, out);
            }
            prefix.pop();
        }
    }
    rec(bs, bound, &fixed, &ready, &mut prefix, &mut out);
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ZeroReason {
    /// The section was in the seed set.
    Seed,
    /// Every allowed pair covering `port` at `curve` pairs it with a port
    /// whose owner is already forced to zero.
    Forced { curve: CurveId, port: PortId },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZeroStep {
    pub section: SectionId,
    pub reason: ZeroReason,
}

/// Least fixpoint of zero forcing, with the derivation recorded in order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Propagation {
    pub seeds: Vec<SectionId>,
    pub steps: Vec<ZeroStep>,
    pub zeros: BTreeSet<SectionId>,
}

impl Propagation {
    pub fn forces_all(&self, bs: &BranchedSurface) -> bool {
        self.zeros.len() == bs.sections().len()
    }

    /// Certificate lines: ordered (section, curve, reason) triples.
    pub fn render(&self, bs: &BranchedSurface) -> String {
        let mut s = String::new();
        for step in &self.steps {
            let name = &bs.section(step.section).name;
            match &step.reason {
                ZeroReason::Seed => {
                    s.push_str(&format!("{name}\t-\tseed\n"));
                }
                ZeroReason::Forced { curve, port } => {
                    s.push_str(&format!(
                        "{name}\t{}\tevery pair covering {} has a zero partner\n",
                        bs.curve(*curve).name,
                        bs.port_full_name(*port)
                    ));
                }
            }
        }
        s
    }
}

/// Propagates forced zeros from the seed set: a section joins when, at some
/// curve, every allowed pair covering one of its ports has its opposite end
/// owned by a section already in the set. Sound for every invariant measure
/// because each pair count is bounded by both port capacities.
pub fn zero_set_propagation(bs: &BranchedSurface, seeds: &[SectionId]) -> Propagation {
    let mut zeros: BTreeSet<SectionId> = BTreeSet::new();
    let mut steps = Vec::new();
    for s in seeds {
        if zeros.insert(*s) {
            steps.push(ZeroStep { section: *s, reason: ZeroReason::Seed });
        }
    }
    loop {
        let mut advanced = false;
        for section in bs.sections() {
            if zeros.contains(&section.id) {
                continue;
            }
            'ports: for pid in &section.ports {
                let Some(cid) = bs.curve_of(*pid) else { continue };
                let curve = bs.curve(cid);
                let mut covered = false;
                for pair in &curve.pairs {
                    let other = if pair.ends.0 == *pid {
                        pair.ends.1
                    } else if pair.ends.1 == *pid {
                        pair.ends.0
                    } else {
                        continue;
                    };
                    covered = true;
                    if !zeros.contains(&bs.port(other).owner) {
                        continue 'ports;
                    }
                }
                if covered {
                    zeros.insert(section.id);
                    steps.push(ZeroStep { section: section.id, reason: ZeroReason::Forced { curve: cid, port: *pid } });
                    advanced = true;
                    break;
                }
            }
        }
        if !advanced {
            break;
        }
    }
    Propagation { seeds: seeds.to_vec(), steps, zeros }
}

/// Verdict on whether the branched surface carries a closed surface, i.e.
/// admits a nonzero invariant measure vanishing on every section that owns
/// a peripheral port.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedCarriage {
    pub carries: bool,
    pub evidence: ClosedEvidence,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClosedEvidence {
    /// Zero propagation from the peripheral sections forces every weight to
    /// zero; no closed surface exists at any bound.
    Propagation(Propagation),
    /// A nonzero closed measure.
    Witness(InvariantMeasure),
    /// Propagation was inconclusive and enumeration found no witness with
    /// weights up to the bound; carriage is refuted only up to that bound.
    ExhaustedBound(u64),
}

pub const DEFAULT_ENUMERATION_BOUND: u64 = 5;

pub fn carries_closed_surface(bs: &BranchedSurface, search_bound: u64) -> ClosedCarriage {
    let seeds = bs.peripheral_sections();
    let prop = zero_set_propagation(bs, &seeds);
    if prop.forces_all(bs) {
        return ClosedCarriage { carries: false, evidence: ClosedEvidence::Propagation(prop) };
    }
    let constraints: Vec<(SectionId, u64)> = seeds.iter().map(|s| (*s, 0)).collect();
    let witness = enumerate_measures(bs, search_bound, &constraints).into_iter().find(|m| !m.is_zero());
    match witness {
        Some(w) => ClosedCarriage { carries: true, evidence: ClosedEvidence::Witness(w) },
        None => ClosedCarriage { carries: false, evidence: ClosedEvidence::ExhaustedBound(search_bound) },
    }
}

/// True when every section has strictly positive weight.
pub fn positive_weights(w: &InvariantMeasure) -> bool {
    w.weights().iter().all(|x| *x > 0)
}

impl fmt::Display for ClosedCarriage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (&self.carries, &self.evidence) {
            (false, ClosedEvidence::Propagation(_)) => write!(f, "no closed surface (certified by zero propagation)"),
            (false, ClosedEvidence::ExhaustedBound(b)) => write!(f, "no closed surface with weights <= {b} (not certified beyond)"),
            (true, ClosedEvidence::Witness(_)) => write!(f, "carries a closed surface"),
            _ => write!(f, "inconsistent verdict"),
        }
    }
}
