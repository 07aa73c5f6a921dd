//! Planar-diagram codes for knots.
//!
//! A code lists one 4-tuple per crossing, counterclockwise from the incoming
//! under-strand edge; edge labels run 1..=2c consecutively along the knot.
//! Tuple positions therefore correspond to diagram slots: position 0 is the
//! incoming under edge, position 2 the outgoing under edge.

use std::collections::BTreeMap;
use std::fmt;

use super::diagram::{Diagram, DiagramError, End};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PdCode {
    pub crossings: Vec<[u64; 4]>,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum PdError {
    #[error("line {line}: expected four edge labels, got {got}")]
    BadLine { line: usize, got: usize },
    #[error("line {line}: {msg}")]
    BadNumber { line: usize, msg: String },
    #[error("edge label {0} out of range 1..={1}")]
    LabelOutOfRange(u64, u64),
    #[error("edge label {0} appears {1} times, expected 2")]
    LabelCount(u64, usize),
    #[error("crossing {0}: under-strand labels {1} -> {2} are not consecutive")]
    UnderNotConsecutive(usize, u64, u64),
    #[error("crossing {0}: over-strand labels are not consecutive in either direction")]
    OverNotConsecutive(usize),
    #[error("diagram error: {0}")]
    Diagram(#[from] DiagramError),
}

impl PdCode {
    pub fn empty() -> PdCode {
        PdCode { crossings: Vec::new() }
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    fn edge_count(&self) -> u64 {
        2 * self.crossings.len() as u64
    }

    /// Successor of an edge label along the knot.
    fn next(&self, e: u64) -> u64 {
        e % self.edge_count() + 1
    }

    /// Checks label multiplicity and the under/over consecutiveness rules
    /// that make the code trace a single knot component.
    pub fn validate(&self) -> Result<(), PdError> {
        if self.crossings.is_empty() {
            return Ok(());
        }
        let n = self.edge_count();
        let mut counts: BTreeMap<u64, usize> = BTreeMap::new();
        for t in &self.crossings {
            for e in t {
                if *e < 1 || *e > n {
                    return Err(PdError::LabelOutOfRange(*e, n));
                }
                *counts.entry(*e).or_insert(0) += 1;
            }
        }
        for e in 1..=n {
            let c = counts.get(&e).copied().unwrap_or(0);
            if c != 2 {
                return Err(PdError::LabelCount(e, c));
            }
        }
        for (i, t) in self.crossings.iter().enumerate() {
            let [a, b, c, d] = *t;
            if self.next(a) != c {
                return Err(PdError::UnderNotConsecutive(i, a, c));
            }
            if self.next(b) != d && self.next(d) != b {
                return Err(PdError::OverNotConsecutive(i));
            }
        }
        Ok(())
    }

    /// Crossing sign: +1 when the over strand runs from position 3 to 1,
    /// -1 when it runs from 1 to 3. On a two-edge diagram both label tests
    /// hold, and the sign is fixed by whether position 3 repeats the
    /// outgoing under edge.
    pub fn sign(&self, i: usize) -> i8 {
        let [_, b, c, d] = self.crossings[i];
        let pos = self.next(d) == b;
        let neg = self.next(b) == d;
        match (pos, neg) {
            (true, false) => 1,
            (false, true) => -1,
            _ => {
                if d == c {
                    1
                } else {
                    -1
                }
            }
        }
    }

    pub fn writhe(&self) -> i64 {
        (0..self.crossings.len()).map(|i| self.sign(i) as i64).sum()
    }

    /// The label's occurrences as (crossing, position), tail (outgoing)
    /// first. Positions: under-out is 2; over-out is 1 for positive
    /// crossings and 3 for negative ones.
    pub(crate) fn edge_ends(&self, label: u64) -> ((usize, u8), (usize, u8)) {
        let mut tail = None;
        let mut head = None;
        for (i, t) in self.crossings.iter().enumerate() {
            for (p, e) in t.iter().enumerate() {
                if *e != label {
                    continue;
                }
                let outgoing = match p {
                    0 => false,
                    2 => true,
                    1 => self.sign(i) > 0,
                    _ => self.sign(i) < 0,
                };
                if outgoing {
                    tail = Some((i, p as u8));
                } else {
                    head = Some((i, p as u8));
                }
            }
        }
        (tail.expect("validated code has a tail per label"), head.expect("validated code has a head per label"))
    }

    /// Number of circles after the oriented (Seifert) smoothing of every
    /// crossing. Requires a single-component knot code.
    pub fn seifert_circles(&self) -> usize {
        if self.crossings.is_empty() {
            return 1;
        }
        // Successor on labels: each label is incoming at exactly one
        // crossing, where the smoothing routes it to an outgoing label.
        let mut succ: BTreeMap<u64, u64> = BTreeMap::new();
        for (i, t) in self.crossings.iter().enumerate() {
            let [a, b, c, d] = *t;
            if self.sign(i) > 0 {
                succ.insert(a, b);
                succ.insert(d, c);
            } else {
                succ.insert(a, d);
                succ.insert(b, c);
            }
        }
        let mut seen = vec![false; self.edge_count() as usize + 1];
        let mut circles = 0;
        for e in 1..=self.edge_count() {
            if seen[e as usize] {
                continue;
            }
            circles += 1;
            let mut at = e;
            while !seen[at as usize] {
                seen[at as usize] = true;
                at = succ[&at];
            }
        }
        circles
    }
}

/// Genus bound from the Seifert algorithm: (crossings - circles + 1) / 2.
pub fn seifert_genus_upper(pd: &PdCode) -> Result<u64, PdError> {
    require_knot(pd)?;
    let c = pd.crossing_count() as i64;
    let s = pd.seifert_circles() as i64;
    Ok(((c - s + 1).max(0) / 2) as u64)
}

/// Builds the 4-valent diagram whose slots are the tuple positions. Works
/// for any label-valid code, including ones tracing several components.
pub fn to_diagram(pd: &PdCode) -> Result<Diagram, PdError> {
    pd.validate()?;
    let mut occurrences: BTreeMap<u64, Vec<End>> = BTreeMap::new();
    for (i, t) in pd.crossings.iter().enumerate() {
        for (p, e) in t.iter().enumerate() {
            occurrences.entry(*e).or_default().push(End::slot(i, p as u8));
        }
    }
    let edges: Vec<(End, End)> = occurrences.values().map(|ends| (ends[0], ends[1])).collect();
    Ok(Diagram::new(pd.crossings.len(), &edges, &[])?)
}

/// Number of closed curves the code traces.
pub fn component_count(pd: &PdCode) -> Result<usize, PdError> {
    if pd.crossings.is_empty() {
        return Ok(1);
    }
    Ok(to_diagram(pd)?.closed_components())
}

fn require_knot(pd: &PdCode) -> Result<(), PdError> {
    let comps = component_count(pd)?;
    if comps != 1 {
        return Err(PdError::Diagram(DiagramError::MultiComponent(comps)));
    }
    Ok(())
}

/// Extracts the code of a closed single-component diagram by tracing the
/// strand and labeling edges 1..=2c in travel order.
pub fn from_diagram(d: &Diagram) -> Result<PdCode, PdError> {
    if !d.corners().is_empty() {
        return Err(PdError::Diagram(DiagramError::HasCorners));
    }
    if d.crossings() == 0 {
        return Ok(PdCode::empty());
    }
    let comps = d.closed_components();
    if comps != 1 {
        return Err(PdError::Diagram(DiagramError::MultiComponent(comps)));
    }

    let mut slot_label: BTreeMap<End, u64> = BTreeMap::new();
    let mut incoming: BTreeMap<End, bool> = BTreeMap::new();
    let start = End::slot(0, 0);
    let mut at = start;
    let mut label = 0u64;
    loop {
        label += 1;
        let head = d.other_end(at);
        slot_label.insert(at, label);
        slot_label.insert(head, label);
        incoming.insert(at, false);
        incoming.insert(head, true);
        let End::Slot { crossing, slot } = head else { unreachable!("closed diagram") };
        at = End::slot(crossing, Diagram::continuation(slot));
        if at == start {
            break;
        }
    }

    let mut crossings = Vec::with_capacity(d.crossings());
    for c in 0..d.crossings() {
        let u = if incoming[&End::slot(c, 0)] { 0u8 } else { 2 };
        let tuple: Vec<u64> = (0..4).map(|k| slot_label[&End::slot(c, (u + k) % 4)]).collect();
        crossings.push([tuple[0], tuple[1], tuple[2], tuple[3]]);
    }
    let pd = PdCode { crossings };
    pd.validate()?;
    Ok(pd)
}

/// Mirror image: over and under strands swap at every crossing.
pub fn mirror(pd: &PdCode) -> Result<PdCode, PdError> {
    from_diagram(&to_diagram(pd)?.mirror())
}

/// Splices b into the cut last edge of a (band join of the two knots).
pub fn connected_sum(a: &PdCode, b: &PdCode) -> Result<PdCode, PdError> {
    require_knot(a)?;
    require_knot(b)?;
    if a.crossings.is_empty() {
        return Ok(b.clone());
    }
    if b.crossings.is_empty() {
        return Ok(a.clone());
    }
    let offset = a.crossings.len();
    let (a_tail, a_head) = a.edge_ends(a.edge_count());
    let (b_tail, b_head) = b.edge_ends(b.edge_count());

    let mut edges = Vec::new();
    for label in 1..a.edge_count() {
        let ((ci, pi), (cj, pj)) = a.edge_ends(label);
        edges.push((End::slot(ci, pi), End::slot(cj, pj)));
    }
    for label in 1..b.edge_count() {
        let ((ci, pi), (cj, pj)) = b.edge_ends(label);
        edges.push((End::slot(ci + offset, pi), End::slot(cj + offset, pj)));
    }
    // Route a's outflow through b and back.
    edges.push((End::slot(a_tail.0, a_tail.1), End::slot(b_head.0 + offset, b_head.1)));
    edges.push((End::slot(b_tail.0 + offset, b_tail.1), End::slot(a_head.0, a_head.1)));

    let mut crossings = a.crossings.clone();
    crossings.extend(b.crossings.iter().copied());
    let d = Diagram::new(crossings.len(), &edges, &[])?;
    from_diagram(&d)
}

/// Applies a Reidemeister-I kink to the edge with the given label.
pub fn with_kink(pd: &PdCode, label: u64, sign: i8) -> Result<PdCode, PdError> {
    require_knot(pd)?;
    let d = to_diagram(pd)?;
    let (tail, _) = pd.edge_ends(label);
    from_diagram(&d.reidemeister_one(End::slot(tail.0, tail.1), sign))
}

/// Parses one 4-tuple per line; `#` starts a comment; blank lines and an
/// empty file (the 0-crossing unknot) are allowed.
pub fn parse_pd(text: &str) -> Result<PdCode, PdError> {
    let mut crossings = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut nums = Vec::new();
        for part in line.split(|c: char| c.is_whitespace() || c == ',').filter(|s| !s.is_empty()) {
            let v: u64 = part
                .parse()
                .map_err(|e| PdError::BadNumber { line: lineno + 1, msg: format!("{part:?}: {e}") })?;
            nums.push(v);
        }
        if nums.len() != 4 {
            return Err(PdError::BadLine { line: lineno + 1, got: nums.len() });
        }
        crossings.push([nums[0], nums[1], nums[2], nums[3]]);
    }
    let pd = PdCode { crossings };
    pd.validate()?;
    Ok(pd)
}

pub fn format_pd(pd: &PdCode) -> String {
    let mut out = String::new();
    for t in &pd.crossings {
        out.push_str(&format!("{} {} {} {}\n", t[0], t[1], t[2], t[3]));
    }
    out
}

impl fmt::Display for PdCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_pd(self))
    }
}

/// 0-crossing unknot diagram.
pub fn unknot() -> PdCode {
    PdCode::empty()
}

/// Standard 3-crossing trefoil diagram.
pub fn trefoil() -> PdCode {
    parse_pd(include_str!("../../data/pd/trefoil.pd")).expect("shipped trefoil code is valid")
}

/// Standard 4-crossing figure-eight diagram.
pub fn figure_eight() -> PdCode {
    parse_pd(include_str!("../../data/pd/figure8.pd")).expect("shipped figure-eight code is valid")
}
