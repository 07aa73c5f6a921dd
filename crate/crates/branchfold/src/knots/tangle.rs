//! Two-string tangles and the square-double construction.
//!
//! A tangle is a diagram with the four corners NW, NE, SW, SE all present.
//! Closing two tangles glues corner to corner with a horizontal reflection:
//! NW to the other side's NE, NE to NW, SW to SE, SE to SW. Summing places
//! the second tangle to the right: NE to its NW and SE to its SW.

use std::collections::{BTreeMap, BTreeSet};

use super::diagram::{Corner, Diagram, DiagramError, End};
use super::pd::{from_diagram, to_diagram, PdCode, PdError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TangleDiagram {
    diagram: Diagram,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum TangleError {
    #[error("closure has {0} components, expected a knot")]
    MultiComponent(usize),
    #[error("sum would trap {0} crossingless closed loop(s)")]
    ClosedLoopInSum(usize),
    #[error("pattern insertion expects the two-parallel-strand tangle")]
    PatternShape,
    #[error("pattern code traces {0} components, expected 1")]
    PatternComponents(usize),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Pd(#[from] PdError),
    #[error("diagram error: {0}")]
    Diagram(#[from] DiagramError),
}

impl TangleDiagram {
    /// Wraps a diagram that uses all four corners.
    pub fn new(crossings: usize, edges: &[(End, End)]) -> Result<TangleDiagram, DiagramError> {
        let diagram = Diagram::new(crossings, edges, &Corner::ALL)?;
        Ok(TangleDiagram { diagram })
    }

    pub fn diagram(&self) -> &Diagram {
        &self.diagram
    }

    pub fn crossings(&self) -> usize {
        self.diagram.crossings()
    }

    /// The corner reached by following the strand that starts at `from`.
    pub fn strand_partner(&self, from: Corner) -> Corner {
        let path = self.diagram.trace(End::Corner(from));
        match path.last() {
            Some(End::Corner(c)) => *c,
            _ => unreachable!("validated tangle strands end at corners"),
        }
    }
}

/// Horizontal twist region: |n| crossings chained left to right, two
/// parallel strands when n = 0. Positive n puts the strand entering at SW
/// on top; negative n mirrors that.
pub fn rational_tangle(n: i64) -> TangleDiagram {
    if n == 0 {
        let edges = vec![
            (End::Corner(Corner::NW), End::Corner(Corner::NE)),
            (End::Corner(Corner::SW), End::Corner(Corner::SE)),
        ];
        return TangleDiagram::new(0, &edges).expect("two-strand tangle is consistent");
    }
    let m = n.unsigned_abs() as usize;
    // Slot of each diagonal leg, counterclockwise; the under strand runs
    // through slots 0-2.
    let (nw, sw, se, ne) = if n > 0 { (0u8, 1, 2, 3) } else { (1, 2, 3, 0) };
    let mut edges = vec![
        (End::Corner(Corner::NW), End::slot(0, nw)),
        (End::Corner(Corner::SW), End::slot(0, sw)),
        (End::slot(m - 1, ne), End::Corner(Corner::NE)),
        (End::slot(m - 1, se), End::Corner(Corner::SE)),
    ];
    for i in 0..m - 1 {
        edges.push((End::slot(i, ne), End::slot(i + 1, nw)));
        edges.push((End::slot(i, se), End::slot(i + 1, sw)));
    }
    TangleDiagram::new(m, &edges).expect("twist region is consistent")
}

/// The shipped square tangle: closing it with `rational_tangle(0)` yields
/// the square knot. See `data/square_tangle.tangle`.
pub fn square_tangle() -> TangleDiagram {
    parse_tangle(include_str!("../../data/square_tangle.tangle")).expect("shipped tangle data is valid")
}

fn parse_end(token: &str, line: usize) -> Result<End, TangleError> {
    if let Some(c) = Corner::from_label(token) {
        return Ok(End::Corner(c));
    }
    let bad = |msg: String| TangleError::Parse { line, msg };
    let rest = token
        .strip_prefix('c')
        .ok_or_else(|| bad(format!("expected corner or cI.S endpoint, got {token:?}")))?;
    let (ci, si) = rest
        .split_once('.')
        .ok_or_else(|| bad(format!("expected cI.S endpoint, got {token:?}")))?;
    let crossing: usize = ci.parse().map_err(|e| bad(format!("crossing index {ci:?}: {e}")))?;
    let slot: u8 = si.parse().map_err(|e| bad(format!("slot {si:?}: {e}")))?;
    Ok(End::slot(crossing, slot))
}

/// Parses the tangle text format: a `crossings N` line, then `edge A B`
/// lines where an endpoint is `cI.S` (crossing I, slot S) or a corner name
/// nw/ne/sw/se. `#` starts a comment.
pub fn parse_tangle(text: &str) -> Result<TangleDiagram, TangleError> {
    let mut crossings: Option<usize> = None;
    let mut edges = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let lineno = lineno + 1;
        let bad = |msg: String| TangleError::Parse { line: lineno, msg };
        let mut words = line.split_whitespace();
        match words.next() {
            Some("crossings") => {
                let n = words.next().ok_or_else(|| bad("missing crossing count".into()))?;
                if crossings.is_some() {
                    return Err(bad("duplicate crossings line".into()));
                }
                crossings = Some(n.parse().map_err(|e| bad(format!("crossing count {n:?}: {e}")))?);
            }
            Some("edge") => {
                let a = words.next().ok_or_else(|| bad("edge needs two endpoints".into()))?;
                let b = words.next().ok_or_else(|| bad("edge needs two endpoints".into()))?;
                edges.push((parse_end(a, lineno)?, parse_end(b, lineno)?));
            }
            Some(other) => return Err(bad(format!("unknown directive {other:?}"))),
            None => unreachable!("blank lines are skipped"),
        }
        if let Some(extra) = words.next() {
            return Err(bad(format!("trailing token {extra:?}")));
        }
    }
    let crossings = crossings.ok_or(TangleError::Parse { line: 0, msg: "missing crossings line".into() })?;
    Ok(TangleDiagram::new(crossings, &edges)?)
}

pub fn serialize_tangle(t: &TangleDiagram) -> String {
    let mut out = format!("crossings {}\n", t.crossings());
    for (a, b) in t.diagram.edges() {
        out.push_str(&format!("edge {a} {b}\n"));
    }
    out
}

/// One endpoint of the two glued tangles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Node {
    A(End),
    B(End),
}

/// Glues the corner pairs in `joins` (left corner to right corner), splicing
/// away the glued corners. Returns the merged edge list (right-side
/// crossings offset), the total crossing count, and the number of
/// crossingless loops trapped entirely inside glued corner chains.
fn splice(
    a: &Diagram,
    b: &Diagram,
    joins: &[(Corner, Corner)],
    keep_a: &[Corner],
    keep_b: &[Corner],
) -> (Vec<(End, End)>, usize, usize) {
    let offset = a.crossings();
    let mut adj: BTreeMap<Node, Vec<Node>> = BTreeMap::new();
    let mut connect = |x: Node, y: Node| {
        adj.entry(x).or_default().push(y);
        adj.entry(y).or_default().push(x);
    };
    for (x, y) in a.edges() {
        connect(Node::A(x), Node::A(y));
    }
    for (x, y) in b.edges() {
        connect(Node::B(x), Node::B(y));
    }
    let mut dropped: BTreeSet<Node> = BTreeSet::new();
    for (ca, cb) in joins {
        connect(Node::A(End::Corner(*ca)), Node::B(End::Corner(*cb)));
        dropped.insert(Node::A(End::Corner(*ca)));
        dropped.insert(Node::B(End::Corner(*cb)));
    }
    debug_assert!(keep_a.iter().all(|c| !dropped.contains(&Node::A(End::Corner(*c)))));
    debug_assert!(keep_b.iter().all(|c| !dropped.contains(&Node::B(End::Corner(*c)))));

    let to_end = |n: &Node| -> End {
        match n {
            Node::A(e) => *e,
            Node::B(End::Slot { crossing, slot }) => End::slot(crossing + offset, *slot),
            Node::B(e) => *e,
        }
    };

    let mut visited: BTreeSet<Node> = BTreeSet::new();
    let mut edges = Vec::new();
    let nodes: Vec<Node> = adj.keys().copied().collect();
    for start in &nodes {
        if dropped.contains(start) || visited.contains(start) {
            continue;
        }
        visited.insert(*start);
        let mut prev = *start;
        let mut cur = adj[start][0];
        loop {
            visited.insert(cur);
            if !dropped.contains(&cur) {
                edges.push((to_end(start), to_end(&cur)));
                break;
            }
            let nbrs = &adj[&cur];
            let next = if nbrs[0] == prev { nbrs[1] } else { nbrs[0] };
            prev = cur;
            cur = next;
        }
    }
    // Remaining unvisited nodes are glued corners forming pure cycles: each
    // cycle is a closed strand with no crossings.
    let mut loops = 0;
    for start in &nodes {
        if visited.contains(start) {
            continue;
        }
        loops += 1;
        let mut stack = vec![*start];
        while let Some(n) = stack.pop() {
            if !visited.insert(n) {
                continue;
            }
            stack.extend(adj[&n].iter().copied());
        }
    }
    (edges, a.crossings() + b.crossings(), loops)
}

/// Joins two tangles side by side: the left tangle's NE and SE corners glue
/// to the right tangle's NW and SW. The result keeps NW/SW from the left
/// and NE/SE from the right.
pub fn tangle_sum(a: &TangleDiagram, b: &TangleDiagram) -> Result<TangleDiagram, TangleError> {
    let (edges, crossings, loops) = splice(
        &a.diagram,
        &b.diagram,
        &[(Corner::NE, Corner::NW), (Corner::SE, Corner::SW)],
        &[Corner::NW, Corner::SW],
        &[Corner::NE, Corner::SE],
    );
    if loops > 0 {
        return Err(TangleError::ClosedLoopInSum(loops));
    }
    Ok(TangleDiagram::new(crossings, &edges)?)
}

/// Closes two tangles into a knot diagram by gluing every corner of the
/// first to the reflected corner of the second: NW-NE', NE-NW', SW-SE',
/// SE-SW'. Errors when the closed curve has more than one component.
pub fn tangle_close(a: &TangleDiagram, b: &TangleDiagram) -> Result<PdCode, TangleError> {
    let (edges, crossings, loops) = splice(
        &a.diagram,
        &b.diagram,
        &[
            (Corner::NW, Corner::NE),
            (Corner::NE, Corner::NW),
            (Corner::SW, Corner::SE),
            (Corner::SE, Corner::SW),
        ],
        &[],
        &[],
    );
    if crossings == 0 {
        return if loops == 1 { Ok(PdCode::empty()) } else { Err(TangleError::MultiComponent(loops)) };
    }
    let d = Diagram::new(crossings, &edges, &[])?;
    let total = d.closed_components() + loops;
    if total != 1 {
        return Err(TangleError::MultiComponent(total));
    }
    Ok(from_diagram(&d)?)
}

/// Sub-crossing layout for one cabled crossing: the under strand's two
/// cables run south to north at the four intersection points
/// A (southwest), B (southeast), C (northwest), D (northeast). Every
/// sub-crossing keeps the vertical strand under, with slots
/// counterclockwise S=0, E=1, N=2, W=3.
fn cable_stub(crossing: usize, slot: u8, side: u8) -> End {
    let (sub, sub_slot) = match (slot, side) {
        (0, 3) => (0, 0), // A.S
        (0, 1) => (1, 0), // B.S
        (1, 0) => (1, 1), // B.E
        (1, 2) => (3, 1), // D.E
        (2, 1) => (3, 2), // D.N
        (2, 3) => (2, 2), // C.N
        (3, 0) => (0, 3), // A.W
        (3, 2) => (2, 3), // C.W
        _ => unreachable!("side is adjacent to slot"),
    };
    End::slot(4 * crossing + sub, sub_slot)
}

/// Replaces the two parallel strands of `t` by the 2-cable of the knot
/// code `pd_j`, opened along its last edge, with `twists` crossings
/// between the parallel strands appended on the right. The cable framing
/// is the diagram's blackboard framing; `PdCode::writhe` measures it.
pub fn pattern_substitute(
    t: &TangleDiagram,
    pd_j: &PdCode,
    twists: i64,
) -> Result<TangleDiagram, TangleError> {
    if t.crossings() != 0
        || t.strand_partner(Corner::NW) != Corner::NE
        || t.strand_partner(Corner::SW) != Corner::SE
    {
        return Err(TangleError::PatternShape);
    }
    pd_j.validate()?;
    if pd_j.crossing_count() == 0 {
        return Ok(rational_tangle(twists));
    }
    let comps = to_diagram(pd_j)?.closed_components();
    if comps != 1 {
        return Err(TangleError::PatternComponents(comps));
    }

    let c = pd_j.crossing_count();
    let mut edges = Vec::new();
    for i in 0..c {
        // Internal wiring of one cabled crossing.
        edges.push((End::slot(4 * i, 2), End::slot(4 * i + 2, 0))); // A.N-C.S
        edges.push((End::slot(4 * i + 1, 2), End::slot(4 * i + 3, 0))); // B.N-D.S
        edges.push((End::slot(4 * i, 1), End::slot(4 * i + 1, 3))); // A.E-B.W
        edges.push((End::slot(4 * i + 2, 1), End::slot(4 * i + 3, 3))); // C.E-D.W
    }
    let cut = 2 * c as u64;
    for label in 1..cut {
        // Doubling keeps each cable on its own side of the strand: the
        // side facing the next slot counterclockwise at the tail faces the
        // previous slot at the head, because travel reverses orientation.
        let ((xi, xs), (yi, ys)) = pd_j.edge_ends(label);
        edges.push((cable_stub(xi, xs, (xs + 1) % 4), cable_stub(yi, ys, (ys + 3) % 4)));
        edges.push((cable_stub(xi, xs, (xs + 3) % 4), cable_stub(yi, ys, (ys + 1) % 4)));
    }
    // The cut edge's cables become the tangle's open strands.
    let ((xi, xs), (yi, ys)) = pd_j.edge_ends(cut);
    edges.push((End::Corner(Corner::NE), cable_stub(xi, xs, (xs + 1) % 4)));
    edges.push((End::Corner(Corner::SE), cable_stub(xi, xs, (xs + 3) % 4)));
    edges.push((End::Corner(Corner::NW), cable_stub(yi, ys, (ys + 3) % 4)));
    edges.push((End::Corner(Corner::SW), cable_stub(yi, ys, (ys + 1) % 4)));

    let cable = TangleDiagram::new(4 * c, &edges)?;
    if twists == 0 {
        return Ok(cable);
    }
    tangle_sum(&cable, &rational_tangle(twists))
}

/// The square double of the pattern knot: the square tangle closed with
/// the twisted 2-cable tangle.
pub fn square_double(twists: i64, pd_j: &PdCode) -> Result<PdCode, TangleError> {
    let doubled = pattern_substitute(&rational_tangle(0), pd_j, twists)?;
    tangle_close(&square_tangle(), &doubled)
}

/// Combinatorial record of the ribbon disk every square double bounds:
/// three disk pieces joined along two arcs, meeting the knot's disk in two
/// ribbon singularities.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RibbonRecord {
    pub twists: i64,
    pub pattern_crossings: usize,
    pub disk_pieces: usize,
    pub joining_arcs: usize,
    pub singularity_count: usize,
}

pub fn ribbon_record(twists: i64, pd_j: &PdCode) -> RibbonRecord {
    RibbonRecord {
        twists,
        pattern_crossings: pd_j.crossing_count(),
        disk_pieces: 3,
        joining_arcs: 2,
        singularity_count: 2,
    }
}
