//! Knot and tangle diagrams as 4-valent maps with a rotation system.
//!
//! Every crossing has four slots numbered counterclockwise; the strand
//! through slots 0 and 2 passes under the strand through slots 1 and 3.
//! Connections form a perfect matching on slot ends (plus up to four tangle
//! corners); a strand continues through a crossing from slot s to slot s+2.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Corner {
    NW,
    NE,
    SW,
    SE,
}

impl Corner {
    pub const ALL: [Corner; 4] = [Corner::NW, Corner::NE, Corner::SW, Corner::SE];

    pub fn label(&self) -> &'static str {
        match self {
            Corner::NW => "nw",
            Corner::NE => "ne",
            Corner::SW => "sw",
            Corner::SE => "se",
        }
    }

    pub fn from_label(s: &str) -> Option<Corner> {
        Corner::ALL.into_iter().find(|c| c.label() == s)
    }
}

impl fmt::Display for Corner {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum End {
    Slot { crossing: usize, slot: u8 },
    Corner(Corner),
}

impl End {
    pub fn slot(crossing: usize, slot: u8) -> End {
        End::Slot { crossing, slot }
    }
}

impl fmt::Display for End {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            End::Slot { crossing, slot } => write!(f, "c{crossing}.{slot}"),
            End::Corner(c) => write!(f, "{}", c.label()),
        }
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum DiagramError {
    #[error("end {0} used more than once")]
    EndReused(String),
    #[error("end {0} is not connected")]
    EndMissing(String),
    #[error("end {0} out of range for {1} crossings")]
    EndOutOfRange(String, usize),
    #[error("an end cannot connect to itself")]
    SelfConnection,
    #[error("diagram has corners; operation requires a closed diagram")]
    HasCorners,
    #[error("diagram has {0} closed components, expected exactly 1")]
    MultiComponent(usize),
    #[error("diagram incidence structure is not planar (V - E + F = {0}, expected 2)")]
    NotPlanar(i64),
}

/// A 4-valent diagram. `conn` is a symmetric involution on the used ends.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagram {
    crossings: usize,
    conn: BTreeMap<End, End>,
    corners: BTreeSet<Corner>,
}

impl Diagram {
    /// Builds and fully validates a diagram: every slot of every crossing is
    /// connected exactly once, listed corners exactly once.
    pub fn new(crossings: usize, edges: &[(End, End)], corners: &[Corner]) -> Result<Diagram, DiagramError> {
        let corner_set: BTreeSet<Corner> = corners.iter().copied().collect();
        let mut conn = BTreeMap::new();
        let check = |e: &End| -> Result<(), DiagramError> {
            match e {
                End::Slot { crossing, slot } => {
                    if *crossing >= crossings || *slot > 3 {
                        return Err(DiagramError::EndOutOfRange(e.to_string(), crossings));
                    }
                }
                End::Corner(c) => {
                    if !corner_set.contains(c) {
                        return Err(DiagramError::EndOutOfRange(e.to_string(), crossings));
                    }
                }
            }
            Ok(())
        };
        for (a, b) in edges {
            check(a)?;
            check(b)?;
            if a == b {
                return Err(DiagramError::SelfConnection);
            }
            if conn.insert(*a, *b).is_some() {
                return Err(DiagramError::EndReused(a.to_string()));
            }
            if conn.insert(*b, *a).is_some() {
                return Err(DiagramError::EndReused(b.to_string()));
            }
        }
        for c in 0..crossings {
            for s in 0..4u8 {
                let e = End::slot(c, s);
                if !conn.contains_key(&e) {
                    return Err(DiagramError::EndMissing(e.to_string()));
                }
            }
        }
        for c in &corner_set {
            if !conn.contains_key(&End::Corner(*c)) {
                return Err(DiagramError::EndMissing(c.label().to_string()));
            }
        }
        Ok(Diagram { crossings, conn, corners: corner_set })
    }

    pub fn crossings(&self) -> usize {
        self.crossings
    }

    pub fn corners(&self) -> &BTreeSet<Corner> {
        &self.corners
    }

    pub fn other_end(&self, e: End) -> End {
        self.conn[&e]
    }

    pub fn edges(&self) -> Vec<(End, End)> {
        self.conn.iter().filter(|(a, b)| *a < b).map(|(a, b)| (*a, *b)).collect()
    }

    /// The slot a strand exits after entering the crossing at `slot`.
    pub fn continuation(slot: u8) -> u8 {
        (slot + 2) % 4
    }

    /// Follows the strand starting by leaving `from`; returns the ordered
    /// ends visited (alternating connection and crossing continuation) until
    /// returning to `from` or reaching a corner.
    pub fn trace(&self, from: End) -> Vec<End> {
        let mut path = vec![from];
        let mut at = from;
        loop {
            let next = self.other_end(at);
            path.push(next);
            match next {
                End::Corner(_) => return path,
                End::Slot { crossing, slot } => {
                    let cont = End::slot(crossing, Diagram::continuation(slot));
                    if cont == from {
                        return path;
                    }
                    path.push(cont);
                    at = cont;
                }
            }
        }
    }

    /// Number of closed strand components (corner-to-corner strands are not
    /// counted; they are open).
    pub fn closed_components(&self) -> usize {
        let mut seen: BTreeSet<End> = BTreeSet::new();
        // Mark ends on open strands first.
        for c in &self.corners {
            for e in self.trace(End::Corner(*c)) {
                seen.insert(e);
            }
        }
        let mut count = 0;
        for c in 0..self.crossings {
            for s in 0..4u8 {
                let e = End::slot(c, s);
                if seen.contains(&e) {
                    continue;
                }
                count += 1;
                for v in self.trace(e) {
                    seen.insert(v);
                    if let End::Slot { crossing, slot } = v {
                        seen.insert(End::slot(crossing, Diagram::continuation(slot)));
                    }
                }
            }
        }
        count
    }

    /// Counts faces of the embedding given by the counterclockwise slot
    /// order. Only defined for closed diagrams.
    pub fn face_count(&self) -> Result<usize, DiagramError> {
        if !self.corners.is_empty() {
            return Err(DiagramError::HasCorners);
        }
        if self.crossings == 0 {
            return Ok(0);
        }
        // Darts: (tail end) for each direction of each edge. The face walk
        // leaves `tail`, arrives at head = conn[tail], and turns to the next
        // slot counterclockwise around the head crossing.
        let mut seen: BTreeSet<End> = BTreeSet::new();
        let mut faces = 0;
        for c in 0..self.crossings {
            for s in 0..4u8 {
                let start = End::slot(c, s);
                if seen.contains(&start) {
                    continue;
                }
                faces += 1;
                let mut tail = start;
                loop {
                    seen.insert(tail);
                    let head = self.other_end(tail);
                    let End::Slot { crossing, slot } = head else { unreachable!("closed diagram") };
                    tail = End::slot(crossing, (slot + 1) % 4);
                    if tail == start {
                        break;
                    }
                }
            }
        }
        Ok(faces)
    }

    /// Checks V - E + F = 2 for a closed connected diagram.
    pub fn check_planar(&self) -> Result<(), DiagramError> {
        if self.crossings == 0 {
            return Ok(());
        }
        let v = self.crossings as i64;
        let e = 2 * self.crossings as i64;
        let f = self.face_count()? as i64;
        if v - e + f != 2 {
            return Err(DiagramError::NotPlanar(v - e + f));
        }
        Ok(())
    }

    /// The mirror image: every crossing's over and under strands swap, which
    /// is a cyclic slot relabeling (s -> s+1) preserving the rotation system.
    pub fn mirror(&self) -> Diagram {
        let relabel = |e: End| match e {
            End::Slot { crossing, slot } => End::slot(crossing, (slot + 1) % 4),
            corner => corner,
        };
        Diagram {
            crossings: self.crossings,
            conn: self.conn.iter().map(|(a, b)| (relabel(*a), relabel(*b))).collect(),
            corners: self.corners.clone(),
        }
    }

    /// Inserts a single-crossing kink into the edge at `edge_end`, replacing
    /// the connection (x, y) by a loop through a new crossing. `sign` > 0 and
    /// < 0 give the two kink handednesses.
    pub fn reidemeister_one(&self, edge_end: End, sign: i8) -> Diagram {
        let x = edge_end;
        let y = self.other_end(x);
        let k = self.crossings;
        let mut conn = self.conn.clone();
        conn.remove(&x);
        conn.remove(&y);
        let mut link = |a: End, b: End| {
            conn.insert(a, b);
            conn.insert(b, a);
        };
        // Strand runs x -> slot 0, under to slot 2, loops to an over slot,
        // and leaves by the remaining over slot towards y.
        if sign > 0 {
            link(x, End::slot(k, 0));
            link(End::slot(k, 2), End::slot(k, 3));
            link(End::slot(k, 1), y);
        } else {
            link(x, End::slot(k, 0));
            link(End::slot(k, 2), End::slot(k, 1));
            link(End::slot(k, 3), y);
        }
        Diagram { crossings: k + 1, conn, corners: self.corners.clone() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Closed one-crossing kink: slots 0-2 joined to 1-3 through the loop.
    fn kink() -> Diagram {
        Diagram::new(
            1,
            &[
                (End::slot(0, 0), End::slot(0, 3)),
                (End::slot(0, 2), End::slot(0, 1)),
            ],
            &[],
        )
        .unwrap()
    }

    #[test]
    fn construction_validates_matching() {
        assert!(matches!(
            Diagram::new(1, &[(End::slot(0, 0), End::slot(0, 1))], &[]),
            Err(DiagramError::EndMissing(_))
        ));
        assert!(matches!(
            Diagram::new(
                1,
                &[
                    (End::slot(0, 0), End::slot(0, 1)),
                    (End::slot(0, 0), End::slot(0, 2)),
                    (End::slot(0, 2), End::slot(0, 3)),
                ],
                &[]
            ),
            Err(DiagramError::EndReused(_))
        ));
        assert!(matches!(
            Diagram::new(0, &[(End::slot(0, 0), End::slot(0, 2))], &[]),
            Err(DiagramError::EndOutOfRange(..))
        ));
        assert!(matches!(
            Diagram::new(0, &[(End::Corner(Corner::NW), End::Corner(Corner::NW))], &[Corner::NW]),
            Err(DiagramError::SelfConnection)
        ));
    }

    #[test]
    fn kink_is_one_planar_component() {
        let d = kink();
        assert_eq!(d.closed_components(), 1);
        assert_eq!(d.face_count().unwrap(), 3);
        d.check_planar().unwrap();
    }

    #[test]
    fn two_component_hopf_diagram_is_detected() {
        // Two overlapping circles (Hopf link): 2 crossings, 2 components,
        // 4 faces, planar.
        let d = Diagram::new(
            2,
            &[
                (End::slot(0, 0), End::slot(1, 3)),
                (End::slot(0, 1), End::slot(1, 2)),
                (End::slot(0, 2), End::slot(1, 1)),
                (End::slot(0, 3), End::slot(1, 0)),
            ],
            &[],
        )
        .unwrap();
        assert_eq!(d.closed_components(), 2);
        assert_eq!(d.face_count().unwrap(), 4);
        d.check_planar().unwrap();
    }

    #[test]
    fn mirror_preserves_structure_and_swaps_strands() {
        let d = kink();
        let m = d.mirror();
        assert_eq!(m.closed_components(), 1);
        m.check_planar().unwrap();
        assert_ne!(m, d);
        assert_eq!(m.mirror().mirror(), m);
    }

    #[test]
    fn reidemeister_one_adds_a_planar_crossing() {
        let d = kink();
        let edge = End::slot(0, 0);
        for sign in [1i8, -1] {
            let k = d.reidemeister_one(edge, sign);
            assert_eq!(k.crossings(), 2);
            assert_eq!(k.closed_components(), 1);
            k.check_planar().unwrap();
        }
    }

    #[test]
    fn open_strands_reach_corners() {
        // One crossing with all four slots wired to the corners.
        let d = Diagram::new(
            1,
            &[
                (End::Corner(Corner::NW), End::slot(0, 0)),
                (End::Corner(Corner::NE), End::slot(0, 1)),
                (End::Corner(Corner::SW), End::slot(0, 2)),
                (End::Corner(Corner::SE), End::slot(0, 3)),
            ],
            &[Corner::NW, Corner::NE, Corner::SW, Corner::SE],
        )
        .unwrap();
        assert_eq!(d.closed_components(), 0);
        let path = d.trace(End::Corner(Corner::NW));
        assert_eq!(*path.last().unwrap(), End::Corner(Corner::SW));
    }
}
