//! Reconstruction of the surface a measure carries, as a sheet complex,
//! and computation of its topological invariants.
//!
//! Each section contributes `weight` parallel sheets. A wiring chooses, for
//! every allowed pair at every branch curve, which sheet indices are glued;
//! the glued complex is an honest compact surface whose Euler characteristic,
//! boundary, components, orientability, and genus are computed here.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::branched::{BranchedSurface, CurveId, PortId, SectionId, Slope};
use crate::measures::{branch_feasible, CurveResolution, InvariantMeasure};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairResolution {
    /// Indexed by curve id; counts are in the curve's pair order.
    pub per_curve: Vec<CurveResolution>,
}

impl PairResolution {
    /// True when some curve needed the exhaustive fallback.
    pub fn any_non_greedy(&self) -> bool {
        self.per_curve.iter().any(|r| !r.greedy)
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum CarryError {
    #[error("measure admits no exact pairing resolution at curve {curve}")]
    Infeasible { curve: String },
    #[error("wiring shape does not match the surface (curve or pair lists differ)")]
    WiringShape,
    #[error("sheet index {index} out of range 1..={cap} at {port}")]
    SheetOutOfRange { port: String, index: u64, cap: u64 },
    #[error("sheet {index} of {port} consumed twice")]
    ConsumedTwice { port: String, index: u64 },
    #[error("sheet {index} of {port} never consumed")]
    Unconsumed { port: String, index: u64 },
    #[error("peripheral port {port} has non-longitudinal slope {slope}")]
    NonLongitudinal { port: String, slope: String },
}

/// Resolves every curve, preferring the priority-greedy resolution.
pub fn resolve(bs: &BranchedSurface, w: &InvariantMeasure) -> Result<PairResolution, CarryError> {
    let mut per_curve = Vec::with_capacity(bs.curves().len());
    for c in bs.curves() {
        match branch_feasible(bs, c.id, w) {
            Some(r) => per_curve.push(r),
            None => return Err(CarryError::Infeasible { curve: c.name.clone() }),
        }
    }
    Ok(PairResolution { per_curve })
}

/// Per-model wiring data: a cyclic shift per (curve, pair index).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct WiringOverrides {
    pub shifts: BTreeMap<(CurveId, usize), u64>,
}

/// Search freedom a model declares: pairs whose flip flag may be toggled.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct WiringFreedom {
    pub fold_pairs: Vec<(CurveId, usize)>,
}

/// Explicit sheet-level gluing data: for every curve and allowed pair, the
/// coupled sheet indices (1-based, per section) and the pair's flip flag.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Wiring {
    pub couples: Vec<Vec<Vec<(u64, u64)>>>,
    pub flips: Vec<Vec<bool>>,
}

impl Wiring {
    pub fn empty(bs: &BranchedSurface) -> Wiring {
        Wiring {
            couples: bs.curves().iter().map(|c| vec![Vec::new(); c.pairs.len()]).collect(),
            flips: bs.curves().iter().map(|c| c.pairs.iter().map(|p| p.flip).collect()).collect(),
        }
    }
}

/// Order-preserving wiring: within each pair, in priority order, couple the
/// lowest unconsumed sheet indices of both ports; then rotate each pair's
/// second side by the model's shift override.
pub fn default_wiring(bs: &BranchedSurface, res: &PairResolution, overrides: &WiringOverrides) -> Wiring {
    let mut wiring = Wiring::empty(bs);
    for c in bs.curves() {
        let mut cursor: BTreeMap<PortId, u64> = c.incident.iter().map(|p| (*p, 1)).collect();
        for (k, pair) in c.pairs.iter().enumerate() {
            let count = res.per_curve[c.id.0].counts[k];
            let mut take = |port: PortId, count: u64| -> Vec<u64> {
                let next = cursor.get_mut(&port).expect("pair end is incident");
                let out: Vec<u64> = (*next..*next + count).collect();
                *next += count;
                out
            };
            let a = take(pair.ends.0, count);
            let b = take(pair.ends.1, count);
            let shift = overrides.shifts.get(&(c.id, k)).copied().unwrap_or(0);
            let couples: Vec<(u64, u64)> = (0..count as usize)
                .map(|i| (a[i], b[(i + shift as usize) % count.max(1) as usize]))
                .collect();
            wiring.couples[c.id.0][k] = couples;
        }
    }
    wiring
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct SheetId(pub usize);

/// One parallel copy of a section; `index` is 1-based within the section.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sheet {
    pub section: SectionId,
    pub index: u64,
}

/// A gluing of two sheet-port circles along a branch curve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub a: (SheetId, PortId),
    pub b: (SheetId, PortId),
    pub flip: bool,
    pub curve: CurveId,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryCircle {
    pub sheet: SheetId,
    pub port: PortId,
    pub slope: Slope,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SheetComplex {
    pub sheets: Vec<Sheet>,
    pub edges: Vec<Edge>,
    pub boundary: Vec<BoundaryCircle>,
}

/// Builds the sheet complex, checking that the wiring consumes every
/// (port, sheet) exactly once at its curve.
pub fn reconstruct(bs: &BranchedSurface, w: &InvariantMeasure, wiring: &Wiring) -> Result<SheetComplex, CarryError> {
    if wiring.couples.len() != bs.curves().len() || wiring.flips.len() != bs.curves().len() {
        return Err(CarryError::WiringShape);
    }
    for c in bs.curves() {
        if wiring.couples[c.id.0].len() != c.pairs.len() || wiring.flips[c.id.0].len() != c.pairs.len() {
            return Err(CarryError::WiringShape);
        }
    }

    let mut first_sheet = vec![0usize; bs.sections().len()];
    let mut sheets = Vec::new();
    for s in bs.sections() {
        first_sheet[s.id.0] = sheets.len();
        for index in 1..=w.weight(s.id) {
            sheets.push(Sheet { section: s.id, index });
        }
    }
    let sheet_id = |section: SectionId, index: u64| SheetId(first_sheet[section.0] + (index - 1) as usize);

    let mut edges = Vec::new();
    let mut consumed: BTreeSet<(PortId, u64)> = BTreeSet::new();
    for c in bs.curves() {
        for (k, pair) in c.pairs.iter().enumerate() {
            let flip = wiring.flips[c.id.0][k];
            for (ia, ib) in &wiring.couples[c.id.0][k] {
                for (port, index) in [(pair.ends.0, *ia), (pair.ends.1, *ib)] {
                    let cap = w.weight(bs.port(port).owner);
                    if index < 1 || index > cap {
                        return Err(CarryError::SheetOutOfRange { port: bs.port_full_name(port), index, cap });
                    }
                    if !consumed.insert((port, index)) {
                        return Err(CarryError::ConsumedTwice { port: bs.port_full_name(port), index });
                    }
                }
                edges.push(Edge {
                    a: (sheet_id(bs.port(pair.ends.0).owner, *ia), pair.ends.0),
                    b: (sheet_id(bs.port(pair.ends.1).owner, *ib), pair.ends.1),
                    flip,
                    curve: c.id,
                });
            }
        }
    }
    for c in bs.curves() {
        for port in &c.incident {
            let cap = w.weight(bs.port(*port).owner);
            for index in 1..=cap {
                if !consumed.contains(&(*port, index)) {
                    return Err(CarryError::Unconsumed { port: bs.port_full_name(*port), index });
                }
            }
        }
    }

    let mut boundary = Vec::new();
    for s in bs.sections() {
        for pid in &s.ports {
            if let crate::branched::PortKind::Peripheral(slope) = &bs.port(*pid).kind {
                for index in 1..=w.weight(s.id) {
                    boundary.push(BoundaryCircle { sheet: sheet_id(s.id, index), port: *pid, slope: slope.clone() });
                }
            }
        }
    }

    Ok(SheetComplex { sheets, edges, boundary })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentReport {
    pub sheet_count: usize,
    pub euler: i64,
    pub boundary_count: usize,
    pub orientable: bool,
    /// Genus when the component is orientable (from euler = 2 - 2g - b).
    pub genus: Option<i64>,
    /// Crosscap count when non-orientable (from euler = 2 - k - b).
    pub crosscaps: Option<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceReport {
    pub euler: i64,
    pub boundary_count: usize,
    pub components: Vec<ComponentReport>,
    /// True when every component is orientable (vacuously for the empty surface).
    pub orientable: bool,
    /// Genus of the surface when it is connected and orientable.
    pub genus: Option<i64>,
    /// Boundary slope label -> circle count.
    pub slopes: BTreeMap<String, usize>,
    /// Mod-2 separating parity (boundary count even) when every boundary
    /// circle is longitudinal; None when other slopes appear.
    pub separating: Option<bool>,
}

impl SurfaceReport {
    pub fn connected(&self) -> bool {
        self.components.len() == 1
    }
}

/// Union-find with an orientation parity bit on each link.
struct ParityForest {
    parent: Vec<usize>,
    /// Parity of the path to the parent.
    parity: Vec<bool>,
    odd_cycle: Vec<bool>,
}

impl ParityForest {
    fn new(n: usize) -> ParityForest {
        ParityForest { parent: (0..n).collect(), parity: vec![false; n], odd_cycle: vec![false; n] }
    }

    fn find(&mut self, x: usize) -> (usize, bool) {
        if self.parent[x] == x {
            return (x, false);
        }
        let (root, p) = self.find(self.parent[x]);
        self.parent[x] = root;
        self.parity[x] ^= p;
        (root, self.parity[x])
    }

    /// Links x and y with relative parity `flip`; records odd cycles.
    fn union(&mut self, x: usize, y: usize, flip: bool) {
        let (rx, px) = self.find(x);
        let (ry, py) = self.find(y);
        if rx == ry {
            if px ^ py != flip {
                self.odd_cycle[rx] = true;
            }
            return;
        }
        self.parent[ry] = rx;
        self.parity[ry] = px ^ py ^ flip;
        self.odd_cycle[rx] |= self.odd_cycle[ry];
    }
}

/// Topological invariants of the complex. Euler characteristic is the sum of
/// sheet characteristics (gluing along circles adds nothing). A component is
/// orientable exactly when no sheet cycle has odd total flip.
pub fn analyze(bs: &BranchedSurface, sc: &SheetComplex) -> SurfaceReport {
    let n = sc.sheets.len();
    let mut forest = ParityForest::new(n);
    for e in &sc.edges {
        forest.union(e.a.0 .0, e.b.0 .0, e.flip);
    }

    let mut boundary_per_sheet = vec![0usize; n];
    let mut slopes: BTreeMap<String, usize> = BTreeMap::new();
    let mut all_longitudinal = true;
    for b in &sc.boundary {
        boundary_per_sheet[b.sheet.0] += 1;
        *slopes.entry(b.slope.label().to_string()).or_insert(0) += 1;
        if b.slope != Slope::Longitudinal {
            all_longitudinal = false;
        }
    }

    // Group sheets by root, in order of first appearance.
    let mut root_order: Vec<usize> = Vec::new();
    let mut members: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..n {
        let (r, _) = forest.find(i);
        if !members.contains_key(&r) {
            root_order.push(r);
        }
        members.entry(r).or_default().push(i);
    }

    let mut components = Vec::new();
    for r in root_order {
        let sheets = &members[&r];
        let euler: i64 = sheets.iter().map(|i| bs.section(sc.sheets[*i].section).euler_char()).sum();
        let boundary_count: usize = sheets.iter().map(|i| boundary_per_sheet[*i]).sum();
        let orientable = !forest.odd_cycle[r];
        let (genus, crosscaps) = if orientable {
            ((2 - euler - boundary_count as i64) / 2, None)
        } else {
            (0, Some(2 - euler - boundary_count as i64))
        };
        components.push(ComponentReport {
            sheet_count: sheets.len(),
            euler,
            boundary_count,
            orientable,
            genus: if orientable { Some(genus) } else { None },
            crosscaps,
        });
    }

    let euler: i64 = components.iter().map(|c| c.euler).sum();
    let boundary_count = sc.boundary.len();
    let orientable = components.iter().all(|c| c.orientable);
    let genus = if components.len() == 1 && orientable { components[0].genus } else { None };
    let separating = if all_longitudinal { Some(boundary_count % 2 == 0) } else { None };
    SurfaceReport { euler, boundary_count, components, orientable, genus, slopes, separating }
}

/// Resolves, wires with the given overrides, reconstructs, and analyzes.
pub fn carry_report(
    bs: &BranchedSurface,
    w: &InvariantMeasure,
    overrides: &WiringOverrides,
) -> Result<(SheetComplex, SurfaceReport), CarryError> {
    let res = resolve(bs, w)?;
    let wiring = default_wiring(bs, &res, overrides);
    let sc = reconstruct(bs, w, &wiring)?;
    let report = analyze(bs, &sc);
    Ok((sc, report))
}

/// Searches cyclic shifts (every pair) and flip toggles (declared fold pairs
/// only) in lexicographic order; returns the first wiring whose analyzed
/// report satisfies the target.
pub fn wiring_search(
    bs: &BranchedSurface,
    w: &InvariantMeasure,
    freedom: &WiringFreedom,
    target: impl Fn(&SurfaceReport) -> bool,
) -> Option<Wiring> {
    let res = resolve(bs, w).ok()?;

    // Dimensions: one shift per (curve, pair) in declaration order, then one
    // flip toggle per declared fold pair. Radix = couple count (min 1) or 2.
    let mut dims: Vec<(usize, usize, bool, u64)> = Vec::new(); // (curve, pair, is_flip, radix)
    for c in bs.curves() {
        for k in 0..c.pairs.len() {
            let count = res.per_curve[c.id.0].counts[k].max(1);
            dims.push((c.id.0, k, false, count));
        }
    }
    for (cid, k) in &freedom.fold_pairs {
        dims.push((cid.0, *k, true, 2));
    }

    let mut digits = vec![0u64; dims.len()];
    loop {
        let mut overrides = WiringOverrides::default();
        let mut flip_toggles: BTreeSet<(usize, usize)> = BTreeSet::new();
        for (d, (cid, k, is_flip, _)) in digits.iter().zip(&dims) {
            if *is_flip {
                if *d == 1 {
                    flip_toggles.insert((*cid, *k));
                }
            } else if *d > 0 {
                overrides.shifts.insert((CurveId(*cid), *k), *d);
            }
        }
        let mut wiring = default_wiring(bs, &res, &overrides);
        for (cid, k) in &flip_toggles {
            wiring.flips[*cid][*k] = !wiring.flips[*cid][*k];
        }
        if let Ok(sc) = reconstruct(bs, w, &wiring) {
            if target(&analyze(bs, &sc)) {
                return Some(wiring);
            }
        }

        // Odometer increment, rightmost digit fastest.
        let mut i = dims.len();
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < dims[i].3 {
                break;
            }
            digits[i] = 0;
        }
    }
}

/// Parity of the carried boundary: even totals separate, odd totals do not.
/// Requires every peripheral port of the model to be longitudinal.
pub fn separating_parity(bs: &BranchedSurface, w: &InvariantMeasure) -> Result<bool, CarryError> {
    let mut total = 0u64;
    for s in bs.sections() {
        for pid in &s.ports {
            if let crate::branched::PortKind::Peripheral(slope) = &bs.port(*pid).kind {
                if *slope != Slope::Longitudinal {
                    return Err(CarryError::NonLongitudinal {
                        port: bs.port_full_name(*pid),
                        slope: slope.label().to_string(),
                    });
                }
                total += w.weight(s.id);
            }
        }
    }
    Ok(total % 2 == 0)
}

impl fmt::Display for SurfaceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "euler: {}", self.euler)?;
        writeln!(f, "boundary: {}", self.boundary_count)?;
        writeln!(f, "components: {}", self.components.len())?;
        writeln!(f, "orientable: {}", self.orientable)?;
        match self.genus {
            Some(g) => writeln!(f, "genus: {g}")?,
            None => writeln!(f, "genus: -")?,
        }
        let slopes = if self.slopes.is_empty() {
            "none".to_string()
        } else {
            self.slopes.iter().map(|(k, v)| format!("{k} x{v}")).collect::<Vec<_>>().join(", ")
        };
        writeln!(f, "slopes: {slopes}")?;
        match self.separating {
            Some(p) => writeln!(f, "separating: {p}")?,
            None => writeln!(f, "separating: -")?,
        }
        if self.components.len() > 1 {
            for (i, c) in self.components.iter().enumerate() {
                let shape = if c.orientable {
                    format!("genus {}", c.genus.unwrap_or(0))
                } else {
                    format!("crosscaps {}", c.crosscaps.unwrap_or(0))
                };
                writeln!(
                    f,
                    "component {}: sheets {}, euler {}, boundary {}, {}",
                    i + 1,
                    c.sheet_count,
                    c.euler,
                    c.boundary_count,
                    shape
                )?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::branched::new_branched_surface;
    use crate::format::{CurveSpecItem, PairSpecItem, PortSpecItem, SectionSpecItem, SurfaceSpec};
    use crate::measures::{enumerate_measures, euler_functional};
    use crate::models::{build_rg, fgn_measure};

    fn rg_report(g: u32, n: u64) -> SurfaceReport {
        let m = build_rg(g).unwrap();
        let w = fgn_measure(g, n).unwrap();
        carry_report(&m.surface, &w, &m.overrides).unwrap().1
    }

    #[test]
    fn default_wiring_orders_sheets_within_pairs() {
        let m = build_rg(2).unwrap();
        let bs = &m.surface;
        let w = fgn_measure(2, 4).unwrap();
        let res = resolve(bs, &w).unwrap();
        let wiring = default_wiring(bs, &res, &WiringOverrides::default());
        let cl = bs.curve_by_name("cL").unwrap();
        // A1 sheets 1,2 couple to U1 sheets 1,2; A1 sheet 3 to Xg 1; A1 4 to V1 1.
        assert_eq!(wiring.couples[cl.0][0], vec![(1, 1), (2, 2)]);
        assert_eq!(wiring.couples[cl.0][1], vec![(3, 1)]);
        assert_eq!(wiring.couples[cl.0][2], vec![(4, 1)]);

        // Smooth two-port curve pairs i with i.
        let cp1 = bs.curve_by_name("cP1").unwrap();
        assert_eq!(wiring.couples[cp1.0][0], vec![(1, 1), (2, 2), (3, 3), (4, 4)]);
    }

    #[test]
    fn zero_measure_gives_empty_complex() {
        let m = build_rg(1).unwrap();
        let w = crate::measures::InvariantMeasure::zero(&m.surface);
        let (sc, report) = carry_report(&m.surface, &w, &m.overrides).unwrap();
        assert!(sc.sheets.is_empty());
        assert!(sc.edges.is_empty());
        assert!(sc.boundary.is_empty());
        assert_eq!(report.euler, 0);
        assert_eq!(report.components.len(), 0);
        assert_eq!(report.separating, Some(true));
    }

    #[test]
    fn sheet_and_edge_counts() {
        let m = build_rg(1).unwrap();
        let w = fgn_measure(1, 1).unwrap();
        let (sc, _) = carry_report(&m.surface, &w, &m.overrides).unwrap();
        assert_eq!(sc.sheets.len(), 6);
        assert_eq!(sc.edges.len(), 6);
        assert_eq!(sc.boundary.len(), 1);

        let m = build_rg(2).unwrap();
        let w = fgn_measure(2, 3).unwrap();
        let (sc, _) = carry_report(&m.surface, &w, &m.overrides).unwrap();
        assert_eq!(sc.sheets.len(), 16);
        assert_eq!(sc.edges.len(), 16);
    }

    #[test]
    fn analyzed_reports_match_expected_surfaces() {
        let r = rg_report(2, 4);
        assert_eq!(r.euler, -6);
        assert_eq!(r.boundary_count, 4);
        assert!(r.connected());
        assert!(r.orientable);
        assert_eq!(r.genus, Some(2));
        assert_eq!(r.slopes.get("longitudinal"), Some(&4));
        assert_eq!(r.separating, Some(true));

        let r = rg_report(1, 3);
        assert_eq!(r.euler, -3);
        assert_eq!(r.boundary_count, 3);
        assert!(r.connected());
        assert!(r.orientable);
        assert_eq!(r.genus, Some(1));
        assert_eq!(r.separating, Some(false));
    }

    fn self_glue_spec(flip: bool) -> SurfaceSpec {
        SurfaceSpec {
            name: "selfglue".into(),
            meta: Default::default(),
            sections: vec![SectionSpecItem {
                name: "S".into(),
                genus: 0,
                ports: vec![
                    PortSpecItem { name: "p".into(), kind: "internal".into(), slope: None },
                    PortSpecItem { name: "q".into(), kind: "internal".into(), slope: None },
                ],
            }],
            curves: vec![CurveSpecItem {
                name: "c".into(),
                ports: vec!["S.p".into(), "S.q".into()],
                pairs: vec![PairSpecItem { ends: ["S.p".into(), "S.q".into()], flip }],
            }],
        }
    }

    #[test]
    fn flip_parity_separates_torus_from_klein_bottle() {
        // An annulus glued end to end: orientation-preserving gives a torus,
        // orientation-reversing gives a Klein bottle.
        for (flip, orientable) in [(false, true), (true, false)] {
            let bs = new_branched_surface(&self_glue_spec(flip)).unwrap();
            let w = crate::measures::InvariantMeasure::from_weights(vec![1]);
            let (_, r) = carry_report(&bs, &w, &WiringOverrides::default()).unwrap();
            assert_eq!(r.euler, 0);
            assert_eq!(r.boundary_count, 0);
            assert!(r.connected());
            assert_eq!(r.orientable, orientable);
            if orientable {
                assert_eq!(r.genus, Some(1));
            } else {
                assert_eq!(r.components[0].crosscaps, Some(2));
            }
        }
    }

    #[test]
    fn grid_of_carried_surfaces_has_expected_invariants() {
        for g in 1..=4u32 {
            for n in 1..=8u64 {
                let r = rg_report(g, n);
                assert!(r.connected(), "g={g} n={n}");
                assert!(r.orientable, "g={g} n={n}");
                assert_eq!(r.genus, Some(g as i64), "g={g} n={n}");
                assert_eq!(r.boundary_count, n as usize, "g={g} n={n}");
                assert_eq!(r.euler, 2 - 2 * g as i64 - n as i64, "g={g} n={n}");
                assert_eq!(r.slopes.len(), 1);
                assert_eq!(r.slopes.get("longitudinal"), Some(&(n as usize)));
            }
        }
    }

    #[test]
    fn euler_and_boundary_identities_over_small_cone() {
        let m = build_rg(1).unwrap();
        let bs = &m.surface;
        let f = euler_functional(bs);
        let peripheral_ports: Vec<usize> = bs
            .sections()
            .iter()
            .map(|s| {
                s.ports
                    .iter()
                    .filter(|p| matches!(bs.port(**p).kind, crate::branched::PortKind::Peripheral(_)))
                    .count()
            })
            .collect();
        for w in enumerate_measures(bs, 3, &[]) {
            let (_, r) = carry_report(bs, &w, &m.overrides).unwrap();
            assert_eq!(r.euler, f.evaluate(&w));
            let expected_boundary: u64 =
                bs.sections().iter().map(|s| w.weight(s.id) * peripheral_ports[s.id.0] as u64).sum();
            assert_eq!(r.boundary_count as u64, expected_boundary);
            assert_eq!(separating_parity(bs, &w).unwrap(), r.boundary_count % 2 == 0);
            assert_eq!(r.separating, Some(r.boundary_count % 2 == 0));
        }
    }

    #[test]
    fn bad_wirings_are_rejected() {
        let m = build_rg(1).unwrap();
        let bs = &m.surface;
        let w = fgn_measure(1, 2).unwrap();
        let res = resolve(bs, &w).unwrap();
        let good = default_wiring(bs, &res, &WiringOverrides::default());
        let cp1 = bs.curve_by_name("cP1").unwrap();

        let mut dup = good.clone();
        dup.couples[cp1.0][0] = vec![(1, 1), (1, 2)];
        assert!(matches!(reconstruct(bs, &w, &dup), Err(CarryError::ConsumedTwice { .. })));

        let mut missing = good.clone();
        missing.couples[cp1.0][0] = vec![(1, 1)];
        assert!(matches!(reconstruct(bs, &w, &missing), Err(CarryError::Unconsumed { .. })));

        let mut out_of_range = good.clone();
        out_of_range.couples[cp1.0][0] = vec![(1, 1), (2, 3)];
        assert!(matches!(reconstruct(bs, &w, &out_of_range), Err(CarryError::SheetOutOfRange { .. })));

        let mut misshapen = good;
        misshapen.couples.pop();
        assert!(matches!(reconstruct(bs, &w, &misshapen), Err(CarryError::WiringShape)));
    }

    #[test]
    fn wiring_search_finds_targets_and_reports_failure() {
        let m = build_rg(1).unwrap();
        let w = fgn_measure(1, 5).unwrap();
        let target = |r: &SurfaceReport| {
            r.connected() && r.orientable && r.genus == Some(1) && r.boundary_count == 5
        };
        let found = wiring_search(&m.surface, &w, &m.freedom, target).unwrap();
        let sc = reconstruct(&m.surface, &w, &found).unwrap();
        assert!(target(&analyze(&m.surface, &sc)));

        let m2 = build_rg(2).unwrap();
        let w1 = fgn_measure(2, 1).unwrap();
        let t1 = |r: &SurfaceReport| r.connected() && r.orientable && r.genus == Some(2) && r.boundary_count == 1;
        assert!(wiring_search(&m2.surface, &w1, &m2.freedom, t1).is_some());

        // Unsatisfiable target on a small measure exhausts the space.
        assert!(wiring_search(&m.surface, &fgn_measure(1, 1).unwrap(), &m.freedom, |r| r.genus == Some(99)).is_none());

        // Zero measure with a trivial target yields the empty wiring.
        let z = crate::measures::InvariantMeasure::zero(&m.surface);
        let found = wiring_search(&m.surface, &z, &m.freedom, |r| r.euler == 0).unwrap();
        assert!(found.couples.iter().all(|c| c.iter().all(|p| p.is_empty())));
    }

    #[test]
    fn flip_toggles_can_repair_orientability() {
        // Spoil one fold flip so the default wiring yields a non-orientable
        // complex for n = 2, then let the search fix it.
        let m = build_rg(1).unwrap();
        let mut spec = m.surface.to_spec();
        let clp = spec.curves.iter_mut().find(|c| c.name == "cL'").unwrap();
        clp.pairs[0].flip = false; // U2-V2 fold
        let bs = new_branched_surface(&spec).unwrap();
        let w = fgn_measure(1, 2).unwrap();

        let (_, broken) = carry_report(&bs, &w, &WiringOverrides::default()).unwrap();
        assert!(!broken.orientable);

        let target = |r: &SurfaceReport| r.orientable && r.connected() && r.genus == Some(1);
        let fixed = wiring_search(&bs, &w, &m.freedom, target).unwrap();
        let r = analyze(&bs, &reconstruct(&bs, &w, &fixed).unwrap());
        assert!(r.orientable);
        assert_eq!(r.genus, Some(1));
    }

    #[test]
    fn wiring_invariants_across_search_space() {
        // Euler, boundary count, and slopes do not depend on the wiring.
        let m = build_rg(1).unwrap();
        let bs = &m.surface;
        let w = fgn_measure(1, 3).unwrap();
        let res = resolve(bs, &w).unwrap();
        let base = analyze(bs, &reconstruct(bs, &w, &default_wiring(bs, &res, &WiringOverrides::default())).unwrap());
        for shift in 0..3u64 {
            let mut o = WiringOverrides::default();
            o.shifts.insert((bs.curve_by_name("cP1").unwrap(), 0), shift);
            let r = analyze(bs, &reconstruct(bs, &w, &default_wiring(bs, &res, &o)).unwrap());
            assert_eq!(r.euler, base.euler);
            assert_eq!(r.boundary_count, base.boundary_count);
            assert_eq!(r.slopes, base.slopes);
        }
    }

    #[test]
    fn separating_parity_examples() {
        let m = build_rg(2).unwrap();
        assert!(separating_parity(&m.surface, &fgn_measure(2, 4).unwrap()).unwrap());
        assert!(!separating_parity(&m.surface, &fgn_measure(2, 3).unwrap()).unwrap());
        assert!(separating_parity(&m.surface, &crate::measures::InvariantMeasure::zero(&m.surface)).unwrap());

        // Meridional peripheral ports are refused.
        let spec = SurfaceSpec {
            name: "meridian".into(),
            meta: Default::default(),
            sections: vec![SectionSpecItem {
                name: "S".into(),
                genus: 0,
                ports: vec![PortSpecItem { name: "b".into(), kind: "peripheral".into(), slope: Some("meridional".into()) }],
            }],
            curves: vec![],
        };
        let bs = new_branched_surface(&spec).unwrap();
        let w = crate::measures::InvariantMeasure::from_weights(vec![1]);
        assert!(matches!(separating_parity(&bs, &w), Err(CarryError::NonLongitudinal { .. })));
    }

    #[test]
    fn report_rendering_is_stable() {
        let r = rg_report(2, 4);
        let text = r.to_string();
        assert!(text.contains("euler: -6"));
        assert!(text.contains("genus: 2"));
        assert!(text.contains("slopes: longitudinal x4"));
    }
}
