//! Abstract branched surfaces: compact sections joined along branch curves.
//!
//! A section is a compact surface known only by its genus and its boundary
//! ports; a branch curve records which ports meet it and which pairs of those
//! ports may be glued through it. Everything downstream (measures, carried
//! surfaces) works purely with this combinatorial data.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::format::SurfaceSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SectionId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PortId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CurveId(pub usize);

/// Boundary slope label carried by a peripheral port.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Slope {
    Longitudinal,
    Meridional,
    Other(String),
}

impl Slope {
    pub fn label(&self) -> &str {
        match self {
            Slope::Longitudinal => "longitudinal",
            Slope::Meridional => "meridional",
            Slope::Other(s) => s,
        }
    }

    pub fn from_label(s: &str) -> Slope {
        match s {
            "longitudinal" => Slope::Longitudinal,
            "meridional" => Slope::Meridional,
            other => Slope::Other(other.to_string()),
        }
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PortKind {
    /// Glued to other ports through the one branch curve that lists it.
    Internal,
    /// Free boundary of the branched surface, labeled with a slope.
    Peripheral(Slope),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Port {
    pub id: PortId,
    pub name: String,
    pub owner: SectionId,
    pub kind: PortKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Section {
    pub id: SectionId,
    pub name: String,
    pub genus: u32,
    pub ports: Vec<PortId>,
}

/// One way a branch curve may match two of its incident ports. `flip`
/// records whether gluing through this pair reverses sheet orientation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AllowedPair {
    pub ends: (PortId, PortId),
    pub flip: bool,
}

/// Pairs are listed in resolution priority order (first = tried first).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BranchCurve {
    pub id: CurveId,
    pub name: String,
    pub incident: Vec<PortId>,
    pub pairs: Vec<AllowedPair>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BranchedSurface {
    pub name: String,
    pub meta: BTreeMap<String, String>,
    sections: Vec<Section>,
    ports: Vec<Port>,
    curves: Vec<BranchCurve>,
    /// Derived: the curve listing each port, None for peripheral ports.
    port_curve: Vec<Option<CurveId>>,
}

/// Euler characteristic of a compact orientable surface of the given genus
/// with `boundary` boundary circles.
pub fn euler_char(genus: u32, boundary: usize) -> i64 {
    2 - 2 * genus as i64 - boundary as i64
}

impl Section {
    pub fn euler_char(&self) -> i64 {
        euler_char(self.genus, self.ports.len())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    BadName { name: String },
    DuplicateSection { name: String },
    DuplicatePort { section: String, port: String },
    UnknownPortRef { curve: String, port: String },
    PortMultiplyAttached { port: String },
    PeripheralPortAttached { curve: String, port: String },
    InternalPortUnattached { port: String },
    SelfPair { curve: String, port: String },
    PairNotIncident { curve: String, port: String },
    PortUncovered { curve: String, port: String },
    DuplicateCurve { name: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::BadName { name } => write!(f, "bad identifier {name:?} (must be nonempty, no '.' or whitespace)"),
            Violation::DuplicateSection { name } => write!(f, "duplicate section name {name:?}"),
            Violation::DuplicatePort { section, port } => write!(f, "duplicate port {section}.{port}"),
            Violation::UnknownPortRef { curve, port } => write!(f, "curve {curve}: unknown port {port:?}"),
            Violation::PortMultiplyAttached { port } => write!(f, "port {port} attached to more than one curve"),
            Violation::PeripheralPortAttached { curve, port } => write!(f, "curve {curve}: port {port} is peripheral"),
            Violation::InternalPortUnattached { port } => write!(f, "internal port {port} attached to no curve"),
            Violation::SelfPair { curve, port } => write!(f, "curve {curve}: pair matches port {port} with itself"),
            Violation::PairNotIncident { curve, port } => write!(f, "curve {curve}: pair references non-incident port {port}"),
            Violation::PortUncovered { curve, port } => write!(f, "curve {curve}: incident port {port} occurs in no allowed pair"),
            Violation::DuplicateCurve { name } => write!(f, "duplicate curve name {name:?}"),
        }
    }
}

/// Result of structural validation. An empty model is legal but flagged.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    pub vacuous: bool,
}

impl ValidationReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ModelError {
    #[error("invalid model: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Violation>),
}

fn name_ok(name: &str) -> bool {
    !name.is_empty() && !name.contains('.') && !name.chars().any(|c| c.is_whitespace())
}

/// Checks a raw description against every structural invariant and reports
/// all violations found, without constructing anything.
pub fn validate_spec(spec: &SurfaceSpec) -> ValidationReport {
    let mut v = Vec::new();
    let mut section_names = BTreeSet::new();
    // full port name -> (kind is peripheral)
    let mut port_kind: BTreeMap<String, bool> = BTreeMap::new();

    for s in &spec.sections {
        if !name_ok(&s.name) {
            v.push(Violation::BadName { name: s.name.clone() });
        }
        if !section_names.insert(s.name.clone()) {
            v.push(Violation::DuplicateSection { name: s.name.clone() });
        }
        let mut seen = BTreeSet::new();
        for p in &s.ports {
            if !name_ok(&p.name) {
                v.push(Violation::BadName { name: p.name.clone() });
            }
            if !seen.insert(p.name.clone()) {
                v.push(Violation::DuplicatePort { section: s.name.clone(), port: p.name.clone() });
            } else {
                port_kind.insert(format!("{}.{}", s.name, p.name), p.kind == "peripheral");
            }
        }
    }

    let mut curve_names = BTreeSet::new();
    let mut attach_count: BTreeMap<String, usize> = BTreeMap::new();
    for c in &spec.curves {
        if !name_ok(&c.name) {
            v.push(Violation::BadName { name: c.name.clone() });
        }
        if !curve_names.insert(c.name.clone()) {
            v.push(Violation::DuplicateCurve { name: c.name.clone() });
        }
        let incident: BTreeSet<&String> = c.ports.iter().collect();
        for p in &c.ports {
            match port_kind.get(p) {
                None => v.push(Violation::UnknownPortRef { curve: c.name.clone(), port: p.clone() }),
                Some(true) => v.push(Violation::PeripheralPortAttached { curve: c.name.clone(), port: p.clone() }),
                Some(false) => {
                    *attach_count.entry(p.clone()).or_insert(0) += 1;
                }
            }
        }
        let mut covered: BTreeSet<&String> = BTreeSet::new();
        for pair in &c.pairs {
            let (a, b) = (&pair.ends[0], &pair.ends[1]);
            if a == b {
                v.push(Violation::SelfPair { curve: c.name.clone(), port: a.clone() });
                continue;
            }
            for end in [a, b] {
                if !incident.contains(end) {
                    v.push(Violation::PairNotIncident { curve: c.name.clone(), port: end.clone() });
                } else {
                    covered.insert(end);
                }
            }
        }
        for p in &c.ports {
            if !covered.contains(p) && incident.contains(p) && port_kind.get(p) == Some(&false) {
                v.push(Violation::PortUncovered { curve: c.name.clone(), port: p.clone() });
            }
        }
    }

    for (port, n) in &attach_count {
        if *n > 1 {
            v.push(Violation::PortMultiplyAttached { port: port.clone() });
        }
    }
    for (port, peripheral) in &port_kind {
        if !peripheral && !attach_count.contains_key(port) {
            v.push(Violation::InternalPortUnattached { port: port.clone() });
        }
    }

    ValidationReport { violations: v, vacuous: spec.sections.is_empty() }
}

/// Builds a branched surface from its description, rejecting any spec with
/// validation violations.
pub fn new_branched_surface(spec: &SurfaceSpec) -> Result<BranchedSurface, ModelError> {
    let report = validate_spec(spec);
    if !report.is_clean() {
        return Err(ModelError::Invalid(report.violations));
    }

    let mut sections = Vec::new();
    let mut ports = Vec::new();
    let mut port_ids: BTreeMap<String, PortId> = BTreeMap::new();
    for (si, s) in spec.sections.iter().enumerate() {
        let sid = SectionId(si);
        let mut ids = Vec::new();
        for p in &s.ports {
            let pid = PortId(ports.len());
            let kind = if p.kind == "peripheral" {
                PortKind::Peripheral(Slope::from_label(p.slope.as_deref().unwrap_or("longitudinal")))
            } else {
                PortKind::Internal
            };
            ports.push(Port { id: pid, name: p.name.clone(), owner: sid, kind });
            port_ids.insert(format!("{}.{}", s.name, p.name), pid);
            ids.push(pid);
        }
        sections.push(Section { id: sid, name: s.name.clone(), genus: s.genus, ports: ids });
    }

    let mut curves = Vec::new();
    let mut port_curve = vec![None; ports.len()];
    for (ci, c) in spec.curves.iter().enumerate() {
        let cid = CurveId(ci);
        let incident: Vec<PortId> = c.ports.iter().map(|p| port_ids[p]).collect();
        for pid in &incident {
            port_curve[pid.0] = Some(cid);
        }
        let pairs = c
            .pairs
            .iter()
            .map(|pr| AllowedPair { ends: (port_ids[&pr.ends[0]], port_ids[&pr.ends[1]]), flip: pr.flip })
            .collect();
        curves.push(BranchCurve { id: cid, name: c.name.clone(), incident, pairs });
    }

    Ok(BranchedSurface { name: spec.name.clone(), meta: spec.meta.clone(), sections, ports, curves, port_curve })
}

impl BranchedSurface {
    pub fn sections(&self) -> &[Section] {
        &self.sections
    }

    pub fn ports(&self) -> &[Port] {
        &self.ports
    }

    pub fn curves(&self) -> &[BranchCurve] {
        &self.curves
    }

    pub fn section(&self, id: SectionId) -> &Section {
        &self.sections[id.0]
    }

    pub fn port(&self, id: PortId) -> &Port {
        &self.ports[id.0]
    }

    pub fn curve(&self, id: CurveId) -> &BranchCurve {
        &self.curves[id.0]
    }

    /// The curve a port is attached to; None for peripheral ports.
    pub fn curve_of(&self, port: PortId) -> Option<CurveId> {
        self.port_curve[port.0]
    }

    pub fn section_by_name(&self, name: &str) -> Option<SectionId> {
        self.sections.iter().find(|s| s.name == name).map(|s| s.id)
    }

    pub fn curve_by_name(&self, name: &str) -> Option<CurveId> {
        self.curves.iter().find(|c| c.name == name).map(|c| c.id)
    }

    pub fn port_full_name(&self, id: PortId) -> String {
        let p = self.port(id);
        format!("{}.{}", self.section(p.owner).name, p.name)
    }

    /// Sections owning at least one peripheral port, in declaration order.
    pub fn peripheral_sections(&self) -> Vec<SectionId> {
        let mut out = Vec::new();
        for s in &self.sections {
            if s.ports.iter().any(|p| matches!(self.port(*p).kind, PortKind::Peripheral(_))) {
                out.push(s.id);
            }
        }
        out
    }

    /// Re-derives the description and re-checks every invariant.
    pub fn validate(&self) -> ValidationReport {
        validate_spec(&self.to_spec())
    }
}
