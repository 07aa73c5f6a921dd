//! Shipped branched-surface models and their measure families.
//!
//! The genus-g model has nine sections. A planar piece P (genus 0, one
//! longitudinal peripheral port plus two internal ports) feeds two annulus
//! chains through a genus g-1 piece; six branch curves glue them:
//!
//!   cP1: P-A1 smooth          cP2: P-A2 smooth
//!   cL:  {A1-U1, A1-Xg, A1-V1}
//!   cR:  {Xg-V1 > U1-A' > Xg-A'}   (priority order; Xg-V1 is a fold)
//!   cL': {U2-V2 > A'-V2 > A'-U2}   (U2-V2 is a fold)
//!   cR': {A2-U2, A2-V2}
//!
//! The weight families carried by the model put weight n on P and its two
//! neighbouring annuli and small weights in the middle; the carried surface
//! has genus g and n longitudinal boundary circles.

use crate::branched::{BranchedSurface, ModelError as CoreModelError};
use crate::carried::{carry_report, SurfaceReport, WiringFreedom, WiringOverrides};
use crate::format::{CurveSpecItem, PairSpecItem, PortSpecItem, SectionSpecItem, SurfaceSpec};
use crate::measures::InvariantMeasure;

#[derive(Debug, thiserror::Error)]
pub enum ModelError {
    #[error("genus parameter must be at least 1, got {0}")]
    GenusOutOfRange(u32),
    #[error("boundary parameter must be at least 1, got {0}")]
    BoundaryOutOfRange(u64),
    #[error("subfamily index {i} exceeds the family size {s}")]
    SubfamilyIndex { i: u32, s: u32 },
    #[error(transparent)]
    Invalid(#[from] CoreModelError),
    #[error(transparent)]
    Carry(#[from] crate::carried::CarryError),
}

/// A shipped model: the surface plus its wiring data and search freedom.
#[derive(Debug, Clone)]
pub struct RgModel {
    pub surface: BranchedSurface,
    pub genus: u32,
    /// Subfamily metadata (i, s) when built as the i-th member of a family.
    pub subfamily: Option<(u32, u32)>,
    /// Index-shift overrides applied by the default wiring (none shipped;
    /// the order-preserving wiring already realizes the expected surfaces).
    pub overrides: WiringOverrides,
    /// Fold pairs whose flips the wiring search may toggle.
    pub freedom: WiringFreedom,
}

fn annulus(name: &str) -> SectionSpecItem {
    SectionSpecItem {
        name: name.into(),
        genus: 0,
        ports: vec![
            PortSpecItem { name: "l".into(), kind: "internal".into(), slope: None },
            PortSpecItem { name: "r".into(), kind: "internal".into(), slope: None },
        ],
    }
}

fn pair(a: &str, b: &str, flip: bool) -> PairSpecItem {
    PairSpecItem { ends: [a.into(), b.into()], flip }
}

fn rg_spec(g: u32, u2_name: &str, meta: Vec<(&str, String)>) -> SurfaceSpec {
    let mut xg = annulus("Xg");
    xg.genus = g - 1;
    let sections = vec![
        SectionSpecItem {
            name: "P".into(),
            genus: 0,
            ports: vec![
                PortSpecItem { name: "b".into(), kind: "peripheral".into(), slope: Some("longitudinal".into()) },
                PortSpecItem { name: "l".into(), kind: "internal".into(), slope: None },
                PortSpecItem { name: "r".into(), kind: "internal".into(), slope: None },
            ],
        },
        annulus("A1"),
        annulus("U1"),
        xg,
        annulus("V1"),
        annulus("A'"),
        annulus(u2_name),
        annulus("V2"),
        annulus("A2"),
    ];
    let u2l = format!("{u2_name}.l");
    let u2r = format!("{u2_name}.r");
    let curves = vec![
        CurveSpecItem {
            name: "cP1".into(),
            ports: vec!["P.l".into(), "A1.l".into()],
            pairs: vec![pair("P.l", "A1.l", false)],
        },
        CurveSpecItem {
            name: "cP2".into(),
            ports: vec!["P.r".into(), "A2.r".into()],
            pairs: vec![pair("P.r", "A2.r", false)],
        },
        CurveSpecItem {
            name: "cL".into(),
            ports: vec!["A1.r".into(), "U1.l".into(), "Xg.l".into(), "V1.l".into()],
            pairs: vec![pair("A1.r", "U1.l", false), pair("A1.r", "Xg.l", false), pair("A1.r", "V1.l", false)],
        },
        CurveSpecItem {
            name: "cR".into(),
            ports: vec!["U1.r".into(), "Xg.r".into(), "V1.r".into(), "A'.l".into()],
            pairs: vec![pair("Xg.r", "V1.r", true), pair("U1.r", "A'.l", false), pair("Xg.r", "A'.l", false)],
        },
        CurveSpecItem {
            name: "cL'".into(),
            ports: vec!["A'.r".into(), u2l.clone(), "V2.l".into()],
            pairs: vec![pair(&u2l, "V2.l", true), pair("A'.r", "V2.l", false), pair("A'.r", &u2l, false)],
        },
        CurveSpecItem {
            name: "cR'".into(),
            ports: vec![u2r.clone(), "V2.r".into(), "A2.l".into()],
            pairs: vec![pair("A2.l", &u2r, false), pair("A2.l", "V2.r", false)],
        },
    ];
    SurfaceSpec {
        name: format!("R{g}"),
        meta: meta.into_iter().map(|(k, v)| (k.to_string(), v)).collect(),
        sections,
        curves,
    }
}

fn finish_model(g: u32, spec: SurfaceSpec, subfamily: Option<(u32, u32)>) -> Result<RgModel, ModelError> {
    let surface = crate::branched::new_branched_surface(&spec)?;
    let c_r = surface.curve_by_name("cR").expect("model has cR");
    let c_lp = surface.curve_by_name("cL'").expect("model has cL'");
    Ok(RgModel {
        surface,
        genus: g,
        subfamily,
        overrides: WiringOverrides::default(),
        freedom: WiringFreedom { fold_pairs: vec![(c_r, 0), (c_lp, 0)] },
    })
}

/// Builds the genus-g model.
pub fn build_rg(g: u32) -> Result<RgModel, ModelError> {
    if g < 1 {
        return Err(ModelError::GenusOutOfRange(g));
    }
    finish_model(g, rg_spec(g, "U2", vec![("genus", g.to_string())]), None)
}

/// Builds the i-th member of the size-s subfamily: combinatorially the
/// genus-g model with the U2 annulus replaced by its i-th parallel copy.
/// The copies are indistinguishable as branched surfaces, so member 0 keeps
/// the plain name and members i >= 1 rename the section to U2^i; (i, s) is
/// recorded in the model metadata.
pub fn build_rgi(g: u32, i: u32, s: u32) -> Result<RgModel, ModelError> {
    if g < 1 {
        return Err(ModelError::GenusOutOfRange(g));
    }
    if i > s {
        return Err(ModelError::SubfamilyIndex { i, s });
    }
    let u2_name = if i == 0 { "U2".to_string() } else { format!("U2^{i}") };
    let meta = vec![("genus", g.to_string()), ("i", i.to_string()), ("s", s.to_string())];
    let mut spec = rg_spec(g, &u2_name, meta);
    spec.name = format!("R{g};{i}");
    finish_model(g, spec, Some((i, s)))
}

/// The weight family with boundary parameter n, as a vector over the model's
/// section order (P, A1, U1, Xg, V1, A', U2, V2, A2). The same weights are
/// invariant on every genus-g model, g >= 1.
pub fn fgn_measure(g: u32, n: u64) -> Result<InvariantMeasure, ModelError> {
    if g < 1 {
        return Err(ModelError::GenusOutOfRange(g));
    }
    if n < 1 {
        return Err(ModelError::BoundaryOutOfRange(n));
    }
    let weights = match n {
        1 => vec![1, 1, 0, 1, 0, 1, 1, 0, 1],
        2 => vec![2, 2, 0, 1, 1, 0, 1, 1, 2],
        n => vec![n, n, n - 2, 1, 1, n - 2, 1, n - 1, n],
    };
    Ok(InvariantMeasure::from_weights(weights))
}

/// One verified cell of the (g, n) grid.
#[derive(Debug, Clone)]
pub struct GridRow {
    pub g: u32,
    pub n: u64,
    /// Subfamily index when the grid ranges over a family.
    pub i: Option<u32>,
    pub report: SurfaceReport,
    pub pass: bool,
}

fn expected(report: &SurfaceReport, g: u32, n: u64) -> bool {
    report.connected()
        && report.orientable
        && report.genus == Some(g as i64)
        && report.boundary_count == n as usize
        && report.euler == 2 - 2 * g as i64 - n as i64
        && report.slopes.len() == 1
        && report.slopes.get("longitudinal") == Some(&(n as usize))
}

/// Builds, carries, and analyzes every cell of the grid; with `s` given the
/// grid additionally ranges over family indices i in 0..=s. Ranges are
/// inclusive; an empty range yields no rows.
pub fn verify_grid(
    g_range: (u32, u32),
    n_range: (u64, u64),
    s: Option<u32>,
) -> Result<Vec<GridRow>, ModelError> {
    let mut rows = Vec::new();
    for g in g_range.0..=g_range.1 {
        for n in n_range.0..=n_range.1 {
            let w = fgn_measure(g, n)?;
            match s {
                None => {
                    let m = build_rg(g)?;
                    let report = carry_report(&m.surface, &w, &m.overrides)?.1;
                    let pass = expected(&report, g, n);
                    rows.push(GridRow { g, n, i: None, report, pass });
                }
                Some(s) => {
                    for i in 0..=s {
                        let m = build_rgi(g, i, s)?;
                        let report = carry_report(&m.surface, &w, &m.overrides)?.1;
                        let pass = expected(&report, g, n);
                        rows.push(GridRow { g, n, i: Some(i), report, pass });
                    }
                }
            }
        }
    }
    Ok(rows)
}

/// CSV for grid rows. The `i` column appears only when the grid ranged over
/// a subfamily. Genus and separating print `-` when undefined.
pub fn grid_csv(rows: &[GridRow]) -> String {
    let with_i = rows.iter().any(|r| r.i.is_some());
    let mut out = String::new();
    if with_i {
        out.push_str("g,n,i,euler,boundary,components,orientable,genus,separating,pass\n");
    } else {
        out.push_str("g,n,euler,boundary,components,orientable,genus,separating,pass\n");
    }
    for r in rows {
        let genus = r.report.genus.map(|g| g.to_string()).unwrap_or_else(|| "-".into());
        let separating = r.report.separating.map(|p| p.to_string()).unwrap_or_else(|| "-".into());
        let head = match (with_i, r.i) {
            (true, Some(i)) => format!("{},{},{}", r.g, r.n, i),
            (true, None) => format!("{},{},-", r.g, r.n),
            (false, _) => format!("{},{}", r.g, r.n),
        };
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            head,
            r.report.euler,
            r.report.boundary_count,
            r.report.components.len(),
            r.report.orientable,
            genus,
            separating,
            r.pass
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::{enumerate_measures, euler_functional, is_invariant_measure};

    #[test]
    fn model_shape() {
        let m = build_rg(1).unwrap();
        assert_eq!(m.surface.sections().len(), 9);
        assert_eq!(m.surface.curves().len(), 6);
        let xg = m.surface.section_by_name("Xg").unwrap();
        let xg = m.surface.section(xg);
        assert_eq!(xg.genus, 0);
        assert_eq!(xg.ports.len(), 2);
        assert!(build_rg(0).is_err());
    }

    #[test]
    fn euler_coefficients() {
        let m = build_rg(3).unwrap();
        let f = euler_functional(&m.surface);
        let coeff = |name: &str| f.coefficients[m.surface.section_by_name(name).unwrap().0];
        assert_eq!(coeff("P"), -1);
        assert_eq!(coeff("Xg"), -4);
        for a in ["A1", "U1", "V1", "A'", "U2", "V2", "A2"] {
            assert_eq!(coeff(a), 0, "{a}");
        }
    }

    #[test]
    fn measure_family_tables() {
        assert_eq!(fgn_measure(2, 1).unwrap().weights().to_vec(), vec![1, 1, 0, 1, 0, 1, 1, 0, 1]);
        assert_eq!(fgn_measure(5, 2).unwrap().weights().to_vec(), vec![2, 2, 0, 1, 1, 0, 1, 1, 2]);
        assert_eq!(fgn_measure(1, 6).unwrap().weights().to_vec(), vec![6, 6, 4, 1, 1, 4, 1, 5, 6]);
        assert!(fgn_measure(0, 1).is_err());
        assert!(fgn_measure(1, 0).is_err());
    }

    #[test]
    fn families_are_valid_across_the_grid() {
        for g in 1..=6 {
            let m = build_rg(g).unwrap();
            for n in 1..=12 {
                let w = fgn_measure(g, n).unwrap();
                assert!(is_invariant_measure(&m.surface, &w), "g={g} n={n}");
                assert_eq!(
                    euler_functional(&m.surface).evaluate(&w),
                    2 - 2 * g as i64 - n as i64,
                    "g={g} n={n}"
                );
            }
        }
    }

    #[test]
    fn subfamily_members_share_the_pairing_structure() {
        let base = build_rg(2).unwrap();
        let m0 = build_rgi(2, 0, 3).unwrap();
        let spec0 = m0.surface.to_spec();
        let mut base_spec = base.surface.to_spec();
        // Identical apart from name and metadata.
        base_spec.name = spec0.name.clone();
        base_spec.meta = spec0.meta.clone();
        assert_eq!(base_spec, spec0);
        assert_eq!(m0.surface.meta.get("i").map(String::as_str), Some("0"));

        let m3 = build_rgi(2, 3, 3).unwrap();
        assert!(m3.surface.section_by_name("U2^3").is_some());
        assert!(m3.surface.section_by_name("U2").is_none());
        assert_eq!(m3.surface.meta.get("i").map(String::as_str), Some("3"));
        assert_eq!(m3.surface.meta.get("s").map(String::as_str), Some("3"));
        assert_eq!(m3.subfamily, Some((3, 3)));

        assert!(build_rgi(2, 4, 3).is_err());
    }

    #[test]
    fn subfamily_measure_cones_agree() {
        let a = build_rg(1).unwrap();
        let b = build_rgi(1, 2, 3).unwrap();
        let cone_a: Vec<Vec<u64>> =
            enumerate_measures(&a.surface, 3, &[]).iter().map(|m| m.weights().to_vec()).collect();
        let cone_b: Vec<Vec<u64>> =
            enumerate_measures(&b.surface, 3, &[]).iter().map(|m| m.weights().to_vec()).collect();
        assert_eq!(cone_a, cone_b);
        assert!(!cone_a.is_empty());
    }

    #[test]
    fn grid_rows_and_csv() {
        let rows = verify_grid((1, 2), (1, 3), None).unwrap();
        assert_eq!(rows.len(), 6);
        assert!(rows.iter().all(|r| r.pass));

        let rows = verify_grid((2, 2), (4, 4), None).unwrap();
        assert_eq!(rows[0].report.euler, -6);

        let rows = verify_grid((2, 1), (1, 3), None).unwrap();
        assert!(rows.is_empty());

        let csv = grid_csv(&verify_grid((1, 1), (1, 1), None).unwrap());
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), "g,n,euler,boundary,components,orientable,genus,separating,pass");
        assert_eq!(lines.next().unwrap(), "1,1,-1,1,1,true,1,false,true");

        let csv = grid_csv(&verify_grid((1, 1), (1, 1), Some(1)).unwrap());
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), "g,n,i,euler,boundary,components,orientable,genus,separating,pass");
        assert_eq!(lines.next().unwrap(), "1,1,0,-1,1,1,true,1,false,true");
        assert_eq!(lines.next().unwrap(), "1,1,1,-1,1,1,true,1,false,true");
    }

    #[test]
    fn family_grid_passes() {
        let rows = verify_grid((1, 2), (1, 4), Some(3)).unwrap();
        assert_eq!(rows.len(), 2 * 4 * 4);
        assert!(rows.iter().all(|r| r.pass));
    }
}
