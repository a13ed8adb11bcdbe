//! The atlas pipeline: enumerate generating-pair classes, decompose into
//! components, and compute per-component signature, Higman invariant,
//! stabilizer matrices, congruence verdict, certificates, and monodromy,
//! plus the grouping of components under the automorphism action.

use std::sync::Arc;

use rayon::prelude::*;

use gsa_core::congruence::{self, CongruenceReport, Verdict};
use gsa_core::epi::EpiContext;
use gsa_core::error::{Error, Result};
use gsa_core::group::AltSym;
use gsa_core::mcg::{self, AbsGrouping, ComponentSignature, MonodromyInfo, OrbitComponent};

use crate::spec::{resolve, GroupSpec, ResolvedGroup};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Tier {
    Standard,
    Stretch,
}

#[derive(Clone, Debug)]
pub struct AtlasConfig {
    /// Bound on the exact-test modulus 2l; above it a component reports
    /// certificates only.
    pub congruence_cap: u64,
    pub max_group_order: u64,
    pub pair_budget: u64,
    pub tier: Tier,
}

impl Default for AtlasConfig {
    fn default() -> Self {
        AtlasConfig {
            congruence_cap: 512,
            max_group_order: 200_000,
            pair_budget: 20_000_000,
            tier: Tier::Standard,
        }
    }
}

impl AtlasConfig {
    pub fn stretch() -> Self {
        AtlasConfig {
            congruence_cap: 512,
            max_group_order: 1_000_000,
            pair_budget: u64::MAX,
            tier: Tier::Stretch,
        }
    }
}

/// One component row of the report.
#[derive(Clone, Debug)]
pub struct ComponentRow {
    pub id: usize,
    pub signature: ComponentSignature,
    pub higman_label: String,
    pub higman_order: u64,
    pub higman_class_size: u64,
    pub congruence: CongruenceReport,
    pub monodromy: MonodromyInfo,
}

/// A grouped row: one orbit of components under the automorphism action,
/// or one heuristic bucket when no automorphisms are available.
#[derive(Clone, Debug)]
pub struct GroupedRow {
    pub member_ids: Vec<usize>,
    pub m: usize,
    /// Fiber size of the folded component (None in heuristic mode).
    pub abs_degree: Option<u64>,
    pub abs_monodromy: Option<MonodromyInfo>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroupingMode {
    /// Orbits of supplied automorphism generators.
    Exact,
    /// Same signature + Higman order only; an upper bound, flagged.
    Heuristic,
}

#[derive(Debug)]
pub struct AtlasReport {
    pub spec: String,
    pub order: String,
    pub two_generated: bool,
    pub class_count: u64,
    pub rows: Vec<ComponentRow>,
    pub grouping_mode: GroupingMode,
    pub grouped: Vec<GroupedRow>,
}

/// Runs the full pipeline for a parsed spec.
pub fn run_atlas(spec: &GroupSpec, config: &AtlasConfig) -> Result<AtlasReport> {
    let ResolvedGroup {
        group,
        auts,
        auts_available,
    } = resolve(spec)?;
    match group.order_u64() {
        Some(n) if n <= config.max_group_order => {}
        _ => {
            return Err(Error::CapExceeded(format!(
                "group order {} exceeds cap {}",
                group.order(),
                config.max_group_order
            )))
        }
    }
    let order = group.order().to_string();
    let group = Arc::new(group);
    let ctx = EpiContext::new(Arc::clone(&group), config.max_group_order)?;
    let classes = ctx.enumerate(config.pair_budget)?;
    if classes.is_empty() {
        return Ok(AtlasReport {
            spec: spec.raw.clone(),
            order,
            two_generated: false,
            class_count: 0,
            rows: Vec::new(),
            grouping_mode: if auts_available {
                GroupingMode::Exact
            } else {
                GroupingMode::Heuristic
            },
            grouped: Vec::new(),
        });
    }
    let comps = mcg::decompose_components(&ctx, &classes);
    let rows: Vec<ComponentRow> = comps
        .par_iter()
        .enumerate()
        .map(|(id, comp)| component_row(id, comp, &ctx, &classes, config))
        .collect::<Result<Vec<_>>>()?;

    // orbit partition: component degrees sum to the fiber size
    let total: u64 = rows.iter().map(|r| r.signature.d).sum();
    if total != classes.len() as u64 {
        return Err(Error::InternalConsistency(format!(
            "component degrees sum to {total}, expected {}",
            classes.len()
        )));
    }

    let (grouping_mode, grouped) = if auts_available {
        let grouping = mcg::abs_components(&ctx, &classes, &comps, &auts)?;
        let groups = match grouping {
            AbsGrouping::Exact(groups) => groups,
            AbsGrouping::Heuristic(_) => unreachable!("auts supplied"),
        };
        let grouped = groups
            .into_iter()
            .map(|g| GroupedRow {
                m: g.members.len(),
                member_ids: g.members,
                abs_degree: Some(g.abs_degree),
                abs_monodromy: Some(g.monodromy),
            })
            .collect();
        (GroupingMode::Exact, grouped)
    } else {
        let sigs: Vec<ComponentSignature> =
            rows.iter().map(|r| r.signature.clone()).collect();
        let orders: Vec<u64> = rows.iter().map(|r| r.higman_order).collect();
        let grouped = mcg::heuristic_grouping(&sigs, &orders)
            .into_iter()
            .map(|members| GroupedRow {
                m: members.len(),
                member_ids: members,
                abs_degree: None,
                abs_monodromy: None,
            })
            .collect();
        (GroupingMode::Heuristic, grouped)
    };

    Ok(AtlasReport {
        spec: spec.raw.clone(),
        order,
        two_generated: true,
        class_count: classes.len() as u64,
        rows,
        grouping_mode,
        grouped,
    })
}

fn component_row(
    id: usize,
    comp: &OrbitComponent,
    ctx: &EpiContext,
    classes: &[gsa_core::epi::EpiClass],
    config: &AtlasConfig,
) -> Result<ComponentRow> {
    let pm = mcg::plus_minus_space(comp)?;
    let signature = mcg::signature_from_pm(comp, &pm)?;
    let higman = ctx.higman(&classes[comp.points[0]])?;
    // Higman constancy across the component
    for &g in comp.points.iter().skip(1) {
        let h = ctx.higman(&classes[g])?;
        if h.class_index != higman.class_index {
            return Err(Error::InternalConsistency(
                "Higman invariant varies within a component".into(),
            ));
        }
    }
    let monodromy = mcg::monodromy_summary(&pm)?;
    let mut certificates = Vec::new();
    for &g in &comp.points {
        if let Some(cert) = congruence::criterion_a(ctx.group(), &classes[g]) {
            certificates.push(cert);
            break;
        }
    }
    if let Some(cert) = congruence::monodromic_certificate(&monodromy) {
        certificates.push(cert);
    }
    let mats: Vec<mcg::Mat2> = mcg::stabilizer_matrices(comp)
        .into_iter()
        .map(|g| g.matrix)
        .collect();
    let congruence = congruence::congruence_verdict(
        &signature,
        &mats,
        config.congruence_cap,
        certificates,
    )?;
    // a certificate may never coexist with a congruence verdict
    if congruence.verdict == Verdict::Congruence && !congruence.certificates.is_empty() {
        return Err(Error::InternalConsistency(
            "noncongruence certificate on a congruence component".into(),
        ));
    }
    Ok(ComponentRow {
        id,
        signature,
        higman_label: higman.label,
        higman_order: higman.ramification_index,
        higman_class_size: higman.class_size,
        congruence,
        monodromy,
    })
}

/// Render helper shared by the table formats.
pub fn widths_exponent_format(widths: &[u64]) -> String {
    let mut out = String::new();
    let mut i = 0;
    while i < widths.len() {
        let w = widths[i];
        let mut count = 0;
        while i < widths.len() && widths[i] == w {
            count += 1;
            i += 1;
        }
        if !out.is_empty() {
            out.push(' ');
        }
        out.push_str(&format!("{w}^{count}"));
    }
    out
}

pub fn mono_label(mi: &MonodromyInfo) -> String {
    match mi.classification {
        AltSym::Alt => format!("A{}", mi.domain_size),
        AltSym::Sym => format!("S{}", mi.domain_size),
        AltSym::Other => format!("other({})", mi.domain_size),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spec::parse_group_spec;

    #[test]
    fn d8_atlas_row() {
        let spec = parse_group_spec("D:8").unwrap();
        let report = run_atlas(&spec, &AtlasConfig::default()).unwrap();
        assert!(report.two_generated);
        assert_eq!(report.rows.len(), 1);
        let row = &report.rows[0];
        assert_eq!(row.signature.d, 6);
        assert_eq!(row.signature.cusp_widths, vec![2, 2, 2]);
        assert_eq!(row.higman_order, 2);
        assert_eq!(row.higman_label, "2A");
        assert_eq!(row.congruence.verdict, Verdict::Congruence);
        assert_eq!(row.congruence.degree_e, Some(6));
    }

    #[test]
    fn not_two_generated_file_group() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("z2cubed.perm");
        std::fs::write(
            &path,
            "(1 2)(3 4)(5 6)(7 8)\n(1 3)(2 4)(5 7)(6 8)\n(1 5)(2 6)(3 7)(4 8)\n",
        )
        .unwrap();
        let spec = parse_group_spec(&format!("perm:{}", path.display())).unwrap();
        let report = run_atlas(&spec, &AtlasConfig::default()).unwrap();
        assert!(!report.two_generated);
        assert!(report.rows.is_empty());
    }

    #[test]
    fn cap_exceeded() {
        let spec = parse_group_spec("Sn:9").unwrap();
        let config = AtlasConfig {
            max_group_order: 1000,
            ..AtlasConfig::default()
        };
        assert!(matches!(
            run_atlas(&spec, &config),
            Err(Error::CapExceeded(_))
        ));
    }

    #[test]
    fn widths_format() {
        assert_eq!(widths_exponent_format(&[1, 2]), "1^1 2^1");
        assert_eq!(widths_exponent_format(&[3, 3, 4, 6]), "3^2 4^1 6^1");
        assert_eq!(widths_exponent_format(&[2, 2, 2]), "2^3");
    }
}
