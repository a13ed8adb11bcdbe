//! Table rendering for atlas reports: markdown (grouped rows, one per
//! automorphism orbit of components) and CSV (flat, one row per
//! component).

use gsa_core::congruence::Verdict;

use crate::atlas::{mono_label, widths_exponent_format, AtlasReport, GroupingMode};

fn verdict_cell(v: Verdict) -> &'static str {
    match v {
        Verdict::Congruence => "cng",
        Verdict::Noncongruence => "ncng",
        Verdict::SkippedCap => "cap",
    }
}

fn cert_cell(certs: &[String]) -> String {
    if certs.is_empty() {
        return "-".into();
    }
    let mut codes = Vec::new();
    for c in certs {
        if c.contains("criterion A") {
            codes.push("A");
        } else if c.contains("monodromic") {
            codes.push("M");
        } else {
            codes.push("?");
        }
    }
    codes.join(",")
}

/// Markdown table; exact rows when automorphism generators were supplied,
/// heuristic buckets otherwise.
pub fn markdown(report: &AtlasReport) -> String {
    let mut out = String::new();
    out.push_str(&format!("# {} — atlas\n\n", report.spec));
    if !report.two_generated {
        out.push_str(&format!(
            "order {}: not 2-generated; the atlas is empty\n",
            report.order
        ));
        return out;
    }
    out.push_str(&format!(
        "order {}, {} generating-pair classes, {} components\n\n",
        report.order,
        report.class_count,
        report.rows.len()
    ));
    let exact = report.grouping_mode == GroupingMode::Exact;
    let m_col = if exact { "m" } else { "components" };
    let mon_col = if exact { "AbsMon" } else { "Mon" };
    out.push_str(&format!(
        "| {m_col} | d | c2 | c3 | -I | cusp widths | g | Hig | level | e | f | c/nc | certs | {mon_col} |\n"
    ));
    out.push_str(
        "|---|---|----|----|----|-------------|---|-----|-------|---|---|------|-------|-----|\n",
    );
    for group in &report.grouped {
        let first = &report.rows[group.member_ids[0]];
        let sig = &first.signature;
        let mut labels: Vec<&str> = group
            .member_ids
            .iter()
            .map(|&i| report.rows[i].higman_label.as_str())
            .collect();
        labels.sort_unstable();
        let e = first
            .congruence
            .degree_e
            .map(|e| e.to_string())
            .unwrap_or_else(|| "-".into());
        let f = first
            .congruence
            .deficiency_f
            .map(|f| f.to_string())
            .unwrap_or_else(|| "-".into());
        let mono = match (&group.abs_monodromy, exact) {
            (Some(mi), true) => mono_label(mi),
            _ => mono_label(&first.monodromy),
        };
        out.push_str(&format!(
            "| {} | {} | {} | {} | {} | {} | {} | {} | {} | {} | {} | {} | {} | {} |\n",
            group.m,
            sig.d,
            sig.c2,
            sig.c3,
            sig.minus_i as u8,
            widths_exponent_format(&sig.cusp_widths),
            sig.genus,
            labels.join(","),
            sig.level,
            e,
            f,
            verdict_cell(first.congruence.verdict),
            cert_cell(&first.congruence.certificates),
            mono,
        ));
    }
    out.push('\n');
    if !exact {
        out.push_str(
            "grouping is heuristic (identical signature and Higman order); supply @aut=... for exact multiplicities\n",
        );
    }
    out.push_str(
        "Higman labels are artifact-canonical: only the order and the class size are comparable to external tables\n",
    );
    out
}

/// Flat CSV, one row per component.
pub fn csv(report: &AtlasReport) -> String {
    let mut out = String::from(
        "id,d,c2,c3,minus_i,cusp_widths,genus,level,higman_order,higman_class_size,higman_label,e,f,verdict,totally_noncongruence,certificates,monodromy_class,monodromy_domain\n",
    );
    for row in &report.rows {
        let sig = &row.signature;
        let widths: Vec<String> = sig.cusp_widths.iter().map(|w| w.to_string()).collect();
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
            row.id,
            sig.d,
            sig.c2,
            sig.c3,
            sig.minus_i as u8,
            widths.join(";"),
            sig.genus,
            sig.level,
            row.higman_order,
            row.higman_class_size,
            row.higman_label,
            row.congruence.degree_e.map(|e| e.to_string()).unwrap_or_default(),
            row.congruence.deficiency_f.map(|f| f.to_string()).unwrap_or_default(),
            row.congruence.verdict,
            row.congruence.totally_noncongruence,
            row.congruence.certificates.join(";"),
            row.monodromy.classification,
            row.monodromy.domain_size,
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atlas::{run_atlas, AtlasConfig};
    use crate::spec::parse_group_spec;

    #[test]
    fn markdown_d10_with_auts() {
        let report = run_atlas(
            &parse_group_spec("D:10@aut=natural").unwrap(),
            &AtlasConfig::default(),
        )
        .unwrap();
        let md = markdown(&report);
        assert!(md.contains("| 2 | 3 | 1 | 0 | 1 | 1^1 2^1 | 0 | 5A,5B | 2 | 3 | 1 | cng | - | S3 |"));
    }

    #[test]
    fn csv_has_one_row_per_component() {
        let report = run_atlas(
            &parse_group_spec("An:5").unwrap(),
            &AtlasConfig::default(),
        )
        .unwrap();
        let text = csv(&report);
        assert_eq!(text.lines().count(), 1 + 3);
    }
}
