//! Report emission. Reports never include timing, so identical runs give
//! identical bytes.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use ordcalc_core::arith::{format_ratio, Ratio};
use ordcalc_core::FiniteGroup;

use crate::census::Census;
use crate::error::AppError;
use crate::spec::class_text;
use crate::sweep::SweepReport;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Tsv,
}

fn ratio_list(ratios: &BTreeMap<Ratio, u64>) -> String {
    let parts: Vec<String> = ratios.iter().map(|(q, n)| format!("{}:{n}", format_ratio(q))).collect();
    if parts.is_empty() {
        "-".into()
    } else {
        parts.join(" ")
    }
}

fn check_list(r: &SweepReport) -> String {
    r.checks.iter().map(|c| c.name()).collect::<Vec<_>>().join(",")
}

/// The group lets violation records name elements, not only indices.
pub fn text(reports: &[(&SweepReport, &FiniteGroup)], census: Option<&Census>) -> String {
    let mut s = String::new();
    for (r, g) in reports {
        let t = &r.tally;
        let _ = writeln!(s, "group {}", r.group);
        let _ = writeln!(s, "  order {}", r.order);
        let _ = writeln!(s, "  class {}", class_text(r.class));
        let _ = writeln!(s, "  checks {}", check_list(r));
        match r.sampled {
            Some(k) => {
                let _ = writeln!(s, "  pairs {} sampled of {}", t.pairs, (r.order as u64).pow(2));
                debug_assert_eq!(k as u64, t.pairs);
            }
            None => {
                let _ = writeln!(s, "  pairs {}", t.pairs);
            }
        }
        let _ = writeln!(s, "  ratios {}", ratio_list(&t.ratios));
        if !t.cases.is_empty() {
            let parts: Vec<String> = t.cases.iter().map(|(c, n)| format!("{c}:{n}")).collect();
            let _ = writeln!(s, "  class2-cases {}", parts.join(" "));
        }
        if r.checks.contains(&crate::checks::Check::HallCorollary) {
            let _ = writeln!(s, "  hall-corollary {}", if r.hall_regular { "applies" } else { "vacuous" });
        }
        if t.center_examined > 0 {
            let _ = writeln!(s, "  center-power finer-bound {}/{}", t.center_finer, t.center_examined);
        }
        let _ = writeln!(s, "  violations {}", t.violations.len());
        for v in &t.violations {
            let _ = writeln!(
                s,
                "  violation {} a=#{} {} b=#{} {}: {}",
                v.check,
                v.a.0,
                g.element(v.a),
                v.b.0,
                g.element(v.b),
                v.detail
            );
        }
    }
    if let Some(census) = census {
        let _ = writeln!(s, "census");
        for (class, set) in census {
            let _ = writeln!(s, "  class {class} ratios {}", ratio_list(set));
        }
    }
    let total: usize = reports.iter().map(|(r, _)| r.tally.violations.len()).sum();
    let _ = writeln!(s, "total-violations {total}");
    s
}

/// One `summary` row per group, then one `violation` row per violation, then
/// one `census` row per class.
pub fn tsv(reports: &[(&SweepReport, &FiniteGroup)], census: Option<&Census>) -> Result<String, AppError> {
    let mut w = csv::WriterBuilder::new().delimiter(b'\t').flexible(true).from_writer(Vec::new());
    let io = |e: csv::Error| AppError::Io(std::io::Error::other(e));
    w.write_record(["record", "group", "order", "class", "checks", "pairs", "sampled", "violations", "ratios"]).map_err(io)?;
    for (r, _) in reports {
        w.write_record([
            "summary".to_string(),
            r.group.clone(),
            r.order.to_string(),
            class_text(r.class),
            check_list(r),
            r.tally.pairs.to_string(),
            if r.sampled.is_some() { "yes" } else { "no" }.to_string(),
            r.tally.violations.len().to_string(),
            ratio_list(&r.tally.ratios),
        ])
        .map_err(io)?;
    }
    for (r, g) in reports {
        for v in &r.tally.violations {
            w.write_record([
                "violation".to_string(),
                r.group.clone(),
                v.check.to_string(),
                format!("#{}", v.a.0),
                g.element(v.a).to_string(),
                format!("#{}", v.b.0),
                g.element(v.b).to_string(),
                v.detail.clone(),
            ])
            .map_err(io)?;
        }
    }
    if let Some(census) = census {
        for (class, set) in census {
            w.write_record(["census".to_string(), String::new(), String::new(), class.to_string(), String::new(), String::new(), String::new(), String::new(), ratio_list(set)])
                .map_err(io)?;
        }
    }
    let bytes = w.into_inner().map_err(|e| AppError::Io(std::io::Error::other(e.to_string())))?;
    Ok(String::from_utf8(bytes).expect("utf-8 fields"))
}
