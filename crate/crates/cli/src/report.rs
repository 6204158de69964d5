//! Text views of the JSON reports. The JSON is the contract; these mirror
//! its content one field at a time for terminal reading.

use digicover::harness::HarnessSummary;
use digicover::image::DigitalImage;
use digicover::map::DigitalMap;
use digicover::suite::{AssertionReport, AssertionVerdict, PaperReport, SuiteReport};
use digicover::{suite_passes, ClassVerdict, UlpReport, Witness};

fn describe_all(image: &DigitalImage, idx: &[usize]) -> String {
    let names: Vec<String> = idx.iter().map(|&i| image.describe(i)).collect();
    format!("[{}]", names.join(", "))
}

pub fn verdict_text(p: &DigitalMap, verdict: &ClassVerdict) -> String {
    let mut out = format!(
        "{}: {} (continuous: {}, surjective: {})\n",
        verdict.kind.name(),
        if verdict.holds { "holds" } else { "FAILS" },
        verdict.continuous,
        verdict.surjective
    );
    match &verdict.witness {
        Witness::Decomposition { decomposition } => {
            out.push_str(&format!(
                "  decomposition verified at {} base points\n",
                decomposition.len()
            ));
        }
        Witness::Violation(v) => {
            let mut parts = Vec::new();
            if let Some(b) = v.base {
                parts.push(format!("base {}", p.target().describe(b)));
            }
            if let Some(x) = v.source {
                parts.push(format!("source {}", p.source().describe(x)));
            }
            out.push_str(&format!(
                "  violation at {}, condition {} ({}), points {}\n",
                parts.join(", "),
                v.condition,
                v.reason.name(),
                describe_all(p.source(), &v.points)
            ));
        }
    }
    out
}

pub fn ulp_text(p: &DigitalMap, report: &UlpReport) -> String {
    let holds = match report.holds {
        digicover::UlpHolds::True => "true".to_string(),
        digicover::UlpHolds::False => "false".to_string(),
        digicover::UlpHolds::Inconclusive => "inconclusive".to_string(),
    };
    let mut out = format!(
        "unique path lifting (length <= {}): {holds}\n",
        report.max_length_checked
    );
    if let Some(ce) = &report.counterexample {
        let base: Vec<String> = ce.base_path.iter().map(|&b| p.target().describe(b)).collect();
        out.push_str(&format!(
            "  counterexample: base {} from {} has {} lifts\n",
            base.join(" -> "),
            p.source().describe(ce.start),
            ce.lift_count
        ));
    }
    out
}

pub fn assertion_text(p: &DigitalMap, report: &AssertionReport) -> String {
    let mut out = format!(
        "Assertion 3.10-1 on the window n={} q={} (union of fiber neighborhoods vs preimage of N(b)):\n",
        report.n, report.q
    );
    for row in &report.per_b {
        let taint = if row.boundary_tainted {
            " [boundary-tainted]"
        } else {
            ""
        };
        if row.equal {
            out.push_str(&format!(
                "  b={}: equal{}\n",
                p.target().describe(row.b),
                taint
            ));
        } else {
            out.push_str(&format!(
                "  b={}: DIFFERS at {}{}\n",
                p.target().describe(row.b),
                describe_all(p.source(), &row.diff),
                taint
            ));
        }
    }
    let verdict = match report.verdict {
        AssertionVerdict::HoldsOnWindow => "assertion_holds_on_window",
        AssertionVerdict::FailsOnWindow => "assertion_fails_on_window",
        AssertionVerdict::Inconclusive => "inconclusive",
    };
    out.push_str(&format!("  verdict: {verdict}\n"));
    out
}

pub fn harness_text(summary: &HarnessSummary) -> String {
    let mut out = format!(
        "Equivalence harness (Theorems 2.6/3.2/3.5, Prop. 2.6): max_points={} samples={} seed={}\n",
        summary.max_points, summary.samples, summary.seed
    );
    out.push_str(&format!(
        "  {} instances ({} exhaustive over {} images, {} sampled): {} agreements, {} divergences\n",
        summary.instances_checked,
        summary.exhaustive_maps,
        summary.exhaustive_images,
        summary.sampled_maps,
        summary.agreements,
        summary.divergences.len()
    ));
    for d in &summary.divergences {
        out.push_str(&format!("  DIVERGENCE: {}\n", d.violated.join(", ")));
    }
    out
}

pub fn suite_text(report: &SuiteReport) -> String {
    let p = digicover::build_window_map(report.n, report.q).expect("report parameters are valid");
    let mut out = format!("== window map n={} q={} ==\n", report.n, report.q);
    match &report.assertion {
        Some(a) => out.push_str(&assertion_text(&p, a)),
        None => out.push_str("Assertion 3.10-1: skipped (needs q >= 3)\n"),
    }
    out.push_str("Corollary 3.11:\n");
    out.push_str(&indent(&verdict_text(&p, &report.corollary_3_11.wl_iso)));
    out.push_str(&format!(
        "  surjective: {}\n",
        report.corollary_3_11.surjective
    ));
    out.push_str(&indent(&verdict_text(&p, &report.corollary_3_11.han_pseudo)));
    out.push_str(&indent(&ulp_text(&p, &report.corollary_3_11.ulp)));
    out.push_str("Pseudocovering separation:\n");
    out.push_str(&indent(&verdict_text(&p, &report.pak_separation.pak_pseudo)));
    out.push_str(&indent(&verdict_text(&p, &report.pak_separation.covering)));
    out.push_str(&harness_text(&report.equivalences));
    out.push_str(&format!(
        "result: {}\n",
        if suite_passes(report) { "PASS" } else { "FAIL" }
    ));
    out
}

pub fn paper_text(report: &PaperReport) -> String {
    let mut out = String::new();
    for run in &report.runs {
        out.push_str(&suite_text(run));
        out.push('\n');
    }
    let passed = report.runs.iter().filter(|r| suite_passes(r)).count();
    out.push_str(&format!("{} of {} runs passed\n", passed, report.runs.len()));
    out
}

fn indent(text: &str) -> String {
    text.lines().map(|l| format!("  {l}\n")).collect()
}
