//! Text rendering of a bounds report. Numeric content matches the JSON output
//! exactly; only layout and optional ANSI bold differ.

use plumb_bounds::BoundsReport;

fn bold(s: &str, color: bool) -> String {
    if color {
        format!("\x1b[1m{s}\x1b[0m")
    } else {
        s.to_string()
    }
}

pub fn render_text(report: &BoundsReport, color: bool) -> String {
    let mut out = String::new();
    let input = &report.input;
    let mut head = format!("input: {}", input.kind);
    if let Some(fixture) = &input.fixture {
        head.push_str(&format!(" (fixture {fixture})"));
    }
    if let Some(word) = &input.word {
        let shown = if word.is_empty() { "<empty>" } else { word.as_str() };
        head.push_str(&format!(" \"{shown}\""));
    }
    if let Some(strands) = input.strands {
        head.push_str(&format!(" ({strands} strands)"));
    }
    head.push_str(&format!("   s={}  c={}  l={}\n", input.s, input.c, input.l));
    out.push_str(&head);

    out.push_str("bounds:\n");
    for entry in &report.bounds {
        let quantity = entry.name.split('_').next().unwrap_or(&entry.name);
        out.push_str(&format!(
            "  {:<4} <= {:<4} {:<20} [{}]  {}\n",
            quantity, entry.value, entry.name, entry.formula, entry.note
        ));
    }

    let best = format!(
        "best:  bk <= {}   fp <= {}   fpbk <= {}",
        report.best.bk, report.best.fp, report.best.fpbk
    );
    out.push_str(&bold(&best, color));
    out.push('\n');

    let genus = &report.genus;
    out.push_str(&format!("genus: g_diagram={}  l={}", genus.g_diagram, genus.l));
    match (genus.exact_bk, &genus.reason) {
        (Some(exact), Some(reason)) => {
            out.push_str(&format!("  exact bk = {exact} ({reason})"));
        }
        _ => out.push_str("  exact bk unknown"),
    }
    out.push('\n');

    let mut flags = vec![format!("fpbk policy {}", report.flags.fpbk_policy)];
    if report.flags.fpbk_policy_ambiguity {
        flags.push("fpbk value not certified (min-bound reading)".to_string());
    }
    if report.flags.possibly_trivial {
        flags.push("fp < 3: the link is trivial".to_string());
    }
    out.push_str(&format!("flags: {}\n", flags.join("; ")));
    out
}
