//! Human-readable and JSON reports for `compare`.

use cvmem::analysis::{fidelity_criterion, ideal_criterion, CriterionVerdict};
use cvmem::compare;

use crate::config::RunConfig;

fn verdict_line(name: &str, v: &CriterionVerdict) -> String {
    if !v.applicable {
        return format!(
            "{name}: not applicable (needs q-noise only, equal losses, mild thermal asymmetry)\n"
        );
    }
    match v.prefer_entanglement {
        Some(true) if v.margin == 0.0 => format!(
            "{name}: applicable, margin 0 — either storage choice is optimal\n"
        ),
        Some(true) => format!(
            "{name}: applicable, prefers storing entanglement (margin = {:+.6})\n",
            v.margin
        ),
        _ => format!(
            "{name}: applicable, prefers storing squeezing (margin = {:+.6})\n",
            v.margin
        ),
    }
}

pub fn compare_text(cfg: &RunConfig) -> Result<String, String> {
    let channel = cfg.spec.channel(cfg.convention);
    let pair = compare(&cfg.input, &channel).map_err(|e| e.to_string())?;
    let (ma, mb) = (&pair.metrics_a, &pair.metrics_b);

    let mut out = String::new();
    out.push_str(&format!(
        "input state: s = {}, N1 = {}, N2 = {} (assumption {})\n",
        cfg.input.s,
        cfg.input.n1,
        cfg.input.n2,
        if cfg.input.assumption_holds() { "holds" } else { "violated" }
    ));
    out.push_str(&format!(
        "channel [{}]: xi = ({:.6}, {:.6}), y_q = ({:.6}, {:.6}), y_p = ({:.6}, {:.6})\n",
        cfg.convention.name(),
        channel.xi1(),
        channel.xi2(),
        channel.y_q1(),
        channel.y_q2(),
        channel.y_p1(),
        channel.y_p2(),
    ));
    if !channel.is_physical() {
        out.push_str("warning: channel violates the physicality bound xi^2 >= 1 - sqrt(y_q*y_p)\n");
    }
    out.push_str(&format!(
        "store entanglement: E_N = {:.6} ebits, F = {:.6}, nu = {:.6} ({})\n",
        ma.log_neg,
        ma.fidelity,
        ma.nu_tilde,
        if ma.nu_tilde < 1.0 { "entangled" } else { "separable" }
    ));
    out.push_str(&format!(
        "store squeezing:    E_N = {:.6} ebits, F = {:.6}, nu = {:.6} ({})\n",
        mb.log_neg,
        mb.fidelity,
        mb.nu_tilde,
        if mb.nu_tilde < 1.0 { "entangled" } else { "separable" }
    ));
    out.push_str(&format!(
        "delta E_N (squeezing - entanglement) = {:+.6} ebits\n",
        pair.delta_logneg
    ));
    out.push_str(&format!(
        "delta F_bar (threshold-clamped)      = {:+.6}\n",
        pair.delta_fidelity
    ));
    if pair.delta_logneg.abs() < 1e-12 && pair.delta_fidelity.abs() < 1e-12 {
        out.push_str("the two storage choices are equivalent for this configuration\n");
    }
    out.push_str(&verdict_line(
        "entanglement criterion",
        &ideal_criterion(&cfg.input, &channel),
    ));
    out.push_str(&verdict_line(
        "fidelity criterion",
        &fidelity_criterion(&cfg.input, &channel),
    ));
    Ok(out)
}

pub fn compare_json(cfg: &RunConfig) -> Result<String, String> {
    let channel = cfg.spec.channel(cfg.convention);
    let pair = compare(&cfg.input, &channel).map_err(|e| e.to_string())?;
    let verdict = |v: &CriterionVerdict| {
        serde_json::json!({
            "applicable": v.applicable,
            "prefer_entanglement": v.prefer_entanglement,
            "margin": v.margin,
        })
    };
    let doc = serde_json::json!({
        "convention": cfg.convention.name(),
        "input_state": { "s": cfg.input.s, "n1": cfg.input.n1, "n2": cfg.input.n2 },
        "channel": {
            "xi1": channel.xi1(), "xi2": channel.xi2(),
            "y_q1": channel.y_q1(), "y_p1": channel.y_p1(),
            "y_q2": channel.y_q2(), "y_p2": channel.y_p2(),
            "physical": channel.is_physical(),
        },
        "store_entanglement": {
            "nu_tilde": pair.metrics_a.nu_tilde,
            "log_negativity_ebits": pair.metrics_a.log_neg,
            "fidelity": pair.metrics_a.fidelity,
        },
        "store_squeezing": {
            "nu_tilde": pair.metrics_b.nu_tilde,
            "log_negativity_ebits": pair.metrics_b.log_neg,
            "fidelity": pair.metrics_b.fidelity,
        },
        "delta_log_negativity_ebits": pair.delta_logneg,
        "delta_fidelity_clamped": pair.delta_fidelity,
        "entanglement_criterion": verdict(&ideal_criterion(&cfg.input, &channel)),
        "fidelity_criterion": verdict(&fidelity_criterion(&cfg.input, &channel)),
    });
    serde_json::to_string_pretty(&doc)
        .map(|s| s + "\n")
        .map_err(|e| e.to_string())
}
