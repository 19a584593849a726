//! Report assembly and emission. One schema, two surfaces: stable
//! human-ordered text, and versioned JSON whose certificates carry full
//! element literals so they can be re-checked without this tool.

use crate::config::{Format, Session};
use hurwitz_core::annihilate::InsulatorCertificate;
use hurwitz_core::literal::{format_elem, format_poly};
use hurwitz_core::primetest::{ModeVerdict, PrimeWitness, PrimenessReport};
use hurwitz_core::{Elem, FiniteRing, HPoly};
use serde_json::{json, Value};

pub const SCHEMA_VERSION: u32 = 1;

/// Payload of one command: the JSON value plus the text lines, built side
/// by side so both surfaces stay in step.
pub struct Payload {
    pub json: Value,
    pub text: Vec<String>,
}

pub struct Report {
    pub command: String,
    pub payload: Payload,
    pub caveats: Vec<String>,
}

const TEXT_MEMBER_LIMIT: usize = 24;

pub fn lit(ring: &FiniteRing, e: Elem) -> String {
    format_elem(ring, e)
}

pub fn lits(ring: &FiniteRing, members: &[Elem]) -> Vec<String> {
    members.iter().map(|&e| format_elem(ring, e)).collect()
}

pub fn poly_lits(ring: &FiniteRing, polys: &[HPoly]) -> Vec<String> {
    polys.iter().map(|p| format_poly(ring, p)).collect()
}

/// Comma-joined member list for text output, elided past a fixed count.
pub fn members_text(ring: &FiniteRing, members: &[Elem]) -> String {
    let shown: Vec<String> = members
        .iter()
        .take(TEXT_MEMBER_LIMIT)
        .map(|&e| format_elem(ring, e))
        .collect();
    if members.len() > TEXT_MEMBER_LIMIT {
        format!(
            "{} ... (+{} more)",
            shown.join(", "),
            members.len() - TEXT_MEMBER_LIMIT
        )
    } else {
        shown.join(", ")
    }
}

pub fn certificate_json(ring: &FiniteRing, c: &InsulatorCertificate) -> Value {
    json!({
        "side": c.side.name(),
        "members": lits(ring, &c.members),
        "cardinality": c.cardinality,
        "annihilator_is_zero": c.annihilator_is_zero,
        "fallback_full_set": c.fallback_full_set,
    })
}

pub fn witness_json(ring: &FiniteRing, w: &PrimeWitness) -> Value {
    json!({
        "side": w.side.name(),
        "generator": w.generator.map(|g| lit(ring, g)),
        "ideal_members": lits(ring, &w.ideal_members),
        "ideal_size": w.ideal_members.len(),
        "annihilating": lit(ring, w.annihilating),
        "orbit_index": w.orbit_index,
        "verified_all_orbit": w.verified_all_orbit,
    })
}

pub fn witness_text(ring: &FiniteRing, w: &PrimeWitness) -> String {
    let gen = match w.generator {
        Some(g) => format!("ideal generated by {}", lit(ring, g)),
        None => "ideal".to_string(),
    };
    let orbit_note = match w.verified_all_orbit {
        Some(true) => "; annihilates every orbit image".to_string(),
        Some(false) => "; does not annihilate every orbit image".to_string(),
        None => String::new(),
    };
    format!(
        "{gen} = {{{}}} ({} elements); annihilating element {} at k = {}{orbit_note}",
        members_text(ring, &w.ideal_members),
        w.ideal_members.len(),
        lit(ring, w.annihilating),
        w.orbit_index,
    )
}

pub fn mode_json(ring: &FiniteRing, m: &ModeVerdict) -> Value {
    json!({
        "mode": m.mode.number(),
        "verdict": m.verdict,
        "ideals_checked": m.ideals_checked,
        "exhaustive": m.exhaustive,
        "witness": m.witness.as_ref().map(|w| witness_json(ring, w)),
    })
}

pub fn primeness_json(ring: &FiniteRing, rep: &PrimenessReport) -> Value {
    json!({
        "question": rep.question,
        "side": rep.side.name(),
        "verdict": rep.verdict,
        "modes": rep.modes.iter().map(|m| mode_json(ring, m)).collect::<Vec<_>>(),
        "panel_agreement": rep.panel_agreement,
        "witness": rep.witness.as_ref().map(|w| witness_json(ring, w)),
        "certificates": rep.certificates.iter().map(|c| certificate_json(ring, c)).collect::<Vec<_>>(),
        "orbit_max_len": rep.orbit_max_len,
        "mono_consistent": rep.mono_consistent,
        "gen_size": rep.gen_size,
    })
}

pub fn primeness_text(ring: &FiniteRing, rep: &PrimenessReport) -> Vec<String> {
    let mut lines = vec![
        format!("question: {}", rep.question),
        format!("verdict: {}", rep.verdict),
    ];
    for m in &rep.modes {
        let scope = if m.exhaustive { "exhaustive" } else { "generator-bounded" };
        lines.push(format!(
            "mode {} ({} ideals, {scope}): {}",
            m.mode.number(),
            m.ideals_checked,
            m.verdict
        ));
    }
    if let Some(agree) = rep.panel_agreement {
        lines.push(format!("panel agreement: {agree}"));
    }
    if let Some(w) = &rep.witness {
        lines.push(format!("witness: {}", witness_text(ring, w)));
    }
    for c in &rep.certificates {
        lines.push(format!(
            "certificate ({}, size {}): {{{}}}",
            c.side.name(),
            c.cardinality,
            members_text(ring, &c.members)
        ));
    }
    if let Some(orbit) = rep.orbit_max_len {
        lines.push(format!("longest ideal orbit: {orbit}"));
    }
    if let Some(mc) = rep.mono_consistent {
        lines.push(format!("monomorphism consistency: {mc}"));
    }
    lines
}

/// Full report as a JSON value.
pub fn report_json(session: &Session, report: &Report) -> Value {
    let ring = &session.ring;
    let (eventual, nstar) = session.alpha.eventual_image();
    json!({
        "schema_version": SCHEMA_VERSION,
        "command": report.command,
        "ring": {
            "key": ring.key(),
            "family": ring.family().name(),
            "size": ring.size(),
            "characteristic": ring.characteristic(),
        },
        "alpha": {
            "selector": session.alpha_name,
            "monomorphism": session.alpha.is_monomorphism(),
            "stabilization_index": nstar,
            "eventual_image_size": eventual.len(),
        },
        "seed": session.seed,
        "result": report.payload.json,
        "caveats": report.caveats,
    })
}

/// Render to the session's format; returns the bytes for stdout.
pub fn emit(session: &Session, report: &Report, elapsed_ms: Option<u128>) -> String {
    match session.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&report_json(session, report))
                .expect("report serializes");
            s.push('\n');
            s
        }
        Format::Text => {
            let ring = &session.ring;
            let (eventual, nstar) = session.alpha.eventual_image();
            let mut lines = vec![
                format!("schema_version: {SCHEMA_VERSION}"),
                format!("command: {}", report.command),
                format!(
                    "ring: {} | family {} | elements {} | characteristic {}",
                    ring.key(),
                    ring.family().name(),
                    ring.size(),
                    ring.characteristic()
                ),
                format!(
                    "alpha: {} | monomorphism {} | stabilization index {} | eventual image size {}",
                    session.alpha_name,
                    session.alpha.is_monomorphism(),
                    nstar,
                    eventual.len()
                ),
                format!("seed: {}", session.seed),
            ];
            lines.extend(report.payload.text.iter().cloned());
            for c in &report.caveats {
                lines.push(format!("caveat: {c}"));
            }
            if let Some(ms) = elapsed_ms {
                lines.push(format!("elapsed_ms: {ms}"));
            }
            let mut s = lines.join("\n");
            s.push('\n');
            s
        }
    }
}
