//! `qsv demo stern-gerlach`: spin-1/2 prepared along +z, queried about x.

use std::fmt::Write as _;

use qsv_core::hilbert::{StateVector, C64};
use qsv_core::logic::{bind, parse, Binding};
use qsv_core::spin;
use qsv_core::valuation::{evaluate, Semantics, TruthStatus, ValuationReport};
use qsv_core::Settings;
use serde::Serialize;

use crate::{to_json, Failure, Output, EXIT_OK};

#[derive(Serialize)]
struct Coefficient {
    basis_state: &'static str,
    /// `⟨basis|z+⟩` as `[re, im]`
    amplitude: [f64; 2],
    modulus: f64,
}

#[derive(Serialize)]
struct Reading {
    name: &'static str,
    claim: &'static str,
    report: ValuationReport,
    verdict: String,
}

#[derive(Serialize)]
struct DemoReport {
    state: &'static str,
    expansion: Vec<Coefficient>,
    bivalent: Vec<ValuationReport>,
    supervaluation: Vec<ValuationReport>,
    classical_readings: Vec<Reading>,
}

fn report(text: &str, b: &Binding, v: &StateVector, sem: Semantics, s: &Settings) -> Result<ValuationReport, Failure> {
    let f = parse(text).map_err(Failure::runtime)?;
    let bf = bind(f, b).map_err(Failure::runtime)?;
    evaluate(v, &bf, sem, s).map_err(Failure::runtime)
}

fn build(settings: &Settings) -> Result<DemoReport, Failure> {
    let b = spin::spin_binding();
    let up = spin::builtin_state("z+").map_err(Failure::runtime)?;
    let expansion = ["x+", "x-"]
        .into_iter()
        .map(|name| {
            let c: C64 = spin::builtin_state(name).map_err(Failure::runtime)?.inner(&up);
            Ok(Coefficient {
                basis_state: name,
                amplitude: [c.re, c.im],
                modulus: c.norm(),
            })
        })
        .collect::<Result<Vec<_>, Failure>>()?;

    let mut bivalent = Vec::new();
    for atom in ["Z+", "Z-", "X+", "X-"] {
        bivalent.push(report(atom, &b, &up, Semantics::Bivalent, settings)?);
    }
    let mut supervaluation = Vec::new();
    for text in ["Z+", "X+", "X-", "X+ ^ X-", "X+ | X-"] {
        supervaluation.push(report(text, &b, &up, Semantics::Super, settings)?);
    }

    let conj = report("X+ & X-", &b, &up, Semantics::Super, settings)?;
    let conj_verdict = if conj.status() == Some(TruthStatus::False) {
        "fails: X+ & X- compiles to the zero projector and is False, yet Z+ is True in this state"
    } else {
        "unexpected: the conjunction did not come out False"
    };
    let xor = report("X+ ^ X-", &b, &up, Semantics::Super, settings)?;
    let xor_verdict = if xor.status() == Some(TruthStatus::True) {
        "survives only as a whole: X+ ^ X- is True while X+ and X- are both Gap, \
         so it cannot be read as knowing which x outcome obtains alongside Z+"
    } else {
        "unexpected: the exclusive disjunction did not come out True"
    };
    let classical_readings = vec![
        Reading {
            name: "conjunction",
            claim: "Z+ holds because X+ and X- both hold",
            report: conj,
            verdict: conj_verdict.into(),
        },
        Reading {
            name: "exclusive-disjunction",
            claim: "Z+ holds because exactly one of X+, X- holds",
            report: xor,
            verdict: xor_verdict.into(),
        },
    ];

    Ok(DemoReport {
        state: "z+",
        expansion,
        bivalent,
        supervaluation,
        classical_readings,
    })
}

fn render(r: &DemoReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "state: |{}>", r.state);
    let _ = writeln!(out, "expansion in the x basis:");
    for c in &r.expansion {
        let _ = writeln!(
            out,
            "  <{}|z+> = {:.12} {:+.12}i   |c| = {:.12}",
            c.basis_state, c.amplitude[0], c.amplitude[1], c.modulus
        );
    }
    let _ = writeln!(out, "bivalent:");
    for rep in &r.bivalent {
        let _ = writeln!(out, "  {:<8} {}", rep.formula, rep.outcome);
    }
    let _ = writeln!(out, "supervaluation:");
    for rep in &r.supervaluation {
        let _ = writeln!(out, "  {:<8} {}", rep.formula, rep.outcome);
    }
    let _ = writeln!(out, "classical readings of Z+:");
    for reading in &r.classical_readings {
        let _ = writeln!(out, "  {}: {}", reading.name, reading.claim);
        let _ = writeln!(out, "    {} = {}", reading.report.formula, reading.report.outcome);
        if let Some(op) = &reading.report.operator {
            let _ = writeln!(out, "    operator:");
            for line in op.to_string().lines() {
                let _ = writeln!(out, "      {line}");
            }
        }
        let _ = writeln!(out, "    {}", reading.verdict);
    }
    out
}

pub fn cmd_demo_stern_gerlach(json: bool, settings: &Settings) -> Result<Output, Failure> {
    let r = build(settings)?;
    let text = if json { to_json(&r)? } else { render(&r) };
    Ok(Output { text, code: EXIT_OK })
}
