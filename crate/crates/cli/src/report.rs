//! Text and JSON renderings of command results. Both are built from the
//! same data so the two modes cannot disagree.

use std::fmt::Write as _;

use fuzzy2d_core::oracle::Corpus;
use fuzzy2d_core::{Formula, ProofTree, TruthPair, Valuation, Verdict};
use serde_json::{json, Value};

use crate::{Ctx, Oracle, Output};

pub struct Report {
    pub code: u8,
    json: Value,
    text: String,
    /// Text goes to stderr (errors).
    stderr: bool,
    /// Already one JSON document per line.
    jsonl: bool,
}

fn mode_name(ctx: &Ctx) -> &'static str {
    match ctx.cfg.mode {
        fuzzy2d_core::Mode::Branching => "branching",
        fuzzy2d_core::Mode::Linear => "linear",
    }
}

fn header(command: &str, ctx: &Ctx, f: &Formula) -> serde_json::Map<String, Value> {
    let mut m = serde_json::Map::new();
    m.insert("command".into(), command.into());
    m.insert("logic".into(), ctx.logic.name().into());
    m.insert("filter".into(), json!(ctx.filter));
    m.insert("formula".into(), f.to_string().into());
    m
}

fn write_proofs(out: &mut String, proofs: &[ProofTree]) {
    for (i, p) in proofs.iter().enumerate() {
        let _ = writeln!(out, "tableau {} of {} ({} leaves)", i + 1, proofs.len(), p.leaves());
        out.push_str(&p.render_text());
    }
}

impl Report {
    pub fn print(&self, output: Output) {
        match output {
            Output::Json if self.jsonl => print!("{}", self.text),
            Output::Json => println!("{}", serde_json::to_string_pretty(&self.json).expect("serializable")),
            Output::Text if self.stderr => eprint!("{}", self.text),
            Output::Text => print!("{}", self.text),
        }
    }

    fn new(code: u8, json: Value, text: String) -> Self {
        Report {
            code,
            json,
            text,
            stderr: false,
            jsonl: false,
        }
    }

    pub fn error(e: &anyhow::Error) -> Self {
        let message = format!("{e:#}");
        Report {
            code: 2,
            json: json!({ "error": message }),
            text: format!("error: {message}\n"),
            stderr: true,
            jsonl: false,
        }
    }

    /// `check` and `entail`.
    pub fn verdict(command: &str, ctx: &Ctx, premises: &[Formula], f: &Formula, v: &Verdict) -> Self {
        let entail = command == "entail";
        let mut m = header(command, ctx, f);
        m.insert("mode".into(), mode_name(ctx).into());
        if entail {
            m.insert("premises".into(), premises.iter().map(|p| p.to_string()).collect::<Vec<_>>().into());
        }
        let mut text = String::new();
        let what = if entail {
            let gamma: Vec<String> = premises.iter().map(|p| p.to_string()).collect();
            format!("{{{}}} |= {f}", gamma.join(", "))
        } else {
            f.to_string()
        };
        let code = match v {
            Verdict::Valid { proofs } => {
                let word = if entail { "entailed" } else { "valid" };
                m.insert("verdict".into(), word.into());
                m.insert("proofs".into(), proofs.iter().map(ProofTree::to_json).collect::<Vec<_>>().into());
                let _ = writeln!(text, "{word}: {what} in {} at filter {}", ctx.logic, ctx.filter);
                write_proofs(&mut text, proofs);
                0
            }
            Verdict::Invalid {
                countermodel,
                value,
                proof,
            } => {
                let word = if entail { "not entailed" } else { "invalid" };
                m.insert("verdict".into(), word.replace(' ', "-").into());
                m.insert("countermodel".into(), json!(countermodel));
                m.insert("value".into(), json!(value));
                let _ = writeln!(text, "{word}: {what} in {} at filter {}", ctx.logic, ctx.filter);
                let _ = writeln!(text, "countermodel: {countermodel}");
                let _ = writeln!(text, "value: {value}");
                if ctx.cfg.explain {
                    m.insert("tableau".into(), proof.to_json());
                    text.push_str(&proof.render_text());
                }
                1
            }
        };
        Report::new(code, Value::Object(m), text)
    }

    pub fn eval(ctx: &Ctx, f: &Formula, value: &TruthPair, designated: bool) -> Self {
        let mut m = header("eval", ctx, f);
        m.insert("value".into(), json!(value));
        m.insert("designated".into(), designated.into());
        let not = if designated { "" } else { "not " };
        let text = format!("{value}, {not}designated at filter {}\n", ctx.filter);
        Report::new(0, Value::Object(m), text)
    }

    pub fn nnf(ctx: &Ctx, f: &Formula, g: &Formula) -> Self {
        let mut m = header("nnf", ctx, f);
        m.remove("filter");
        m.insert("nnf".into(), g.to_string().into());
        Report::new(0, Value::Object(m), format!("{g}\n"))
    }

    pub fn family(family: &str, n: usize, f: &Formula) -> Self {
        let json = json!({ "command": "gen", "family": family, "n": n, "formula": f.to_string() });
        Report::new(0, json, format!("{f}\n"))
    }

    pub fn corpus(c: &Corpus) -> Self {
        Report {
            code: 0,
            json: Value::Null,
            text: c.to_jsonl(),
            stderr: false,
            jsonl: true,
        }
    }

    pub fn oracle(ctx: &Ctx, f: &Formula, v: &Verdict, exhaustive: &Oracle, sampled: Option<&Valuation>) -> Self {
        let mut m = header("oracle", ctx, f);
        let mut text = String::new();
        let valid = v.is_valid();
        let word = if valid { "valid" } else { "invalid" };
        m.insert("tableau".into(), word.into());
        let _ = writeln!(text, "tableau: {word} in {} at filter {}", ctx.logic, ctx.filter);
        if let Some(c) = v.countermodel() {
            m.insert("countermodel".into(), json!(c));
            let _ = writeln!(text, "  countermodel: {c}");
        }
        let mut agree = sampled.is_none() || !valid;
        match exhaustive {
            Oracle::Godel(ok) => {
                agree &= *ok == valid;
                m.insert("exhaustive".into(), json!({ "kind": "godel-grid", "valid": ok }));
                let w = if *ok { "valid" } else { "invalid" };
                let _ = writeln!(text, "grid oracle: {w}");
            }
            Oracle::Luk(den, refutation) => {
                agree &= !(valid && refutation.is_some());
                m.insert(
                    "exhaustive".into(),
                    json!({ "kind": "luk-grid", "den": den, "refutation": refutation }),
                );
                match refutation {
                    Some(r) => {
                        let _ = writeln!(text, "grid refuter (den {den}): {r}");
                    }
                    None => {
                        let _ = writeln!(text, "grid refuter (den {den}): nothing found");
                    }
                }
            }
        }
        m.insert(
            "sample".into(),
            json!({ "trials": ctx.trials, "seed": ctx.seed, "refutation": sampled }),
        );
        match sampled {
            Some(r) => {
                let _ = writeln!(text, "sampler ({} trials): {r}", ctx.trials);
            }
            None => {
                let _ = writeln!(text, "sampler ({} trials): nothing found", ctx.trials);
            }
        }
        m.insert("agree".into(), agree.into());
        let code = if !agree {
            text.push_str("DISAGREEMENT between the tableau and the oracles\n");
            2
        } else if valid {
            0
        } else {
            1
        };
        Report::new(code, Value::Object(m), text)
    }
}
