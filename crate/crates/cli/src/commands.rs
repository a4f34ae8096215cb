use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use qmc_core::calculus::{check, distribution, sample_outcome, Distribution, ProofNode, RuleApp, Sequent};
use qmc_core::parser::{parse_circuit, parse_proof, render_proof, render_script, Format, ProofScript};
use qmc_core::translate::{circuit_prefix, circuit_to_proof, proof_to_circuit, Circuit, Mode, TranslateError};
use qmc_core::{Int, Report};

use crate::{Output, RenderFormat, Target, EXIT_INVALID, EXIT_USAGE};

enum Input {
    Circuit(Circuit),
    Script(ProofScript<Int>),
}

/// Reads and parses a file by extension; the error is a finished `Output`.
fn load(path: &Path) -> Result<Input, Output> {
    let ext = path.extension().and_then(|e| e.to_str()).unwrap_or("");
    if ext != "qc" && ext != "qmc" {
        return Err(Output::fail(
            EXIT_USAGE,
            String::new(),
            format!("{}: expected a .qc or .qmc file", path.display()),
        ));
    }
    let bytes =
        fs::read(path).map_err(|e| Output::fail(EXIT_USAGE, String::new(), format!("{}: {e}", path.display())))?;
    let text = String::from_utf8(bytes)
        .map_err(|_| Output::fail(EXIT_USAGE, String::new(), format!("{}: not valid UTF-8", path.display())))?;
    let positioned =
        |e: qmc_core::parser::SourceError| Output::fail(EXIT_USAGE, String::new(), format!("{}:{e}", path.display()));
    if ext == "qc" {
        parse_circuit(&text).map(Input::Circuit).map_err(positioned)
    } else {
        parse_proof(&text).map(Input::Script).map_err(positioned)
    }
}

fn load_script(path: &Path) -> Result<ProofScript<Int>, Output> {
    match load(path)? {
        Input::Script(s) => Ok(s),
        Input::Circuit(_) => {
            Err(Output::fail(EXIT_USAGE, String::new(), format!("{}: expected a .qmc proof script", path.display())))
        }
    }
}

fn report_text(report: &Report) -> String {
    let mut out = String::new();
    for n in &report.nodes {
        match &n.finding {
            None => writeln!(out, "ok   {} {}", n.location(), n.rule),
            Some(f) => writeln!(out, "FAIL {} {}: {f}", n.location(), n.rule),
        }
        .expect("writing to a String");
    }
    for (path, x) in &report.assumptions {
        writeln!(out, "assumption {}: prep {x}", qmc_core::calculus::path_string(path)).expect("writing to a String");
    }
    out
}

fn unused_warnings(script: &ProofScript<Int>) -> String {
    script.unused_bindings().iter().map(|b| format!("warning: binding `{b}` is never used\n")).collect()
}

/// Elaborates and checks a script; an invalid proof becomes an exit-1 output.
fn checked_proof(path: &Path) -> Result<(ProofScript<Int>, ProofNode<Int>), Output> {
    let script = load_script(path)?;
    let proof = script.to_proof();
    let report = check(&proof);
    if !report.is_valid() {
        let n = report.failures().count();
        return Err(Output::fail(
            EXIT_INVALID,
            report_text(&report),
            format!("{}: {n} invalid node(s)", path.display()),
        ));
    }
    Ok((script, proof))
}

pub fn cmd_check(path: &Path) -> Output {
    let script = match load_script(path) {
        Ok(s) => s,
        Err(o) => return o,
    };
    let report = check(&script.to_proof());
    let mut stdout = report_text(&report);
    let stderr = unused_warnings(&script);
    if report.is_valid() {
        stdout.push_str("valid\n");
        Output { code: 0, stdout, stderr }
    } else {
        let failures: Vec<String> = report.failures().map(|n| n.location()).collect();
        let _ = writeln!(stdout, "invalid: {} node(s) failed ({})", failures.len(), failures.join(", "));
        Output { code: EXIT_INVALID, stdout, stderr }
    }
}

fn dist_text(d: &Distribution<Int>) -> String {
    d.iter().map(|(x, p)| format!("{x} {p} {:?}\n", p.to_f64())).collect()
}

pub fn cmd_dist(path: &Path) -> Output {
    let state = match load(path) {
        Err(o) => return o,
        Ok(Input::Circuit(c)) => match circuit_prefix::<Int>(&c) {
            Ok(p) => p.conclusion.state().clone(),
            Err(e) => return Output::fail(EXIT_INVALID, String::new(), e),
        },
        Ok(Input::Script(_)) => match checked_proof(path) {
            Err(o) => return o,
            Ok((_, p)) => match &p.conclusion {
                Sequent::Coherent(s) | Sequent::BornAnnotated { state: s, .. } => s.clone(),
                Sequent::Measured { .. } => {
                    return Output::fail(EXIT_INVALID, String::new(), "the proof already ends in a measurement")
                }
            },
        },
    };
    match distribution(&state) {
        Ok(d) => Output::ok(dist_text(&d)),
        Err(e) => Output::fail(EXIT_INVALID, String::new(), e),
    }
}

fn script_name(path: &Path) -> String {
    path.file_stem().and_then(|s| s.to_str()).unwrap_or("proof").replace(|c: char| !c.is_ascii_alphanumeric(), "_")
}

pub fn cmd_run(path: &Path, seed: u64) -> Output {
    let born = match load(path) {
        Err(o) => return o,
        Ok(Input::Circuit(c)) => {
            if !c.measured() {
                return Output::fail(EXIT_INVALID, String::new(), "circuit has no `measure`");
            }
            match circuit_prefix::<Int>(&c).and_then(|p| Ok(ProofNode::derive(RuleApp::BornRule, vec![p])?)) {
                Ok(b) => b,
                Err(e) => return Output::fail(EXIT_INVALID, String::new(), e),
            }
        }
        Ok(Input::Script(_)) => match checked_proof(path) {
            Err(o) => return o,
            Ok((_, p)) if matches!(p.conclusion, Sequent::BornAnnotated { .. }) => p,
            Ok(_) => return Output::fail(EXIT_INVALID, String::new(), "the proof must end in BR"),
        },
    };
    let Sequent::BornAnnotated { dist, .. } = &born.conclusion else { unreachable!("root is BR") };
    let (outcome, prob) = sample_outcome(dist, seed).expect("a normalized state has outcomes");
    let proof =
        ProofNode::derive(RuleApp::Measure(outcome.clone()), vec![born]).expect("sampled outcome is in the support");
    Output::ok(format!("outcome {outcome} p={prob}\n\n{}", render_script(&proof, &script_name(path))))
}

/// An error after which nothing has been written.
fn translate_error(e: TranslateError) -> Output {
    Output::fail(EXIT_INVALID, String::new(), e)
}

pub fn cmd_translate(path: &Path, to: Target, seed: Option<u64>, out_dir: Option<&Path>) -> Output {
    let input = match load(path) {
        Ok(i) => i,
        Err(o) => return o,
    };
    let dir =
        out_dir.map(Path::to_path_buf).unwrap_or_else(|| path.parent().map(Path::to_path_buf).unwrap_or_default());
    let stem = script_name(path);
    let files: Vec<(PathBuf, String)> = match (input, to) {
        (Input::Circuit(c), Target::Proof) => {
            let mode = seed.map_or(Mode::Enumerate, Mode::Sample);
            let proofs = match circuit_to_proof::<Int>(&c, mode) {
                Ok(p) => p,
                Err(e) => return translate_error(e),
            };
            proofs
                .iter()
                .map(|p| {
                    let name = match &p.rule {
                        RuleApp::Measure(x) => format!("{stem}_{}", x.digits()),
                        _ => stem.clone(),
                    };
                    (dir.join(format!("{name}.qmc")), render_script(p, &name))
                })
                .collect()
        }
        (Input::Script(_), Target::Circuit) => {
            let proof = match checked_proof(path) {
                Ok((_, p)) => p,
                Err(o) => return o,
            };
            match proof_to_circuit(&proof) {
                Ok(c) => vec![(dir.join(format!("{stem}.qc")), c.to_string())],
                Err(e) => return translate_error(e),
            }
        }
        (Input::Circuit(_), Target::Circuit) => {
            return Output::fail(EXIT_USAGE, String::new(), "input is already a circuit; use --to proof")
        }
        (Input::Script(_), Target::Proof) => {
            return Output::fail(EXIT_USAGE, String::new(), "input is already a proof; use --to circuit")
        }
    };
    let mut written = Vec::new();
    for (file, contents) in &files {
        if let Err(e) = fs::write(file, contents) {
            for w in &written {
                let _ = fs::remove_file(w);
            }
            return Output::fail(EXIT_USAGE, String::new(), format!("{}: {e}", file.display()));
        }
        written.push(file.clone());
    }
    Output::ok(written.iter().map(|w| format!("wrote {}\n", w.display())).collect())
}

pub fn cmd_render(path: &Path, format: RenderFormat) -> Output {
    let script = match load_script(path) {
        Ok(s) => s,
        Err(o) => return o,
    };
    let format = match format {
        RenderFormat::Ascii => Format::Ascii,
        RenderFormat::Latex => Format::Latex,
    };
    Output::ok(render_proof(&script.to_proof(), format))
}
