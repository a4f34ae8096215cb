use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;

use crate::amplitude::ExactReal;
use crate::calculus::{Distribution, ProofNode, RuleApp, Sequent};
use crate::scalar::Coeff;
use crate::state::to_latex;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Ascii,
    Latex,
}

pub fn render_proof<C: Coeff>(p: &ProofNode<C>, format: Format) -> String {
    match format {
        Format::Ascii => render_ascii(p),
        Format::Latex => render_latex(p),
    }
}

fn ascii_rule<C>(node: &ProofNode<C>) -> String {
    match &node.rule {
        RuleApp::Prep(x) if node.premises.is_empty() => format!("Prep {x} (assumed)"),
        RuleApp::Tensor => "tensor".to_string(),
        other => other.to_string(),
    }
}

/// Conclusion first, then `by RULE` and the premises, indented two spaces
/// per level. Ax leaves carry no `by` line, so a lone axiom is `|0> =>`.
pub fn render_ascii<C: Coeff>(p: &ProofNode<C>) -> String {
    fn go<C: Coeff>(node: &ProofNode<C>, depth: usize, out: &mut String) {
        let pad = "  ".repeat(depth);
        let _ = writeln!(out, "{pad}{}", node.conclusion);
        if node.rule == RuleApp::Ax && node.premises.is_empty() {
            return;
        }
        let _ = writeln!(out, "{pad}  by {}", ascii_rule(node));
        for premise in &node.premises {
            go(premise, depth + 1, out);
        }
    }
    let mut out = String::new();
    go(p, 0, &mut out);
    out
}

fn latex_dist<C: Coeff>(d: &Distribution<C>) -> String {
    let mut out = String::new();
    for (i, (outcome, p)) in d.iter().enumerate() {
        if i > 0 {
            out.push_str(" + ");
        }
        if *p != ExactReal::one() {
            out.push_str(&p.to_latex());
        }
        let _ = write!(out, "\\ket{{{}}}", outcome.digits());
    }
    out
}

fn latex_sequent<C: Coeff>(s: &Sequent<C>) -> String {
    match s {
        Sequent::Coherent(state) => format!("{} \\Rightarrow", to_latex(state)),
        Sequent::BornAnnotated { state, dist } => format!("{} \\Rightarrow {}", to_latex(state), latex_dist(dist)),
        Sequent::Measured { state, outcome, prob } => {
            format!("{} \\vdash_{{{}}} \\ket{{{}}}", to_latex(state), prob.to_latex(), outcome.digits())
        }
    }
}

fn latex_label(rule: &RuleApp) -> String {
    match rule {
        RuleApp::Ax => "(Ax)".into(),
        RuleApp::Prep(_) => "(Prep)".into(),
        RuleApp::Tensor => "(\\otimes)".into(),
        RuleApp::Unitary(app) => {
            let wires: Vec<String> = app.wires().iter().map(|w| w.to_string()).collect();
            format!("(\\mathbf{{{}}}_{{{}}})", app.gate().name(), wires.join(","))
        }
        RuleApp::BornRule => "(BR)".into(),
        RuleApp::Measure(_) => "(M)".into(),
        RuleApp::Weaken(_) => "(LWeak)".into(),
    }
}

/// A bussproofs `prooftree`, one inference per rule application.
pub fn render_latex<C: Coeff>(p: &ProofNode<C>) -> String {
    fn go<C: Coeff>(node: &ProofNode<C>, out: &mut String) {
        if node.premises.is_empty() {
            out.push_str("\\AxiomC{}\n");
        }
        for premise in &node.premises {
            go(premise, out);
        }
        let _ = writeln!(out, "\\LeftLabel{{${}$}}", latex_label(&node.rule));
        let inf = match node.premises.len() {
            0 | 1 => "UnaryInfC",
            2 => "BinaryInfC",
            _ => "TrinaryInfC",
        };
        let _ = writeln!(out, "\\{inf}{{${}$}}", latex_sequent(&node.conclusion));
    }
    let mut out = String::from("\\begin{prooftree}\n");
    go(p, &mut out);
    out.push_str("\\end{prooftree}\n");
    out
}

fn is_ident(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn prefix(rule: &RuleApp) -> &'static str {
    match rule {
        RuleApp::Ax => "a",
        RuleApp::Prep(_) => "p",
        RuleApp::Tensor => "t",
        RuleApp::Unitary(_) => "g",
        RuleApp::BornRule => "b",
        RuleApp::Measure(_) => "m",
        RuleApp::Weaken(_) => "w",
    }
}

/// Canonical script text: one line per node in premises-first order, each
/// with its stored conclusion as a claim. Node labels are reused as binding
/// names when they are valid and distinct.
pub fn render_script<C: Coeff>(p: &ProofNode<C>, name: &str) -> String {
    let mut counts: HashMap<&str, usize> = HashMap::new();
    p.walk(&mut |n| {
        if let Some(l) = n.label.as_deref().filter(|l| is_ident(l)) {
            *counts.entry(l).or_default() += 1;
        }
    });
    let reserved: HashSet<String> = counts.into_iter().filter(|&(_, n)| n == 1).map(|(l, _)| l.to_string()).collect();
    let mut taken: HashSet<String> = HashSet::new();
    let mut counter = 0usize;
    let mut lines = Vec::new();
    fn go<C: Coeff>(
        node: &ProofNode<C>,
        reserved: &HashSet<String>,
        taken: &mut HashSet<String>,
        counter: &mut usize,
        lines: &mut Vec<String>,
    ) -> String {
        let args: Vec<String> = node.premises.iter().map(|q| go(q, reserved, taken, counter, lines)).collect();
        let name = match &node.label {
            Some(l) if reserved.contains(l) && !taken.contains(l) => l.clone(),
            _ => loop {
                let candidate = format!("{}{}", prefix(&node.rule), *counter);
                *counter += 1;
                if !reserved.contains(&candidate) && !taken.contains(&candidate) {
                    break candidate;
                }
            },
        };
        taken.insert(name.clone());
        let expr = match &node.rule {
            RuleApp::Ax => "ax".to_string(),
            RuleApp::Prep(x) => match args.first() {
                Some(a) => format!("prep {x} {a}"),
                None => format!("prep {x}"),
            },
            RuleApp::Tensor => format!("tensor {}", args.join(" ")),
            RuleApp::Unitary(app) => {
                let wires: Vec<String> = app.wires().iter().map(|w| w.to_string()).collect();
                format!("gate {} [{}] {}", app.gate().name(), wires.join(","), args.join(" "))
            }
            RuleApp::BornRule => format!("born {}", args.join(" ")),
            RuleApp::Measure(x) => format!("measure {} outcome={x}", args.join(" ")),
            RuleApp::Weaken(x) => format!("weaken {} {x}", args.join(" ")),
        };
        lines.push(format!("  {name} = {expr} : {};", node.conclusion));
        name
    }
    go(p, &reserved, &mut taken, &mut counter, &mut lines);
    let name = if is_ident(name) { name } else { "p" };
    format!("proof {name} {{\n{}\n}}\n", lines.join("\n"))
}
