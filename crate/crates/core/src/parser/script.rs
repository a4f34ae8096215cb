use std::collections::{HashMap, HashSet};

use super::expr::{sequent, Cursor};
use super::lexer::{lex, Tok, Token};
use super::SourceError;
use crate::amplitude::ExactReal;
use crate::calculus::{apply_rule, ProofNode, RuleApp, Sequent};
use crate::gates::{GateApplication, GateKind};
use crate::scalar::Coeff;
use crate::state::{ket, BasisState};

/// The right-hand side of a binding. Premises are referred to by name.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Ax,
    /// `prep |x>` alone is an assumption; `prep |x> m` consumes a measurement.
    Prep {
        ket: BasisState,
        premise: Option<String>,
    },
    Tensor(String, String),
    Gate {
        app: GateApplication,
        premise: String,
    },
    Born(String),
    Measure {
        premise: String,
        outcome: BasisState,
    },
    Weaken {
        premise: String,
        ket: BasisState,
    },
}

impl Expr {
    pub fn premises(&self) -> Vec<&str> {
        match self {
            Expr::Ax | Expr::Prep { premise: None, .. } => vec![],
            Expr::Prep { premise: Some(p), .. } => vec![p],
            Expr::Tensor(l, r) => vec![l, r],
            Expr::Gate { premise, .. }
            | Expr::Born(premise)
            | Expr::Measure { premise, .. }
            | Expr::Weaken { premise, .. } => vec![premise],
        }
    }

    pub fn rule(&self) -> RuleApp {
        match self {
            Expr::Ax => RuleApp::Ax,
            Expr::Prep { ket, .. } => RuleApp::Prep(ket.clone()),
            Expr::Tensor(..) => RuleApp::Tensor,
            Expr::Gate { app, .. } => RuleApp::Unitary(app.clone()),
            Expr::Born(_) => RuleApp::BornRule,
            Expr::Measure { outcome, .. } => RuleApp::Measure(outcome.clone()),
            Expr::Weaken { ket, .. } => RuleApp::Weaken(ket.clone()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Binding<C> {
    pub name: String,
    pub expr: Expr,
    /// The conclusion written after `:`, if any.
    pub claim: Option<Sequent<C>>,
    pub line: usize,
    pub column: usize,
}

/// A parsed script. Every premise refers to an earlier binding and no binding
/// is consumed twice; the last binding is the root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofScript<C> {
    pub name: String,
    pub bindings: Vec<Binding<C>>,
}

impl<C: Coeff> ProofScript<C> {
    /// Bindings other than the root that no line consumes.
    pub fn unused_bindings(&self) -> Vec<&str> {
        let used: HashSet<&str> = self.bindings.iter().flat_map(|b| b.expr.premises()).collect();
        let n = self.bindings.len();
        self.bindings[..n.saturating_sub(1)]
            .iter()
            .map(|b| b.name.as_str())
            .filter(|name| !used.contains(name))
            .collect()
    }

    /// Builds the proof tree rooted at the last binding.
    ///
    /// A line with a claim stores the claim. A line without one stores the
    /// conclusion its rule computes; when the rule does not apply, it stores
    /// the evident intended conclusion so the checker reports the failure at
    /// that line and nowhere else.
    pub fn to_proof(&self) -> ProofNode<C> {
        let mut nodes: HashMap<&str, ProofNode<C>> = HashMap::new();
        let mut last = None;
        for b in &self.bindings {
            let premises: Vec<ProofNode<C>> =
                b.expr.premises().iter().map(|p| nodes.remove(p).expect("validated at parse time")).collect();
            let rule = b.expr.rule();
            let conclusion = match &b.claim {
                Some(c) => c.clone(),
                None => {
                    let stored: Vec<Sequent<C>> = premises.iter().map(|p| p.conclusion.clone()).collect();
                    apply_rule(&rule, &stored).unwrap_or_else(|_| nominal(&rule, &stored))
                }
            };
            let node = ProofNode::claimed(rule, premises, conclusion).with_label(b.name.clone());
            last = Some(b.name.as_str());
            nodes.insert(&b.name, node);
        }
        nodes.remove(last.expect("scripts have at least one line")).expect("root is bound")
    }
}

fn nominal<C: Coeff>(rule: &RuleApp, premises: &[Sequent<C>]) -> Sequent<C> {
    let fallback = || premises.first().map(|p| Sequent::Coherent(p.state().clone()));
    match rule {
        RuleApp::Weaken(x) => match premises.first() {
            Some(p) => crate::state::tensor(p.state(), &ket(x))
                .map(Sequent::Coherent)
                .unwrap_or_else(|_| Sequent::Coherent(p.state().clone())),
            None => Sequent::Coherent(ket(x)),
        },
        RuleApp::Prep(x) => Sequent::Coherent(ket(x)),
        RuleApp::Measure(x) => match premises.first() {
            Some(p) => Sequent::Measured { state: p.state().clone(), outcome: x.clone(), prob: ExactReal::zero() },
            None => Sequent::Coherent(ket(x)),
        },
        _ => fallback().unwrap_or_else(|| Sequent::Coherent(ket(&BasisState::zeros(1).expect("one qubit")))),
    }
}

struct Parser {
    cur: Cursor,
}

impl Parser {
    fn binding<C: Coeff>(&mut self) -> Result<(Binding<C>, Vec<Token>), SourceError> {
        let name = self.cur.expect_ident("a binding name")?;
        self.cur.expect_punct('=')?;
        let head = self.cur.expect_ident("a rule (ax, prep, tensor, gate, born, measure, weaken)")?;
        let mut refs = Vec::new();
        let mut ident = |p: &mut Parser| -> Result<String, SourceError> {
            let t = p.cur.expect_ident("a binding name")?;
            refs.push(t.clone());
            Ok(t.text)
        };
        let expr = match head.text.as_str() {
            "ax" => Expr::Ax,
            "prep" => {
                let (_, k) = self.cur.expect_ket()?;
                let premise = if matches!(self.cur.peek().tok, Tok::Ident(_)) { Some(ident(self)?) } else { None };
                Expr::Prep { ket: k, premise }
            }
            "tensor" => {
                let l = ident(self)?;
                let r = ident(self)?;
                Expr::Tensor(l, r)
            }
            "gate" => {
                let g = self.cur.expect_ident("a gate name")?;
                let kind: GateKind = g.text.parse().map_err(|e: crate::gates::GateError| g.error(e.to_string()))?;
                self.cur.expect_punct('[')?;
                let mut wires = vec![self.cur.expect_usize("a wire index")?.1];
                while self.cur.at_punct(',') {
                    self.cur.next();
                    wires.push(self.cur.expect_usize("a wire index")?.1);
                }
                self.cur.expect_punct(']')?;
                let app = GateApplication::new(kind, wires).map_err(|e| g.error(e.to_string()))?;
                Expr::Gate { app, premise: ident(self)? }
            }
            "born" => Expr::Born(ident(self)?),
            "measure" => {
                let premise = ident(self)?;
                self.cur.expect_word("outcome")?;
                self.cur.expect_punct('=')?;
                let (_, outcome) = self.cur.expect_ket()?;
                Expr::Measure { premise, outcome }
            }
            "weaken" => {
                let premise = ident(self)?;
                let (_, k) = self.cur.expect_ket()?;
                Expr::Weaken { premise, ket: k }
            }
            _ => return Err(head.error(format!("unknown rule `{}`", head.text))),
        };
        let claim = if self.cur.at_punct(':') {
            self.cur.next();
            Some(sequent(&mut self.cur)?)
        } else {
            None
        };
        self.cur.expect_punct(';')?;
        let binding = Binding { name: name.text.clone(), expr, claim, line: name.line, column: name.column };
        Ok((binding, refs))
    }
}

/// Parses a script and checks its scoping: no unbound or forward
/// references, no duplicate names, and no binding consumed twice.
pub fn parse_proof<C: Coeff>(text: &str) -> Result<ProofScript<C>, SourceError> {
    let mut p = Parser { cur: Cursor::new(lex(text, false)?) };
    p.cur.expect_word("proof")?;
    let name = p.cur.expect_ident("a proof name")?.text;
    p.cur.expect_punct('{')?;
    let mut bindings: Vec<Binding<C>> = Vec::new();
    let mut bound: HashMap<String, Option<Token>> = HashMap::new();
    while !p.cur.at_punct('}') {
        if p.cur.peek().tok == Tok::Eof {
            return Err(p.cur.peek().error("expected `}`"));
        }
        let name_tok = p.cur.peek().clone();
        let (b, refs) = p.binding::<C>()?;
        for r in refs {
            match bound.get_mut(&r.text) {
                None => return Err(r.error(format!("unbound identifier `{}`", r.text))),
                Some(Some(first)) => {
                    return Err(r.error(format!(
                        "linearity violation: `{}` already consumed at {}:{}",
                        r.text, first.line, first.column
                    )))
                }
                Some(slot) => *slot = Some(r),
            }
        }
        if bound.contains_key(&b.name) {
            return Err(name_tok.error(format!("`{}` is already bound", b.name)));
        }
        bound.insert(b.name.clone(), None);
        bindings.push(b);
    }
    let close = p.cur.next();
    if bindings.is_empty() {
        return Err(close.error("a proof needs at least one line"));
    }
    p.cur.expect_eof()?;
    Ok(ProofScript { name, bindings })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::{check, Finding, RuleError};

    const BELL: &str = "proof bell {
  a = ax;
  b = ax;
  h = gate H [0] a;
  t = tensor h b;
  c = gate CNOT [0,1] t;
  r = born c;
  m = measure r outcome=|00>;
}";

    #[test]
    fn bell_script() {
        let s = parse_proof::<i64>(BELL).unwrap();
        assert_eq!(s.name, "bell");
        assert_eq!(s.bindings.len(), 7);
        assert!(s.unused_bindings().is_empty());
        let p = s.to_proof();
        assert!(check(&p).is_valid());
        assert_eq!(p.conclusion.to_string(), "(1/sqrt2)|00> + (1/sqrt2)|11> |-[1/2] |00>");
        assert_eq!(p.label.as_deref(), Some("m"));
    }

    #[test]
    fn bad_ket_is_positioned() {
        let err = parse_proof::<i64>("proof p {\n a = ax;\n r = born a;\n m = measure r outcome=|2>;\n}").unwrap_err();
        assert_eq!(err.line, 4);
        assert!(err.message.contains("non-binary"));
    }

    #[test]
    fn linearity_and_scoping() {
        let err = parse_proof::<i64>("proof p { a = ax; t = tensor a a; }").unwrap_err();
        assert!(err.message.contains("linearity"));
        assert_eq!((err.line, err.column), (1, 32));
        let err = parse_proof::<i64>("proof p { t = tensor a b; }").unwrap_err();
        assert!(err.message.contains("unbound"));
        let err = parse_proof::<i64>("proof p { a = ax; a = ax; }").unwrap_err();
        assert!(err.message.contains("already bound"));
        let err = parse_proof::<i64>("proof p { h = gate H [0] h; }").unwrap_err();
        assert!(err.message.contains("unbound"));
        assert!(parse_proof::<i64>("proof p { }").is_err());
        assert!(parse_proof::<i64>("proof p { a = ax; } x").is_err());
    }

    #[test]
    fn gate_errors() {
        assert!(parse_proof::<i64>("proof p { a = ax; h = gate Q [0] a; }").is_err());
        assert!(parse_proof::<i64>("proof p { a = ax; h = gate CNOT [0] a; }").is_err());
        assert!(parse_proof::<i64>("proof p { a = ax; h = gate CNOT [1,1] a; }").is_err());
    }

    #[test]
    fn unused_bindings_are_reported() {
        let s = parse_proof::<i64>("proof p { a = ax; b = ax; }").unwrap();
        assert_eq!(s.unused_bindings(), vec!["a"]);
        assert_eq!(s.to_proof().size(), 1);
    }

    #[test]
    fn weaken_is_rejected_at_its_line_only() {
        let p = parse_proof::<i64>("proof p { a = ax; h = gate H [0] a; w = weaken h |0>; }").unwrap().to_proof();
        let report = check(&p);
        let failed: Vec<_> = report.failures().map(|n| n.location()).collect();
        assert_eq!(failed, vec!["w"]);
        assert_eq!(report.failures().next().unwrap().finding, Some(Finding::Rule(RuleError::NonMonotonicityViolation)));
    }

    #[test]
    fn wrong_claim_is_rejected() {
        let p = parse_proof::<i64>("proof p { a = ax; x = gate X [0] a : -|1> =>; }").unwrap().to_proof();
        let failed: Vec<_> = check(&p).failures().map(|n| n.location()).collect();
        assert_eq!(failed, vec!["x"]);
    }

    #[test]
    fn prep_forms() {
        let text = "proof p { a = ax; x = gate X [0] a; r = born x; m = measure r outcome=|1>; q = prep |1> m; }";
        let report = check(&parse_proof::<i64>(text).unwrap().to_proof());
        assert!(report.is_valid());
        assert!(report.assumptions.is_empty());
        let report = check(&parse_proof::<i64>("proof p { q = prep |10>; }").unwrap().to_proof());
        assert!(report.is_valid());
        assert_eq!(report.assumptions.len(), 1);
    }
}
