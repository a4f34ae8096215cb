mod common;

use common::ProofGen;
use proptest::prelude::*;
use qmc_core::calculus::{check, CheckReport};
use qmc_core::parser::{parse_circuit, parse_proof, render_ascii, render_script, SourceError};

/// The report without the cosmetic binding names.
fn verdicts(r: &CheckReport<i64>) -> Vec<String> {
    r.nodes.iter().map(|n| format!("{:?} {:?} {} {:?}", n.path, n.rule, n.conclusion, n.finding)).collect()
}

fn position_in(text: &str, e: &SourceError) -> bool {
    let lines: Vec<&str> = text.split('\n').collect();
    e.line >= 1 && e.line <= lines.len() && e.column >= 1 && e.column <= lines[e.line - 1].chars().count() + 1
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn render_then_parse_is_identity(seed in any::<u64>()) {
        let p = ProofGen::new(seed).proof();
        let text = render_script(&p, "gen");
        let q = parse_proof::<i64>(&text).unwrap().to_proof();
        prop_assert_eq!(&q, &p);
        prop_assert_eq!(q.conclusion.clone(), p.conclusion.clone());
        prop_assert_eq!(verdicts(&check(&q)), verdicts(&check(&p)));
        prop_assert_eq!(render_script(&q, "gen"), text);
    }

    #[test]
    fn scripts_without_claims_elaborate_to_the_same_proof(seed in any::<u64>()) {
        let p = ProofGen::new(seed).proof();
        let text = render_script(&p, "gen");
        let stripped: String = text
            .lines()
            .map(|l| match l.find(" : ") {
                Some(i) => format!("{};", &l[..i]),
                None => l.to_string(),
            })
            .collect::<Vec<_>>()
            .join("\n");
        prop_assert_eq!(parse_proof::<i64>(&stripped).unwrap().to_proof(), p);
    }

    #[test]
    fn arbitrary_text_never_panics(text in "\\PC{0,200}") {
        if let Err(e) = parse_proof::<i64>(&text) {
            prop_assert!(position_in(&text, &e), "{e}");
        }
        if let Err(e) = parse_circuit(&text) {
            prop_assert!(position_in(&text, &e), "{e}");
        }
    }

    #[test]
    fn mutated_scripts_never_panic(seed in any::<u64>(), at in any::<prop::sample::Index>(), junk in "[ -~\n]{0,4}") {
        let text = render_script(&ProofGen::new(seed).proof(), "gen");
        let chars: Vec<char> = text.chars().collect();
        let i = at.index(chars.len());
        let mutated: String = chars[..i].iter().chain(junk.chars().collect::<Vec<_>>().iter()).chain(chars[i + 1..].iter()).collect();
        match parse_proof::<i64>(&mutated) {
            Ok(script) => {
                // Accepted scripts are linear.
                let mut seen = std::collections::HashSet::new();
                for b in &script.bindings {
                    for p in b.expr.premises() {
                        prop_assert!(seen.insert(p.to_string()));
                    }
                }
                let _ = check(&script.to_proof());
            }
            Err(e) => prop_assert!(position_in(&mutated, &e), "{e}"),
        }
    }

    #[test]
    fn reusing_a_binding_is_rejected(seed in any::<u64>()) {
        let text = render_script(&ProofGen::new(seed).coherent(1, 3), "gen");
        let first = text.lines().nth(1).unwrap().trim().split(' ').next().unwrap().to_string();
        let reused = text.replacen("\n}", &format!("\n  dup1 = tensor {first} {first};\n}}"), 1);
        let err = parse_proof::<i64>(&reused).unwrap_err();
        prop_assert!(err.message.contains("linearity") || err.message.contains("already consumed"), "{}", err);
    }
}

#[test]
fn ascii_render_has_one_sequent_per_node() {
    let p = ProofGen::new(7).proof();
    let text = render_ascii(&p);
    let sequent_lines = text.lines().filter(|l| !l.trim_start().starts_with("by ")).count();
    assert_eq!(sequent_lines, p.size());
}
