use super::expr::Cursor;
use super::lexer::{lex, Tok};
use super::SourceError;
use crate::gates::{GateApplication, GateKind};
use crate::translate::Circuit;

/// Parses the `.qc` format:
///
/// ```text
/// qubits 2
/// H 0
/// CNOT 0 1
/// measure
/// ```
pub fn parse_circuit(text: &str) -> Result<Circuit, SourceError> {
    let mut cur = Cursor::new(lex(text, true)?);
    let skip_blank = |cur: &mut Cursor| {
        while cur.peek().tok == Tok::Newline {
            cur.next();
        }
    };
    let end_line = |cur: &mut Cursor| -> Result<(), SourceError> {
        match cur.peek().tok {
            Tok::Newline | Tok::Eof => Ok(()),
            _ => Err(cur.peek().error("expected end of line")),
        }
    };

    skip_blank(&mut cur);
    cur.expect_word("qubits")?;
    let (wtok, width) = cur.expect_usize("the number of qubits")?;
    if width == 0 {
        return Err(wtok.error("a circuit needs at least one qubit"));
    }
    end_line(&mut cur)?;

    let mut ops = Vec::new();
    let mut measured = None;
    loop {
        skip_blank(&mut cur);
        if cur.peek().tok == Tok::Eof {
            break;
        }
        let head = cur.expect_ident("a gate name or `measure`")?;
        if let Some(line) = measured {
            return Err(head.error(format!("nothing may follow `measure` (line {line})")));
        }
        if head.text == "measure" {
            end_line(&mut cur)?;
            measured = Some(head.line);
            continue;
        }
        let kind: GateKind = head.text.parse().map_err(|e: crate::gates::GateError| head.error(e.to_string()))?;
        let mut wires = Vec::new();
        while let Tok::Int(_) = cur.peek().tok {
            let (t, w) = cur.expect_usize("a wire index")?;
            if w >= width {
                return Err(t.error(format!("wire {w} out of range for {width} qubits")));
            }
            wires.push(w);
        }
        end_line(&mut cur)?;
        ops.push(GateApplication::new(kind, wires).map_err(|e| head.error(e.to_string()))?);
    }
    Circuit::new(width, ops, measured.is_some()).map_err(|e| wtok.error(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bell_circuit() {
        let c = parse_circuit("# entangler\nqubits 2\nH 0\nCNOT 0 1\nmeasure\n").unwrap();
        assert_eq!((c.width(), c.ops().len(), c.measured()), (2, 2, true));
        assert_eq!(c.to_string(), "qubits 2\nH 0\nCNOT 0 1\nmeasure\n");
    }

    #[test]
    fn unmeasured() {
        let c = parse_circuit("qubits 1\nH 0\nH 0").unwrap();
        assert_eq!((c.width(), c.ops().len(), c.measured()), (1, 2, false));
    }

    #[test]
    fn errors() {
        let err = parse_circuit("qubits 1\nCNOT 0 1\n").unwrap_err();
        assert_eq!((err.line, err.column), (2, 8));
        assert!(err.message.contains("out of range"));
        assert!(parse_circuit("qubits 1\nmeasure\nH 0\n").unwrap_err().message.contains("follow"));
        assert!(parse_circuit("qubits 1\nmeasure\nmeasure\n").is_err());
        assert!(parse_circuit("H 0\n").is_err());
        assert!(parse_circuit("qubits 0\n").is_err());
        assert!(parse_circuit("qubits 2\nCNOT 0\n").is_err());
        assert!(parse_circuit("qubits 2\nFOO 0\n").is_err());
        assert!(parse_circuit("qubits 2 3\n").is_err());
    }
}
