use super::SourceError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Tok {
    Ident(String),
    Int(String),
    /// Digits of `|..>`, already checked to be binary.
    Ket(String),
    /// `|-`
    Turnstile,
    /// `=>`
    Arrow,
    Punct(char),
    Newline,
    Eof,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Token {
    pub tok: Tok,
    pub text: String,
    pub line: usize,
    pub column: usize,
}

impl Token {
    pub fn error(&self, message: impl Into<String>) -> SourceError {
        let token = if self.tok == Tok::Eof { "end of input".to_string() } else { self.text.clone() };
        SourceError::new(self.line, self.column, message, token)
    }
}

const PUNCT: &str = "{}()[],;:=+-*/^";

/// Splits `text` into tokens. `#` starts a comment running to the end of the
/// line. Newlines are kept as tokens only when `keep_newlines` is set.
pub(crate) fn lex(text: &str, keep_newlines: bool) -> Result<Vec<Token>, SourceError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    macro_rules! push {
        ($tok:expr, $start:expr, $l:expr, $c:expr) => {
            out.push(Token { tok: $tok, text: chars[$start..i].iter().collect(), line: $l, column: $c })
        };
    }
    while i < chars.len() {
        let ch = chars[i];
        let (start, l, c) = (i, line, col);
        if ch == '\n' {
            i += 1;
            if keep_newlines {
                push!(Tok::Newline, start, l, c);
            }
            line += 1;
            col = 1;
            continue;
        }
        if ch.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if ch == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
                col += 1;
            }
            continue;
        }
        if ch.is_ascii_alphabetic() || ch == '_' {
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
                col += 1;
            }
            let word: String = chars[start..i].iter().collect();
            push!(Tok::Ident(word), start, l, c);
            continue;
        }
        if ch.is_ascii_digit() {
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
                col += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            push!(Tok::Int(digits), start, l, c);
            continue;
        }
        if ch == '|' {
            if chars.get(i + 1) == Some(&'-') {
                i += 2;
                col += 2;
                push!(Tok::Turnstile, start, l, c);
                continue;
            }
            i += 1;
            col += 1;
            let mut digits = String::new();
            while i < chars.len() && chars[i] != '>' && !chars[i].is_whitespace() {
                let d = chars[i];
                if d != '0' && d != '1' {
                    let token: String = chars[start..=i].iter().collect();
                    return Err(SourceError::new(line, col, format!("non-binary ket digit `{d}`"), token));
                }
                digits.push(d);
                i += 1;
                col += 1;
            }
            if chars.get(i) != Some(&'>') {
                let token: String = chars[start..i].iter().collect();
                return Err(SourceError::new(l, c, "unterminated ket, expected `>`", token));
            }
            i += 1;
            col += 1;
            if digits.is_empty() {
                return Err(SourceError::new(l, c, "empty ket", "|>"));
            }
            push!(Tok::Ket(digits), start, l, c);
            continue;
        }
        if ch == '=' && chars.get(i + 1) == Some(&'>') {
            i += 2;
            col += 2;
            push!(Tok::Arrow, start, l, c);
            continue;
        }
        if PUNCT.contains(ch) || ch == '·' {
            i += 1;
            col += 1;
            push!(Tok::Punct(if ch == '·' { '*' } else { ch }), start, l, c);
            continue;
        }
        return Err(SourceError::new(l, c, format!("unexpected character `{ch}`"), ch.to_string()));
    }
    out.push(Token { tok: Tok::Eof, text: String::new(), line, column: col });
    Ok(out)
}
