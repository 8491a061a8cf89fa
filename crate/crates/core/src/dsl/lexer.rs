use num_bigint::BigInt;

use super::ParseError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Int(BigInt),
    Str(String),
    Sym(char),
    End,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Int(n) => format!("`{n}`"),
            Tok::Str(s) => format!("\"{s}\""),
            Tok::Sym(c) => format!("`{c}`"),
            Tok::End => "end of line".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub tok: Tok,
    pub line: usize,
    pub col: usize,
}

const SYMBOLS: &str = ":{}()[]=;,+-*/^.<";

/// Tokens of one line; `#` starts a comment. Columns are 1-based.
pub fn lex_line(text: &str, line: usize) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c == '#' {
            break;
        } else if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let s = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[s..i].iter().collect();
            out.push(Token { tok: Tok::Int(digits.parse().expect("digits")), line, col });
        } else if c.is_alphabetic() || c == '_' {
            let s = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Token { tok: Tok::Ident(chars[s..i].iter().collect()), line, col });
        } else if c == '"' {
            let s = i + 1;
            i += 1;
            while i < chars.len() && chars[i] != '"' {
                i += 1;
            }
            if i == chars.len() {
                return Err(ParseError::new(line, col, "closing `\"`"));
            }
            out.push(Token { tok: Tok::Str(chars[s..i].iter().collect()), line, col });
            i += 1;
        } else if SYMBOLS.contains(c) {
            out.push(Token { tok: Tok::Sym(c), line, col });
            i += 1;
        } else {
            return Err(ParseError::new(line, col, "a token"));
        }
    }
    out.push(Token { tok: Tok::End, line, col: chars.len() + 1 });
    Ok(out)
}
