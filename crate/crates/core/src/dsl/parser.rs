use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::ast::{tier_from_keyword, Anchors, Definition, GermExpr};
use super::lexer::{lex_line, Tok, Token};
use super::ParseError;
use crate::constructions::PinchDirection;
use crate::germ::{Exponent, RatExpr};
use crate::rat::Rat;

pub(crate) const KEYWORDS: [&str; 10] =
    ["pl", "rat", "table", "inv", "switch", "diag", "minor", "pinch", "scale", "zero"];

pub(crate) struct Cursor {
    toks: Vec<Token>,
    pos: usize,
}

impl Cursor {
    pub(crate) fn new(text: &str, line: usize) -> Result<Cursor, ParseError> {
        Ok(Cursor { toks: lex_line(text, line)?, pos: 0 })
    }

    pub(crate) fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if t.tok != Tok::End {
            self.pos += 1;
        }
        t
    }

    pub(crate) fn fail<T>(&self, expected: &str) -> Result<T, ParseError> {
        let t = self.peek();
        Err(ParseError::new(t.line, t.col, expected).found(t.tok.describe()))
    }

    pub(crate) fn is_sym(&self, c: char) -> bool {
        self.peek().tok == Tok::Sym(c)
    }

    pub(crate) fn eat_sym(&mut self, c: char) -> bool {
        if self.is_sym(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    pub(crate) fn sym(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat_sym(c) {
            Ok(())
        } else {
            self.fail(&format!("`{c}`"))
        }
    }

    pub(crate) fn is_ident(&self, s: &str) -> bool {
        matches!(&self.peek().tok, Tok::Ident(x) if x == s)
    }

    pub(crate) fn keyword(&mut self, s: &str) -> Result<(), ParseError> {
        if self.is_ident(s) {
            self.bump();
            Ok(())
        } else {
            self.fail(&format!("`{s}`"))
        }
    }

    pub(crate) fn ident(&mut self, what: &str) -> Result<(String, usize, usize), ParseError> {
        match self.peek().clone() {
            Token { tok: Tok::Ident(s), line, col } => {
                self.bump();
                Ok((s, line, col))
            }
            _ => self.fail(what),
        }
    }

    pub(crate) fn name(&mut self) -> Result<(String, usize, usize), ParseError> {
        let t = self.peek().clone();
        let (s, line, col) = self.ident("a name")?;
        if KEYWORDS.contains(&s.as_str()) {
            return Err(ParseError::new(t.line, t.col, "a name").found(format!("keyword `{s}`")));
        }
        Ok((s, line, col))
    }

    pub(crate) fn string(&mut self) -> Result<String, ParseError> {
        match self.peek().tok.clone() {
            Tok::Str(s) => {
                self.bump();
                Ok(s)
            }
            _ => self.fail("a quoted path"),
        }
    }

    pub(crate) fn int(&mut self) -> Result<BigInt, ParseError> {
        match self.peek().tok.clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(n)
            }
            _ => self.fail("an integer"),
        }
    }

    pub(crate) fn index(&mut self) -> Result<u64, ParseError> {
        let t = self.peek().clone();
        let n = self.int()?;
        n.to_u64()
            .filter(|v| *v >= 1)
            .ok_or_else(|| ParseError::new(t.line, t.col, "a grid index >= 1").found(n.to_string()))
    }

    pub(crate) fn end(&mut self) -> Result<(), ParseError> {
        if self.peek().tok == Tok::End {
            Ok(())
        } else {
            self.fail("end of line")
        }
    }

    /// `p`, `p/q`, `-p/q`.
    pub(crate) fn rational(&mut self) -> Result<Rat, ParseError> {
        let neg = self.eat_sym('-');
        let p = self.int()?;
        let q = if self.eat_sym('/') {
            let t = self.peek().clone();
            let q = self.int()?;
            if q == BigInt::from(0) {
                return Err(ParseError::new(t.line, t.col, "a nonzero denominator"));
            }
            q
        } else {
            BigInt::from(1)
        };
        let r = Rat::new(p, q);
        Ok(if neg { -r } else { r })
    }

    // ratexpr := term (('+'|'-') term)*
    pub(crate) fn rat_expr(&mut self, var: &str) -> Result<RatExpr, ParseError> {
        let mut e = self.rat_term(var)?;
        loop {
            if self.eat_sym('+') {
                e = RatExpr::Add(Box::new(e), Box::new(self.rat_term(var)?));
            } else if self.eat_sym('-') {
                e = RatExpr::Sub(Box::new(e), Box::new(self.rat_term(var)?));
            } else {
                return Ok(e);
            }
        }
    }

    fn rat_term(&mut self, var: &str) -> Result<RatExpr, ParseError> {
        let mut e = self.rat_unary(var)?;
        loop {
            if self.eat_sym('*') {
                e = RatExpr::Mul(Box::new(e), Box::new(self.rat_unary(var)?));
            } else if self.eat_sym('/') {
                e = RatExpr::Div(Box::new(e), Box::new(self.rat_unary(var)?));
            } else {
                return Ok(e);
            }
        }
    }

    fn rat_unary(&mut self, var: &str) -> Result<RatExpr, ParseError> {
        if self.eat_sym('-') {
            return Ok(RatExpr::Neg(Box::new(self.rat_unary(var)?)));
        }
        let base = self.rat_atom(var)?;
        if !self.eat_sym('^') {
            return Ok(base);
        }
        if self.is_ident(var) {
            self.bump();
            return Ok(RatExpr::Pow(Box::new(base), Exponent::Index));
        }
        let t = self.peek().clone();
        let n = self.int().or_else(|_| self.fail(&format!("an exponent (integer or `{var}`)")))?;
        let n = n
            .to_u32()
            .ok_or_else(|| ParseError::new(t.line, t.col, "an exponent below 2^32").found(n.to_string()))?;
        Ok(RatExpr::Pow(Box::new(base), Exponent::Int(n)))
    }

    fn rat_atom(&mut self, var: &str) -> Result<RatExpr, ParseError> {
        match self.peek().tok.clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(RatExpr::Int(n))
            }
            Tok::Ident(s) if s == var => {
                self.bump();
                Ok(RatExpr::Index)
            }
            Tok::Sym('(') => {
                self.bump();
                let e = self.rat_expr(var)?;
                self.sym(')')?;
                Ok(e)
            }
            _ => self.fail(&format!("an integer, `{var}` or `(`")),
        }
    }

    /// `f(v) =` for the fixed function name `f` and variable `v`.
    fn signature(&mut self, f: &str, v: &str) -> Result<(), ParseError> {
        self.keyword(f)?;
        self.sym('(')?;
        self.keyword(v)?;
        self.sym(')')?;
        self.sym('=')
    }

    fn optional_start(&mut self) -> Result<Option<u64>, ParseError> {
        if self.is_ident("start") {
            self.bump();
            self.sym('=')?;
            let s = self.index()?;
            self.sym(';')?;
            Ok(Some(s))
        } else {
            Ok(None)
        }
    }

    // expr := mul ('+' mul)*
    pub(crate) fn germ_expr(&mut self) -> Result<GermExpr, ParseError> {
        let mut e = self.germ_mul()?;
        while self.eat_sym('+') {
            e = GermExpr::Add(Box::new(e), Box::new(self.germ_mul()?));
        }
        Ok(e)
    }

    fn germ_mul(&mut self) -> Result<GermExpr, ParseError> {
        let mut e = self.germ_compose()?;
        loop {
            if self.eat_sym('*') {
                e = GermExpr::Mul(Box::new(e), Box::new(self.germ_compose()?));
            } else if self.eat_sym('/') {
                e = GermExpr::Div(Box::new(e), Box::new(self.germ_compose()?));
            } else {
                return Ok(e);
            }
        }
    }

    fn germ_compose(&mut self) -> Result<GermExpr, ParseError> {
        let mut e = self.germ_primary()?;
        while self.eat_sym('.') {
            e = GermExpr::Compose(Box::new(e), Box::new(self.germ_primary()?));
        }
        Ok(e)
    }

    fn unary_arg(&mut self) -> Result<Box<GermExpr>, ParseError> {
        self.sym('(')?;
        let e = self.germ_expr()?;
        self.sym(')')?;
        Ok(Box::new(e))
    }

    fn germ_primary(&mut self) -> Result<GermExpr, ParseError> {
        if self.eat_sym('(') {
            let e = self.germ_expr()?;
            self.sym(')')?;
            return Ok(e);
        }
        let word = match &self.peek().tok {
            Tok::Ident(s) => s.clone(),
            _ => return self.fail("a germ expression"),
        };
        match word.as_str() {
            "pl" => {
                self.bump();
                self.sym('{')?;
                let start = self.optional_start()?;
                self.signature("k", "j")?;
                let code = self.rat_expr("j")?;
                self.sym('}')?;
                Ok(GermExpr::Pl { start, code })
            }
            "rat" => {
                self.bump();
                self.sym('{')?;
                let start = self.optional_start()?;
                self.signature("v", "j")?;
                let value = self.rat_expr("j")?;
                let tier = if self.eat_sym(';') {
                    self.keyword("tier")?;
                    self.sym('=')?;
                    let t = self.peek().clone();
                    let (w, _, _) = self.ident("a tier")?;
                    Some(tier_from_keyword(&w).ok_or_else(|| {
                        ParseError::new(t.line, t.col, "one of unclassified, pseudo, strict, continuous")
                            .found(format!("`{w}`"))
                    })?)
                } else {
                    None
                };
                self.sym('}')?;
                Ok(GermExpr::Rat { start, value, tier })
            }
            "table" => {
                self.bump();
                self.sym('{')?;
                self.keyword("start")?;
                self.sym('=')?;
                let start = self.index()?;
                self.sym(';')?;
                self.sym('[')?;
                let mut head = Vec::new();
                if !self.is_sym(']') {
                    loop {
                        head.push(self.int()?);
                        if !self.eat_sym(',') {
                            break;
                        }
                    }
                }
                self.sym(']')?;
                self.sym(';')?;
                self.keyword("tail")?;
                self.signature("k", "j")?;
                let tail = self.rat_expr("j")?;
                self.sym('}')?;
                Ok(GermExpr::Table { start, head, tail })
            }
            "inv" => {
                self.bump();
                Ok(GermExpr::Inv(self.unary_arg()?))
            }
            "switch" => {
                self.bump();
                Ok(GermExpr::Switch(self.unary_arg()?))
            }
            "minor" => {
                self.bump();
                Ok(GermExpr::Minor(self.unary_arg()?))
            }
            "diag" => {
                self.bump();
                self.sym('(')?;
                let mut es = vec![self.germ_expr()?];
                while self.eat_sym(',') {
                    es.push(self.germ_expr()?);
                }
                self.sym(')')?;
                Ok(GermExpr::Diag(es))
            }
            "scale" => {
                self.bump();
                self.sym('(')?;
                let q = self.rational()?;
                self.sym(',')?;
                let e = self.germ_expr()?;
                self.sym(')')?;
                Ok(GermExpr::Scale(q, Box::new(e)))
            }
            "pinch" => {
                self.bump();
                self.sym('(')?;
                let dir = if self.is_ident("lower") {
                    PinchDirection::Lower
                } else if self.is_ident("upper") {
                    PinchDirection::Upper
                } else {
                    return self.fail("`lower` or `upper`");
                };
                self.bump();
                self.sym(',')?;
                let e = self.germ_expr()?;
                self.sym(',')?;
                self.keyword("anchors")?;
                self.sym('=')?;
                let anchors = if self.eat_sym('[') {
                    let mut xs = vec![self.index()?];
                    while self.eat_sym(',') {
                        xs.push(self.index()?);
                    }
                    self.sym(']')?;
                    Anchors::List(xs)
                } else if self.is_ident("a") {
                    self.signature("a", "k")?;
                    Anchors::Rule(self.rat_expr("k")?)
                } else {
                    return self.fail("`[` or `a(k) =`");
                };
                self.sym(')')?;
                Ok(GermExpr::Pinch(dir, Box::new(e), anchors))
            }
            _ => {
                let (n, _, _) = self.name()?;
                Ok(GermExpr::Ref(n))
            }
        }
    }
}

/// One `name: expr` line.
pub fn parse_definition(text: &str, line: usize) -> Result<Definition, ParseError> {
    let mut c = Cursor::new(text, line)?;
    let (name, line, col) = c.name()?;
    c.sym(':')?;
    let expr = c.germ_expr()?;
    c.end()?;
    Ok(Definition { name, expr, line, col })
}

/// A germ expression on its own.
pub fn parse_germ(text: &str) -> Result<GermExpr, ParseError> {
    let mut c = Cursor::new(text, 1)?;
    let e = c.germ_expr()?;
    c.end()?;
    Ok(e)
}

fn blank(line: &str) -> bool {
    let t = line.trim_start();
    t.is_empty() || t.starts_with('#')
}

/// Every definition of a germ file; blank lines and `#` comments skipped.
pub fn parse_germ_file(text: &str) -> Result<Vec<Definition>, ParseError> {
    let mut defs: Vec<Definition> = Vec::new();
    for (i, l) in text.lines().enumerate() {
        if blank(l) {
            continue;
        }
        let d = parse_definition(l, i + 1)?;
        if defs.iter().any(|e| e.name == d.name) {
            return Err(ParseError::new(d.line, d.col, "a fresh name").found(format!("duplicate `{}`", d.name)));
        }
        defs.push(d);
    }
    Ok(defs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pl_node() {
        let d = parse_definition("a: pl { k(j) = j^2 + 1 }", 1).unwrap();
        assert_eq!(d.name, "a");
        match d.expr {
            GermExpr::Pl { start: None, code } => {
                assert_eq!(code.to_expoly().unwrap().to_string(), "j^2 + 1")
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn diag_of_refs() {
        let d = parse_definition("c: diag(a, b)", 1).unwrap();
        assert_eq!(d.expr, GermExpr::Diag(vec![GermExpr::Ref("a".into()), GermExpr::Ref("b".into())]));
    }

    #[test]
    fn precedence() {
        let e = parse_germ("a + b * c . d").unwrap();
        assert_eq!(e.to_string(), "(a + (b * (c . d)))");
        let e = parse_germ("a . b . c").unwrap();
        assert_eq!(e.to_string(), "((a . b) . c)");
    }

    #[test]
    fn formats() {
        assert_eq!(parse_germ("pl{k(j)=2*j}").unwrap().to_string(), "pl { k(j) = 2*j }");
        let t = "table { start = 2; [3, 5]; tail k(j) = 3*j }";
        assert_eq!(parse_germ(t).unwrap().to_string(), t);
        let p = "pinch(upper, rat { v(j) = 1/j }, anchors = a(k) = 2^k)";
        assert_eq!(parse_germ(p).unwrap().to_string(), p);
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_definition("a: pl { k(j) = j^ }", 4).unwrap_err();
        assert_eq!((e.line, e.column), (4, 19));
        let e = parse_definition("a: pl { k(i) = j }", 1).unwrap_err();
        assert_eq!(e.column, 11);
        assert_eq!(e.expected, "`j`");
        let e = parse_germ_file("a: inv(b)\n\n# c\na: minor(b)").unwrap_err();
        assert_eq!((e.line, e.column), (4, 1));
    }

    #[test]
    fn keywords_are_not_names() {
        assert!(parse_definition("pl: inv(a)", 1).is_err());
        assert!(parse_germ("diag()").is_err());
    }
}
