use super::Formula::{self, *};
use super::{and, eq, not, sub};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("parse error at column {col}: {msg}")]
pub struct ParseError {
    /// 1-based character column.
    pub col: usize,
    pub msg: String,
    /// 1-based line, set by [`parse_file`].
    pub line: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Forall,
    Exists,
    In,
    Sub,
    Over,
    True,
    False,
    LParen,
    RParen,
    LBrack,
    RBrack,
    Comma,
    Not,
    And,
    Or,
    Imp,
    Iff,
    Eq,
    Le,
    Lt,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Ident(s) => format!("identifier `{s}`"),
        Tok::Forall => "`forall`".into(),
        Tok::Exists => "`exists`".into(),
        Tok::In => "`in`".into(),
        Tok::Sub => "`sub`".into(),
        Tok::Over => "`over`".into(),
        Tok::True => "`true`".into(),
        Tok::False => "`false`".into(),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
        Tok::LBrack => "`[`".into(),
        Tok::RBrack => "`]`".into(),
        Tok::Comma => "`,`".into(),
        Tok::Not => "`!`".into(),
        Tok::And => "`&`".into(),
        Tok::Or => "`|`".into(),
        Tok::Imp => "`->`".into(),
        Tok::Iff => "`<->`".into(),
        Tok::Eq => "`=`".into(),
        Tok::Le => "`<=`".into(),
        Tok::Lt => "`<`".into(),
    }
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let err = |i: usize, msg: String| ParseError { col: i + 1, msg, line: None };
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_' || chars[i] == '\'') {
                i += 1;
            }
            let word: String = chars[start..i].iter().collect();
            let t = match word.as_str() {
                "forall" => Tok::Forall,
                "exists" => Tok::Exists,
                "in" => Tok::In,
                "sub" => Tok::Sub,
                "over" => Tok::Over,
                "true" => Tok::True,
                "false" => Tok::False,
                _ => Tok::Ident(word),
            };
            out.push((t, start));
            continue;
        }
        let rest: String = chars[i..chars.len().min(i + 3)].iter().collect();
        let (t, len) = if rest.starts_with("<->") {
            (Tok::Iff, 3)
        } else if rest.starts_with("->") {
            (Tok::Imp, 2)
        } else if rest.starts_with("<=") {
            (Tok::Le, 2)
        } else {
            let t = match c {
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                '[' => Tok::LBrack,
                ']' => Tok::RBrack,
                ',' => Tok::Comma,
                '!' | '¬' => Tok::Not,
                '&' | '∧' => Tok::And,
                '|' | '∨' => Tok::Or,
                '→' => Tok::Imp,
                '↔' => Tok::Iff,
                '=' => Tok::Eq,
                '<' => Tok::Lt,
                '∈' => Tok::In,
                '⊆' => Tok::Sub,
                _ => return Err(err(i, format!("unexpected character `{c}`"))),
            };
            (t, 1)
        };
        out.push((t, start));
        i += len;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end_col: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map(|&(_, c)| c + 1).unwrap_or(self.end_col)
    }

    fn fail<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { col: self.col(), msg: msg.into(), line: None })
    }

    fn found(&self) -> String {
        self.peek().map(describe).unwrap_or_else(|| "end of input".into())
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, t: &Tok) -> Result<(), ParseError> {
        if self.eat(t) {
            Ok(())
        } else {
            self.fail(format!("expected {}, found {}", describe(t), self.found()))
        }
    }

    fn ident(&mut self, what: &str) -> Result<String, ParseError> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => self.fail(format!("expected {what}, found {}", self.found())),
        }
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        let mut f = self.imp()?;
        while self.eat(&Tok::Iff) {
            let g = self.imp()?;
            f = Iff(Box::new(f), Box::new(g));
        }
        Ok(f)
    }

    fn imp(&mut self) -> Result<Formula, ParseError> {
        let f = self.or()?;
        if self.eat(&Tok::Imp) {
            let g = self.imp()?;
            return Ok(Imp(Box::new(f), Box::new(g)));
        }
        Ok(f)
    }

    fn or(&mut self) -> Result<Formula, ParseError> {
        let mut f = self.and()?;
        while self.eat(&Tok::Or) {
            let g = self.and()?;
            f = Or(Box::new(f), Box::new(g));
        }
        Ok(f)
    }

    fn and(&mut self) -> Result<Formula, ParseError> {
        let mut f = self.unary()?;
        while self.eat(&Tok::And) {
            let g = self.unary()?;
            f = And(Box::new(f), Box::new(g));
        }
        Ok(f)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek() {
            Some(Tok::Not) => {
                self.pos += 1;
                Ok(Not(Box::new(self.unary()?)))
            }
            Some(Tok::Forall) | Some(Tok::Exists) => self.quantifier(),
            _ => self.atom(),
        }
    }

    fn quantifier(&mut self) -> Result<Formula, ParseError> {
        let universal = self.peek() == Some(&Tok::Forall);
        self.pos += 1;
        let x = self.ident("a bound variable")?;
        if self.eat(&Tok::In) {
            let t = self.ident("a bounding set after `in`")?;
            let body = self.body()?;
            return Ok(if universal { Forall(x, t, body) } else { Exists(x, t, body) });
        }
        if self.eat(&Tok::Over) {
            self.expect(&Tok::LBrack)?;
            let mut ts = Vec::new();
            if !self.eat(&Tok::RBrack) {
                loop {
                    ts.push(self.ident("a set name")?);
                    if self.eat(&Tok::RBrack) {
                        break;
                    }
                    self.expect(&Tok::Comma)?;
                }
            }
            let body = self.body()?;
            return Ok(if universal { ForallOver(x, ts, body) } else { ExistsOver(x, ts, body) });
        }
        self.fail(format!(
            "unbounded quantifier over `{x}`: only bounded quantifiers `{q} {x} in t (...)` \
             are supported, or `{q} {x} over [a, b] (...)` for an explicit finite range",
            q = if universal { "forall" } else { "exists" }
        ))
    }

    fn body(&mut self) -> Result<Box<Formula>, ParseError> {
        if self.peek() != Some(&Tok::LParen) {
            return self.fail(format!(
                "quantifier body must be in parentheses, found {}",
                self.found()
            ));
        }
        self.pos += 1;
        let f = self.formula()?;
        self.expect(&Tok::RParen)?;
        Ok(Box::new(f))
    }

    fn atom(&mut self) -> Result<Formula, ParseError> {
        match self.peek() {
            Some(Tok::LParen) => {
                self.pos += 1;
                let f = self.formula()?;
                self.expect(&Tok::RParen)?;
                Ok(f)
            }
            Some(Tok::True) => {
                self.pos += 1;
                Ok(True)
            }
            Some(Tok::False) => {
                self.pos += 1;
                Ok(False)
            }
            Some(Tok::Ident(_)) => {
                let a = self.ident("a set name")?;
                let op = self.peek().cloned();
                let rel = match op {
                    Some(Tok::Eq) | Some(Tok::In) | Some(Tok::Sub) | Some(Tok::Le) | Some(Tok::Lt) => {
                        self.pos += 1;
                        op.unwrap()
                    }
                    _ => {
                        return self.fail(format!(
                            "expected `=`, `in`, `sub`, `<=` or `<` after `{a}`, found {}",
                            self.found()
                        ))
                    }
                };
                let b = self.ident("a set name")?;
                Ok(match rel {
                    Tok::Eq => Eq(a, b),
                    Tok::In => Mem(a, b),
                    Tok::Sub => Sub(a, b),
                    // reals: a <= b iff b's lower cut is contained in a's
                    Tok::Le => sub(&b, &a),
                    _ => and(sub(&b, &a), not(eq(&a, &b))),
                })
            }
            _ => self.fail(format!("expected a formula, found {}", self.found())),
        }
    }
}

/// Parses one formula.
pub fn parse(src: &str) -> Result<Formula, ParseError> {
    let toks = lex(src)?;
    let mut p = Parser { toks, pos: 0, end_col: src.chars().count() + 1 };
    let f = p.formula()?;
    if p.pos != p.toks.len() {
        return p.fail(format!("unexpected {} after a complete formula", p.found()));
    }
    Ok(f)
}

/// Parses a file with one formula per line. Blank lines and lines starting
/// with `#` are skipped; a line may start with `label:`.
pub fn parse_file(text: &str) -> Result<Vec<(Option<String>, Formula)>, ParseError> {
    let mut out = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let (label, body, offset) = match t.split_once(':') {
            Some((l, b)) if is_label(l.trim()) => {
                (Some(l.trim().to_string()), b, l.chars().count() + 1)
            }
            _ => (None, t, 0),
        };
        let f = parse(body).map_err(|mut e| {
            e.line = Some(n + 1);
            e.col += offset;
            e
        })?;
        out.push((label, f));
    }
    Ok(out)
}

fn is_label(s: &str) -> bool {
    !s.is_empty()
        && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-' || c == '.')
}
