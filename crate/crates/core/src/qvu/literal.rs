use super::{Hf, QSet, QvuError, Universe};
use crate::logic::Logic;
use std::collections::HashMap;

/// Parses a Q-set literal.
///
/// ```text
/// set   := '{' [entry (',' entry)*] '}' | '$' name | '#' digits
/// entry := set ':' value
/// ```
/// `$name` refers to an already bound set, `#n` is the check-embedded
/// natural n, and `value` is resolved by `value_of` (a lattice element
/// name, which may itself contain balanced parentheses).
pub fn parse_qset_literal<L: Logic>(
    uni: &Universe<L>,
    src: &str,
    bound: &HashMap<String, QSet<L::Elem>>,
    value_of: &dyn Fn(&str) -> Option<L::Elem>,
) -> Result<QSet<L::Elem>, QvuError> {
    let chars: Vec<char> = src.chars().collect();
    let mut p = Lit { chars, pos: 0 };
    let s = p.set(uni, bound, value_of)?;
    p.ws();
    if p.pos != p.chars.len() {
        return Err(p.err("trailing input after the set literal"));
    }
    Ok(s)
}

struct Lit {
    chars: Vec<char>,
    pos: usize,
}

impl Lit {
    fn err(&self, msg: &str) -> QvuError {
        QvuError::Literal(format!("set literal, column {}: {msg}", self.pos + 1))
    }

    fn ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.ws();
        self.chars.get(self.pos).copied()
    }

    fn word(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.chars.len()
            && (self.chars[self.pos].is_alphanumeric() || "_'".contains(self.chars[self.pos]))
        {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }

    fn set<L: Logic>(
        &mut self,
        uni: &Universe<L>,
        bound: &HashMap<String, QSet<L::Elem>>,
        value_of: &dyn Fn(&str) -> Option<L::Elem>,
    ) -> Result<QSet<L::Elem>, QvuError> {
        match self.peek() {
            Some('$') => {
                self.pos += 1;
                let n = self.word();
                bound.get(&n).cloned().ok_or(QvuError::Unbound(n))
            }
            Some('#') => {
                self.pos += 1;
                let n = self.word();
                let k: usize = n.parse().map_err(|_| self.err("expected a natural after `#`"))?;
                uni.check(&Hf::nat(k))
            }
            Some('{') => {
                self.pos += 1;
                let mut entries = Vec::new();
                if self.peek() == Some('}') {
                    self.pos += 1;
                    return uni.set(entries);
                }
                loop {
                    let child = self.set(uni, bound, value_of)?;
                    if self.peek() != Some(':') {
                        return Err(self.err("expected `:` after a member"));
                    }
                    self.pos += 1;
                    let name = self.value_token();
                    if name.is_empty() {
                        return Err(self.err("expected a truth value"));
                    }
                    let v = value_of(&name)
                        .ok_or_else(|| self.err(&format!("unknown truth value `{name}`")))?;
                    entries.push((child, v));
                    match self.peek() {
                        Some(',') => self.pos += 1,
                        Some('}') => {
                            self.pos += 1;
                            break;
                        }
                        _ => return Err(self.err("expected `,` or `}`")),
                    }
                }
                uni.set(entries)
            }
            _ => Err(self.err("expected `{`, `$name` or `#n`")),
        }
    }

    fn value_token(&mut self) -> String {
        self.ws();
        let start = self.pos;
        let mut depth = 0i32;
        while self.pos < self.chars.len() {
            let c = self.chars[self.pos];
            match c {
                '(' => depth += 1,
                ')' => depth -= 1,
                ',' | '}' if depth <= 0 => break,
                _ => {}
            }
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect::<String>().trim().to_string()
    }
}
