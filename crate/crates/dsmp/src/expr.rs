//! Parsing and printing of set-algebra expressions over a frame.
//!
//! Grammar (`∩` binds tighter than `∪`):
//!
//! ```text
//! expr   := term (('∪' | '|' | 'u') term)*
//! term   := factor (('∩' | '&' | 'n') factor)*
//! factor := NAME | '∅' | 'empty' | '(' expr ')'
//! ```
//!
//! Names must match a frame singleton exactly (case-sensitive). The
//! keyword operators `u` and `n` need surrounding whitespace or
//! parentheses, since `AuB` lexes as one name. Parsed expressions are
//! evaluated straight into canonical [`AtomSet`]s, so two expressions are
//! equal exactly when their parses coincide.

use crate::error::{Error, Result};
use crate::frame::{AtomSet, FrameModel};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Union,
    Inter,
    LParen,
    RParen,
    Empty,
    Name(String),
}

fn is_name_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\''
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(pos, c)) = chars.peek() {
        match c {
            c if c.is_whitespace() => {
                chars.next();
            }
            '∪' | '|' => {
                chars.next();
                out.push((Tok::Union, pos));
            }
            '∩' | '&' => {
                chars.next();
                out.push((Tok::Inter, pos));
            }
            '(' => {
                chars.next();
                out.push((Tok::LParen, pos));
            }
            ')' => {
                chars.next();
                out.push((Tok::RParen, pos));
            }
            '∅' => {
                chars.next();
                out.push((Tok::Empty, pos));
            }
            c if is_name_char(c) => {
                let mut name = String::new();
                while let Some(&(_, c)) = chars.peek() {
                    if is_name_char(c) {
                        name.push(c);
                        chars.next();
                    } else {
                        break;
                    }
                }
                let tok = match name.as_str() {
                    "u" => Tok::Union,
                    "n" => Tok::Inter,
                    "empty" => Tok::Empty,
                    _ => Tok::Name(name),
                };
                out.push((tok, pos));
            }
            other => {
                return Err(Error::Syntax {
                    pos,
                    msg: format!("unexpected character `{other}`"),
                });
            }
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    at: usize,
    model: &'a FrameModel,
    len: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&(Tok, usize)> {
        self.toks.get(self.at)
    }

    fn here(&self) -> usize {
        self.toks.get(self.at).map_or(self.len, |t| t.1)
    }

    fn expr(&mut self) -> Result<AtomSet> {
        let mut acc = self.term()?;
        while matches!(self.peek(), Some((Tok::Union, _))) {
            self.at += 1;
            let rhs = self.term()?;
            acc = self.model.element_union(acc, rhs);
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<AtomSet> {
        let mut acc = self.factor()?;
        while matches!(self.peek(), Some((Tok::Inter, _))) {
            self.at += 1;
            let rhs = self.factor()?;
            acc = self.model.element_intersection(acc, rhs);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<AtomSet> {
        match self.toks.get(self.at).cloned() {
            Some((Tok::Name(name), pos)) => {
                self.at += 1;
                self.model
                    .singleton_by_name(&name)
                    .ok_or(Error::UnknownName { name, pos })
            }
            Some((Tok::Empty, _)) => {
                self.at += 1;
                Ok(AtomSet::EMPTY)
            }
            Some((Tok::LParen, pos)) => {
                self.at += 1;
                let inner = self.expr()?;
                match self.peek() {
                    Some((Tok::RParen, _)) => {
                        self.at += 1;
                        Ok(inner)
                    }
                    _ => Err(Error::Syntax {
                        pos: self.here(),
                        msg: format!("unclosed `(` opened at byte {pos}"),
                    }),
                }
            }
            Some((tok, pos)) => Err(Error::Syntax {
                pos,
                msg: format!("expected a name, `∅` or `(`, found {tok:?}"),
            }),
            None => Err(Error::Syntax {
                pos: self.here(),
                msg: "expected a name, `∅` or `(`".into(),
            }),
        }
    }
}

/// Parses a set-algebra expression into the canonical element it denotes
/// under the given model.
pub fn parse_expr(text: &str, model: &FrameModel) -> Result<AtomSet> {
    let toks = tokenize(text)?;
    if toks.is_empty() {
        return Err(Error::Syntax {
            pos: 0,
            msg: "empty expression".into(),
        });
    }
    let mut parser = Parser {
        toks,
        at: 0,
        model,
        len: text.len(),
    };
    let value = parser.expr()?;
    if let Some((tok, pos)) = parser.peek() {
        return Err(Error::Syntax {
            pos: *pos,
            msg: format!("unexpected trailing input {tok:?}"),
        });
    }
    Ok(model.canonicalize(value))
}

/// One ∩-product of singletons together with its canonical mask.
struct Product {
    mask: u128,
    text: String,
    factors: u32,
}

fn products(model: &FrameModel) -> Vec<Product> {
    let n = model.frame().len();
    let mut best: Vec<Product> = Vec::new();
    for subset in 1u32..(1 << n) {
        let mut acc = model.full_set();
        let mut names = Vec::new();
        for i in 0..n {
            if subset & (1 << i) != 0 {
                acc = model.element_intersection(acc, model.singleton(i));
                names.push(model.frame().name(i));
            }
        }
        if acc.is_empty() {
            continue;
        }
        let text = names.join("∩");
        match best.iter_mut().find(|p| p.mask == acc.mask()) {
            Some(p) => {
                if (subset.count_ones(), text.len(), text.as_str())
                    < (p.factors, p.text.len(), p.text.as_str())
                {
                    p.text = text;
                    p.factors = subset.count_ones();
                }
            }
            None => best.push(Product {
                mask: acc.mask(),
                text,
                factors: subset.count_ones(),
            }),
        }
    }
    best
}

fn render_cover(terms: &[&Product]) -> String {
    let mut parts: Vec<String> = terms
        .iter()
        .map(|p| {
            if p.factors > 1 && terms.len() > 1 {
                format!("({})", p.text)
            } else {
                p.text.clone()
            }
        })
        .collect();
    parts.sort();
    parts.join("∪")
}

/// Prints a canonical element as a set-algebra expression.
///
/// Elements of the event algebra come out as their minimal
/// sum-of-products form (shortest rendering, ties broken
/// lexicographically), so `parse_expr(format_elem(x)) == x`. Atom sets
/// outside the ∪/∩ closure of the singletons fall back to a bracketed
/// atom union which is display-only and cannot be re-parsed.
pub fn format_elem(x: AtomSet, model: &FrameModel) -> String {
    let x = model.canonicalize(x);
    if x.is_empty() {
        return "∅".to_string();
    }
    let inside: Vec<Product> = products(model)
        .into_iter()
        .filter(|p| p.mask & !x.mask() == 0)
        .collect();
    // keep only maximal products; smaller ones never shorten a cover
    let maximal: Vec<&Product> = inside
        .iter()
        .filter(|p| !inside.iter().any(|q| q.mask != p.mask && q.mask & !p.mask != 0 && p.mask & !q.mask == 0))
        .collect();
    let covered = maximal.iter().fold(0u128, |acc, p| acc | p.mask);
    if covered != x.mask() {
        // not expressible with ∪/∩ alone
        let parts: Vec<String> = x
            .atom_bits()
            .map(|bit| {
                let names: Vec<&str> = model
                    .atom_member_indices(bit)
                    .into_iter()
                    .map(|i| model.frame().name(i))
                    .collect();
                format!("[{}]", names.join("∩"))
            })
            .collect();
        return parts.join("∪");
    }
    let m = maximal.len();
    let mut best: Option<String> = None;
    let mut consider = |s: String| {
        if best
            .as_ref()
            .is_none_or(|b| (s.len(), s.as_str()) < (b.len(), b.as_str()))
        {
            best = Some(s);
        }
    };
    if m <= 16 {
        for choice in 1u32..(1 << m) {
            let mut union = 0u128;
            let mut terms: Vec<&Product> = Vec::new();
            for (k, p) in maximal.iter().enumerate() {
                if choice & (1 << k) != 0 {
                    union |= p.mask;
                    terms.push(p);
                }
            }
            if union == x.mask() {
                consider(render_cover(&terms));
            }
        }
    } else {
        // greedy cover for very large product sets
        let mut uncovered = x.mask();
        let mut terms: Vec<&Product> = Vec::new();
        while uncovered != 0 {
            let pick = maximal
                .iter()
                .max_by_key(|p| ((p.mask & uncovered).count_ones(), std::cmp::Reverse(p.mask)))
                .expect("cover exists");
            uncovered &= !pick.mask;
            terms.push(pick);
        }
        consider(render_cover(&terms));
    }
    best.expect("at least one cover was rendered")
}
