//! Line-oriented problem files.
//!
//! ```text
//! # comment
//! field Q                       # or F<p>; default Q
//! ring x:1, y:-1, z:0
//! ideal x*y - z^2               # any number of ideal lines; default (0)
//! flag smooth-affine
//! ```
//!
//! Declarations may appear in any order. A leading `-` is accepted in
//! front of any polynomial, not just in front of a number.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::Error;
use crate::gmaction::non_homogeneous_message;
use crate::poly::Polynomial;
use crate::ring::{RingSpec, Variable};
use crate::scalar::{Field, MAX_MODULUS};

/// Largest exponent accepted after `^`.
const MAX_EXPONENT: u64 = 1000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
    /// Tokens that would have been accepted at this position.
    pub expected: Vec<String>,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.col, self.message)?;
        if !self.expected.is_empty() {
            write!(f, " (expected {})", self.expected.join(", "))?;
        }
        Ok(())
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone)]
pub struct ProblemFile {
    pub field: Field,
    pub ring: Arc<RingSpec>,
    pub ideal: Vec<Polynomial>,
    pub flags: Vec<String>,
}

impl ProblemFile {
    pub fn has_flag(&self, flag: &str) -> bool {
        self.flags.iter().any(|f| f == flag)
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Word(String),
    Nat(String),
    Sym(char),
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Word(w) => format!("`{w}`"),
            Tok::Nat(n) => format!("number `{n}`"),
            Tok::Sym(c) => format!("`{c}`"),
            Tok::End => "end of line".into(),
        }
    }
}

struct Lexer {
    line: usize,
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

fn lex(line_no: usize, text: &str) -> Result<Lexer, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c == '#' {
            break;
        } else if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len()
                && (chars[i].is_ascii_alphanumeric() || chars[i] == '_' || chars[i] == '-')
            {
                // `-` only continues a word when followed by a letter, as
                // in `smooth-affine`; `x-y` is a difference
                if chars[i] == '-' && !(i + 1 < chars.len() && chars[i + 1].is_ascii_alphabetic() && is_flag_context(&toks)) {
                    break;
                }
                i += 1;
            }
            toks.push((Tok::Word(chars[start..i].iter().collect()), col));
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            toks.push((Tok::Nat(chars[start..i].iter().collect()), col));
        } else if ":,+-*^/()".contains(c) {
            toks.push((Tok::Sym(c), col));
            i += 1;
        } else {
            return Err(ParseError {
                line: line_no,
                col,
                message: format!("unexpected character `{c}`"),
                expected: vec![],
            });
        }
    }
    let end_col = chars.len() + 1;
    toks.push((Tok::End, end_col));
    Ok(Lexer {
        line: line_no,
        toks,
        pos: 0,
    })
}

fn is_flag_context(toks: &[(Tok, usize)]) -> bool {
    matches!(toks.first(), Some((Tok::Word(w), _)) if w == "flag")
}

impl Lexer {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn col(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &[&str]) -> ParseError {
        ParseError {
            line: self.line,
            col: self.col(),
            message: format!("unexpected {}", self.peek().describe()),
            expected: expected.iter().map(|s| s.to_string()).collect(),
        }
    }

    fn error_at(&self, col: usize, message: String) -> ParseError {
        ParseError {
            line: self.line,
            col,
            message,
            expected: vec![],
        }
    }

    fn eat_sym(&mut self, c: char) -> bool {
        if *self.peek() == Tok::Sym(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect_sym(&mut self, c: char, expected: &[&str]) -> Result<(), ParseError> {
        if self.eat_sym(c) {
            Ok(())
        } else {
            Err(self.error(expected))
        }
    }

    fn expect_end(&mut self, expected: &[&str]) -> Result<(), ParseError> {
        if *self.peek() == Tok::End {
            Ok(())
        } else {
            Err(self.error(expected))
        }
    }

    fn word(&mut self, expected: &[&str]) -> Result<(String, usize), ParseError> {
        match self.peek().clone() {
            Tok::Word(w) => {
                let col = self.col();
                self.bump();
                Ok((w, col))
            }
            _ => Err(self.error(expected)),
        }
    }

    fn nat(&mut self, expected: &[&str]) -> Result<(BigInt, usize), ParseError> {
        match self.peek().clone() {
            Tok::Nat(n) => {
                let col = self.col();
                self.bump();
                Ok((n.parse().expect("digits"), col))
            }
            _ => Err(self.error(expected)),
        }
    }
}

fn is_var_name(w: &str) -> bool {
    let mut it = w.chars();
    matches!(it.next(), Some(c) if c.is_ascii_alphabetic())
        && it.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

const KEYWORDS: [&str; 4] = ["field", "ring", "ideal", "flag"];

pub fn parse(text: &str) -> Result<ProblemFile, ParseError> {
    let mut lines = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let lx = lex(k + 1, raw)?;
        if *lx.peek() != Tok::End {
            lines.push(lx);
        }
    }

    // declarations first, so that ideal lines can appear anywhere
    let mut field: Option<(Field, usize)> = None;
    let mut ring_decl: Option<(Vec<Variable>, usize)> = None;
    let mut rest = Vec::new();
    for mut lx in lines {
        let (kw, col) = lx.word(&KEYWORDS)?;
        match kw.as_str() {
            "field" => {
                if let Some((_, prev)) = field {
                    return Err(lx.error_at(col, format!("duplicate field declaration (first on line {prev})")));
                }
                field = Some((parse_field(&mut lx)?, lx.line));
            }
            "ring" => {
                if let Some((_, prev)) = ring_decl {
                    return Err(lx.error_at(col, format!("duplicate ring declaration (first on line {prev})")));
                }
                ring_decl = Some((parse_ring(&mut lx)?, lx.line));
            }
            "ideal" | "flag" => rest.push((kw, lx)),
            _ => {
                return Err(ParseError {
                    line: lx.line,
                    col,
                    message: format!("unknown declaration `{kw}`"),
                    expected: KEYWORDS.iter().map(|s| s.to_string()).collect(),
                })
            }
        }
    }
    let field = field.map(|(f, _)| f).unwrap_or(Field::Rational);
    let Some((vars, ring_line)) = ring_decl else {
        return Err(ParseError {
            line: text.lines().count().max(1),
            col: 1,
            message: "missing ring declaration".into(),
            expected: vec!["ring".into()],
        });
    };
    let ring = RingSpec::new(vars, field).map_err(|e| ParseError {
        line: ring_line,
        col: 1,
        message: e.to_string(),
        expected: vec![],
    })?;

    let mut ideal = Vec::new();
    let mut flags: Vec<String> = Vec::new();
    for (kw, mut lx) in rest {
        if kw == "flag" {
            loop {
                let (f, _) = lx.word(&["flag name"])?;
                if !flags.contains(&f) {
                    flags.push(f);
                }
                if !lx.eat_sym(',') {
                    break;
                }
            }
            lx.expect_end(&[",", "end of line"])?;
            continue;
        }
        loop {
            let col = lx.col();
            let p = {
                let mut pp = PolyParser { lx: &mut lx, ring: &ring };
                pp.poly()?
            };
            if !p.is_homogeneous() {
                return Err(lx.error_at(col, non_homogeneous_message(ideal.len() + 1, &p)));
            }
            ideal.push(p);
            if !lx.eat_sym(',') {
                break;
            }
        }
        lx.expect_end(&[",", "+", "-", "*", "^", "end of line"])?;
    }
    Ok(ProblemFile {
        field,
        ring,
        ideal,
        flags,
    })
}

fn parse_field(lx: &mut Lexer) -> Result<Field, ParseError> {
    let (w, col) = lx.word(&["Q", "F<prime>"])?;
    let field = if w == "Q" {
        Field::Rational
    } else if let Some(rest) = w.strip_prefix('F') {
        let p: u64 = rest
            .parse()
            .map_err(|_| lx.error_at(col, format!("bad field `{w}`")))?;
        if p > MAX_MODULUS {
            return Err(lx.error_at(col, format!("modulus {p} exceeds {MAX_MODULUS}")));
        }
        Field::prime(p).map_err(|e| match e {
            Error::Validation(m) => lx.error_at(col, m),
            other => lx.error_at(col, other.to_string()),
        })?
    } else {
        return Err(ParseError {
            line: lx.line,
            col,
            message: format!("bad field `{w}`"),
            expected: vec!["Q".into(), "F<prime>".into()],
        });
    };
    lx.expect_end(&["end of line"])?;
    Ok(field)
}

fn parse_ring(lx: &mut Lexer) -> Result<Vec<Variable>, ParseError> {
    let mut vars: Vec<Variable> = Vec::new();
    loop {
        let (name, col) = lx.word(&["variable"])?;
        if !is_var_name(&name) || KEYWORDS.contains(&name.as_str()) {
            return Err(lx.error_at(col, format!("`{name}` is not a valid variable name")));
        }
        if vars.iter().any(|v| v.name == name) {
            return Err(lx.error_at(col, format!("variable `{name}` declared twice")));
        }
        lx.expect_sym(':', &[":"])?;
        let neg = lx.eat_sym('-');
        let (n, ncol) = lx.nat(&["weight"])?;
        let n = if neg { -n } else { n };
        let w = n
            .to_i64()
            .filter(|w| w.unsigned_abs() <= 1 << 32)
            .ok_or_else(|| lx.error_at(ncol, format!("weight {n} out of range")))?;
        vars.push(Variable::new(name, w));
        if !lx.eat_sym(',') {
            break;
        }
    }
    lx.expect_end(&[",", "end of line"])?;
    Ok(vars)
}

struct PolyParser<'a> {
    lx: &'a mut Lexer,
    ring: &'a Arc<RingSpec>,
}

const TERM_START: [&str; 4] = ["number", "variable", "(", "-"];

impl PolyParser<'_> {
    /// A leading `-` not followed by a number negates the first term.
    fn poly(&mut self) -> Result<Polynomial, ParseError> {
        let negate = *self.lx.peek() == Tok::Sym('-') && !self.next_is_nat();
        if negate {
            self.lx.bump();
        }
        let mut acc = self.term()?;
        if negate {
            acc = -&acc;
        }
        loop {
            if self.lx.eat_sym('+') {
                acc = &acc + &self.term()?;
            } else if self.lx.eat_sym('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn next_is_nat(&self) -> bool {
        matches!(self.lx.toks.get(self.lx.pos + 1), Some((Tok::Nat(_), _)))
    }

    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.factor()?;
        while self.lx.eat_sym('*') {
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial, ParseError> {
        let base = self.base()?;
        if self.lx.eat_sym('^') {
            let (e, col) = self.lx.nat(&["exponent"])?;
            let e = e
                .to_u64()
                .filter(|&e| e <= MAX_EXPONENT)
                .ok_or_else(|| self.lx.error_at(col, format!("exponent {e} exceeds {MAX_EXPONENT}")))?;
            return Ok(base.pow(e as u32));
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<Polynomial, ParseError> {
        let col = self.lx.col();
        match self.lx.peek().clone() {
            Tok::Sym('(') => {
                self.lx.bump();
                let p = self.poly()?;
                self.lx.expect_sym(')', &[")", "+", "-", "*", "^"])?;
                Ok(p)
            }
            Tok::Sym('-') | Tok::Nat(_) => {
                let neg = self.lx.eat_sym('-');
                let (num, _) = self.lx.nat(&["number"])?;
                let mut q = BigRational::from_integer(num);
                if self.lx.eat_sym('/') {
                    let (den, dcol) = self.lx.nat(&["denominator"])?;
                    if den.is_zero() {
                        return Err(self.lx.error_at(dcol, "division by zero".into()));
                    }
                    q /= BigRational::from_integer(den);
                }
                if neg {
                    q = -q;
                }
                let c = self.ring.field().from_rational(&q).map_err(|e| self.lx.error_at(col, e.to_string()))?;
                Ok(Polynomial::constant(self.ring, c))
            }
            Tok::Word(name) => {
                self.lx.bump();
                match self.ring.index_of(&name) {
                    Some(i) => Ok(Polynomial::var(self.ring, i)),
                    None => Err(self.lx.error_at(col, format!("unknown variable `{name}`"))),
                }
            }
            _ => Err(self.lx.error(&TERM_START)),
        }
    }
}

/// Canonical text: field, ring, ideal, flags, one line each.
pub fn print(p: &ProblemFile) -> String {
    let mut s = format!("field {}\n", p.field);
    let vars: Vec<String> = p
        .ring
        .vars()
        .iter()
        .map(|v| format!("{}:{}", v.name, v.weight))
        .collect();
    s.push_str(&format!("ring {}\n", vars.join(", ")));
    if !p.ideal.is_empty() {
        let gens: Vec<String> = p.ideal.iter().map(|g| g.to_machine_string()).collect();
        s.push_str(&format!("ideal {}\n", gens.join(", ")));
    }
    if !p.flags.is_empty() {
        s.push_str(&format!("flag {}\n", p.flags.join(", ")));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hypersurface_problem() {
        let p = parse("field Q\nring x1:1, x2:1, y1:-1, y2:-1\nideal x1*y1 + x2*y2").unwrap();
        assert_eq!(p.ring.weights(), [1, 1, -1, -1]);
        assert_eq!(p.ideal[0].to_string(), "x1*y1 + x2*y2");
    }

    #[test]
    fn defaults() {
        let p = parse("ring x:1").unwrap();
        assert_eq!(p.field, Field::Rational);
        assert!(p.ideal.is_empty());
        assert!(p.flags.is_empty());
    }

    #[test]
    fn homogeneity_error() {
        let e = parse("ring x:1\nideal x + 1").unwrap_err();
        assert_eq!((e.line, e.col), (2, 7));
        assert!(e.message.contains("generator 1"), "{e}");
        assert!(e.message.contains("{1,0}"), "{e}");
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse("ring x:1\nring y:1").unwrap_err();
        assert_eq!((e.line, e.col), (2, 1));
        let e = parse("ring x:1\nideal x*q").unwrap_err();
        assert_eq!((e.line, e.col), (2, 9));
        assert!(e.message.contains("unknown variable"));
        let e = parse("field F9\nring x:1").unwrap_err();
        assert!(e.message.contains("not prime"), "{e}");
        let e = parse("ring x:1\nideal x +").unwrap_err();
        assert_eq!(e.col, 10);
        assert!(e.expected.contains(&"variable".to_string()));
        let e = parse("ring x 1").unwrap_err();
        assert_eq!(e.expected, [":"]);
        assert!(parse("ideal x").is_err());
        assert!(parse("ring x:1\nideal 1/0*x").is_err());
        assert!(parse("ring x:1 $").is_err());
    }

    #[test]
    fn grammar_features() {
        let p = parse(
            "# cone\nfield F7\nideal (x + y)^2 - 2*x*y - x^2, -x*y + z^2  # comment\nring x:1, y:1, z:1\nflag smooth-affine, a\nflag a",
        )
        .unwrap();
        assert_eq!(p.ideal[0].to_string(), "y^2");
        assert_eq!(p.ideal[1].to_string(), "6*x*y + z^2");
        assert_eq!(p.flags, ["smooth-affine", "a"]);
        let q = parse("ring x:0\nideal 1/2*x - -3/4").unwrap();
        assert_eq!(q.ideal[0].to_string(), "1/2*x + 3/4");
    }

    #[test]
    fn print_parse_fixpoint() {
        for text in [
            "ring x:1, y:-1, z:0\nideal x*y - z^2\nflag smooth-affine",
            "field F5\nring a:2\nideal 3*a^2",
            "ring x:0\nideal -x + 1/3, x^2",
            "ring u:1",
        ] {
            let once = print(&parse(text).unwrap());
            let twice = print(&parse(&once).unwrap());
            assert_eq!(once, twice);
        }
    }
}
