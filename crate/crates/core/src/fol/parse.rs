use std::collections::HashSet;

use super::{Formula, Language, Term};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(u64),
    LParen,
    RParen,
    LBrack,
    RBrack,
    Comma,
    Dot,
    Star,
    Plus,
    Minus,
    Eq,
    Tilde,
    Amp,
    Bar,
    Arrow,
    Caret,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Int(n) => format!("`{n}`"),
            other => format!("`{}`", match other {
                Tok::LParen => "(",
                Tok::RParen => ")",
                Tok::LBrack => "[",
                Tok::RBrack => "]",
                Tok::Comma => ",",
                Tok::Dot => ".",
                Tok::Star => "*",
                Tok::Plus => "+",
                Tok::Minus => "-",
                Tok::Eq => "=",
                Tok::Tilde => "~",
                Tok::Amp => "&",
                Tok::Bar => "|",
                Tok::Arrow => "->",
                Tok::Caret => "^",
                Tok::Ident(_) | Tok::Int(_) => unreachable!(),
            }),
        }
    }
}

const KEYWORDS: [&str; 6] = ["E", "A", "e", "inv", "exp", "true"];

fn lex(src: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        if c.is_ascii_alphabetic() || c == '_' {
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((start, Tok::Ident(src[start..i].to_string())));
            continue;
        }
        if c.is_ascii_digit() {
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let n = src[start..i].parse().map_err(|_| Error::Syntax {
                pos: start,
                msg: "integer literal too large".into(),
            })?;
            out.push((start, Tok::Int(n)));
            continue;
        }
        let tok = match c {
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '[' => Tok::LBrack,
            ']' => Tok::RBrack,
            ',' => Tok::Comma,
            '.' => Tok::Dot,
            '*' => Tok::Star,
            '+' => Tok::Plus,
            '=' => Tok::Eq,
            '~' => Tok::Tilde,
            '&' => Tok::Amp,
            '|' => Tok::Bar,
            '^' => Tok::Caret,
            '-' if bytes.get(i + 1) == Some(&b'>') => {
                i += 1;
                Tok::Arrow
            }
            '-' => Tok::Minus,
            _ => {
                return Err(Error::Syntax {
                    pos: start,
                    msg: format!("unexpected character `{c}`"),
                })
            }
        };
        i += 1;
        out.push((start, tok));
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    lang: Language,
    /// Token positions where `(` was already tried as an opening formula parenthesis and failed.
    not_formula: HashSet<usize>,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn peek_at(&self, offset: usize) -> Option<&Tok> {
        self.toks.get(self.pos + offset).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn error<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            pos: self.offset(),
            msg: msg.into(),
        })
    }

    fn unexpected<T>(&self, wanted: &str) -> Result<T> {
        match self.peek() {
            Some(t) => self.error(format!("expected {wanted}, found {}", t.describe())),
            None => self.error(format!("expected {wanted}, found end of input")),
        }
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: Tok) -> Result<()> {
        if self.eat(&tok) {
            Ok(())
        } else {
            self.unexpected(&tok.describe())
        }
    }

    fn is_ident(&self, name: &str) -> bool {
        matches!(self.peek(), Some(Tok::Ident(s)) if s == name)
    }

    fn variable(&mut self) -> Result<String> {
        match self.peek() {
            Some(Tok::Ident(s)) if !KEYWORDS.contains(&s.as_str()) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => self.unexpected("a variable"),
        }
    }

    fn formula(&mut self) -> Result<Formula> {
        let lhs = self.disjunction()?;
        if self.eat(&Tok::Arrow) {
            let rhs = self.formula()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> Result<Formula> {
        let mut f = self.conjunction()?;
        while self.eat(&Tok::Bar) {
            f = Formula::or(f, self.conjunction()?);
        }
        Ok(f)
    }

    fn conjunction(&mut self) -> Result<Formula> {
        let mut f = self.unary()?;
        while self.eat(&Tok::Amp) {
            f = Formula::and(f, self.unary()?);
        }
        Ok(f)
    }

    fn unary(&mut self) -> Result<Formula> {
        if self.eat(&Tok::Tilde) {
            return Ok(Formula::not(self.unary()?));
        }
        for (kw, universal) in [("E", false), ("A", true)] {
            if self.is_ident(kw) {
                self.pos += 1;
                let var = self.variable()?;
                self.expect(Tok::Dot)?;
                let body = self.formula()?;
                return Ok(if universal {
                    Formula::forall(var, body)
                } else {
                    Formula::exists(var, body)
                });
            }
        }
        if self.is_ident("true") {
            self.pos += 1;
            return Ok(Formula::True);
        }
        if self.peek() == Some(&Tok::LParen) && !self.not_formula.contains(&self.pos) {
            let save = self.pos;
            self.pos += 1;
            if let Ok(f) = self.formula() {
                if self.eat(&Tok::RParen) {
                    return Ok(f);
                }
            }
            self.pos = save;
            self.not_formula.insert(save);
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<Formula> {
        if self.is_ident("exp") && self.peek_at(1) == Some(&Tok::LParen) {
            if self.lang != Language::Ring {
                return self.error("exp atoms belong to the ring language");
            }
            self.pos += 2;
            let x = self.term()?;
            self.expect(Tok::Comma)?;
            let y = self.term()?;
            self.expect(Tok::Comma)?;
            let z = self.term()?;
            self.expect(Tok::RParen)?;
            return Ok(Formula::exp(x, y, z));
        }
        if let (Some(Tok::Ident(name)), Some(Tok::LParen)) = (self.peek(), self.peek_at(1)) {
            if !KEYWORDS.contains(&name.as_str()) {
                let name = name.clone();
                self.pos += 2;
                let mut args = vec![self.term()?];
                while self.eat(&Tok::Comma) {
                    args.push(self.term()?);
                }
                self.expect(Tok::RParen)?;
                return Ok(Formula::pred(name, args));
            }
        }
        let lhs = self.term()?;
        self.expect(Tok::Eq)?;
        let rhs = self.term()?;
        Ok(Formula::eq(lhs, rhs))
    }

    fn term(&mut self) -> Result<Term> {
        match self.lang {
            Language::Group => self.group_product(),
            Language::Ring => self.ring_sum(),
        }
    }

    fn group_product(&mut self) -> Result<Term> {
        let mut t = self.group_power()?;
        while self.eat(&Tok::Star) {
            t = Term::mul(t, self.group_power()?);
        }
        Ok(t)
    }

    fn group_power(&mut self) -> Result<Term> {
        let mut t = self.group_base()?;
        while self.eat(&Tok::Caret) {
            let negative = self.eat(&Tok::Minus);
            let n = match self.peek() {
                Some(Tok::Int(n)) => *n,
                _ => return self.unexpected("an integer exponent"),
            };
            self.pos += 1;
            let n = i64::try_from(n).map_err(|_| Error::Syntax {
                pos: self.offset(),
                msg: "exponent too large".into(),
            })?;
            t = Term::power(t, if negative { -n } else { n });
        }
        Ok(t)
    }

    fn group_base(&mut self) -> Result<Term> {
        if self.is_ident("e") {
            self.pos += 1;
            return Ok(Term::Identity);
        }
        if self.is_ident("inv") {
            self.pos += 1;
            self.expect(Tok::LParen)?;
            let t = self.term()?;
            self.expect(Tok::RParen)?;
            return Ok(Term::inv(t));
        }
        if self.eat(&Tok::LBrack) {
            let s = self.term()?;
            self.expect(Tok::Comma)?;
            let t = self.term()?;
            self.expect(Tok::RBrack)?;
            return Ok(Term::comm(s, t));
        }
        if self.eat(&Tok::LParen) {
            let t = self.term()?;
            self.expect(Tok::RParen)?;
            return Ok(t);
        }
        if let Some(Tok::Int(_) | Tok::Plus) = self.peek() {
            return self.error("ring symbol in a group-language term");
        }
        Ok(Term::Var(self.variable()?))
    }

    fn ring_sum(&mut self) -> Result<Term> {
        let mut t = self.ring_product()?;
        while self.eat(&Tok::Plus) {
            t = Term::add(t, self.ring_product()?);
        }
        Ok(t)
    }

    fn ring_product(&mut self) -> Result<Term> {
        let mut t = self.ring_base()?;
        while self.eat(&Tok::Star) {
            t = Term::times(t, self.ring_base()?);
        }
        Ok(t)
    }

    fn ring_base(&mut self) -> Result<Term> {
        if let Some(Tok::Int(n)) = self.peek() {
            let n = *n;
            if n > 1_000 {
                return self.error("numeral too large to unfold into a sum of ones");
            }
            self.pos += 1;
            return Ok(match n {
                0 => Term::Zero,
                1 => Term::One,
                n => Term::numeral(n),
            });
        }
        if self.eat(&Tok::LParen) {
            let t = self.term()?;
            self.expect(Tok::RParen)?;
            return Ok(t);
        }
        if self.is_ident("e") || self.is_ident("inv") || self.peek() == Some(&Tok::LBrack) {
            return self.error("group symbol in a ring-language term");
        }
        Ok(Term::Var(self.variable()?))
    }
}

fn parser(src: &str, lang: Language) -> Result<Parser> {
    Ok(Parser {
        toks: lex(src)?,
        pos: 0,
        end: src.len(),
        lang,
        not_formula: HashSet::new(),
    })
}

/// Parses a formula of the given language.
///
/// Besides the fully parenthesized form produced by the printer, `*`, `+`,
/// `&` and `|` may be chained without parentheses (left associative, `&`
/// binding tighter than `|`, `->` right associative and loosest), and a
/// quantifier's scope extends as far right as possible.
pub fn parse_formula(src: &str, lang: Language) -> Result<Formula> {
    let mut p = parser(src, lang)?;
    let f = p.formula()?;
    if p.peek().is_some() {
        return p.unexpected("end of input");
    }
    Ok(f)
}

pub fn parse_term(src: &str, lang: Language) -> Result<Term> {
    let mut p = parser(src, lang)?;
    let t = p.term()?;
    if p.peek().is_some() {
        return p.unexpected("end of input");
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(src: &str) -> Formula {
        parse_formula(src, Language::Group).unwrap()
    }

    #[test]
    fn alpha_desugars_commutator() {
        let f = g("A y . ([inv(y)*x*y, x] = e)");
        let conj = Term::product([Term::inv(Term::var("y")), Term::var("x"), Term::var("y")]);
        let expected = Formula::forall(
            "y",
            Formula::eq(Term::comm(conj, Term::var("x")), Term::Identity),
        );
        assert_eq!(f, expected);
        assert_eq!(f.free_vars().into_iter().collect::<Vec<_>>(), ["x"]);
    }

    #[test]
    fn simple_atoms() {
        assert_eq!(g("x = x"), Formula::eq(Term::var("x"), Term::var("x")));
        assert_eq!(
            g("E u . (u = inv(u))"),
            Formula::exists("u", Formula::eq(Term::var("u"), Term::inv(Term::var("u"))))
        );
    }

    #[test]
    fn powers_and_precedence() {
        assert_eq!(g("x^2 = e"), g("(x * x) = e"));
        assert_eq!(g("x^-2 = e"), g("(inv(x) * inv(x)) = e"));
        assert_eq!(g("x^0 = e"), g("e = e"));
        assert_eq!(
            g("a = b & c = d | f = h -> x = y"),
            g("(((a = b & c = d) | f = h) -> x = y)")
        );
        assert_eq!(g("(x * y) = z"), g("x*y = z"));
    }

    #[test]
    fn ring_language() {
        let f = parse_formula("exp(x, y + 1, 3) & x * 0 = 1", Language::Ring).unwrap();
        let expected = Formula::and(
            Formula::exp(
                Term::var("x"),
                Term::add(Term::var("y"), Term::One),
                Term::numeral(3),
            ),
            Formula::eq(Term::times(Term::var("x"), Term::Zero), Term::One),
        );
        assert_eq!(f, expected);
    }

    #[test]
    fn predicates() {
        assert_eq!(
            g("alpha(inv(x)) -> beta(y)"),
            Formula::implies(
                Formula::pred("alpha", vec![Term::inv(Term::var("x"))]),
                Formula::pred("beta", vec![Term::var("y")])
            )
        );
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let err = |src: &str, lang| match parse_formula(src, lang) {
            Err(Error::Syntax { pos, .. }) => pos,
            other => panic!("{src}: {other:?}"),
        };
        assert_eq!(err("x = ", Language::Group), 4);
        assert_eq!(err("x # y", Language::Group), 2);
        assert_eq!(err("E e . x = x", Language::Group), 2);
        assert_eq!(err("x = 1", Language::Group), 4);
        assert_eq!(err("exp(x, y, z)", Language::Group), 0);
        assert_eq!(err("x = y y", Language::Group), 6);
    }
}
