use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use super::{CoefficientRing, Element, SemiDirect};
use crate::error::{Error, Result};

/// A product `s₁^{e₁} s₂^{e₂} …` of named elements.
///
/// Tokens are whitespace separated and take the forms `s`, `s^e`, `inv(s)` or
/// `inv(s)^e`. The stored form merges adjacent equal symbols and drops zero
/// exponents.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GroupWord {
    letters: Vec<(String, i64)>,
}

impl GroupWord {
    pub fn new<I, S>(letters: I) -> Self
    where
        I: IntoIterator<Item = (S, i64)>,
        S: Into<String>,
    {
        let mut word = GroupWord::default();
        for (s, e) in letters {
            word.push(s.into(), e);
        }
        word
    }

    fn push(&mut self, sym: String, exp: i64) {
        match self.letters.last_mut() {
            Some((last, e)) if *last == sym => {
                *e += exp;
                if *e == 0 {
                    self.letters.pop();
                }
            }
            _ if exp != 0 => self.letters.push((sym, exp)),
            _ => {}
        }
    }

    pub fn letters(&self) -> &[(String, i64)] {
        &self.letters
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Left-to-right product of powers.
    pub fn eval<C: CoefficientRing>(
        &self,
        group: &SemiDirect<C>,
        bindings: &HashMap<String, Element<C>>,
    ) -> Result<Element<C>>
    where
        C::Exponent: From<i32>,
    {
        let mut acc = group.identity();
        for (sym, exp) in &self.letters {
            let g = bindings
                .get(sym)
                .ok_or_else(|| Error::Unbound(sym.clone()))?;
            let n = i32::try_from(*exp)
                .map_err(|_| Error::OutOfRange(format!("exponent {exp}")))?;
            let power = group.try_pow(g, &C::Exponent::from(n))?;
            acc = group.mul(&acc, &power);
        }
        Ok(acc)
    }
}

fn parse_token(tok: &str) -> Option<(String, i64)> {
    let (base, exp) = match tok.rsplit_once('^') {
        Some((b, e)) => (b, e.parse::<i64>().ok()?),
        None => (tok, 1),
    };
    let (sym, sign) = match base.strip_prefix("inv(").and_then(|s| s.strip_suffix(')')) {
        Some(inner) => (inner, -1),
        None => (base, 1),
    };
    let valid = !sym.is_empty()
        && sym.chars().next().is_some_and(|c| c.is_alphabetic() || c == '_')
        && sym.chars().all(|c| c.is_alphanumeric() || c == '_');
    valid.then(|| (sym.to_string(), sign * exp))
}

impl FromStr for GroupWord {
    type Err = Error;

    fn from_str(src: &str) -> Result<Self> {
        let mut word = GroupWord::default();
        let mut offset = 0;
        for tok in src.split_whitespace() {
            let pos = src[offset..].find(tok).map_or(offset, |p| p + offset);
            offset = pos + tok.len();
            let (sym, exp) = parse_token(tok).ok_or_else(|| Error::Syntax {
                pos,
                msg: format!("bad word token `{tok}`"),
            })?;
            word.push(sym, exp);
        }
        Ok(word)
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .letters
            .iter()
            .map(|(s, e)| if *e == 1 { s.clone() } else { format!("{s}^{e}") })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::BsGroup;

    fn bindings(g: &BsGroup) -> HashMap<String, crate::group::BsElement> {
        HashMap::from([("a".to_string(), g.a()), ("b".to_string(), g.b())])
    }

    #[test]
    fn defining_relation_as_a_word() {
        let g = BsGroup::new(2).unwrap();
        let w: GroupWord = "b^-1 a b".parse().unwrap();
        assert_eq!(w.eval(&g, &bindings(&g)).unwrap(), g.elem(2, 0, 0));
        let w: GroupWord = "inv(b) a b".parse().unwrap();
        assert_eq!(w.eval(&g, &bindings(&g)).unwrap(), g.elem(2, 0, 0));
    }

    #[test]
    fn empty_word_is_identity() {
        let g = BsGroup::new(2).unwrap();
        let w: GroupWord = "".parse().unwrap();
        assert_eq!(w.eval(&g, &bindings(&g)).unwrap(), g.identity());
    }

    #[test]
    fn longhand_commutator_matches_closed_form() {
        let g = BsGroup::new(2).unwrap();
        let w: GroupWord = "a^2 b^-1 a^-2 b".parse().unwrap();
        let got = w.eval(&g, &bindings(&g)).unwrap();
        let a2 = g.pow(&g.a(), 2);
        assert_eq!(got, g.comm(&g.inv(&a2), &g.b()));
        assert_eq!(got.m, 0);
    }

    #[test]
    fn normalization_merges_and_cancels() {
        let w: GroupWord = "a a^2 b b^-1 a^-3 c".parse().unwrap();
        assert_eq!(w.letters(), &[("c".to_string(), 1)]);
        assert_eq!("a^2 inv(b)^3".parse::<GroupWord>().unwrap().to_string(), "a^2 b^-3");
    }

    #[test]
    fn errors_are_reported() {
        let g = BsGroup::new(2).unwrap();
        let w: GroupWord = "a z".parse().unwrap();
        assert_eq!(w.eval(&g, &bindings(&g)), Err(Error::Unbound("z".into())));
        assert!(matches!("a ^3".parse::<GroupWord>(), Err(Error::Syntax { pos: 2, .. })));
    }
}
