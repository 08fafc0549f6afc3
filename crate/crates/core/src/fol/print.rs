use std::fmt;

use super::{Formula, Term};

impl Term {
    /// `Some(n)` for `1` and left-nested sums `((1 + 1) + …)`.
    fn as_numeral(&self) -> Option<u64> {
        match self {
            Term::One => Some(1),
            Term::Add(a, b) if **b == Term::One => a.as_numeral().map(|n| n + 1),
            _ => None,
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(n) = self.as_numeral() {
            return write!(f, "{n}");
        }
        match self {
            Term::Var(v) => f.write_str(v),
            Term::Identity => f.write_str("e"),
            Term::Mul(a, b) | Term::Times(a, b) => write!(f, "({a} * {b})"),
            Term::Inv(a) => write!(f, "inv({a})"),
            Term::Zero => f.write_str("0"),
            Term::One => f.write_str("1"),
            Term::Add(a, b) => write!(f, "({a} + {b})"),
        }
    }
}

struct Operand<'a>(&'a Formula);

impl fmt::Display for Operand<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            q @ (Formula::Exists(..) | Formula::Forall(..)) => write!(f, "({q})"),
            other => write!(f, "{other}"),
        }
    }
}

/// Fully parenthesized rendering accepted by [`super::parse_formula`].
impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::True => f.write_str("true"),
            Formula::Eq(a, b) => write!(f, "{a} = {b}"),
            Formula::Exp(x, y, z) => write!(f, "exp({x}, {y}, {z})"),
            Formula::Pred(name, args) => {
                write!(f, "{name}(")?;
                for (i, t) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{t}")?;
                }
                f.write_str(")")
            }
            Formula::Not(a) => write!(f, "~{}", Operand(a)),
            Formula::And(a, b) => write!(f, "({} & {})", Operand(a), Operand(b)),
            Formula::Or(a, b) => write!(f, "({} | {})", Operand(a), Operand(b)),
            Formula::Implies(a, b) => write!(f, "({} -> {})", Operand(a), Operand(b)),
            Formula::Exists(v, body) => write!(f, "E {v} . {body}"),
            Formula::Forall(v, body) => write!(f, "A {v} . {body}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use crate::fol::{parse_formula, Language};

    fn round_trip(src: &str, lang: Language) -> String {
        let f = parse_formula(src, lang).unwrap();
        let printed = f.to_string();
        assert_eq!(parse_formula(&printed, lang).unwrap(), f, "{printed}");
        printed
    }

    #[test]
    fn printing_is_parenthesized() {
        assert_eq!(round_trip("x = x", Language::Group), "x = x");
        assert_eq!(round_trip("E u . (u = inv(u))", Language::Group), "E u . u = inv(u)");
        assert_eq!(
            round_trip("A y . ([inv(y)*x*y, x] = e)", Language::Group),
            "A y . (((inv(((inv(y) * x) * y)) * inv(x)) * ((inv(y) * x) * y)) * x) = e"
        );
        assert_eq!(
            round_trip("~E x . x = y & A z . z = z", Language::Group),
            "~(E x . (x = y & (A z . z = z)))"
        );
        assert_eq!(round_trip("(E x . x = y) & z = z", Language::Group), "((E x . x = y) & z = z)");
    }

    #[test]
    fn numerals_round_trip() {
        assert_eq!(round_trip("x = 3 * (1 + 2)", Language::Ring), "x = (3 * (1 + 2))");
        assert_eq!(round_trip("exp(x, 0, 1) | ~x = 2", Language::Ring), "(exp(x, 0, 1) | ~x = 2)");
    }
}
