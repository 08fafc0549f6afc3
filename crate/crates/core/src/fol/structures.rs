use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::eval::{Op, PredicateOracle, Structure, Verdict};
use super::Language;
use crate::error::{Error, Result};
use crate::group::{BsElement, BsGroup};

/// The integers of `[lo, hi]` ordered `0, 1, -1, 2, -2, …`.
pub fn order_small_first(lo: i64, hi: i64) -> Vec<i64> {
    let mut v: Vec<i64> = (lo..=hi).collect();
    v.sort_by_key(|x| (x.unsigned_abs(), *x < 0));
    v
}

/// Coordinate bounds `|z| ≤ z_max`, `i_min ≤ i ≤ i_max`, `|m| ≤ m_max` for
/// group elements `(z·kⁱ, m)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GroupBox {
    pub z_max: i64,
    pub i_min: i64,
    pub i_max: i64,
    pub m_max: i64,
}

impl Default for GroupBox {
    fn default() -> Self {
        GroupBox {
            z_max: 3,
            i_min: 0,
            i_max: 3,
            m_max: 3,
        }
    }
}

impl GroupBox {
    pub fn new(z_max: i64, i_max: i64, m_max: i64) -> Self {
        GroupBox {
            z_max,
            i_min: 0,
            i_max,
            m_max,
        }
    }

    pub fn with_i_range(mut self, i_min: i64, i_max: i64) -> Self {
        self.i_min = i_min;
        self.i_max = i_max;
        self
    }

    /// The image of the box under `(z, i, m) ↦ (z·kⁱ, m)`, duplicates removed,
    /// in lexicographic order of `(z, i, m)` with each coordinate ordered small first.
    pub fn elements(&self, group: &BsGroup) -> Vec<BsElement> {
        let mut seen = std::collections::HashSet::new();
        let mut out = Vec::new();
        for z in order_small_first(-self.z_max, self.z_max) {
            for i in order_small_first(self.i_min, self.i_max) {
                for m in order_small_first(-self.m_max, self.m_max) {
                    let g = group.elem(z, -i, m);
                    if seen.insert(g.clone()) {
                        out.push(g);
                    }
                }
            }
        }
        out
    }
}

/// BS(1,k) with a finite enumeration box and an optional predicate oracle.
#[derive(Clone)]
pub struct GroupStructure {
    group: BsGroup,
    domain: Vec<BsElement>,
    oracle: Option<Arc<dyn PredicateOracle<BsElement>>>,
}

impl fmt::Debug for GroupStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GroupStructure")
            .field("k", &self.group.k())
            .field("domain_len", &self.domain.len())
            .field("oracle", &self.oracle.is_some())
            .finish()
    }
}

impl GroupStructure {
    pub fn new(group: BsGroup, bounds: GroupBox) -> Self {
        let domain = bounds.elements(&group);
        GroupStructure {
            group,
            domain,
            oracle: None,
        }
    }

    pub fn with_domain(group: BsGroup, domain: Vec<BsElement>) -> Self {
        GroupStructure {
            group,
            domain,
            oracle: None,
        }
    }

    pub fn with_oracle(mut self, oracle: Arc<dyn PredicateOracle<BsElement>>) -> Self {
        self.oracle = Some(oracle);
        self
    }

    pub fn group(&self) -> &BsGroup {
        &self.group
    }
}

impl Structure for GroupStructure {
    type Elem = BsElement;

    fn language(&self) -> Language {
        Language::Group
    }

    fn domain(&self) -> &[BsElement] {
        &self.domain
    }

    fn apply(&self, op: Op, args: &[BsElement]) -> Result<BsElement> {
        let g = &self.group;
        match (op, args) {
            (Op::Identity, []) => Ok(g.identity()),
            (Op::Mul, [a, b]) => Ok(g.mul(a, b)),
            (Op::Inv, [a]) => Ok(g.inv(a)),
            _ => Err(Error::LanguageMismatch(format!("{op:?} in a group structure"))),
        }
    }

    fn predicate(&self, name: &str, args: &[BsElement]) -> Option<Result<Verdict<BsElement>>> {
        self.oracle.as_ref()?.eval(name, args)
    }

    fn solve_predicate(&self, name: &str, args: &[Option<BsElement>]) -> Option<Vec<BsElement>> {
        self.oracle.as_ref()?.solve(name, args)
    }
}

/// `z ≥ 0` and `x = y^z`, with `y⁰ = 1`.
pub fn exp_holds(x: &BigInt, y: &BigInt, z: &BigInt) -> bool {
    if z.is_negative() {
        return false;
    }
    if z.is_zero() {
        return x.is_one();
    }
    if y.is_zero() || y.abs().is_one() {
        let odd = z.is_odd();
        return *x == if y.is_negative() && !odd { BigInt::one() } else { y.clone() };
    }
    match z.to_u64() {
        Some(e) if e <= x.bits() + 1 => *x == num_traits::pow(y.clone(), e as usize),
        _ => false,
    }
}

/// The values of the unknown argument of `x = y^z`, or `None` if infinitely many.
fn exp_solutions(args: [Option<&BigInt>; 3]) -> Option<Vec<BigInt>> {
    let one = BigInt::one();
    match args {
        [None, Some(y), Some(z)] => {
            if z.is_negative() {
                return Some(vec![]);
            }
            if y.is_zero() || y.abs().is_one() {
                let x = if z.is_zero() {
                    one
                } else if y.is_negative() && z.is_even() {
                    one
                } else {
                    y.clone()
                };
                return Some(vec![x]);
            }
            let e = z.to_usize().filter(|e| *e <= 1 << 16)?;
            Some(vec![num_traits::pow(y.clone(), e)])
        }
        [Some(x), None, Some(z)] => {
            if z.is_negative() {
                return Some(vec![]);
            }
            if z.is_zero() {
                return if x.is_one() { None } else { Some(vec![]) };
            }
            let n = z.to_u32().filter(|n| u64::from(*n) <= x.bits() + 1);
            let Some(n) = n else {
                let small = [BigInt::zero(), one.clone(), -one];
                return Some(small.into_iter().filter(|y| exp_holds(x, y, z)).collect());
            };
            let root = x.abs().nth_root(n);
            let mut out = Vec::new();
            for cand in [root.clone(), -root] {
                if exp_holds(x, &cand, z) && !out.contains(&cand) {
                    out.push(cand);
                }
            }
            Some(out)
        }
        [Some(x), Some(y), None] => {
            if y.is_zero() {
                return if x.is_zero() {
                    None
                } else {
                    Some(if x.is_one() { vec![BigInt::zero()] } else { vec![] })
                };
            }
            if y.abs().is_one() {
                return if x.abs().is_one() && (x.is_one() || y.is_negative()) {
                    None
                } else {
                    Some(vec![])
                };
            }
            let mut p = one;
            let mut z = 0u64;
            while p.abs() <= x.abs() {
                if p == *x {
                    return Some(vec![BigInt::from(z)]);
                }
                p *= y;
                z += 1;
            }
            Some(vec![])
        }
        _ => None,
    }
}

/// The ring ℤ with `exp` atoms, enumerating `[-range, range]`.
#[derive(Clone, Debug)]
pub struct IntegerStructure {
    domain: Vec<BigInt>,
}

impl IntegerStructure {
    pub fn new(range: i64) -> Self {
        IntegerStructure {
            domain: order_small_first(-range, range)
                .into_iter()
                .map(BigInt::from)
                .collect(),
        }
    }
}

impl Structure for IntegerStructure {
    type Elem = BigInt;

    fn language(&self) -> Language {
        Language::Ring
    }

    fn domain(&self) -> &[BigInt] {
        &self.domain
    }

    fn apply(&self, op: Op, args: &[BigInt]) -> Result<BigInt> {
        match (op, args) {
            (Op::Zero, []) => Ok(BigInt::zero()),
            (Op::One, []) => Ok(BigInt::one()),
            (Op::Add, [a, b]) => Ok(a + b),
            (Op::Times, [a, b]) => Ok(a * b),
            _ => Err(Error::LanguageMismatch(format!("{op:?} in a ring structure"))),
        }
    }

    fn exp_atom(&self, x: &BigInt, y: &BigInt, z: &BigInt) -> Result<bool> {
        Ok(exp_holds(x, y, z))
    }

    fn solve_add(&self, target: &BigInt, b: &BigInt) -> Option<BigInt> {
        Some(target - b)
    }

    fn solve_times(&self, target: &BigInt, b: &BigInt) -> Option<Vec<BigInt>> {
        if b.is_zero() {
            return if target.is_zero() { None } else { Some(vec![]) };
        }
        let (q, r) = target.div_rem(b);
        Some(if r.is_zero() { vec![q] } else { vec![] })
    }

    fn solve_exp(&self, args: [Option<&BigInt>; 3]) -> Option<Vec<BigInt>> {
        exp_solutions(args)
    }
}
