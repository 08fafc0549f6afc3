use std::collections::HashMap;
use std::sync::Mutex;

use super::{commute, semantic, witness_check, Name, WitnessConfig};
use crate::error::Result;
use crate::fol::{exp_holds, PredicateOracle, Verdict};
use crate::group::{BsElement, BsGroup};

/// Decides the named group predicates by their algebraic characterization.
///
/// `pronic` is answered only for `t ∈ Ab`; elsewhere the evaluator falls back
/// to the definition.
#[derive(Clone, Debug)]
pub struct SemanticOracle {
    group: BsGroup,
}

impl SemanticOracle {
    pub fn new(group: BsGroup) -> Self {
        SemanticOracle { group }
    }
}

impl SemanticOracle {
    /// `expg(x, y, z, t)`: `x, y, z ∈ ⟨t⟩` for `t ∈ Ab` and `m(x) = m(y)^{m(z)}`.
    fn expg(&self, args: &[BsElement]) -> Option<bool> {
        let [x, y, z, t] = args else { return None };
        if t.m != 1 {
            return None;
        }
        let in_c = [x, y, z].iter().all(|u| commute(&self.group, u, t));
        Some(in_c && exp_holds(&x.m.into(), &y.m.into(), &z.m.into()))
    }
}

impl PredicateOracle<BsElement> for SemanticOracle {
    fn eval(&self, name: &str, args: &[BsElement]) -> Option<Result<Verdict<BsElement>>> {
        if name == "expg" {
            return self.expg(args).map(|b| Ok(Verdict::from_bool(b)));
        }
        let name: Name = name.parse().ok()?;
        match name {
            Name::ThetaZ => return None,
            Name::Pronic if args.len() == 3 && args[2].m != 1 => return None,
            _ => {}
        }
        Some(semantic(&self.group, name, args).map(Verdict::from_bool))
    }

    fn solve(&self, name: &str, args: &[Option<BsElement>]) -> Option<Vec<BsElement>> {
        let g = &self.group;
        match (name, args) {
            ("pronic", [Some(x), None, Some(t)]) if t.m == 1 => {
                if !commute(g, x, t) {
                    return Some(vec![]);
                }
                let n = x.m.checked_mul(x.m.checked_add(1)?)?;
                Some(vec![g.pow(t, n)])
            }
            ("gamma", [Some(x), Some(y), None, Some(t)]) if t.m == 1 => {
                if !commute(g, x, t) || !commute(g, y, t) {
                    return Some(vec![]);
                }
                Some(vec![g.pow(t, x.m.checked_mul(y.m)?)])
            }
            ("expg", [None, Some(y), Some(z), Some(t)]) if t.m == 1 => {
                if !commute(g, y, t) || !commute(g, z, t) || z.m < 0 {
                    return Some(vec![]);
                }
                Some(vec![g.pow(t, y.m.checked_pow(u32::try_from(z.m).ok()?)?)])
            }
            _ => None,
        }
    }
}

/// Decides `alpha`, `beta`, `delta`, `pronic`, `tau` and `pi` by their witness
/// checkers, memoizing the verdicts; `gamma` goes to the semantics.
pub struct WitnessOracle {
    semantic: SemanticOracle,
    config: WitnessConfig,
    memo: Mutex<HashMap<(Name, Vec<BsElement>), Verdict<BsElement>>>,
}

impl WitnessOracle {
    pub fn new(group: BsGroup, config: WitnessConfig) -> Self {
        WitnessOracle {
            semantic: SemanticOracle::new(group),
            config,
            memo: Mutex::new(HashMap::new()),
        }
    }
}

impl PredicateOracle<BsElement> for WitnessOracle {
    fn eval(&self, name: &str, args: &[BsElement]) -> Option<Result<Verdict<BsElement>>> {
        let Ok(parsed) = name.parse::<Name>() else {
            return self.semantic.eval(name, args);
        };
        match parsed {
            Name::Alpha | Name::Beta | Name::Delta | Name::Tau | Name::Pi => {}
            Name::Pronic if args.len() == 3 && args[2].m == 1 => {}
            Name::Gamma | Name::Pronic => return self.semantic.eval(name, args),
            Name::ThetaBs | Name::ThetaZ => return None,
        }
        let key = (parsed, args.to_vec());
        if let Some(v) = self.memo.lock().expect("memo lock").get(&key) {
            return Some(Ok(v.clone()));
        }
        let report = match witness_check(&self.semantic.group, parsed, args, &self.config) {
            Ok(r) => r,
            Err(e) => return Some(Err(e)),
        };
        self.memo
            .lock()
            .expect("memo lock")
            .insert(key, report.verdict.clone());
        Some(Ok(report.verdict))
    }

    fn solve(&self, name: &str, args: &[Option<BsElement>]) -> Option<Vec<BsElement>> {
        self.semantic.solve(name, args)
    }
}
