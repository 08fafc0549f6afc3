//! Interpretation codes, the translation `φ ↦ φ_Γ`, code composition, and the
//! concrete codes `Δ` (BS(1,k) in ℤ) and `Γ` (ℤ in BS(1,k)).

mod biinterp;
mod corpus;
mod delta;
mod expeq;
mod gamma;

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fol::{self, expand, substitute, Definitions, Formula, Language, Term};

pub use biinterp::{verify_biinterp, BiinterpBox, BiinterpReport, ParamPair, Violation};
pub use corpus::{check_corpus, corpus_group, corpus_ring, CorpusBox, CorpusReport};
pub use delta::{
    code_delta, mu_delta, mu_delta_section, theta_z, theta_z_check, theta_z_formula, Triple,
};
pub use gamma::{code_gamma, mu_gamma, theta_bs_check, theta_bs_image};

/// The function and relation symbols of a language, with their argument counts.
pub fn symbols(lang: Language) -> &'static [(&'static str, usize)] {
    match lang {
        Language::Group => &[("mul", 2), ("inv", 1), ("e", 0)],
        Language::Ring => &[("add", 2), ("times", 2), ("zero", 0), ("one", 0)],
    }
}

/// `exp` is a relation of the ring language, present as an extension.
const EXTENSIONS: [(&str, usize); 1] = [("exp", 3)];

fn arity(lang: Language, symbol: &str) -> Option<(usize, bool)> {
    symbols(lang)
        .iter()
        .find(|(s, _)| *s == symbol)
        .map(|(_, n)| (*n, true))
        .or_else(|| {
            (lang == Language::Ring)
                .then(|| EXTENSIONS.iter().find(|(s, _)| *s == symbol).map(|(_, n)| (*n, false)))
                .flatten()
        })
}

/// A formula of a code over formal source variables.
///
/// Each formal variable `v` stands for its coordinate tuple in the target; the
/// code's parameters occur free under their own names.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeFormula {
    pub vars: Vec<String>,
    pub body: Formula,
}

impl CodeFormula {
    pub fn new<S: Into<String>>(vars: impl IntoIterator<Item = S>, body: Formula) -> Self {
        CodeFormula {
            vars: vars.into_iter().map(Into::into).collect(),
            body,
        }
    }
}

/// An interpretation code `Γ = {U_Γ, E_Γ, Q_Γ}`.
///
/// `graphs` holds the graph of every source symbol, closed under `E`. For
/// function symbols a code may also supply in `functional` a formula picking
/// one representative of the value; the translation uses it when present,
/// which keeps introduced witnesses determined.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InterpCode {
    pub name: String,
    pub source: Language,
    pub target: Language,
    /// Suffixes naming the coordinates of a tuple; `""` keeps the variable name.
    pub coords: Vec<String>,
    pub params: Vec<String>,
    pub domain: CodeFormula,
    pub equiv: CodeFormula,
    pub graphs: BTreeMap<String, CodeFormula>,
    pub functional: BTreeMap<String, CodeFormula>,
    /// Definitions of predicate atoms the code's formulas mention.
    pub definitions: Definitions,
}

fn join(base: &str, coord: &str) -> String {
    match (base.is_empty(), coord.is_empty()) {
        (_, true) => base.to_string(),
        (true, false) => coord.to_string(),
        _ => format!("{base}_{coord}"),
    }
}

impl InterpCode {
    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn dim_par(&self) -> usize {
        self.params.len()
    }

    /// The target variables standing for the source variable `v`.
    pub fn tuple(&self, v: &str) -> Vec<String> {
        self.coords.iter().map(|c| join(v, c)).collect()
    }

    /// `U`, `E` and every graph, checked against the invariants of a code.
    pub fn validate(&self) -> Result<()> {
        if self.coords.is_empty() {
            return Err(Error::Precondition(format!("{}: dimension 0", self.name)));
        }
        let mut seen = BTreeSet::new();
        if !self.coords.iter().all(|c| seen.insert(c)) {
            return Err(Error::Precondition(format!("{}: repeated coordinate", self.name)));
        }
        let check = |what: &str, f: &CodeFormula, n: usize| -> Result<()> {
            if f.vars.len() != n {
                return Err(Error::Arity {
                    name: format!("{}.{what}", self.name),
                    expected: n,
                    got: f.vars.len(),
                });
            }
            let mut allowed: BTreeSet<String> = self.params.iter().cloned().collect();
            for v in &f.vars {
                allowed.extend(self.tuple(v));
            }
            let free = f.body.free_vars();
            if let Some(stray) = free.iter().find(|v| !allowed.contains(*v)) {
                return Err(Error::Unbound(format!("{stray} in {}.{what}", self.name)));
            }
            if let Some(lang) = f.body.language()? {
                if lang != self.target {
                    return Err(Error::LanguageMismatch(format!("{}.{what}", self.name)));
                }
            }
            Ok(())
        };
        check("U", &self.domain, 1)?;
        check("E", &self.equiv, 2)?;
        for (sym, n) in symbols(self.source) {
            let g = self
                .graphs
                .get(*sym)
                .ok_or_else(|| Error::UnknownSymbol(format!("{}: no graph for {sym}", self.name)))?;
            check(sym, g, n + 1)?;
        }
        for (sym, g) in &self.graphs {
            let (n, function) =
                arity(self.source, sym).ok_or_else(|| Error::UnknownSymbol(sym.clone()))?;
            check(sym, g, if function { n + 1 } else { n })?;
        }
        for (sym, g) in &self.functional {
            let (n, _) = arity(self.source, sym).ok_or_else(|| Error::UnknownSymbol(sym.clone()))?;
            check(sym, g, n + 1)?;
        }
        Ok(())
    }

    fn instantiate(&self, f: &CodeFormula, actual: &[Vec<String>]) -> Result<Formula> {
        let mut binding = BTreeMap::new();
        for (formal, names) in f.vars.iter().zip(actual) {
            for (from, to) in self.tuple(formal).into_iter().zip(names) {
                if from != *to {
                    binding.insert(from, Term::var(to));
                }
            }
        }
        substitute(&f.body, &binding)
    }

    fn graph_for_translation(&self, sym: &str) -> Result<&CodeFormula> {
        self.functional
            .get(sym)
            .or_else(|| self.graphs.get(sym))
            .ok_or_else(|| Error::UnknownSymbol(format!("{sym} has no graph in {}", self.name)))
    }

    pub fn to_json(&self) -> serde_json::Value {
        let render = |m: &BTreeMap<String, CodeFormula>| -> BTreeMap<String, CodeFormulaDoc> {
            m.iter().map(|(s, f)| (s.clone(), CodeFormulaDoc::from(f))).collect()
        };
        serde_json::to_value(CodeDoc {
            name: self.name.clone(),
            source: self.source.to_string(),
            target: self.target.to_string(),
            dim: self.dim(),
            dim_par: self.dim_par(),
            coords: self.coords.clone(),
            params: self.params.clone(),
            u: (&self.domain).into(),
            e: (&self.equiv).into(),
            graphs: render(&self.graphs),
            functional: render(&self.functional),
        })
        .expect("plain data serializes")
    }

    /// Reads a code written by [`InterpCode::to_json`]; definitions are not serialized.
    pub fn from_json(value: &serde_json::Value, definitions: Definitions) -> Result<Self> {
        let doc: CodeDoc = serde_json::from_value(value.clone())
            .map_err(|e| Error::Syntax { pos: 0, msg: e.to_string() })?;
        let lang = |s: &str| match s {
            "group" => Ok(Language::Group),
            "ring" => Ok(Language::Ring),
            other => Err(Error::UnknownSymbol(other.to_string())),
        };
        let target = lang(&doc.target)?;
        let read = |d: &CodeFormulaDoc| -> Result<CodeFormula> {
            Ok(CodeFormula::new(d.vars.clone(), fol::parse_formula(&d.formula, target)?))
        };
        let read_all = |m: &BTreeMap<String, CodeFormulaDoc>| -> Result<BTreeMap<String, CodeFormula>> {
            m.iter().map(|(s, d)| Ok((s.clone(), read(d)?))).collect()
        };
        let code = InterpCode {
            name: doc.name,
            source: lang(&doc.source)?,
            target,
            coords: doc.coords,
            params: doc.params,
            domain: read(&doc.u)?,
            equiv: read(&doc.e)?,
            graphs: read_all(&doc.graphs)?,
            functional: read_all(&doc.functional)?,
            definitions,
        };
        if code.dim() != doc.dim || code.dim_par() != doc.dim_par {
            return Err(Error::Precondition("dim fields disagree with coords/params".into()));
        }
        code.validate()?;
        Ok(code)
    }
}

#[derive(Serialize, Deserialize)]
struct CodeFormulaDoc {
    vars: Vec<String>,
    formula: String,
}

impl From<&CodeFormula> for CodeFormulaDoc {
    fn from(f: &CodeFormula) -> Self {
        CodeFormulaDoc {
            vars: f.vars.clone(),
            formula: f.body.to_string(),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct CodeDoc {
    name: String,
    source: String,
    target: String,
    dim: usize,
    dim_par: usize,
    coords: Vec<String>,
    params: Vec<String>,
    #[serde(rename = "U")]
    u: CodeFormulaDoc,
    #[serde(rename = "E")]
    e: CodeFormulaDoc,
    graphs: BTreeMap<String, CodeFormulaDoc>,
    #[serde(default)]
    functional: BTreeMap<String, CodeFormulaDoc>,
}

struct Translator<'a> {
    code: &'a InterpCode,
    taken: BTreeSet<String>,
    next: usize,
}

impl Translator<'_> {
    fn fresh(&mut self) -> String {
        loop {
            self.next += 1;
            let cand = format!("w{}", self.next);
            let clash = self.code.tuple(&cand).iter().any(|n| self.taken.contains(n));
            if !clash && self.taken.insert(cand.clone()) {
                self.taken.extend(self.code.tuple(&cand));
                return cand;
            }
        }
    }

    /// Flattens `t`, pushing graph atoms and the introduced source variables.
    fn term(&mut self, t: &Term, atoms: &mut Vec<Formula>, bound: &mut Vec<String>) -> Result<Vec<String>> {
        let (sym, args): (&str, Vec<&Term>) = match t {
            Term::Var(v) => return Ok(self.code.tuple(v)),
            Term::Identity => ("e", vec![]),
            Term::Mul(a, b) => ("mul", vec![a, b]),
            Term::Inv(a) => ("inv", vec![a]),
            Term::Zero => ("zero", vec![]),
            Term::One => ("one", vec![]),
            Term::Add(a, b) => ("add", vec![a, b]),
            Term::Times(a, b) => ("times", vec![a, b]),
        };
        let mut actual = Vec::new();
        for a in args {
            actual.push(self.term(a, atoms, bound)?);
        }
        let out = self.fresh();
        actual.push(self.code.tuple(&out));
        let graph = self.code.graph_for_translation(sym)?;
        atoms.push(self.code.instantiate(graph, &actual)?);
        bound.push(out);
        Ok(actual.pop().expect("pushed"))
    }

    fn close(&self, bound: Vec<String>, atoms: Vec<Formula>) -> Formula {
        let vars: Vec<String> = bound.iter().flat_map(|v| self.code.tuple(v)).collect();
        Formula::exists_all(vars, Formula::and_all(atoms))
    }

    fn formula(&mut self, f: &Formula) -> Result<Formula> {
        Ok(match f {
            Formula::True => Formula::True,
            Formula::Eq(a, b) => {
                let (mut atoms, mut bound) = (Vec::new(), Vec::new());
                let ta = self.term(a, &mut atoms, &mut bound)?;
                let tb = self.term(b, &mut atoms, &mut bound)?;
                atoms.push(self.code.instantiate(&self.code.equiv, &[ta, tb])?);
                self.close(bound, atoms)
            }
            Formula::Exp(x, y, z) => {
                let (mut atoms, mut bound) = (Vec::new(), Vec::new());
                let mut actual = Vec::new();
                for t in [x, y, z] {
                    actual.push(self.term(t, &mut atoms, &mut bound)?);
                }
                let graph = self.code.graph_for_translation("exp")?;
                atoms.push(self.code.instantiate(graph, &actual)?);
                self.close(bound, atoms)
            }
            Formula::Pred(name, _) => {
                return Err(Error::UnknownSymbol(format!(
                    "predicate {name} must be expanded before translation"
                )))
            }
            Formula::Not(a) => Formula::not(self.formula(a)?),
            Formula::And(a, b) => Formula::and(self.formula(a)?, self.formula(b)?),
            Formula::Or(a, b) => Formula::or(self.formula(a)?, self.formula(b)?),
            Formula::Implies(a, b) => Formula::implies(self.formula(a)?, self.formula(b)?),
            Formula::Exists(v, body) => {
                let u = self.code.instantiate(&self.code.domain, &[self.code.tuple(v)])?;
                Formula::exists_all(self.code.tuple(v), Formula::and_all([u, self.formula(body)?]))
            }
            Formula::Forall(v, body) => {
                let u = self.code.instantiate(&self.code.domain, &[self.code.tuple(v)])?;
                let body = self.formula(body)?;
                let inner = if u == Formula::True { body } else { Formula::implies(u, body) };
                Formula::forall_all(self.code.tuple(v), inner)
            }
        })
    }
}

/// `φ_Γ`: each source variable `v` becomes the tuple [`InterpCode::tuple`]`(v)`,
/// equality becomes `E`, applications are flattened into fresh existential
/// tuples constrained by graphs, and quantifiers are relativized to `U`.
pub fn translate(phi: &Formula, code: &InterpCode) -> Result<Formula> {
    if let Some(lang) = phi.language()? {
        if lang != code.source {
            return Err(Error::LanguageMismatch(format!(
                "{lang} formula through {} (source {})",
                code.name, code.source
            )));
        }
    }
    let mut taken = phi.all_vars();
    if let Some(p) = code.params.iter().find(|p| taken.contains(*p)) {
        return Err(Error::Precondition(format!("variable {p} is a parameter of {}", code.name)));
    }
    taken.extend(code.params.iter().cloned());
    let source_vars: Vec<String> = taken.iter().cloned().collect();
    for v in &source_vars {
        taken.extend(code.tuple(v));
    }
    let mut tr = Translator { code, taken, next: 0 };
    tr.formula(phi)
}

/// [`translate`] after inlining the predicate atoms of `phi` by `defs`.
pub fn translate_expanded(phi: &Formula, code: &InterpCode, defs: &Definitions) -> Result<Formula> {
    translate(&expand(phi, defs)?, code)
}

/// `Γ∘Δ` for `Γ` interpreting `A` in `B` and `Δ` interpreting `B` in `C`.
///
/// Every formula of `Γ` is translated through `Δ`; `U` is additionally
/// relativized coordinatewise to `U_Δ`. Extension graphs that mention opaque
/// predicates of `Γ` are dropped.
pub fn compose(gamma: &InterpCode, delta: &InterpCode) -> Result<InterpCode> {
    if gamma.target != delta.source {
        return Err(Error::LanguageMismatch(format!(
            "{} targets {}, {} reads {}",
            gamma.name, gamma.target, delta.name, delta.source
        )));
    }
    let coords: Vec<String> = gamma
        .coords
        .iter()
        .flat_map(|c1| delta.coords.iter().map(move |c2| join(c1, c2)))
        .collect();
    let mut params: Vec<String> = gamma.params.iter().flat_map(|p| delta.tuple(p)).collect();
    params.extend(delta.params.iter().cloned());
    let through = |f: &CodeFormula| -> Result<CodeFormula> {
        Ok(CodeFormula::new(
            f.vars.clone(),
            translate_expanded(&f.body, delta, &gamma.definitions)?,
        ))
    };
    let mut domain = through(&gamma.domain)?;
    let mut guards = Vec::new();
    for b_var in gamma.tuple(&gamma.domain.vars[0]) {
        guards.push(delta.instantiate(&delta.domain, &[delta.tuple(&b_var)])?);
    }
    guards.push(domain.body);
    domain.body = Formula::and_all(guards);
    let mut graphs = BTreeMap::new();
    for (sym, g) in &gamma.graphs {
        match through(g) {
            Ok(t) => {
                graphs.insert(sym.clone(), t);
            }
            Err(Error::UnknownSymbol(_)) if arity(gamma.source, sym).is_some_and(|(_, f)| !f) => {}
            Err(e) => return Err(e),
        }
    }
    let code = InterpCode {
        name: format!("{}∘{}", gamma.name, delta.name),
        source: gamma.source,
        target: delta.target,
        coords,
        params,
        domain,
        equiv: through(&gamma.equiv)?,
        graphs,
        functional: BTreeMap::new(),
        definitions: delta.definitions.clone(),
    };
    code.validate()?;
    Ok(code)
}

/// The code interpreting a structure in itself: dimension 1, `U = ⊤`, `E` is `=`.
pub fn identity_code(lang: Language) -> InterpCode {
    let graphs = symbols(lang)
        .iter()
        .map(|(sym, n)| {
            let formals: Vec<String> = (1..=*n).map(|i| format!("x{i}")).collect();
            let app = match (*sym, formals.as_slice()) {
                ("mul", [a, b]) => Term::mul(Term::var(a), Term::var(b)),
                ("inv", [a]) => Term::inv(Term::var(a)),
                ("e", []) => Term::Identity,
                ("add", [a, b]) => Term::add(Term::var(a), Term::var(b)),
                ("times", [a, b]) => Term::times(Term::var(a), Term::var(b)),
                ("zero", []) => Term::Zero,
                ("one", []) => Term::One,
                _ => unreachable!("symbols() lists these"),
            };
            let mut vars = formals;
            vars.push("y".into());
            (sym.to_string(), CodeFormula::new(vars, Formula::eq(Term::var("y"), app)))
        })
        .collect();
    let mut code = InterpCode {
        name: "id".into(),
        source: lang,
        target: lang,
        coords: vec![String::new()],
        params: vec![],
        domain: CodeFormula::new(["x"], Formula::True),
        equiv: CodeFormula::new(["x", "y"], Formula::eq(Term::var("x"), Term::var("y"))),
        graphs,
        functional: BTreeMap::new(),
        definitions: Definitions::new(),
    };
    if lang == Language::Ring {
        code.graphs.insert(
            "exp".into(),
            CodeFormula::new(["x", "y", "z"], Formula::exp(Term::var("x"), Term::var("y"), Term::var("z"))),
        );
    }
    code
}
