//! String diagrams over a monoidal signature, as typed terms.
//!
//! Terms are compared syntactically. Deciding equality modulo the axioms of
//! symmetric monoidal categories is not attempted; semantic comparison goes
//! through a [`CircuitSemantics`] functor into [`BoolFns`].

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::boolean::{BoolFns, FnTable};
use super::{Base, BaseFunctor};
use crate::error::{Error, Result};
use crate::prob::{check_open_prob, Rational};

pub type Sort = char;

/// A word of sorts, i.e. an object of the free strict monoidal category.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct SortWord(pub Vec<Sort>);

impl SortWord {
    pub fn unit() -> Self {
        SortWord(Vec::new())
    }

    /// `n` copies of the sort `a`.
    pub fn power(a: Sort, n: usize) -> Self {
        SortWord(vec![a; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &SortWord) -> SortWord {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        SortWord(v)
    }
}

impl fmt::Display for SortWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            write!(f, "1")
        } else {
            self.0.iter().try_for_each(|c| write!(f, "{c}"))
        }
    }
}

impl FromStr for SortWord {
    type Err = Error;

    /// `"1"` and `""` denote the empty word; otherwise each character is a sort.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "1" {
            return Ok(SortWord::unit());
        }
        if let Some(c) = s.chars().find(|c| !c.is_ascii_uppercase()) {
            return Err(Error::UnknownSort(c.to_string()));
        }
        Ok(SortWord(s.chars().collect()))
    }
}

/// A generator occurrence; parametric generators carry their probability.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Generator {
    pub name: String,
    pub prob: Option<Rational>,
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.prob {
            Some(p) => write!(f, "{} {}", self.name, p),
            None => write!(f, "{}", self.name),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CircuitTerm {
    IdSort(Sort),
    IdUnit,
    Gen(Generator),
    Sym(Sort, Sort),
    Seq(Box<CircuitTerm>, Box<CircuitTerm>),
    Par(Box<CircuitTerm>, Box<CircuitTerm>),
}

impl CircuitTerm {
    pub fn seq(a: CircuitTerm, b: CircuitTerm) -> Self {
        CircuitTerm::Seq(Box::new(a), Box::new(b))
    }

    pub fn par(a: CircuitTerm, b: CircuitTerm) -> Self {
        CircuitTerm::Par(Box::new(a), Box::new(b))
    }

    pub fn gen(name: &str) -> Self {
        CircuitTerm::Gen(Generator {
            name: name.to_string(),
            prob: None,
        })
    }

    pub fn gen_p(name: &str, p: Rational) -> Self {
        CircuitTerm::Gen(Generator {
            name: name.to_string(),
            prob: Some(p),
        })
    }

    /// Number of generator occurrences.
    pub fn size(&self) -> usize {
        match self {
            CircuitTerm::Gen(_) => 1,
            CircuitTerm::Seq(a, b) | CircuitTerm::Par(a, b) => a.size() + b.size(),
            _ => 0,
        }
    }

    /// True for identities: `id A`, `id1` and tensors of them.
    pub fn is_identity(&self) -> bool {
        match self {
            CircuitTerm::IdSort(_) | CircuitTerm::IdUnit => true,
            CircuitTerm::Par(a, b) => a.is_identity() && b.is_identity(),
            _ => false,
        }
    }

    /// True if some generator satisfies `pred`.
    pub fn any_gen(&self, pred: &impl Fn(&Generator) -> bool) -> bool {
        match self {
            CircuitTerm::Gen(g) => pred(g),
            CircuitTerm::Seq(a, b) | CircuitTerm::Par(a, b) => a.any_gen(pred) || b.any_gen(pred),
            _ => false,
        }
    }
}

impl fmt::Display for CircuitTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CircuitTerm::IdSort(a) => write!(f, "id {a}"),
            CircuitTerm::IdUnit => write!(f, "id1"),
            CircuitTerm::Gen(g) => write!(f, "{g}"),
            CircuitTerm::Sym(a, b) => write!(f, "sym {a} {b}"),
            CircuitTerm::Seq(a, b) => write!(f, "({a} ; {b})"),
            CircuitTerm::Par(a, b) => write!(f, "({a} * {b})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenDecl {
    pub ar: SortWord,
    pub coar: SortWord,
    /// Parametric generators take a probability in `(0,1)`.
    pub param: bool,
}

/// A monoidal signature: sorts and generators with arity and coarity.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Signature {
    sorts: BTreeSet<Sort>,
    generators: BTreeMap<String, GenDecl>,
}

impl Signature {
    pub fn new(sorts: impl IntoIterator<Item = Sort>) -> Self {
        Signature {
            sorts: sorts.into_iter().collect(),
            generators: BTreeMap::new(),
        }
    }

    pub fn with_generator(mut self, name: &str, ar: &str, coar: &str) -> Result<Self> {
        self.declare(name, ar, coar, false)?;
        Ok(self)
    }

    pub fn with_param_generator(mut self, name: &str, ar: &str, coar: &str) -> Result<Self> {
        self.declare(name, ar, coar, true)?;
        Ok(self)
    }

    fn declare(&mut self, name: &str, ar: &str, coar: &str, param: bool) -> Result<()> {
        let ar: SortWord = ar.parse()?;
        let coar: SortWord = coar.parse()?;
        for s in ar.0.iter().chain(&coar.0) {
            self.check_sort(*s)?;
        }
        if !is_generator_name(name) {
            return Err(Error::Invalid(format!("`{name}` is not a valid generator name")));
        }
        self.generators
            .insert(name.to_string(), GenDecl { ar, coar, param });
        Ok(())
    }

    pub fn sorts(&self) -> impl Iterator<Item = Sort> + '_ {
        self.sorts.iter().copied()
    }

    pub fn generators(&self) -> impl Iterator<Item = (&str, &GenDecl)> {
        self.generators.iter().map(|(k, v)| (k.as_str(), v))
    }

    pub fn generator(&self, name: &str) -> Option<&GenDecl> {
        self.generators.get(name)
    }

    pub fn check_sort(&self, s: Sort) -> Result<()> {
        if self.sorts.contains(&s) {
            Ok(())
        } else {
            Err(Error::UnknownSort(s.to_string()))
        }
    }

    pub fn check_word(&self, w: &SortWord) -> Result<()> {
        w.0.iter().try_for_each(|s| self.check_sort(*s))
    }

    /// Computes the type of a term, or reports the first ill-typed subterm.
    pub fn type_of(&self, c: &CircuitTerm) -> Result<(SortWord, SortWord)> {
        match c {
            CircuitTerm::IdSort(a) => {
                self.check_sort(*a)?;
                Ok((SortWord(vec![*a]), SortWord(vec![*a])))
            }
            CircuitTerm::IdUnit => Ok((SortWord::unit(), SortWord::unit())),
            CircuitTerm::Gen(g) => {
                let decl = self
                    .generators
                    .get(&g.name)
                    .ok_or_else(|| Error::UnknownGenerator(g.name.clone()))?;
                match (&g.prob, decl.param) {
                    (Some(p), true) => check_open_prob(p)?,
                    (None, false) => {}
                    (Some(_), false) => {
                        return Err(Error::ill_typed(c, "generator takes no probability"))
                    }
                    (None, true) => {
                        return Err(Error::ill_typed(c, "generator needs a probability"))
                    }
                }
                Ok((decl.ar.clone(), decl.coar.clone()))
            }
            CircuitTerm::Sym(a, b) => {
                self.check_sort(*a)?;
                self.check_sort(*b)?;
                Ok((SortWord(vec![*a, *b]), SortWord(vec![*b, *a])))
            }
            CircuitTerm::Seq(x, y) => {
                let (d1, c1) = self.type_of(x)?;
                let (d2, c2) = self.type_of(y)?;
                if c1 != d2 {
                    return Err(Error::ill_typed(
                        c,
                        format!("codomain {c1} does not match domain {d2}"),
                    ));
                }
                Ok((d1, c2))
            }
            CircuitTerm::Par(x, y) => {
                let (d1, c1) = self.type_of(x)?;
                let (d2, c2) = self.type_of(y)?;
                Ok((d1.concat(&d2), c1.concat(&c2)))
            }
        }
    }

    /// Type-checks a term into a [`Circuit`].
    pub fn circuit(&self, term: CircuitTerm) -> Result<Circuit> {
        let (dom, cod) = self.type_of(&term)?;
        Ok(Circuit { term, dom, cod })
    }

    pub fn gen(&self, name: &str) -> Result<Circuit> {
        self.circuit(CircuitTerm::gen(name))
    }

    pub fn gen_p(&self, name: &str, p: Rational) -> Result<Circuit> {
        self.circuit(CircuitTerm::gen_p(name, p))
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let raw: SignatureRepr =
            serde_json::from_str(s).map_err(|e| Error::Invalid(e.to_string()))?;
        let mut sorts = Vec::new();
        for s in &raw.sorts {
            let mut cs = s.chars();
            match (cs.next(), cs.next()) {
                (Some(c), None) if c.is_ascii_uppercase() => sorts.push(c),
                _ => return Err(Error::Invalid(format!("sort `{s}` must be one uppercase letter"))),
            }
        }
        let mut sig = Signature::new(sorts);
        for (name, g) in &raw.generators {
            sig.declare(name, &g.ar, &g.coar, g.param)?;
        }
        Ok(sig)
    }

    pub fn to_json(&self) -> String {
        let raw = SignatureRepr {
            sorts: self.sorts.iter().map(|c| c.to_string()).collect(),
            generators: self
                .generators
                .iter()
                .map(|(k, g)| {
                    (
                        k.clone(),
                        GenRepr {
                            ar: word_code(&g.ar),
                            coar: word_code(&g.coar),
                            param: g.param,
                        },
                    )
                })
                .collect(),
        };
        serde_json::to_string(&raw).expect("signature serialises")
    }
}

fn word_code(w: &SortWord) -> String {
    w.0.iter().collect()
}

pub(crate) fn is_generator_name(name: &str) -> bool {
    let mut cs = name.chars();
    matches!(cs.next(), Some(c) if c.is_ascii_lowercase())
        && cs.all(|c| c.is_ascii_alphanumeric() || c == '_')
        && !matches!(name, "id" | "id1" | "sym")
}

#[derive(Serialize, Deserialize)]
struct SignatureRepr {
    sorts: Vec<String>,
    generators: BTreeMap<String, GenRepr>,
}

#[derive(Serialize, Deserialize)]
struct GenRepr {
    ar: String,
    coar: String,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    param: bool,
}

/// A well-typed circuit term together with its type.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Circuit {
    term: CircuitTerm,
    dom: SortWord,
    cod: SortWord,
}

impl Circuit {
    pub fn term(&self) -> &CircuitTerm {
        &self.term
    }

    pub fn dom(&self) -> &SortWord {
        &self.dom
    }

    pub fn cod(&self) -> &SortWord {
        &self.cod
    }

    pub fn into_term(self) -> CircuitTerm {
        self.term
    }

    /// `id_w`, built as a right-nested tensor of single-sort identities.
    pub fn id(w: &SortWord) -> Circuit {
        let term = match w.0.split_last() {
            None => CircuitTerm::IdUnit,
            Some((last, init)) => init
                .iter()
                .rev()
                .fold(CircuitTerm::IdSort(*last), |acc, s| {
                    CircuitTerm::par(CircuitTerm::IdSort(*s), acc)
                }),
        };
        Circuit {
            term,
            dom: w.clone(),
            cod: w.clone(),
        }
    }

    pub fn sym(a: Sort, b: Sort) -> Circuit {
        Circuit {
            term: CircuitTerm::Sym(a, b),
            dom: SortWord(vec![a, b]),
            cod: SortWord(vec![b, a]),
        }
    }

    pub fn seq(&self, other: &Circuit) -> Result<Circuit> {
        if self.cod != other.dom {
            let term = CircuitTerm::seq(self.term.clone(), other.term.clone());
            return Err(Error::ill_typed(
                term,
                format!("codomain {} does not match domain {}", self.cod, other.dom),
            ));
        }
        Ok(Circuit {
            term: CircuitTerm::seq(self.term.clone(), other.term.clone()),
            dom: self.dom.clone(),
            cod: other.cod.clone(),
        })
    }

    pub fn par(&self, other: &Circuit) -> Circuit {
        Circuit {
            term: CircuitTerm::par(self.term.clone(), other.term.clone()),
            dom: self.dom.concat(&other.dom),
            cod: self.cod.concat(&other.cod),
        }
    }

    /// Symmetry `σ_{u,v} : uv → vu` between words, expanded into
    /// single-sort crossings.
    pub fn sym_words(u: &SortWord, v: &SortWord) -> Circuit {
        match u.0.split_first() {
            None => Circuit::id(v),
            Some((a, rest)) => {
                let rest = SortWord(rest.to_vec());
                let inner = Circuit::id(&SortWord(vec![*a])).par(&Circuit::sym_words(&rest, v));
                let outer = Circuit::sym_sort_word(*a, v).par(&Circuit::id(&rest));
                inner.seq(&outer).expect("symmetry expansion is well typed")
            }
        }
    }

    fn sym_sort_word(a: Sort, v: &SortWord) -> Circuit {
        match v.0.split_first() {
            None => Circuit::id(&SortWord(vec![a])),
            Some((b, rest)) => {
                let rest = SortWord(rest.to_vec());
                let first = Circuit::sym(a, *b).par(&Circuit::id(&rest));
                let second = Circuit::id(&SortWord(vec![*b])).par(&Circuit::sym_sort_word(a, &rest));
                first.seq(&second).expect("symmetry expansion is well typed")
            }
        }
    }

    /// Wire permutation on `w`: output position `j` carries input wire `perm[j]`.
    pub fn permutation(w: &SortWord, perm: &[usize]) -> Result<Circuit> {
        let n = w.len();
        let mut seen = vec![false; n];
        if perm.len() != n || perm.iter().any(|&i| i >= n || std::mem::replace(&mut seen[i], true)) {
            return Err(Error::Invalid(format!("{perm:?} is not a permutation of {n} wires")));
        }
        // Bubble sort the identity arrangement into `perm`, one adjacent
        // crossing per layer.
        let mut cur: Vec<usize> = (0..n).collect();
        let mut out = Circuit::id(w);
        let rank: Vec<usize> = {
            let mut r = vec![0; n];
            for (j, &i) in perm.iter().enumerate() {
                r[i] = j;
            }
            r
        };
        while let Some(k) = (0..n.saturating_sub(1)).find(|&k| rank[cur[k]] > rank[cur[k + 1]]) {
            let sorts: Vec<Sort> = cur.iter().map(|&i| w.0[i]).collect();
            let layer = Circuit::id(&SortWord(sorts[..k].to_vec()))
                .par(&Circuit::sym(sorts[k], sorts[k + 1]))
                .par(&Circuit::id(&SortWord(sorts[k + 2..].to_vec())));
            out = out.seq(&layer)?;
            cur.swap(k, k + 1);
        }
        Ok(out)
    }
}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.term)
    }
}

/// Interpretation of non-parametric generators as truth tables.
pub type Interpretation = BTreeMap<String, FnTable>;

/// Evaluates a circuit to its truth table, reading every sort as one bit.
pub fn eval_circuit(sig: &Signature, interp: &Interpretation, c: &CircuitTerm) -> Result<FnTable> {
    sig.type_of(c)?;
    eval_typed(sig, interp, c)
}

fn eval_typed(sig: &Signature, interp: &Interpretation, c: &CircuitTerm) -> Result<FnTable> {
    Ok(match c {
        CircuitTerm::IdSort(_) => FnTable::identity(1),
        CircuitTerm::IdUnit => FnTable::identity(0),
        CircuitTerm::Sym(_, _) => FnTable::swap(1, 1),
        CircuitTerm::Gen(g) => {
            if g.prob.is_some() {
                return Err(Error::MissingInterpretation(g.to_string()));
            }
            let t = interp
                .get(&g.name)
                .ok_or_else(|| Error::MissingInterpretation(g.name.clone()))?;
            let decl = sig.generator(&g.name).expect("checked by type_of");
            if t.inputs() != decl.ar.len() || t.outputs() != decl.coar.len() {
                return Err(Error::mismatch(format!(
                    "interpretation of `{}` has type {}→{}, expected {}→{}",
                    g.name,
                    t.inputs(),
                    t.outputs(),
                    decl.ar.len(),
                    decl.coar.len()
                )));
            }
            t.clone()
        }
        CircuitTerm::Seq(a, b) => eval_typed(sig, interp, a)?.then(&eval_typed(sig, interp, b)?)?,
        CircuitTerm::Par(a, b) => eval_typed(sig, interp, a)?.tensor(&eval_typed(sig, interp, b)?)?,
    })
}

/// Free symmetric monoidal category over a signature, with syntactic
/// arrow equality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagrams {
    pub sig: Signature,
}

impl Diagrams {
    pub fn new(sig: Signature) -> Self {
        Diagrams { sig }
    }
}

impl Base for Diagrams {
    type Obj = SortWord;
    type Arrow = Circuit;

    fn name(&self) -> &str {
        "string diagrams"
    }

    fn dom(&self, f: &Circuit) -> SortWord {
        f.dom.clone()
    }

    fn cod(&self, f: &Circuit) -> SortWord {
        f.cod.clone()
    }

    fn id(&self, u: &SortWord) -> Circuit {
        Circuit::id(u)
    }

    /// Identity factors are dropped, so compiled entries stay readable.
    fn compose(&self, f: &Circuit, g: &Circuit) -> Result<Circuit> {
        let fg = f.seq(g)?;
        Ok(if f.term.is_identity() {
            g.clone()
        } else if g.term.is_identity() {
            f.clone()
        } else {
            fg
        })
    }

    fn decidable_equality(&self) -> bool {
        false
    }

    fn unit(&self) -> Result<SortWord> {
        Ok(SortWord::unit())
    }

    fn tensor_obj(&self, u: &SortWord, v: &SortWord) -> Result<SortWord> {
        Ok(u.concat(v))
    }

    fn tensor(&self, f: &Circuit, g: &Circuit) -> Result<Circuit> {
        Ok(match (&f.term, &g.term) {
            (CircuitTerm::IdUnit, _) => g.clone(),
            (_, CircuitTerm::IdUnit) => f.clone(),
            _ => f.par(g),
        })
    }

    fn symmetry(&self, u: &SortWord, v: &SortWord) -> Result<Circuit> {
        Ok(Circuit::sym_words(u, v))
    }
}

/// The functor `Diag_Σ → Set₂` induced by a truth-table interpretation.
#[derive(Debug, Clone)]
pub struct CircuitSemantics {
    pub sig: Signature,
    pub interp: Interpretation,
}

impl BaseFunctor for CircuitSemantics {
    type Source = Diagrams;
    type Target = BoolFns;

    fn map_obj(&self, u: &SortWord) -> Result<usize> {
        Ok(u.len())
    }

    fn map_arrow(&self, f: &Circuit) -> Result<FnTable> {
        eval_typed(&self.sig, &self.interp, f.term())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bool_sig() -> Signature {
        Signature::new(['A'])
            .with_generator("and", "AA", "A")
            .unwrap()
            .with_generator("not", "A", "A")
            .unwrap()
    }

    fn interp() -> Interpretation {
        let mut m = Interpretation::new();
        m.insert("and".into(), FnTable::from_fn(2, 1, |x| (x & 1) & (x >> 1)));
        m.insert("not".into(), FnTable::from_fn(1, 1, |x| x ^ 1));
        m
    }

    #[test]
    fn typing() {
        let sig = bool_sig();
        let and = CircuitTerm::gen("and");
        assert_eq!(
            sig.type_of(&and).unwrap(),
            ("AA".parse().unwrap(), "A".parse().unwrap())
        );
        let bad = CircuitTerm::seq(CircuitTerm::gen("not"), and.clone());
        assert!(matches!(sig.type_of(&bad), Err(Error::IllTyped { .. })));
        assert!(matches!(
            sig.type_of(&CircuitTerm::gen("xor")),
            Err(Error::UnknownGenerator(_))
        ));
        assert!(sig.type_of(&CircuitTerm::IdSort('B')).is_err());
        assert!(sig.gen("not").unwrap().seq(&sig.gen("and").unwrap()).is_err());
    }

    #[test]
    fn eval_gates() {
        let sig = bool_sig();
        let and = eval_circuit(&sig, &interp(), &CircuitTerm::gen("and")).unwrap();
        assert_eq!(and.apply(0b11), 1);
        assert_eq!(and.apply(0b01), 0);
        let id = eval_circuit(&sig, &interp(), &CircuitTerm::IdSort('A')).unwrap();
        assert_eq!(id, FnTable::identity(1));

        // (NOT ⊗ NOT) ; AND ; NOT against the OR truth table, all four inputs.
        let or = CircuitTerm::seq(
            CircuitTerm::seq(
                CircuitTerm::par(CircuitTerm::gen("not"), CircuitTerm::gen("not")),
                CircuitTerm::gen("and"),
            ),
            CircuitTerm::gen("not"),
        );
        let t = eval_circuit(&sig, &interp(), &or).unwrap();
        for x in 0..4u64 {
            let expected = ((x & 1) | (x >> 1)) & 1;
            assert_eq!(t.apply(x), expected, "input {x:02b}");
        }
    }

    #[test]
    fn missing_interpretation() {
        let sig = bool_sig();
        let mut i = interp();
        i.remove("not");
        assert!(matches!(
            eval_circuit(&sig, &i, &CircuitTerm::gen("not")),
            Err(Error::MissingInterpretation(_))
        ));
    }

    #[test]
    fn word_symmetry_matches_block_swap() {
        let sig = Signature::new(['A', 'B']);
        for (u, v) in [("AB", "A"), ("A", "BBA"), ("1", "AB"), ("AB", "BA")] {
            let u: SortWord = u.parse().unwrap();
            let v: SortWord = v.parse().unwrap();
            let s = Circuit::sym_words(&u, &v);
            assert_eq!(s.dom(), &u.concat(&v));
            assert_eq!(s.cod(), &v.concat(&u));
            let t = eval_circuit(&sig, &Interpretation::new(), s.term()).unwrap();
            assert_eq!(t, FnTable::swap(u.len(), v.len()));
        }
    }

    #[test]
    fn permutations() {
        let w: SortWord = "AAAA".parse().unwrap();
        let sig = Signature::new(['A']);
        let perm = [2, 0, 3, 1];
        let c = Circuit::permutation(&w, &perm).unwrap();
        let t = eval_circuit(&sig, &Interpretation::new(), c.term()).unwrap();
        for x in 0..16u64 {
            let expected = perm
                .iter()
                .enumerate()
                .fold(0, |acc, (j, &i)| acc | (((x >> i) & 1) << j));
            assert_eq!(t.apply(x), expected);
        }
        assert!(Circuit::permutation(&w, &[0, 0, 1, 2]).is_err());
    }

    #[test]
    fn signature_json() {
        let js = r#"{"sorts":["A","B"],"generators":{"f":{"ar":"AAB","coar":"A"},"flip":{"ar":"","coar":"A","param":true}}}"#;
        let sig = Signature::from_json(js).unwrap();
        assert_eq!(sig.generator("f").unwrap().ar, "AAB".parse().unwrap());
        assert!(sig.generator("flip").unwrap().param);
        assert_eq!(Signature::from_json(&sig.to_json()).unwrap(), sig);
        assert!(Signature::from_json(r#"{"sorts":["A"],"generators":{"g":{"ar":"C","coar":"A"}}}"#).is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        // Random circuits A^n → A^m over {and, not, copy, discard}.
        fn sig() -> Signature {
            bool_sig()
                .with_generator("copy", "A", "AA")
                .unwrap()
                .with_generator("discard", "A", "")
                .unwrap()
        }

        fn full_interp() -> Interpretation {
            let mut m = interp();
            m.insert("copy".into(), FnTable::from_fn(1, 2, |x| x | (x << 1)));
            m.insert("discard".into(), FnTable::from_fn(1, 0, |_| 0));
            m
        }

        fn one_to_one() -> impl Strategy<Value = CircuitTerm> {
            let leaf = prop_oneof![
                Just(CircuitTerm::IdSort('A')),
                Just(CircuitTerm::gen("not")),
                Just(CircuitTerm::seq(CircuitTerm::gen("copy"), CircuitTerm::gen("and"))),
            ];
            leaf.prop_recursive(3, 8, 2, |inner| {
                prop_oneof![
                    (inner.clone(), inner.clone()).prop_map(|(a, b)| CircuitTerm::seq(a, b)),
                    (inner.clone(), inner).prop_map(|(a, b)| CircuitTerm::seq(
                        CircuitTerm::seq(CircuitTerm::gen("copy"), CircuitTerm::par(a, b)),
                        CircuitTerm::gen("and")
                    )),
                ]
            })
        }

        proptest! {
            #[test]
            fn interchange(c1 in one_to_one(), c2 in one_to_one(), d1 in one_to_one(), d2 in one_to_one()) {
                let s = sig();
                let i = full_interp();
                let lhs = CircuitTerm::par(CircuitTerm::seq(c1.clone(), c2.clone()), CircuitTerm::seq(d1.clone(), d2.clone()));
                let rhs = CircuitTerm::seq(CircuitTerm::par(c1, d1), CircuitTerm::par(c2, d2));
                prop_assert_eq!(eval_circuit(&s, &i, &lhs).unwrap(), eval_circuit(&s, &i, &rhs).unwrap());
            }

            #[test]
            fn semantic_equality_is_a_congruence(a in one_to_one(), b in one_to_one(), c in one_to_one()) {
                let s = sig();
                let i = full_interp();
                let ev = |t: &CircuitTerm| eval_circuit(&s, &i, t).unwrap();
                if ev(&a) == ev(&b) {
                    prop_assert_eq!(ev(&CircuitTerm::seq(a.clone(), c.clone())), ev(&CircuitTerm::seq(b.clone(), c.clone())));
                    prop_assert_eq!(ev(&CircuitTerm::par(c.clone(), a.clone())), ev(&CircuitTerm::par(c, b)));
                }
                // double negation always collapses
                let nn = CircuitTerm::seq(a.clone(), CircuitTerm::seq(CircuitTerm::gen("not"), CircuitTerm::gen("not")));
                prop_assert_eq!(ev(&nn), ev(&a));
            }
        }
    }
}
