//! Probabilistic Boolean circuits, their encoding into tapes, and the
//! decision procedure for tape equality over the Boolean base.

use std::fmt;

use num_traits::One;

use crate::base::boolean::{BoolFns, FnTable};
use crate::base::diagram::{CircuitSemantics, CircuitTerm, Diagrams, Interpretation, Signature, SortWord};
use crate::error::{Error, Result};
use crate::prob::{check_open_prob, Rational, Subdist};
use crate::tape::{star_t, tensor_t, Tape, TapeTerm};

pub mod gates;
pub mod kleisli;

pub use kleisli::{Elem, KleisliMap};

/// Name of the probabilistic generator `flip p : 1 → A`.
pub const FLIP: &str = "flip";

/// The deterministic signature: `and`, `not`, `flip1`, `copy`, `discard`
/// over the single sort `A`.
pub fn b_signature() -> Signature {
    Signature::new(['A'])
        .with_generator("and", "AA", "A")
        .and_then(|s| s.with_generator("not", "A", "A"))
        .and_then(|s| s.with_generator("flip1", "", "A"))
        .and_then(|s| s.with_generator("copy", "A", "AA"))
        .and_then(|s| s.with_generator("discard", "A", ""))
        .expect("well-formed signature")
}

/// The deterministic signature extended with `flip p`.
pub fn pb_signature() -> Signature {
    b_signature()
        .with_param_generator(FLIP, "", "A")
        .expect("well-formed signature")
}

pub fn b_interpretation() -> Interpretation {
    let mut m = Interpretation::new();
    m.insert("and".into(), FnTable::from_fn(2, 1, |x| x & (x >> 1) & 1));
    m.insert("not".into(), FnTable::from_fn(1, 1, |x| x ^ 1));
    m.insert("flip1".into(), FnTable::constant(1, 1));
    m.insert("copy".into(), FnTable::from_fn(1, 2, |x| x | (x << 1)));
    m.insert("discard".into(), FnTable::from_fn(1, 0, |_| 0));
    m
}

/// String diagrams over the deterministic signature.
pub fn b_base() -> Diagrams {
    Diagrams::new(b_signature())
}

pub fn b_semantics() -> CircuitSemantics {
    CircuitSemantics {
        sig: b_signature(),
        interp: b_interpretation(),
    }
}

/// Truth table of a deterministic circuit.
pub fn b_table(c: &crate::base::diagram::Circuit) -> FnTable {
    crate::base::diagram::eval_circuit(&b_signature(), &b_interpretation(), c.term())
        .expect("circuit over the Boolean signature")
}

/// The Kleisli map `x ↦ δ_{f(x)}`.
pub fn deterministic(f: &FnTable) -> KleisliMap {
    KleisliMap::from_fn(vec![f.inputs()], vec![f.outputs()], |(_, x)| Subdist::dirac((0, f.apply(x))))
        .expect("table is total")
}

fn flip_dist(p: &Rational) -> Subdist<Elem> {
    Subdist::from_weights([((0, 1), p.clone()), ((0, 0), Rational::one() - p)]).expect("p in [0,1]")
}

/// Semantics of a probabilistic circuit in `Kl(D≤)`.
pub fn eval_pb(c: &CircuitTerm) -> Result<KleisliMap> {
    pb_signature().type_of(c)?;
    eval_typed(c, &b_interpretation())
}

fn eval_typed(c: &CircuitTerm, interp: &Interpretation) -> Result<KleisliMap> {
    Ok(match c {
        CircuitTerm::IdSort(_) => KleisliMap::identity(vec![1]),
        CircuitTerm::IdUnit => KleisliMap::identity(vec![0]),
        CircuitTerm::Sym(_, _) => deterministic(&FnTable::swap(1, 1)),
        CircuitTerm::Gen(g) => match &g.prob {
            Some(p) => KleisliMap::from_fn(vec![0], vec![1], |_| flip_dist(p))?,
            None => deterministic(&interp[&g.name]),
        },
        CircuitTerm::Seq(a, b) => eval_typed(a, interp)?.compose(&eval_typed(b, interp)?)?,
        CircuitTerm::Par(a, b) => eval_typed(a, interp)?.tensor(&eval_typed(b, interp)?),
    })
}

/// `diag^p_1 ; (⌜flip1⌝ ⊕ ⌜flip0⌝) ; codiag_A`.
pub fn flip_tape(p: &Rational) -> Result<Tape<Diagrams>> {
    check_open_prob(p)?;
    let sig = b_signature();
    Ok(TapeTerm::seq(
        TapeTerm::seq(
            TapeTerm::DiagP(SortWord::unit(), p.clone()),
            TapeTerm::plus(TapeTerm::Lift(sig.gen("flip1")?), TapeTerm::Lift(gates::flip0())),
        ),
        TapeTerm::Codiag(SortWord::power('A', 1)),
    ))
}

fn has_flip(c: &CircuitTerm) -> bool {
    c.any_gen(&|g| g.name == FLIP)
}

/// Encodes a probabilistic circuit as a tape. Flip-free subcircuits become
/// a single lifted circuit; `;` and `⊗` are mapped homomorphically.
pub fn encode(c: &CircuitTerm) -> Result<Tape<Diagrams>> {
    pb_signature().type_of(c)?;
    encode_typed(c, &b_base())
}

fn encode_typed(c: &CircuitTerm, base: &Diagrams) -> Result<Tape<Diagrams>> {
    if !has_flip(c) {
        return Ok(TapeTerm::Lift(base.sig.circuit(c.clone())?));
    }
    match c {
        CircuitTerm::Gen(g) => flip_tape(g.prob.as_ref().expect("flip carries a probability")),
        CircuitTerm::Seq(a, b) => Ok(TapeTerm::seq(encode_typed(a, base)?, encode_typed(b, base)?)),
        CircuitTerm::Par(a, b) => tensor_t(base, &encode_typed(a, base)?, &encode_typed(b, base)?),
        _ => unreachable!("only generators and composites contain flips"),
    }
}

/// Replaces every lifted circuit by its truth table.
pub fn to_bool_tape(t: &Tape<Diagrams>) -> Result<Tape<BoolFns>> {
    t.map_base(&b_semantics())
}

/// `J(t)`: the Kleisli map of the compiled matrix.
pub fn tape_semantics(t: &Tape<BoolFns>) -> Result<KleisliMap> {
    Ok(t.compile(&BoolFns)?.to_kleisli())
}

/// An input on which two tapes disagree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub input: Elem,
    pub left: Subdist<Elem>,
    pub right: Subdist<Elem>,
    rendered: (String, String, String),
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (x, l, r) = &self.rendered;
        write!(f, "on input {x}: left gives {l}, right gives {r}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Equivalent,
    Distinct(Box<Counterexample>),
}

impl Verdict {
    pub fn is_equivalent(&self) -> bool {
        matches!(self, Verdict::Equivalent)
    }
}

/// Compares two Kleisli maps input by input.
pub fn compare_kleisli(k1: &KleisliMap, k2: &KleisliMap) -> Result<Verdict> {
    if k1.dom() != k2.dom() || k1.cod() != k2.cod() {
        return Err(Error::mismatch(format!(
            "cannot compare {:?} → {:?} with {:?} → {:?}",
            k1.dom(),
            k1.cod(),
            k2.dom(),
            k2.cod()
        )));
    }
    for (x, d1) in k1.iter() {
        let d2 = k2.apply(*x);
        if d1 != d2 {
            let rendered = (k1.format_elem(x, false), k1.format_dist(d1), k2.format_dist(d2));
            return Ok(Verdict::Distinct(Box::new(Counterexample {
                input: *x,
                left: d1.clone(),
                right: d2.clone(),
                rendered,
            })));
        }
    }
    Ok(Verdict::Equivalent)
}

/// Decides equality of two Boolean tapes through their semantics.
pub fn semantic_equiv(t: &Tape<BoolFns>, s: &Tape<BoolFns>) -> Result<Verdict> {
    let (tt, ts) = (t.typecheck(&BoolFns)?, s.typecheck(&BoolFns)?);
    if tt != ts {
        return Err(Error::mismatch(format!("cannot compare {tt} with {ts}")));
    }
    compare_kleisli(&tape_semantics(t)?, &tape_semantics(s)?)
}

/// The `2ⁿ` constant tapes `1 → Aⁿ`, built as tensors of constant bits.
/// Vector `v` puts bit `k` of `v` on wire `k`.
pub fn boolean_vectors(n: usize) -> Vec<Tape<BoolFns>> {
    (0..1u64 << n)
        .map(|v| {
            (0..n).fold(TapeTerm::Id(0), |acc, k| {
                let bit = TapeTerm::Lift(FnTable::constant(1, (v >> k) & 1));
                if k == 0 {
                    bit
                } else {
                    tensor_t(&BoolFns, &acc, &bit).expect("Boolean base is monoidal")
                }
            })
        })
        .collect()
}

/// Checks `t = (id_A ⊗ (copier_n ; t₁ ⊗ t₀)) ; mux_m` for `t : A^{n+1} → A^m`,
/// where `t_b = (Flip_b ⊗ id_{Aⁿ}) ; t`.
pub fn mux_axiom_check(t: &Tape<BoolFns>) -> Result<bool> {
    let ty = t.typecheck(&BoolFns)?;
    let (n, m) = match (ty.dom.as_slice(), ty.cod.as_slice()) {
        ([d], [c]) if *d >= 1 => (d - 1, *c),
        _ => {
            return Err(Error::mismatch(format!(
                "multiplexer law needs a tape A^(n+1) → A^m, got {ty}"
            )))
        }
    };
    let b = &BoolFns;
    let fixed = |bit: u64| -> Result<Tape<BoolFns>> {
        let flip = TapeTerm::Lift(FnTable::constant(1, bit));
        Ok(TapeTerm::seq(tensor_t(b, &flip, &TapeTerm::Id(n))?, t.clone()))
    };
    let (t1, t0) = (fixed(1)?, fixed(0)?);
    let branches = TapeTerm::seq(TapeTerm::Lift(b_table(&gates::ncopier(n))), tensor_t(b, &t1, &t0)?);
    let rhs = TapeTerm::seq(
        tensor_t(b, &TapeTerm::Id(1), &branches)?,
        TapeTerm::Lift(b_table(&gates::mux_m(m))),
    );
    Ok(semantic_equiv(t, &rhs)?.is_equivalent())
}

/// `diag^p_{AA} ; (⌜AND⌝ ⊕ ⌜OR⌝) ; codiag_A`.
pub fn and_p_or(p: &Rational) -> Result<Tape<Diagrams>> {
    check_open_prob(p)?;
    let sig = b_signature();
    Ok(TapeTerm::seq(
        TapeTerm::seq(
            TapeTerm::DiagP(SortWord::power('A', 2), p.clone()),
            TapeTerm::plus(TapeTerm::Lift(sig.gen("and")?), TapeTerm::Lift(gates::or_gate())),
        ),
        TapeTerm::Codiag(SortWord::power('A', 1)),
    ))
}

/// The two readings of "run `c` with probability `p`, otherwise fail" for
/// `c : Aⁿ → Aᵐ`. The circuit feeds `flip p`, `c` and a failing input into
/// `mux_m`; the tape chooses between `c` and failure with `split`.
pub fn control_contrast(c: &FnTable, p: &Rational) -> Result<(Tape<BoolFns>, Tape<BoolFns>)> {
    check_open_prob(p)?;
    let b = &BoolFns;
    let (n, m) = (c.inputs(), c.outputs());
    let lifted = TapeTerm::Lift(c.clone());
    let fail: Tape<BoolFns> = star_t(&[0], &[m]);
    let flip = to_bool_tape(&flip_tape(p)?)?;
    let inputs = tensor_t(b, &tensor_t(b, &flip, &lifted)?, &fail)?;
    let circuit = TapeTerm::seq(inputs, TapeTerm::Lift(b_table(&gates::mux_m(m))));
    let choice = TapeTerm::seq(TapeTerm::DiagP(n, p.clone()), TapeTerm::plus(lifted, star_t(&[n], &[m])));
    Ok((circuit, choice))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prob::rat;
    use crate::tape::scale_t;

    fn gen(name: &str) -> CircuitTerm {
        CircuitTerm::gen(name)
    }

    fn flip(p: Rational) -> CircuitTerm {
        CircuitTerm::gen_p(FLIP, p)
    }

    fn dist(pairs: &[(u64, Rational)]) -> Subdist<Elem> {
        Subdist::from_weights(pairs.iter().map(|(x, p)| ((0, *x), p.clone()))).unwrap()
    }

    #[test]
    fn pb_semantics() {
        let k = eval_pb(&flip(rat(1, 3))).unwrap();
        assert_eq!(k.apply((0, 0)), &dist(&[(1, rat(1, 3)), (0, rat(2, 3))]));
        let copy = eval_pb(&gen("copy")).unwrap();
        assert_eq!(copy.apply((0, 1)).as_dirac(), Some(&(0, 3)));
        let negated = eval_pb(&CircuitTerm::seq(flip(rat(1, 5)), gen("not"))).unwrap();
        assert_eq!(negated, eval_pb(&flip(rat(4, 5))).unwrap());
        assert!(eval_pb(&flip(rat(1, 1))).is_err());
        assert!(eval_pb(&CircuitTerm::seq(gen("and"), gen("and"))).is_err());
    }

    #[test]
    fn flip_tape_semantics() {
        for p in [rat(1, 2), rat(1, 3), rat(7, 11)] {
            let k = tape_semantics(&to_bool_tape(&flip_tape(&p).unwrap()).unwrap()).unwrap();
            assert_eq!(k.apply((0, 0)), &dist(&[(1, p.clone()), (0, rat(1, 1) - &p)]));
        }
    }

    #[test]
    fn encoding_preserves_semantics() {
        let c = CircuitTerm::seq(CircuitTerm::seq(flip(rat(1, 2)), gen("copy")), gen("and"));
        let k = eval_pb(&c).unwrap();
        assert_eq!(k.apply((0, 0)), &dist(&[(1, rat(1, 2)), (0, rat(1, 2))]));
        let t = encode(&c).unwrap();
        assert_eq!(tape_semantics(&to_bool_tape(&t).unwrap()).unwrap(), k);
        let c = CircuitTerm::seq(CircuitTerm::par(flip(rat(1, 3)), gen("flip1")), gen("and"));
        let t = to_bool_tape(&encode(&c).unwrap()).unwrap();
        assert_eq!(tape_semantics(&t).unwrap(), eval_pb(&c).unwrap());
        let plain = CircuitTerm::par(gen("not"), gen("copy"));
        assert!(matches!(encode(&plain).unwrap(), TapeTerm::Lift(_)));
    }

    #[test]
    fn and_p_or_semantics() {
        let p = rat(1, 4);
        let t = to_bool_tape(&and_p_or(&p).unwrap()).unwrap();
        assert!(semantic_equiv(&t, &t).unwrap().is_equivalent());
        let k = tape_semantics(&t).unwrap();
        assert_eq!(k.apply((0, 3)), &dist(&[(1, rat(1, 1))]));
        // (x, y) = (1, 0): AND gives 0 with weight p, OR gives 1 with weight 1 - p
        assert_eq!(k.apply((0, 1)), &dist(&[(0, p.clone()), (1, rat(3, 4))]));
    }

    #[test]
    fn distinct_flips_have_a_witness() {
        let a = to_bool_tape(&flip_tape(&rat(1, 2)).unwrap()).unwrap();
        let b = to_bool_tape(&flip_tape(&rat(1, 3)).unwrap()).unwrap();
        match semantic_equiv(&a, &b).unwrap() {
            Verdict::Distinct(cx) => {
                assert_eq!(cx.input, (0, 0));
                assert_eq!(cx.to_string(), "on input •: left gives {1: 1/2, 0: 1/2}, right gives {1: 1/3, 0: 2/3}");
            }
            Verdict::Equivalent => panic!("flips with different biases compared equal"),
        }
        assert!(semantic_equiv(&a, &TapeTerm::Id(1)).is_err());
    }

    #[test]
    fn vectors() {
        assert_eq!(boolean_vectors(0), vec![TapeTerm::Id(0)]);
        let vs = boolean_vectors(3);
        assert_eq!(vs.len(), 8);
        for (v, t) in vs.iter().enumerate() {
            let k = tape_semantics(t).unwrap();
            assert!(k.is_deterministic());
            assert_eq!(k.apply((0, 0)).as_dirac(), Some(&(0, v as u64)));
        }
    }

    #[test]
    fn multiplexer_law() {
        let and = TapeTerm::Lift(b_table(&b_signature().gen("and").unwrap()));
        assert!(mux_axiom_check(&and).unwrap());
        let choice = to_bool_tape(&and_p_or(&rat(2, 5)).unwrap()).unwrap();
        assert!(mux_axiom_check(&choice).unwrap());
        let noisy = TapeTerm::seq(
            tensor_t(&BoolFns, &TapeTerm::Id(1), &to_bool_tape(&flip_tape(&rat(1, 3)).unwrap()).unwrap()).unwrap(),
            and.clone(),
        );
        assert!(mux_axiom_check(&noisy).unwrap());
        assert!(mux_axiom_check(&TapeTerm::Id(0)).is_err());
    }

    /// The two branches of the right-hand side are independent copies, so
    /// the law fails as soon as `t` can lose mass.
    #[test]
    fn multiplexer_law_needs_total_tapes() {
        let half = scale_t(&BoolFns, &TapeTerm::Id(1), &rat(1, 2)).unwrap();
        assert!(!mux_axiom_check(&half).unwrap());
    }

    #[test]
    fn failing_multiplexer_versus_tape_choice() {
        let p = rat(1, 3);
        let (circuit, choice) = control_contrast(&FnTable::constant(1, 1), &p).unwrap();
        assert!(tape_semantics(&circuit).unwrap().is_null());
        let k = tape_semantics(&choice).unwrap();
        assert_eq!(k.apply((0, 0)), &dist(&[(1, p)]));
        let not = FnTable::from_fn(1, 1, |x| x ^ 1);
        let (circuit, choice) = control_contrast(&not, &rat(1, 4)).unwrap();
        assert!(tape_semantics(&circuit).unwrap().is_null());
        let m = choice.compile(&BoolFns).unwrap();
        assert_eq!(m.entry(0, 0), &Subdist::from_weights([(not, rat(1, 4))]).unwrap());
        assert!(m.entry(1, 0).is_null());
    }
}
