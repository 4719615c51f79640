//! Tape terms: a `⊕`-layer of generators whose cells hold base arrows.
//!
//! Objects are words over the base objects (called monomials); a term
//! `t : P → Q` compiles to a stochastic matrix of the same type.

use std::fmt;

use crate::base::{Base, BaseFunctor, Label};
use crate::error::{Error, Result};
use crate::prob::{check_open_prob, Rational};
use crate::stmat::StochMatrix;

pub mod derived;
pub mod normal;
pub mod rig;

pub use derived::*;
pub use normal::{from_column, normal_form, read_column};
pub use rig::{delta_l, delta_l_inv, sigma_times, tensor_poly, tensor_t, whisker_left, whisker_left_mono, whisker_right, whisker_right_mono};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TapeTerm<O, A> {
    Id(O),
    Id0,
    Lift(A),
    SigmaPlus(O, O),
    Seq(Box<TapeTerm<O, A>>, Box<TapeTerm<O, A>>),
    Plus(Box<TapeTerm<O, A>>, Box<TapeTerm<O, A>>),
    Cobang(O),
    Codiag(O),
    /// Probability strictly between 0 and 1.
    DiagP(O, Rational),
    Bang(O),
}

/// The tape term type over a given base.
pub type Tape<B> = TapeTerm<<B as Base>::Obj, <B as Base>::Arrow>;

/// `dom → cod`, each a word of monomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TapeType<O> {
    pub dom: Vec<O>,
    pub cod: Vec<O>,
}

impl<O: fmt::Display> fmt::Display for TapeType<O> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} → {}", poly_display(&self.dom), poly_display(&self.cod))
    }
}

/// `U ⊕ V ⊕ …`, or `𝟘` for the empty word.
pub fn poly_display<O: fmt::Display>(p: &[O]) -> String {
    if p.is_empty() {
        "𝟘".to_string()
    } else {
        p.iter().map(|u| u.to_string()).collect::<Vec<_>>().join(" ⊕ ")
    }
}

impl<O: Label, A: Label> TapeTerm<O, A> {
    pub fn seq(a: Self, b: Self) -> Self {
        TapeTerm::Seq(Box::new(a), Box::new(b))
    }

    pub fn plus(a: Self, b: Self) -> Self {
        TapeTerm::Plus(Box::new(a), Box::new(b))
    }

    /// `DiagP`, refusing probabilities outside `(0,1)`.
    pub fn diagp(u: O, p: Rational) -> Result<Self> {
        check_open_prob(&p)?;
        Ok(TapeTerm::DiagP(u, p))
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        match self {
            TapeTerm::Seq(a, b) | TapeTerm::Plus(a, b) => 1 + a.size() + b.size(),
            _ => 1,
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            TapeTerm::Seq(a, b) | TapeTerm::Plus(a, b) => 1 + a.depth().max(b.depth()),
            _ => 0,
        }
    }

    pub fn typecheck<B>(&self, base: &B) -> Result<TapeType<O>>
    where
        B: Base<Obj = O, Arrow = A>,
    {
        let (dom, cod) = match self {
            TapeTerm::Id(u) => (vec![u.clone()], vec![u.clone()]),
            TapeTerm::Id0 => (vec![], vec![]),
            TapeTerm::Lift(c) => (vec![base.dom(c)], vec![base.cod(c)]),
            TapeTerm::SigmaPlus(u, v) => (vec![u.clone(), v.clone()], vec![v.clone(), u.clone()]),
            TapeTerm::Cobang(u) => (vec![], vec![u.clone()]),
            TapeTerm::Codiag(u) => (vec![u.clone(), u.clone()], vec![u.clone()]),
            TapeTerm::DiagP(u, p) => {
                if check_open_prob(p).is_err() {
                    return Err(Error::ill_typed(self, format!("probability {p} is not in (0,1)")));
                }
                (vec![u.clone()], vec![u.clone(), u.clone()])
            }
            TapeTerm::Bang(u) => (vec![u.clone()], vec![]),
            TapeTerm::Seq(a, b) => {
                let ta = a.typecheck(base)?;
                let tb = b.typecheck(base)?;
                if ta.cod != tb.dom {
                    return Err(Error::ill_typed(
                        self,
                        format!(
                            "codomain {} does not match domain {}",
                            poly_display(&ta.cod),
                            poly_display(&tb.dom)
                        ),
                    ));
                }
                (ta.dom, tb.cod)
            }
            TapeTerm::Plus(a, b) => {
                let ta = a.typecheck(base)?;
                let tb = b.typecheck(base)?;
                ([ta.dom, tb.dom].concat(), [ta.cod, tb.cod].concat())
            }
        };
        Ok(TapeType { dom, cod })
    }

    /// The matrix of the term. Sequencing is matrix composition and `+` is
    /// direct sum.
    pub fn compile<B>(&self, base: &B) -> Result<StochMatrix<O, A>>
    where
        B: Base<Obj = O, Arrow = A>,
    {
        self.typecheck(base)?;
        self.compile_typed(base)
    }

    fn compile_typed<B>(&self, base: &B) -> Result<StochMatrix<O, A>>
    where
        B: Base<Obj = O, Arrow = A>,
    {
        Ok(match self {
            TapeTerm::Id(u) => StochMatrix::identity(base, std::slice::from_ref(u)),
            TapeTerm::Id0 => StochMatrix::identity(base, &[]),
            TapeTerm::Lift(c) => StochMatrix::lift(base, c.clone()),
            TapeTerm::SigmaPlus(u, v) => {
                StochMatrix::swap_plus(base, std::slice::from_ref(u), std::slice::from_ref(v))
            }
            TapeTerm::Cobang(u) => StochMatrix::gen_cobang(std::slice::from_ref(u)),
            TapeTerm::Codiag(u) => StochMatrix::gen_codiag(base, std::slice::from_ref(u)),
            TapeTerm::DiagP(u, p) => StochMatrix::gen_diagp(base, std::slice::from_ref(u), p)?,
            TapeTerm::Bang(u) => StochMatrix::gen_bang(std::slice::from_ref(u)),
            TapeTerm::Seq(a, b) => a.compile_typed(base)?.compose(base, &b.compile_typed(base)?)?,
            TapeTerm::Plus(a, b) => a.compile_typed(base)?.direct_sum(&b.compile_typed(base)?),
        })
    }

    /// Replaces every object and arrow by its image under `functor`.
    pub fn map_base<F>(&self, functor: &F) -> Result<TapeTerm<<F::Target as Base>::Obj, <F::Target as Base>::Arrow>>
    where
        F: BaseFunctor,
        F::Source: Base<Obj = O, Arrow = A>,
    {
        let o = |u: &O| functor.map_obj(u);
        Ok(match self {
            TapeTerm::Id(u) => TapeTerm::Id(o(u)?),
            TapeTerm::Id0 => TapeTerm::Id0,
            TapeTerm::Lift(c) => TapeTerm::Lift(functor.map_arrow(c)?),
            TapeTerm::SigmaPlus(u, v) => TapeTerm::SigmaPlus(o(u)?, o(v)?),
            TapeTerm::Seq(a, b) => TapeTerm::Seq(Box::new(a.map_base(functor)?), Box::new(b.map_base(functor)?)),
            TapeTerm::Plus(a, b) => TapeTerm::Plus(Box::new(a.map_base(functor)?), Box::new(b.map_base(functor)?)),
            TapeTerm::Cobang(u) => TapeTerm::Cobang(o(u)?),
            TapeTerm::Codiag(u) => TapeTerm::Codiag(o(u)?),
            TapeTerm::DiagP(u, p) => TapeTerm::DiagP(o(u)?, p.clone()),
            TapeTerm::Bang(u) => TapeTerm::Bang(o(u)?),
        })
    }
}

/// Decides `t ∼ s` by comparing compiled matrices.
pub fn equiv<B: Base>(base: &B, t: &Tape<B>, s: &Tape<B>) -> Result<bool> {
    if !base.decidable_equality() {
        return Err(Error::UndecidableEquality(base.name().to_string()));
    }
    let (tt, ts) = (t.typecheck(base)?, s.typecheck(base)?);
    if tt != ts {
        return Err(Error::mismatch(format!("cannot compare {tt} with {ts}")));
    }
    Ok(t.compile(base)? == s.compile(base)?)
}

impl<O: fmt::Display, A: fmt::Display> fmt::Display for TapeTerm<O, A> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TapeTerm::Id(u) => write!(f, "idT {u}"),
            TapeTerm::Id0 => write!(f, "id0"),
            TapeTerm::Lift(c) => write!(f, "[ {c} ]"),
            TapeTerm::SigmaPlus(u, v) => write!(f, "symT {u} {v}"),
            TapeTerm::Seq(a, b) => write!(f, "({a} ; {b})"),
            TapeTerm::Plus(a, b) => write!(f, "({a} + {b})"),
            TapeTerm::Cobang(u) => write!(f, "init {u}"),
            TapeTerm::Codiag(u) => write!(f, "merge {u}"),
            TapeTerm::DiagP(u, p) => write!(f, "split {p} {u}"),
            TapeTerm::Bang(u) => write!(f, "kill {u}"),
        }
    }
}
