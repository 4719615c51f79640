//! The monoidal product of tapes, built from whiskerings and the left
//! distributor. Needs a monoidal base.

use super::derived::{id_word, plus_all, sigma_plus};
use super::{Tape, TapeTerm};
use crate::base::Base;
use crate::error::Result;

/// `P ⊗ Q = ⊕ᵢ ⊕ⱼ UᵢVⱼ`, left factor major.
pub fn tensor_poly<B: Base>(base: &B, p: &[B::Obj], q: &[B::Obj]) -> Result<Vec<B::Obj>> {
    let mut out = Vec::with_capacity(p.len() * q.len());
    for u in p {
        for v in q {
            out.push(base.tensor_obj(u, v)?);
        }
    }
    Ok(out)
}

fn whisker_mono<B: Base>(base: &B, u: &B::Obj, t: &Tape<B>, left: bool) -> Result<Tape<B>> {
    let o = |v: &B::Obj| {
        if left {
            base.tensor_obj(u, v)
        } else {
            base.tensor_obj(v, u)
        }
    };
    Ok(match t {
        TapeTerm::Id(v) => TapeTerm::Id(o(v)?),
        TapeTerm::Id0 => TapeTerm::Id0,
        TapeTerm::Lift(c) => {
            let id = base.id(u);
            TapeTerm::Lift(if left { base.tensor(&id, c)? } else { base.tensor(c, &id)? })
        }
        TapeTerm::SigmaPlus(v, w) => TapeTerm::SigmaPlus(o(v)?, o(w)?),
        TapeTerm::Seq(a, b) => TapeTerm::seq(whisker_mono(base, u, a, left)?, whisker_mono(base, u, b, left)?),
        TapeTerm::Plus(a, b) => TapeTerm::plus(whisker_mono(base, u, a, left)?, whisker_mono(base, u, b, left)?),
        TapeTerm::Cobang(v) => TapeTerm::Cobang(o(v)?),
        TapeTerm::Codiag(v) => TapeTerm::Codiag(o(v)?),
        TapeTerm::DiagP(v, p) => TapeTerm::DiagP(o(v)?, p.clone()),
        TapeTerm::Bang(v) => TapeTerm::Bang(o(v)?),
    })
}

/// `L_U(t) : UP → UQ` for a monomial `U`.
pub fn whisker_left_mono<B: Base>(base: &B, u: &B::Obj, t: &Tape<B>) -> Result<Tape<B>> {
    whisker_mono(base, u, t, true)
}

/// `R_U(t) : PU → QU` for a monomial `U`.
pub fn whisker_right_mono<B: Base>(base: &B, u: &B::Obj, t: &Tape<B>) -> Result<Tape<B>> {
    whisker_mono(base, u, t, false)
}

/// `L_W(t) = ⊕ₖ L_{Wₖ}(t) : W⊗P → W⊗Q`.
pub fn whisker_left<B: Base>(base: &B, w: &[B::Obj], t: &Tape<B>) -> Result<Tape<B>> {
    let parts = w
        .iter()
        .map(|u| whisker_left_mono(base, u, t))
        .collect::<Result<Vec<_>>>()?;
    Ok(plus_all(parts))
}

/// `R_W(t) : P⊗W → Q⊗W`. For `W = V ⊕ S'` this is
/// `δˡ_{P,V,S'} ; (R_V(t) ⊕ R_{S'}(t)) ; (δˡ_{Q,V,S'})⁻¹`.
pub fn whisker_right<B: Base>(base: &B, w: &[B::Obj], t: &Tape<B>) -> Result<Tape<B>> {
    let ty = t.typecheck(base)?;
    whisker_right_typed(base, w, t, &ty.dom, &ty.cod)
}

fn whisker_right_typed<B: Base>(base: &B, w: &[B::Obj], t: &Tape<B>, p: &[B::Obj], q: &[B::Obj]) -> Result<Tape<B>> {
    match w.split_first() {
        None => Ok(TapeTerm::Id0),
        Some((v, [])) => whisker_right_mono(base, v, t),
        Some((v, rest)) => {
            let v = std::slice::from_ref(v);
            Ok(TapeTerm::seq(
                TapeTerm::seq(
                    delta_l(base, p, v, rest)?,
                    TapeTerm::plus(whisker_right_mono(base, &v[0], t)?, whisker_right_typed(base, rest, t, p, q)?),
                ),
                delta_l_inv(base, q, v, rest)?,
            ))
        }
    }
}

/// `δˡ_{P,Q,R} : P⊗(Q⊕R) → P⊗Q ⊕ P⊗R`.
pub fn delta_l<B: Base>(base: &B, p: &[B::Obj], q: &[B::Obj], r: &[B::Obj]) -> Result<Tape<B>> {
    let Some((u, rest)) = p.split_first() else {
        return Ok(TapeTerm::Id0);
    };
    let u = std::slice::from_ref(u);
    let qr = [q, r].concat();
    if rest.is_empty() {
        return Ok(id_word(&tensor_poly(base, u, &qr)?));
    }
    let first = TapeTerm::plus(id_word(&tensor_poly(base, u, &qr)?), delta_l(base, rest, q, r)?);
    let second = plus_all([
        id_word(&tensor_poly(base, u, q)?),
        sigma_plus(&tensor_poly(base, u, r)?, &tensor_poly(base, rest, q)?),
        id_word(&tensor_poly(base, rest, r)?),
    ]);
    Ok(TapeTerm::seq(first, second))
}

/// `(δˡ_{P,Q,R})⁻¹ : P⊗Q ⊕ P⊗R → P⊗(Q⊕R)`.
pub fn delta_l_inv<B: Base>(base: &B, p: &[B::Obj], q: &[B::Obj], r: &[B::Obj]) -> Result<Tape<B>> {
    let Some((u, rest)) = p.split_first() else {
        return Ok(TapeTerm::Id0);
    };
    let u = std::slice::from_ref(u);
    let qr = [q, r].concat();
    if rest.is_empty() {
        return Ok(id_word(&tensor_poly(base, u, &qr)?));
    }
    let first = plus_all([
        id_word(&tensor_poly(base, u, q)?),
        sigma_plus(&tensor_poly(base, rest, q)?, &tensor_poly(base, u, r)?),
        id_word(&tensor_poly(base, rest, r)?),
    ]);
    let second = TapeTerm::plus(id_word(&tensor_poly(base, u, &qr)?), delta_l_inv(base, rest, q, r)?);
    Ok(TapeTerm::seq(first, second))
}

/// `σ⊗_{P,Q} : P⊗Q → Q⊗P`.
pub fn sigma_times<B: Base>(base: &B, p: &[B::Obj], q: &[B::Obj]) -> Result<Tape<B>> {
    let Some((v, rest)) = q.split_first() else {
        return Ok(TapeTerm::Id0);
    };
    let crossings = p
        .iter()
        .map(|u| Ok(TapeTerm::Lift(base.symmetry(u, v)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(TapeTerm::seq(
        delta_l(base, p, std::slice::from_ref(v), rest)?,
        TapeTerm::plus(plus_all(crossings), sigma_times(base, p, rest)?),
    ))
}

/// `t₁ ⊗ t₂ = L_P(t₂) ; R_S(t₁)` for `t₁ : P → Q` and `t₂ : R → S`.
pub fn tensor_t<B: Base>(base: &B, t1: &Tape<B>, t2: &Tape<B>) -> Result<Tape<B>> {
    let ty1 = t1.typecheck(base)?;
    let ty2 = t2.typecheck(base)?;
    Ok(TapeTerm::seq(
        whisker_left(base, &ty1.dom, t2)?,
        whisker_right_typed(base, &ty2.cod, t1, &ty1.dom, &ty1.cod)?,
    ))
}
