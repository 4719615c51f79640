//! Derived tapes: structure on words of monomials, n-ary diagonals,
//! pairings and the convex enrichment.

use num_traits::{One, Zero};

use super::TapeTerm;
use crate::base::{Base, Label};
use crate::error::{Error, Result};
use crate::prob::{check_prob, Rational};

/// `t₁ ⊕ … ⊕ tₙ`, left-nested; the empty sum is `id0`.
pub fn plus_all<O: Label, A: Label>(terms: impl IntoIterator<Item = TapeTerm<O, A>>) -> TapeTerm<O, A> {
    terms
        .into_iter()
        .reduce(TapeTerm::plus)
        .unwrap_or(TapeTerm::Id0)
}

/// `t₁ ; … ; tₙ`. Panics on an empty list.
pub fn seq_all<O: Label, A: Label>(terms: impl IntoIterator<Item = TapeTerm<O, A>>) -> TapeTerm<O, A> {
    terms
        .into_iter()
        .reduce(TapeTerm::seq)
        .expect("seq_all needs at least one term")
}

pub fn id_word<O: Label, A: Label>(p: &[O]) -> TapeTerm<O, A> {
    plus_all(p.iter().map(|u| TapeTerm::Id(u.clone())))
}

/// `σ_{U,Q} : U ⊕ Q → Q ⊕ U` for a single monomial `U`.
fn sigma_mono_poly<O: Label, A: Label>(u: &O, q: &[O]) -> TapeTerm<O, A> {
    match q.split_first() {
        None => TapeTerm::Id(u.clone()),
        Some((v, [])) => TapeTerm::SigmaPlus(u.clone(), v.clone()),
        Some((v, rest)) => TapeTerm::seq(
            TapeTerm::plus(TapeTerm::SigmaPlus(u.clone(), v.clone()), id_word(rest)),
            TapeTerm::plus(TapeTerm::Id(v.clone()), sigma_mono_poly(u, rest)),
        ),
    }
}

/// `σ_{P,Q} : P ⊕ Q → Q ⊕ P`.
pub fn sigma_plus<O: Label, A: Label>(p: &[O], q: &[O]) -> TapeTerm<O, A> {
    match p.split_first() {
        None => id_word(q),
        Some((u, [])) => sigma_mono_poly(u, q),
        Some((u, rest)) => TapeTerm::seq(
            TapeTerm::plus(TapeTerm::Id(u.clone()), sigma_plus(rest, q)),
            TapeTerm::plus(sigma_mono_poly(u, q), id_word(rest)),
        ),
    }
}

/// `codiag_P : P ⊕ P → P`.
pub fn codiag_poly<O: Label, A: Label>(p: &[O]) -> TapeTerm<O, A> {
    match p.split_first() {
        None => TapeTerm::Id0,
        Some((u, [])) => TapeTerm::Codiag(u.clone()),
        Some((u, rest)) => TapeTerm::seq(
            plus_all([TapeTerm::Id(u.clone()), sigma_plus(rest, std::slice::from_ref(u)), id_word(rest)]),
            TapeTerm::plus(TapeTerm::Codiag(u.clone()), codiag_poly(rest)),
        ),
    }
}

pub fn cobang_poly<O: Label, A: Label>(p: &[O]) -> TapeTerm<O, A> {
    plus_all(p.iter().map(|u| TapeTerm::Cobang(u.clone())))
}

pub fn bang_poly<O: Label, A: Label>(p: &[O]) -> TapeTerm<O, A> {
    plus_all(p.iter().map(|u| TapeTerm::Bang(u.clone())))
}

/// `diag^p_U` for `p` in the closed interval; the endpoints become
/// `init ⊕ id` and `id ⊕ init`.
fn diagp_mono<O: Label, A: Label>(u: &O, p: &Rational) -> TapeTerm<O, A> {
    if p.is_zero() {
        TapeTerm::plus(TapeTerm::Cobang(u.clone()), TapeTerm::Id(u.clone()))
    } else if p.is_one() {
        TapeTerm::plus(TapeTerm::Id(u.clone()), TapeTerm::Cobang(u.clone()))
    } else {
        TapeTerm::DiagP(u.clone(), p.clone())
    }
}

/// `diag^p_P : P → P ⊕ P`.
pub fn diagp_poly<O: Label, A: Label>(p: &[O], prob: &Rational) -> Result<TapeTerm<O, A>> {
    check_prob(prob)?;
    Ok(diagp_poly_unchecked(p, prob))
}

fn diagp_poly_unchecked<O: Label, A: Label>(p: &[O], prob: &Rational) -> TapeTerm<O, A> {
    match p.split_first() {
        None => TapeTerm::Id0,
        Some((u, [])) => diagp_mono(u, prob),
        Some((u, rest)) => TapeTerm::seq(
            TapeTerm::plus(diagp_mono(u, prob), diagp_poly_unchecked(rest, prob)),
            plus_all([TapeTerm::Id(u.clone()), sigma_plus(std::slice::from_ref(u), rest), id_word(rest)]),
        ),
    }
}

/// `diag^{p⃗}_P : P → P^{n+1}` for `p⃗ = (p₁,…,pₙ)` with `Σ pᵢ ≤ 1`. Copy `i`
/// carries weight `pᵢ` and the last copy the remainder `1 − Σ pᵢ`.
pub fn diag_vec<O: Label, A: Label>(p: &[O], probs: &[Rational]) -> Result<TapeTerm<O, A>> {
    let mut total = Rational::zero();
    for q in probs {
        check_prob(q)?;
        total += q;
    }
    if total > Rational::one() {
        return Err(Error::MassExceeded(total.to_string()));
    }
    Ok(diag_vec_unchecked(p, probs))
}

fn diag_vec_unchecked<O: Label, A: Label>(p: &[O], probs: &[Rational]) -> TapeTerm<O, A> {
    match probs.split_first() {
        None => id_word(p),
        Some((p1, rest)) => {
            let left = Rational::one() - p1;
            let qs: Vec<Rational> = if left.is_zero() {
                vec![Rational::zero(); rest.len()]
            } else {
                rest.iter().map(|q| q / &left).collect()
            };
            let tail = diag_vec_unchecked(p, &qs);
            TapeTerm::seq(diagp_poly_unchecked(p, p1), TapeTerm::plus(id_word(p), tail))
        }
    }
}

/// `codiag^n_P : P^n → P`; `n = 0` gives `cobang_P`.
pub fn codiag_n<O: Label, A: Label>(p: &[O], n: usize) -> TapeTerm<O, A> {
    match n {
        0 => cobang_poly(p),
        1 => id_word(p),
        _ => TapeTerm::seq(TapeTerm::plus(id_word(p), codiag_n(p, n - 1)), codiag_poly(p)),
    }
}

/// `πᵢ : P₁ ⊕ … ⊕ Pₙ → Pᵢ`.
pub fn proj<O: Label, A: Label>(ps: &[Vec<O>], i: usize) -> Result<TapeTerm<O, A>> {
    if i >= ps.len() {
        return Err(Error::IndexOutOfRange { index: i, len: ps.len() });
    }
    Ok(plus_all(ps.iter().enumerate().map(|(k, p)| {
        if k == i {
            id_word(p)
        } else {
            bang_poly(p)
        }
    })))
}

/// `ιᵢ : Pᵢ → P₁ ⊕ … ⊕ Pₙ`.
pub fn inj<O: Label, A: Label>(ps: &[Vec<O>], i: usize) -> Result<TapeTerm<O, A>> {
    if i >= ps.len() {
        return Err(Error::IndexOutOfRange { index: i, len: ps.len() });
    }
    Ok(plus_all(ps.iter().enumerate().map(|(k, p)| {
        if k == i {
            id_word(p)
        } else {
            cobang_poly(p)
        }
    })))
}

/// `⋆_{P,Q} = bang_P ; cobang_Q`.
pub fn star_t<O: Label, A: Label>(p: &[O], q: &[O]) -> TapeTerm<O, A> {
    TapeTerm::seq(bang_poly(p), cobang_poly(q))
}

/// `⟨t₁,…,tₙ⟩_{p⃗} = diag^{p⃗}_P ; (t₁ ⊕ … ⊕ tₙ ⊕ bang_P)` for `tᵢ : P → Qᵢ`.
pub fn pairing<O: Label, A: Label>(dom: &[O], terms: &[TapeTerm<O, A>], probs: &[Rational]) -> Result<TapeTerm<O, A>> {
    if terms.len() != probs.len() {
        return Err(Error::Invalid(format!(
            "{} terms but {} probabilities",
            terms.len(),
            probs.len()
        )));
    }
    let branches = terms
        .iter()
        .cloned()
        .chain(std::iter::once(bang_poly(dom)));
    Ok(TapeTerm::seq(diag_vec(dom, probs)?, plus_all(branches)))
}

/// `[t₁,…,tₙ] = (t₁ ⊕ … ⊕ tₙ) ; codiag^n_Q` for `tᵢ : Pᵢ → Q`.
pub fn copairing<O: Label, A: Label>(cod: &[O], terms: &[TapeTerm<O, A>]) -> TapeTerm<O, A> {
    TapeTerm::seq(plus_all(terms.iter().cloned()), codiag_n(cod, terms.len()))
}

/// `t +_p s = diag^p_P ; (t ⊕ s) ; codiag_Q`.
pub fn plus_p<B: Base>(base: &B, t: &TapeTerm<B::Obj, B::Arrow>, s: &TapeTerm<B::Obj, B::Arrow>, p: &Rational) -> Result<TapeTerm<B::Obj, B::Arrow>> {
    let ty = t.typecheck(base)?;
    let ty2 = s.typecheck(base)?;
    if ty != ty2 {
        return Err(Error::mismatch(format!("convex sum of {ty} and {ty2}")));
    }
    Ok(seq_all([
        diagp_poly(&ty.dom, p)?,
        TapeTerm::plus(t.clone(), s.clone()),
        codiag_poly(&ty.cod),
    ]))
}

/// `p·t = t +_p ⋆`.
pub fn scale_t<B: Base>(base: &B, t: &TapeTerm<B::Obj, B::Arrow>, p: &Rational) -> Result<TapeTerm<B::Obj, B::Arrow>> {
    let ty = t.typecheck(base)?;
    plus_p(base, t, &star_t(&ty.dom, &ty.cod), p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base::free_monoid::{FreeMonoid, Point, Word};
    use crate::prob::{rat, Subdist};
    use crate::stmat::StochMatrix;

    type T = TapeTerm<Point, Word>;
    type M = StochMatrix<Point, Word>;
    const B: FreeMonoid = FreeMonoid;

    fn pts(n: usize) -> Vec<Point> {
        vec![Point; n]
    }

    fn lift(s: &str) -> T {
        T::Lift(Word::new(s))
    }

    fn compile(t: &T) -> M {
        t.compile(&B).unwrap()
    }

    #[test]
    fn structural_builders_match_matrix_generators() {
        for k in 0..4 {
            let p = pts(k);
            assert_eq!(compile(&id_word(&p)), M::identity(&B, &p));
            assert_eq!(compile(&codiag_poly(&p)), M::gen_codiag(&B, &p));
            assert_eq!(compile(&cobang_poly(&p)), M::gen_cobang(&p));
            assert_eq!(compile(&bang_poly(&p)), M::gen_bang(&p));
            for q in [rat(0, 1), rat(1, 4), rat(1, 1)] {
                assert_eq!(compile(&diagp_poly(&p, &q).unwrap()), M::gen_diagp(&B, &p, &q).unwrap());
            }
            for l in 0..3 {
                let q = pts(l);
                assert_eq!(compile(&sigma_plus(&p, &q)), M::swap_plus(&B, &p, &q));
            }
        }
    }

    #[test]
    fn vector_diagonal() {
        let t: T = diag_vec(&pts(1), &[rat(1, 2), rat(1, 3)]).unwrap();
        let col = compile(&t).column(0);
        let id = |p| Subdist::from_weights([(Word::default(), p)]).unwrap();
        assert_eq!(col, vec![id(rat(1, 2)), id(rat(1, 3)), id(rat(1, 6))]);
        let t: T = diag_vec(&pts(1), &[rat(1, 1), rat(0, 1)]).unwrap();
        assert_eq!(compile(&t).column(0), vec![id(rat(1, 1)), Subdist::null(), Subdist::null()]);
        assert!(diag_vec::<Point, Word>(&pts(1), &[rat(2, 3), rat(2, 3)]).is_err());
    }

    #[test]
    fn pairings_and_projections() {
        let p = pts(1);
        let t = lift("a");
        assert_eq!(compile(&pairing(&p, std::slice::from_ref(&t), &[rat(1, 1)]).unwrap()), compile(&t));
        let (t1, t2) = (lift("a"), T::seq(T::DiagP(Point, rat(1, 2)), T::plus(lift("b"), lift("c"))));
        let h = pairing(&p, &[t1.clone(), t2.clone()], &[rat(1, 3), rat(1, 2)]).unwrap();
        let cods = vec![pts(1), pts(2)];
        let h1 = T::seq(h.clone(), proj(&cods, 0).unwrap());
        assert_eq!(compile(&h1), compile(&t1).scale(&rat(1, 3)).unwrap());
        let h2 = T::seq(h, proj(&cods, 1).unwrap());
        assert_eq!(compile(&h2), compile(&t2).scale(&rat(1, 2)).unwrap());
        assert!(proj::<Point, Word>(&cods, 2).is_err());
        let i = inj::<Point, Word>(&cods, 1).unwrap();
        assert_eq!(compile(&T::seq(i, proj(&cods, 1).unwrap())), M::identity(&B, &pts(2)));
    }

    #[test]
    fn enrichment() {
        let t = lift("a");
        let s = lift("b");
        let half = rat(1, 2);
        let ts = plus_p(&B, &t, &s, &half).unwrap();
        let expected = compile(&t).convex_sum(&compile(&s), &half).unwrap();
        assert_eq!(compile(&ts), expected);
        assert!(super::super::equiv(&B, &plus_p(&B, &t, &t, &rat(1, 7)).unwrap(), &t).unwrap());
        let st = scale_t(&B, &t, &rat(1, 3)).unwrap();
        assert_eq!(compile(&st), compile(&t).scale(&rat(1, 3)).unwrap());
        let star: T = star_t(&pts(2), &pts(1));
        assert_eq!(compile(&star), M::star(&pts(2), &pts(1)));
        let c = copairing(&pts(1), &[lift("a"), lift("b")]);
        assert_eq!(compile(&c).cols(), 2);
    }
}
