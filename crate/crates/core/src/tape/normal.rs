//! Reading a single-column tape back as data, and the canonical tape that
//! realises a column.

use num_traits::{One, Zero};

use super::derived::{codiag_n, diag_vec, plus_all, seq_all};
use super::{Tape, TapeTerm};
use crate::base::{Base, Label};
use crate::error::{Error, Result};
use crate::prob::{Rational, Subdist};
use crate::stmat::StochMatrix;

/// Column `i` of a matrix.
pub fn read_column<O: Label, A: Label>(m: &StochMatrix<O, A>, i: usize) -> Result<Vec<Subdist<A>>> {
    if i >= m.cols() {
        return Err(Error::IndexOutOfRange { index: i, len: m.cols() });
    }
    Ok(m.column(i))
}

/// For `t : U → V₁ ⊕ … ⊕ Vₙ`, the row masses `pᵢ` and the normalised
/// subdistribution of each row; null rows give `pᵢ = 0` and stay null.
pub fn normal_form<B: Base>(base: &B, t: &Tape<B>) -> Result<(Vec<Rational>, Vec<Subdist<B::Arrow>>)> {
    let m = t.compile(base)?;
    if m.cols() != 1 {
        return Err(Error::mismatch(format!(
            "normal form needs a single monomial domain, got {} summands",
            m.cols()
        )));
    }
    Ok(m.column(0).iter().map(|d| (d.mass(), d.normalized())).unzip())
}

/// The tape `diag^{p⃗}_U ; (⌜c₁⌝ ⊕ … ⊕ ⌜cₖ⌝ ⊕ bang_U) ; (⊕ⱼ codiag^{nⱼ}_{Vⱼ})`
/// whose single column is `column`. Arrows are listed row by row.
pub fn from_column<B: Base>(base: &B, dom: &B::Obj, cod: &[B::Obj], column: &[Subdist<B::Arrow>]) -> Result<Tape<B>> {
    if column.len() != cod.len() {
        return Err(Error::mismatch(format!(
            "column has {} entries for {} rows",
            column.len(),
            cod.len()
        )));
    }
    let mut total = Rational::zero();
    let mut weights = Vec::new();
    let mut lifts = Vec::new();
    let mut merges = Vec::new();
    for (d, v) in column.iter().zip(cod) {
        for (c, w) in d.iter() {
            if base.dom(c) != *dom || base.cod(c) != *v {
                return Err(Error::mismatch(format!("arrow {c} does not have type {dom} → {v}")));
            }
            total += w;
            weights.push(w.clone());
            lifts.push(TapeTerm::Lift(c.clone()));
        }
        merges.push(codiag_n(std::slice::from_ref(v), d.len()));
    }
    if total > Rational::one() {
        return Err(Error::MassExceeded(total.to_string()));
    }
    lifts.push(TapeTerm::Bang(dom.clone()));
    Ok(seq_all([
        diag_vec(std::slice::from_ref(dom), &weights)?,
        plus_all(lifts),
        plus_all(merges),
    ]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base::boolean::{BoolFns, FnTable};
    use crate::prob::rat;
    use crate::tape::derived::star_t;

    #[test]
    fn normal_form_of_lift_and_star() {
        let f = FnTable::from_fn(1, 1, |x| x ^ 1);
        let (ps, ds) = normal_form(&BoolFns, &TapeTerm::Lift(f.clone())).unwrap();
        assert_eq!(ps, vec![rat(1, 1)]);
        assert_eq!(ds, vec![Subdist::dirac(f)]);
        let (ps, ds) = normal_form::<BoolFns>(&BoolFns, &star_t(&[1], &[1, 2])).unwrap();
        assert_eq!(ps, vec![rat(0, 1), rat(0, 1)]);
        assert!(ds.iter().all(Subdist::is_null));
    }

    #[test]
    fn column_roundtrip() {
        let hom = BoolFns.hom(&1, &1).unwrap();
        let col = vec![
            Subdist::from_weights([(hom[0].clone(), rat(1, 5)), (hom[3].clone(), rat(1, 3))]).unwrap(),
            Subdist::null(),
            Subdist::from_weights([(FnTable::identity(1).tensor(&FnTable::identity(0)).unwrap(), rat(1, 7))]).unwrap(),
        ];
        let t = from_column(&BoolFns, &1, &[1, 0, 1], &[col[0].clone(), Subdist::null(), col[2].clone()]).unwrap();
        let m = t.compile(&BoolFns).unwrap();
        assert_eq!(read_column(&m, 0).unwrap(), col);
        assert!(from_column(&BoolFns, &1, &[1], &[Subdist::dirac(FnTable::identity(2))]).is_err());
    }
}
