//! Stochastic matrices over a base category.
//!
//! A matrix `P → Q` with `P = U₁…Uₙ` and `Q = V₁…Vₘ` has `m` rows and `n`
//! columns; entry `(j, i)` is a subdistribution of base arrows `Uᵢ → Vⱼ`
//! and every column has total mass at most 1.

use std::fmt;

use num_traits::{One, Zero};

use crate::base::boolean::FnTable;
use crate::base::{plus_compose, plus_tensor, Base, BaseFunctor, Label};
use crate::boolcirc::kleisli::{Elem, KleisliMap};
use crate::error::{Error, Result};
use crate::prob::{check_prob, Rational, Subdist};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StochMatrix<O: Ord, A: Ord> {
    dom: Vec<O>,
    cod: Vec<O>,
    /// Row-major: `entries[j][i]` is entry `(j, i)`.
    entries: Vec<Vec<Subdist<A>>>,
}

/// The matrix type over a given base.
pub type Matrix<B> = StochMatrix<<B as Base>::Obj, <B as Base>::Arrow>;

fn words_display<O: fmt::Display>(w: &[O]) -> String {
    if w.is_empty() {
        "𝟘".to_string()
    } else {
        w.iter().map(|o| o.to_string()).collect::<Vec<_>>().join(" ⊕ ")
    }
}

impl<O: Label, A: Label> StochMatrix<O, A> {
    /// Validates shapes, arrow types and column masses.
    pub fn new<B>(base: &B, dom: Vec<O>, cod: Vec<O>, entries: Vec<Vec<Subdist<A>>>) -> Result<Self>
    where
        B: Base<Obj = O, Arrow = A>,
    {
        if entries.len() != cod.len() || entries.iter().any(|r| r.len() != dom.len()) {
            return Err(Error::mismatch(format!(
                "entries do not form a {}×{} grid",
                cod.len(),
                dom.len()
            )));
        }
        for (j, row) in entries.iter().enumerate() {
            for (i, d) in row.iter().enumerate() {
                for f in d.support() {
                    if base.dom(f) != dom[i] || base.cod(f) != cod[j] {
                        return Err(Error::mismatch(format!(
                            "entry ({j},{i}) holds {f}, expected an arrow {} → {}",
                            dom[i], cod[j]
                        )));
                    }
                }
            }
        }
        let m = StochMatrix { dom, cod, entries };
        for i in 0..m.dom.len() {
            let mass = m.column_mass(i);
            if mass > Rational::one() {
                return Err(Error::MassExceeded(format!("{mass} in column {i}")));
            }
        }
        Ok(m)
    }

    /// Builds a matrix from trusted parts, asserting the column bound.
    fn raw(dom: Vec<O>, cod: Vec<O>, entries: Vec<Vec<Subdist<A>>>) -> Self {
        let m = StochMatrix { dom, cod, entries };
        debug_assert!(
            (0..m.dom.len()).all(|i| m.column_mass(i) <= Rational::one()),
            "column mass exceeds 1"
        );
        m
    }

    fn from_fn(dom: Vec<O>, cod: Vec<O>, mut f: impl FnMut(usize, usize) -> Subdist<A>) -> Self {
        let entries = (0..cod.len())
            .map(|j| (0..dom.len()).map(|i| f(j, i)).collect())
            .collect();
        Self::raw(dom, cod, entries)
    }

    pub fn identity<B>(base: &B, p: &[O]) -> Self
    where
        B: Base<Obj = O, Arrow = A>,
    {
        Self::from_fn(p.to_vec(), p.to_vec(), |j, i| {
            if i == j {
                Subdist::dirac(base.id(&p[i]))
            } else {
                Subdist::null()
            }
        })
    }

    /// The 1×1 matrix `1·f`.
    pub fn lift<B>(base: &B, f: A) -> Self
    where
        B: Base<Obj = O, Arrow = A>,
    {
        Self::raw(vec![base.dom(&f)], vec![base.cod(&f)], vec![vec![Subdist::dirac(f)]])
    }

    /// `⋆_{P,Q}`: every entry null.
    pub fn star(p: &[O], q: &[O]) -> Self {
        Self::from_fn(p.to_vec(), q.to_vec(), |_, _| Subdist::null())
    }

    pub fn dom(&self) -> &[O] {
        &self.dom
    }

    pub fn cod(&self) -> &[O] {
        &self.cod
    }

    pub fn rows(&self) -> usize {
        self.cod.len()
    }

    pub fn cols(&self) -> usize {
        self.dom.len()
    }

    pub fn entry(&self, j: usize, i: usize) -> &Subdist<A> {
        &self.entries[j][i]
    }

    pub fn entries(&self) -> &[Vec<Subdist<A>>] {
        &self.entries
    }

    /// Column `i`, top to bottom.
    pub fn column(&self, i: usize) -> Vec<Subdist<A>> {
        self.entries.iter().map(|r| r[i].clone()).collect()
    }

    pub fn column_mass(&self, i: usize) -> Rational {
        self.entries
            .iter()
            .fold(Rational::zero(), |acc, r| acc + r[i].mass())
    }

    /// `self ; other`: entry `(u,i)` is `Σ_j self(j,i) ; other(u,j)`.
    pub fn compose<B>(&self, base: &B, other: &Self) -> Result<Self>
    where
        B: Base<Obj = O, Arrow = A>,
    {
        if self.cod != other.dom {
            return Err(Error::mismatch(format!(
                "cannot compose {} → {} with {} → {}",
                words_display(&self.dom),
                words_display(&self.cod),
                words_display(&other.dom),
                words_display(&other.cod)
            )));
        }
        let mut entries = Vec::with_capacity(other.rows());
        for u in 0..other.rows() {
            let mut row = Vec::with_capacity(self.cols());
            for i in 0..self.cols() {
                let mut acc = Subdist::null();
                for j in 0..self.rows() {
                    let (m, n) = (&self.entries[j][i], &other.entries[u][j]);
                    if m.is_null() || n.is_null() {
                        continue;
                    }
                    acc.accumulate(&plus_compose(base, m, n)?);
                }
                row.push(acc);
            }
            entries.push(row);
        }
        let out = StochMatrix {
            dom: self.dom.clone(),
            cod: other.cod.clone(),
            entries,
        };
        for i in 0..out.cols() {
            assert!(out.column_mass(i) <= Rational::one(), "column mass exceeds 1 after composition");
        }
        Ok(out)
    }

    /// Block-diagonal sum `self ⊕ other`.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let (n, m) = (self.cols(), self.rows());
        let dom = [self.dom.as_slice(), other.dom.as_slice()].concat();
        let cod = [self.cod.as_slice(), other.cod.as_slice()].concat();
        Self::from_fn(dom, cod, |j, i| match (j < m, i < n) {
            (true, true) => self.entries[j][i].clone(),
            (false, false) => other.entries[j - m][i - n].clone(),
            _ => Subdist::null(),
        })
    }

    /// `σ_{P,Q} : P ⊕ Q → Q ⊕ P`.
    pub fn swap_plus<B>(base: &B, p: &[O], q: &[O]) -> Self
    where
        B: Base<Obj = O, Arrow = A>,
    {
        let dom = [p, q].concat();
        let cod = [q, p].concat();
        let (k, l) = (p.len(), q.len());
        // input i lands on output (i + l) if it is in P, (i - k) otherwise
        Self::from_fn(dom.clone(), cod, |j, i| {
            let target = if i < k { i + l } else { i - k };
            if j == target {
                Subdist::dirac(base.id(&dom[i]))
            } else {
                Subdist::null()
            }
        })
    }

    /// `codiag_P : P ⊕ P → P`, the block row `[I I]`.
    pub fn gen_codiag<B>(base: &B, p: &[O]) -> Self
    where
        B: Base<Obj = O, Arrow = A>,
    {
        let k = p.len();
        Self::from_fn([p, p].concat(), p.to_vec(), |j, i| {
            if i % k.max(1) == j {
                Subdist::dirac(base.id(&p[j]))
            } else {
                Subdist::null()
            }
        })
    }

    /// `cobang_P : 𝟘 → P`, with no columns.
    pub fn gen_cobang(p: &[O]) -> Self {
        Self::star(&[], p)
    }

    /// `bang_P : P → 𝟘`, with no rows.
    pub fn gen_bang(p: &[O]) -> Self {
        Self::star(p, &[])
    }

    /// `diagp_P : P → P ⊕ P`, the block column `[p·I ; (1−p)·I]`.
    pub fn gen_diagp<B>(base: &B, p: &[O], prob: &Rational) -> Result<Self>
    where
        B: Base<Obj = O, Arrow = A>,
    {
        check_prob(prob)?;
        let k = p.len();
        let q = Rational::one() - prob;
        Ok(Self::from_fn(p.to_vec(), [p, p].concat(), |j, i| {
            let w = match (j == i, j == i + k) {
                (true, _) => prob.clone(),
                (_, true) => q.clone(),
                _ => return Subdist::null(),
            };
            Subdist::dirac(base.id(&p[i])).scale_unchecked(&w)
        }))
    }

    /// Entrywise scaling `p·M`.
    pub fn scale(&self, p: &Rational) -> Result<Self> {
        check_prob(p)?;
        Ok(Self::from_fn(self.dom.clone(), self.cod.clone(), |j, i| {
            self.entries[j][i].scale_unchecked(p)
        }))
    }

    /// Entrywise `M +_p N`.
    pub fn convex_sum(&self, other: &Self, p: &Rational) -> Result<Self> {
        if self.dom != other.dom || self.cod != other.cod {
            return Err(Error::mismatch("convex sum of matrices of different types".to_string()));
        }
        check_prob(p)?;
        let mut entries = Vec::with_capacity(self.rows());
        for j in 0..self.rows() {
            let mut row = Vec::with_capacity(self.cols());
            for i in 0..self.cols() {
                row.push(self.entries[j][i].convex_sum(&other.entries[j][i], p)?);
            }
            entries.push(row);
        }
        Ok(Self::raw(self.dom.clone(), self.cod.clone(), entries))
    }

    /// Kronecker product using `⊗⁺`. Row and column pairs are ordered with
    /// the left factor major: `(i, j) ↦ i·n' + j`.
    pub fn tensor<B>(&self, base: &B, other: &Self) -> Result<Self>
    where
        B: Base<Obj = O, Arrow = A>,
    {
        let pair = |a: &[O], b: &[O]| -> Result<Vec<O>> {
            let mut out = Vec::with_capacity(a.len() * b.len());
            for u in a {
                for v in b {
                    out.push(base.tensor_obj(u, v)?);
                }
            }
            Ok(out)
        };
        let dom = pair(&self.dom, &other.dom)?;
        let cod = pair(&self.cod, &other.cod)?;
        let (n2, m2) = (other.cols(), other.rows());
        let mut entries = vec![vec![Subdist::null(); dom.len()]; cod.len()];
        for (j1, row1) in self.entries.iter().enumerate() {
            for (i1, d1) in row1.iter().enumerate() {
                if d1.is_null() {
                    continue;
                }
                for (j2, row2) in other.entries.iter().enumerate() {
                    for (i2, d2) in row2.iter().enumerate() {
                        if d2.is_null() {
                            continue;
                        }
                        entries[j1 * m2 + j2][i1 * n2 + i2] = plus_tensor(base, d1, d2)?;
                    }
                }
            }
        }
        Ok(Self::raw(dom, cod, entries))
    }

    /// Pushforward of every entry along a base functor.
    pub fn map_base<F>(&self, functor: &F) -> Result<StochMatrix<<F::Target as Base>::Obj, <F::Target as Base>::Arrow>>
    where
        F: BaseFunctor,
        F::Source: Base<Obj = O, Arrow = A>,
    {
        let dom = self.dom.iter().map(|u| functor.map_obj(u)).collect::<Result<_>>()?;
        let cod = self.cod.iter().map(|u| functor.map_obj(u)).collect::<Result<_>>()?;
        let entries = self
            .entries
            .iter()
            .map(|row| {
                row.iter()
                    .map(|d| d.try_map(|f| functor.map_arrow(f)))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        Ok(StochMatrix::raw(dom, cod, entries))
    }

    /// Renders the matrix one row per line, cells separated by `|`.
    pub fn render(&self, decimal: bool) -> String {
        let mut out = format!("{} → {}\n", words_display(&self.dom), words_display(&self.cod));
        for row in &self.entries {
            let cells: Vec<String> = row.iter().map(|d| render_entry(d, decimal)).collect();
            out.push_str(&format!("[ {} ]\n", cells.join(" | ")));
        }
        out
    }
}

/// `1/4·aa + 1/4·abc`, or `⋆` for the null entry.
pub fn render_entry<A: fmt::Display + Ord + Clone>(d: &Subdist<A>, decimal: bool) -> String {
    if d.is_null() {
        return "⋆".to_string();
    }
    d.iter()
        .map(|(f, w)| {
            if decimal {
                format!("{w}·{f} (≈{:.4})", crate::prob::to_f64(w))
            } else {
                format!("{w}·{f}")
            }
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

impl<O: Label, A: Label> fmt::Display for StochMatrix<O, A> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(false))
    }
}

impl StochMatrix<usize, FnTable> {
    /// The Kleisli map `(i, b) ↦ Σ_j Σ_{f(b)=b'} M(j,i)(f) · δ_{(j,b')}`.
    pub fn to_kleisli(&self) -> KleisliMap {
        KleisliMap::from_fn(self.dom.clone(), self.cod.clone(), |(i, b)| {
            let mut out: Subdist<Elem> = Subdist::null();
            for (j, row) in self.entries.iter().enumerate() {
                for (f, w) in row[i].iter() {
                    out.accumulate(&Subdist::dirac((j, f.apply(b))).scale_unchecked(w));
                }
            }
            out
        })
        .expect("tables are total and typed")
    }
}
