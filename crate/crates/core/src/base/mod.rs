//! Base categories whose arrows fill the entries of stochastic matrices,
//! and their free enrichment `C⁺` whose hom-sets are subdistributions of
//! arrows.

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::marker::PhantomData;

use crate::error::{Error, Result};
use crate::prob::Subdist;

pub mod boolean;
pub mod diagram;
pub mod free_monoid;

pub use boolean::{BoolFns, FnTable};
pub use diagram::{Circuit, CircuitSemantics, CircuitTerm, Diagrams, Signature, SortWord};
pub use free_monoid::{FreeMonoid, Point, Word};

/// Bounds shared by objects and arrows of a base category.
pub trait Label: Clone + Eq + Ord + Hash + Debug + Display {}

impl<T: Clone + Eq + Ord + Hash + Debug + Display> Label for T {}

/// A category with decidable object equality.
///
/// The monoidal operations and hom-set enumeration are optional; instances
/// that lack them report [`Error::NotMonoidal`] or [`Error::HomNotFinite`].
pub trait Base {
    type Obj: Label;
    type Arrow: Label;

    fn name(&self) -> &str;

    fn dom(&self, f: &Self::Arrow) -> Self::Obj;

    fn cod(&self, f: &Self::Arrow) -> Self::Obj;

    fn id(&self, u: &Self::Obj) -> Self::Arrow;

    /// Diagrammatic composition `f ; g`.
    fn compose(&self, f: &Self::Arrow, g: &Self::Arrow) -> Result<Self::Arrow>;

    /// Whether `==` on arrows coincides with equality of morphisms.
    fn decidable_equality(&self) -> bool {
        true
    }

    fn unit(&self) -> Result<Self::Obj> {
        Err(Error::NotMonoidal(self.name().to_string()))
    }

    fn tensor_obj(&self, _u: &Self::Obj, _v: &Self::Obj) -> Result<Self::Obj> {
        Err(Error::NotMonoidal(self.name().to_string()))
    }

    fn tensor(&self, _f: &Self::Arrow, _g: &Self::Arrow) -> Result<Self::Arrow> {
        Err(Error::NotMonoidal(self.name().to_string()))
    }

    fn symmetry(&self, _u: &Self::Obj, _v: &Self::Obj) -> Result<Self::Arrow> {
        Err(Error::NotMonoidal(self.name().to_string()))
    }

    /// Every arrow `u → v`, each exactly once.
    fn hom(&self, u: &Self::Obj, v: &Self::Obj) -> Result<Vec<Self::Arrow>> {
        Err(Error::HomNotFinite(format!("{}[{u}, {v}]", self.name())))
    }
}

/// A functor between base categories.
pub trait BaseFunctor {
    type Source: Base;
    type Target: Base;

    fn map_obj(&self, u: &<Self::Source as Base>::Obj) -> Result<<Self::Target as Base>::Obj>;

    fn map_arrow(
        &self,
        f: &<Self::Source as Base>::Arrow,
    ) -> Result<<Self::Target as Base>::Arrow>;
}

/// The identity functor on `B`.
#[derive(Debug, Clone, Copy, Default)]
pub struct IdentityFunctor<B>(PhantomData<B>);

impl<B> IdentityFunctor<B> {
    pub fn new() -> Self {
        IdentityFunctor(PhantomData)
    }
}

impl<B: Base> BaseFunctor for IdentityFunctor<B> {
    type Source = B;
    type Target = B;

    fn map_obj(&self, u: &B::Obj) -> Result<B::Obj> {
        Ok(u.clone())
    }

    fn map_arrow(&self, f: &B::Arrow) -> Result<B::Arrow> {
        Ok(f.clone())
    }
}

/// Composition in `C⁺`: the pushforward of `d1 × d2` along `;`.
pub fn plus_compose<B: Base>(
    base: &B,
    d1: &Subdist<B::Arrow>,
    d2: &Subdist<B::Arrow>,
) -> Result<Subdist<B::Arrow>> {
    d1.try_product(d2, |f, g| base.compose(f, g))
}

/// Monoidal product in `C⁺`: the pushforward of `d1 × d2` along `⊗`.
pub fn plus_tensor<B: Base>(
    base: &B,
    d1: &Subdist<B::Arrow>,
    d2: &Subdist<B::Arrow>,
) -> Result<Subdist<B::Arrow>> {
    d1.try_product(d2, |f, g| base.tensor(f, g))
}

/// An arrow of `C⁺[dom, cod]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlusHom<O: Ord, A: Ord> {
    dom: O,
    cod: O,
    dist: Subdist<A>,
}

impl<O: Clone + Ord + Display, A: Clone + Ord + Display> PlusHom<O, A> {
    /// Checks that every arrow in the support has type `dom → cod`.
    pub fn new<B>(base: &B, dom: O, cod: O, dist: Subdist<A>) -> Result<Self>
    where
        B: Base<Obj = O, Arrow = A>,
    {
        for f in dist.support() {
            if base.dom(f) != dom || base.cod(f) != cod {
                return Err(Error::mismatch(format!(
                    "arrow {f} does not have type {dom} → {cod}"
                )));
            }
        }
        Ok(PlusHom { dom, cod, dist })
    }

    pub fn dirac<B>(base: &B, f: A) -> Self
    where
        B: Base<Obj = O, Arrow = A>,
    {
        PlusHom {
            dom: base.dom(&f),
            cod: base.cod(&f),
            dist: Subdist::dirac(f),
        }
    }

    pub fn null(dom: O, cod: O) -> Self {
        PlusHom {
            dom,
            cod,
            dist: Subdist::null(),
        }
    }

    pub fn dom(&self) -> &O {
        &self.dom
    }

    pub fn cod(&self) -> &O {
        &self.cod
    }

    pub fn dist(&self) -> &Subdist<A> {
        &self.dist
    }

    pub fn compose<B>(&self, base: &B, other: &Self) -> Result<Self>
    where
        B: Base<Obj = O, Arrow = A>,
    {
        if self.cod != other.dom {
            return Err(Error::mismatch(format!(
                "cannot compose {} → {} with {} → {}",
                self.dom, self.cod, other.dom, other.cod
            )));
        }
        Ok(PlusHom {
            dom: self.dom.clone(),
            cod: other.cod.clone(),
            dist: plus_compose(base, &self.dist, &other.dist)?,
        })
    }

    pub fn tensor<B>(&self, base: &B, other: &Self) -> Result<Self>
    where
        B: Base<Obj = O, Arrow = A>,
    {
        Ok(PlusHom {
            dom: base.tensor_obj(&self.dom, &other.dom)?,
            cod: base.tensor_obj(&self.cod, &other.cod)?,
            dist: plus_tensor(base, &self.dist, &other.dist)?,
        })
    }
}
