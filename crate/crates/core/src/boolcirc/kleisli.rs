//! Arrows of the Kleisli category of the subdistribution monad, restricted
//! to finite sums of Boolean cubes `⊕ᵢ 2^{nᵢ}`.

use std::collections::BTreeMap;
use std::fmt;

use crate::base::boolean::{bits_to_string, parse_bits};
use crate::error::{Error, Result};
use crate::prob::{to_f64, Subdist};

/// An element of `⊕ᵢ 2^{nᵢ}`: a summand index and the packed bits.
pub type Elem = (usize, u64);

/// All elements of `⊕ᵢ 2^{nᵢ}`, summand-major.
pub fn elements(widths: &[usize]) -> impl Iterator<Item = Elem> + '_ {
    widths
        .iter()
        .enumerate()
        .flat_map(|(i, &n)| (0..1u64 << n).map(move |x| (i, x)))
}

/// A map `X → D≤(Y)` between finite sums of Boolean cubes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KleisliMap {
    dom: Vec<usize>,
    cod: Vec<usize>,
    table: BTreeMap<Elem, Subdist<Elem>>,
}

impl KleisliMap {
    /// Checks that every input has an image and every image lies in `cod`.
    pub fn new(dom: Vec<usize>, cod: Vec<usize>, table: BTreeMap<Elem, Subdist<Elem>>) -> Result<Self> {
        for x in elements(&dom) {
            if !table.contains_key(&x) {
                return Err(Error::Invalid(format!("no image for input {x:?}")));
            }
        }
        if table.len() != elements(&dom).count() {
            return Err(Error::Invalid("inputs outside the domain".into()));
        }
        for d in table.values() {
            for &(j, y) in d.support() {
                if j >= cod.len() || (cod[j] < 64 && y >> cod[j] != 0) {
                    return Err(Error::Invalid(format!("output {:?} outside the codomain", (j, y))));
                }
            }
        }
        Ok(KleisliMap { dom, cod, table })
    }

    pub fn from_fn(dom: Vec<usize>, cod: Vec<usize>, f: impl Fn(Elem) -> Subdist<Elem>) -> Result<Self> {
        let table = elements(&dom).map(|x| (x, f(x))).collect();
        Self::new(dom, cod, table)
    }

    pub fn identity(dom: Vec<usize>) -> Self {
        let table = elements(&dom).map(|x| (x, Subdist::dirac(x))).collect();
        KleisliMap {
            cod: dom.clone(),
            dom,
            table,
        }
    }

    pub fn dom(&self) -> &[usize] {
        &self.dom
    }

    pub fn cod(&self) -> &[usize] {
        &self.cod
    }

    pub fn apply(&self, x: Elem) -> &Subdist<Elem> {
        &self.table[&x]
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Elem, &Subdist<Elem>)> {
        self.table.iter()
    }

    /// True when every input is sent to a Dirac distribution.
    pub fn is_deterministic(&self) -> bool {
        self.table.values().all(|d| d.as_dirac().is_some())
    }

    /// True when every input is sent to the null subdistribution.
    pub fn is_null(&self) -> bool {
        self.table.values().all(Subdist::is_null)
    }

    /// `f ; g (z|x) = Σ_y f(y|x)·g(z|y)`.
    pub fn compose(&self, g: &KleisliMap) -> Result<KleisliMap> {
        if self.cod != g.dom {
            return Err(Error::mismatch(format!(
                "cannot compose {:?} → {:?} with {:?} → {:?}",
                self.dom, self.cod, g.dom, g.cod
            )));
        }
        let mut table = BTreeMap::new();
        for (x, d) in &self.table {
            let mut out = Subdist::null();
            for (y, w) in d.iter() {
                out.accumulate(&g.apply(*y).scale_unchecked(w));
            }
            table.insert(*x, out);
        }
        Ok(KleisliMap {
            dom: self.dom.clone(),
            cod: g.cod.clone(),
            table,
        })
    }

    /// `f ⊗ g (y,y'|x,x') = f(y|x)·g(y'|x')`. Summands of the product are
    /// ordered left-major and `f` takes the low bits.
    pub fn tensor(&self, g: &KleisliMap) -> KleisliMap {
        let dom = product_widths(&self.dom, &g.dom);
        let cod = product_widths(&self.cod, &g.cod);
        let mut table = BTreeMap::new();
        for (&(i, x), d1) in &self.table {
            for (&(j, x2), d2) in &g.table {
                let input = (i * g.dom.len() + j, x | (x2 << self.dom[i]));
                let out = d1
                    .try_product::<_, _, std::convert::Infallible>(d2, |&(k, y), &(l, y2)| {
                        Ok((k * g.cod.len() + l, y | (y2 << self.cod[k])))
                    })
                    .expect("infallible");
                table.insert(input, out);
            }
        }
        KleisliMap { dom, cod, table }
    }

    /// `f ⊕ g`: left inputs go through `f`, right inputs through `g`.
    pub fn oplus(&self, g: &KleisliMap) -> KleisliMap {
        let (dl, cl) = (self.dom.len(), self.cod.len());
        let mut table = self.table.clone();
        for (&(i, x), d) in &g.table {
            table.insert((i + dl, x), d.map(|&(j, y)| (j + cl, y)));
        }
        KleisliMap {
            dom: [self.dom.as_slice(), g.dom.as_slice()].concat(),
            cod: [self.cod.as_slice(), g.cod.as_slice()].concat(),
            table,
        }
    }

    /// Renders an element of the domain (`cod = false`) or codomain.
    pub fn format_elem(&self, e: &Elem, cod: bool) -> String {
        let widths = if cod { &self.cod } else { &self.dom };
        let bits = if widths[e.0] == 0 {
            "•".to_string()
        } else {
            bits_to_string(e.1, widths[e.0])
        };
        if widths.len() == 1 {
            bits
        } else {
            format!("{}:{}", e.0, bits)
        }
    }

    pub fn format_dist(&self, d: &Subdist<Elem>) -> String {
        self.render_dist(d, false)
    }

    /// With `decimal`, each weight is followed by an approximation.
    pub fn render_dist(&self, d: &Subdist<Elem>, decimal: bool) -> String {
        if d.is_null() {
            return "⋆".to_string();
        }
        // highest outcome first, so `flip p` reads `{1: p, 0: 1-p}`
        let parts: Vec<String> = d
            .iter()
            .rev()
            .map(|(y, w)| {
                let y = self.format_elem(y, true);
                if decimal {
                    format!("{y}: {w} (≈{:.4})", to_f64(w))
                } else {
                    format!("{y}: {w}")
                }
            })
            .collect();
        format!("{{{}}}", parts.join(", "))
    }

    pub fn render(&self, decimal: bool) -> String {
        self.table
            .iter()
            .map(|(x, d)| format!("{} ↦ {}\n", self.format_elem(x, false), self.render_dist(d, decimal)))
            .collect()
    }

    /// Reads an input written as `bits`, `i:bits` or `•`, bits top wire first.
    pub fn parse_input(&self, s: &str) -> Result<Elem> {
        let (i, bits) = match s.split_once(':') {
            Some((i, bits)) => (
                i.trim().parse::<usize>().map_err(|_| Error::Invalid(format!("bad summand index in `{s}`")))?,
                bits,
            ),
            None => (0, s),
        };
        let Some(&width) = self.dom.get(i) else {
            return Err(Error::IndexOutOfRange { index: i, len: self.dom.len() });
        };
        let bits = bits.trim();
        let (x, w) = if bits == "•" { (0, 0) } else { parse_bits(bits)? };
        if w != width {
            return Err(Error::Invalid(format!("input `{s}` has {w} bits, summand {i} needs {width}")));
        }
        Ok((i, x))
    }
}

pub fn product_widths(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter()
        .flat_map(|n| b.iter().map(move |m| n + m))
        .collect()
}

impl fmt::Display for KleisliMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(false))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prob::rat;

    fn det(dom: Vec<usize>, cod: Vec<usize>, f: impl Fn(Elem) -> Elem) -> KleisliMap {
        KleisliMap::from_fn(dom, cod, |x| Subdist::dirac(f(x))).unwrap()
    }

    fn not() -> KleisliMap {
        det(vec![1], vec![1], |(_, x)| (0, x ^ 1))
    }

    #[test]
    fn identity_laws() {
        let f = KleisliMap::from_fn(vec![1], vec![2], |(_, x)| {
            Subdist::from_weights([((0, x), rat(1, 2)), ((0, 3), rat(1, 3))]).unwrap()
        })
        .unwrap();
        assert_eq!(KleisliMap::identity(vec![1]).compose(&f).unwrap(), f);
        assert_eq!(f.compose(&KleisliMap::identity(vec![2])).unwrap(), f);
        assert!(f.compose(&f).is_err());
    }

    #[test]
    fn tensor_of_deterministic_is_pairing() {
        let and = det(vec![2], vec![1], |(_, x)| (0, (x & 1) & (x >> 1)));
        let t = not().tensor(&and);
        assert_eq!(t.dom(), &[3]);
        for x in 0..8u64 {
            let expected = ((x & 1) ^ 1) | ((((x >> 1) & 1) & (x >> 2)) << 1);
            assert_eq!(t.apply((0, x)).as_dirac(), Some(&(0, expected)));
        }
    }

    #[test]
    fn oplus_keeps_summands_apart() {
        let zero = KleisliMap::from_fn(vec![1], vec![1], |_| Subdist::null()).unwrap();
        let s = not().oplus(&zero);
        assert_eq!(s.apply((0, 1)).as_dirac(), Some(&(0, 0)));
        assert!(s.apply((1, 1)).is_null());
        let s = zero.oplus(&not());
        assert!(s.apply((0, 0)).is_null());
        assert_eq!(s.apply((1, 0)).as_dirac(), Some(&(1, 1)));
    }

    #[test]
    fn validation() {
        let mut table = BTreeMap::new();
        table.insert((0, 0), Subdist::dirac((0, 0)));
        assert!(KleisliMap::new(vec![1], vec![1], table.clone()).is_err());
        table.insert((0, 1), Subdist::dirac((0, 2)));
        assert!(KleisliMap::new(vec![1], vec![1], table).is_err());
    }

    #[test]
    fn rendering() {
        let f = KleisliMap::from_fn(vec![0], vec![1], |_| {
            Subdist::from_weights([((0, 1), rat(1, 3)), ((0, 0), rat(2, 3))]).unwrap()
        })
        .unwrap();
        assert_eq!(f.to_string(), "• ↦ {1: 1/3, 0: 2/3}\n");
        assert_eq!(f.render(true), "• ↦ {1: 1/3 (≈0.3333), 0: 2/3 (≈0.6667)}\n");
        assert_eq!(f.parse_input("•"), Ok((0, 0)));
        assert_eq!(f.parse_input(""), Ok((0, 0)));
        assert!(f.parse_input("1").is_err());
        let g = KleisliMap::identity(vec![1, 2]);
        assert_eq!(g.parse_input("1:01"), Ok((1, 2)));
        assert!(g.parse_input("01").is_err());
        assert!(g.parse_input("2:0").is_err());
    }
}
