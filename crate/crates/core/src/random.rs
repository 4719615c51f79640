//! Seeded generators of random probabilities, subdistributions, matrices,
//! tapes and probabilistic circuits.

use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::base::boolean::{BoolFns, FnTable};
use crate::base::diagram::{Circuit, CircuitTerm, SortWord};
use crate::boolcirc::{flip_tape, to_bool_tape, FLIP};
use crate::prob::{rat, Rational, Subdist};
use crate::stmat::StochMatrix;
use crate::tape::{codiag_n, from_column, plus_all, plus_p, sigma_plus, tensor_t, Tape, TapeTerm};

pub use rand::SeedableRng;

pub type Rng64 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng64 {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A rational in `[0,1]` with denominator at most 12.
pub fn prob(rng: &mut Rng64) -> Rational {
    let den = rng.gen_range(1..=12i64);
    rat(rng.gen_range(0..=den), den)
}

/// A rational strictly between 0 and 1.
pub fn open_prob(rng: &mut Rng64) -> Rational {
    let den = rng.gen_range(2..=12i64);
    rat(rng.gen_range(1..den), den)
}

/// Splits `mass` into `n` non-negative rational weights.
pub fn weights(rng: &mut Rng64, n: usize, mass: &Rational) -> Vec<Rational> {
    let raw: Vec<i64> = (0..n).map(|_| rng.gen_range(1..=6)).collect();
    let total: i64 = raw.iter().sum();
    raw.iter().map(|&w| mass * rat(w, total)).collect()
}

/// A subdistribution over up to `max_support` keys drawn from `keys`.
pub fn subdist<K: Ord + Clone>(rng: &mut Rng64, keys: &[K], max_support: usize) -> Subdist<K> {
    if keys.is_empty() {
        return Subdist::null();
    }
    let n = rng.gen_range(0..=max_support);
    let chosen: Vec<K> = (0..n).map(|_| keys.choose(rng).unwrap().clone()).collect();
    let mass = prob(rng);
    let ws = weights(rng, n, &mass);
    Subdist::from_weights(chosen.into_iter().zip(ws)).expect("mass at most 1")
}

pub fn fn_table(rng: &mut Rng64, n: usize, m: usize) -> FnTable {
    let rows = (0..1u64 << n).map(|_| rng.gen_range(0..1u64 << m)).collect();
    FnTable::new(n, m, rows).expect("rows fit")
}

/// A word of `len` widths, each at most `max_width`.
pub fn poly(rng: &mut Rng64, max_len: usize, max_width: usize) -> Vec<usize> {
    let len = rng.gen_range(0..=max_len);
    (0..len).map(|_| rng.gen_range(0..=max_width)).collect()
}

/// A random column `u → v₁ ⊕ … ⊕ vₙ` with at most `max_arrows` arrows.
pub fn column(rng: &mut Rng64, u: usize, cod: &[usize], max_arrows: usize) -> Vec<Subdist<FnTable>> {
    let mut out = vec![Subdist::null(); cod.len()];
    if cod.is_empty() {
        return out;
    }
    let k = rng.gen_range(0..=max_arrows);
    let mass = prob(rng);
    for w in weights(rng, k, &mass) {
        let j = rng.gen_range(0..cod.len());
        let f = fn_table(rng, u, cod[j]);
        out[j] = out[j]
            .add(&Subdist::from_weights([(f, w)]).expect("weight at most 1"))
            .expect("column mass at most 1");
    }
    out
}

/// A random Boolean matrix `dom → cod`.
pub fn bool_matrix(rng: &mut Rng64, dom: &[usize], cod: &[usize]) -> StochMatrix<usize, FnTable> {
    let cols: Vec<Vec<Subdist<FnTable>>> = dom.iter().map(|&u| column(rng, u, cod, 3)).collect();
    let entries = (0..cod.len())
        .map(|j| cols.iter().map(|c| c[j].clone()).collect())
        .collect();
    StochMatrix::new(&BoolFns, dom.to_vec(), cod.to_vec(), entries).expect("random matrix is valid")
}

/// A tape realising a random matrix: one canonical column tape per
/// monomial of `dom`, merged into `cod`.
pub fn matrix_tape(rng: &mut Rng64, dom: &[usize], cod: &[usize]) -> Tape<BoolFns> {
    let cols = dom.iter().map(|&u| {
        let c = column(rng, u, cod, 2);
        from_column(&BoolFns, &u, cod, &c).expect("column is typed")
    });
    let cols: Vec<_> = cols.collect();
    let n = cols.len();
    TapeTerm::seq(plus_all(cols), codiag_n(cod, n))
}

fn base_tape(rng: &mut Rng64, dom: &[usize], cod: &[usize]) -> Tape<BoolFns> {
    let coin = rng.gen_bool(0.5);
    match (dom, cod) {
        ([], []) => TapeTerm::Id0,
        ([u], [v, w]) if u == v && v == w && coin => TapeTerm::DiagP(*u, open_prob(rng)),
        ([u, v], [w]) if u == v && v == w && coin => TapeTerm::Codiag(*u),
        ([u, v], [w, x]) if u == x && v == w && coin => TapeTerm::SigmaPlus(*u, *v),
        ([u], [v]) if u == v && coin => TapeTerm::Id(*u),
        ([], [v]) if coin => TapeTerm::Cobang(*v),
        ([u], []) if coin => TapeTerm::Bang(*u),
        ([u], [v]) => TapeTerm::Lift(fn_table(rng, *u, *v)),
        _ => matrix_tape(rng, dom, cod),
    }
}

/// A random tape of type `dom → cod` of depth at most `depth`. Middle
/// objects have at most `max_len` monomials of width at most `max_width`.
pub fn bool_tape(rng: &mut Rng64, dom: &[usize], cod: &[usize], depth: usize, max_len: usize, max_width: usize) -> Tape<BoolFns> {
    if depth == 0 {
        return base_tape(rng, dom, cod);
    }
    let d = depth - 1;
    match rng.gen_range(0..5) {
        0 => {
            let mid = poly(rng, max_len, max_width);
            TapeTerm::seq(
                bool_tape(rng, dom, &mid, d, max_len, max_width),
                bool_tape(rng, &mid, cod, d, max_len, max_width),
            )
        }
        1 if !dom.is_empty() || !cod.is_empty() => {
            let i = rng.gen_range(0..=dom.len());
            let j = rng.gen_range(0..=cod.len());
            TapeTerm::plus(
                bool_tape(rng, &dom[..i], &cod[..j], d, max_len, max_width),
                bool_tape(rng, &dom[i..], &cod[j..], d, max_len, max_width),
            )
        }
        2 => {
            let t = bool_tape(rng, dom, cod, d, max_len, max_width);
            let s = bool_tape(rng, dom, cod, d, max_len, max_width);
            plus_p(&BoolFns, &t, &s, &prob(rng)).expect("same type")
        }
        3 if dom.len() >= 2 => {
            let i = rng.gen_range(1..dom.len());
            let swapped = [&dom[i..], &dom[..i]].concat();
            TapeTerm::seq(
                sigma_plus(&dom[..i], &dom[i..]),
                bool_tape(rng, &swapped, cod, d, max_len, max_width),
            )
        }
        _ => base_tape(rng, dom, cod),
    }
}

/// A Boolean flip tape `1 → A` with bias `p`.
pub fn bool_flip(p: &Rational) -> Tape<BoolFns> {
    to_bool_tape(&flip_tape(p).expect("p in (0,1)")).expect("Boolean signature")
}

/// A random tape `u → v` whose every input has total mass 1.
pub fn total_tape(rng: &mut Rng64, u: usize, v: usize, depth: usize) -> Tape<BoolFns> {
    if depth == 0 {
        return TapeTerm::Lift(fn_table(rng, u, v));
    }
    let d = depth - 1;
    match rng.gen_range(0..4) {
        0 => {
            let w = rng.gen_range(0..=2);
            TapeTerm::seq(total_tape(rng, u, w, d), total_tape(rng, w, v, d))
        }
        1 => {
            let t = total_tape(rng, u, v, d);
            let s = total_tape(rng, u, v, d);
            plus_p(&BoolFns, &t, &s, &open_prob(rng)).expect("same type")
        }
        2 if u + v <= 3 => {
            let noise = tensor_t(&BoolFns, &TapeTerm::Id(u), &bool_flip(&open_prob(rng))).expect("monoidal");
            TapeTerm::seq(noise, total_tape(rng, u + 1, v, d))
        }
        _ => TapeTerm::Lift(fn_table(rng, u, v)),
    }
}

fn wires(k: usize) -> CircuitTerm {
    Circuit::id(&SortWord::power('A', k)).into_term()
}

fn layer(left: usize, g: CircuitTerm, right: usize) -> CircuitTerm {
    let mut t = g;
    if left > 0 {
        t = CircuitTerm::par(wires(left), t);
    }
    if right > 0 {
        t = CircuitTerm::par(t, wires(right));
    }
    t
}

/// Largest number of wires a random circuit carries at any point.
pub const MAX_CIRCUIT_WIDTH: usize = 4;

/// A random probabilistic circuit on `inputs` wires with at most `budget`
/// generators. Returns the term and its number of outputs.
pub fn pb_circuit(rng: &mut Rng64, inputs: usize, budget: usize) -> (CircuitTerm, usize) {
    if inputs >= 2 && budget >= 2 && rng.gen_bool(0.25) {
        let k = rng.gen_range(1..inputs);
        let b = rng.gen_range(1..budget);
        let (c1, o1) = pb_circuit(rng, k, b);
        let (c2, o2) = pb_circuit(rng, inputs - k, budget - b);
        if o1 + o2 <= MAX_CIRCUIT_WIDTH {
            return (CircuitTerm::par(c1, c2), o1 + o2);
        }
        // too wide side by side: drop the outputs of the second half
        let kill = (0..o2).fold(wires(0), |acc, _| CircuitTerm::par(acc, CircuitTerm::gen("discard")));
        return (CircuitTerm::par(c1, CircuitTerm::seq(c2, kill)), o1);
    }
    let mut term = wires(inputs);
    let mut w = inputs;
    let n = rng.gen_range(1..=budget.max(1));
    for _ in 0..n {
        let mut options: Vec<(CircuitTerm, usize, usize)> = Vec::new();
        if w >= 2 {
            options.push((CircuitTerm::gen("and"), 2, 1));
            options.push((CircuitTerm::Sym('A', 'A'), 2, 2));
        }
        if w >= 1 {
            options.push((CircuitTerm::gen("not"), 1, 1));
            options.push((CircuitTerm::gen("discard"), 1, 0));
        }
        if w < MAX_CIRCUIT_WIDTH {
            options.push((CircuitTerm::gen("flip1"), 0, 1));
            options.push((CircuitTerm::gen_p(FLIP, open_prob(rng)), 0, 1));
            options.push((CircuitTerm::gen_p(FLIP, open_prob(rng)), 0, 1));
            if w >= 1 {
                options.push((CircuitTerm::gen("copy"), 1, 2));
            }
        }
        let (g, ar, coar) = options.choose(rng).expect("some generator fits").clone();
        let k = rng.gen_range(0..=w - ar);
        term = CircuitTerm::seq(term, layer(k, g, w - k - ar));
        w = w - ar + coar;
    }
    (term, w)
}

/// A valid matrix of the same type that differs from `m` in one cell, or
/// `None` when `m` has no cells.
pub fn perturb(rng: &mut Rng64, m: &StochMatrix<usize, FnTable>) -> Option<StochMatrix<usize, FnTable>> {
    let mut cells: Vec<(usize, usize)> = (0..m.rows()).flat_map(|j| (0..m.cols()).map(move |i| (j, i))).collect();
    cells.shuffle(rng);
    for (j, i) in cells {
        let cell = m.entry(j, i);
        let (u, v) = (m.dom()[i], m.cod()[j]);
        let slack = Rational::one() - m.column_mass(i);
        let changed = if !cell.is_null() && (v == 0 || rng.gen_bool(0.5)) {
            cell.scale(&rat(1, 2)).ok()?
        } else if !cell.is_null() {
            // move the weight of one arrow onto another
            let (f, w) = cell.iter().next().map(|(f, w)| (f.clone(), w.clone()))?;
            let g = loop {
                let g = fn_table(rng, u, v);
                if g != f {
                    break g;
                }
            };
            let rest = Subdist::from_weights(cell.iter().filter(|(h, _)| **h != f).map(|(h, x)| (h.clone(), x.clone()))).ok()?;
            rest.add(&Subdist::from_weights([(g, w)]).ok()?).ok()?
        } else if !slack.is_zero() {
            cell.add(&Subdist::from_weights([(fn_table(rng, u, v), slack / Rational::from_integer(2.into()))]).ok()?).ok()?
        } else {
            continue;
        };
        let mut entries = m.entries().to_vec();
        entries[j][i] = changed;
        return StochMatrix::new(&BoolFns, m.dom().to_vec(), m.cod().to_vec(), entries).ok();
    }
    None
}

/// A word over `{a, b, c}` of length at most 2.
pub fn word(rng: &mut Rng64) -> crate::base::free_monoid::Word {
    let len = rng.gen_range(0..=2);
    crate::base::free_monoid::Word((0..len).map(|_| *b"abc".choose(rng).unwrap() as char).collect())
}

pub fn nonzero_prob(rng: &mut Rng64) -> Rational {
    loop {
        let p = prob(rng);
        if !p.is_zero() {
            return p;
        }
    }
}

/// True when `p ∈ (0,1)`.
pub fn is_open(p: &Rational) -> bool {
    !p.is_zero() && !p.is_one()
}
