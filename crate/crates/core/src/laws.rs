//! Randomised law suites. Instances come from a seeded generator, so a
//! report is reproducible from the suite name, seed and iteration count.

use std::fmt;

use num_traits::One;
use rand::Rng;

use crate::base::boolean::{BoolFns, FnTable};
use crate::base::Base;
use crate::boolcirc::{
    boolean_vectors, control_contrast, encode, eval_pb, mux_axiom_check, semantic_equiv, tape_semantics, to_bool_tape,
};
use crate::error::{Error, Result};
use crate::prob::{Rational, Subdist};
use crate::random::{self, Rng64};
use crate::stmat::StochMatrix;
use crate::tape::{
    bang_poly, cobang_poly, codiag_poly, delta_l, delta_l_inv, diagp_poly, from_column, id_word, pairing, plus_all,
    plus_p, proj, read_column, sigma_plus, sigma_times, tensor_poly, tensor_t, Tape, TapeTerm,
};

/// Names accepted by [`run_suite`].
pub const SUITES: [&str; 4] = ["pca", "matrix", "rig", "bool"];

type Check = std::result::Result<(), String>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LawReport {
    pub law: &'static str,
    pub passed: usize,
    /// At most a handful of failure descriptions are kept.
    pub failures: Vec<String>,
    pub failed: usize,
}

impl LawReport {
    pub fn total(&self) -> usize {
        self.passed + self.failed
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub iters: usize,
    pub laws: Vec<LawReport>,
}

impl SuiteReport {
    pub fn ok(&self) -> bool {
        self.laws.iter().all(|l| l.failed == 0)
    }

    pub fn law(&self, name: &str) -> Option<&LawReport> {
        self.laws.iter().find(|l| l.law == name)
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "suite {} (seed {}, {} iterations)", self.suite, self.seed, self.iters)?;
        let width = self.laws.iter().map(|l| l.law.len()).max().unwrap_or(0);
        for l in &self.laws {
            let status = if l.failed == 0 { "ok" } else { "FAIL" };
            writeln!(f, "  {:<width$}  {}/{}  {status}", l.law, l.passed, l.total())?;
            if let Some(first) = l.failures.first() {
                for line in first.lines() {
                    writeln!(f, "      {line}")?;
                }
            }
        }
        write!(f, "{}", if self.ok() { "all laws hold" } else { "some laws fail" })
    }
}

struct Runner {
    rng: Rng64,
    laws: Vec<LawReport>,
}

impl Runner {
    fn new(seed: u64) -> Self {
        Runner {
            rng: random::rng(seed),
            laws: Vec::new(),
        }
    }

    fn check(&mut self, law: &'static str, f: impl FnOnce(&mut Rng64) -> Result<Check>) {
        let outcome = f(&mut self.rng).unwrap_or_else(|e| Err(format!("error: {e}")));
        let idx = match self.laws.iter().position(|l| l.law == law) {
            Some(i) => i,
            None => {
                self.laws.push(LawReport {
                    law,
                    passed: 0,
                    failures: Vec::new(),
                    failed: 0,
                });
                self.laws.len() - 1
            }
        };
        let rep = &mut self.laws[idx];
        match outcome {
            Ok(()) => rep.passed += 1,
            Err(msg) => {
                rep.failed += 1;
                if rep.failures.len() < 3 {
                    rep.failures.push(msg);
                }
            }
        }
    }

    fn finish(self, suite: &str, seed: u64, iters: usize) -> SuiteReport {
        SuiteReport {
            suite: suite.to_string(),
            seed,
            iters,
            laws: self.laws,
        }
    }
}

fn same<T: PartialEq + fmt::Debug>(lhs: &T, rhs: &T) -> Check {
    if lhs == rhs {
        Ok(())
    } else {
        Err(format!("left:  {lhs:?}\nright: {rhs:?}"))
    }
}

type BTape = Tape<BoolFns>;
type BMatrix = StochMatrix<usize, FnTable>;

/// Compares two tapes by their compiled matrices.
fn same_tapes(lhs: &BTape, rhs: &BTape) -> Result<Check> {
    let (l, r) = (lhs.compile(&BoolFns)?, rhs.compile(&BoolFns)?);
    Ok(if l == r {
        Ok(())
    } else {
        Err(format!("left tape {lhs}\n{l}right tape {rhs}\n{r}"))
    })
}

fn all_same(pairs: &[(BTape, BTape)]) -> Result<Check> {
    for (l, r) in pairs {
        if let Err(e) = same_tapes(l, r)? {
            return Ok(Err(e));
        }
    }
    Ok(Ok(()))
}

/// Skew-associativity, commutativity and idempotency of `+_p` on
/// subdistributions, plus cancellativity of scaling on matrices
/// (`iters / 2` instances).
pub fn pca_suite(seed: u64, iters: usize) -> SuiteReport {
    let mut run = Runner::new(seed);
    let keys: Vec<u32> = (0..6).collect();
    for _ in 0..iters {
        run.check("associativity", |rng| {
            let (x, y, z) = (random::subdist(rng, &keys, 4), random::subdist(rng, &keys, 4), random::subdist(rng, &keys, 4));
            let (p, q) = (random::open_prob(rng), random::open_prob(rng));
            let lhs = x.convex_sum(&y, &q)?.convex_sum(&z, &p)?;
            let pt = &p * &q;
            let qt = &p * (Rational::one() - &q) / (Rational::one() - &pt);
            let rhs = x.convex_sum(&y.convex_sum(&z, &qt)?, &pt)?;
            Ok(same(&lhs, &rhs))
        });
        run.check("commutativity", |rng| {
            let (x, y) = (random::subdist(rng, &keys, 4), random::subdist(rng, &keys, 4));
            let p = random::open_prob(rng);
            Ok(same(&x.convex_sum(&y, &p)?, &y.convex_sum(&x, &(Rational::one() - &p))?))
        });
        run.check("idempotency", |rng| {
            let x = random::subdist(rng, &keys, 4);
            let p = random::open_prob(rng);
            Ok(same(&x.convex_sum(&x, &p)?, &x))
        });
    }
    for _ in 0..iters / 2 {
        run.check("cancellativity", |rng| {
            let (dom, cod) = (random::poly(rng, 2, 1), random::poly(rng, 2, 1));
            let m = random::bool_matrix(rng, &dom, &cod);
            let n = if rng.gen_bool(0.5) {
                m.clone()
            } else {
                random::perturb(rng, &m).unwrap_or_else(|| m.clone())
            };
            let r = random::nonzero_prob(rng);
            let scaled_equal = m.scale(&r)? == n.scale(&r)?;
            Ok(if scaled_equal == (m == n) {
                Ok(())
            } else {
                Err(format!("r = {r}, scaled equal: {scaled_equal}\n{m}{n}"))
            })
        });
    }
    run.finish("pca", seed, iters)
}

fn generator_laws(run: &mut Runner) {
    // words with at most 3 monomials
    let setup = |rng: &mut Rng64| {
        let p = random::poly(rng, 3, 1);
        let q = random::poly(rng, 3, 1);
        (p, q, random::open_prob(rng), random::open_prob(rng))
    };
    let b = &BoolFns;
    run.check("generator tables", |rng| {
        let (p, q, r, _) = setup(rng);
        let checks = [
            (codiag_poly::<usize, FnTable>(&p).compile(b)?, StochMatrix::gen_codiag(b, &p)),
            (cobang_poly(&p).compile(b)?, StochMatrix::gen_cobang(&p)),
            (bang_poly(&p).compile(b)?, StochMatrix::gen_bang(&p)),
            (diagp_poly(&p, &r)?.compile(b)?, StochMatrix::gen_diagp(b, &p, &r)?),
            (sigma_plus(&p, &q).compile(b)?, StochMatrix::swap_plus(b, &p, &q)),
        ];
        Ok(checks.iter().try_for_each(|(l, r)| same(l, r)))
    });
    run.check("codiag associativity", |rng| {
        let (p, ..) = setup(rng);
        let id = id_word::<usize, FnTable>(&p);
        let lhs = TapeTerm::seq(TapeTerm::plus(codiag_poly(&p), id.clone()), codiag_poly(&p));
        let rhs = TapeTerm::seq(TapeTerm::plus(id.clone(), codiag_poly(&p)), codiag_poly(&p));
        same_tapes(&lhs, &rhs)
    });
    run.check("codiag unit", |rng| {
        let (p, ..) = setup(rng);
        let id = id_word::<usize, FnTable>(&p);
        all_same(&[
            (TapeTerm::seq(TapeTerm::plus(cobang_poly(&p), id.clone()), codiag_poly(&p)), id.clone()),
            (TapeTerm::seq(TapeTerm::plus(id.clone(), cobang_poly(&p)), codiag_poly(&p)), id),
        ])
    });
    run.check("codiag commutativity", |rng| {
        let (p, ..) = setup(rng);
        same_tapes(&TapeTerm::seq(sigma_plus(&p, &p), codiag_poly(&p)), &codiag_poly(&p))
    });
    run.check("codiag coherence", |rng| {
        let (p, q, ..) = setup(rng);
        let pq = [p.clone(), q.clone()].concat();
        let shuffle = plus_all([id_word(&p), sigma_plus(&q, &p), id_word(&q)]);
        all_same(&[
            (codiag_poly(&pq), TapeTerm::seq(shuffle, TapeTerm::plus(codiag_poly(&p), codiag_poly(&q)))),
            (cobang_poly(&pq), TapeTerm::plus(cobang_poly(&p), cobang_poly(&q))),
            (codiag_poly(&[]), TapeTerm::Id0),
        ])
    });
    run.check("codiag naturality", |rng| {
        let (p, q, ..) = setup(rng);
        let t = random::bool_tape(rng, &p, &q, 2, 2, 1);
        all_same(&[
            (
                TapeTerm::seq(TapeTerm::plus(t.clone(), t.clone()), codiag_poly(&q)),
                TapeTerm::seq(codiag_poly(&p), t.clone()),
            ),
            (TapeTerm::seq(cobang_poly(&p), t), cobang_poly(&q)),
        ])
    });
    run.check("diagp associativity", |rng| {
        let (p, _, x, y) = setup(rng);
        let id = id_word::<usize, FnTable>(&p);
        let xt = &x * &y;
        let yt = &x * (Rational::one() - &y) / (Rational::one() - &xt);
        let lhs = TapeTerm::seq(diagp_poly(&p, &x)?, TapeTerm::plus(diagp_poly(&p, &y)?, id.clone()));
        let rhs = TapeTerm::seq(diagp_poly(&p, &xt)?, TapeTerm::plus(id, diagp_poly(&p, &yt)?));
        same_tapes(&lhs, &rhs)
    });
    run.check("diagp idempotency", |rng| {
        let (p, _, x, _) = setup(rng);
        same_tapes(&TapeTerm::seq(diagp_poly(&p, &x)?, codiag_poly(&p)), &id_word(&p))
    });
    run.check("diagp commutativity", |rng| {
        let (p, _, x, _) = setup(rng);
        let lhs: BTape = TapeTerm::seq(diagp_poly(&p, &x)?, sigma_plus(&p, &p));
        same_tapes(&lhs, &diagp_poly(&p, &(Rational::one() - &x))?)
    });
    run.check("diagp coherence", |rng| {
        let (p, q, x, _) = setup(rng);
        let pq = [p.clone(), q.clone()].concat();
        let shuffle = plus_all([id_word(&p), sigma_plus(&p, &q), id_word(&q)]);
        all_same(&[
            (
                diagp_poly(&pq, &x)?,
                TapeTerm::seq(TapeTerm::plus(diagp_poly(&p, &x)?, diagp_poly(&q, &x)?), shuffle),
            ),
            (bang_poly(&pq), TapeTerm::plus(bang_poly(&p), bang_poly(&q))),
            (diagp_poly(&[], &x)?, TapeTerm::Id0),
        ])
    });
    run.check("diagp naturality", |rng| {
        let (p, q, x, _) = setup(rng);
        let t = random::bool_tape(rng, &p, &q, 2, 2, 1);
        all_same(&[
            (
                TapeTerm::seq(t.clone(), diagp_poly(&q, &x)?),
                TapeTerm::seq(diagp_poly(&p, &x)?, TapeTerm::plus(t.clone(), t.clone())),
            ),
            (TapeTerm::seq(t, bang_poly(&q)), bang_poly(&p)),
        ])
    });
}

/// Monoid and co-pca tables for the merge, init, split and kill
/// generators, checked as matrix equalities.
pub fn generator_suite(seed: u64, iters: usize) -> SuiteReport {
    let mut run = Runner::new(seed);
    for _ in 0..iters {
        generator_laws(&mut run);
    }
    run.finish("generators", seed, iters)
}

fn nonempty_poly(rng: &mut Rng64) -> Vec<usize> {
    let mut p = random::poly(rng, 2, 1);
    if p.is_empty() {
        p.push(rng.gen_range(0..=1));
    }
    p
}

fn convex_product_law(run: &mut Runner) {
    run.check("convex product", |rng| {
        let u = rng.gen_range(0..=1);
        let qs = vec![nonempty_poly(rng), nonempty_poly(rng)];
        let ts: Vec<BTape> = qs.iter().map(|q| random::bool_tape(rng, &[u], q, 2, 2, 1)).collect();
        let p = random::prob(rng);
        let q = random::prob(rng) * (Rational::one() - &p);
        let probs = [p, q];
        let h = pairing(&[u], &ts, &probs)?;
        let hm = h.compile(&BoolFns)?;
        let projections = (0..2)
            .map(|i| proj::<usize, FnTable>(&qs, i)?.compile(&BoolFns))
            .collect::<Result<Vec<BMatrix>>>()?;
        for i in 0..2 {
            let lhs = hm.compose(&BoolFns, &projections[i])?;
            let rhs = ts[i].compile(&BoolFns)?.scale(&probs[i])?;
            if lhs != rhs {
                return Ok(Err(format!("projection {i} of {h}\n{lhs}expected\n{rhs}")));
            }
        }
        let Some(other) = random::perturb(rng, &hm) else {
            return Ok(Err("pairing has no cells to perturb".into()));
        };
        for (i, pi) in projections.iter().enumerate() {
            if other.compose(&BoolFns, pi)? != ts[i].compile(&BoolFns)?.scale(&probs[i])? {
                return Ok(Ok(()));
            }
        }
        Ok(Err(format!("perturbed pairing still satisfies both projections\n{other}")))
    });
}

/// Pairings `⟨t₁,t₂⟩_{p,q}` project to `pᵢ·tᵢ`, and no other matrix does.
pub fn convex_product_suite(seed: u64, iters: usize) -> SuiteReport {
    let mut run = Runner::new(seed);
    for _ in 0..iters {
        convex_product_law(&mut run);
    }
    run.finish("convex-product", seed, iters)
}

fn column_laws(run: &mut Runner) {
    run.check("column round trip", |rng| {
        let hom = BoolFns.hom(&1, &2)?;
        let d = random::subdist(rng, &hom, 5);
        let t = from_column(&BoolFns, &1, &[2], std::slice::from_ref(&d))?;
        let back = read_column(&t.compile(&BoolFns)?, 0)?;
        Ok(same(&back, &vec![d]))
    });
    run.check("column injectivity", |rng| {
        let m = rng.gen_range(0..=2);
        let hom = BoolFns.hom(&0, &m)?;
        let d1 = random::subdist(rng, &hom, 3);
        let d2 = if rng.gen_bool(0.3) { d1.clone() } else { random::subdist(rng, &hom, 3) };
        let k = |d: &Subdist<FnTable>| -> Result<_> {
            tape_semantics(&from_column(&BoolFns, &0, &[m], std::slice::from_ref(d))?)
        };
        let same_maps = k(&d1)? == k(&d2)?;
        Ok(if same_maps == (d1 == d2) {
            Ok(())
        } else {
            Err(format!("columns {d1:?} and {d2:?} give equal maps: {same_maps}"))
        })
    });
}

/// `from_column` followed by compilation reads back the column, and
/// distinct columns `1 → Aᵐ` have distinct semantics.
pub fn column_suite(seed: u64, iters: usize) -> SuiteReport {
    let mut run = Runner::new(seed);
    for _ in 0..iters {
        column_laws(&mut run);
    }
    run.finish("columns", seed, iters)
}

/// Generator tables, the convex product and column read-off.
pub fn matrix_suite(seed: u64, iters: usize) -> SuiteReport {
    let mut run = Runner::new(seed);
    for _ in 0..iters {
        generator_laws(&mut run);
        convex_product_law(&mut run);
        column_laws(&mut run);
    }
    run.finish("matrix", seed, iters)
}

fn tensor_law(run: &mut Runner, depth: usize) {
    run.check("tensor compiles to Kronecker product", |rng| {
        let (p, q, r, s) = (
            random::poly(rng, 3, 1),
            random::poly(rng, 3, 1),
            random::poly(rng, 3, 1),
            random::poly(rng, 3, 1),
        );
        let t1 = random::bool_tape(rng, &p, &q, depth, 2, 1);
        let t2 = random::bool_tape(rng, &r, &s, depth, 2, 1);
        let lhs = tensor_t(&BoolFns, &t1, &t2)?.compile(&BoolFns)?;
        let rhs = t1.compile(&BoolFns)?.tensor(&BoolFns, &t2.compile(&BoolFns)?)?;
        Ok(if lhs == rhs {
            Ok(())
        } else {
            Err(format!("t1 = {t1}\nt2 = {t2}\ntape:\n{lhs}matrices:\n{rhs}"))
        })
    });
}

/// `compile(t₁ ⊗ t₂) = compile(t₁) ⊗ compile(t₂)` on random tapes of
/// depth at most 4, plus the structural isomorphisms of the rig.
pub fn rig_suite(seed: u64, iters: usize) -> SuiteReport {
    let mut run = Runner::new(seed);
    let b = &BoolFns;
    for _ in 0..iters {
        tensor_law(&mut run, 4);
        run.check("distributor inverse", |rng| {
            let (p, q, r) = (random::poly(rng, 3, 2), random::poly(rng, 2, 2), random::poly(rng, 2, 2));
            let qr = [q.clone(), r.clone()].concat();
            let round = TapeTerm::seq(delta_l(b, &p, &q, &r)?, delta_l_inv(b, &p, &q, &r)?);
            same_tapes(&round, &id_word(&tensor_poly(b, &p, &qr)?))
        });
        run.check("symmetry involution", |rng| {
            let (p, q) = (random::poly(rng, 3, 2), random::poly(rng, 3, 2));
            let round = TapeTerm::seq(sigma_times(b, &p, &q)?, sigma_times(b, &q, &p)?);
            same_tapes(&round, &id_word(&tensor_poly(b, &p, &q)?))
        });
        run.check("tensor unit", |rng| {
            let (p, q) = (random::poly(rng, 2, 1), random::poly(rng, 2, 1));
            let t = random::bool_tape(rng, &p, &q, 2, 2, 1);
            all_same(&[
                (tensor_t(b, &TapeTerm::Id(0), &t)?, t.clone()),
                (tensor_t(b, &t, &TapeTerm::Id(0))?, t),
            ])
        });
    }
    run.finish("rig", seed, iters)
}

/// [`rig_suite`]'s Kronecker law alone.
pub fn tensor_suite(seed: u64, iters: usize) -> SuiteReport {
    let mut run = Runner::new(seed);
    for _ in 0..iters {
        tensor_law(&mut run, 4);
    }
    run.finish("tensor", seed, iters)
}

fn encoding_law(run: &mut Runner) {
    run.check("encoding preserves semantics", |rng| {
        let n = rng.gen_range(0..=3);
        let (c, _) = random::pb_circuit(rng, n, 10);
        let lhs = tape_semantics(&to_bool_tape(&encode(&c)?)?)?;
        let rhs = eval_pb(&c)?;
        Ok(if lhs == rhs {
            Ok(())
        } else {
            Err(format!("circuit {c}\ntape:\n{lhs}circuit:\n{rhs}"))
        })
    });
}

/// A tape with the same semantics as `s`, built from an identity.
fn rewrite(rng: &mut Rng64, s: &BTape, dom: usize, cod: &[usize]) -> Result<BTape> {
    let p = random::open_prob(rng);
    Ok(match rng.gen_range(0..3) {
        0 => plus_p(&BoolFns, s, s, &p)?,
        1 => TapeTerm::seq(TapeTerm::seq(TapeTerm::DiagP(dom, p), TapeTerm::Codiag(dom)), s.clone()),
        _ => TapeTerm::seq(s.clone(), id_word(cod)),
    })
}

fn vectors_law(run: &mut Runner) {
    run.check("boolean vectors decide equality", |rng| {
        let n = rng.gen_range(0..=3);
        let cod = random::poly(rng, 2, 2);
        let s = random::bool_tape(rng, &[n], &cod, 2, 2, 1);
        let t = match rng.gen_range(0..4) {
            0 | 1 => rewrite(rng, &s, n, &cod)?,
            2 => random::bool_tape(rng, &[n], &cod, 2, 2, 1),
            _ => {
                let r = random::bool_tape(rng, &[n], &cod, 1, 2, 1);
                plus_p(&BoolFns, &s, &r, &random::open_prob(rng))?
            }
        };
        let full = semantic_equiv(&s, &t)?.is_equivalent();
        let mut pointwise = true;
        for v in boolean_vectors(n) {
            let l = TapeTerm::seq(v.clone(), s.clone());
            let r = TapeTerm::seq(v, t.clone());
            pointwise &= semantic_equiv(&l, &r)?.is_equivalent();
        }
        Ok(if full == pointwise {
            Ok(())
        } else {
            Err(format!("s = {s}\nt = {t}\nfull: {full}, on vectors: {pointwise}"))
        })
    });
}

fn mux_law(run: &mut Runner) {
    run.check("multiplexer law on total tapes", |rng| {
        let (n, m) = (rng.gen_range(0..=2), rng.gen_range(0..=2));
        let t = random::total_tape(rng, n + 1, m, 3);
        Ok(if mux_axiom_check(&t)? {
            Ok(())
        } else {
            Err(format!("fails on {t}"))
        })
    });
}

fn contrast_law(run: &mut Runner) {
    run.check("failing multiplexer versus tape choice", |rng| {
        let (n, m) = (rng.gen_range(0..=2), rng.gen_range(1..=2));
        let c = random::fn_table(rng, n, m);
        let p = random::open_prob(rng);
        let (circuit, choice) = control_contrast(&c, &p)?;
        if !tape_semantics(&circuit)?.is_null() {
            return Ok(Err(format!("circuit for {c:?} does not always fail")));
        }
        let mt = choice.compile(&BoolFns)?;
        let expected = Subdist::from_weights([(c.clone(), p.clone())])?;
        Ok(if mt.entry(0, 0) == &expected && mt.entry(1, 0).is_null() {
            Ok(())
        } else {
            Err(format!("choice with p = {p} gives\n{mt}"))
        })
    });
}

/// Single-law suites used by the acceptance gate.
pub fn encoding_suite(seed: u64, iters: usize) -> SuiteReport {
    single(seed, iters, "encoding", encoding_law)
}

pub fn vectors_suite(seed: u64, iters: usize) -> SuiteReport {
    single(seed, iters, "vectors", vectors_law)
}

pub fn mux_suite(seed: u64, iters: usize) -> SuiteReport {
    single(seed, iters, "mux", mux_law)
}

pub fn contrast_suite(seed: u64, iters: usize) -> SuiteReport {
    single(seed, iters, "contrast", contrast_law)
}

fn single(seed: u64, iters: usize, name: &str, law: fn(&mut Runner)) -> SuiteReport {
    let mut run = Runner::new(seed);
    for _ in 0..iters {
        law(&mut run);
    }
    run.finish(name, seed, iters)
}

/// Encoding, Boolean vectors, the multiplexer law and the control-flow
/// contrast on probabilistic Boolean circuits.
pub fn bool_suite(seed: u64, iters: usize) -> SuiteReport {
    let mut run = Runner::new(seed);
    for _ in 0..iters {
        encoding_law(&mut run);
        vectors_law(&mut run);
        mux_law(&mut run);
        contrast_law(&mut run);
    }
    run.finish("bool", seed, iters)
}

pub fn run_suite(name: &str, seed: u64, iters: usize) -> Result<SuiteReport> {
    Ok(match name {
        "pca" => pca_suite(seed, iters),
        "matrix" => matrix_suite(seed, iters),
        "rig" => rig_suite(seed, iters),
        "bool" => bool_suite(seed, iters),
        _ => {
            return Err(Error::Invalid(format!(
                "unknown suite `{name}`; expected one of {}",
                SUITES.join(", ")
            )))
        }
    })
}
