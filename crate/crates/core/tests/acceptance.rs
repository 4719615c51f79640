//! Acceptance gate: one PASS/FAIL line per criterion. Runs without the
//! libtest harness so the lines always reach the output.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_traits::One;
use tapecalc::base::free_monoid::{FreeMonoid, Point, Word};
use tapecalc::boolcirc::{and_p_or, flip_tape, tape_semantics, to_bool_tape, Elem};
use tapecalc::laws::{self, SuiteReport};
use tapecalc::prob::{rat, Rational, Subdist};
use tapecalc::stmat::StochMatrix;

type Outcome = Result<String, String>;

fn cell(pairs: &[(&str, Rational)]) -> Subdist<Word> {
    Subdist::from_weights(pairs.iter().map(|(w, p)| (Word::new(*w), p.clone()))).unwrap()
}

fn fm(rows: Vec<Vec<Subdist<Word>>>, dom: usize) -> StochMatrix<Point, Word> {
    let cod = rows.len();
    StochMatrix::new(&FreeMonoid, vec![Point; dom], vec![Point; cod], rows).unwrap()
}

fn worked_example() -> Outcome {
    let m = fm(
        vec![
            vec![cell(&[("a", rat(1, 2))]), cell(&[("c", rat(1, 1))])],
            vec![cell(&[("ab", rat(1, 2))]), cell(&[])],
        ],
        2,
    );
    let n = fm(
        vec![
            vec![cell(&[("a", rat(1, 2))]), cell(&[("c", rat(1, 2))])],
            vec![cell(&[("ab", rat(1, 3))]), cell(&[])],
            vec![cell(&[]), cell(&[("", rat(1, 3))])],
        ],
        2,
    );
    let start = Instant::now();
    let mn = m.compose(&FreeMonoid, &n).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let expected = fm(
        vec![
            vec![cell(&[("aa", rat(1, 4)), ("abc", rat(1, 4))]), cell(&[("ca", rat(1, 2))])],
            vec![cell(&[("aab", rat(1, 6))]), cell(&[("cab", rat(1, 3))])],
            vec![cell(&[("ab", rat(1, 6))]), cell(&[])],
        ],
        2,
    );
    if mn != expected {
        return Err(format!("got\n{mn}"));
    }
    if elapsed >= Duration::from_millis(1) {
        return Err(format!("composition took {elapsed:?}"));
    }
    Ok(format!("exact match in {elapsed:?}"))
}

fn dist(pairs: impl IntoIterator<Item = (u64, Rational)>) -> Subdist<Elem> {
    // merge repeated outcomes by hand
    let mut acc: BTreeMap<Elem, Rational> = BTreeMap::new();
    for (x, p) in pairs {
        *acc.entry((0, x)).or_insert_with(|| rat(0, 1)) += p;
    }
    Subdist::from_weights(acc).unwrap()
}

fn flip_semantics() -> Outcome {
    for p in [rat(1, 2), rat(1, 3), rat(7, 11)] {
        let t = to_bool_tape(&flip_tape(&p).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        let k = tape_semantics(&t).map_err(|e| e.to_string())?;
        let expected = dist([(1, p.clone()), (0, Rational::one() - &p)]);
        if k.apply((0, 0)) != &expected {
            return Err(format!("flip {p} gives\n{k}"));
        }
    }
    Ok("p ∈ {1/2, 1/3, 7/11}".into())
}

fn and_p_or_oracle() -> Outcome {
    let ps = [rat(1, 2), rat(1, 3), rat(3, 7), rat(9, 10)];
    for p in &ps {
        let t = to_bool_tape(&and_p_or(p).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        let k = tape_semantics(&t).map_err(|e| e.to_string())?;
        for x in 0..2u64 {
            for y in 0..2u64 {
                // x on the top wire, which is bit 0
                let input = x | (y << 1);
                let expected = dist([(x & y, p.clone()), (x | y, Rational::one() - p)]);
                if k.apply((0, input)) != &expected {
                    return Err(format!("p = {p}, (x, y) = ({x}, {y}) gives {:?}", k.apply((0, input))));
                }
            }
        }
    }
    Ok(format!("all 4 inputs for {} values of p", ps.len()))
}

fn suite(report: SuiteReport, expected: &[(&str, usize)]) -> Outcome {
    if !report.ok() {
        return Err(report.to_string());
    }
    let mut counts = Vec::new();
    for (law, n) in expected {
        let got = report.law(law).map_or(0, |l| l.total());
        if got != *n {
            return Err(format!("law `{law}` ran {got} times, wanted {n}"));
        }
        counts.push(format!("{law} {got}"));
    }
    Ok(counts.join(", "))
}

const GENERATOR_LAWS: [&str; 11] = [
    "generator tables",
    "codiag associativity",
    "codiag unit",
    "codiag commutativity",
    "codiag coherence",
    "codiag naturality",
    "diagp associativity",
    "diagp idempotency",
    "diagp commutativity",
    "diagp coherence",
    "diagp naturality",
];

fn main() -> ExitCode {
    let seed = 20240601;
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome>)> = vec![
        ("worked matrix example", Box::new(worked_example)),
        ("flip tape semantics", Box::new(flip_semantics)),
        ("ANDpOR against truth-table oracle", Box::new(and_p_or_oracle)),
        (
            "pca laws and cancellativity",
            Box::new(move || {
                suite(
                    laws::pca_suite(seed, 1000),
                    &[("associativity", 1000), ("commutativity", 1000), ("idempotency", 1000), ("cancellativity", 500)],
                )
            }),
        ),
        (
            "generator law tables",
            Box::new(move || {
                let expected: Vec<(&str, usize)> = GENERATOR_LAWS.iter().map(|l| (*l, 500)).collect();
                suite(laws::generator_suite(seed, 500), &expected).map(|_| "11 tables × 500 instances".into())
            }),
        ),
        (
            "tensor of tapes is the Kronecker product",
            Box::new(move || {
                let start = Instant::now();
                let out = suite(laws::tensor_suite(seed, 300), &[("tensor compiles to Kronecker product", 300)])?;
                let elapsed = start.elapsed();
                if elapsed >= Duration::from_secs(60) {
                    return Err(format!("took {elapsed:?}"));
                }
                Ok(format!("{out} in {:.1}s", elapsed.as_secs_f64()))
            }),
        ),
        (
            "convex product universal property",
            Box::new(move || suite(laws::convex_product_suite(seed, 300), &[("convex product", 300)])),
        ),
        (
            "encoding preserves semantics",
            Box::new(move || suite(laws::encoding_suite(seed, 200), &[("encoding preserves semantics", 200)])),
        ),
        (
            "boolean vectors decide equality",
            Box::new(move || suite(laws::vectors_suite(seed, 200), &[("boolean vectors decide equality", 200)])),
        ),
        (
            "multiplexer law",
            Box::new(move || suite(laws::mux_suite(seed, 100), &[("multiplexer law on total tapes", 100)])),
        ),
        (
            "failing multiplexer versus tape choice",
            Box::new(move || {
                suite(laws::contrast_suite(seed, 20), &[("failing multiplexer versus tape choice", 20)])
            }),
        ),
        (
            "column round trip",
            Box::new(move || suite(laws::column_suite(seed, 100), &[("column round trip", 100)])),
        ),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}", i + 1);
                for line in why.lines() {
                    println!("    {line}");
                }
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
