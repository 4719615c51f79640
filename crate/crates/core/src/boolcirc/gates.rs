//! Derived gates over the deterministic Boolean signature.

use super::b_signature;
use crate::base::diagram::{Circuit, SortWord};

const A: char = 'A';

fn wires(n: usize) -> SortWord {
    SortWord::power(A, n)
}

fn g(name: &str) -> Circuit {
    b_signature().gen(name).expect("generator of the Boolean signature")
}

fn then(a: Circuit, b: Circuit) -> Circuit {
    a.seq(&b).expect("gate wiring is well typed")
}

/// `OR = (NOT ⊗ NOT) ; AND ; NOT`.
pub fn or_gate() -> Circuit {
    then(then(g("not").par(&g("not")), g("and")), g("not"))
}

/// `Flip₀ = Flip₁ ; NOT`.
pub fn flip0() -> Circuit {
    then(g("flip1"), g("not"))
}

/// `mux : AAA → A` sends `(x, y, z)` to `y` if `x = 1` and to `z` otherwise,
/// wired as `(x ∧ y) ∨ (¬x ∧ z)`.
pub fn mux() -> Circuit {
    let id = Circuit::id(&wires(1));
    let copy_sel = g("copy").par(&id).par(&id);
    let route = id.par(&Circuit::sym(A, A)).par(&id);
    let branches = g("and").par(&then(g("not").par(&id), g("and")));
    then(then(then(copy_sel, route), branches), or_gate())
}

/// `mux_m : A^{2m+1} → A^m` on a selector followed by two `m`-wire buses.
/// `mux_0` discards the selector.
pub fn mux_m(m: usize) -> Circuit {
    if m == 0 {
        return g("discard");
    }
    // x x y₁ y' z₁ z'  ↦  x y₁ z₁ x y' z'
    let n = 2 * m + 2;
    let mut perm = vec![0, 2, m + 2, 1];
    perm.extend(3..m + 2);
    perm.extend(m + 3..n);
    let route = Circuit::permutation(&wires(n), &perm).expect("valid permutation");
    let copy_sel = g("copy").par(&Circuit::id(&wires(2 * m)));
    then(then(copy_sel, route), mux().par(&mux_m(m - 1)))
}

/// `A^n → A^{2n}`, `x⃗ ↦ (x⃗, x⃗)`.
pub fn ncopier(n: usize) -> Circuit {
    let copies = (0..n).fold(Circuit::id(&wires(0)), |acc, _| acc.par(&g("copy")));
    let perm: Vec<usize> = (0..n).map(|j| 2 * j).chain((0..n).map(|j| 2 * j + 1)).collect();
    then(copies, Circuit::permutation(&wires(2 * n), &perm).expect("valid permutation"))
}

#[cfg(test)]
mod tests {
    use super::super::{b_interpretation, b_signature};
    use super::*;
    use crate::base::diagram::eval_circuit;
    use crate::base::boolean::FnTable;

    fn table(c: &Circuit) -> FnTable {
        eval_circuit(&b_signature(), &b_interpretation(), c.term()).unwrap()
    }

    #[test]
    fn or_truth_table() {
        let t = table(&or_gate());
        for x in 0..4 {
            assert_eq!(t.apply(x), ((x & 1) | (x >> 1)) & 1);
        }
        assert_eq!(table(&flip0()), FnTable::constant(1, 0));
    }

    #[test]
    fn multiplexer() {
        let t = table(&mux());
        for v in 0..8u64 {
            let (x, y, z) = (v & 1, (v >> 1) & 1, v >> 2);
            assert_eq!(t.apply(v), if x == 1 { y } else { z });
        }
        assert_eq!(table(&mux_m(0)), FnTable::from_fn(1, 0, |_| 0));
        assert_eq!(table(&mux_m(1)), t);
        for m in 2..4 {
            let t = table(&mux_m(m));
            let mask = (1u64 << m) - 1;
            for v in 0..1u64 << (2 * m + 1) {
                let (x, y, z) = (v & 1, (v >> 1) & mask, v >> (m + 1));
                assert_eq!(t.apply(v), if x == 1 { y } else { z });
            }
        }
    }

    #[test]
    fn copier() {
        for n in 0..4 {
            let t = table(&ncopier(n));
            for x in 0..1u64 << n {
                assert_eq!(t.apply(x), x | (x << n));
            }
        }
    }
}
