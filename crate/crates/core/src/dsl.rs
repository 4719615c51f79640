//! Text syntax for circuits and tapes.
//!
//! ```text
//! circuit ::= id <word> | id1 | <gen> | <gen> <p> | sym <sort> <sort>
//!           | circuit ; circuit | circuit * circuit | ( circuit )
//! tape    ::= [ circuit ] | idT <word> | id0 | symT <word> <word>
//!           | merge <word> | init <word> | split <p> <word> | kill <word>
//!           | tape ; tape | tape + tape | ( tape )
//! ```
//!
//! `*` and `+` bind tighter than `;`; all three associate to the left.
//! Words are strings of uppercase sorts, with `1` for the empty word.
//! Printing goes through `Display`, which parenthesises every binary node,
//! so printed terms parse back to themselves.

use crate::base::diagram::{Circuit, CircuitTerm, Diagrams, Signature, SortWord};
use crate::error::{Error, Result};
use crate::prob::{parse_prob, Rational};
use crate::tape::{Tape, TapeTerm};
use num_traits::{One, Zero};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Num(String),
    Sym(char),
    End,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(src: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        let start = i;
        let tok = if c.is_ascii_alphabetic() || c == '_' {
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            Tok::Ident(chars[start..i].iter().collect())
        } else if c.is_ascii_digit() {
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '/' || chars[i] == '.') {
                i += 1;
            }
            Tok::Num(chars[start..i].iter().collect())
        } else if "()[];*+".contains(c) {
            i += 1;
            Tok::Sym(c)
        } else {
            return Err(syntax(l0, c0, "a term"));
        };
        col += i - start;
        out.push(Token { tok, line: l0, col: c0 });
    }
    out.push(Token { tok: Tok::End, line, col });
    Ok(out)
}

fn syntax(line: usize, col: usize, expected: &str) -> Error {
    Error::Syntax {
        line,
        col,
        expected: expected.to_string(),
    }
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn new(src: &str) -> Result<Self> {
        Ok(Parser { toks: lex(src)?, pos: 0 })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if t.tok != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn err(&self, expected: &str) -> Error {
        let t = &self.toks[self.pos];
        syntax(t.line, t.col, expected)
    }

    fn eat(&mut self, c: char) -> bool {
        if *self.peek() == Tok::Sym(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(&format!("`{c}`")))
        }
    }

    fn finish(&self) -> Result<()> {
        match self.peek() {
            Tok::End => Ok(()),
            _ => Err(self.err("end of input")),
        }
    }

    fn word(&mut self) -> Result<SortWord> {
        match self.peek().clone() {
            Tok::Num(n) if n == "1" => {
                self.bump();
                Ok(SortWord::unit())
            }
            Tok::Ident(s) if s.chars().all(|c| c.is_ascii_uppercase()) => {
                self.bump();
                Ok(SortWord(s.chars().collect()))
            }
            _ => Err(self.err("a word of sorts or `1`")),
        }
    }

    fn sort(&mut self) -> Result<char> {
        match self.peek().clone() {
            Tok::Ident(s) if s.len() == 1 && s.chars().all(|c| c.is_ascii_uppercase()) => {
                self.bump();
                Ok(s.chars().next().unwrap())
            }
            _ => Err(self.err("a sort")),
        }
    }

    fn prob(&mut self, open: bool) -> Result<Rational> {
        let expected = if open {
            "a probability strictly between 0 and 1"
        } else {
            "a probability in [0,1]"
        };
        let Tok::Num(n) = self.peek().clone() else {
            return Err(self.err(expected));
        };
        let p = parse_prob(&n).map_err(|_| self.err(expected))?;
        if open && (p.is_zero() || p.is_one()) {
            return Err(self.err(expected));
        }
        self.bump();
        Ok(p)
    }

    fn circuit(&mut self) -> Result<CircuitTerm> {
        let mut acc = self.circuit_par()?;
        while self.eat(';') {
            acc = CircuitTerm::seq(acc, self.circuit_par()?);
        }
        Ok(acc)
    }

    fn circuit_par(&mut self) -> Result<CircuitTerm> {
        let mut acc = self.circuit_atom()?;
        while self.eat('*') {
            acc = CircuitTerm::par(acc, self.circuit_atom()?);
        }
        Ok(acc)
    }

    fn circuit_atom(&mut self) -> Result<CircuitTerm> {
        if self.eat('(') {
            let c = self.circuit()?;
            self.expect(')')?;
            return Ok(c);
        }
        let Tok::Ident(name) = self.peek().clone() else {
            return Err(self.err("a circuit"));
        };
        self.bump();
        match name.as_str() {
            "id1" => Ok(CircuitTerm::IdUnit),
            "id" => {
                let w = self.word()?;
                Ok(match w.0.as_slice() {
                    [a] => CircuitTerm::IdSort(*a),
                    _ => Circuit::id(&w).into_term(),
                })
            }
            "sym" => {
                let a = self.sort()?;
                let b = self.sort()?;
                Ok(CircuitTerm::Sym(a, b))
            }
            _ if name.starts_with(|c: char| c.is_ascii_lowercase()) => {
                if matches!(self.peek(), Tok::Num(_)) {
                    Ok(CircuitTerm::gen_p(&name, self.prob(false)?))
                } else {
                    Ok(CircuitTerm::gen(&name))
                }
            }
            _ => {
                self.pos -= 1;
                Err(self.err("a circuit"))
            }
        }
    }

    fn tape(&mut self, sig: &Signature) -> Result<Tape<Diagrams>> {
        let mut acc = self.tape_plus(sig)?;
        while self.eat(';') {
            acc = TapeTerm::seq(acc, self.tape_plus(sig)?);
        }
        Ok(acc)
    }

    fn tape_plus(&mut self, sig: &Signature) -> Result<Tape<Diagrams>> {
        let mut acc = self.tape_atom(sig)?;
        while self.eat('+') {
            acc = TapeTerm::plus(acc, self.tape_atom(sig)?);
        }
        Ok(acc)
    }

    fn tape_atom(&mut self, sig: &Signature) -> Result<Tape<Diagrams>> {
        if self.eat('(') {
            let t = self.tape(sig)?;
            self.expect(')')?;
            return Ok(t);
        }
        if self.eat('[') {
            let c = self.circuit()?;
            self.expect(']')?;
            return Ok(TapeTerm::Lift(sig.circuit(c)?));
        }
        let Tok::Ident(kw) = self.peek().clone() else {
            return Err(self.err("a tape"));
        };
        let t = match kw.as_str() {
            "id0" => {
                self.bump();
                TapeTerm::Id0
            }
            "idT" | "merge" | "init" | "kill" => {
                self.bump();
                let w = self.word()?;
                sig.check_word(&w)?;
                match kw.as_str() {
                    "idT" => TapeTerm::Id(w),
                    "merge" => TapeTerm::Codiag(w),
                    "init" => TapeTerm::Cobang(w),
                    _ => TapeTerm::Bang(w),
                }
            }
            "symT" => {
                self.bump();
                let u = self.word()?;
                let v = self.word()?;
                sig.check_word(&u)?;
                sig.check_word(&v)?;
                TapeTerm::SigmaPlus(u, v)
            }
            "split" => {
                self.bump();
                let p = self.prob(true)?;
                let w = self.word()?;
                sig.check_word(&w)?;
                TapeTerm::DiagP(w, p)
            }
            _ => return Err(self.err("a tape")),
        };
        Ok(t)
    }
}

/// Parses a circuit term. Nothing is type-checked.
pub fn parse_circuit(src: &str) -> Result<CircuitTerm> {
    let mut p = Parser::new(src)?;
    let c = p.circuit()?;
    p.finish()?;
    Ok(c)
}

/// Parses a tape whose circuits are type-checked against `sig`.
pub fn parse_tape(sig: &Signature, src: &str) -> Result<Tape<Diagrams>> {
    let mut p = Parser::new(src)?;
    let t = p.tape(sig)?;
    p.finish()?;
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base::boolean::BoolFns;
    use crate::boolcirc::{b_signature, encode, pb_signature};
    use crate::prob::rat;
    use crate::random;

    fn word(s: &str) -> SortWord {
        s.parse().unwrap()
    }

    #[test]
    fn precedence_and_associativity() {
        let c = parse_circuit("not ; not * id A ; and").unwrap();
        assert_eq!(c.to_string(), "((not ; (not * id A)) ; and)");
        let c = parse_circuit("flip 1/2 ; not").unwrap();
        assert_eq!(c, CircuitTerm::seq(CircuitTerm::gen_p("flip", rat(1, 2)), CircuitTerm::gen("not")));
        let sig = b_signature();
        let t = parse_tape(&sig, "[ and ] ; [ not ]").unwrap();
        assert!(matches!(&t, TapeTerm::Seq(a, b)
            if matches!(**a, TapeTerm::Lift(_)) && matches!(**b, TapeTerm::Lift(_))));
        let t = parse_tape(&sig, "idT A + init A ; merge A + kill 1").unwrap();
        assert_eq!(t.to_string(), "((idT A + init A) ; (merge A + kill 1))");
    }

    #[test]
    fn keywords() {
        let sig = b_signature();
        let t = parse_tape(&sig, "split 1/3 AA ; symT AA 1 ; id0 + idT AA + idT 1").unwrap();
        let expected = TapeTerm::seq(
            TapeTerm::seq(TapeTerm::DiagP(word("AA"), rat(1, 3)), TapeTerm::SigmaPlus(word("AA"), word("1"))),
            TapeTerm::plus(TapeTerm::plus(TapeTerm::Id0, TapeTerm::Id(word("AA"))), TapeTerm::Id(word("1"))),
        );
        assert_eq!(t, expected);
        assert_eq!(parse_circuit("id1 * sym A B").unwrap().to_string(), "(id1 * sym A B)");
    }

    #[test]
    fn syntax_errors_have_positions() {
        let sig = b_signature();
        match parse_tape(&sig, "split 3/2 A") {
            Err(Error::Syntax { line, col, expected }) => {
                assert_eq!((line, col), (1, 7));
                assert!(expected.contains("probability"));
            }
            other => panic!("unexpected {other:?}"),
        }
        match parse_tape(&sig, "idT A ;\n  (idT A") {
            Err(Error::Syntax { line, col, expected }) => {
                assert_eq!((line, col, expected.as_str()), (2, 9, "`)`"));
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_tape(&sig, "split 1 A"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_circuit("and ;"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_circuit("and and"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_circuit("id a"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_circuit("and $"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_tape(&sig, "[ and ; and ]"), Err(Error::IllTyped { .. })));
        assert!(matches!(parse_tape(&sig, "idT B"), Err(Error::UnknownSort(_))));
    }

    #[test]
    fn comments_and_whitespace() {
        let sig = b_signature();
        let t = parse_tape(&sig, "# a comment\n[ not ]   # trailing\n; [ not ]").unwrap();
        assert_eq!(t.to_string(), "([ not ] ; [ not ])");
    }

    #[test]
    fn round_trip_corpus() {
        let sig = pb_signature();
        let mut r = random::rng(2024);
        let mut count = 0;
        for _ in 0..40 {
            let n = rand::Rng::gen_range(&mut r, 0..=3);
            let (c, _) = random::pb_circuit(&mut r, n, 10);
            assert_eq!(parse_circuit(&c.to_string()).unwrap(), c);
            let t = encode(&c).unwrap();
            assert_eq!(parse_tape(&sig, &t.to_string()).unwrap(), t);
            count += 2;
        }
        let b = crate::boolcirc::b_signature();
        for _ in 0..20 {
            let dom = random::poly(&mut r, 2, 1);
            let cod = random::poly(&mut r, 2, 1);
            let t = random::bool_tape(&mut r, &dom, &cod, 3, 2, 1);
            // every table of width ≤ 1 is a circuit over the Boolean signature
            let printed = t.map_base(&ToDiagram).unwrap().to_string();
            let back = parse_tape(&b, &printed).unwrap();
            assert_eq!(back.to_string(), printed);
            assert_eq!(
                crate::boolcirc::to_bool_tape(&back).unwrap().compile(&BoolFns).unwrap(),
                t.compile(&BoolFns).unwrap()
            );
            count += 1;
        }
        assert!(count >= 50);
    }

    /// Realises tables of width at most 1 as circuits.
    struct ToDiagram;

    impl crate::base::BaseFunctor for ToDiagram {
        type Source = BoolFns;
        type Target = Diagrams;

        fn map_obj(&self, u: &usize) -> Result<SortWord> {
            Ok(SortWord::power('A', *u))
        }

        fn map_arrow(&self, f: &crate::base::boolean::FnTable) -> Result<Circuit> {
            let sig = b_signature();
            let src = match (f.inputs(), f.outputs(), f.rows()) {
                (0, 0, _) => "id1".to_string(),
                (1, 0, _) => "discard".into(),
                (0, 1, [1]) => "flip1".into(),
                (0, 1, _) => "(flip1 ; not)".into(),
                (1, 1, [0, 1]) => "id A".into(),
                (1, 1, [1, 0]) => "not".into(),
                (1, 1, [0, 0]) => "(discard ; flip1 ; not)".into(),
                (1, 1, _) => "(discard ; flip1)".into(),
                _ => return Err(Error::Invalid(format!("table {f:?} is too wide"))),
            };
            sig.circuit(parse_circuit(&src)?)
        }
    }
}
