use std::fmt;

use serde::{Deserialize, Serialize};

use super::Base;
use crate::error::Result;

/// The unique object `•` of a one-object category.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
pub struct Point;

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "•")
    }
}

/// A word over the alphabet; the empty word is the identity.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(pub String);

impl Word {
    pub fn new(s: impl Into<String>) -> Self {
        Word(s.into())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            write!(f, "id")
        } else {
            write!(f, "{}", self.0)
        }
    }
}

/// The free monoid `A*` seen as a category with one object.
/// Composition `f ; g` is concatenation `fg`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct FreeMonoid;

impl Base for FreeMonoid {
    type Obj = Point;
    type Arrow = Word;

    fn name(&self) -> &str {
        "free monoid"
    }

    fn dom(&self, _: &Word) -> Point {
        Point
    }

    fn cod(&self, _: &Word) -> Point {
        Point
    }

    fn id(&self, _: &Point) -> Word {
        Word::default()
    }

    fn compose(&self, f: &Word, g: &Word) -> Result<Word> {
        Ok(Word(format!("{}{}", f.0, g.0)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    #[test]
    fn composition_is_concatenation() {
        let b = FreeMonoid;
        assert_eq!(b.compose(&Word::new("a"), &Word::new("ab")).unwrap(), Word::new("aab"));
        let f = Word::new("abc");
        assert_eq!(b.compose(&b.id(&Point), &f).unwrap(), f);
        assert_eq!(b.compose(&f, &b.id(&Point)).unwrap(), f);
    }

    #[test]
    fn no_tensor_and_infinite_homs() {
        let b = FreeMonoid;
        assert!(matches!(b.hom(&Point, &Point), Err(Error::HomNotFinite(_))));
        assert!(matches!(
            b.tensor(&Word::new("a"), &Word::new("b")),
            Err(Error::NotMonoidal(_))
        ));
    }
}
