//! Alphabets, words and semigroup presentations `<X | R>`.
//!
//! Letters are arbitrary identifiers, stored as indices into the
//! presentation's alphabet. A relation `(u, v)` is oriented: applying it in
//! the [`Dir::Forward`] direction rewrites `u` into `v`, the
//! [`Dir::Backward`] direction rewrites `v` into `u`. Together the relation
//! index and the direction name one element of `R ∪ R⁻¹`.
//!
//! The textual format is
//!
//! ```text
//! letters: a, b, b1, b2, c
//! relations: a b = a, b c = c, b = b1, b1 = b2, b2 = b
//! base: a c
//! ```
//!
//! Sections may also be separated by `;` on a single line.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Index of a letter in a presentation's alphabet.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter(pub u32);

/// A word over an alphabet. Only meaningful together with its presentation.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    /// `letter^n`.
    pub fn power(letter: Letter, n: usize) -> Self {
        Word(vec![letter; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Does `side` occur in `self` starting at `offset`?
    pub fn occurs_at(&self, side: &Word, offset: usize) -> bool {
        offset + side.len() <= self.len() && self.0[offset..offset + side.len()] == side.0[..]
    }

    /// Replace `len` letters starting at `offset` by `with`.
    pub fn splice(&self, offset: usize, len: usize, with: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + with.len() - len.min(self.len()));
        v.extend_from_slice(&self.0[..offset]);
        v.extend_from_slice(&with.0);
        v.extend_from_slice(&self.0[offset + len..]);
        Word(v)
    }
}

/// Orientation of a relation application. `Forward` rewrites `u → v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Dir {
    Forward,
    Backward,
}

impl Dir {
    pub fn sign(self) -> i8 {
        match self {
            Dir::Forward => 1,
            Dir::Backward => -1,
        }
    }

    pub fn from_sign(sign: i64) -> Option<Dir> {
        match sign {
            1 => Some(Dir::Forward),
            -1 => Some(Dir::Backward),
            _ => None,
        }
    }

    pub fn flip(self) -> Dir {
        match self {
            Dir::Forward => Dir::Backward,
            Dir::Backward => Dir::Forward,
        }
    }
}

/// An ordered pair `(lhs, rhs)` of nonempty words.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Relation {
    pub lhs: Word,
    pub rhs: Word,
}

impl Relation {
    /// The side consumed when applied in direction `dir`.
    pub fn source(&self, dir: Dir) -> &Word {
        match dir {
            Dir::Forward => &self.lhs,
            Dir::Backward => &self.rhs,
        }
    }

    /// The side produced when applied in direction `dir`.
    pub fn target(&self, dir: Dir) -> &Word {
        match dir {
            Dir::Forward => &self.rhs,
            Dir::Backward => &self.lhs,
        }
    }
}

/// A semigroup presentation with an optional base word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    letters: Vec<String>,
    relations: Vec<Relation>,
    base: Option<Word>,
}

impl Presentation {
    /// Build a presentation from identifiers, validating the relation set.
    pub fn new(
        letters: Vec<String>,
        relations: Vec<(Vec<String>, Vec<String>)>,
        base: Option<Vec<String>>,
    ) -> Result<Self> {
        let lines = vec![1; relations.len()];
        Self::build(letters, 1, relations, &lines, base)
    }

    fn build(
        letters: Vec<String>,
        letters_line: usize,
        relations: Vec<(Vec<String>, Vec<String>)>,
        relation_lines: &[usize],
        base: Option<Vec<String>>,
    ) -> Result<Self> {
        for (i, l) in letters.iter().enumerate() {
            if letters[..i].contains(l) {
                return Err(Error::DuplicateLetter {
                    line: letters_line,
                    letter: l.clone(),
                });
            }
        }
        let mut p = Presentation {
            letters,
            relations: Vec::new(),
            base: None,
        };
        for (index, (lhs, rhs)) in relations.into_iter().enumerate() {
            let line = relation_lines[index];
            if lhs.is_empty() || rhs.is_empty() {
                return Err(Error::EmptyRelationSide { line, index });
            }
            let rel = Relation {
                lhs: p.word_from_ids(&lhs)?,
                rhs: p.word_from_ids(&rhs)?,
            };
            let shown = p.render_relation(&rel);
            if rel.lhs == rel.rhs {
                return Err(Error::ReversedRelation {
                    line,
                    index,
                    other: index,
                    relation: shown,
                });
            }
            for (other, prev) in p.relations.iter().enumerate() {
                if prev.lhs == rel.rhs && prev.rhs == rel.lhs {
                    return Err(Error::ReversedRelation {
                        line,
                        index,
                        other,
                        relation: shown,
                    });
                }
                if *prev == rel {
                    return Err(Error::DuplicateRelation {
                        line,
                        index,
                        other,
                        relation: shown,
                    });
                }
            }
            p.relations.push(rel);
        }
        if let Some(base) = base {
            let w = p.word_from_ids(&base)?;
            if w.is_empty() {
                return Err(Error::EmptyWord);
            }
            p.base = Some(w);
        }
        Ok(p)
    }

    pub fn letters(&self) -> &[String] {
        &self.letters
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn relation(&self, index: usize) -> Result<&Relation> {
        self.relations.get(index).ok_or(Error::BadRelation {
            index,
            count: self.relations.len(),
        })
    }

    pub fn base(&self) -> Option<&Word> {
        self.base.as_ref()
    }

    pub fn letter(&self, id: &str) -> Result<Letter> {
        self.letters
            .iter()
            .position(|l| l == id)
            .map(|i| Letter(i as u32))
            .ok_or_else(|| Error::UnknownLetter(id.to_string()))
    }

    pub fn letter_name(&self, letter: Letter) -> &str {
        &self.letters[letter.0 as usize]
    }

    fn word_from_ids<S: AsRef<str>>(&self, ids: &[S]) -> Result<Word> {
        ids.iter()
            .map(|s| self.letter(s.as_ref()))
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }

    /// Parse a space-separated word. The empty string gives the empty word.
    pub fn word(&self, text: &str) -> Result<Word> {
        let ids: Vec<&str> = text.split_whitespace().collect();
        self.word_from_ids(&ids)
    }

    pub fn render_word(&self, w: &Word) -> String {
        w.0.iter().map(|&l| self.letter_name(l)).collect::<Vec<_>>().join(" ")
    }

    pub fn render_relation(&self, r: &Relation) -> String {
        format!("{} = {}", self.render_word(&r.lhs), self.render_word(&r.rhs))
    }

    /// Parse the textual presentation format.
    pub fn parse(text: &str) -> Result<Self> {
        let mut letters: Option<(usize, Vec<String>)> = None;
        let mut relations: Vec<(Vec<String>, Vec<String>)> = Vec::new();
        let mut relation_lines = Vec::new();
        let mut base = None;
        let mut seen_relations = false;

        for (idx, raw_line) in text.lines().enumerate() {
            let line = idx + 1;
            for section in raw_line.split(';') {
                let section = section.trim();
                if section.is_empty() || section.starts_with('#') {
                    continue;
                }
                let (key, body) = section.split_once(':').ok_or_else(|| Error::Parse {
                    line,
                    message: format!("expected `key: value`, found `{section}`"),
                })?;
                match key.trim() {
                    "letters" => {
                        let ids = split_list(body)
                            .map(|s| parse_identifier(s, line))
                            .collect::<Result<Vec<_>>>()?;
                        letters = Some((line, ids));
                    }
                    "relations" => {
                        seen_relations = true;
                        for rel in split_list(body) {
                            let (lhs, rhs) = rel.split_once('=').ok_or_else(|| Error::Parse {
                                line,
                                message: format!("relation `{rel}` lacks `=`"),
                            })?;
                            if rhs.contains('=') {
                                return Err(Error::Parse {
                                    line,
                                    message: format!("relation `{rel}` has more than one `=`"),
                                });
                            }
                            relations.push((word_ids(lhs), word_ids(rhs)));
                            relation_lines.push(line);
                        }
                    }
                    "base" => base = Some(word_ids(body)),
                    other => {
                        return Err(Error::Parse {
                            line,
                            message: format!("unknown section `{other}`"),
                        })
                    }
                }
            }
        }
        let (letters_line, letters) = letters.ok_or(Error::Parse {
            line: 1,
            message: "missing `letters:` section".into(),
        })?;
        if !seen_relations {
            return Err(Error::Parse {
                line: letters_line,
                message: "missing `relations:` section".into(),
            });
        }
        Self::build(letters, letters_line, relations, &relation_lines, base)
    }

    /// Inverse of [`Presentation::parse`].
    pub fn render(&self) -> String {
        let mut out = format!("letters: {}\n", self.letters.join(", "));
        let rels: Vec<String> = self.relations.iter().map(|r| self.render_relation(r)).collect();
        out.push_str(&format!("relations: {}\n", rels.join(", ")));
        if let Some(b) = &self.base {
            out.push_str(&format!("base: {}\n", self.render_word(b)));
        }
        out
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

fn split_list(body: &str) -> impl Iterator<Item = &str> {
    body.split(',').map(str::trim).filter(|s| !s.is_empty())
}

fn word_ids(text: &str) -> Vec<String> {
    text.split_whitespace().map(str::to_string).collect()
}

fn parse_identifier(s: &str, line: usize) -> Result<String> {
    if s.split_whitespace().count() != 1 || s.contains(['=', ':']) {
        return Err(Error::Parse {
            line,
            message: format!("bad letter identifier `{s}`"),
        });
    }
    Ok(s.to_string())
}

/// The presentations shipped with the library.
pub mod presets {
    use super::*;

    use std::sync::OnceLock;

    // Shared so that elements built from the same preset compare by pointer.
    fn make(cell: &'static OnceLock<Arc<Presentation>>, text: &str) -> Arc<Presentation> {
        cell.get_or_init(|| Arc::new(Presentation::parse(text).expect("preset presentations are valid")))
            .clone()
    }

    /// `<x | x² = x>`, base `x`: Thompson's group F.
    pub fn f() -> Arc<Presentation> {
        static CELL: OnceLock<Arc<Presentation>> = OnceLock::new();
        make(&CELL, "letters: x\nrelations: x x = x\nbase: x")
    }

    /// `<x, a | x³ = x², a x = a>`, base `a`: the universal group U.
    pub fn u() -> Arc<Presentation> {
        static CELL: OnceLock<Arc<Presentation>> = OnceLock::new();
        make(&CELL, "letters: x, a\nrelations: x x x = x x, a x = a\nbase: a")
    }

    /// `<x | x³ = x²>`: the x-only part of U's presentation. Letter and
    /// relation indices agree with [`u`].
    pub fn u_core() -> Arc<Presentation> {
        static CELL: OnceLock<Arc<Presentation>> = OnceLock::new();
        make(&CELL, "letters: x\nrelations: x x x = x x")
    }

    /// `<a, b, b1, b2, c | ab = a, bc = c, b = b1, b1 = b2, b2 = b>`, base
    /// `ac`: a presentation whose diagram group is Z wr Z.
    pub fn w() -> Arc<Presentation> {
        static CELL: OnceLock<Arc<Presentation>> = OnceLock::new();
        make(
            &CELL,
            "letters: a, b, b1, b2, c\n\
             relations: a b = a, b c = c, b = b1, b1 = b2, b2 = b\n\
             base: a c",
        )
    }

    /// `<b, b1, b2 | b = b1, b1 = b2, b2 = b>`, base `b`: the integers.
    pub fn z3() -> Arc<Presentation> {
        static CELL: OnceLock<Arc<Presentation>> = OnceLock::new();
        make(&CELL, "letters: b, b1, b2\nrelations: b = b1, b1 = b2, b2 = b\nbase: b")
    }

    pub fn by_name(name: &str) -> Option<Arc<Presentation>> {
        match name.to_ascii_lowercase().as_str() {
            "f" => Some(f()),
            "u" => Some(u()),
            "w" => Some(w()),
            "z3" => Some(z3()),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_thompson_on_one_line() {
        let p = Presentation::parse("letters: x; relations: x x = x; base: x").unwrap();
        assert_eq!(p.letters(), ["x"]);
        assert_eq!(p.relations().len(), 1);
        assert_eq!(p.render_relation(&p.relations()[0]), "x x = x");
        assert_eq!(p.render_word(p.base().unwrap()), "x");
    }

    #[test]
    fn parses_universal_preset_text() {
        let p = Presentation::parse("letters: x,a; relations: x x x = x x, a x = a; base: a").unwrap();
        assert_eq!(p, *presets::u());
        assert_eq!(p.relations()[0].lhs.len(), 3);
        assert_eq!(p.relations()[1].rhs, p.word("a").unwrap());
    }

    #[test]
    fn equal_sides_are_rejected() {
        let err = Presentation::parse("letters: x; relations: x = x").unwrap_err();
        assert!(matches!(err, Error::ReversedRelation { line: 1, .. }), "{err}");
    }

    #[test]
    fn reversed_pair_is_rejected_with_line() {
        let err = Presentation::parse("letters: x, y\nrelations: x y = x, x = x y").unwrap_err();
        assert_eq!(
            err,
            Error::ReversedRelation {
                line: 2,
                index: 1,
                other: 0,
                relation: "x = x y".into()
            }
        );
    }

    #[test]
    fn duplicate_letters_and_empty_sides() {
        assert_eq!(
            Presentation::parse("letters: x, y, x\nrelations: x = y").unwrap_err(),
            Error::DuplicateLetter {
                line: 1,
                letter: "x".into()
            }
        );
        assert_eq!(
            Presentation::parse("letters: x\n\nrelations: x x = ").unwrap_err(),
            Error::EmptyRelationSide { line: 3, index: 0 }
        );
        assert!(matches!(
            Presentation::parse("letters: x\nrelations: x = y").unwrap_err(),
            Error::UnknownLetter(_)
        ));
    }

    #[test]
    fn subscripted_letters() {
        let w = presets::w();
        assert_eq!(w.letters(), ["a", "b", "b1", "b2", "c"]);
        assert_eq!(w.render_word(w.base().unwrap()), "a c");
        let z = Presentation::parse("letters: b, b₁, b₂; relations: b = b₁, b₁ = b₂, b₂ = b").unwrap();
        assert_eq!(z.relations().len(), 3);
    }

    #[test]
    fn dir_flip_is_involution() {
        for d in [Dir::Forward, Dir::Backward] {
            assert_eq!(d.flip().flip(), d);
            assert_eq!(Dir::from_sign(d.sign() as i64), Some(d));
        }
    }

    fn arb_presentation() -> impl Strategy<Value = Presentation> {
        let word = prop::collection::vec(0usize..4, 1..4);
        (
            prop::collection::vec((word.clone(), word), 0..6),
            prop::option::of(prop::collection::vec(0usize..4, 1..4)),
        )
            .prop_filter_map("invalid relation set", |(rels, base)| {
                let name = |i: usize| format!("l{i}");
                let letters = (0..4).map(name).collect();
                let rels = rels
                    .into_iter()
                    .map(|(u, v)| (u.into_iter().map(name).collect(), v.into_iter().map(name).collect()))
                    .collect();
                let base = base.map(|b| b.into_iter().map(name).collect());
                Presentation::new(letters, rels, base).ok()
            })
    }

    proptest! {
        #[test]
        fn render_parse_round_trip(p in arb_presentation()) {
            prop_assert_eq!(Presentation::parse(&p.render()).unwrap(), p);
        }
    }
}
