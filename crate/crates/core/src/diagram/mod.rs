//! Diagrams over a semigroup presentation.
//!
//! A [`Diagram`] is stored as its top word plus the rightmost decomposition
//! of its plane cell complex into atomic factors. Because the rightmost
//! decomposition is a function of the complex alone, two diagrams are
//! isotopic exactly when their stored factor sequences agree, and equality,
//! hashing and the [`CanonicalCode`] are all computed from that sequence.
//! The complex itself ([`PlaneComplex`]) is derived on demand and answers
//! the geometric questions: top cells, dipoles, ancestors.

mod complex;
pub mod io;
pub mod random;

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, OnceLock};

use rand::Rng;

pub use complex::{Cell, CellId, Edge, EdgeId, PlaneComplex, Step, VertexId};

use crate::error::{Error, Result};
use crate::presentation::{Dir, Presentation, Word};

/// One atomic 2-path `(p, u = v, q)`: `offset = |p|`, and the relation
/// applied in direction `dir`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AtomicFactor {
    pub offset: usize,
    pub relation: usize,
    pub dir: Dir,
}

impl AtomicFactor {
    pub fn new(offset: usize, relation: usize, dir: Dir) -> Self {
        AtomicFactor { offset, relation, dir }
    }

    pub fn inverse(self) -> Self {
        AtomicFactor {
            dir: self.dir.flip(),
            ..self
        }
    }

    pub fn shifted(self, by: usize) -> Self {
        AtomicFactor {
            offset: self.offset + by,
            ..self
        }
    }
}

impl fmt::Display for AtomicFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.offset, self.relation, self.dir.sign())
    }
}

/// Byte-exact isotopy invariant: `top | (p,r,d);(p,r,d);…` over the
/// rightmost decomposition.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalCode(pub String);

impl CanonicalCode {
    pub fn new(p: &Presentation, top: &Word, factors: &[AtomicFactor]) -> Self {
        let fs: Vec<String> = factors.iter().map(|f| f.to_string()).collect();
        CanonicalCode(format!("{} | {}", p.render_word(top), fs.join(";")))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Apply `factors` to `top`, returning the bottom word.
fn run_chain(p: &Presentation, top: &Word, factors: &[AtomicFactor]) -> Result<Word> {
    let mut w = top.clone();
    for (step, f) in factors.iter().enumerate() {
        let rel = p.relation(f.relation)?;
        let (src, dst) = (rel.source(f.dir), rel.target(f.dir));
        if !w.occurs_at(src, f.offset) {
            return Err(Error::FactorMismatch {
                step,
                offset: f.offset,
                side: p.render_word(src),
                word: p.render_word(&w),
            });
        }
        w = w.splice(f.offset, src.len(), dst);
    }
    Ok(w)
}

pub(crate) fn same_presentation(a: &Arc<Presentation>, b: &Arc<Presentation>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

#[derive(Clone)]
pub struct Diagram {
    presentation: Arc<Presentation>,
    top: Word,
    bottom: Word,
    factors: Vec<AtomicFactor>,
    complex: OnceLock<Arc<PlaneComplex>>,
}

impl Diagram {
    /// Trust that `factors` is already the rightmost decomposition.
    fn from_canonical(presentation: Arc<Presentation>, top: Word, bottom: Word, factors: Vec<AtomicFactor>) -> Self {
        Diagram {
            presentation,
            top,
            bottom,
            factors,
            complex: OnceLock::new(),
        }
    }

    fn from_complex(presentation: Arc<Presentation>, top: Word, complex: PlaneComplex) -> Self {
        let steps = complex.rightmost();
        let factors = steps.iter().map(|s| s.factor).collect();
        let bottom = complex.label_of(&complex.bottom);
        Self::from_canonical(presentation, top, bottom, factors)
    }

    /// The diagram obtained by gluing the given atomic factors below `top`.
    /// The factors may come in any valid order; storage is canonicalised.
    pub fn from_factors(presentation: Arc<Presentation>, top: Word, factors: &[AtomicFactor]) -> Result<Self> {
        if top.is_empty() {
            return Err(Error::EmptyWord);
        }
        let complex = PlaneComplex::build(&presentation, &top, factors)?;
        Ok(Self::from_complex(presentation, top, complex))
    }

    /// `ε(w)`: no cells.
    pub fn trivial(presentation: Arc<Presentation>, w: Word) -> Result<Self> {
        if w.is_empty() {
            return Err(Error::EmptyWord);
        }
        Ok(Self::from_canonical(presentation, w.clone(), w, Vec::new()))
    }

    /// The one-cell diagram of the atomic 2-path `f` applied to `top`.
    pub fn atomic(presentation: Arc<Presentation>, top: Word, f: AtomicFactor) -> Result<Self> {
        if top.is_empty() {
            return Err(Error::EmptyWord);
        }
        let bottom = run_chain(&presentation, &top, &[f])?;
        Ok(Self::from_canonical(presentation, top, bottom, vec![f]))
    }

    pub fn presentation(&self) -> &Arc<Presentation> {
        &self.presentation
    }

    pub fn top(&self) -> &Word {
        &self.top
    }

    pub fn bottom(&self) -> &Word {
        &self.bottom
    }

    /// The rightmost decomposition.
    pub fn factors(&self) -> &[AtomicFactor] {
        &self.factors
    }

    pub fn rightmost_decomposition(&self) -> Vec<AtomicFactor> {
        self.factors.clone()
    }

    pub fn cell_count(&self) -> usize {
        self.factors.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn is_spherical(&self) -> bool {
        self.top == self.bottom
    }

    pub fn code(&self) -> CanonicalCode {
        CanonicalCode::new(&self.presentation, &self.top, &self.factors)
    }

    /// The derived plane complex. Cell `i` is the `i`-th factor.
    pub fn complex(&self) -> &PlaneComplex {
        self.complex.get_or_init(|| {
            Arc::new(
                PlaneComplex::build(&self.presentation, &self.top, &self.factors)
                    .expect("stored factor chains are valid"),
            )
        })
    }

    fn check_presentation(&self, other: &Diagram) -> Result<()> {
        if same_presentation(&self.presentation, &other.presentation) {
            Ok(())
        } else {
            Err(Error::PresentationMismatch)
        }
    }

    /// `self ∘ other`: `other` glued below `self`.
    pub fn concat(&self, other: &Diagram) -> Result<Diagram> {
        let complex = self.concat_complex(other)?;
        Ok(Self::from_complex(self.presentation.clone(), self.top.clone(), complex))
    }

    fn concat_complex(&self, other: &Diagram) -> Result<PlaneComplex> {
        self.check_presentation(other)?;
        if self.bottom != other.top {
            return Err(Error::WordMismatch {
                bottom: self.presentation.render_word(&self.bottom),
                top: self.presentation.render_word(&other.top),
            });
        }
        let mut factors = self.factors.clone();
        factors.extend_from_slice(&other.factors);
        PlaneComplex::build(&self.presentation, &self.top, &factors)
    }

    /// `reduce(self ∘ other)` without materialising the unreduced diagram.
    pub fn concat_reduced(&self, other: &Diagram) -> Result<Diagram> {
        let complex = self.concat_complex(other)?;
        Ok(reduce_complex(
            self.presentation.clone(),
            self.top.clone(),
            complex,
            &mut first_in_rightmost_order,
        ))
    }

    /// `self + other`: side by side, `self` on the left.
    pub fn sum(&self, other: &Diagram) -> Result<Diagram> {
        self.check_presentation(other)?;
        let shift = self.bottom.len();
        let mut factors = self.factors.clone();
        factors.extend(other.factors.iter().map(|f| f.shifted(shift)));
        Diagram::from_factors(self.presentation.clone(), self.top.concat(&other.top), &factors)
    }

    /// The mirror image: top and bottom swap, every cell flips.
    pub fn inverse(&self) -> Diagram {
        let factors: Vec<AtomicFactor> = self.factors.iter().rev().map(|f| f.inverse()).collect();
        Diagram::from_factors(self.presentation.clone(), self.bottom.clone(), &factors)
            .expect("mirror of a valid chain is valid")
    }

    /// Pairs `(upper, lower)` of cell ids forming dipoles.
    pub fn find_dipoles(&self) -> Vec<(CellId, CellId)> {
        self.complex().dipoles_among(|_| true)
    }

    pub fn is_reduced(&self) -> bool {
        self.find_dipoles().is_empty()
    }

    /// Remove dipoles until none remain, always cancelling the dipole whose
    /// upper cell comes first in the current rightmost decomposition.
    pub fn reduce(&self) -> Diagram {
        reduce_complex(
            self.presentation.clone(),
            self.top.clone(),
            self.complex().clone(),
            &mut first_in_rightmost_order,
        )
    }

    /// Remove dipoles in a random order. By confluence the result equals
    /// [`Diagram::reduce`]; this exists to test exactly that.
    pub fn reduce_randomly<R: Rng + ?Sized>(&self, rng: &mut R) -> Diagram {
        let mut pick = |_: &PlaneComplex, _: &[bool], dipoles: &[(CellId, CellId)]| rng.gen_range(0..dipoles.len());
        reduce_complex(
            self.presentation.clone(),
            self.top.clone(),
            self.complex().clone(),
            &mut pick,
        )
    }

    /// Split along an ancestor-closed set of cells (`prefix[i]` for cell `i`)
    /// into `(Ψ, Δ̄)` with `self = Ψ ∘ Δ̄`.
    pub fn split_prefix(&self, prefix: &[bool]) -> Result<(Diagram, Diagram)> {
        let cx = self.complex();
        if prefix.len() != cx.cells.len() {
            return Err(Error::LengthMismatch {
                expected: cx.cells.len(),
                got: prefix.len(),
            });
        }
        let (upper, cut) = cx.decompose_from(&cx.top, |c| prefix[c]);
        let (lower, end) = cx.decompose_from(&cut, |c| !prefix[c]);
        if upper.len() + lower.len() != cx.cells.len() {
            return Err(Error::Malformed("cell set is not ancestor-closed".into()));
        }
        debug_assert_eq!(end, cx.bottom);
        let middle = cx.label_of(&cut);
        let head = Diagram::from_canonical(
            self.presentation.clone(),
            self.top.clone(),
            middle.clone(),
            upper.iter().map(|s| s.factor).collect(),
        );
        let tail = Diagram::from_canonical(
            self.presentation.clone(),
            middle,
            self.bottom.clone(),
            lower.iter().map(|s| s.factor).collect(),
        );
        Ok((head, tail))
    }
}

type DipolePicker<'a> = dyn FnMut(&PlaneComplex, &[bool], &[(CellId, CellId)]) -> usize + 'a;

fn first_in_rightmost_order(cx: &PlaneComplex, alive: &[bool], dipoles: &[(CellId, CellId)]) -> usize {
    if dipoles.len() == 1 {
        return 0;
    }
    let (order, _) = cx.decompose_from(&cx.top, |c| alive[c]);
    let mut rank = vec![usize::MAX; cx.cells.len()];
    for (i, s) in order.iter().enumerate() {
        rank[s.cell] = i;
    }
    (0..dipoles.len()).min_by_key(|&i| rank[dipoles[i].0]).unwrap()
}

fn reduce_complex(
    presentation: Arc<Presentation>,
    top: Word,
    mut cx: PlaneComplex,
    pick: &mut DipolePicker<'_>,
) -> Diagram {
    let mut alive = vec![true; cx.cells.len()];
    loop {
        let dipoles = cx.dipoles_among(|c| alive[c]);
        if dipoles.is_empty() {
            break;
        }
        let (upper, lower) = dipoles[pick(&cx, &alive, &dipoles)];
        cx.cancel(upper, lower);
        alive[upper] = false;
        alive[lower] = false;
    }
    let (steps, _) = cx.decompose_from(&cx.top, |c| alive[c]);
    debug_assert_eq!(steps.len(), alive.iter().filter(|&&a| a).count());
    let bottom = cx.label_of(&cx.bottom);
    Diagram::from_canonical(presentation, top, bottom, steps.iter().map(|s| s.factor).collect())
}

impl PartialEq for Diagram {
    fn eq(&self, other: &Self) -> bool {
        self.top == other.top
            && self.factors == other.factors
            && same_presentation(&self.presentation, &other.presentation)
    }
}

impl Eq for Diagram {}

impl Hash for Diagram {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.top.hash(state);
        self.factors.hash(state);
    }
}

impl PartialOrd for Diagram {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Diagram {
    fn cmp(&self, other: &Self) -> Ordering {
        (&self.top, &self.factors).cmp(&(&other.top, &other.factors))
    }
}

impl fmt::Debug for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Diagram({})", self.code())
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.code())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::presets;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn f_word(n: usize) -> Word {
        Word::power(presets::f().letter("x").unwrap(), n)
    }

    /// π: the cell x → x x.
    fn pi() -> Diagram {
        Diagram::atomic(presets::f(), f_word(1), AtomicFactor::new(0, 0, Dir::Backward)).unwrap()
    }

    fn eps(n: usize) -> Diagram {
        Diagram::trivial(presets::f(), f_word(n)).unwrap()
    }

    fn x0() -> Diagram {
        let inner = pi().sum(&eps(1)).unwrap().inverse();
        pi().concat(&eps(1).sum(&pi()).unwrap())
            .unwrap()
            .concat(&inner)
            .unwrap()
            .concat(&pi().inverse())
            .unwrap()
    }

    #[test]
    fn trivial_diagrams() {
        let e = eps(1);
        assert_eq!(e.cell_count(), 0);
        assert_eq!(e.top(), e.bottom());
        let u = presets::u();
        let w = u.word("a x x").unwrap();
        assert_eq!(Diagram::trivial(u, w).unwrap().cell_count(), 0);
        assert_eq!(
            Diagram::trivial(presets::f(), Word::empty()).unwrap_err(),
            Error::EmptyWord
        );
    }

    #[test]
    fn atomic_cells() {
        let p = pi();
        assert_eq!(p.cell_count(), 1);
        assert_eq!(p.bottom(), &f_word(2));
        let u = presets::u();
        let d = Diagram::atomic(u.clone(), u.word("a").unwrap(), AtomicFactor::new(0, 1, Dir::Backward)).unwrap();
        assert_eq!(u.render_word(d.bottom()), "a x");
        let err = Diagram::atomic(presets::f(), f_word(1), AtomicFactor::new(1, 0, Dir::Backward)).unwrap_err();
        assert!(matches!(err, Error::FactorMismatch { .. }));
        let err = Diagram::atomic(presets::f(), f_word(1), AtomicFactor::new(0, 3, Dir::Backward)).unwrap_err();
        assert!(matches!(err, Error::BadRelation { .. }));
    }

    #[test]
    fn x0_has_four_cells_and_is_reduced() {
        let d = x0();
        assert_eq!(d.cell_count(), 4);
        assert!(d.is_spherical());
        assert!(d.is_reduced());
    }

    #[test]
    fn concat_mismatch_and_unit() {
        assert!(matches!(pi().concat(&pi()).unwrap_err(), Error::WordMismatch { .. }));
        let d = x0();
        assert_eq!(eps(1).concat(&d).unwrap(), d);
        assert_eq!(d.concat(&eps(1)).unwrap(), d);
    }

    #[test]
    fn sum_is_not_commutative() {
        assert_eq!(eps(1).sum(&eps(1)).unwrap(), eps(2));
        let a = pi().sum(&eps(1)).unwrap();
        let b = eps(1).sum(&pi()).unwrap();
        assert_ne!(a.code(), b.code());
        assert_eq!(a.cell_count(), 1);
    }

    #[test]
    fn rightmost_decomposition_lists_right_cell_first() {
        // Two disjoint x → xx cells on top of x x, applied left one first.
        let d = Diagram::from_factors(
            presets::f(),
            f_word(2),
            &[
                AtomicFactor::new(0, 0, Dir::Backward),
                AtomicFactor::new(2, 0, Dir::Backward),
            ],
        )
        .unwrap();
        assert_eq!(
            d.factors(),
            &[
                AtomicFactor::new(1, 0, Dir::Backward),
                AtomicFactor::new(0, 0, Dir::Backward)
            ]
        );
        // The other order yields the same diagram.
        let e = Diagram::from_factors(
            presets::f(),
            f_word(2),
            &[
                AtomicFactor::new(1, 0, Dir::Backward),
                AtomicFactor::new(0, 0, Dir::Backward),
            ],
        )
        .unwrap();
        assert_eq!(d, e);
    }

    #[test]
    fn dipoles_and_reduction() {
        let d = pi().concat(&pi().inverse()).unwrap();
        assert_eq!(d.find_dipoles(), vec![(0, 1)]);
        assert_eq!(d.reduce(), eps(1));
        assert!(x0().find_dipoles().is_empty());
        let big = x0().concat(&x0().inverse()).unwrap();
        assert!(!big.find_dipoles().is_empty());
        assert_eq!(big.reduce(), eps(1));
        assert_eq!(x0().reduce(), x0());
    }

    #[test]
    fn split_prefix_reassembles() {
        let d = x0();
        let mask = d.complex().ancestor_closure(1);
        let (head, tail) = d.split_prefix(&mask).unwrap();
        assert_eq!(head.cell_count() + tail.cell_count(), 4);
        assert_eq!(head.concat(&tail).unwrap(), d);
        // A set that is not ancestor-closed is rejected.
        let mut bad = vec![false; 4];
        bad[3] = true;
        assert!(d.split_prefix(&bad).is_err());
    }

    #[test]
    fn canonical_code_format() {
        assert_eq!(pi().code().as_str(), "x | (0,0,-1)");
        assert_eq!(eps(2).code().as_str(), "x x | ");
        let u = presets::u();
        let d = Diagram::atomic(
            u.clone(),
            u.word("a x x x").unwrap(),
            AtomicFactor::new(1, 0, Dir::Forward),
        )
        .unwrap();
        assert_eq!(d.code().as_str(), "a x x x | (1,0,1)");
    }

    #[test]
    fn random_reduction_orders_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let d = x0()
            .concat(&x0())
            .unwrap()
            .concat(&x0().inverse())
            .unwrap()
            .concat(&x0().inverse())
            .unwrap();
        let reference = d.reduce();
        assert_eq!(reference, eps(1));
        for _ in 0..20 {
            assert_eq!(d.reduce_randomly(&mut rng), reference);
        }
    }
}
